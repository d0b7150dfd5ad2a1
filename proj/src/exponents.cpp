#include "smoothweyl/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace smoothweyl {

namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

void require_degree(int k, int min_k) {
  if (k < min_k) {
    throw std::invalid_argument("degree k must be at least " + std::to_string(min_k));
  }
}

}  // namespace

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Theorem21: return "theorem21";
    case Provenance::Recurrence: return "recurrence";
    case Provenance::TableData: return "table";
    case Provenance::AnalyticBound: return "analytic";
    case Provenance::Hua: return "hua";
  }
  return "unknown";
}

Provenance provenance_from_string(std::string_view name) {
  for (auto p : {Provenance::Theorem21, Provenance::Recurrence, Provenance::TableData,
                 Provenance::AnalyticBound, Provenance::Hua}) {
    if (to_string(p) == name) return p;
  }
  throw std::invalid_argument("unknown exponent source '" + std::string(name) + "'");
}

double solve_log_linear(double rhs, double tol) {
  require_finite(rhs, "right-hand side");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (rhs > 1.0) throw std::invalid_argument("right-hand side must not exceed 1");

  auto g = [rhs](double x) { return x + std::log(x) - rhs; };

  // log x = rhs - x with 0 < x <= 1, so rhs - 1 <= log x < rhs.
  double lo = std::exp(rhs - 1.0);
  double hi = std::exp(rhs);
  double g_lo = g(lo);
  double g_hi = g(hi);
  if (g_lo == 0.0) return lo;
  if (g_hi == 0.0) return hi;

  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < kRootIterationCap; ++iter) {
    const double gx = g(x);
    if (std::abs(gx) <= tol) return x;
    if (gx < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    double next = x - gx / (1.0 + 1.0 / x);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == x) break;
    x = next;
  }
  std::ostringstream msg;
  msg << "x + log x = " << rhs << " did not converge to tolerance " << tol << " within "
      << kRootIterationCap << " iterations";
  throw SolverError(msg.str());
}

DeltaSolution solve_delta(int k, double t, double tol) {
  require_degree(k, 2);
  require_finite(t, "moment order t");
  if (t < 0.0) throw std::invalid_argument("moment order t must be non-negative");
  const double rhs = 1.0 - t / k;
  const double delta = solve_log_linear(rhs, tol);
  return {k, t, delta, std::abs(delta + std::log(delta) - rhs)};
}

double delta_analytic_bound(int k, double t) {
  require_degree(k, 2);
  require_finite(t, "moment order t");
  return k * std::exp(1.0 - t / k);
}

AdmissibleExponent hua_delta4(int k) {
  require_degree(k, 2);
  return {k, 4.0, static_cast<double>(k - 2), Provenance::Hua};
}

double recurrence_delta_even(int k, int s, double tol) {
  require_degree(k, 6);
  if (s < 2) throw std::invalid_argument("recurrence index s must be at least 2");
  const double kk = k;
  const double rhs = 1.0 - 2.0 * s / kk - 5.0 / (16.0 * kk * kk);
  return kk * solve_log_linear(rhs, tol);
}

RecurrenceState recurrence_delta_next(int k, double delta_2s) {
  require_degree(k, 6);
  require_finite(delta_2s, "Delta_2s");
  if (!(delta_2s > 0.0 && delta_2s <= k)) {
    throw std::invalid_argument("Delta_2s must lie in (0, k]");
  }
  RecurrenceState st;
  st.k = k;
  st.delta_2s = delta_2s;
  st.omega = std::ldexp(1.0, 1 - k) * (1.0 - delta_2s / k);
  st.delta_next = delta_2s * (1.0 - (2.0 - st.omega) / (k + delta_2s));
  return st;
}

AdmissibleExponent interpolate_delta(int k, double t, double delta_2s, double delta_next) {
  require_finite(t, "moment order t");
  if (t < 4.0) throw std::invalid_argument("interpolation requires t >= 4");
  const double s = std::floor(t / 2.0);
  const double v = t / 2.0 - s;
  return {k, t, (1.0 - v) * delta_2s + v * delta_next, Provenance::Recurrence};
}

double e_term(int k, double v, double omega) {
  if (v < 0.0 || v > 1.0) throw std::invalid_argument("v must lie in [0, 1]");
  if (omega < 0.0 || omega > std::ldexp(1.0, 1 - k)) {
    throw std::invalid_argument("omega must lie in [0, 2^{1-k}]");
  }
  return -5.0 / 8.0 + 2.0 * k * v * omega - v * v;
}

void ExponentTable::add(double t, double delta_t) {
  require_finite(t, "tabulated order");
  require_finite(delta_t, "tabulated exponent");
  auto it = std::lower_bound(entries_.begin(), entries_.end(), t,
                             [](const Entry& e, double x) { return e.t < x; });
  if (it != entries_.end() && it->t == t) {
    throw std::invalid_argument("duplicate tabulated order t = " + std::to_string(t));
  }
  entries_.insert(it, Entry{t, delta_t});
}

double ExponentTable::t_min() const {
  if (entries_.empty()) throw std::logic_error("empty exponent table");
  return entries_.front().t;
}

double ExponentTable::t_max() const {
  if (entries_.empty()) throw std::logic_error("empty exponent table");
  return entries_.back().t;
}

std::optional<double> ExponentTable::lookup(double t) const {
  if (entries_.empty() || t < entries_.front().t || t > entries_.back().t) return std::nullopt;
  auto hi = std::lower_bound(entries_.begin(), entries_.end(), t,
                             [](const Entry& e, double x) { return e.t < x; });
  if (hi->t == t) return hi->delta_t;
  auto lo = std::prev(hi);
  const double v = (t - lo->t) / (hi->t - lo->t);
  return (1.0 - v) * lo->delta_t + v * hi->delta_t;
}

namespace {

double recurrence_exponent(int k, double t) {
  const int s = static_cast<int>(std::floor(t / 2.0));
  const double d2s = recurrence_delta_even(k, s);
  const double v = t / 2.0 - s;
  if (v == 0.0) return d2s;
  return interpolate_delta(k, t, d2s, recurrence_delta_next(k, d2s).delta_next).delta_t;
}

}  // namespace

AdmissibleExponent admissible(int k, double t, Provenance source, const ExponentTable* table) {
  require_degree(k, 2);
  require_finite(t, "moment order t");
  if (t < 4.0) throw std::invalid_argument("admissible exponents are provided for t >= 4 only");

  switch (source) {
    case Provenance::Theorem21:
      return {k, t, k * solve_delta(k, t).delta, source};
    case Provenance::Recurrence:
      return {k, t, recurrence_exponent(k, t), source};
    case Provenance::AnalyticBound:
      return {k, t, std::min<double>(k, delta_analytic_bound(k, t)), source};
    case Provenance::Hua:
      if (t != 4.0) throw std::invalid_argument("Hua's lemma only covers t = 4");
      return hua_delta4(k);
    case Provenance::TableData: {
      if (table == nullptr || table->empty()) {
        throw std::invalid_argument("table source requested without an exponent table");
      }
      auto d = table->lookup(t);
      if (!d) {
        std::ostringstream msg;
        msg << "t = " << t << " outside tabulated range [" << table->t_min() << ", "
            << table->t_max() << "]";
        throw std::invalid_argument(msg.str());
      }
      return {k, t, *d, source};
    }
  }
  throw std::invalid_argument("unknown exponent source");
}

ExponentProvider::ExponentProvider(int k, Provenance source, std::optional<ExponentTable> table)
    : k_(k), source_(source), table_(std::move(table)) {
  require_degree(k, 2);
  if (source == Provenance::TableData && (!table_ || table_->empty())) {
    throw std::invalid_argument("table provider needs a non-empty exponent table");
  }
  if (source == Provenance::Recurrence) require_degree(k, 6);
}

std::optional<double> ExponentProvider::operator()(double t) const {
  if (!std::isfinite(t) || t < domain_lo() || t > domain_hi()) return std::nullopt;
  return admissible(k_, t, source_, table_ ? &*table_ : nullptr).delta_t;
}

double ExponentProvider::domain_lo() const {
  return source_ == Provenance::TableData ? std::max(4.0, table_->t_min()) : 4.0;
}

double ExponentProvider::domain_hi() const {
  switch (source_) {
    case Provenance::TableData: return table_->t_max();
    case Provenance::Hua: return 4.0;
    default: return std::numeric_limits<double>::infinity();
  }
}

}  // namespace smoothweyl
