#include "smoothweyl/fracparts.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cmath>
#include <limits>

#include "smoothweyl/arc_params.hpp"
#include "smoothweyl/table1.hpp"

namespace smoothweyl {

Mpfr::Mpfr(mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_zero(value_, 1);
}

Mpfr::Mpfr(const Mpfr& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Mpfr::Mpfr(Mpfr&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Mpfr& Mpfr::operator=(const Mpfr& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Mpfr& Mpfr::operator=(Mpfr&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Mpfr::~Mpfr() { mpfr_clear(value_); }

int required_precision_bits(std::uint64_t max_n, int k) {
  if (max_n == 0) throw std::invalid_argument("n must be at least 1");
  return static_cast<int>(std::ceil(k * std::log2(static_cast<double>(max_n)))) + 64;
}

namespace {

constexpr int kExactDisplayBits = 128;

mpz_class pow_ui(std::uint64_t n, int k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), n, static_cast<unsigned long>(k));
  return r;
}

mpz_class floor_of(const mpq_class& x) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

mpz_class floor_of(const Mpfr& x) {
  mpz_class r;
  mpfr_get_z(r.get_mpz_t(), x.get(), MPFR_RNDD);
  return r;
}

Mpfr mpfr_from_q(const mpq_class& q, int bits) {
  Mpfr v(bits);
  mpfr_set_q(v.get(), q.get_mpq_t(), MPFR_RNDN);
  return v;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

/// Decimal literal with optional exponent as an exact rational.
std::optional<mpq_class> parse_exact_decimal(const std::string& text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';
  std::string digits;
  long scale = 0;
  bool any = false;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    digits.push_back(text[i++]);
    any = true;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      digits.push_back(text[i++]);
      --scale;
      any = true;
    }
  }
  if (!any) return std::nullopt;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    std::size_t used = 0;
    try {
      scale += std::stol(text.substr(i), &used);
    } catch (const std::exception&) {
      return std::nullopt;
    }
    i += used;
  }
  if (i != text.size()) return std::nullopt;
  mpq_class value{mpz_class(digits, 10)};
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale)));
  if (scale >= 0) {
    value *= ten_pow;
  } else {
    value /= ten_pow;
  }
  value.canonicalize();
  return negative ? mpq_class(-value) : value;
}

}  // namespace

HighPrecisionAlpha::HighPrecisionAlpha(Mpfr value, std::optional<mpq_class> exact,
                                       std::string description)
    : value_(std::move(value)), exact_(std::move(exact)), description_(std::move(description)) {}

HighPrecisionAlpha HighPrecisionAlpha::rational(const mpz_class& a, const mpz_class& q) {
  if (q == 0) throw std::invalid_argument("rational alpha needs a non-zero denominator");
  mpq_class r(a, q);
  r.canonicalize();
  return HighPrecisionAlpha(mpfr_from_q(r, kExactDisplayBits), r, r.get_str());
}

HighPrecisionAlpha HighPrecisionAlpha::from_double(double alpha) {
  if (!std::isfinite(alpha)) throw std::invalid_argument("alpha must be finite");
  mpq_class r(alpha);  // exact: every double is a dyadic rational
  Mpfr v(kExactDisplayBits);
  mpfr_set_d(v.get(), alpha, MPFR_RNDN);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", alpha);
  return HighPrecisionAlpha(std::move(v), r, buf);
}

HighPrecisionAlpha HighPrecisionAlpha::from_decimal(const std::string& text, int precision_bits) {
  if (auto exact = parse_exact_decimal(text)) {
    return HighPrecisionAlpha(mpfr_from_q(*exact, std::max(precision_bits, kExactDisplayBits)),
                              *exact, text);
  }
  throw std::invalid_argument("malformed decimal alpha '" + text + "'");
}

HighPrecisionAlpha HighPrecisionAlpha::sqrt_of(unsigned long m, int precision_bits) {
  Mpfr v(precision_bits);
  mpfr_sqrt_ui(v.get(), m, MPFR_RNDN);
  const unsigned long root = static_cast<unsigned long>(std::llround(std::sqrt(double(m))));
  std::optional<mpq_class> exact;
  if (root * root == m) exact = mpq_class(root);
  return HighPrecisionAlpha(std::move(v), exact, "sqrt(" + std::to_string(m) + ")");
}

HighPrecisionAlpha HighPrecisionAlpha::pi(int precision_bits) {
  Mpfr v(precision_bits);
  mpfr_const_pi(v.get(), MPFR_RNDN);
  return HighPrecisionAlpha(std::move(v), std::nullopt, "pi");
}

HighPrecisionAlpha HighPrecisionAlpha::euler_e(int precision_bits) {
  Mpfr v(precision_bits);
  mpfr_set_ui(v.get(), 1, MPFR_RNDN);
  mpfr_exp(v.get(), v.get(), MPFR_RNDN);
  return HighPrecisionAlpha(std::move(v), std::nullopt, "e");
}

HighPrecisionAlpha HighPrecisionAlpha::golden(int precision_bits) {
  // Extra guard bits so the halving and addition keep the requested accuracy.
  Mpfr v(precision_bits + 8);
  mpfr_sqrt_ui(v.get(), 5, MPFR_RNDN);
  mpfr_add_ui(v.get(), v.get(), 1, MPFR_RNDN);
  mpfr_div_2ui(v.get(), v.get(), 1, MPFR_RNDN);
  return HighPrecisionAlpha(std::move(v), std::nullopt, "golden");
}

HighPrecisionAlpha HighPrecisionAlpha::parse(const std::string& raw, int precision_bits) {
  const std::string spec = trim(raw);
  if (spec.size() > 6 && spec.rfind("frac(", 0) == 0 && spec.back() == ')') {
    return parse(spec.substr(5, spec.size() - 6), precision_bits).reduced();
  }
  if (spec == "pi") return pi(precision_bits);
  if (spec == "e") return euler_e(precision_bits);
  if (spec == "golden" || spec == "phi") return golden(precision_bits);
  if (spec.rfind("sqrt", 0) == 0) {
    std::string arg = spec.substr(4);
    if (arg.size() >= 2 && arg.front() == '(' && arg.back() == ')') {
      arg = arg.substr(1, arg.size() - 2);
    }
    if (!arg.empty() && std::all_of(arg.begin(), arg.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      return sqrt_of(std::stoul(arg), precision_bits);
    }
  }
  if (const auto slash = spec.find('/'); slash != std::string::npos) {
    try {
      return rational(mpz_class(trim(spec.substr(0, slash)), 10), mpz_class(trim(spec.substr(slash + 1)), 10));
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("malformed rational alpha '" + spec + "'");
    }
  }
  return from_decimal(spec, precision_bits);
}

HighPrecisionAlpha HighPrecisionAlpha::reduced() const {
  const std::string desc = description_.rfind("frac(", 0) == 0 ? description_
                                                                 : "frac(" + description_ + ")";
  if (exact_) {
    mpq_class r = *exact_ - mpq_class(floor_of(*exact_));
    r.canonicalize();
    return HighPrecisionAlpha(mpfr_from_q(r, static_cast<int>(value_.precision())), r, desc);
  }
  Mpfr v(value_.precision());
  mpfr_frac(v.get(), value_.get(), MPFR_RNDN);
  if (mpfr_sgn(v.get()) < 0) mpfr_add_ui(v.get(), v.get(), 1, MPFR_RNDN);
  return HighPrecisionAlpha(std::move(v), std::nullopt, desc);
}

namespace {

/// Reusable buffers for {alpha n^k}.
class FracEvaluator {
public:
  FracEvaluator(const HighPrecisionAlpha& alpha, int k)
      : alpha_(alpha), k_(k), product_(alpha.precision_bits()) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
  }

  double operator()(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("n must be at least 1");
    mpz_ui_pow_ui(power_.get_mpz_t(), n, static_cast<unsigned long>(k_));
    if (const auto& q = alpha_.exact()) {
      residue_ = q->get_num() * power_;
      mpz_fdiv_r(residue_.get_mpz_t(), residue_.get_mpz_t(), q->get_den_mpz_t());
      return mpq_class(residue_, q->get_den()).get_d();
    }
    const int need = required_precision_bits(n, k_);
    if (alpha_.precision_bits() < need) {
      throw PrecisionError("alpha carries " + std::to_string(alpha_.precision_bits()) +
                           " bits but n = " + std::to_string(n) + ", k = " + std::to_string(k_) +
                           " needs " + std::to_string(need));
    }
    mpfr_mul_z(product_.get(), alpha_.value().get(), power_.get_mpz_t(), MPFR_RNDN);
    mpfr_frac(product_.get(), product_.get(), MPFR_RNDN);
    double f = product_.to_double();
    if (f < 0.0) f += 1.0;
    return f >= 1.0 ? 0.0 : f;
  }

private:
  const HighPrecisionAlpha& alpha_;
  int k_;
  Mpfr product_;
  mpz_class power_;
  mpz_class residue_;
};

double to_norm(double f) { return std::min(f, 1.0 - f); }

}  // namespace

double frac_part(const HighPrecisionAlpha& alpha, std::uint64_t n, int k) {
  return FracEvaluator(alpha, k)(n);
}

double frac_norm(const HighPrecisionAlpha& alpha, std::uint64_t n, int k) {
  return to_norm(frac_part(alpha, n, k));
}

std::vector<FracMin> min_fracparts_checkpoints(const HighPrecisionAlpha& alpha,
                                               const std::vector<std::uint64_t>& checkpoints,
                                               int k) {
  if (checkpoints.empty()) return {};
  if (checkpoints.front() < 1 || !std::is_sorted(checkpoints.begin(), checkpoints.end())) {
    throw std::invalid_argument("checkpoints must be ascending and at least 1");
  }
  FracEvaluator eval(alpha, k);
  std::vector<FracMin> out;
  FracMin best{0, std::numeric_limits<double>::infinity()};
  std::size_t next = 0;
  for (std::uint64_t n = 1; next < checkpoints.size(); ++n) {
    const double v = to_norm(eval(n));
    if (v < best.value) best = {n, v};
    while (next < checkpoints.size() && checkpoints[next] == n) {
      out.push_back(best);
      ++next;
    }
  }
  return out;
}

FracMin min_fracparts(const HighPrecisionAlpha& alpha, std::uint64_t N, int k) {
  if (N < 1) throw std::invalid_argument("N must be at least 1");
  return min_fracparts_checkpoints(alpha, {N}, k).front();
}

FracMin min_fracparts_double(double alpha, std::uint64_t N, int k) {
  if (N < 1) throw std::invalid_argument("N must be at least 1");
  FracMin best{0, std::numeric_limits<double>::infinity()};
  for (std::uint64_t n = 1; n <= N; ++n) {
    double power = 1.0;
    for (int i = 0; i < k; ++i) power *= static_cast<double>(n);
    const double x = alpha * power;
    const double v = std::abs(x - std::nearbyint(x));
    if (v < best.value) best = {n, v};
  }
  return best;
}

std::uint64_t double_scan_limit(int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  auto fits = [k](std::uint64_t m) {
    long double p = 1;
    for (int i = 0; i < k; ++i) p *= m;
    return p <= 1073741824.0L;  // 2^30
  };
  auto n = static_cast<std::uint64_t>(std::pow(2.0, 30.0 / k));
  while (n > 1 && !fits(n)) --n;
  while (fits(n + 1)) ++n;
  return n;
}

namespace {

/// |q alpha - a|, exact for rational alpha.
struct Quality {
  std::optional<mpq_class> exact;
  Mpfr approx{64};

  double to_double() const { return exact ? exact->get_d() : approx.to_double(); }

  bool less_than(const Quality& other) const {
    if (exact && other.exact) return *exact < *other.exact;
    return mpfr_less_p(approx.get(), other.approx.get()) != 0;
  }

  bool at_most(const mpq_class& bound) const {
    if (exact) return *exact <= bound;
    return mpfr_cmp_q(approx.get(), bound.get_mpq_t()) <= 0;
  }
};

Quality quality_of(const HighPrecisionAlpha& alpha, const mpz_class& a, const mpz_class& q) {
  Quality out;
  if (const auto& x = alpha.exact()) {
    mpq_class d = mpq_class(q) * *x - mpq_class(a);
    d = abs(d);
    out.exact = d;
    out.approx = mpfr_from_q(d, kExactDisplayBits);
    return out;
  }
  out.approx = Mpfr(alpha.precision_bits());
  mpfr_mul_z(out.approx.get(), alpha.value().get(), q.get_mpz_t(), MPFR_RNDN);
  mpfr_sub_z(out.approx.get(), out.approx.get(), a.get_mpz_t(), MPFR_RNDN);
  mpfr_abs(out.approx.get(), out.approx.get(), MPFR_RNDN);
  return out;
}

struct Candidate {
  mpz_class a;
  mpz_class q;
  Quality quality;
};

Candidate best_convergent(const HighPrecisionAlpha& alpha, std::uint64_t Q) {
  if (Q < 1) throw std::invalid_argument("Q must be at least 1");
  const mpz_class Qz(static_cast<unsigned long>(Q));

  // Partial quotients come from exact Euclid for rationals, from the MPFR
  // expansion otherwise.
  std::optional<mpq_class> rem_exact = alpha.exact();
  std::optional<Mpfr> rem_real;
  if (!rem_exact) {
    const double needed = 2.0 * std::log2(static_cast<double>(Q)) + 32.0;
    if (alpha.precision_bits() < needed) {
      throw PrecisionError("alpha carries " + std::to_string(alpha.precision_bits()) +
                           " bits; continued fraction up to Q = " + std::to_string(Q) + " needs " +
                           std::to_string(static_cast<int>(std::ceil(needed))));
    }
    rem_real = alpha.value();
  }

  mpz_class h_prev2 = 0, h_prev1 = 1;  // numerators p_{-2}, p_{-1}
  mpz_class k_prev2 = 1, k_prev1 = 0;  // denominators q_{-2}, q_{-1}
  std::optional<Candidate> best;
  for (int iter = 0; iter < 4096; ++iter) {
    mpz_class term;
    bool terminal = false;
    if (rem_exact) {
      term = floor_of(*rem_exact);
      mpq_class f = *rem_exact - mpq_class(term);
      if (f == 0) {
        terminal = true;
      } else {
        rem_exact = 1 / f;
      }
    } else {
      term = floor_of(*rem_real);
      Mpfr f(rem_real->precision());
      mpfr_sub_z(f.get(), rem_real->get(), term.get_mpz_t(), MPFR_RNDN);
      if (mpfr_zero_p(f.get())) {
        terminal = true;
      } else {
        mpfr_ui_div(rem_real->get(), 1, f.get(), MPFR_RNDN);
      }
    }
    const mpz_class h = term * h_prev1 + h_prev2;
    const mpz_class q = term * k_prev1 + k_prev2;
    if (q > Qz) break;
    Candidate c{h, q, quality_of(alpha, h, q)};
    if (!best || c.quality.less_than(best->quality)) best = std::move(c);
    if (terminal) break;
    h_prev2 = h_prev1;
    h_prev1 = h;
    k_prev2 = k_prev1;
    k_prev1 = q;
  }
  return std::move(*best);
}

mpz_class nearest_integer(const HighPrecisionAlpha& alpha, const mpz_class& q) {
  if (const auto& x = alpha.exact()) {
    mpq_class y = mpq_class(q) * *x + mpq_class(1, 2);
    return floor_of(y);
  }
  Mpfr y(alpha.precision_bits() + 64);
  mpfr_mul_z(y.get(), alpha.value().get(), q.get_mpz_t(), MPFR_RNDN);
  mpz_class r;
  mpfr_get_z(r.get_mpz_t(), y.get(), MPFR_RNDN);
  return r;
}

Candidate best_exhaustive(const HighPrecisionAlpha& alpha, std::uint64_t Q) {
  if (Q < 1) throw std::invalid_argument("Q must be at least 1");
  std::optional<Candidate> best;
  for (std::uint64_t qi = 1; qi <= Q; ++qi) {
    const mpz_class q(static_cast<unsigned long>(qi));
    const mpz_class a = nearest_integer(alpha, q);
    Candidate c{a, q, quality_of(alpha, a, q)};
    if (!best || c.quality.less_than(best->quality)) best = std::move(c);
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), best->a.get_mpz_t(), best->q.get_mpz_t());
  if (g > 1) {
    best->a /= g;
    best->q /= g;
    best->quality = quality_of(alpha, best->a, best->q);
  }
  return std::move(*best);
}

RationalApprox to_approx(const Candidate& c) { return {c.a, c.q, c.quality.to_double()}; }

mpq_class arc_threshold(std::uint64_t P, int k, std::uint64_t Q) {
  if (P < 1) throw std::invalid_argument("P must be at least 1");
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  mpq_class t(mpz_class(static_cast<unsigned long>(Q)), pow_ui(P, k));
  t.canonicalize();
  return t;
}

ArcVerdict make_verdict(const Candidate& c, bool major, std::uint64_t P, int k, std::uint64_t Q,
                        const mpq_class& threshold) {
  ArcVerdict v;
  v.major = major;
  v.witness = to_approx(c);
  v.P = P;
  v.k = k;
  v.Q = Q;
  v.threshold = threshold.get_d();
  const mpz_class Qz(static_cast<unsigned long>(Q));
  v.Q_in_range = Q >= 1 && Qz * Qz <= pow_ui(P, k);
  return v;
}

}  // namespace

RationalApprox dirichlet_approx(const HighPrecisionAlpha& alpha, std::uint64_t Q) {
  return to_approx(best_convergent(alpha, Q));
}

RationalApprox dirichlet_approx_exhaustive(const HighPrecisionAlpha& alpha, std::uint64_t Q) {
  return to_approx(best_exhaustive(alpha, Q));
}

ArcVerdict classify_arc(const HighPrecisionAlpha& alpha, std::uint64_t P, int k, std::uint64_t Q) {
  const auto threshold = arc_threshold(P, k, Q);
  const auto reduced = alpha.reduced();
  // A coprime witness below the threshold exists iff the best approximation
  // with q <= Q is below it: dividing out a common factor only shrinks |q alpha - a|.
  const auto best = best_convergent(reduced, Q);
  return make_verdict(best, best.quality.at_most(threshold), P, k, Q, threshold);
}

ArcVerdict classify_arc_exhaustive(const HighPrecisionAlpha& alpha, std::uint64_t P, int k,
                                   std::uint64_t Q) {
  if (Q > 100'000) throw std::invalid_argument("exhaustive classification is limited to Q <= 10^5");
  const auto threshold = arc_threshold(P, k, Q);
  const auto reduced = alpha.reduced();
  for (std::uint64_t qi = 1; qi <= Q; ++qi) {
    const mpz_class q(static_cast<unsigned long>(qi));
    const mpz_class a = nearest_integer(reduced, q);
    Candidate c{a, q, quality_of(reduced, a, q)};
    if (c.quality.at_most(threshold)) {
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), c.a.get_mpz_t(), c.q.get_mpz_t());
      if (g > 1) c = Candidate{c.a / g, c.q / g, quality_of(reduced, c.a / g, c.q / g)};
      return make_verdict(c, true, P, k, Q, threshold);
    }
  }
  return make_verdict(best_exhaustive(reduced, Q), false, P, k, Q, threshold);
}

Theorem12Report theorem12_probe(const HighPrecisionAlpha& alpha, int k,
                                const std::vector<std::uint64_t>& N_list) {
  if (k < 6) throw std::invalid_argument("the fractional-part probe needs k >= 6");
  if (N_list.empty()) throw std::invalid_argument("N_list must not be empty");
  if (!std::is_sorted(N_list.begin(), N_list.end()) || N_list.front() < 1) {
    throw std::invalid_argument("N_list must be ascending and at least 1");
  }
  if (N_list.back() > kScanBudget) {
    throw std::invalid_argument("scan of " + std::to_string(N_list.back()) +
                                " terms exceeds the budget of " + std::to_string(kScanBudget));
  }
  const double rho = rho_of(k);
  std::optional<double> S;
  if (k <= 20) S = table1_row(k).S.value();

  Theorem12Report report;
  report.alpha = alpha.description();
  report.k = k;
  const auto mins = min_fracparts_checkpoints(alpha, N_list, k);
  for (std::size_t i = 0; i < N_list.size(); ++i) {
    Theorem12Row row;
    row.N = N_list[i];
    row.min_value = mins[i].value;
    row.n_star = mins[i].n_star;
    const double logN = std::log(static_cast<double>(row.N));
    row.rho_bound = std::exp(-rho * logN);
    if (S) row.S_bound = std::exp(-logN / *S);
    if (row.min_value > 0.0 && row.N > 1) row.observed_exponent = -std::log(row.min_value) / logN;
    row.within_rho_bound = row.min_value <= row.rho_bound;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace smoothweyl
