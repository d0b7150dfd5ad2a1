// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "smoothweyl/arc_params.hpp"
#include "smoothweyl/exponents.hpp"
#include "smoothweyl/fracparts.hpp"
#include "smoothweyl/smooth_spectrum.hpp"
#include "smoothweyl/table1.hpp"

using namespace smoothweyl;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.pass) ++failures;
  std::printf("%s  %2d  %-34s %8.3fs  %s\n", o.pass ? "PASS" : "FAIL", id, name, secs,
              o.detail.c_str());
  std::fflush(stdout);
}

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Direct count over all 2s-tuples.
std::uint64_t brute_moment(const std::vector<std::int64_t>& A, int k, int s) {
  using boost::multiprecision::cpp_int;
  std::vector<cpp_int> pw;
  for (auto a : A) pw.push_back(boost::multiprecision::pow(cpp_int(a), k));
  std::vector<std::size_t> idx(2 * s, 0);
  std::uint64_t count = 0;
  while (true) {
    cpp_int lhs = 0, rhs = 0;
    for (int i = 0; i < s; ++i) lhs += pw[idx[i]];
    for (int i = s; i < 2 * s; ++i) rhs += pw[idx[i]];
    if (lhs == rhs) ++count;
    int pos = 0;
    while (pos < 2 * s && ++idx[pos] == A.size()) idx[pos++] = 0;
    if (pos == 2 * s) break;
  }
  return count;
}

// Meet in the middle over s-tuples, independent of the library's sort-based count.
std::uint64_t map_moment(const std::vector<std::int64_t>& A, int k, int s) {
  using boost::multiprecision::cpp_int;
  std::map<cpp_int, std::uint64_t> reps{{0, 1}};
  for (int i = 0; i < s; ++i) {
    std::map<cpp_int, std::uint64_t> next;
    for (const auto& [v, c] : reps) {
      for (auto a : A) next[v + boost::multiprecision::pow(cpp_int(a), k)] += c;
    }
    reps = std::move(next);
  }
  std::uint64_t total = 0;
  for (const auto& [v, c] : reps) total += c * c;
  return total;
}

Outcome table_T() {
  const auto report = verify_T_column(load_table1());
  double worst = 0.0;
  for (const auto& r : report.rows) worst = std::max(worst, r.deviation);
  const bool nonneg = std::all_of(report.rows.begin(), report.rows.end(),
                                  [](const ColumnCheck& c) { return c.deviation >= 0.0; });
  return {report.pass && report.rows.size() == 15 && nonneg && worst < 1e-4,
          fmt("15 rows, max printed-recomputed %.3g", worst)};
}

Outcome table_S() {
  const auto report = verify_S_column(load_table1());
  double worst = 0.0;
  for (const auto& r : report.rows) worst = std::max(worst, r.deviation);
  return {report.pass && report.rows.size() == 15 && worst < 1e-4,
          fmt("15 rows, max printed-recomputed %.3g", worst)};
}

Outcome constant_chain() {
  const double phi = phi_constant(kLemma32D);
  bool ok = std::abs(phi - 8.0211233) <= 1e-7 && std::ceil(phi * 1e5) / 1e5 == kRhoConstant;
  double worst_f = 0.0, worst_t = 0.0;
  for (int k = 6; k <= 20; ++k) {
    const ExponentProvider provider(k, Provenance::AnalyticBound);
    const auto [lo, hi] = default_sigma_range(k);
    const auto s = sigma_optimize(k, tau_lemma32(k), provider, lo, hi);
    const double logk = std::log(static_cast<double>(k));
    worst_f = std::max(worst_f, std::abs(s.objective - (k * logk + k * phi)));
    worst_t = std::max(worst_t, std::abs(s.witness_t - (k * logk + k * (1.0 + std::log(kLemma32D)))));
  }
  ok = ok && worst_f <= 1e-6 && worst_t <= 1e-4;
  return {ok, fmt("phi=%.10f, max |1/sigma - closed| %.2g, max |t - t*| %.2g", phi, worst_f, worst_t)};
}

Outcome root_solver() {
  double worst_res = 0.0, worst_lambert = 0.0;
  int points = 0;
  for (int k = 6; k <= 20; ++k) {
    for (int i = 0; 4.0 + 0.25 * i <= 4.0 * k; ++i) {
      const double t = 4.0 + 0.25 * i;
      const auto sol = solve_delta(k, t);
      worst_res = std::max(worst_res, sol.residual);
      worst_lambert = std::max(worst_lambert,
                               std::abs(sol.delta * std::exp(sol.delta) - std::exp(1.0 - t / k)));
      ++points;
    }
  }
  double worst_zero = 0.0;
  for (int k = 6; k <= 20; ++k) worst_zero = std::max(worst_zero, std::abs(solve_delta(k, 0.0).delta - 1.0));
  return {worst_res <= 1e-12 && worst_lambert <= 1e-10 && worst_zero <= 1e-14,
          fmt("%d points, residual %.2g, Lambert %.2g, |delta_0 - 1| %.2g", points, worst_res,
              worst_lambert, worst_zero)};
}

Outcome recurrence_property() {
  double worst = -INFINITY;
  int points = 0;
  for (int k = 6; k <= 20; ++k) {
    for (int i = 0; 4.0 + 0.25 * i <= 4.0 * k; ++i) {
      const double t = 4.0 + 0.25 * i;
      const double rec = admissible(k, t, Provenance::Recurrence).delta_t;
      worst = std::max(worst, rec - k * solve_delta(k, t).delta);
      ++points;
    }
  }
  return {worst <= 1e-9, fmt("%d points, max Delta_t - k delta_t = %.4g", points, worst)};
}

Outcome moment_oracle() {
  bool ok = moment_even_exact(smooth_numbers(5, 5), 2, 2).exact_count == 45u &&
            moment_even_exact(smooth_numbers(4, 4), 3, 2).exact_count == 28u;
  std::mt19937_64 rng(20240601);
  int random_cases = 0;
  while (random_cases < 20) {
    const std::int64_t P = 2 + rng() % 60;
    const std::int64_t R = 2 + rng() % 15;
    const int k = 1 + rng() % 4;
    const int s = 1 + rng() % 3;
    const auto set = smooth_numbers(P, R);
    const double work = std::pow(static_cast<double>(set.size()), 2 * s);
    if (work > 1e7) continue;
    const auto exact = *moment_even_exact(set, k, s).exact_count;
    const auto oracle = work <= 2e5 ? brute_moment(set.elements, k, s) : map_moment(set.elements, k, s);
    ok = ok && exact == oracle;
    ++random_cases;
  }
  int parseval_cases = 0;
  for (int i = 0; i < 50; ++i) {
    const std::int64_t P = 1 + rng() % 2000;
    const std::int64_t R = 2 + rng() % 200;
    const auto set = smooth_numbers(P, R);
    ok = ok && moment_even_exact(set, 1 + i % 5, 1).exact_count == set.size();
    ++parseval_cases;
  }
  return {ok, fmt("45, 28, %d random instances, %d U_2 pairs", random_cases, parseval_cases)};
}

Outcome quadrature() {
  bool ok = true;
  std::ostringstream detail;
  for (std::int64_t P : {8, 12}) {
    const auto set = smooth_numbers(P, P);
    const auto G = recommended_grid(P, 2);
    const double q2 = moment_real_quadrature(set, 2, 2.0, G).value;
    const double q4 = moment_real_quadrature(set, 2, 4.0, G).value;
    const double e4 = moment_even_exact(set, 2, 2).value;
    const double r2 = std::abs(q2 - set.size()) / set.size();
    const double r4 = std::abs(q4 - e4) / e4;
    ok = ok && r2 <= 0.005 && r4 <= 0.01;
    detail << "P=" << P << " rel2=" << r2 << " rel4=" << r4 << "  ";
  }
  return {ok, detail.str()};
}

Outcome weighted_bound() {
  const auto set = smooth_numbers(30, 30);
  const double u4 = moment_even_exact(set, 2, 2).value;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  bool ok = true;
  double worst_ratio = 0.0, worst_imag = 0.0;
  for (int i = 0; i < 100; ++i) {
    std::vector<std::complex<double>> values;
    for (int n = 1; n <= 30; ++n) values.push_back(std::polar(unit(rng), 2.0 * std::numbers::pi * unit(rng)));
    const auto w = weighted_moment_even(set, 2, 2, WeightFunction(values));
    worst_ratio = std::max(worst_ratio, std::abs(w) / u4);
    worst_imag = std::max(worst_imag, std::abs(w.imag()));
    ok = ok && std::abs(w) <= u4 && std::abs(w.imag()) <= 1e-9;
  }
  return {ok, fmt("U_4=%.0f, max |U_4(w)|/U_4 %.4f, max |Im| %.2g", u4, worst_ratio, worst_imag)};
}

Outcome arc_classification() {
  std::mt19937_64 rng(500);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int disagreements = 0;
  for (int i = 0; i < 500; ++i) {
    const auto alpha = HighPrecisionAlpha::from_double(unit(rng));
    for (std::uint64_t Q : {10, 100}) {
      if (classify_arc(alpha, 100, 6, Q).major != classify_arc_exhaustive(alpha, 100, 6, Q).major) {
        ++disagreements;
      }
    }
  }
  const bool golden_minor =
      !classify_arc(HighPrecisionAlpha::parse("frac(golden)", 256), 100, 6, 100).major;
  int rationals = 0, missed = 0;
  for (unsigned q = 1; q <= 100; ++q) {
    for (unsigned a = 0; a <= q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      ++rationals;
      if (!classify_arc(HighPrecisionAlpha::rational(a, q), 100, 6, 100).major) ++missed;
    }
  }
  return {disagreements == 0 && golden_minor && missed == 0,
          fmt("1000 oracle comparisons, %d disagreements; golden %s; %d/%d rationals major",
              disagreements, golden_minor ? "minor" : "MAJOR", rationals - missed, rationals)};
}

Outcome fracparts_probe() {
  bool ok = true;
  int rows = 0;
  double worst_gap = 0.0;
  double min_obs = INFINITY, max_obs = 0.0;
  for (const char* spec : {"sqrt(2)", "frac(e)", "frac(pi)", "frac(golden)"}) {
    for (int k : {6, 7, 8}) {
      const auto alpha = HighPrecisionAlpha::parse(spec, required_precision_bits(100000, k));
      const auto probe = theorem12_probe(alpha, k, {1000, 10000, 100000});
      for (const auto& row : probe.rows) {
        ok = ok && row.within_rho_bound && row.min_value <= row.rho_bound &&
             row.observed_exponent.has_value();
        if (row.observed_exponent) {
          min_obs = std::min(min_obs, *row.observed_exponent);
          max_obs = std::max(max_obs, *row.observed_exponent);
        }
        ++rows;
      }
      const std::uint64_t L = double_scan_limit(k);
      const double gap = std::abs(min_fracparts(alpha, L, k).value -
                                  min_fracparts_double(alpha.to_double(), L, k).value);
      worst_gap = std::max(worst_gap, gap);
      ok = ok && gap <= 1e-6;
    }
  }
  return {ok, fmt("%d rows within N^-rho; observed exponents %.3f..%.3f; double gap %.2g", rows,
                  min_obs, max_obs, worst_gap)};
}

Outcome section5() {
  bool ok = true;
  double worst_identity = 0.0;
  for (int k = 6; k <= 20; ++k) {
    const auto p = table1_params(k);
    const auto v = check_section5(k, p.sigma, p.tau, p.lambda);
    worst_identity = std::max(worst_identity, std::abs(v.lhs - v.middle));
    ok = ok && v.pass();
  }
  return {ok && worst_identity <= 1e-12, fmt("k=6..20, identity gap %.2g", worst_identity)};
}

Outcome crossover() {
  bool ok = true;
  for (int k = 6; k <= 9; ++k) ok = ok && vinogradov_crossover(k).S > k * (k - 1);
  for (int k = 10; k <= 20; ++k) ok = ok && vinogradov_crossover(k).S < k * (k - 1);
  return {ok, fmt("S(9)=%.4f > 72, S(10)=%.4f < 90", vinogradov_crossover(9).S,
                  vinogradov_crossover(10).S)};
}

}  // namespace

int main() {
  criterion(1, "table T column", table_T);
  criterion(2, "table S column", table_S);
  criterion(3, "constant chain", constant_chain);
  criterion(4, "root solver", root_solver);
  criterion(5, "recurrence below k delta_t", recurrence_property);
  criterion(6, "moment oracle equivalence", moment_oracle);
  criterion(7, "Parseval and quadrature", quadrature);
  criterion(8, "weighted moment bound", weighted_bound);
  criterion(9, "arc classification", arc_classification);
  criterion(10, "fractional-part probe", fracparts_probe);
  criterion(11, "exponent inequality", section5);
  criterion(12, "crossover against k(k-1)", crossover);
  std::printf("%d of 12 criteria passed\n", 12 - failures);
  return failures == 0 ? 0 : 1;
}
