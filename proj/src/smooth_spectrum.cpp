#include "smoothweyl/smooth_spectrum.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <limits>
#include <numbers>

namespace smoothweyl {

namespace mp = boost::multiprecision;

std::string_view to_string(MomentMethod m) {
  return m == MomentMethod::ExactCount ? "exact" : "quadrature";
}

std::vector<std::int64_t> primes_up_to(std::int64_t n) {
  std::vector<std::int64_t> primes;
  if (n < 2) return primes;
  std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
  for (std::int64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::int64_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return primes;
}

SmoothSet smooth_numbers(std::int64_t P, std::int64_t R) {
  if (R < 2) throw std::invalid_argument("smoothness bound R must be at least 2");
  if (P < 1) throw std::invalid_argument("P must be at least 1");
  SmoothSet set{P, R, {}};
  const auto primes = primes_up_to(std::min(P, R));

  struct Frame {
    std::int64_t n;
    std::size_t first_prime;
  };
  std::vector<Frame> stack{{1, 0}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    set.elements.push_back(f.n);
    for (std::size_t i = f.first_prime; i < primes.size(); ++i) {
      if (primes[i] > P / f.n) break;
      stack.push_back({f.n * primes[i], i});
    }
  }
  std::sort(set.elements.begin(), set.elements.end());
  return set;
}

namespace {

std::complex<double> unit_phase(double x) {
  // x in [0, 1); fold to (-1/2, 1/2] before scaling.
  const double y = x > 0.5 ? x - 1.0 : x;
  const double angle = 2.0 * std::numbers::pi * y;
  return {std::cos(angle), std::sin(angle)};
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, int k, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  for (int i = 0; i < k; ++i) result = mulmod(result, base, m);
  return result;
}

void require_degree(int k) {
  if (k < 1) throw std::invalid_argument("degree k must be at least 1");
}

}  // namespace

std::complex<double> weyl_sum(const HighPrecisionAlpha& alpha, const SmoothSet& set, int k) {
  require_degree(k);
  std::complex<double> sum = 0.0;
  for (auto n : set.elements) sum += unit_phase(frac_part(alpha, static_cast<std::uint64_t>(n), k));
  return sum;
}

std::complex<double> weyl_sum(double alpha, const SmoothSet& set, int k) {
  return weyl_sum(HighPrecisionAlpha::from_double(alpha), set, k);
}

std::complex<double> weyl_sum_at_fraction(std::uint64_t j, std::uint64_t G, const SmoothSet& set,
                                          int k) {
  require_degree(k);
  if (G < 1) throw std::invalid_argument("grid size must be positive");
  std::complex<double> sum = 0.0;
  const std::uint64_t jj = j % G;
  for (auto n : set.elements) {
    const std::uint64_t r = mulmod(jj, powmod(static_cast<std::uint64_t>(n), k, G), G);
    sum += unit_phase(static_cast<double>(r) / static_cast<double>(G));
  }
  return sum;
}

namespace {

template <class Key>
Key power_key(std::int64_t n, int k) {
  Key r = 1;
  for (int i = 0; i < k; ++i) r *= Key(n);
  return r;
}

std::uint64_t tuple_count(std::size_t set_size, int s, std::uint64_t budget) {
  mp::cpp_int count = 1;
  for (int i = 0; i < s; ++i) count *= set_size;
  if (count > budget) {
    throw ResourceError("exact moment needs a table of " + count.str() + " s-tuples (s = " +
                        std::to_string(s) + "), above the budget of " + std::to_string(budget));
  }
  return count.convert_to<std::uint64_t>();
}

/// s P^k < 2^127 lets power sums live in unsigned __int128.
bool fits_int128(std::int64_t P, int k, int s) {
  mp::cpp_int bound = s;
  for (int i = 0; i < k; ++i) bound *= P;
  return bound < (mp::cpp_int(1) << 127);
}

/// Power sums of every ordered s-tuple, paired with the product weight.
template <class Key, class Weight>
std::vector<std::pair<Key, Weight>> tuple_sums(const SmoothSet& set, int k, int s,
                                               const std::vector<Weight>& weights,
                                               std::uint64_t expected) {
  std::vector<std::pair<Key, Weight>> base;
  base.reserve(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    base.emplace_back(power_key<Key>(set.elements[i], k), weights[i]);
  }
  std::vector<std::pair<Key, Weight>> level = base;
  for (int depth = 1; depth < s; ++depth) {
    std::vector<std::pair<Key, Weight>> next;
    next.reserve(depth + 1 == s ? expected : level.size() * base.size());
    for (const auto& [sum, weight] : level) {
      for (const auto& [power, w] : base) next.emplace_back(sum + power, weight * w);
    }
    level = std::move(next);
  }
  std::sort(level.begin(), level.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return level;
}

template <class Key>
std::uint64_t count_even_moment(const SmoothSet& set, int k, int s, std::uint64_t expected) {
  const std::vector<std::uint8_t> unit(set.size(), 1);
  const auto sums = tuple_sums<Key, std::uint8_t>(set, k, s, unit, expected);
  unsigned __int128 total = 0;
  for (std::size_t i = 0; i < sums.size();) {
    std::size_t j = i;
    while (j < sums.size() && sums[j].first == sums[i].first) ++j;
    const unsigned __int128 c = j - i;
    total += c * c;
    i = j;
  }
  if (total > std::numeric_limits<std::uint64_t>::max()) {
    throw ResourceError("moment count exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(total);
}

template <class Key>
std::complex<double> weighted_even_moment(const SmoothSet& set, int k, int s,
                                          const std::vector<std::complex<double>>& weights,
                                          std::uint64_t expected) {
  const auto sums = tuple_sums<Key, std::complex<double>>(set, k, s, weights, expected);
  std::complex<double> total = 0.0;
  for (std::size_t i = 0; i < sums.size();) {
    std::complex<double> W = 0.0;
    std::size_t j = i;
    for (; j < sums.size() && sums[j].first == sums[i].first; ++j) W += sums[j].second;
    total += W * std::conj(W);
    i = j;
  }
  return total;
}

void check_moment_args(const SmoothSet& set, int k, int s) {
  require_degree(k);
  if (s < 1) throw std::invalid_argument("s must be at least 1");
  if (set.elements.empty()) throw std::invalid_argument("smooth set is empty");
}

}  // namespace

MomentResult moment_even_exact(const SmoothSet& set, int k, int s, std::uint64_t tuple_budget) {
  check_moment_args(set, k, s);
  const auto expected = tuple_count(set.size(), s, tuple_budget);
  const std::int64_t max_elem = set.elements.back();
  const std::uint64_t count = fits_int128(max_elem, k, s)
                                  ? count_even_moment<unsigned __int128>(set, k, s, expected)
                                  : count_even_moment<mp::cpp_int>(set, k, s, expected);
  MomentResult r;
  r.k = k;
  r.P = set.P;
  r.R = set.R;
  r.order = 2.0 * s;
  r.exact_count = count;
  r.value = static_cast<double>(count);
  r.method = MomentMethod::ExactCount;
  return r;
}

std::complex<double> weighted_moment_even(const SmoothSet& set, int k, int s,
                                          const WeightFunction& w, std::uint64_t tuple_budget) {
  check_moment_args(set, k, s);
  if (w.P() < set.elements.back()) {
    throw std::invalid_argument("weight function does not cover the smooth set");
  }
  const auto expected = tuple_count(set.size(), s, tuple_budget);
  std::vector<std::complex<double>> weights;
  weights.reserve(set.size());
  for (auto n : set.elements) weights.push_back(w(n));
  const std::int64_t max_elem = set.elements.back();
  return fits_int128(max_elem, k, s)
             ? weighted_even_moment<unsigned __int128>(set, k, s, weights, expected)
             : weighted_even_moment<mp::cpp_int>(set, k, s, weights, expected);
}

std::uint64_t recommended_grid(std::int64_t P, int k) {
  require_degree(k);
  long double g = 4.0L;
  for (int i = 0; i < k; ++i) g *= static_cast<long double>(P);
  if (g > static_cast<long double>(1ULL << 62)) {
    throw ResourceError("recommended grid 4 P^k does not fit in 62 bits");
  }
  return static_cast<std::uint64_t>(g);
}

namespace {

constexpr std::uint64_t kTwiddleLimit = 1ULL << 24;

/// (1/G) sum_j |f(j/G)|^t, and the same over even j when G is even.
std::pair<double, std::optional<double>> rectangle_rule(const SmoothSet& set, int k, double t,
                                                        std::uint64_t G) {
  std::vector<std::uint64_t> residues;
  residues.reserve(set.size());
  for (auto n : set.elements) residues.push_back(powmod(static_cast<std::uint64_t>(n), k, G));

  std::vector<std::complex<double>> twiddle;
  if (G <= kTwiddleLimit) {
    twiddle.resize(G);
    for (std::uint64_t r = 0; r < G; ++r) {
      twiddle[r] = unit_phase(static_cast<double>(r) / static_cast<double>(G));
    }
  }

  double sum_all = 0.0;
  double sum_even = 0.0;
  for (std::uint64_t j = 0; j < G; ++j) {
    std::complex<double> f = 0.0;
    for (auto r : residues) {
      const std::uint64_t idx = mulmod(j, r, G);
      f += twiddle.empty() ? unit_phase(static_cast<double>(idx) / static_cast<double>(G))
                           : twiddle[idx];
    }
    const double term = std::pow(std::abs(f), t);
    sum_all += term;
    if (j % 2 == 0) sum_even += term;
  }
  std::optional<double> half;
  if (G % 2 == 0) half = sum_even / static_cast<double>(G / 2);
  return {sum_all / static_cast<double>(G), half};
}

}  // namespace

MomentResult moment_real_quadrature(const SmoothSet& set, int k, double t,
                                    std::uint64_t grid_points) {
  require_degree(k);
  if (grid_points < 2) throw std::invalid_argument("quadrature needs at least 2 grid points");
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("order t must be >= 0");
  if (set.elements.empty()) throw std::invalid_argument("smooth set is empty");

  auto [value, half] = rectangle_rule(set, k, t, grid_points);
  if (!half) half = rectangle_rule(set, k, t, grid_points / 2).first;

  MomentResult r;
  r.k = k;
  r.P = set.P;
  r.R = set.R;
  r.order = t;
  r.value = value;
  r.method = MomentMethod::Quadrature;
  r.error_estimate = std::abs(value - *half);
  return r;
}

WeightFunction::WeightFunction(std::int64_t P,
                               std::function<std::complex<double>(std::int64_t)> w) {
  if (P < 1) throw std::invalid_argument("weight function needs P >= 1");
  values_.reserve(static_cast<std::size_t>(P));
  for (std::int64_t n = 1; n <= P; ++n) values_.push_back(w(n));
  for (const auto& v : values_) sup_norm_ = std::max(sup_norm_, std::abs(v));
}

WeightFunction::WeightFunction(std::vector<std::complex<double>> values_from_one)
    : values_(std::move(values_from_one)) {
  if (values_.empty()) throw std::invalid_argument("weight function needs P >= 1");
  for (const auto& v : values_) sup_norm_ = std::max(sup_norm_, std::abs(v));
}

std::complex<double> WeightFunction::operator()(std::int64_t n) const {
  if (n < 1 || n > P()) throw std::out_of_range("weight index outside [1, P]");
  return values_[static_cast<std::size_t>(n - 1)];
}

std::int64_t RRule::operator()(std::int64_t P) const {
  if (P < 2) throw std::invalid_argument("probe needs P >= 2");
  const auto r = static_cast<std::int64_t>(std::ceil(std::pow(static_cast<double>(P), eta) - 1e-9));
  return std::clamp<std::int64_t>(r, 2, P);
}

ProbeReport admissibility_probe(int k, double t, const ExponentProvider* provider,
                                const std::vector<std::int64_t>& P_list, RRule rule,
                                std::uint64_t tuple_budget) {
  require_degree(k);
  if (!(t > 0.0)) throw std::invalid_argument("probe order t must be positive");
  if (!std::is_sorted(P_list.begin(), P_list.end())) {
    throw std::invalid_argument("P_list must be ascending");
  }
  ProbeReport report;
  report.k = k;
  report.t = t;
  if (t == 2.0) {
    report.delta_t = k - 1.0;
    report.exponent_source = "parseval";
  } else if (provider != nullptr) {
    report.delta_t = (*provider)(t);
    report.exponent_source = std::string(to_string(provider->provenance()));
  }

  const bool even = std::floor(t / 2.0) == t / 2.0;
  for (auto P : P_list) {
    const auto set = smooth_numbers(P, rule(P));
    const auto m = even ? moment_even_exact(set, k, static_cast<int>(t / 2.0), tuple_budget)
                        : moment_real_quadrature(set, k, t, recommended_grid(P, k));
    ProbeRow row;
    row.k = k;
    row.P = P;
    row.R = set.R;
    row.t = t;
    row.method = m.method;
    row.value = m.value;
    row.error_estimate = m.error_estimate;
    row.observed_exponent = std::log(m.value) / std::log(static_cast<double>(P));
    if (report.delta_t) row.predicted_exponent = t - k + *report.delta_t;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace smoothweyl
