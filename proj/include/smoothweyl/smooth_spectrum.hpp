#pragma once

// Smooth numbers, smooth Weyl sums f(alpha; P, R) = sum e(alpha n^k) over
// R-smooth n <= P, and their moments U_t(P, R) = int_0^1 |f|^t.

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "smoothweyl/exponents.hpp"
#include "smoothweyl/fracparts.hpp"

namespace smoothweyl {

/// Raised when an exact count would need a frequency table above budget.
class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct SmoothSet {
  std::int64_t P = 0;
  std::int64_t R = 0;
  std::vector<std::int64_t> elements;  // sorted, includes 1

  std::size_t size() const { return elements.size(); }
};

/// Primes up to and including n.
std::vector<std::int64_t> primes_up_to(std::int64_t n);

/// All n <= P whose prime factors are <= R, by depth-first products over the
/// primes up to R.
SmoothSet smooth_numbers(std::int64_t P, std::int64_t R);

/// f(alpha) with the double alpha read as the exact dyadic rational it is;
/// alpha n^k is reduced mod 1 in exact integer arithmetic.
std::complex<double> weyl_sum(double alpha, const SmoothSet& set, int k);

/// f(alpha) through the extended-precision fractional part.
std::complex<double> weyl_sum(const HighPrecisionAlpha& alpha, const SmoothSet& set, int k);

/// f(j / G), with j n^k reduced mod G exactly.
std::complex<double> weyl_sum_at_fraction(std::uint64_t j, std::uint64_t G, const SmoothSet& set,
                                          int k);

enum class MomentMethod { ExactCount, Quadrature };

std::string_view to_string(MomentMethod m);

struct MomentResult {
  int k = 0;
  std::int64_t P = 0;
  std::int64_t R = 0;
  double order = 0.0;
  double value = 0.0;
  std::optional<std::uint64_t> exact_count;  // ExactCount only
  MomentMethod method = MomentMethod::ExactCount;
  double error_estimate = 0.0;
};

/// Default cap on the number of s-tuples tabulated by an exact count.
inline constexpr std::uint64_t kDefaultTupleBudget = 20'000'000;

/// U_{2s} = sum_v c(v)^2 with c(v) the number of s-tuples whose k-th power
/// sum is v. Power sums are exact (128-bit when s P^k provably fits,
/// arbitrary width otherwise).
MomentResult moment_even_exact(const SmoothSet& set, int k, int s,
                               std::uint64_t tuple_budget = kDefaultTupleBudget);

/// Grid size that integrates |f|^2 exactly: 4 P^k.
std::uint64_t recommended_grid(std::int64_t P, int k);

/// Rectangle rule over alpha = j / grid_points; the error estimate is the
/// change from the half-size grid.
MomentResult moment_real_quadrature(const SmoothSet& set, int k, double t,
                                    std::uint64_t grid_points);

class WeightFunction {
public:
  WeightFunction(std::int64_t P, std::function<std::complex<double>(std::int64_t)> w);
  explicit WeightFunction(std::vector<std::complex<double>> values_from_one);

  std::complex<double> operator()(std::int64_t n) const;
  std::int64_t P() const { return static_cast<std::int64_t>(values_.size()); }
  /// max |w(n)| over 1 <= n <= P.
  double sup_norm() const { return sup_norm_; }

private:
  std::vector<std::complex<double>> values_;
  double sup_norm_ = 0.0;
};

/// sum_v |W(v)|^2 with W(v) the sum of prod w(x_i) over s-tuples of power
/// sum v; the same value as the weighted solution count.
std::complex<double> weighted_moment_even(const SmoothSet& set, int k, int s,
                                          const WeightFunction& w,
                                          std::uint64_t tuple_budget = kDefaultTupleBudget);

/// R as a function of P for probes: R = clamp(ceil(P^eta), 2, P).
struct RRule {
  double eta = 1.0;
  std::int64_t operator()(std::int64_t P) const;
};

struct ProbeRow {
  int k = 0;
  std::int64_t P = 0;
  std::int64_t R = 0;
  double t = 0.0;
  MomentMethod method = MomentMethod::ExactCount;
  double value = 0.0;
  double error_estimate = 0.0;
  double observed_exponent = 0.0;             // log U_t / log P
  std::optional<double> predicted_exponent;   // t - k + Delta_t
};

struct ProbeReport {
  int k = 0;
  double t = 0.0;
  std::optional<double> delta_t;
  std::string exponent_source;
  std::vector<ProbeRow> rows;
};

/// Observed growth of U_t(P, R) against the admissible-exponent prediction.
/// Even t uses exact counts, other t the recommended quadrature grid. For
/// t = 2 the prediction uses Delta_2 = k - 1 (U_2 = |A(P, R)|).
ProbeReport admissibility_probe(int k, double t, const ExponentProvider* provider,
                                const std::vector<std::int64_t>& P_list, RRule rule = {},
                                std::uint64_t tuple_budget = kDefaultTupleBudget);

}  // namespace smoothweyl
