#pragma once

// Extended-precision fractional parts of alpha n^k, Dirichlet approximation
// and the major/minor arc split of [0, 1).

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace smoothweyl {

class PrecisionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Owning wrapper for an mpfr_t.
class Mpfr {
public:
  explicit Mpfr(mpfr_prec_t bits);
  Mpfr(const Mpfr& other);
  Mpfr(Mpfr&& other) noexcept;
  Mpfr& operator=(const Mpfr& other);
  Mpfr& operator=(Mpfr&& other) noexcept;
  ~Mpfr();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

private:
  mpfr_t value_;
};

/// Bits needed to keep alpha n^k accurate mod 1 for n <= max_n:
/// ceil(k log2 max_n) + 64.
int required_precision_bits(std::uint64_t max_n, int k);

/// A real alpha held either as an exact rational or as an MPFR value with a
/// precision fixed at construction for the largest (n, k) it will meet.
class HighPrecisionAlpha {
public:
  static HighPrecisionAlpha rational(const mpz_class& a, const mpz_class& q);
  static HighPrecisionAlpha from_double(double alpha);
  /// Decimal text like "0.123" or "-2.5e-3", read at the given precision.
  static HighPrecisionAlpha from_decimal(const std::string& text, int precision_bits);
  static HighPrecisionAlpha sqrt_of(unsigned long m, int precision_bits);
  static HighPrecisionAlpha pi(int precision_bits);
  static HighPrecisionAlpha euler_e(int precision_bits);
  /// (1 + sqrt 5) / 2.
  static HighPrecisionAlpha golden(int precision_bits);

  /// Accepts "a/q", "sqrt(m)" / "sqrtm", "pi", "e", "golden", an optional
  /// "frac(...)" wrapper, or a decimal.
  static HighPrecisionAlpha parse(const std::string& spec, int precision_bits);

  bool is_exact() const { return exact_.has_value(); }
  const std::optional<mpq_class>& exact() const { return exact_; }
  const Mpfr& value() const { return value_; }
  int precision_bits() const { return static_cast<int>(value_.precision()); }
  const std::string& description() const { return description_; }
  double to_double() const { return value_.to_double(); }

  /// alpha - floor(alpha), in [0, 1).
  HighPrecisionAlpha reduced() const;

private:
  HighPrecisionAlpha(Mpfr value, std::optional<mpq_class> exact, std::string description);

  Mpfr value_;
  std::optional<mpq_class> exact_;
  std::string description_;
};

/// {alpha n^k} in [0, 1). n^k is formed exactly; throws PrecisionError when
/// alpha carries fewer than required_precision_bits(n, k) bits.
double frac_part(const HighPrecisionAlpha& alpha, std::uint64_t n, int k);

/// ||alpha n^k||, the distance to the nearest integer.
double frac_norm(const HighPrecisionAlpha& alpha, std::uint64_t n, int k);

struct FracMin {
  std::uint64_t n_star = 0;
  double value = 0.0;
};

/// argmin over 1 <= n <= N of ||alpha n^k|| (ties to the smallest n).
FracMin min_fracparts(const HighPrecisionAlpha& alpha, std::uint64_t N, int k);

/// Running minima of one scan, read off at each checkpoint (ascending).
std::vector<FracMin> min_fracparts_checkpoints(const HighPrecisionAlpha& alpha,
                                               const std::vector<std::uint64_t>& checkpoints,
                                               int k);

/// Double-only scan: alpha as a double, n^k as a double.
FracMin min_fracparts_double(double alpha, std::uint64_t N, int k);

/// Largest N for which the double-only scan is accurate to 1e-6:
/// N^k <= 2^30.
std::uint64_t double_scan_limit(int k);

struct RationalApprox {
  mpz_class a;
  mpz_class q;
  double quality = 0.0;  // |q alpha - a|
};

/// Coprime (a, q), 1 <= q <= Q, minimising |q alpha - a| (ties to the
/// smallest q), read off the continued-fraction convergents.
RationalApprox dirichlet_approx(const HighPrecisionAlpha& alpha, std::uint64_t Q);

/// Same answer by trying every q <= Q; for cross-checks.
RationalApprox dirichlet_approx_exhaustive(const HighPrecisionAlpha& alpha, std::uint64_t Q);

struct ArcVerdict {
  bool major = false;
  RationalApprox witness;
  std::uint64_t P = 0;
  int k = 0;
  std::uint64_t Q = 0;
  double threshold = 0.0;   // Q P^{-k}
  bool Q_in_range = true;   // 1 <= Q <= P^{k/2}
};

/// Major iff some coprime 0 <= a <= q <= Q has |q alpha - a| <= Q P^{-k};
/// alpha is first reduced mod 1.
ArcVerdict classify_arc(const HighPrecisionAlpha& alpha, std::uint64_t P, int k, std::uint64_t Q);

/// Exhaustive version over every q <= Q (Q <= 10^5).
ArcVerdict classify_arc_exhaustive(const HighPrecisionAlpha& alpha, std::uint64_t P, int k,
                                   std::uint64_t Q);

struct Theorem12Row {
  std::uint64_t N = 0;
  double min_value = 0.0;
  std::uint64_t n_star = 0;
  double rho_bound = 0.0;              // N^{-rho(k)}
  std::optional<double> S_bound;       // N^{-1/S(k)} when k is tabulated
  std::optional<double> observed_exponent;  // -log(min)/log N, absent when min = 0
  bool within_rho_bound = false;
};

struct Theorem12Report {
  std::string alpha;
  int k = 0;
  std::vector<Theorem12Row> rows;
};

inline constexpr std::uint64_t kScanBudget = 10'000'000;

Theorem12Report theorem12_probe(const HighPrecisionAlpha& alpha, int k,
                                const std::vector<std::uint64_t>& N_list);

}  // namespace smoothweyl
