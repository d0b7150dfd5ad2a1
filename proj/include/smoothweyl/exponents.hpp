#pragma once

// Admissible exponents for moments of smooth Weyl sums.
//
// The basic object is the root delta_t of
//
//     delta + log(delta) = 1 - t/k,
//
// whose multiple k*delta_t is an admissible exponent for the moment of order
// t >= 4. The even-order recurrence, the refined step to order 2s+2 and the
// Hoelder interpolation between consecutive even orders live here as well.
// Exponents are stated without the customary epsilon.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace smoothweyl {

/// Raised when an iterative root solve exhausts its iteration cap.
class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class Provenance { Theorem21, Recurrence, TableData, AnalyticBound, Hua };

std::string_view to_string(Provenance p);
Provenance provenance_from_string(std::string_view name);

struct DeltaSolution {
  int k = 0;
  double t = 0.0;
  double delta = 0.0;
  double residual = 0.0;
};

struct AdmissibleExponent {
  int k = 0;
  double t = 0.0;
  double delta_t = 0.0;
  Provenance provenance = Provenance::Theorem21;
};

struct RecurrenceState {
  int k = 0;
  int s = 0;
  double delta_2s = 0.0;
  double omega = 0.0;
  double delta_next = 0.0;
};

inline constexpr double kDefaultRootTol = 1e-13;
inline constexpr int kRootIterationCap = 200;

/// Positive root x of x + log x = rhs, for rhs <= 1. Bracketed Newton with a
/// bisection fallback on [exp(rhs - 1), exp(rhs)].
double solve_log_linear(double rhs, double tol = kDefaultRootTol);

DeltaSolution solve_delta(int k, double t, double tol = kDefaultRootTol);

/// k * exp(1 - t/k), an upper bound for k * delta_t.
double delta_analytic_bound(int k, double t);

/// Hua's lemma: k - 2 is admissible for the fourth moment.
AdmissibleExponent hua_delta4(int k);

/// Delta_{2s} with Delta/k + log(Delta/k) = 1 - 2s/k - 5/(16k^2).
double recurrence_delta_even(int k, int s, double tol = kDefaultRootTol);

/// omega = 2^{1-k}(1 - Delta_{2s}/k) and
/// Delta'_{2s+2} = Delta_{2s}(1 - (2 - omega)/(k + Delta_{2s})).
RecurrenceState recurrence_delta_next(int k, double delta_2s);

/// Hoelder interpolation (1-v) Delta_{2s} + v Delta_{2s+2} with
/// s = floor(t/2), v = t/2 - s.
AdmissibleExponent interpolate_delta(int k, double t, double delta_2s, double delta_next);

/// E = -5/8 + 2 k v omega - v^2.
double e_term(int k, double v, double omega);

/// Tabulated (t, Delta_t) pairs for one degree k. Orders are kept sorted.
class ExponentTable {
public:
  ExponentTable() = default;
  explicit ExponentTable(int k) : k_(k) {}

  void add(double t, double delta_t);

  int k() const { return k_; }
  bool empty() const { return entries_.empty(); }
  double t_min() const;
  double t_max() const;

  /// Linear interpolation between bracketing tabulated orders; nullopt when
  /// t lies outside [t_min, t_max].
  std::optional<double> lookup(double t) const;

  struct Entry {
    double t;
    double delta_t;
  };
  const std::vector<Entry>& entries() const { return entries_; }

private:
  int k_ = 0;
  std::vector<Entry> entries_;
};

/// Dispatch over the available exponent sources. TableData requires a table
/// that brackets t; Hua only answers t = 4.
AdmissibleExponent admissible(int k, double t, Provenance source,
                              const ExponentTable* table = nullptr);

/// Uniform view used by the parameter optimiser: Delta_t for a fixed k and
/// source, or nullopt outside the source's domain.
class ExponentProvider {
public:
  ExponentProvider(int k, Provenance source, std::optional<ExponentTable> table = std::nullopt);

  int k() const { return k_; }
  Provenance provenance() const { return source_; }
  const std::optional<ExponentTable>& table() const { return table_; }

  std::optional<double> operator()(double t) const;

  /// Orders where the source is defined: [4, inf) for the formula sources,
  /// the tabulated range for TableData, {4} for Hua.
  double domain_lo() const;
  double domain_hi() const;

private:
  int k_;
  Provenance source_;
  std::optional<ExponentTable> table_;
};

}  // namespace smoothweyl
