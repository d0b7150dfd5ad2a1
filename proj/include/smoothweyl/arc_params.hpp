#pragma once

// Minor-arc parameter chain tau -> sigma -> lambda, the fractional-parts
// exponent rho, and the numeric form of the minor-arc bounds. Implied
// constants in all bound evaluations are taken to be 1.

#include <optional>
#include <string>
#include <vector>

#include "smoothweyl/exponents.hpp"

namespace smoothweyl {

/// Constant in the uniform Weyl-type bound P Q^{-1/(D k^2)}.
inline constexpr double kLemma32D = 4.5139506;
/// Constant appearing in rho(k)^{-1} = k (log k + 8.02113).
inline constexpr double kRhoConstant = 8.02113;

struct TauResult {
  double tau = 0.0;
  int witness_w = 0;
};

enum class BracketVerdict { Interior, LowerBoundary, UpperBoundary };

std::string_view to_string(BracketVerdict b);

struct SigmaResult {
  double sigma = 0.0;
  double witness_t = 0.0;
  double objective = 0.0;  // t* + (1 + Delta_{t*}) / (2 tau) = 1 / sigma
  double delta_at_witness = 0.0;
  BracketVerdict bracket = BracketVerdict::Interior;
};

struct LambdaResult {
  double lambda = 0.0;
  bool valid = false;  // 1/2 < lambda < 1
};

struct MinorArcParams {
  int k = 0;
  double tau = 0.0;
  int tau_witness_w = 0;
  double sigma = 0.0;
  double sigma_witness_t = 0.0;
  double lambda = 0.0;
  double rho = 0.0;
  Provenance provenance = Provenance::Theorem21;
};

enum class BoundTerm { MTerm, MainTerm };

struct BoundEvaluation {
  int k = 0;
  double P = 0.0;
  double M = 0.0;
  double q = 0.0;
  double t = 0.0;
  double delta_t = 0.0;
  double eps = 0.0;
  double R = 0.0;
  double m_term = 0.0;
  double main_term = 0.0;
  double value = 0.0;
  double log_value = 0.0;
  BoundTerm dominant_term = BoundTerm::MTerm;
};

struct Section5Verdict {
  int k = 0;
  double lhs = 0.0;     // (k-1) sigma + k lambda - k
  double middle = 0.0;  // (k - 1 - k/(2 tau)) sigma
  double rhs = 0.0;     // -2 sigma
  bool first_holds = false;
  bool second_holds = false;
  double rho = 0.0;
  double nu = 0.0;  // (sigma - rho) / 2
  bool nu_valid = false;
  bool pass() const { return first_holds && second_holds && nu_valid; }
};

struct CrossoverVerdict {
  int k = 0;
  double S = 0.0;
  int vinogradov = 0;  // k (k - 1)
  bool smooth_bound_wins = false;  // S(k) < k (k - 1)
};

/// tau = max_w (k - 2 Delta_{2w}) / (4 w^2) over 1 <= w <= w_max. Orders the
/// provider cannot supply and non-positive numerators are skipped; ties go to
/// the smallest w. Throws std::domain_error when no candidate is positive.
TauResult tau_from_exponents(int k, const ExponentProvider& provider, int w_max);

inline int default_w_max(int k) { return 5 * k; }

/// 1 / (2 D k).
double tau_lemma32(int k);

/// Default search range (k + 1, 6 k log k] for the sigma optimiser.
std::pair<double, double> default_sigma_range(int k);

/// Minimises F(t) = t + (1 + Delta_t) / (2 tau) over [t_lo, t_hi] intersected
/// with the provider's domain: a 0.5-step grid followed by golden-section
/// refinement to width 1e-9.
SigmaResult sigma_optimize(int k, double tau, const ExponentProvider& provider, double t_lo,
                           double t_hi);

/// Stationary point of F for Delta_t = k delta_t: delta/(1+delta) = 2 tau, so
/// delta* = 2tau/(1-2tau) and t* = k(1 - delta* - log delta*).
struct StationaryPoint {
  double t = 0.0;
  double delta = 0.0;
  double objective = 0.0;
};
StationaryPoint theorem21_stationary_point(int k, double tau);

LambdaResult lambda_of(double sigma, double tau);

double rho_of(int k);

/// D + 2 + log D.
double phi_constant(double D);

/// M^{1+eps} + P^{1+eps} (M^{-1} (P/M)^{Delta_t} (1 + q (P/M)^{-k}))^{1/t},
/// evaluated in log space. Requires P > M > 1, q >= 1, t > k + 1.
BoundEvaluation lemma31_bound(int k, double P, double M, double q, double t, double delta_t,
                              double eps = 0.0, double R = 2.0);

Section5Verdict check_section5(int k, double sigma, double tau, double lambda);

/// Compares S(k) from the embedded table with the exponent k(k-1).
CrossoverVerdict vinogradov_crossover(int k);

enum class TauSource { FromExponents, Lemma32 };

/// Full parameter bundle for one degree.
MinorArcParams minor_arc_params(int k, const ExponentProvider& provider,
                                TauSource tau_source = TauSource::FromExponents);

/// Parameters read off the published table: tau = 1/T, sigma = 1/S,
/// lambda = 1 - sigma/(2 tau).
MinorArcParams table1_params(int k);

}  // namespace smoothweyl
