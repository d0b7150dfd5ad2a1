#include "smoothweyl/arc_params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "smoothweyl/table1.hpp"

namespace smoothweyl {

std::string_view to_string(BracketVerdict b) {
  switch (b) {
    case BracketVerdict::Interior: return "interior";
    case BracketVerdict::LowerBoundary: return "lower-boundary";
    case BracketVerdict::UpperBoundary: return "upper-boundary";
  }
  return "unknown";
}

TauResult tau_from_exponents(int k, const ExponentProvider& provider, int w_max) {
  if (w_max < 1) throw std::invalid_argument("w_max must be at least 1");
  TauResult best;
  for (int w = 1; w <= w_max; ++w) {
    const auto delta = provider(2.0 * w);
    if (!delta) continue;
    const double numerator = k - 2.0 * *delta;
    const double candidate = numerator > 0.0 ? numerator / (4.0 * w * w) : 0.0;
    if (candidate > best.tau) {
      best.tau = candidate;
      best.witness_w = w;
    }
  }
  if (best.witness_w == 0) {
    throw std::domain_error("no positive tau candidate for k = " + std::to_string(k) +
                            " (exponent source " + std::string(to_string(provider.provenance())) +
                            ")");
  }
  return best;
}

double tau_lemma32(int k) {
  if (k < 2) throw std::invalid_argument("degree k must be at least 2");
  return 1.0 / (2.0 * kLemma32D * k);
}

std::pair<double, double> default_sigma_range(int k) {
  return {k + 1.0 + 1e-6, 6.0 * k * std::log(static_cast<double>(k))};
}

namespace {

constexpr double kGridStep = 0.5;
constexpr double kGoldenWidth = 1e-9;
constexpr double kBoundarySlack = 1e-6;

}  // namespace

SigmaResult sigma_optimize(int k, double tau, const ExponentProvider& provider, double t_lo,
                           double t_hi) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw std::invalid_argument("tau must be positive");
  if (!(t_lo > k + 1.0)) throw std::invalid_argument("t_lo must exceed k + 1");
  if (!(t_hi > t_lo)) throw std::invalid_argument("t_hi must exceed t_lo");

  const double lo = std::max(t_lo, provider.domain_lo());
  const double hi = std::min(t_hi, provider.domain_hi());
  if (!(lo <= hi)) {
    std::ostringstream msg;
    msg << "search range [" << t_lo << ", " << t_hi << "] does not meet the exponent source's domain ["
        << provider.domain_lo() << ", " << provider.domain_hi() << "]";
    throw std::invalid_argument(msg.str());
  }

  const double inv_two_tau = 1.0 / (2.0 * tau);
  auto objective = [&](double t) {
    const auto delta = provider(t);
    if (!delta) throw std::logic_error("exponent source undefined inside its own domain");
    return t + (1.0 + *delta) * inv_two_tau;
  };

  std::vector<double> grid;
  for (int i = 0;; ++i) {
    const double t = lo + kGridStep * i;
    if (t >= hi) break;
    grid.push_back(t);
  }
  grid.push_back(hi);

  std::size_t best_i = 0;
  double best_f = objective(grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double f = objective(grid[i]);
    if (f < best_f) {
      best_f = f;
      best_i = i;
    }
  }

  double t_best = grid[best_i];
  if (grid.size() > 1) {
    double a = grid[best_i == 0 ? 0 : best_i - 1];
    double b = grid[std::min(best_i + 1, grid.size() - 1)];
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = objective(c);
    double fd = objective(d);
    while (b - a > kGoldenWidth) {
      if (fc <= fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - inv_phi * (b - a);
        fc = objective(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + inv_phi * (b - a);
        fd = objective(d);
      }
    }
    const double mid = 0.5 * (a + b);
    const double f_mid = objective(mid);
    if (f_mid < best_f) {
      best_f = f_mid;
      t_best = mid;
    }
  }

  SigmaResult r;
  r.witness_t = t_best;
  r.objective = best_f;
  r.sigma = 1.0 / best_f;
  r.delta_at_witness = *provider(t_best);
  if (t_best - lo <= kBoundarySlack) {
    r.bracket = BracketVerdict::LowerBoundary;
  } else if (hi - t_best <= kBoundarySlack) {
    r.bracket = BracketVerdict::UpperBoundary;
  }
  return r;
}

StationaryPoint theorem21_stationary_point(int k, double tau) {
  if (!(tau > 0.0 && tau < 0.5)) throw std::invalid_argument("tau must lie in (0, 1/2)");
  StationaryPoint p;
  p.delta = 2.0 * tau / (1.0 - 2.0 * tau);
  p.t = k * (1.0 - p.delta - std::log(p.delta));
  p.objective = p.t + (1.0 + k * p.delta) / (2.0 * tau);
  return p;
}

LambdaResult lambda_of(double sigma, double tau) {
  if (!(sigma > 0.0 && tau > 0.0)) throw std::invalid_argument("sigma and tau must be positive");
  const double lambda = 1.0 - sigma / (2.0 * tau);
  return {lambda, lambda > 0.5 && lambda < 1.0};
}

double rho_of(int k) {
  if (k < 6) throw std::invalid_argument("rho(k) is defined for k >= 6");
  return 1.0 / (k * (std::log(static_cast<double>(k)) + kRhoConstant));
}

double phi_constant(double D) {
  if (!(D > 0.0)) throw std::invalid_argument("D must be positive");
  return D + 2.0 + std::log(D);
}

BoundEvaluation lemma31_bound(int k, double P, double M, double q, double t, double delta_t,
                              double eps, double R) {
  for (double x : {P, M, q, t, delta_t, eps, R}) {
    if (!std::isfinite(x)) throw std::invalid_argument("bound inputs must be finite");
  }
  if (!(M > 1.0 && P > M)) throw std::invalid_argument("requires P > M > 1");
  if (!(t > k + 1.0)) throw std::invalid_argument("requires t > k + 1");
  if (q < 1.0) throw std::invalid_argument("requires q >= 1");
  if (delta_t < 0.0) throw std::invalid_argument("requires Delta_t >= 0");
  if (eps < 0.0) throw std::invalid_argument("requires eps >= 0");

  BoundEvaluation b{k, P, M, q, t, delta_t, eps, R};
  const double log_ratio = std::log(P / M);
  const double x = std::log(q) - k * log_ratio;
  const double softplus = x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
  const double log_m = (1.0 + eps) * std::log(M);
  const double log_main =
      (1.0 + eps) * std::log(P) + (-std::log(M) + delta_t * log_ratio + softplus) / t;
  const double top = std::max(log_m, log_main);
  b.log_value = top + std::log(std::exp(log_m - top) + std::exp(log_main - top));
  b.m_term = std::exp(log_m);
  b.main_term = std::exp(log_main);
  b.value = std::exp(b.log_value);
  b.dominant_term = log_m >= log_main ? BoundTerm::MTerm : BoundTerm::MainTerm;
  return b;
}

Section5Verdict check_section5(int k, double sigma, double tau, double lambda) {
  if (!(sigma > 0.0 && tau > 0.0 && lambda > 0.0)) {
    throw std::invalid_argument("sigma, tau and lambda must be positive");
  }
  Section5Verdict v;
  v.k = k;
  v.lhs = (k - 1.0) * sigma + k * lambda - k;
  v.middle = (k - 1.0 - k / (2.0 * tau)) * sigma;
  v.rhs = -2.0 * sigma;
  v.first_holds = v.lhs <= v.middle + 1e-12 * std::max(1.0, std::abs(v.middle));
  v.second_holds = v.middle < v.rhs;
  v.rho = rho_of(k);
  v.nu = (sigma - v.rho) / 2.0;
  v.nu_valid = v.nu > 0.0 && v.nu < sigma;
  return v;
}

CrossoverVerdict vinogradov_crossover(int k) {
  const Table1Row& row = table1_row(k);
  CrossoverVerdict v;
  v.k = k;
  v.S = row.S.value();
  v.vinogradov = k * (k - 1);
  v.smooth_bound_wins = v.S < v.vinogradov;
  return v;
}

MinorArcParams minor_arc_params(int k, const ExponentProvider& provider, TauSource tau_source) {
  MinorArcParams p;
  p.k = k;
  p.provenance = provider.provenance();
  if (tau_source == TauSource::Lemma32) {
    p.tau = tau_lemma32(k);
    p.tau_witness_w = 0;
  } else {
    const auto tau = tau_from_exponents(k, provider, default_w_max(k));
    p.tau = tau.tau;
    p.tau_witness_w = tau.witness_w;
  }
  const auto [t_lo, t_hi] = default_sigma_range(k);
  const auto sigma = sigma_optimize(k, p.tau, provider, t_lo, t_hi);
  p.sigma = sigma.sigma;
  p.sigma_witness_t = sigma.witness_t;
  p.lambda = lambda_of(p.sigma, p.tau).lambda;
  p.rho = rho_of(k);
  return p;
}

MinorArcParams table1_params(int k) {
  const Table1Row& row = table1_row(k);
  MinorArcParams p;
  p.k = k;
  p.tau = 1.0 / row.T.value();
  p.tau_witness_w = row.two_w / 2;
  p.sigma = 1.0 / row.S.value();
  p.sigma_witness_t = row.t;
  p.lambda = lambda_of(p.sigma, p.tau).lambda;
  p.rho = rho_of(k);
  p.provenance = Provenance::TableData;
  return p;
}

}  // namespace smoothweyl
