#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "qcarnot/spin_engine.hpp"

namespace qcarnot {

/// Which root of the Euler-Lagrange quadratic drives the isotherm.
/// HotPlus raises the population (p0 -> p1), ColdMinus lowers it (p1 -> p0).
enum class BranchKind { HotPlus, ColdMinus };

std::string_view to_string(BranchKind branch);

/// A solution of the Euler-Lagrange first integral
///   r^2 p / ((1 + r)^2 - p^2) = K,   r = (dp/dt) / Gamma,
/// between two corner populations.
struct ELBranch {
  double k = 0.0;  ///< < 0; K -> 0^- is the quasi-static limit
  BranchKind branch = BranchKind::HotPlus;
  double t_eff = 0.0;  ///< effective temperature of the bath in contact
  double p_start = 0.0;
  double p_end = 0.0;

  /// Throws DomainError unless K < 0, K > max(p_start, p_end) and the
  /// endpoints are ordered as the branch requires.
  void validate() const;
};

struct GapJump {
  double before = 0.0;
  double after = 0.0;
};

struct ProtocolSample {
  double t = 0.0;
  double p = 0.0;
  double gap = 0.0;
};

/// Time-domain optimal protocol. The first and last samples carry the
/// post-jump gap Delta(0+) and the pre-jump gap Delta(tau-); the corner
/// (stationary) gaps are kept in the jump records.
struct ProtocolTrace {
  std::vector<ProtocolSample> samples;
  GapJump jump_start;  ///< Delta(0) -> Delta(0+)
  GapJump jump_end;    ///< Delta(tau-) -> Delta(tau)

  double duration() const {
    return samples.empty() ? 0.0 : samples.back().t;
  }
};

/// Relative margin kept between K and the least negative corner
/// population, where the hot-branch rate diverges.
inline constexpr double kBracketMargin = 1e-3;
inline constexpr double kDurationRelTol = 1e-10;
inline constexpr std::size_t kDefaultProtocolSamples = 512;

/// Dimensionless rate r = (dp/dt)/Gamma on the requested branch:
///   r = [-K +/- sqrt(K p (K p + 1 - p^2))] / (K - p).
/// The minus root is evaluated through the product of roots to avoid
/// cancellation.
double pdot_branch(double p, double k, BranchKind branch);

/// r^2 p / ((1 + r)^2 - p^2) - K; zero on an Euler-Lagrange solution.
double el_residual(double p, double rate, double k);

/// Population on the branch for a given instantaneous gap, from the
/// quadratic (p coth y + 1)^2 = K p csch^2 y with y = gap / 2 T^e:
///   p = -tanh y + (K/2) sech^2 y [1 +/- sqrt(1 - (4/K) sinh y cosh y)],
/// upper sign on HotPlus (p below equilibrium), lower sign on ColdMinus.
double population_on_branch(double gap, double k, double t_eff,
                            BranchKind branch);

/// Branch between the cycle corners: HotPlus runs p0 -> p1 at T_H^e,
/// ColdMinus p1 -> p0 at T_C^e (t_eff supplied by the caller).
ELBranch make_branch(double k, BranchKind branch,
                     const CycleBoundaries& boundaries, double t_eff);

/// Most negative K the solver will use: p1 (1 - kBracketMargin).
double k_limit(const CycleBoundaries& boundaries);

/// (1/Gamma) |integral dp / r(p; K)| along the branch.
double duration_integral(const ELBranch& el, double gamma);

/// Shortest duration reachable inside the K bracket.
double min_duration(BranchKind branch, const CycleBoundaries& boundaries,
                    double gamma);

/// Solves duration_integral(K) = target for K in (k_limit, 0) by bracketed
/// root finding in ln|K|. Falls back to a grid scan if the bracketed solve
/// misses the tolerance. Throws InfeasibleDurationError when the target is
/// shorter than min_duration.
ELBranch solve_k_for_duration(double target_duration, BranchKind branch,
                              const CycleBoundaries& boundaries, double gamma,
                              double t_eff);

/// (T^e / 2) integral ln[(1 + r - p) / (1 + r + p)] dp along the branch.
/// Equals the heat absorbed during the isotherm.
double heat_quadrature(const ELBranch& el);

struct DurationScanPoint {
  double k;
  double duration;
};

/// duration_integral on n log-spaced |K| values from 1e-6 |K_lim| up to
/// |K_lim|, ordered by increasing |K|.
std::vector<DurationScanPoint> scan_durations(BranchKind branch,
                                              const CycleBoundaries& boundaries,
                                              double gamma, std::size_t n);

/// Samples the optimal protocol uniformly in p. Times accumulate by
/// quadrature of dp / (Gamma r) between samples; the gap is recovered from
/// (p, dp/dt) by inverting the master equation.
ProtocolTrace reconstruct_protocol(
    const ELBranch& el, double gamma,
    std::size_t n_samples = kDefaultProtocolSamples);

}  // namespace qcarnot
