#include "qcarnot/optimal_protocol.hpp"

#include <cmath>
#include <sstream>

#include "qcarnot/errors.hpp"
#include "qcarnot/numerics.hpp"

namespace qcarnot {

std::string_view to_string(BranchKind branch) {
  return branch == BranchKind::HotPlus ? "hot" : "cold";
}

void ELBranch::validate() const {
  if (!(k < 0.0)) {
    throw DomainError("Euler-Lagrange constant must be negative, got " +
                      std::to_string(k));
  }
  if (!(p_start > -1.0 && p_start < 0.0 && p_end > -1.0 && p_end < 0.0)) {
    throw DomainError("branch endpoints must lie in (-1, 0)");
  }
  const bool rising = p_end > p_start;
  if (rising != (branch == BranchKind::HotPlus)) {
    throw DomainError(
        "branch endpoints are not ordered as the branch requires");
  }
  if (!(k > std::max(p_start, p_end))) {
    std::ostringstream msg;
    msg << "K=" << k << " outside the physical bracket (" << std::max(p_start, p_end)
        << ", 0)";
    throw DomainError(msg.str());
  }
  if (!(t_eff > 0.0)) {
    throw DomainError("branch effective temperature must be positive");
  }
}

double pdot_branch(double p, double k, BranchKind branch) {
  if (k > 0.0) {
    throw DomainError("pdot_branch needs K <= 0");
  }
  if (k == 0.0) return 0.0;
  if (k == p) {
    throw SingularityError("pdot_branch: K equals p");
  }
  const double disc = k * p * (k * p + 1.0 - p * p);
  if (!(disc >= 0.0)) {
    throw DomainError("pdot_branch: negative discriminant");
  }
  const double root = std::sqrt(disc);
  if (branch == BranchKind::HotPlus) {
    return (-k + root) / (k - p);
  }
  // r_+ r_- = K (1 - p^2) / (K - p)
  return k * (1.0 - p * p) / (-k + root);
}

double el_residual(double p, double rate, double k) {
  const double one_plus = 1.0 + rate;
  return rate * rate * p / (one_plus * one_plus - p * p) - k;
}

double population_on_branch(double gap, double k, double t_eff,
                            BranchKind branch) {
  if (!(k < 0.0) || !(gap > 0.0) || !(t_eff > 0.0)) {
    throw DomainError("population_on_branch needs K < 0, gap > 0, t_eff > 0");
  }
  const double y = gap / (2.0 * t_eff);
  const double ch = std::cosh(y);
  const double sech2 = 1.0 / (ch * ch);
  const double root = std::sqrt(1.0 - 4.0 / k * std::sinh(y) * ch);
  const double sign = branch == BranchKind::HotPlus ? 1.0 : -1.0;
  return -std::tanh(y) + 0.5 * k * sech2 * (1.0 + sign * root);
}

ELBranch make_branch(double k, BranchKind branch,
                     const CycleBoundaries& boundaries, double t_eff) {
  ELBranch el;
  el.k = k;
  el.branch = branch;
  el.t_eff = t_eff;
  if (branch == BranchKind::HotPlus) {
    el.p_start = boundaries.p0;
    el.p_end = boundaries.p1;
  } else {
    el.p_start = boundaries.p1;
    el.p_end = boundaries.p0;
  }
  el.validate();
  return el;
}

double k_limit(const CycleBoundaries& boundaries) {
  return boundaries.p1 * (1.0 - kBracketMargin);
}

namespace {

double rate_reciprocal(double p, double k, BranchKind branch) {
  return 1.0 / pdot_branch(p, k, branch);
}

double heat_integrand(double p, double k, BranchKind branch) {
  const double r = pdot_branch(p, k, branch);
  const double lower = 1.0 + r + p;
  const double upper = 1.0 + r - p;
  if (!(lower > 0.0) || !(upper > 0.0)) {
    throw InvalidStateError("heat integrand: non-positive log argument");
  }
  return std::log1p(-2.0 * p / lower);
}

double duration_for(double k, BranchKind branch,
                    const CycleBoundaries& boundaries, double gamma) {
  // t_eff does not enter the duration.
  return duration_integral(make_branch(k, branch, boundaries, 1.0), gamma);
}

}  // namespace

double duration_integral(const ELBranch& el, double gamma) {
  el.validate();
  if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
  const double integral = numerics::integrate(
      [&](double p) { return rate_reciprocal(p, el.k, el.branch); },
      el.p_start, el.p_end, {}, "duration");
  return integral / gamma;
}

double min_duration(BranchKind branch, const CycleBoundaries& boundaries,
                    double gamma) {
  return duration_for(k_limit(boundaries), branch, boundaries, gamma);
}

std::vector<DurationScanPoint> scan_durations(BranchKind branch,
                                              const CycleBoundaries& boundaries,
                                              double gamma, std::size_t n) {
  if (n < 2) throw DomainError("scan_durations needs n >= 2");
  const double u_hi = std::log(-k_limit(boundaries));
  const double u_lo = u_hi + std::log(1e-6);
  std::vector<DurationScanPoint> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = u_lo + (u_hi - u_lo) * static_cast<double>(i) /
                                static_cast<double>(n - 1);
    const double k = -std::exp(u);
    out.push_back({k, duration_for(k, branch, boundaries, gamma)});
  }
  return out;
}

ELBranch solve_k_for_duration(double target_duration, BranchKind branch,
                              const CycleBoundaries& boundaries, double gamma,
                              double t_eff) {
  if (!(target_duration > 0.0) || !std::isfinite(target_duration)) {
    throw DomainError("target duration must be positive and finite");
  }
  // Work in u = ln|K|; the duration grows as |K| -> 0, i.e. as u decreases.
  auto log_ratio = [&](double u) {
    return std::log(duration_for(-std::exp(u), branch, boundaries, gamma) /
                    target_duration);
  };
  const double u_hi = std::log(-k_limit(boundaries));
  const double f_hi = log_ratio(u_hi);
  if (f_hi > 0.0) {
    std::ostringstream msg;
    msg << "infeasible duration " << target_duration << " on the "
        << to_string(branch) << " branch; shortest reachable is "
        << target_duration * std::exp(f_hi);
    throw InfeasibleDurationError(msg.str());
  }
  double u_lo = u_hi - 1.0;
  while (log_ratio(u_lo) < 0.0) {
    u_lo -= 4.0;
    if (u_lo < -700.0) {
      throw NumericalError("target duration too long to bracket K");
    }
  }

  auto accept = [&](double u) {
    return std::abs(std::expm1(log_ratio(u))) <= kDurationRelTol;
  };
  double u = u_hi;
  if (f_hi != 0.0) {
    u = numerics::find_root(log_ratio, u_lo, u_hi, 1e-14, 1e-15);
  }
  if (!accept(u)) {
    // Fallback: locate the first sign change on a grid and refine there.
    constexpr int kScan = 200;
    bool found = false;
    double prev_u = u_lo;
    double prev_f = log_ratio(u_lo);
    for (int i = 1; i <= kScan && !found; ++i) {
      const double next_u = u_lo + (u_hi - u_lo) * i / kScan;
      const double next_f = log_ratio(next_u);
      if ((prev_f > 0.0) != (next_f > 0.0)) {
        u = numerics::find_root(log_ratio, prev_u, next_u, 1e-15, 1e-16);
        found = accept(u);
      }
      prev_u = next_u;
      prev_f = next_f;
    }
    if (!found) {
      throw NumericalError("could not match the target duration to 1e-10");
    }
  }
  return make_branch(-std::exp(u), branch, boundaries, t_eff);
}

double heat_quadrature(const ELBranch& el) {
  el.validate();
  const double integral = numerics::integrate(
      [&](double p) { return heat_integrand(p, el.k, el.branch); },
      el.p_start, el.p_end, {}, "heat");
  return 0.5 * el.t_eff * integral;
}

ProtocolTrace reconstruct_protocol(const ELBranch& el, double gamma,
                                   std::size_t n_samples) {
  el.validate();
  if (n_samples < 2) throw DomainError("reconstruct_protocol needs >= 2 samples");
  if (!(gamma > 0.0)) throw DomainError("gamma must be positive");

  ProtocolTrace trace;
  trace.samples.reserve(n_samples);
  const double span = el.p_end - el.p_start;
  const auto last = static_cast<double>(n_samples - 1);
  double t = 0.0;
  double p_prev = el.p_start;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double p =
        i + 1 == n_samples ? el.p_end
                           : el.p_start + span * static_cast<double>(i) / last;
    if (i > 0) {
      t += numerics::integrate(
               [&](double q) { return rate_reciprocal(q, el.k, el.branch); },
               p_prev, p, {}, "protocol time") /
           gamma;
    }
    const double rate = gamma * pdot_branch(p, el.k, el.branch);
    trace.samples.push_back({t, p, gap_from_state(p, rate, el.t_eff, gamma)});
    p_prev = p;
  }
  trace.jump_start = {stationary_gap(el.p_start, el.t_eff),
                      trace.samples.front().gap};
  trace.jump_end = {trace.samples.back().gap,
                    stationary_gap(el.p_end, el.t_eff)};
  return trace;
}

}  // namespace qcarnot
