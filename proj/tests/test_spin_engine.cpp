#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qcarnot/errors.hpp"
#include "qcarnot/spin_engine.hpp"

using namespace qcarnot;

namespace {

constexpr double kHotEff = 704.5524071692253550;  // T=25.8, r=2

EngineParams reference_engine(double t_cold = 12.9) {
  EngineParams p;
  p.hot = {25.8, 2.0};
  p.cold = {t_cold, 1.8};
  p.delta_a = 5.0;
  p.delta_b = 3.0;
  p.gamma = 0.005;
  return p;
}

}  // namespace

TEST_CASE("stationary population") {
  CHECK(stationary_population(0.0, 3.0) == 0.0);
  CHECK(stationary_population(5.0, kHotEff) ==
        doctest::Approx(-0.003548337188658509844).epsilon(1e-14));
  CHECK(stationary_population(3.0, kHotEff) ==
        doctest::Approx(-0.002129008031760764178).epsilon(1e-14));
  CHECK(stationary_gap(stationary_population(5.0, kHotEff), kHotEff) ==
        doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("master equation right-hand side") {
  const double p_eq = stationary_population(5.0, kHotEff);
  CHECK(std::abs(master_rhs(p_eq, 5.0, kHotEff, 0.005)) < 1e-18);
  CHECK(master_rhs(0.0, 2.0, kHotEff, 0.005) == -0.005);
  CHECK(master_rhs(-0.003, 5.0, kHotEff, 0.005) ==
        doctest::Approx(-7.726678152391361341e-4).epsilon(1e-13));
  CHECK(master_rhs(0.0, 0.0, kHotEff, 0.005) == -0.005);
  CHECK_THROWS_AS(master_rhs(-0.1, 0.0, kHotEff, 0.005), DomainError);
}

TEST_CASE("gap from state") {
  CHECK(gap_from_state(stationary_population(5.0, kHotEff), 0.0, kHotEff, 0.005) ==
        doctest::Approx(5.0).epsilon(1e-13));
  CHECK(gap_from_state(-0.003, 0.0, kHotEff, 0.005) ==
        doctest::Approx(4.227327125027164110).epsilon(1e-13));
  CHECK_THROWS_AS(gap_from_state(-0.5, -0.006, kHotEff, 0.005), InvalidStateError);

  SUBCASE("round trip through the master equation") {
    std::mt19937_64 rng(3);
    // gap / 2 T^e up to 2; beyond that coth saturates and the inversion
    // loses digits in any arithmetic.
    std::uniform_real_distribution<double> gap(0.01, 50.0), p(-0.99, 0.99),
        log_ratio(std::log(0.25), std::log(1e4)), g(1e-4, 1.0);
    for (int i = 0; i < 5000; ++i) {
      const double d = gap(rng), pp = p(rng), gg = g(rng);
      const double t = d * std::exp(log_ratio(rng));
      const double rate = master_rhs(pp, d, t, gg);
      CHECK(gap_from_state(pp, rate, t, gg) == doctest::Approx(d).epsilon(1e-12));
    }
  }
}

TEST_CASE("work and heat rates") {
  CHECK(work_rate(0.0, -0.3) == 0.0);
  CHECK(heat_rate(5.0, -7.726678152391361341e-4) ==
        doctest::Approx(-1.931669538097840335e-3).epsilon(1e-14));
  CHECK(work_rate(0.0, -0.1) + heat_rate(2.0, 0.0) == 0.0);

  SUBCASE("first law along a smooth protocol") {
    // Delta(t) = 3 + sin t, p(t) = -0.2 + 0.1 cos(2t); any pair is fine here.
    auto gap = [](double t) { return 3.0 + std::sin(t); };
    auto pop = [](double t) { return -0.2 + 0.1 * std::cos(2 * t); };
    auto gap_rate = [](double t) { return std::cos(t); };
    auto pop_rate = [](double t) { return -0.2 * std::sin(2 * t); };
    const int n = 20000;
    const double tau = 2.0;
    double w = 0, q = 0;
    for (int i = 0; i < n; ++i) {  // midpoint rule
      const double t = (i + 0.5) * tau / n;
      w += work_rate(gap_rate(t), pop(t)) * tau / n;
      q += heat_rate(gap(t), pop_rate(t)) * tau / n;
    }
    const double de = internal_energy(gap(tau), pop(tau)) - internal_energy(gap(0), pop(0));
    CHECK(w + q == doctest::Approx(de).epsilon(1e-8));
  }
}

TEST_CASE("entropy") {
  CHECK(entropy(0.0) == doctest::Approx(std::numbers::ln2).epsilon(1e-15));
  CHECK(entropy(1.0) == 0.0);
  CHECK(entropy(-1.0) == 0.0);
  CHECK(entropy(-0.5) == doctest::Approx(0.5623351446188083503).epsilon(1e-14));
  CHECK_THROWS_AS(entropy(1.0001), DomainError);
  for (double p = -0.95; p < 0.95; p += 0.05) {
    CHECK(entropy(p) == doctest::Approx(entropy(-p)).epsilon(1e-14));
    // strict concavity
    const double h = 1e-3;
    CHECK(entropy(p + h) + entropy(p - h) - 2 * entropy(p) < 0.0);
    CHECK(entropy_change(p, 0.3) == doctest::Approx(entropy(0.3) - entropy(p)).epsilon(1e-12));
  }
}

TEST_CASE("cycle boundaries at the paper configuration") {
  const CycleBoundaries b = cycle_boundaries(reference_engine());
  CHECK(b.p0 == doctest::Approx(-0.003548337188658509844).epsilon(1e-14));
  CHECK(b.p1 == doctest::Approx(-0.002129008031760764178).epsilon(1e-14));
  CHECK(b.delta_c == doctest::Approx(1.005893306591601102).epsilon(1e-13));
  CHECK(b.delta_d == doctest::Approx(1.676488844319335169).epsilon(1e-13));
  CHECK(b.p0 < b.p1);
  CHECK(b.p1 < 0.0);
  CHECK(b.delta_s > 0.0);

  const double cold_eff = effective_temperature(reference_engine().cold);
  CHECK(std::abs(stationary_population(b.delta_d, cold_eff) - b.p0) <= 1e-14 * std::abs(b.p0));
  CHECK(std::abs(stationary_population(b.delta_c, cold_eff) - b.p1) <= 1e-14 * std::abs(b.p1));
}

TEST_CASE("cycle boundaries: invariants and errors") {
  SUBCASE("unit scaling when the baths coincide") {
    EngineParams p = reference_engine();
    p.cold = {25.8, 2.0};
    // Equal effective temperatures are not an engine.
    CHECK_THROWS_AS(cycle_boundaries(p), DomainError);
    p.cold = {25.8 * (1 - 1e-15), 2.0};
    const CycleBoundaries b = cycle_boundaries(p);
    CHECK(b.delta_c == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(b.delta_d == doctest::Approx(5.0).epsilon(1e-14));
  }
  SUBCASE("degenerate cycle") {
    EngineParams p = reference_engine();
    p.delta_b = p.delta_a;
    CHECK_THROWS_AS(cycle_boundaries(p), DegenerateCycleError);
  }
  SUBCASE("reversed gaps") {
    EngineParams p = reference_engine();
    std::swap(p.delta_a, p.delta_b);
    CHECK_THROWS_AS(cycle_boundaries(p), DomainError);
  }
  SUBCASE("random configurations keep the adiabats consistent") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> gap(0.1, 20.0), t(1.0, 40.0), r(0.0, 2.0);
    for (int i = 0; i < 2000; ++i) {
      EngineParams p;
      p.hot = {t(rng), r(rng)};
      p.cold = {t(rng), r(rng)};
      p.delta_a = gap(rng);
      p.delta_b = gap(rng);
      p.gamma = 0.01;
      if (p.delta_a < p.delta_b) std::swap(p.delta_a, p.delta_b);
      if (effective_temperature(p.hot) <= effective_temperature(p.cold)) continue;
      const CycleBoundaries b = cycle_boundaries(p);
      const double tc = effective_temperature(p.cold);
      CHECK(b.delta_s > 0.0);
      CHECK(stationary_population(b.delta_d, tc) == doctest::Approx(b.p0).epsilon(1e-13));
      CHECK(stationary_population(b.delta_c, tc) == doctest::Approx(b.p1).epsilon(1e-13));
    }
  }
}

TEST_CASE("engine warnings") {
  EngineParams p = reference_engine();
  CHECK(p.warnings().empty());
  p.cold.tuning = 2.5;
  p.cold.temperature = 5.0;
  const auto w = p.warnings();
  REQUIRE(w.size() >= 1);
  CHECK(w.front().find("r_cold") != std::string::npos);
  EngineParams hot_gaps = reference_engine();
  hot_gaps.delta_a = 100.0;
  CHECK(hot_gaps.warnings().size() == 1);
}
