#include "core/lindblad.hpp"

#include <cmath>
#include <stdexcept>

#include "core/rng.hpp"
#include "doctest.h"

using namespace rsim;

TEST_CASE("ground state is dark without a drive") {
  SystemParams p;
  auto rho = evolve(level_state(3, 0), nullptr, p, 10e-6, 1e-9);
  CHECK(rho(0, 0).real() == doctest::Approx(1.0).epsilon(1e-10));
  check_density_matrix(rho);
}

TEST_CASE("undriven f population follows the rate-equation cascade") {
  SystemParams p;
  const double t = 8e-6;
  auto rho = evolve(level_state(3, 2), nullptr, p, t, 1e-9);
  auto pops = rate_equation({0.0, 0.0, 1.0}, t, p);
  CHECK(std::abs(rho(0, 0).real() - pops[0]) < 1e-6);
  CHECK(std::abs(rho(1, 1).real() - pops[1]) < 1e-6);
  CHECK(std::abs(rho(2, 2).real() - pops[2]) < 1e-6);
}

TEST_CASE("rate equation endpoints") {
  SystemParams p;
  auto start = rate_equation({0.0, 0.0, 1.0}, 0.0, p);
  CHECK(start[2] == doctest::Approx(1.0));
  auto late = rate_equation({0.0, 0.0, 1.0}, 1.0, p);  // ~20000 lifetimes
  CHECK(late[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(rate_equation({1.0, 0.0, 0.0}, -1.0, p),
                  std::invalid_argument);
}

TEST_CASE("rate equation closed form matches numerical integration") {
  SystemParams p;
  // 4th-order integration of the cascade matrix as an independent route
  auto integrate = [&](std::array<double, 3> v, double t_end) {
    const double g1 = 1.0 / p.ancilla_t1_ge, g2 = 1.0 / p.ancilla_t1_ef;
    auto deriv = [&](const std::array<double, 3>& u) -> std::array<double, 3> {
      return {g1 * u[1], -g1 * u[1] + g2 * u[2], -g2 * u[2]};
    };
    const int steps = 4000;
    const double h = t_end / steps;
    for (int s = 0; s < steps; ++s) {
      auto k1 = deriv(v);
      std::array<double, 3> v2{v[0] + 0.5 * h * k1[0], v[1] + 0.5 * h * k1[1],
                               v[2] + 0.5 * h * k1[2]};
      auto k2 = deriv(v2);
      std::array<double, 3> v3{v[0] + 0.5 * h * k2[0], v[1] + 0.5 * h * k2[1],
                               v[2] + 0.5 * h * k2[2]};
      auto k3 = deriv(v3);
      std::array<double, 3> v4{v[0] + h * k3[0], v[1] + h * k3[1],
                               v[2] + h * k3[2]};
      auto k4 = deriv(v4);
      for (int i = 0; i < 3; ++i)
        v[static_cast<size_t>(i)] +=
            h / 6.0 *
            (k1[static_cast<size_t>(i)] + 2 * k2[static_cast<size_t>(i)] +
             2 * k3[static_cast<size_t>(i)] + k4[static_cast<size_t>(i)]);
    }
    return v;
  };

  RandomStream rng(51, 0);
  for (int rep = 0; rep < 100; ++rep) {
    double a = rng.uniform(), b = rng.uniform() * (1 - a);
    std::array<double, 3> p0 = {1 - a - b, a, b};
    const double t = rng.uniform() * 100e-6;
    auto closed = rate_equation(p0, t, p);
    auto numeric = integrate(p0, t);
    for (int i = 0; i < 3; ++i)
      CHECK(std::abs(closed[static_cast<size_t>(i)] -
                     numeric[static_cast<size_t>(i)]) < 1e-10);
  }
}

TEST_CASE("equal-rate cascade uses the limiting solution") {
  SystemParams p;
  p.ancilla_t1_ef = p.ancilla_t1_ge;  // exactly degenerate
  p.ancilla_t2_gf = 2 * p.ancilla_t1_ef * 0.9;
  const double t = 30e-6;
  auto pops = rate_equation({0.0, 0.0, 1.0}, t, p);
  const double g = 1.0 / p.ancilla_t1_ge;
  CHECK(pops[1] == doctest::Approx(g * t * std::exp(-g * t)).epsilon(1e-12));
  CHECK(pops[2] == doctest::Approx(std::exp(-g * t)).epsilon(1e-12));
}

TEST_CASE("optimized pi pulse transfers nearly everything when lossless") {
  SystemParams p;
  p.ancilla_t1_ge = 1e3;
  p.ancilla_t1_ef = 1e3;
  p.ancilla_t1_fh = 1e3;
  p.ancilla_t2_ge = 2e3;
  p.ancilla_t2_gf = 2e3;
  auto scan = optimize_amplitude(default_ge_pulse(), p, level_state(3, 0), 1,
                                 5e-11, 41);
  PulseParams best = scan.optimized;
  auto rho = evolve(level_state(3, 0), &best, p, 0.0, 5e-11);
  CHECK(rho(1, 1).real() > 0.999);
}

TEST_CASE("zero amplitude leaves the state alone") {
  SystemParams p;
  PulseParams pulse = default_ge_pulse();
  pulse.amplitude = 0.0;
  auto rho = evolve(level_state(3, 0), &pulse, p, 0.0, 5e-11);
  CHECK(rho(0, 0).real() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("residual g populations follow the measured chain") {
  SystemParams p;
  auto ge = optimize_amplitude(default_ge_pulse(), p, level_state(3, 0), 1,
                               5e-11, 41);
  auto rho_e = evolve(level_state(3, 0), &ge.optimized, p, 0.0, 5e-11);
  const double p_g = rho_e(0, 0).real();
  // factor-2 window around 3.7e-4
  CHECK(p_g > 3.7e-4 / 2);
  CHECK(p_g < 3.7e-4 * 2);

  auto ef = optimize_amplitude(default_ef_pulse(), p, level_state(3, 1), 2,
                               5e-11, 41);
  auto rho_shelved = evolve(rho_e, &ef.optimized, p, 0.0, 5e-11);
  const double p_g_shelved = rho_shelved(0, 0).real();
  CHECK(p_g_shelved > 7.2e-4 / 2);
  CHECK(p_g_shelved < 7.2e-4 * 2);

  // halfway through a readout window
  auto pops = rate_equation({rho_shelved(0, 0).real(), rho_shelved(1, 1).real(),
                             rho_shelved(2, 2).real()},
                            0.5 * p.t_readout_reset, p);
  CHECK(pops[0] > 9.7e-4 / 2);
  CHECK(pops[0] < 9.7e-4 * 2);

  CHECK(p_g <= p_g_shelved);
  CHECK(p_g_shelved <= pops[0]);
}

TEST_CASE("integrator is fourth order in dt") {
  SystemParams p;
  PulseParams pulse = default_ge_pulse();
  auto run = [&](double dt) {
    return evolve(level_state(3, 0), &pulse, p, 0.0, dt)(1, 1).real();
  };
  const double coarse = run(1.6e-10);
  const double mid = run(0.8e-10);
  const double fine = run(0.4e-10);
  const double e1 = std::abs(coarse - mid);
  const double e2 = std::abs(mid - fine);
  const double ratio = e1 / e2;
  CHECK(ratio > 10.0);
  CHECK(ratio < 25.0);
  // halving the production step moves the answer by almost nothing
  CHECK(std::abs(run(5e-11) - run(2.5e-11)) < 1e-9);
}

TEST_CASE("trace and hermiticity stay within tolerance during pulses") {
  SystemParams p;
  PulseParams pulse = default_ge_pulse();
  double max_trace_err = 0.0;
  TrajectorySink sink = [&](double, const Eigen::MatrixXcd& rho) {
    max_trace_err =
        std::max(max_trace_err, std::abs(rho.trace().real() - 1.0));
    check_density_matrix(rho);
  };
  evolve(level_state(3, 0), &pulse, p, 0.0, 5e-11, sink, 8);
  CHECK(max_trace_err < 1e-8);
}

TEST_CASE("evolve rejects a too-coarse step") {
  SystemParams p;
  PulseParams pulse = default_ge_pulse();
  CHECK_THROWS_AS(evolve(level_state(3, 0), &pulse, p, 0.0, 1e-9),
                  std::invalid_argument);
}

TEST_CASE("flat objective is rejected as non-unimodal") {
  SystemParams p;
  PulseParams pulse = default_ge_pulse();
  pulse.amplitude = 0.0;  // nothing to optimize
  CHECK_THROWS_AS(optimize_amplitude(pulse, p, level_state(3, 0), 1),
                  std::invalid_argument);
}

TEST_CASE("four-level space cascades h down to g") {
  SystemParams p;
  auto rho = evolve(level_state(4, 3), nullptr, p, 400e-6, 2e-9);
  CHECK(rho(0, 0).real() > 0.99);
  check_density_matrix(rho);
}

TEST_CASE("qnd fit recovers exact model data to machine precision") {
  const double tau0 = 1.01e-3, pd = 2e-4;
  std::vector<double> intervals = {1e-6, 2e-6, 5e-6, 1e-5, 3e-5};
  std::vector<double> lifetimes;
  for (double ti : intervals) lifetimes.push_back(1.0 / (1.0 / tau0 + pd / ti));
  auto fit = fit_qnd(intervals, lifetimes);
  CHECK(fit.demolition_prob == doctest::Approx(pd).epsilon(1e-12));
  CHECK(fit.tau0 == doctest::Approx(tau0).epsilon(1e-12));
}

TEST_CASE("qnd fit with no demolition gives zero slope") {
  std::vector<double> intervals = {1e-6, 4e-6, 9e-6};
  std::vector<double> lifetimes = {1e-3, 1e-3, 1e-3};
  auto fit = fit_qnd(intervals, lifetimes);
  CHECK(std::abs(fit.demolition_prob) < 1e-15);
}

TEST_CASE("qnd fit rejects degenerate designs") {
  std::vector<double> same = {2e-6, 2e-6, 2e-6};
  std::vector<double> taus = {1e-3, 1e-3, 1e-3};
  CHECK_THROWS_AS(fit_qnd(same, taus), std::invalid_argument);
  std::vector<double> one = {2e-6};
  std::vector<double> tau1 = {1e-3};
  CHECK_THROWS_AS(fit_qnd(one, tau1), std::invalid_argument);
}

TEST_CASE("density matrix checks catch violations") {
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(3, 3);
  rho(0, 0) = 1.1;
  CHECK_THROWS_AS(check_density_matrix(rho), std::runtime_error);
  rho(0, 0) = 1.0;
  rho(0, 1) = std::complex<double>(0.0, 0.5);
  rho(1, 0) = std::complex<double>(0.0, 0.5);  // not Hermitian
  CHECK_THROWS_AS(check_density_matrix(rho), std::runtime_error);
}
