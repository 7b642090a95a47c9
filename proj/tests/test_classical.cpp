#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "fdq/classical.hpp"
#include "fdq/errors.hpp"
#include "fdq/evolve.hpp"

using namespace fdq;
using namespace fdq::num;
using core::Symbol;

namespace {

Symbol harmonic_h() {
  // (pi^2 + phi^2) / 2
  Symbol h = Symbol::pi(1, 1, 2);
  h += Symbol::phi(1, 1, 2);
  return h.scaled(HPoly(Scalar(make_rational(1, 2))));
}

}  // namespace

TEST_CASE("harmonic orbit returns after one period") {
  PhasePoint x0{{1.0}, {0.0}};
  double period = 2.0 * std::acos(-1.0);
  FlowResult r = classical_flow(harmonic_h(), x0, period, 1e-3);
  CHECK(r.separable);
  const PhasePoint& end = r.points.back();
  CHECK(std::abs(end.phi[0] - 1.0) < 1e-6);
  CHECK(std::abs(end.pi[0]) < 1e-6);
  CHECK(std::abs(r.energy_final - r.energy_initial) < 1e-9);
  CHECK(r.times.front() == 0.0);
  CHECK(r.times.back() == doctest::Approx(period));
  CHECK(r.points.size() == r.times.size());
}

TEST_CASE("free particle drifts linearly") {
  Symbol h = Symbol::pi(1, 1, 2).scaled(HPoly(Scalar(make_rational(1, 2))));
  FlowResult r = classical_flow(h, PhasePoint{{0.0}, {1.0}}, 1.0, 1e-3);
  CHECK(std::abs(r.points.back().phi[0] - 1.0) < 1e-12);
  CHECK(std::abs(r.points.back().pi[0] - 1.0) < 1e-12);
}

TEST_CASE("mixed term falls back to the generic integrator") {
  // H = phi*pi: dphi/dt = phi, dpi/dt = -pi
  Symbol h = Symbol::phi(1, 1) * Symbol::pi(1, 1);
  FlowResult r = classical_flow(h, PhasePoint{{1.0}, {1.0}}, 1.0, 1e-4);
  CHECK(!r.separable);
  CHECK(std::abs(r.points.back().phi[0] - std::exp(1.0)) < 1e-8);
  CHECK(std::abs(r.points.back().pi[0] - std::exp(-1.0)) < 1e-8);
}

TEST_CASE("energy is conserved on the lattice hamiltonian") {
  LatticeConfig cfg;
  cfg.sites = 3;
  cfg.dx = 0.5;
  cfg.t0 = 0.0;
  cfg.t1 = 1.0;
  cfg.dt = 1e-3;
  cfg.g.shape = Profile::Shape::ConstWindow;
  cfg.g.amp = 0.25;
  cfg.g.from = -1.0;
  cfg.g.to = 2.0;
  Symbol h = lattice_symbol(cfg, 0.0);
  PhasePoint x0{{0.4, -0.3, 0.9}, {0.1, 0.5, -0.2}};
  FlowResult r = classical_flow(h, x0, 1.0, 1e-3);
  CHECK(r.separable);
  CHECK(std::abs(r.energy_final - r.energy_initial) < 1e-6 * (1.0 + std::abs(r.energy_initial)));
}

TEST_CASE("ehrenfest expectations track the classical orbit") {
  LatticeConfig cfg;
  cfg.sites = 1;
  cfg.cutoff = 30;
  cfg.t0 = 0.0;
  cfg.t1 = 2.0;
  cfg.dt = 1e-3;
  Lattice lat(cfg);

  // coherent state alpha = (phi0 + i pi0)/sqrt(2) in the number basis
  double phi0 = 0.3, pi0 = 0.2;
  std::complex<double> alpha(phi0 / std::sqrt(2.0), pi0 / std::sqrt(2.0));
  CVector psi(lat.dim());
  std::complex<double> c = 1.0;
  for (std::size_t n = 0; n < lat.dim(); ++n) {
    psi[n] = c;
    c *= alpha / std::sqrt(double(n + 1));
  }
  double nrm = vector_norm(psi);
  for (auto& v : psi) v /= nrm;

  CVector out = evolve_state(lat, psi);
  double q = vector_dot(out, lat.phi_op(0).apply(out)).real();
  double p = vector_dot(out, lat.p_op(0).apply(out)).real();

  FlowResult r = classical_flow(harmonic_h(), PhasePoint{{phi0}, {pi0}}, 2.0, 1e-3);
  CHECK(std::abs(q - r.points.back().phi[0]) < 1e-5);
  CHECK(std::abs(p - r.points.back().pi[0]) < 1e-5);
}

TEST_CASE("runaway trajectories raise NumericError") {
  // inverted quartic: H = pi^2/2 - phi^4/4 escapes in finite time
  Symbol h = Symbol::pi(1, 1, 2).scaled(HPoly(Scalar(make_rational(1, 2))));
  h -= Symbol::phi(1, 1, 4).scaled(HPoly(Scalar(make_rational(1, 4))));
  CHECK_THROWS_AS(classical_flow(h, PhasePoint{{2.0}, {0.0}}, 5.0, 1e-3), NumericError);
}

TEST_CASE("flow input validation") {
  Symbol h = harmonic_h();
  CHECK_THROWS_AS(classical_flow(h, PhasePoint{{1.0, 2.0}, {0.0, 0.0}}, 1.0, 1e-3),
                  ValidationError);
  CHECK_THROWS_AS(classical_flow(h, PhasePoint{{1.0}, {0.0}}, 1.0, -1e-3), ValidationError);
  CHECK_THROWS_AS(classical_flow(h, PhasePoint{{1.0}, {0.0}}, 0.0, 1e-3), ValidationError);

  // imaginary coefficient is rejected...
  Symbol bad = Symbol::phi(1, 1).scaled(HPoly(Scalar::i()));
  CHECK_THROWS_AS(classical_flow(bad, PhasePoint{{1.0}, {0.0}}, 1.0, 1e-3), ValidationError);
  // ...including one hiding behind an odd power of h at the numeric value
  Symbol ih = Symbol::phi(1, 1).scaled(HPoly::h(1, Scalar::i()));
  CHECK_THROWS_AS(classical_flow(ih, PhasePoint{{1.0}, {0.0}}, 1.0, 1e-3, 2.0), ValidationError);
  // while a real h-dependent coefficient is fine
  Symbol okh = Symbol::phi(1, 1, 2).scaled(HPoly::h());
  FlowResult r = classical_flow(okh, PhasePoint{{1.0}, {0.0}}, 0.5, 1e-3, 2.0);
  CHECK(r.points.size() > 1);
}
