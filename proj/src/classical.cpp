#include "fdq/classical.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

#include "fdq/errors.hpp"

namespace fdq::num {

using core::Symbol;
using core::Var;

namespace {

bool is_separable(const Symbol& h) {
    for (const auto& [key, c] : h.terms())
        if (!key.phi.empty() && !key.pi.empty()) return false;
    return true;
}

void check_real_at(const Symbol& h, double hbar) {
    for (const auto& [key, c] : h.terms()) {
        std::complex<double> v(0.0, 0.0);
        double hp = 1.0;
        for (int p = 0; p <= c.degree(); ++p) {
            v += c.coeff(static_cast<std::size_t>(p)).to_double() * hp;
            hp *= hbar;
        }
        if (std::abs(v.imag()) > 1e-12 * (1.0 + std::abs(v.real())))
            throw ValidationError("Hamiltonian must have real coefficients at the numeric h");
    }
}

struct Gradients {
    std::vector<Symbol> dphi;  // dH/dphi_m
    std::vector<Symbol> dpi;   // dH/dpi_m
};

double real_eval(const Symbol& s, const std::vector<double>& phi, const std::vector<double>& pi,
                 double hbar) {
    return s.eval_double(phi, pi, hbar).real();
}

void check_finite(const PhasePoint& x, double t) {
    for (const std::vector<double>* v : {&x.phi, &x.pi})
        for (double d : *v)
            if (!(std::abs(d) < 1e8)) {
                char buf[96];
                std::snprintf(buf, sizeof buf, "trajectory blow-up at t=%.6g", t);
                throw NumericError(buf);
            }
}

}  // namespace

FlowResult classical_flow(const Symbol& h, const PhasePoint& x0, double t_total, double dt,
                          double hbar) {
    unsigned n = h.modes();
    if (x0.phi.size() != n || x0.pi.size() != n)
        throw ValidationError("phase point dimension does not match the Hamiltonian mode count");
    if (!(dt > 0.0)) throw ValidationError("dt must be positive");
    if (!(t_total > 0.0)) throw ValidationError("integration time must be positive");
    check_finite(x0, 0.0);
    check_real_at(h, hbar);

    Gradients grad;
    for (unsigned m = 1; m <= n; ++m) {
        grad.dphi.push_back(functional_derivative(h, Var::Phi, m));
        grad.dpi.push_back(functional_derivative(h, Var::Pi, m));
    }
    auto force = [&](const std::vector<double>& phi, const std::vector<double>& pi,
                     std::vector<double>& out_dphi, std::vector<double>& out_dpi) {
        for (unsigned m = 0; m < n; ++m) {
            out_dphi[m] = real_eval(grad.dpi[m], phi, pi, hbar);
            out_dpi[m] = -real_eval(grad.dphi[m], phi, pi, hbar);
        }
    };

    long steps = std::lround(t_total / dt);
    if (steps < 1) steps = 1;
    double step = t_total / static_cast<double>(steps);

    FlowResult out;
    out.separable = is_separable(h);
    out.energy_initial = real_eval(h, x0.phi, x0.pi, hbar);
    PhasePoint x = x0;
    out.times.push_back(0.0);
    out.points.push_back(x);

    std::vector<double> fphi(n), fpi(n);
    if (out.separable) {
        // kick-drift-kick leapfrog; forces split cleanly since H = T(pi)+V(phi)
        for (long s = 0; s < steps; ++s) {
            for (unsigned m = 0; m < n; ++m)
                x.pi[m] -= 0.5 * step * real_eval(grad.dphi[m], x.phi, x.pi, hbar);
            for (unsigned m = 0; m < n; ++m)
                x.phi[m] += step * real_eval(grad.dpi[m], x.phi, x.pi, hbar);
            for (unsigned m = 0; m < n; ++m)
                x.pi[m] -= 0.5 * step * real_eval(grad.dphi[m], x.phi, x.pi, hbar);
            double t = step * static_cast<double>(s + 1);
            check_finite(x, t);
            out.times.push_back(t);
            out.points.push_back(x);
        }
    } else {
        // classic 4th-order step on the packed state
        std::vector<double> k1p(n), k1q(n), k2p(n), k2q(n), k3p(n), k3q(n), k4p(n), k4q(n);
        std::vector<double> tq(n), tp(n);
        for (long s = 0; s < steps; ++s) {
            force(x.phi, x.pi, k1q, k1p);
            for (unsigned m = 0; m < n; ++m) {
                tq[m] = x.phi[m] + 0.5 * step * k1q[m];
                tp[m] = x.pi[m] + 0.5 * step * k1p[m];
            }
            force(tq, tp, k2q, k2p);
            for (unsigned m = 0; m < n; ++m) {
                tq[m] = x.phi[m] + 0.5 * step * k2q[m];
                tp[m] = x.pi[m] + 0.5 * step * k2p[m];
            }
            force(tq, tp, k3q, k3p);
            for (unsigned m = 0; m < n; ++m) {
                tq[m] = x.phi[m] + step * k3q[m];
                tp[m] = x.pi[m] + step * k3p[m];
            }
            force(tq, tp, k4q, k4p);
            for (unsigned m = 0; m < n; ++m) {
                x.phi[m] += step / 6.0 * (k1q[m] + 2.0 * k2q[m] + 2.0 * k3q[m] + k4q[m]);
                x.pi[m] += step / 6.0 * (k1p[m] + 2.0 * k2p[m] + 2.0 * k3p[m] + k4p[m]);
            }
            double t = step * static_cast<double>(s + 1);
            check_finite(x, t);
            out.times.push_back(t);
            out.points.push_back(x);
        }
    }

    out.energy_final = real_eval(h, x.phi, x.pi, hbar);
    return out;
}

}  // namespace fdq::num
