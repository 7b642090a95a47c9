#pragma once

#include <vector>

#include "fdq/symbol.hpp"

namespace fdq::num {

struct PhasePoint {
    std::vector<double> phi, pi;
};

struct FlowResult {
    std::vector<double> times;
    std::vector<PhasePoint> points;  // trajectory including the initial point
    double energy_initial = 0.0;
    double energy_final = 0.0;
    bool separable = false;  // which integrator ran
};

// Integrates dphi/dt = dH/dpi, dpi/dt = -dH/dphi with derivatives evaluated
// from the Symbol at the numeric deformation value hbar. Separable H (every
// term pure phi or pure pi) uses leapfrog; otherwise a 4th-order step.
// H must be real at the numeric hbar; blow-up raises NumericError.
FlowResult classical_flow(const core::Symbol& h, const PhasePoint& x0, double t_total, double dt,
                          double hbar = 1.0);

}  // namespace fdq::num
