#pragma once

#include <json.hpp>

#include <cstddef>
#include <string>
#include <vector>

#include "fdq/cmatrix.hpp"
#include "fdq/symbol.hpp"

namespace fdq::num {

// Time profile for the interaction/source switching. "gauss" is
// amp * exp(-(t/width)^2); "const_window" is amp on [from, to] and 0 outside.
struct Profile {
    enum class Shape { Gauss, ConstWindow };

    Shape shape = Shape::ConstWindow;
    double amp = 0.0;
    double width = 1.0;           // gauss
    double from = 0.0, to = 0.0;  // const_window
    std::vector<double> site_weights;  // empty = all ones

    double value(double t) const;
    double site_weight(unsigned i) const {
        return site_weights.empty() ? 1.0 : site_weights[i];
    }
    // largest |value| over [t0, t1] endpoints relative to the peak amplitude
    double endpoint_level(double t0, double t1) const;
};

struct LatticeConfig {
    unsigned sites = 1;
    double dx = 1.0;
    double mass = 1.0;
    double hbar = 1.0;
    unsigned k = 4;
    unsigned cutoff = 8;
    double t0 = 0.0, t1 = 1.0, dt = 1e-3;
    Profile g, j;
    std::size_t cap_dim = 20000;

    std::size_t dimension() const;  // cutoff^sites, checked against cap_dim
    void validate() const;
};

LatticeConfig config_from_json(const nlohmann::ordered_json& j);
LatticeConfig config_from_file(const std::string& path);
// Canonical re-serialization (used for the output hash).
nlohmann::ordered_json config_to_json(const LatticeConfig& cfg);

// Truncated lattice field theory in the per-site oscillator basis at unit
// reference frequency: phi = sqrt(hbar/2)(a + a^dag), p = i sqrt(hbar/2)
// (a^dag - a), assembled to H = sum_i [p_i^2/(2 dx) + (dx/2)(m^2 phi_i^2 +
// ((phi_{i+1}-phi_i)/dx)^2)] + sum_i dx [g_i(t) phi_i^k/k! + j_i(t) phi_i]
// with periodic wrap.
class Lattice {
 public:
    explicit Lattice(LatticeConfig cfg);

    const LatticeConfig& config() const { return cfg_; }
    std::size_t dim() const { return dim_; }

    const CMatrix& free_hamiltonian() const { return free_; }
    const CMatrix& phi_power_coupling() const { return phi_k_; }  // dx sum_i w^g_i phi_i^k / k!
    const CMatrix& source_coupling() const { return phi_j_; }     // dx sum_i w^j_i phi_i
    CMatrix interaction(double t) const;
    CMatrix hamiltonian(double t) const;

    // Site operators in the full tensor basis.
    const CMatrix& phi_op(unsigned site) const { return phi_[site]; }
    const CMatrix& p_op(unsigned site) const { return p_[site]; }

    // Eigensystem of the free part (cached after first use).
    const EigenSystem& free_eigen() const;

    // Lowest eigenvector of the free part; residual checked to 1e-8.
    CVector free_ground_state() const;
    double free_ground_energy() const;

    // Projector weights onto the low-lying subspace: basis states whose every
    // per-site level is below ceil(cutoff/2).
    std::vector<bool> low_lying_mask() const;

 private:
    LatticeConfig cfg_;
    std::size_t dim_;
    std::vector<CMatrix> phi_, p_;
    CMatrix free_, phi_k_, phi_j_;
    mutable EigenSystem eig_;
    mutable bool eig_ready_ = false;
};

// The same Hamiltonian as an exact Symbol over modes 1..sites (variable i
// maps phi_i and the rescaled momentum p_i = dx*pi(x_i) to mode i), with
// profiles evaluated at time t. Coefficients are exact rationals read off
// the (binary-rational) config values.
core::Symbol lattice_symbol(const LatticeConfig& cfg, double t);

}  // namespace fdq::num
