#include "fdq/evolve.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

#include "fdq/errors.hpp"

namespace fdq::num {

using json = nlohmann::ordered_json;

namespace {

long step_count(const LatticeConfig& cfg) {
    long n = std::lround((cfg.t1 - cfg.t0) / cfg.dt);
    return n < 1 ? 1 : n;
}

CMatrix ih_mul(const CMatrix& h, const CMatrix& u, double hbar) {
    CMatrix r = h * u;
    r.scale(cx(0.0, -1.0 / hbar));
    return r;
}

CVector ih_mul(const CMatrix& h, const CVector& u, double hbar) {
    CVector r = h.apply(u);
    kern::active_kernels().scal(r.size(), cx(0.0, -1.0 / hbar), r.data());
    return r;
}

void add_scaled(CMatrix& y, double a, const CMatrix& x) { y.axpy(cx(a, 0.0), x); }
void add_scaled(CVector& y, double a, const CVector& x) {
    kern::active_kernels().axpy(y.size(), cx(a, 0.0), x.data(), y.data());
}

double state_norm(const CMatrix& x) { return x.frobenius(); }
double state_norm(const CVector& x) { return vector_norm(x); }

template <class St>
St rk4_schrodinger(const Lattice& lat, St x) {
    const LatticeConfig& cfg = lat.config();
    long n = step_count(cfg);
    double h = (cfg.t1 - cfg.t0) / static_cast<double>(n);
    double norm0 = state_norm(x);
    for (long s = 0; s < n; ++s) {
        double t = cfg.t0 + h * static_cast<double>(s);
        CMatrix h0 = lat.hamiltonian(t);
        CMatrix hm = lat.hamiltonian(t + h / 2.0);
        CMatrix h1 = lat.hamiltonian(t + h);
        St k1 = ih_mul(h0, x, cfg.hbar);
        St y = x;
        add_scaled(y, h / 2.0, k1);
        St k2 = ih_mul(hm, y, cfg.hbar);
        y = x;
        add_scaled(y, h / 2.0, k2);
        St k3 = ih_mul(hm, y, cfg.hbar);
        y = x;
        add_scaled(y, h, k3);
        St k4 = ih_mul(h1, y, cfg.hbar);
        add_scaled(x, h / 6.0, k1);
        add_scaled(x, h / 3.0, k2);
        add_scaled(x, h / 3.0, k3);
        add_scaled(x, h / 6.0, k4);
        double nn = state_norm(x);
        if (!(nn <= norm0 * (1.0 + 1e-3))) {
            char buf[128];
            std::snprintf(buf, sizeof buf,
                          "integrator instability at t=%.6g: norm %.6g vs initial %.6g", t + h, nn,
                          norm0);
            throw NumericError(buf);
        }
    }
    return x;
}

// Interaction-picture machinery in the H0 eigenbasis.
struct InteractionFrame {
    const Lattice& lat;
    const EigenSystem& es;
    CMatrix wk, wj;  // couplings rotated into the eigenbasis
    bool has_g, has_j;

    explicit InteractionFrame(const Lattice& l) : lat(l), es(l.free_eigen()) {
        CMatrix qd = es.vectors.adjoint();
        has_g = lat.config().g.amp != 0.0;
        has_j = lat.config().j.amp != 0.0;
        if (has_g) wk = qd * lat.phi_power_coupling() * es.vectors;
        if (has_j) wj = qd * lat.source_coupling() * es.vectors;
    }

    // H_I(t) in the eigenbasis: phases e^{i(l_a - l_b)(t-t0)/hbar} times the
    // rotated coupling.
    CMatrix h_int(double t) const {
        std::size_t d = lat.dim();
        const LatticeConfig& cfg = lat.config();
        CMatrix v(d);
        double gv = cfg.g.value(t), jv = cfg.j.value(t);
        if (has_g && gv != 0.0) v.axpy(cx(gv, 0.0), wk);
        if (has_j && jv != 0.0) v.axpy(cx(jv, 0.0), wj);
        std::vector<cx> ph(d);
        double tau = (t - cfg.t0) / cfg.hbar;
        for (std::size_t a = 0; a < d; ++a)
            ph[a] = std::polar(1.0, es.values[a] * tau);
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b) v.at(a, b) *= ph[a] * std::conj(ph[b]);
        return v;
    }

    // diag(e^{i l_a s/hbar}) conjugation applied in place
    void phase_conjugate(CMatrix& u, double s) const {
        std::size_t d = lat.dim();
        std::vector<cx> ph(d);
        for (std::size_t a = 0; a < d; ++a)
            ph[a] = std::polar(1.0, es.values[a] * s / lat.config().hbar);
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b) u.at(a, b) *= ph[a] * std::conj(ph[b]);
    }

    CMatrix to_site_basis(const CMatrix& u) const { return es.vectors * u * es.vectors.adjoint(); }
};

void check_finite(const std::vector<CMatrix>& ys) {
    for (const CMatrix& y : ys) {
        double n = y.frobenius();
        if (!(n < 1e8)) throw NumericError("dyson integration diverged");
    }
}

}  // namespace

CMatrix evolve_operator(const Lattice& lat) {
    return rk4_schrodinger(lat, CMatrix::identity(lat.dim()));
}

CVector evolve_state(const Lattice& lat, const CVector& psi0) {
    if (psi0.size() != lat.dim())
        throw ValidationError("initial state length does not match lattice dimension");
    return rk4_schrodinger(lat, psi0);
}

CMatrix evolve_interaction(const Lattice& lat) {
    const LatticeConfig& cfg = lat.config();
    InteractionFrame frame(lat);
    long n = step_count(cfg);
    double h = (cfg.t1 - cfg.t0) / static_cast<double>(n);
    CMatrix u = CMatrix::identity(lat.dim());
    for (long s = 0; s < n; ++s) {
        double t = cfg.t0 + h * static_cast<double>(s);
        CMatrix h0 = frame.h_int(t);
        CMatrix hm = frame.h_int(t + h / 2.0);
        CMatrix h1 = frame.h_int(t + h);
        CMatrix k1 = ih_mul(h0, u, cfg.hbar);
        CMatrix y = u;
        add_scaled(y, h / 2.0, k1);
        CMatrix k2 = ih_mul(hm, y, cfg.hbar);
        y = u;
        add_scaled(y, h / 2.0, k2);
        CMatrix k3 = ih_mul(hm, y, cfg.hbar);
        y = u;
        add_scaled(y, h, k3);
        CMatrix k4 = ih_mul(h1, y, cfg.hbar);
        add_scaled(u, h / 6.0, k1);
        add_scaled(u, h / 3.0, k2);
        add_scaled(u, h / 3.0, k3);
        add_scaled(u, h / 6.0, k4);
        if (!(u.frobenius() < 1e8)) throw NumericError("interaction-picture integration diverged");
    }
    return frame.to_site_basis(u);
}

std::vector<CMatrix> dyson(const Lattice& lat, unsigned order) {
    if (order > 4) throw ValidationError("dyson order is capped at 4");
    const LatticeConfig& cfg = lat.config();
    InteractionFrame frame(lat);
    std::size_t d = lat.dim();
    long n = step_count(cfg);
    double h = (cfg.t1 - cfg.t0) / static_cast<double>(n);

    std::vector<CMatrix> ys(order + 1, CMatrix(d));
    ys[0] = CMatrix::identity(d);

    // derivative of the stacked graded system; ys[0] is constant
    auto grade_rhs = [&](double t, const std::vector<CMatrix>& y) {
        std::vector<CMatrix> dy(order + 1, CMatrix(d));
        if (order > 0) {
            CMatrix hi = frame.h_int(t);
            for (unsigned q = 1; q <= order; ++q) dy[q] = ih_mul(hi, y[q - 1], cfg.hbar);
        }
        return dy;
    };
    auto shifted = [&](const std::vector<CMatrix>& y, double a, const std::vector<CMatrix>& k) {
        std::vector<CMatrix> out = y;
        for (unsigned q = 0; q <= order; ++q) add_scaled(out[q], a, k[q]);
        return out;
    };

    for (long s = 0; s < n; ++s) {
        double t = cfg.t0 + h * static_cast<double>(s);
        auto k1 = grade_rhs(t, ys);
        auto k2 = grade_rhs(t + h / 2.0, shifted(ys, h / 2.0, k1));
        auto k3 = grade_rhs(t + h / 2.0, shifted(ys, h / 2.0, k2));
        auto k4 = grade_rhs(t + h, shifted(ys, h, k3));
        for (unsigned q = 0; q <= order; ++q) {
            add_scaled(ys[q], h / 6.0, k1[q]);
            add_scaled(ys[q], h / 3.0, k2[q]);
            add_scaled(ys[q], h / 3.0, k3[q]);
            add_scaled(ys[q], h / 6.0, k4[q]);
        }
        check_finite(ys);
    }

    for (unsigned q = 0; q <= order; ++q) {
        frame.phase_conjugate(ys[q], cfg.t0);
        ys[q] = frame.to_site_basis(ys[q]);
    }
    return ys;
}

CMatrix s_matrix(const Lattice& lat, unsigned order) {
    const LatticeConfig& cfg = lat.config();
    for (const Profile* p : {&cfg.g, &cfg.j}) {
        if (p->endpoint_level(cfg.t0, cfg.t1) > 1e-12)
            throw ValidationError(
                "s-matrix requires profiles below 1e-12 relative at the window endpoints");
    }
    std::vector<CMatrix> terms = dyson(lat, order);
    CMatrix s(lat.dim());
    for (const CMatrix& t : terms) s += t;
    return s;
}

CMatrix s_matrix_exact(const Lattice& lat) {
    const LatticeConfig& cfg = lat.config();
    CMatrix u = evolve_operator(lat);
    const EigenSystem& es = lat.free_eigen();
    std::size_t d = lat.dim();
    std::vector<cx> e1(d), e0(d);
    for (std::size_t a = 0; a < d; ++a) {
        e1[a] = std::polar(1.0, es.values[a] * cfg.t1 / cfg.hbar);
        e0[a] = std::polar(1.0, -es.values[a] * cfg.t0 / cfg.hbar);
    }
    return eigen_apply(es, e1) * u * eigen_apply(es, e0);
}

double unitarity_defect_low(const Lattice& lat, const CMatrix& u) {
    CMatrix d = u.adjoint() * u;
    d -= CMatrix::identity(lat.dim());
    return projected_distance(lat, d, CMatrix(lat.dim()));
}

double projected_distance(const Lattice& lat, const CMatrix& a, const CMatrix& b) {
    std::vector<bool> low = lat.low_lying_mask();
    double s = 0.0;
    for (std::size_t i = 0; i < lat.dim(); ++i) {
        if (!low[i]) continue;
        for (std::size_t j = 0; j < lat.dim(); ++j)
            if (low[j]) s += std::norm(a.at(i, j) - b.at(i, j));
    }
    return std::sqrt(s);
}

json matrix_to_json(const CMatrix& m) {
    json out;
    out["dim"] = m.dim();
    json data = json::array();
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j)
            data.push_back(json::array({m.at(i, j).real(), m.at(i, j).imag()}));
    out["data"] = std::move(data);
    return out;
}

std::uint64_t fnv1a_hash(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

json meta_json(const Lattice& lat, const CMatrix& u) {
    char hex[32];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(fnv1a_hash(config_to_json(lat.config()).dump())));
    json meta;
    meta["config_hash"] = hex;
    meta["dim"] = lat.dim();
    meta["free_hermiticity_defect"] = lat.free_hamiltonian().hermiticity_defect();
    const EigenSystem& es = lat.free_eigen();
    CVector psi = lat.free_ground_state();
    CVector hpsi = lat.free_hamiltonian().apply(psi);
    double res = 0.0;
    for (std::size_t r = 0; r < lat.dim(); ++r) res += std::norm(hpsi[r] - es.values[0] * psi[r]);
    meta["ground_residual"] = std::sqrt(res);
    meta["unitarity_defect_low"] = unitarity_defect_low(lat, u);
    return meta;
}

}  // namespace fdq::num
