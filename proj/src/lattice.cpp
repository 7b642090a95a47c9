#include "fdq/lattice.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "fdq/errors.hpp"

namespace fdq::num {

using json = nlohmann::ordered_json;
using core::Symbol;

double Profile::value(double t) const {
    if (amp == 0.0) return 0.0;
    switch (shape) {
        case Shape::Gauss: {
            double u = t / width;
            return amp * std::exp(-u * u);
        }
        case Shape::ConstWindow: return (t >= from && t <= to) ? amp : 0.0;
    }
    return 0.0;
}

double Profile::endpoint_level(double t0, double t1) const {
    if (amp == 0.0) return 0.0;
    return std::max(std::abs(value(t0)), std::abs(value(t1))) / std::abs(amp);
}

std::size_t LatticeConfig::dimension() const {
    std::size_t d = 1;
    for (unsigned s = 0; s < sites; ++s) {
        d *= cutoff;
        if (d > cap_dim)
            throw ValidationError("dimension cap exceeded: cutoff^sites > cap_dim");
    }
    return d;
}

void LatticeConfig::validate() const {
    if (sites < 1) throw ValidationError("sites must be >= 1");
    if (!(dx > 0.0)) throw ValidationError("dx must be positive");
    if (!(mass >= 0.0)) throw ValidationError("mass must be nonnegative");
    if (!(hbar > 0.0)) throw ValidationError("hbar must be positive");
    if (k < 2) throw ValidationError("interaction power k must be >= 2");
    if (cutoff < 2) throw ValidationError("cutoff must be >= 2");
    if (!(t1 > t0)) throw ValidationError("time window requires t1 > t0");
    if (!(dt > 0.0)) throw ValidationError("dt must be positive");
    if (!(dt <= t1 - t0)) throw ValidationError("dt must not exceed the time window");
    for (const Profile* p : {&g, &j}) {
        if (p->shape == Profile::Shape::Gauss && !(p->width > 0.0))
            throw ValidationError("gauss profile width must be positive");
        if (!p->site_weights.empty() && p->site_weights.size() != sites)
            throw ValidationError("site_weights length must equal sites");
    }
    dimension();
}

namespace {

double num_field(const json& j, const char* key, double fallback, bool required = false) {
    if (!j.contains(key)) {
        if (required) throw ValidationError(std::string("config missing field \"") + key + "\"");
        return fallback;
    }
    if (!j[key].is_number()) throw ValidationError(std::string("config field \"") + key + "\" must be a number");
    return j[key].get<double>();
}

std::int64_t int_field(const json& j, const char* key, std::int64_t fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer())
        throw ValidationError(std::string("config field \"") + key + "\" must be an integer");
    return j[key].get<std::int64_t>();
}

Profile profile_from_json(const json& j, const char* key) {
    Profile p;
    if (!j.contains(key)) return p;
    const json& pj = j[key];
    if (!pj.is_object()) throw ValidationError(std::string("profile \"") + key + "\" must be an object");
    std::string shape = pj.contains("shape") ? pj["shape"].get<std::string>() : "const_window";
    if (shape == "gauss") p.shape = Profile::Shape::Gauss;
    else if (shape == "const_window") p.shape = Profile::Shape::ConstWindow;
    else throw ValidationError("unknown profile shape: " + shape);
    p.amp = num_field(pj, "amp", 0.0);
    p.width = num_field(pj, "width", 1.0);
    p.from = num_field(pj, "from", 0.0);
    p.to = num_field(pj, "to", 0.0);
    if (pj.contains("site_weights")) {
        if (!pj["site_weights"].is_array())
            throw ValidationError("site_weights must be an array");
        for (const json& w : pj["site_weights"]) {
            if (!w.is_number()) throw ValidationError("site_weights entries must be numbers");
            p.site_weights.push_back(w.get<double>());
        }
    }
    return p;
}

json profile_to_json(const Profile& p) {
    json out;
    out["shape"] = p.shape == Profile::Shape::Gauss ? "gauss" : "const_window";
    out["amp"] = p.amp;
    if (p.shape == Profile::Shape::Gauss) {
        out["width"] = p.width;
    } else {
        out["from"] = p.from;
        out["to"] = p.to;
    }
    if (!p.site_weights.empty()) out["site_weights"] = p.site_weights;
    return out;
}

}  // namespace

LatticeConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("config must be a JSON object");
    LatticeConfig cfg;
    std::int64_t sites = int_field(j, "sites", 1);
    if (sites < 1) throw ValidationError("sites must be >= 1");
    cfg.sites = static_cast<unsigned>(sites);
    cfg.dx = num_field(j, "dx", 1.0);
    cfg.mass = num_field(j, "mass", 1.0);
    cfg.hbar = num_field(j, "hbar", 1.0);
    std::int64_t k = int_field(j, "k", 4);
    if (k < 2) throw ValidationError("interaction power k must be >= 2");
    cfg.k = static_cast<unsigned>(k);
    std::int64_t cutoff = int_field(j, "cutoff", 8);
    if (cutoff < 2) throw ValidationError("cutoff must be >= 2");
    cfg.cutoff = static_cast<unsigned>(cutoff);
    cfg.t0 = num_field(j, "t0", 0.0, true);
    cfg.t1 = num_field(j, "t1", 1.0, true);
    cfg.dt = num_field(j, "dt", 1e-3, true);
    cfg.g = profile_from_json(j, "g");
    cfg.j = profile_from_json(j, "j");
    std::int64_t cap = int_field(j, "cap_dim", 20000);
    if (cap < 1) throw ValidationError("cap_dim must be >= 1");
    cfg.cap_dim = static_cast<std::size_t>(cap);
    cfg.validate();
    return cfg;
}

LatticeConfig config_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("config JSON: ") + e.what(), e.byte);
    }
    return config_from_json(j);
}

json config_to_json(const LatticeConfig& cfg) {
    json out;
    out["sites"] = cfg.sites;
    out["dx"] = cfg.dx;
    out["mass"] = cfg.mass;
    out["hbar"] = cfg.hbar;
    out["k"] = cfg.k;
    out["cutoff"] = cfg.cutoff;
    out["t0"] = cfg.t0;
    out["t1"] = cfg.t1;
    out["dt"] = cfg.dt;
    out["g"] = profile_to_json(cfg.g);
    out["j"] = profile_to_json(cfg.j);
    out["cap_dim"] = cfg.cap_dim;
    return out;
}

namespace {

CMatrix matrix_power(const CMatrix& a, unsigned k) {
    CMatrix acc = CMatrix::identity(a.dim());
    for (unsigned q = 0; q < k; ++q) acc = acc * a;
    return acc;
}

}  // namespace

Lattice::Lattice(LatticeConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
    dim_ = cfg_.dimension();
    unsigned M = cfg_.cutoff, N = cfg_.sites;

    // single-site ladder and field matrices at unit reference frequency
    CMatrix a(M);
    for (unsigned n = 1; n < M; ++n) a.at(n - 1, n) = cx(std::sqrt(static_cast<double>(n)), 0.0);
    CMatrix adag = a.adjoint();
    double r = std::sqrt(cfg_.hbar / 2.0);
    CMatrix phi1 = a;
    phi1 += adag;
    phi1.scale(cx(r, 0.0));
    CMatrix p1 = adag;
    p1 -= a;
    p1.scale(cx(0.0, r));

    phi_.reserve(N);
    p_.reserve(N);
    std::size_t left = 1;
    for (unsigned s = 0; s < N; ++s) {
        std::size_t right = dim_ / (left * M);
        CMatrix site_phi = CMatrix::kron(CMatrix::kron(CMatrix::identity(left), phi1),
                                         CMatrix::identity(right));
        CMatrix site_p =
            CMatrix::kron(CMatrix::kron(CMatrix::identity(left), p1), CMatrix::identity(right));
        phi_.push_back(std::move(site_phi));
        p_.push_back(std::move(site_p));
        left *= M;
    }

    double dx = cfg_.dx, m = cfg_.mass;
    free_ = CMatrix(dim_);
    for (unsigned s = 0; s < N; ++s) {
        free_.axpy(cx(1.0 / (2.0 * dx), 0.0), p_[s] * p_[s]);
        free_.axpy(cx(dx * m * m / 2.0, 0.0), phi_[s] * phi_[s]);
        if (N > 1) {
            CMatrix d = phi_[(s + 1) % N];
            d -= phi_[s];
            free_.axpy(cx(1.0 / (2.0 * dx), 0.0), d * d);
        }
    }

    double kfact = 1.0;
    for (unsigned q = 2; q <= cfg_.k; ++q) kfact *= q;
    phi_k_ = CMatrix(dim_);
    phi_j_ = CMatrix(dim_);
    for (unsigned s = 0; s < N; ++s) {
        phi_k_.axpy(cx(dx * cfg_.g.site_weight(s) / kfact, 0.0), matrix_power(phi_[s], cfg_.k));
        phi_j_.axpy(cx(dx * cfg_.j.site_weight(s), 0.0), phi_[s]);
    }
}

CMatrix Lattice::interaction(double t) const {
    CMatrix v(dim_);
    double gv = cfg_.g.value(t), jv = cfg_.j.value(t);
    if (gv != 0.0) v.axpy(cx(gv, 0.0), phi_k_);
    if (jv != 0.0) v.axpy(cx(jv, 0.0), phi_j_);
    return v;
}

CMatrix Lattice::hamiltonian(double t) const {
    CMatrix h = free_;
    h += interaction(t);
    return h;
}

const EigenSystem& Lattice::free_eigen() const {
    if (!eig_ready_) {
        eig_ = jacobi_eigensolve(free_);
        eig_ready_ = true;
    }
    return eig_;
}

CVector Lattice::free_ground_state() const {
    const EigenSystem& es = free_eigen();
    CVector psi(dim_);
    for (std::size_t r = 0; r < dim_; ++r) psi[r] = es.vectors.at(r, 0);
    // residual check: ||H0 psi - E0 psi||
    CVector hpsi = free_.apply(psi);
    double e0 = es.values[0];
    double res = 0.0;
    for (std::size_t r = 0; r < dim_; ++r) res += std::norm(hpsi[r] - e0 * psi[r]);
    if (std::sqrt(res) > 1e-8) throw NumericError("ground-state residual exceeds 1e-8");
    return psi;
}

double Lattice::free_ground_energy() const { return free_eigen().values[0]; }

std::vector<bool> Lattice::low_lying_mask() const {
    unsigned M = cfg_.cutoff;
    unsigned half = (M + 1) / 2;
    std::vector<bool> mask(dim_);
    for (std::size_t idx = 0; idx < dim_; ++idx) {
        std::size_t rest = idx;
        bool low = true;
        for (unsigned s = 0; s < cfg_.sites; ++s) {
            unsigned digit = static_cast<unsigned>(rest % M);
            rest /= M;
            if (digit >= half) {
                low = false;
                break;
            }
        }
        mask[idx] = low;
    }
    return mask;
}

Symbol lattice_symbol(const LatticeConfig& cfg, double t) {
    unsigned N = cfg.sites;
    auto rq = [](double d) { return Rational(mpq_class(d)); };
    Rational dx = rq(cfg.dx), m = rq(cfg.mass);
    Rational half_over_dx = Rational(1, 2) / dx;

    Symbol H = Symbol::zero(N);
    for (unsigned s = 0; s < N; ++s) {
        unsigned mode = s + 1, next = (s + 1) % N + 1;
        Symbol pi_s = Symbol::pi(N, mode);
        Symbol phi_s = Symbol::phi(N, mode);
        H += (pi_s * pi_s).scaled(HPoly(Scalar(half_over_dx)));
        H += (phi_s * phi_s).scaled(HPoly(Scalar(dx * m * m / 2)));
        if (N > 1) {
            Symbol d = Symbol::phi(N, next) - phi_s;
            H += (d * d).scaled(HPoly(Scalar(half_over_dx)));
        }
        Rational gv = rq(cfg.g.value(t) * cfg.g.site_weight(s));
        Rational jv = rq(cfg.j.value(t) * cfg.j.site_weight(s));
        if (gv != 0) {
            Rational kfact = core::factorial(cfg.k);
            H += phi_s.pow(cfg.k).scaled(HPoly(Scalar(dx * gv / kfact)));
        }
        if (jv != 0) H += phi_s.scaled(HPoly(Scalar(dx * jv)));
    }
    return H;
}

}  // namespace fdq::num
