#include "fdq/cmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fdq/errors.hpp"

namespace fdq::num {

CMatrix CMatrix::identity(std::size_t dim) {
    CMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = cx(1.0, 0.0);
    return m;
}

namespace {
void require_same_dim(const CMatrix& a, const CMatrix& b) {
    if (a.dim() != b.dim()) throw ValidationError("matrix dimensions differ");
}
}  // namespace

CMatrix& CMatrix::operator+=(const CMatrix& o) {
    require_same_dim(*this, o);
    kern::active_kernels().axpy(a_.size(), cx(1.0, 0.0), o.a_.data(), a_.data());
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
    require_same_dim(*this, o);
    kern::active_kernels().axpy(a_.size(), cx(-1.0, 0.0), o.a_.data(), a_.data());
    return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    require_same_dim(a, b);
    CMatrix c(a.dim_);
    kern::active_kernels().gemm(a.dim_, a.dim_, a.dim_, a.a_.data(), b.a_.data(), c.a_.data());
    return c;
}

CMatrix& CMatrix::scale(cx alpha) {
    kern::active_kernels().scal(a_.size(), alpha, a_.data());
    return *this;
}

CMatrix& CMatrix::axpy(cx alpha, const CMatrix& x) {
    require_same_dim(*this, x);
    kern::active_kernels().axpy(a_.size(), alpha, x.a_.data(), a_.data());
    return *this;
}

CMatrix CMatrix::adjoint() const {
    CMatrix r(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) r.at(j, i) = std::conj(at(i, j));
    return r;
}

CVector CMatrix::apply(const CVector& v) const {
    if (v.size() != dim_) throw ValidationError("vector length does not match matrix dimension");
    CVector out(dim_);
    kern::active_kernels().gemm(dim_, 1, dim_, a_.data(), v.data(), out.data());
    return out;
}

double CMatrix::frobenius() const { return std::sqrt(kern::active_kernels().nrm2sq(a_.size(), a_.data())); }

double CMatrix::max_abs() const {
    double m = 0.0;
    for (const cx& v : a_) m = std::max(m, std::abs(v));
    return m;
}

double CMatrix::hermiticity_defect() const {
    double m = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i; j < dim_; ++j)
            m = std::max(m, std::abs(at(i, j) - std::conj(at(j, i))));
    return m;
}

CMatrix CMatrix::kron(const CMatrix& a, const CMatrix& b) {
    CMatrix r(a.dim_ * b.dim_);
    for (std::size_t ia = 0; ia < a.dim_; ++ia)
        for (std::size_t ja = 0; ja < a.dim_; ++ja) {
            cx av = a.at(ia, ja);
            if (av == cx(0.0, 0.0)) continue;
            for (std::size_t ib = 0; ib < b.dim_; ++ib)
                for (std::size_t jb = 0; jb < b.dim_; ++jb)
                    r.at(ia * b.dim_ + ib, ja * b.dim_ + jb) = av * b.at(ib, jb);
        }
    return r;
}

EigenSystem jacobi_eigensolve(const CMatrix& h) {
    std::size_t n = h.dim();
    if (n == 0) throw ValidationError("cannot diagonalize an empty matrix");
    if (h.hermiticity_defect() > 1e-12 * std::max(1.0, h.max_abs()))
        throw ValidationError("jacobi eigensolver requires a Hermitian matrix");

    CMatrix a = h;
    CMatrix v = CMatrix::identity(n);

    auto off_norm = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += std::norm(a.at(i, j));
        return std::sqrt(2.0 * s);
    };

    double scale = std::max(1.0, a.max_abs());
    const double tol = 1e-14 * scale * static_cast<double>(n);
    const int max_sweeps = 100;

    int sweep = 0;
    while (off_norm() > tol) {
        if (++sweep > max_sweeps) throw NumericError("jacobi eigensolver did not converge");
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                cx apq = a.at(p, q);
                double g = std::abs(apq);
                if (g <= tol / static_cast<double>(n)) continue;
                // unitary rotation in the (p,q) plane annihilating a[p][q]
                double app = a.at(p, p).real();
                double aqq = a.at(q, q).real();
                cx u = apq / g;  // phase
                double tau = (aqq - app) / (2.0 * g);
                double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                // columns: [p'] = c*[p] - s*conj(u)*[q], [q'] = s*u*[p] + c*[q]
                for (std::size_t r = 0; r < n; ++r) {
                    cx arp = a.at(r, p), arq = a.at(r, q);
                    a.at(r, p) = c * arp - s * std::conj(u) * arq;
                    a.at(r, q) = s * u * arp + c * arq;
                    cx vrp = v.at(r, p), vrq = v.at(r, q);
                    v.at(r, p) = c * vrp - s * std::conj(u) * vrq;
                    v.at(r, q) = s * u * vrp + c * vrq;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    cx apr = a.at(p, r), aqr = a.at(q, r);
                    a.at(p, r) = c * apr - s * u * aqr;
                    a.at(q, r) = s * std::conj(u) * apr + c * aqr;
                }
            }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return a.at(x, x).real() < a.at(y, y).real(); });

    EigenSystem es;
    es.values.resize(n);
    es.vectors = CMatrix(n);
    for (std::size_t k = 0; k < n; ++k) {
        es.values[k] = a.at(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r) es.vectors.at(r, k) = v.at(r, order[k]);
    }
    return es;
}

CMatrix eigen_apply(const EigenSystem& es, const std::vector<cx>& f_of_values) {
    std::size_t n = es.vectors.dim();
    if (f_of_values.size() != n) throw ValidationError("eigenvalue function table has wrong length");
    // Q * diag(f) * Q^dagger
    CMatrix qf(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) qf.at(i, k) = es.vectors.at(i, k) * f_of_values[k];
    return qf * es.vectors.adjoint();
}

double vector_norm(const CVector& v) {
    return std::sqrt(kern::active_kernels().nrm2sq(v.size(), v.data()));
}

cx vector_dot(const CVector& x, const CVector& y) {
    if (x.size() != y.size()) throw ValidationError("vector lengths differ");
    return kern::active_kernels().dotc(x.size(), x.data(), y.data());
}

}  // namespace fdq::num
