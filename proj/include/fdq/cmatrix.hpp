#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "fdq/kern.hpp"

namespace fdq::num {

using cx = std::complex<double>;
using CVector = std::vector<cx>;

// Dense square complex matrix, row-major, backed by the kernel layer.
class CMatrix {
 public:
    CMatrix() = default;
    explicit CMatrix(std::size_t dim) : dim_(dim), a_(dim * dim, cx(0.0, 0.0)) {}

    static CMatrix identity(std::size_t dim);

    std::size_t dim() const { return dim_; }
    cx& at(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
    const cx& at(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }
    cx* data() { return a_.data(); }
    const cx* data() const { return a_.data(); }

    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator-=(const CMatrix& o);
    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

    CMatrix& scale(cx alpha);
    CMatrix& axpy(cx alpha, const CMatrix& x);  // this += alpha * x

    CMatrix adjoint() const;
    CVector apply(const CVector& v) const;

    double frobenius() const;
    double max_abs() const;
    // max entry of |A - A^dagger|
    double hermiticity_defect() const;

    // Tensor product, row-major convention: index = i_a * dim_b + i_b.
    static CMatrix kron(const CMatrix& a, const CMatrix& b);

 private:
    std::size_t dim_ = 0;
    std::vector<cx> a_;
};

// Full eigensystem of a Hermitian matrix by cyclic complex Jacobi rotations.
// Eigenvalues ascending; eigenvectors are the columns of `vectors`.
struct EigenSystem {
    std::vector<double> values;
    CMatrix vectors;
};

EigenSystem jacobi_eigensolve(const CMatrix& h);

// f applied to a Hermitian matrix through its eigensystem:
// sum_k f(lambda_k) v_k v_k^dagger.
CMatrix eigen_apply(const EigenSystem& es, const std::vector<cx>& f_of_values);

double vector_norm(const CVector& v);
cx vector_dot(const CVector& x, const CVector& y);  // conj(x) . y

}  // namespace fdq::num
