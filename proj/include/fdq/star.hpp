#pragma once

#include <string>

#include "fdq/diff_operator.hpp"
#include "fdq/symbol.hpp"

namespace fdq::star {

using core::Symbol;

// The single knob reconciling the different deformation conventions: the
// deformation scalar lambda = c*h for a nonzero complex rational c, plus the
// involution sign derived from lambda's reality. Real lambda flips the sign
// of pi under the involution; imaginary lambda leaves it fixed (formal
// adjoint). Anything else is rejected.
struct DiffContext {
  unsigned modes;
  Scalar lambda_coeff;  // lambda = lambda_coeff * h
  int involution_sign;  // -1 when lambda is real, +1 when imaginary

  DiffContext(unsigned modes_, Scalar c) : modes(modes_), lambda_coeff(std::move(c)) {
    if (modes == 0) throw ValidationError("mode space must have at least one mode");
    if (lambda_coeff.is_zero()) throw ValidationError("lambda must be a nonzero multiple of h");
    if (lambda_coeff.is_real()) involution_sign = -1;
    else if (lambda_coeff.is_imaginary()) involution_sign = +1;
    else throw ValidationError("lambda must be a real or an imaginary multiple of h");
  }

  // Accepts "h", "ih", "-ih".
  static DiffContext named(unsigned modes, const std::string& name) {
    if (name == "h") return {modes, Scalar::one()};
    if (name == "ih") return {modes, Scalar::i()};
    if (name == "-ih") return {modes, -Scalar::i()};
    throw ValidationError("unknown lambda name: " + name);
  }

  HPoly lambda() const { return HPoly::h(1, lambda_coeff); }
  HPoly lambda_pow(unsigned n) const { return HPoly::h(n, lambda_coeff.pow(n)); }
};

void require_context(const Symbol& a, const DiffContext& ctx);

// Normal-ordered product: A *N B = sum over alpha of
// lambda^|alpha|/alpha! (d_pi^alpha A)(d_phi^alpha B).
Symbol normal_star(const Symbol& a, const Symbol& b, const DiffContext& ctx);

// Symmetric-ordered product: A *W B = sum over r,s of
// (lambda/2)^(|r|+|s|) (-1)^|s| / (r! s!) (d_pi^r d_phi^s A)(d_phi^r d_pi^s B).
Symbol weyl_star(const Symbol& a, const Symbol& b, const DiffContext& ctx);

enum class Direction { WeylToNormal, NormalToWeyl };

// Ordering-transition map R = exp(+-(lambda/2) sum_i d2/dphi_i dpi_i);
// WeylToNormal uses +lambda/2, NormalToWeyl is its inverse. Identity at
// h-degree 0 and intertwines the two products.
Symbol ordering_transform(const Symbol& a, const DiffContext& ctx, Direction dir);

// phi^a pi^b -> (multiplication by phi^a) o (lambda d/dphi)^b.
DiffOperator quantize_normal(const Symbol& a, const DiffContext& ctx);

// Average of the quantized factor orderings: each monomial is symmetrized
// over all distinct interleavings of its phi and pi factors, each pi factor
// becoming lambda d/dphi.
DiffOperator quantize_weyl(const Symbol& a, const DiffContext& ctx);

// Inverse of quantize_normal; rejects operators whose coefficients do not
// carry the lambda power their derivative order demands.
Symbol normal_symbol_of(const DiffOperator& op, const DiffContext& ctx);

// The antilinear involution transported to symbols through the normal
// quantization: conjugate coefficients, reverse factors, normal-reorder.
// An anti-automorphism of the normal star product in every context.
Symbol star_involution(const Symbol& a, const DiffContext& ctx);

}  // namespace fdq::star
