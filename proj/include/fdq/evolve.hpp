#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "fdq/lattice.hpp"

namespace fdq::num {

// Fixed-step 4th-order integration of i*hbar dU/dt = H(t) U over [t0, t1].
// The step count is rounded so the endpoint is hit exactly. Norm growth
// beyond 1e-3 relative (the flow is unitary) raises NumericError.
CMatrix evolve_operator(const Lattice& lat);
CVector evolve_state(const Lattice& lat, const CVector& psi0);

// Full interaction-picture evolution U_I(t1,t0) in the site basis, where
// H_I(t) = e^{i H0 (t-t0)/hbar} V(t) e^{-i H0 (t-t0)/hbar}.
CMatrix evolve_interaction(const Lattice& lat);

// Interaction-picture Dyson terms from the graded system
//   dU^(n)/dt = (-i/hbar) H_I(t) U^(n-1),  U^(0) = I,
// conjugated into the fixed t0 frame (term n = e^{i H0 t0/hbar} U_I^(n)
// e^{-i H0 t0/hbar}) so that s_matrix(p) is exactly the sum of terms 0..p.
// Order is capped at 4.
std::vector<CMatrix> dyson(const Lattice& lat, unsigned order);

// Truncated S-series: sum of the Dyson terms. Requires both profiles to be
// below 1e-12 relative at t0 and t1.
CMatrix s_matrix(const Lattice& lat, unsigned order);

// Exact S from the direct evolution: e^{i H0 t1/hbar} U(t1,t0) e^{-i H0 t0/hbar}.
CMatrix s_matrix_exact(const Lattice& lat);

// Frobenius norm of P (U^dag U - I) P on the low-lying subspace.
double unitarity_defect_low(const Lattice& lat, const CMatrix& u);
// Frobenius distance between the low-lying blocks of a and b.
double projected_distance(const Lattice& lat, const CMatrix& a, const CMatrix& b);

// {"dim": d, "data": [[re, im], ...]} row-major.
nlohmann::ordered_json matrix_to_json(const CMatrix& m);
std::uint64_t fnv1a_hash(const std::string& s);
// Standard meta block: config hash, dimension, residual norms, unitarity defect.
nlohmann::ordered_json meta_json(const Lattice& lat, const CMatrix& u);

}  // namespace fdq::num
