#pragma once

#include "heraldshape/types.hpp"

#include <vector>

namespace herald::linalg {

// ---------------------------------------------------------------------------
// Tensor products and index conventions
//
// Composite indices are flattened row-major: (i_a, i_b) -> i_a * dim_b + i_b.
// Every multi-mode object in the library follows this convention.
// ---------------------------------------------------------------------------

// Kronecker product, (rows_a*rows_b) x (cols_a*cols_b).
Mat kron(const Mat& a, const Mat& b);

// Kronecker product of column vectors: (a ⊗ b)[i*dim_b + j] = a_i b_j.
Vec kron(const Vec& a, const Vec& b);

// Reduced density matrix of one subsystem of a bipartite state.
// rho must be (dim_a*dim_b) x (dim_a*dim_b); throws "shape mismatch" otherwise.
Mat partial_trace(const Mat& rho, Index dim_a, Index dim_b, Arm keep);

// Unitary discrete Fourier basis change, F(k,f) = exp(+i 2π k f / n) / √n.
// Column f is the conjugate-basis ket |f⟩. Throws "empty space" for n = 0.
Mat dft_matrix(Index n);

// ---------------------------------------------------------------------------
// Small utilities
// ---------------------------------------------------------------------------

inline Mat dagger(const Mat& m) { return m.adjoint(); }

// |v⟩⟨v|
Mat projector(const Vec& v);

// Tr(ρ²) for Hermitian ρ, evaluated as Σ|ρ_ij|².
double purity_of(const Mat& rho);

// max |a_ij - b_ij|; throws on shape mismatch.
double max_abs_diff(const Mat& a, const Mat& b);

bool approx_equal(const Mat& a, const Mat& b, double tolerance = tol::eq);

// |Σ|v_k|² - 1| ≤ tol
bool is_normalized(const Vec& v, double tolerance = tol::eq);

// ‖U†U - I‖_max ≤ tol
bool is_unitary(const Mat& u, double tolerance = tol::structure);

// Hermitian to 1e-12, trace 1 to 1e-10, eigenvalues ≥ -1e-10.
bool is_density(const Mat& rho);

// Eigenvalues of a Hermitian matrix, ascending.
Eigen::VectorXd hermitian_eigenvalues(const Mat& rho);

}  // namespace herald::linalg
