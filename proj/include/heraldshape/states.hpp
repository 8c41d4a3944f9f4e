#pragma once

#include "heraldshape/types.hpp"

#include <vector>

namespace herald {

// Target amplitude profile ν over a discrete mode basis. Never all-zero.
class Shape {
  public:
    explicit Shape(Vec nu);

    const Vec& nu() const { return nu_; }
    Index dim() const { return nu_.size(); }

    // Σ|ν_k|² = 1 within tol::eq
    bool is_normalized() const;
    Shape normalized() const;

  private:
    Vec nu_;
};

// One or more degrees of freedom, flattened row-major: (k, l) -> k*dims[1]+l.
struct ModeSpace {
    std::vector<Index> dims;

    Index total_dim() const;
    Index flatten(const std::vector<Index>& indices) const;
    std::vector<Index> unflatten(Index flat) const;
};

// Bipartite state ρ_AB on a dim_a * dim_b space. `pure` is set only when
// Tr ρ² = 1 within tol::structure.
struct JointState {
    Mat rho;
    Index dim_a = 0;
    Index dim_b = 0;
    bool pure = false;
};

// ρ = |ψ⟩⟨ψ| from a flattened bipartite ket; ψ is normalized first.
JointState joint_from_ket(const Vec& psi, Index dim_a, Index dim_b);

// Validated construction from an existing density matrix (hermiticity and
// trace are enforced; the pure flag is recomputed from Tr ρ²).
JointState joint_from_density(Mat rho, Index dim_a, Index dim_b);

namespace states {

// ρ(p) = p |Φ⟩⟨Φ| + (1-p)/n Σ_k |kk⟩⟨kk| with |Φ⟩ = Σ_k |kk⟩ / √n.
// p = 1 is the maximally entangled pair, p = 0 its classically correlated
// counterpart (same marginals, no coherence).
JointState correlated_pair(Index n, double p);

// (1/√n) Σ_k e^{i 2π k s / n} |k⟩_A |(k+m) mod n⟩_B.
// (m, s) = (0, 0) reduces to correlated_pair(n, 1).
JointState generalized_bell(Index n, Index m, Index shift_phase);

// (1/‖ν‖) Σ_k ν_k |k⟩_A |k⟩_B — the source that already carries the shape.
JointState shaped_entangled(const Shape& shape);

// (1/√(n1 n2)) Σ_{k,l} |k,l⟩_A |k,l⟩_B — entangled in two DOFs at once.
JointState hyperentangled(Index n1, Index n2);

struct SchmidtTerm {
    double coefficient;  // λ_i ≥ 0, Σ λ_i² = 1
    Vec vec_a;
    Vec vec_b;
};

// Schmidt decomposition of a pure bipartite state, coefficients descending.
// Throws for mixed input.
std::vector<SchmidtTerm> schmidt_decompose(const JointState& state);

// The ket of a pure JointState (global phase arbitrary). Throws for mixed input.
Vec state_vector(const JointState& state);

}  // namespace states
}  // namespace herald
