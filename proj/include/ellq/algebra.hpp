#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ellq/linalg.hpp"
#include "ellq/theta.hpp"

namespace ellq {

/// a mod n mapped into [0, n).
inline int zmod(long a, int n) {
    const long r = a % n;
    return int(r < 0 ? r + n : r);
}

// Coprime pair (n, k), the inverse k' of k mod n, the point tau, and the
// underlying lattice data.
struct AlgebraParams {
    int n;
    int k;
    int k_prime;
    cplx tau;
    LatticeData lat;

    AlgebraParams(int n_, int k_, cplx tau_, cplx eta, double trunc_eps = 1e-12);
    AlgebraParams(int n_, int k_, cplx tau_, LatticeData lat_);

    // True when tau lies on (1/n)(Z + Z eta) up to tol.
    bool tau_on_torsion(double tol = 1e-9) const;

    AlgebraParams with_tau(cplx t) const;
    AlgebraParams with_k(int k_) const;
};

// Dense coefficient vector over the monomial basis x_{i1} (x) ... (x) x_{id}
// of V^{(x)d}, row-major.
struct TensorVector {
    int degree;
    int n;
    CVector coeffs;

    static TensorVector zero(int degree, int n);

    /// Flat index of (a, b) for degree 2.
    int idx2(int a, int b) const { return a * n + b; }
    cplx& at2(int a, int b) { return coeffs(idx2(a, b)); }
    cplx at2(int a, int b) const { return coeffs(idx2(a, b)); }
};

// Span of the quadratic relations inside V (x) V together with an
// orthonormal basis and its numerical rank.
struct RelationSpace {
    AlgebraParams params;
    std::vector<TensorVector> generators; // nonzero columns, sup-normalized
    CMatrix ortho_basis;                  // n^2 x rank
    int rank = 0;
    double svd_gap = 0.0;
    std::vector<double> singular_values;
    std::uint64_t seed = 0; // provenance of a sampled tau, 0 if direct
};

// Word S^a T^b eps^c in the Heisenberg group of order n^3.
struct HeisenbergElement {
    int a = 0;
    int b = 0;
    int c = 0;
};

/// Group law; respects S T = e(1/n) T S.
HeisenbergElement heisenberg_compose(const HeisenbergElement& g, const HeisenbergElement& h, int n);

/// Matrix of g on V: x_i -> omega^{c + a(i+b)} x_{i+b}, omega = e(1/n).
CMatrix heisenberg_degree1(const HeisenbergElement& g, int n);

/// Kronecker power acting on V^{(x)degree}.
CMatrix heisenberg_matrix(const HeisenbergElement& g, int degree, int n);

// r_ij(tau): coefficient of x_{j-r} (x) x_{i+r} is
// theta_{j-i+(k-1)r}(0) / (theta_{j-i-r}(-tau) theta_{kr}(tau)).
// Throws TorsionPoint when tau is on (1/n)Lambda; use relation_space there.
TensorVector relation_r_ij(const AlgebraParams& p, int i, int j);

// The operator R_tau(z) on V (x) V; column idx2(i,j) is the image of
// x_i (x) x_j. Evaluated in the pole-free form in which the normalization
// prefactor cancels each denominator, so any z is admissible.
CMatrix operator_R(const AlgebraParams& p, cplx z);

// R_tau(tau) for all tau: direct evaluation off the torsion lattice,
// 8-point circle mean of radius rho at torsion points.
CMatrix operator_R_diag(const AlgebraParams& p);
CMatrix operator_R_diag(const AlgebraParams& p, double rho, int circle_points = 8);

// Image of R_tau(tau): generators normalized per column, orthonormal basis
// and rank by SVD at the global tolerance. Throws RankAmbiguous when the
// singular-value gap at the cut is below kGapFloor.
RelationSpace relation_space(const AlgebraParams& p);

// Declared identically zero when ||r_ij|| < 1e-10 at three seeded generic tau.
bool relation_identically_zero(const AlgebraParams& p, int i, int j);

// De Laet's alternate generators.
struct AltRelations {
    std::vector<TensorVector> R;       // indexed (i,j) row-major
    std::vector<TensorVector> R_prime;
};
AltRelations alt_relations(const AlgebraParams& p);

// (id (x) phi) applied to the space, re-orthonormalized. Throws SingularMap.
RelationSpace twist_quadratic(const RelationSpace& rel, const CMatrix& phi);

// Substitution x_i -> x_{mult * i} applied in both tensor slots.
RelationSpace substitution_image(const RelationSpace& rel, int mult);

// Both candidate multipliers k and k' tested against rel_{n,k'}(E,tau).
struct KkPrimeResult {
    RelationSpace target;      // relation_space(n, k', tau)
    RelationSpace image_k;     // substitution x_i -> x_{k i}
    RelationSpace image_kp;    // substitution x_i -> x_{k' i}
    double dist_k = 0.0;       // projector distances to the target
    double dist_kp = 0.0;
};
KkPrimeResult map_k_kprime(const RelationSpace& rel);

// N (x) N image (N x_a = x_{-a}) and the tensor-factor swap image, both
// compared against relation_space at -tau.
struct NegationResult {
    RelationSpace target;   // relation_space(n, k, -tau)
    RelationSpace negated;  // op algebra route via N (x) N
    RelationSpace swapped;  // op algebra route via factor swap
    double dist_negated = 0.0;
    double dist_swapped = 0.0;
};
NegationResult negation_map(const RelationSpace& rel);

// Helpers shared by checks and tests.
CMatrix commutator_basis(int n);      // orthonormal basis of Alt^2 V
CMatrix symmetric_pair_basis(int n);  // orthonormal basis of span{x_a x_b + x_b x_a}
RelationSpace space_from_generators(const AlgebraParams& p, const std::vector<TensorVector>& gens);

} // namespace ellq
