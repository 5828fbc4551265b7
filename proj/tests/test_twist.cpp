#include <doctest.h>

#include "ellq/algebra.hpp"
#include "ellq/verify.hpp"

using namespace ellq;

namespace {
const cplx I{0.0, 1.0};
const cplx kGenericTau{0.1731, 0.2292};

CMatrix twist_map(int n, int k, int kp, int a, int b) {
    CMatrix phi = CMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        phi(zmod(i - long(kp + 1) * b, n), i) = e2pi(-double(k + 1) * a * i / n);
    return phi;
}
} // namespace

TEST_CASE("identity twist leaves the space untouched") {
    const RelationSpace rel = relation_space(AlgebraParams(3, 1, kGenericTau, I));
    const RelationSpace t = twist_quadratic(rel, CMatrix::Identity(3, 3));
    CHECK(projector_distance(t.ortho_basis, rel.ortho_basis) < 1e-10);
}

TEST_CASE("a singular map is rejected") {
    const RelationSpace rel = relation_space(AlgebraParams(3, 1, kGenericTau, I));
    CHECK_THROWS_AS((void)twist_quadratic(rel, CMatrix::Zero(3, 3)), SingularMap);
}

TEST_CASE("translating tau by 1/n twists by a power of S") {
    for (auto [n, k] : {std::pair{3, 1}, std::pair{5, 2}}) {
        const AlgebraParams p(n, k, kGenericTau, I);
        const RelationSpace rel = relation_space(p);
        const RelationSpace shifted = relation_space(p.with_tau(p.tau + 1.0 / n));
        const RelationSpace twisted = twist_quadratic(rel, twist_map(n, k, p.k_prime, 1, 0));
        CHECK(projector_distance(shifted.ortho_basis, twisted.ortho_basis) < 1e-7);
    }
}

TEST_CASE("translating tau by eta/n twists by a power of T") {
    for (auto [n, k] : {std::pair{3, 1}, std::pair{5, 2}}) {
        const AlgebraParams p(n, k, kGenericTau, I);
        const RelationSpace rel = relation_space(p);
        const RelationSpace shifted = relation_space(p.with_tau(p.tau + I / double(n)));
        const RelationSpace twisted = twist_quadratic(rel, twist_map(n, k, p.k_prime, 0, 1));
        CHECK(projector_distance(shifted.ortho_basis, twisted.ortho_basis) < 1e-7);
    }
}

TEST_CASE("full n-torsion sweep for n=3") {
    const int n = 3, k = 1;
    const AlgebraParams p(n, k, kGenericTau, I);
    const RelationSpace rel = relation_space(p);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const cplx shift = (double(a) + double(b) * I) / double(n);
            const RelationSpace target = relation_space(p.with_tau(p.tau + shift));
            const RelationSpace twisted =
                twist_quadratic(rel, twist_map(n, k, p.k_prime, a, b));
            CHECK(projector_distance(target.ortho_basis, twisted.ortho_basis) < 1e-7);
        }
}

TEST_CASE("k and k': the multiplier k realizes the isomorphism") {
    const AlgebraParams p(5, 2, kGenericTau, I);
    const KkPrimeResult r = map_k_kprime(relation_space(p));
    CHECK(r.dist_k < 1e-7);     // substitution x_i -> x_{k i}
    CHECK(r.dist_kp > 1e-2);    // substitution x_i -> x_{k' i} does not
    CHECK(r.target.rank == 10);
}

TEST_CASE("k = k' is a self map up to span") {
    const AlgebraParams p(3, 2, kGenericTau, I); // k' = 2 = k
    const KkPrimeResult r = map_k_kprime(relation_space(p));
    CHECK(r.dist_k < 1e-8);
    CHECK(r.dist_kp < 1e-8);
}

TEST_CASE("at tau=0 both the k-map and the target are the commutator span") {
    const AlgebraParams p(5, 2, 0.0, I);
    const KkPrimeResult r = map_k_kprime(relation_space(p));
    CHECK(projector_distance(r.target.ortho_basis, commutator_basis(5)) < 1e-7);
    CHECK(r.dist_k < 1e-7);
}

TEST_CASE("negation and factor swap both land on the space at -tau") {
    for (auto [n, k] : {std::pair{4, 3}, std::pair{5, 2}}) {
        const NegationResult r = negation_map(relation_space(AlgebraParams(n, k, kGenericTau, I)));
        CHECK(r.dist_negated < 1e-7);
        CHECK(r.dist_swapped < 1e-7);
    }
    // tau = 0: the commutator span is stable under both maps
    const NegationResult r0 = negation_map(relation_space(AlgebraParams(4, 1, 0.0, I)));
    CHECK(r0.dist_negated < 1e-7);
    CHECK(r0.dist_swapped < 1e-7);
}

TEST_CASE("ranks agree across k and n-k") {
    for (auto [n, k] : {std::pair{5, 2}, std::pair{6, 1}}) {
        const RelationSpace a = relation_space(AlgebraParams(n, k, kGenericTau, I));
        const RelationSpace b = relation_space(AlgebraParams(n, n - k, kGenericTau, I));
        CHECK(a.rank == b.rank);
    }
}

TEST_CASE("k = n-1 relations are antisymmetric") {
    const RelationSpace rel = relation_space(AlgebraParams(4, 3, kGenericTau, I));
    const CMatrix alt = commutator_basis(4);
    for (const auto& g : rel.generators)
        CHECK(subspace_residual(g.coeffs, alt) < 1e-8);
}

TEST_CASE("two-torsion: odd n symmetric, even n polynomial") {
    // odd n, tau a nonzero two-torsion point: relations sit in the symmetric span
    const RelationSpace odd = relation_space(AlgebraParams(3, 1, 0.5, I));
    const CMatrix sym = symmetric_pair_basis(3);
    for (const auto& g : odd.generators)
        CHECK(subspace_residual(g.coeffs, sym) < 1e-8);

    // even n: 1/2 is n-torsion, the continued space is the commutator span
    const RelationSpace even = relation_space(AlgebraParams(4, 1, 0.5, I));
    CHECK(projector_distance(even.ortho_basis, commutator_basis(4)) < 1e-7);
}
