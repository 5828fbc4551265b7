#include <doctest.h>

#include "ellq/algebra.hpp"
#include "ellq/verify.hpp"

using namespace ellq;

namespace {
const cplx I{0.0, 1.0};
const cplx kGenericTau{0.1731, 0.2292};
} // namespace

TEST_CASE("algebra parameters: coprimality and the inverse of k") {
    const AlgebraParams p(5, 2, kGenericTau, I);
    CHECK(p.k_prime == 3);
    CHECK_THROWS_AS(AlgebraParams(4, 2, kGenericTau, I), ConfigError);
    CHECK_THROWS_AS(AlgebraParams(3, 3, kGenericTau, I), ConfigError);
    CHECK(AlgebraParams(3, 1, (1.0 + I) / 3.0, I).tau_on_torsion());
    CHECK_FALSE(p.tau_on_torsion());
}

TEST_CASE("r_01 for n=3: pinned coefficients") {
    const AlgebraParams p(3, 1, cplx(0.123, 0.234), I);
    const TensorVector r = relation_r_ij(p, 0, 1);
    // frozen from an independent extended-precision evaluation of each
    // structure constant
    CHECK(std::abs(r.at2(0, 1) - cplx(-0.0008673756982786767, -0.0525812394134211352)) < 1e-12);
    CHECK(std::abs(r.at2(1, 0) - cplx(0.1602636377857488844, 0.1295844855417610914)) < 1e-12);
    CHECK(std::abs(r.at2(2, 2) - cplx(-0.1107278411748648099, 0.0113237999826799400)) < 1e-12);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            if (!((a == 0 && b == 1) || (a == 1 && b == 0) || (a == 2 && b == 2)))
                CHECK(std::abs(r.at2(a, b)) == 0.0);
}

TEST_CASE("n=2: the single relation is the commutator") {
    const AlgebraParams p(2, 1, cplx(0.21, 0.13), I);
    const TensorVector r = relation_r_ij(p, 0, 1);
    CHECK(std::abs(r.at2(0, 0)) < 1e-14);
    CHECK(std::abs(r.at2(1, 1)) < 1e-14);
    CHECK(std::abs(r.at2(0, 1) + r.at2(1, 0)) < 1e-12 * std::abs(r.at2(0, 1)));

    const LatticeData& lat = p.lat;
    const cplx expected = -theta_alpha(1, 0.0, lat).value /
                          (e2pi(-2.0 * p.tau) * theta_alpha(0, p.tau, lat).value *
                           theta_alpha(1, p.tau, lat).value);
    CHECK(std::abs(r.at2(0, 1) - expected) < 1e-12 * std::abs(expected));
}

TEST_CASE("k=1 diagonal relations vanish identically") {
    for (int n : {3, 5}) {
        const AlgebraParams p(n, 1, kGenericTau, I);
        for (int i = 0; i < n; ++i) {
            CHECK(relation_r_ij(p, i, i).coeffs.norm() < 1e-14);
            CHECK(relation_identically_zero(p, i, i));
        }
        CHECK_FALSE(relation_identically_zero(p, 0, 1));
    }
    CHECK_FALSE(relation_identically_zero(AlgebraParams(5, 2, kGenericTau, I), 0, 0));
}

TEST_CASE("torsion points are rejected by the raw relation formula") {
    CHECK_THROWS_AS((void)relation_r_ij(AlgebraParams(3, 1, cplx(1.0 / 3, 0.0), I), 0, 1),
                    TorsionPoint);
    CHECK_THROWS_AS((void)operator_R(AlgebraParams(5, 2, (1.0 + I) / 5.0, I), cplx(0.1)),
                    TorsionPoint);
    CHECK_THROWS_AS((void)alt_relations(AlgebraParams(4, 1, I / 4.0, I)), TorsionPoint);
}

TEST_CASE("R operator: identity at z=0 and relation columns at z=tau") {
    for (auto [n, k] : {std::pair{3, 1}, std::pair{3, 2}, std::pair{4, 1}}) {
        const AlgebraParams p(n, k, kGenericTau, I);
        const CMatrix R0 = operator_R(p, 0.0);
        CHECK((R0 - CMatrix::Identity(n * n, n * n)).cwiseAbs().maxCoeff() < 1e-11);

        const CMatrix Rt = operator_R(p, p.tau);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const TensorVector rij = relation_r_ij(p, i, j);
                if (rij.coeffs.norm() < 1e-14)
                    continue;
                // column is a nonzero scalar multiple of r_ij
                const CVector col = Rt.col(i * n + j);
                Eigen::Index where;
                rij.coeffs.cwiseAbs().maxCoeff(&where);
                const cplx ratio = col(where) / rij.coeffs(where);
                CHECK(std::abs(ratio) > 1e-12);
                CHECK((col - ratio * rij.coeffs).norm() < 1e-10 * col.norm());
            }
    }
}

TEST_CASE("R operator entries are holomorphic in z (circle mean test)") {
    const AlgebraParams p(3, 1, kGenericTau, I);
    const cplx z0(0.45, 0.18);
    // entries are entire of order two, so the 8-point aliasing term c_8 rho^8
    // needs a small radius before it drops below the target
    const double rho = 5e-3;
    const CMatrix center = operator_R(p, z0);
    CMatrix mean = CMatrix::Zero(9, 9);
    for (int t = 0; t < 8; ++t)
        mean += operator_R(p, z0 + rho * e2pi(double(t) / 8.0));
    mean /= 8.0;
    CHECK((mean - center).cwiseAbs().maxCoeff() < 1e-8 * center.cwiseAbs().maxCoeff());
}

TEST_CASE("diagonal R: generic tau agrees with direct evaluation") {
    const AlgebraParams p(4, 3, kGenericTau, I);
    CHECK((operator_R_diag(p) - operator_R(p, p.tau)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("diagonal R at a torsion point: radii self-consistency and rank") {
    const AlgebraParams p(3, 1, I / 3.0, I);
    const CMatrix D3 = operator_R_diag(p, 1e-3);
    const CMatrix D4 = operator_R_diag(p, 1e-4);
    CHECK((D3 - D4).cwiseAbs().maxCoeff() < 1e-8);
    const RelationSpace rel = relation_space(p);
    CHECK(rel.rank == 3);
}

TEST_CASE("relation space dimensions at generic tau") {
    CHECK(relation_space(AlgebraParams(3, 1, kGenericTau, I)).rank == 3);
    CHECK(relation_space(AlgebraParams(5, 2, kGenericTau, I)).rank == 10);

    const RelationSpace r2 = relation_space(AlgebraParams(2, 1, kGenericTau, I));
    CHECK(r2.rank == 1);
    CHECK(projector_distance(r2.ortho_basis, commutator_basis(2)) < 1e-10);
}

TEST_CASE("relation space at tau=0 is the commutator span") {
    const RelationSpace rel = relation_space(AlgebraParams(4, 1, 0.0, I));
    CHECK(rel.rank == 6);
    CHECK(projector_distance(rel.ortho_basis, commutator_basis(4)) < 1e-7);
}

TEST_CASE("every generator stays within the span of the orthonormal basis") {
    const RelationSpace rel = relation_space(AlgebraParams(5, 3, kGenericTau, I));
    for (const auto& g : rel.generators)
        CHECK(subspace_residual(g.coeffs, rel.ortho_basis) < 1e-8);
}

TEST_CASE("heisenberg matrices: commutation and relation equivariance") {
    const int n = 5;
    const CMatrix S = heisenberg_degree1({1, 0, 0}, n);
    const CMatrix T = heisenberg_degree1({0, 1, 0}, n);
    CHECK((S * T - e2pi(1.0 / n) * T * S).norm() < 1e-13);

    const HeisenbergElement st = heisenberg_compose({1, 0, 0}, {0, 1, 0}, n);
    const HeisenbergElement ts = heisenberg_compose({0, 1, 0}, {1, 0, 0}, n);
    CHECK(st.a == ts.a);
    CHECK(st.b == ts.b);
    CHECK(zmod(st.c - ts.c, n) == 1); // S T = e(1/n) T S

    const AlgebraParams p(n, 2, kGenericTau, I);
    const CMatrix S2 = heisenberg_matrix({1, 0, 0}, 2, n);
    const CMatrix T2 = heisenberg_matrix({0, 1, 0}, 2, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const TensorVector r = relation_r_ij(p, i, j);
            CHECK((S2 * r.coeffs - e2pi(double(i + j) / n) * r.coeffs).norm() <
                  1e-9 * r.coeffs.norm());
            const TensorVector rs = relation_r_ij(p, zmod(i + 1, n), zmod(j + 1, n));
            CHECK((T2 * r.coeffs - rs.coeffs).norm() < 1e-9 * r.coeffs.norm());
        }
}

TEST_CASE("alternate relations: spans, eigenrelations, and the even-n sign") {
    // odd n: both families span the relation space
    {
        const AlgebraParams p(5, 2, kGenericTau, I);
        const RelationSpace rel = relation_space(p);
        const AltRelations alt = alt_relations(p);
        CHECK(projector_distance(space_from_generators(p, alt.R).ortho_basis,
                                 rel.ortho_basis) < 1e-7);
        CHECK(projector_distance(space_from_generators(p, alt.R_prime).ortho_basis,
                                 rel.ortho_basis) < 1e-7);

        const CMatrix S2 = heisenberg_matrix({1, 0, 0}, 2, 5);
        const CMatrix T2 = heisenberg_matrix({0, 1, 0}, 2, 5);
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) {
                const auto& R = alt.R[std::size_t(i) * 5 + j];
                CHECK((S2 * R.coeffs - e2pi(2.0 * j / 5) * R.coeffs).norm() <
                      1e-10 * R.coeffs.norm());
                const auto& Rn = alt.R[std::size_t(i) * 5 + zmod(j + 1, 5)];
                CHECK((T2 * R.coeffs - Rn.coeffs).norm() < 1e-10 * R.coeffs.norm());
            }
    }
    // even n: the half-period shift flips the sign, and both families
    // together span the relation space
    {
        const AlgebraParams p(4, 1, kGenericTau, I);
        const AltRelations alt = alt_relations(p);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                const auto& a = alt.R[std::size_t(i) * 4 + j];
                const auto& b = alt.R[std::size_t(zmod(i + 2, 4)) * 4 + zmod(j + 2, 4)];
                CHECK((a.coeffs + b.coeffs).norm() < 1e-10 * a.coeffs.norm());
            }
        std::vector<TensorVector> both = alt.R;
        both.insert(both.end(), alt.R_prime.begin(), alt.R_prime.end());
        CHECK(projector_distance(space_from_generators(p, both).ortho_basis,
                                 relation_space(p).ortho_basis) < 1e-7);
    }
}
