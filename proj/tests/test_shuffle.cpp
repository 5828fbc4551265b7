#include <doctest.h>

#include "ellq/linalg.hpp"
#include "ellq/shuffle.hpp"
#include "ellq/verify.hpp"

using namespace ellq;

namespace {
const cplx I{0.0, 1.0};
const cplx kGenericTau{0.1731, 0.2292};

SymFunction random_deg1(int n, Rng& rng) {
    SymFunction f = SymFunction::zero(1, n);
    for (int a = 0; a < n; ++a)
        f.coeffs(a) = cplx(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
    return f;
}
} // namespace

TEST_CASE("degree (1,1) product: symmetry and the two evaluation routes") {
    const int n = 3;
    const AlgebraParams p(n, 1, kGenericTau, I);
    Rng rng(99);
    const SymFunction f = random_deg1(n, rng), g = random_deg1(n, rng);
    const cplx x(0.31, 0.41), y(-0.22, 0.175);
    const cplx v = star_degree11(f, g, p, x, y);
    CHECK(std::abs(v - star_degree11(f, g, p, y, x)) < 1e-12 * std::abs(v));
    CHECK(std::abs(v - star_general(f, g, p, {x, y})) < 1e-12 * std::abs(v));
}

TEST_CASE("tau = 0 degenerates to the classical shuffle") {
    const int n = 3;
    const AlgebraParams p(n, 1, 0.0, I);
    Rng rng(7);
    const SymFunction f = random_deg1(n, rng), g = random_deg1(n, rng);
    const cplx x(0.31, 0.41), y(-0.22, 0.175);
    const cplx v = star_degree11(f, g, p, x, y);
    const cplx classical = sym_eval(f, p, {x}) * sym_eval(g, p, {y}) +
                           sym_eval(f, p, {y}) * sym_eval(g, p, {x});
    CHECK(std::abs(v - classical) < 1e-12 * std::max(1.0, std::abs(classical)));
}

TEST_CASE("the relation images vanish under the star product") {
    const int n = 3;
    const LatticeData lat(I, n);
    const AlgebraParams p(n, 1, kGenericTau, I);
    const cplx x(0.31, 0.41), y(-0.22, 0.175);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j)
                continue;
            cplx sum = 0.0;
            double scale = 0.0;
            for (int r = 0; r < n; ++r) {
                const cplx den = theta_alpha(zmod(long(j) - i - r, n), -p.tau, lat).value *
                                 theta_alpha(r, p.tau, lat).value;
                const cplx term =
                    star_degree11(SymFunction::theta_unit(n, zmod(long(j) - r, n)),
                                  SymFunction::theta_unit(n, zmod(long(i) + r, n)), p, x, y) /
                    den;
                sum += term;
                scale = std::max(scale, std::abs(term));
            }
            CHECK(std::abs(sum) / scale < 1e-10);
        }
}

TEST_CASE("associativity at degrees (1,1,1)") {
    const int n = 3;
    const AlgebraParams p(n, 1, kGenericTau, I);
    Rng rng(2024);
    const SymFunction f = random_deg1(n, rng), g = random_deg1(n, rng), h = random_deg1(n, rng);
    const std::vector<cplx> pts = {cplx(0.31, 0.41), cplx(-0.22, 0.175), cplx(0.05, -0.33)};

    auto ev = [&p](const SymFunction& fn) {
        return [&p, fnp = &fn](const std::vector<cplx>& z) { return sym_eval(*fnp, p, z); };
    };
    auto fg = [&](const std::vector<cplx>& z) { return star_eval(ev(f), 1, ev(g), 1, p, z); };
    auto gh = [&](const std::vector<cplx>& z) { return star_eval(ev(g), 1, ev(h), 1, p, z); };
    const cplx lhs = star_eval(fg, 2, ev(h), 1, p, pts);
    const cplx rhs = star_eval(ev(f), 1, gh, 2, p, pts);
    CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(std::abs(lhs), std::abs(rhs)));
}

TEST_CASE("star output transforms like an order-n theta function of the right character") {
    const int n = 3;
    const AlgebraParams p(n, 1, kGenericTau, I);
    Rng rng(31);
    const SymFunction f = random_deg1(n, rng), g = random_deg1(n, rng);
    const cplx x(0.31, 0.41), y(-0.22, 0.175);
    const cplx base = star_degree11(f, g, p, x, y);
    CHECK(std::abs(star_degree11(f, g, p, x + 1.0, y) - base) < 1e-10 * std::abs(base));
    const cplx c2 = degree_character(2, p);
    const cplx factor = e2pi(-double(n) * x + c2 + double(n) / 2.0);
    const cplx up = star_degree11(f, g, p, x + I, y);
    CHECK(std::abs(up - factor * base) < 1e-10 * std::abs(up));
}

TEST_CASE("psi sends the antisymmetric pair functions onto the h functions") {
    const int n = 4;
    const AlgebraParams p(n, 1, kGenericTau, I);
    const cplx x(0.31, 0.41), y(-0.22, 0.175);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j)
                continue;
            const cplx a = psi_map(i, j, p, x, y);
            const cplx b = h_ij(i, j, p, x, y);
            CHECK(std::abs(a - b) < 1e-10 * std::max(std::abs(a), std::abs(b)));
        }
}

TEST_CASE("h vanishes on the shifted diagonal") {
    const int n = 5;
    const AlgebraParams p(n, 1, kGenericTau, I);
    const cplx x(0.31, 0.41);
    const cplx hv = h_ij(0, 2, p, x, cplx(-0.4, 0.3));
    CHECK(std::abs(h_ij(0, 2, p, x, x + (2.0 - n) * p.tau)) < 1e-9 * std::abs(hv));
}

TEST_CASE("h extends holomorphically across the torsion lattice") {
    const int n = 3;
    const cplx tau0 = I / 3.0;
    const cplx x(0.31, 0.41), y(-0.22, 0.175);
    auto mean = [&](int i, int j, double rho) {
        cplx acc = 0.0;
        for (int t = 0; t < 8; ++t) {
            const cplx tt = tau0 + rho * e2pi(double(t) / 8.0);
            acc += h_ij(i, j, AlgebraParams(n, 1, tt, I), x, y);
        }
        return acc / 8.0;
    };
    CHECK(std::abs(mean(0, 1, 1e-3) - mean(0, 1, 1e-4)) < 1e-6);
    // both denominators vanish simultaneously only when i = j, and then the
    // whole function is identically zero
    CHECK(std::abs(mean(1, 1, 1e-3)) < 1e-8);
}

TEST_CASE("pole guards") {
    const int n = 3;
    const AlgebraParams p(n, 1, kGenericTau, I);
    const SymFunction f = SymFunction::theta_unit(n, 0), g = SymFunction::theta_unit(n, 1);
    CHECK_THROWS_AS((void)star_degree11(f, g, p, cplx(0.3, 0.2), cplx(0.3, 0.2)),
                    PoleProximity);
    CHECK_THROWS_AS((void)star_general(f, g, p, {cplx(0.3, 0.2), cplx(0.3, 0.2)}),
                    PoleProximity);
}

TEST_CASE("total degree of a star product is capped") {
    const int n = 2;
    const AlgebraParams p(n, 1, kGenericTau, I);
    const SymFunction f3 = SymFunction::zero(3, n), g2 = SymFunction::zero(2, n);
    std::vector<cplx> pts(5, cplx(0.0));
    CHECK_THROWS_AS((void)star_general(f3, g2, p, pts), ResourceExceeded);
}

TEST_CASE("symmetric coefficient arrays have the multiset dimension") {
    const int n = 3, d = 3;
    // symmetrize every unit vector; the joint span has dimension C(n+d-1, d)
    CMatrix cols(27, 27);
    for (int t = 0; t < 27; ++t) {
        SymFunction f = SymFunction::zero(d, n);
        f.coeffs(t) = 1.0;
        f.symmetrize();
        CHECK(f.is_symmetric());
        cols.col(t) = f.coeffs;
    }
    CHECK(svd_basis(cols).rank == polynomial_dim(n, d)); // C(5,3) = 10
}
