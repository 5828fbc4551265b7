#include <doctest.h>

#include "ellq/contour.hpp"
#include "ellq/verify.hpp"

using namespace ellq;

namespace {
const cplx I{0.0, 1.0};
}

TEST_CASE("basic theta has one zero per cell, summing to the origin") {
    const LatticeData lat(I, 1);
    auto f = [&](cplx z) { return theta_basic(z, lat).value; };
    const FundamentalParallelogram P(cplx(-0.5, -0.5), 1.0, I);
    const ZeroCountResult r = count_zeros(f, P);
    CHECK(r.count == 1);
    CHECK(r.winding_residual < 1e-6);
    CHECK(lattice_distance(r.zero_sum, 1.0, I) < 1e-5);
}

TEST_CASE("theta_alpha for n=3: three zeros summing to (n-1)/2") {
    const int n = 3;
    const LatticeData lat(I, n);
    for (int a = 0; a < n; ++a) {
        auto f = [&, a](cplx z) { return theta_alpha(a, z, lat).value; };
        auto df = [&, a](cplx z) {
            return theta_alpha_log_deriv(a, z, lat) * theta_alpha(a, z, lat).value;
        };
        const FundamentalParallelogram P(cplx(0.17, 0.11), 1.0, I);
        const ZeroCountResult r = count_zeros(f, P, 512, df);
        CHECK(r.count == n);
        CHECK(r.winding_residual < 1e-6);
        CHECK(lattice_distance(r.zero_sum - double(n - 1) / 2.0, 1.0, I) < 1e-5);
    }
}

TEST_CASE("finite-difference and analytic derivatives agree") {
    const int n = 3;
    const LatticeData lat(I, n);
    auto f = [&](cplx z) { return theta_alpha(1, z, lat).value; };
    auto df = [&](cplx z) {
        return theta_alpha_log_deriv(1, z, lat) * theta_alpha(1, z, lat).value;
    };
    const FundamentalParallelogram P(cplx(0.21, 0.13), 1.0, I);
    const ZeroCountResult fd = count_zeros(f, P, 512);
    const ZeroCountResult an = count_zeros(f, P, 512, df);
    CHECK(fd.count == an.count);
    CHECK(std::abs(fd.zero_sum - an.zero_sum) < 1e-7);
}

TEST_CASE("translation shifts the located zero") {
    const LatticeData lat(I, 1);
    const cplx w0(0.31, 0.27);
    auto f = [&](cplx z) { return theta_basic(z - w0, lat).value; };
    const FundamentalParallelogram P(cplx(-0.45, -0.48), 1.0, I);
    const ZeroCountResult r = count_zeros(f, P);
    CHECK(r.count == 1);
    CHECK(lattice_distance(r.zero_sum - w0, 1.0, I) < 1e-5);
}

TEST_CASE("a zero on the contour is rejected") {
    const LatticeData lat(I, 1);
    auto f = [&](cplx z) { return theta_basic(z, lat).value; };
    // the bottom edge passes through the zero at the origin
    const FundamentalParallelogram P(cplx(-0.5, 0.0), 1.0, I);
    CHECK_THROWS_AS((void)count_zeros(f, P), ZeroOnBoundary);
}

TEST_CASE("a non-meromorphic integrand fails the integrality check") {
    auto f = [](cplx z) { return std::exp(0.3 * std::norm(z)); };
    const FundamentalParallelogram P(cplx(-0.5, -0.5), 1.0, I);
    CHECK_THROWS_AS((void)count_zeros(f, P), NonInteger);
}

TEST_CASE("winding residuals stay tight for every order up to six") {
    Rng rng(314);
    for (int n = 2; n <= 6; ++n) {
        const LatticeData lat(I, n);
        auto f = [&](cplx z) { return theta_alpha(1, z, lat).value; };
        for (int tries = 0; tries < 40; ++tries) {
            const cplx base = random_point(rng, I) - 0.5 - 0.5 * I;
            try {
                const ZeroCountResult r =
                    count_zeros(f, FundamentalParallelogram(base, 1.0, I), 512, {}, 1e-6);
                CHECK(r.count == n);
                CHECK(r.winding_residual < 1e-6);
                break;
            } catch (const ZeroOnBoundary&) {
                continue;
            }
        }
    }
}
