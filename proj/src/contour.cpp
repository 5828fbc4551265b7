#include "ellq/contour.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ellq/parallel.hpp"

namespace ellq {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kWindingTol = 0.01;
} // namespace

FundamentalParallelogram::FundamentalParallelogram(cplx base_, cplx edge1_, cplx edge2_)
    : base(base_), edge1(edge1_), edge2(edge2_) {
    if (!((edge2 / edge1).imag() > 0.0))
        throw ConfigError("FundamentalParallelogram: Im(edge2/edge1) must be positive");
}

ZeroCountResult count_zeros(const ComplexFn& f, const FundamentalParallelogram& P,
                            int quad_points, const ComplexFn& df,
                            double boundary_floor, double fd_step) {
    const int N = std::max(quad_points, 8);

    // Nodes along the closed polygon, edge e covers [corner_e, corner_{e+1}].
    const cplx corners[5] = {P.base, P.base + P.edge1, P.base + P.edge1 + P.edge2,
                             P.base + P.edge2, P.base};
    std::vector<cplx> nodes(static_cast<std::size_t>(4) * N);
    for (int e = 0; e < 4; ++e)
        for (int t = 0; t < N; ++t)
            nodes[std::size_t(e) * N + t] =
                corners[e] + (corners[e + 1] - corners[e]) * (double(t) / N);

    const std::size_t total = nodes.size();
    std::vector<cplx> logd(total);
    std::vector<double> absf(total);

    parallel_for(0, std::int64_t(total), [&](std::int64_t idx) {
        const cplx z = nodes[std::size_t(idx)];
        const cplx fz = f(z);
        absf[std::size_t(idx)] = std::abs(fz);
        cplx d;
        if (df) {
            d = df(z);
        } else {
            const double h = fd_step;
            d = (-f(z + 2 * h) + 8.0 * f(z + h) - 8.0 * f(z - h) + f(z - 2 * h)) / (12.0 * h);
        }
        logd[std::size_t(idx)] = d / fz;
    });

    const double minabs = *std::min_element(absf.begin(), absf.end());
    if (minabs < boundary_floor)
        throw ZeroOnBoundary("contour passes within " + std::to_string(minabs) +
                             " of a zero of f");

    // Trapezoid over the closed polygon; g is continuous through the corners
    // so each node carries full weight.
    cplx I0 = 0.0, I1 = 0.0;
    for (int e = 0; e < 4; ++e) {
        const cplx dz = (corners[e + 1] - corners[e]) / double(N);
        cplx s0 = 0.0, s1 = 0.0;
        for (int t = 0; t < N; ++t) {
            const std::size_t a = std::size_t(e) * N + t;
            const std::size_t b = (std::size_t(e) * N + t + 1) % total;
            s0 += 0.5 * (logd[a] + logd[b]);
            s1 += 0.5 * (nodes[a] * logd[a] + nodes[b] * logd[b]);
        }
        I0 += s0 * dz;
        I1 += s1 * dz;
    }
    const cplx two_pi_i(0.0, kTwoPi);
    const cplx winding = I0 / two_pi_i;
    const long count = std::lround(winding.real());
    const double resid = std::abs(winding - cplx(double(count), 0.0));
    if (resid > kWindingTol)
        throw NonInteger("winding integral " + std::to_string(winding.real()) + "+" +
                         std::to_string(winding.imag()) + "i is not close to an integer");

    const cplx raw_sum = I1 / two_pi_i;
    return {count, lattice_reduce(raw_sum, P.edge1, P.edge2), resid, minabs};
}

} // namespace ellq
