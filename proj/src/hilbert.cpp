#include "ellq/hilbert.hpp"

#include <cmath>
#include <string>

#include "ellq/parallel.hpp"

namespace ellq {

namespace {

long ipow(int base, int exp) {
    long v = 1;
    for (int t = 0; t < exp; ++t)
        v *= base;
    return v;
}

template <bool Parallel>
CMatrix assemble_impl(const RelationSpace& rel, int d) {
    const int n = rel.params.n;
    const Eigen::Index R = rel.ortho_basis.cols();
    const long env = ipow(n, d - 2);     // choices of (w1, w2) for one split
    const long rows = long(d - 1) * R * env;
    const long cols = ipow(n, d);

    CMatrix A = CMatrix::Zero(rows, cols);
    // row index = ((a * R + g) * env) + w, where w joins w1 in n^a and w2 in
    // n^{d-2-a}; column of (w1, b1, b2, w2) is ((w1*n + b1)*n + b2)*n^{d-2-a} + w2.
    auto fill_row = [&](std::int64_t row) {
        const long w = row % env;
        const long gq = row / env;
        const Eigen::Index g = gq % R;
        const int a = int(gq / R);
        const long right = ipow(n, d - 2 - a);
        const long w1 = w / right;
        const long w2 = w % right;
        for (int b1 = 0; b1 < n; ++b1)
            for (int b2 = 0; b2 < n; ++b2) {
                const cplx coef = rel.ortho_basis(b1 * n + b2, g);
                if (coef == cplx(0.0))
                    continue;
                const long col = (((w1 * n + b1) * n + b2) * right) + w2;
                A(row, col) = coef;
            }
    };
    if constexpr (Parallel) {
        parallel_for(0, rows, fill_row);
    } else {
        for (std::int64_t r = 0; r < rows; ++r)
            fill_row(r);
    }
    return A;
}

} // namespace

long polynomial_dim(int n, int d) {
    // C(n+d-1, d)
    long num = 1, den = 1;
    for (int t = 1; t <= d; ++t) {
        num *= n - 1 + t;
        den *= t;
    }
    return num / den;
}

CMatrix assemble_shift_matrix(const RelationSpace& rel, int d) {
    return assemble_impl<true>(rel, d);
}

CMatrix assemble_shift_matrix_serial(const RelationSpace& rel, int d) {
    return assemble_impl<false>(rel, d);
}

GradedDims graded_dims(const RelationSpace& rel, int dmax, const HilbertOptions& opts) {
    const int n = rel.params.n;
    if (dmax > 5)
        throw ResourceExceeded("graded_dims: dmax is capped at 5");
    if (dmax >= 1 && ipow(n, dmax) > opts.max_columns)
        throw ResourceExceeded("graded_dims: n^dmax = " + std::to_string(ipow(n, dmax)) +
                               " exceeds the column cap " + std::to_string(opts.max_columns));

    GradedDims out{n, std::vector<long>(std::size_t(dmax) + 1, 0)};
    out.dims[0] = 1;
    if (dmax >= 1)
        out.dims[1] = n;
    for (int d = 2; d <= dmax; ++d) {
        const CMatrix A = assemble_shift_matrix(rel, d);
        RankResult rr = robust_rank(A, opts.rel_tol);
        if (rr.gap < kGapFloor)
            throw RankAmbiguous("graded_dims: rank gap " + std::to_string(rr.gap) +
                                " at degree " + std::to_string(d));
        out.dims[std::size_t(d)] = ipow(n, d) - rr.rank;
    }
    return out;
}

} // namespace ellq
