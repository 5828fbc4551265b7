#include "ellq/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ellq/parallel.hpp"

namespace ellq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <bool Parallel>
OrthoResult pivoted_mgs(const CMatrix& A, double rel_tol) {
    const Eigen::Index m = A.rows();
    const Eigen::Index c = A.cols();
    CMatrix W = A;
    std::vector<double> norms2(static_cast<std::size_t>(c));
    for (Eigen::Index j = 0; j < c; ++j)
        norms2[std::size_t(j)] = W.col(j).squaredNorm();

    std::vector<char> used(std::size_t(c), 0);
    OrthoResult out;
    out.basis.resize(m, std::min(m, c));

    const double max0 = c > 0 ? *std::max_element(norms2.begin(), norms2.end()) : 0.0;
    const double cut2 = rel_tol * rel_tol * max0;

    double first_dropped = 0.0;
    while (out.rank < std::min(m, c)) {
        Eigen::Index p = -1;
        double best = 0.0;
        for (Eigen::Index j = 0; j < c; ++j)
            if (!used[std::size_t(j)] && norms2[std::size_t(j)] > best) {
                best = norms2[std::size_t(j)];
                p = j;
            }
        if (p < 0 || best <= cut2 || best <= 0.0) {
            first_dropped = std::sqrt(std::max(best, 0.0));
            break;
        }
        const double pn = std::sqrt(best);
        out.pivot_norms.push_back(pn);
        used[std::size_t(p)] = 1;
        const CVector q = W.col(p) / pn;
        out.basis.col(out.rank) = q;
        ++out.rank;

        auto update = [&](std::int64_t j) {
            if (used[std::size_t(j)])
                return;
            const cplx ip = q.dot(W.col(j)); // conjugated in the first argument
            W.col(j) -= ip * q;
            norms2[std::size_t(j)] = W.col(j).squaredNorm();
        };
        if constexpr (Parallel) {
            parallel_for(0, std::int64_t(c), update);
        } else {
            for (std::int64_t j = 0; j < c; ++j)
                update(j);
        }
    }
    out.basis.conservativeResize(m, out.rank);
    out.gap = (first_dropped > 0.0 && out.rank > 0)
                  ? out.pivot_norms.back() / first_dropped
                  : kInf;
    return out;
}

} // namespace

OrthoResult orthonormal_columns(const CMatrix& A, double rel_tol) {
    return pivoted_mgs<true>(A, rel_tol);
}

OrthoResult orthonormal_columns_serial(const CMatrix& A, double rel_tol) {
    return pivoted_mgs<false>(A, rel_tol);
}

SvdBasis svd_basis(const CMatrix& A, double rel_tol) {
    SvdBasis out;
    if (A.cols() == 0 || A.rows() == 0) {
        out.basis.resize(A.rows(), 0);
        out.gap = kInf;
        return out;
    }

    Eigen::VectorXd sv;
    CMatrix U;
    if (std::min(A.rows(), A.cols()) <= 96) {
        Eigen::JacobiSVD<CMatrix> svd(A, Eigen::ComputeThinU);
        sv = svd.singularValues();
        U = svd.matrixU();
    } else {
        Eigen::BDCSVD<CMatrix> svd(A, Eigen::ComputeThinU);
        sv = svd.singularValues();
        U = svd.matrixU();
    }

    out.singular_values.assign(sv.data(), sv.data() + sv.size());
    const double cut = rel_tol * (sv.size() ? sv(0) : 0.0);
    int r = 0;
    while (r < sv.size() && sv(r) > cut)
        ++r;
    out.rank = r;
    out.gap = (r < sv.size() && sv(r) > 0.0 && r > 0) ? sv(r - 1) / sv(r) : kInf;
    out.basis = U.leftCols(r);
    return out;
}

RankResult robust_rank(const CMatrix& A, double rel_tol) {
    OrthoResult mgs = orthonormal_columns(A, rel_tol);
    if (mgs.gap >= kGapFloor)
        return {mgs.rank, mgs.gap, false};
    SvdBasis svd = svd_basis(A, rel_tol);
    return {svd.rank, svd.gap, true};
}

double projector_distance(const CMatrix& B1, const CMatrix& B2) {
    // ||P1 - P2||_F^2 = ||(I - P2) B1||_F^2 + ||(I - P1) B2||_F^2, evaluated
    // through the residual matrices so that near-equal subspaces do not lose
    // accuracy to cancellation
    const CMatrix r1 = B1 - B2 * (B2.adjoint() * B1);
    const CMatrix r2 = B2 - B1 * (B1.adjoint() * B2);
    return std::sqrt(r1.squaredNorm() + r2.squaredNorm());
}

double subspace_residual(const CVector& v, const CMatrix& B) {
    const double nv = v.norm();
    if (nv == 0.0)
        return 0.0;
    const CVector proj = B * (B.adjoint() * v);
    return (v - proj).norm() / nv;
}

CMatrix kronecker_power(const CMatrix& M, int d) {
    if (d < 1)
        throw ConfigError("kronecker_power: degree must be >= 1");
    CMatrix out = M;
    for (int t = 1; t < d; ++t) {
        CMatrix next(out.rows() * M.rows(), out.cols() * M.cols());
        for (Eigen::Index i = 0; i < out.rows(); ++i)
            for (Eigen::Index j = 0; j < out.cols(); ++j)
                next.block(i * M.rows(), j * M.cols(), M.rows(), M.cols()) = out(i, j) * M;
        out = std::move(next);
    }
    return out;
}

} // namespace ellq
