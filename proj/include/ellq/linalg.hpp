#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "ellq/errors.hpp"

namespace ellq {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Global rank tolerance: singular values (or pivot norms) below
// rel_tol * largest are treated as zero.
inline constexpr double kRankTol = 1e-8;

// Pivot/singular-value gap below which a rank decision is not trusted.
inline constexpr double kGapFloor = 100.0;

struct OrthoResult {
    CMatrix basis; // orthonormal columns spanning col(A)
    int rank = 0;
    double gap = 0.0; // last kept pivot norm / first dropped (inf if none dropped)
    std::vector<double> pivot_norms;
};

// Column-pivoted modified Gram-Schmidt orthonormalization. The projection
// update of the trailing columns is the OpenMP kernel; results are bitwise
// identical to the serial reference for any thread count because each column
// is updated independently and reductions happen per column.
OrthoResult orthonormal_columns(const CMatrix& A, double rel_tol = kRankTol);

// Serial reference implementation, kept for testing and benchmarking.
OrthoResult orthonormal_columns_serial(const CMatrix& A, double rel_tol = kRankTol);

struct SvdBasis {
    CMatrix basis;
    int rank = 0;
    double gap = 0.0;
    std::vector<double> singular_values;
};

// Thin SVD basis of the column space (Jacobi for small, divide-and-conquer
// for large matrices).
SvdBasis svd_basis(const CMatrix& A, double rel_tol = kRankTol);

struct RankResult {
    int rank = 0;
    double gap = 0.0;
    bool used_svd = false;
};

// Rank via pivoted Gram-Schmidt with an SVD fallback when the pivot gap is
// below kGapFloor.
RankResult robust_rank(const CMatrix& A, double rel_tol = kRankTol);

/// Frobenius distance of the orthogonal projectors onto col(B1) and col(B2);
/// both inputs must have orthonormal columns.
double projector_distance(const CMatrix& B1, const CMatrix& B2);

/// ||v - P v|| / ||v|| for the projector P onto col(B); B orthonormal.
double subspace_residual(const CVector& v, const CMatrix& B);

CMatrix kronecker_power(const CMatrix& M, int d);

} // namespace ellq
