#pragma once

#include <vector>

#include "ellq/algebra.hpp"

namespace ellq {

// Truncated Hilbert series of T(V)/(rel): dims[d] for d = 0..dmax.
struct GradedDims {
    int n = 0;
    std::vector<long> dims;
};

struct HilbertOptions {
    int max_columns = 2000; // cap on n^d
    double rel_tol = kRankTol;
};

/// Degree-d dimension of the polynomial ring: C(n+d-1, d).
long polynomial_dim(int n, int d);

// dims[d] = n^d - rank of the stacked shift matrix whose rows span
// sum_{a+b=d-2} V^a (x) rel (x) V^b. dmax <= 5; throws ResourceExceeded when
// n^dmax exceeds the column cap and RankAmbiguous when a rank is not clean.
GradedDims graded_dims(const RelationSpace& rel, int dmax, const HilbertOptions& opts = {});

// Shift-matrix assembly (rows = generator patterns placed at every position
// and environment). Exposed for the benchmark; the serial variant is the
// reference the OpenMP one is tested against.
CMatrix assemble_shift_matrix(const RelationSpace& rel, int d);
CMatrix assemble_shift_matrix_serial(const RelationSpace& rel, int d);

} // namespace ellq
