#pragma once

#include <functional>

#include "ellq/theta.hpp"

namespace ellq {

// Closed parallelogram base + [0,1]edge1 + [0,1]edge2, traversed
// counterclockwise (enforced by Im(edge2/edge1) > 0).
struct FundamentalParallelogram {
    cplx base;
    cplx edge1;
    cplx edge2;

    FundamentalParallelogram(cplx base_, cplx edge1_, cplx edge2_);
};

struct ZeroCountResult {
    long count;              // nearest integer to the winding integral
    cplx zero_sum;           // sum of enclosed zeros, reduced mod Z edge1 + Z edge2
    double winding_residual; // distance of the winding integral to `count`
    double min_boundary_abs; // smallest |f| seen on the contour
};

using ComplexFn = std::function<cplx(cplx)>;

// Argument-principle zero count and zero sum over the parallelogram boundary.
// Composite trapezoid with quad_points nodes per edge; matched node offsets on
// opposite edges so the quasi-periodic parts of f'/f cancel. f' comes from the
// analytic derivative when supplied, otherwise a 4-point central stencil.
//
// Throws ZeroOnBoundary when |f| dips below boundary_floor on the contour and
// NonInteger when the winding integral is farther than 0.01 from an integer.
ZeroCountResult count_zeros(const ComplexFn& f, const FundamentalParallelogram& P,
                            int quad_points = 512, const ComplexFn& df = {},
                            double boundary_floor = 1e-8, double fd_step = 1e-5);

} // namespace ellq
