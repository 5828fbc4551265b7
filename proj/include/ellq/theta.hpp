#pragma once

#include <complex>
#include <utility>

#include "ellq/errors.hpp"

namespace ellq {

using cplx = std::complex<double>;

/// e(w) = exp(2*pi*i*w). Every exponential factor in the library goes
/// through here so the branch convention is fixed in one place.
cplx e2pi(cplx w);

// Modulus eta (Im eta > 0), order n, and the series truncation policy for
// the lattice Z + Z*eta.
struct LatticeData {
    cplx eta;
    int n;
    double trunc_eps;

    explicit LatticeData(cplx eta_, int n_, double trunc_eps_ = 1e-12);
};

// Value of a truncated theta series together with a rigorous bound on the
// dropped tail (first-order propagated for products).
struct ThetaValue {
    cplx value;
    double tail_bound;
};

// Hard cap on the summation index; beyond it theta_basic throws NonConvergent.
inline constexpr int kThetaSeriesCap = 200;

// theta(z) = sum_m (-1)^m e(m z + m(m-1) eta / 2). Order one, zeros exactly
// on the lattice.
ThetaValue theta_basic(cplx z, const LatticeData& lat);

// d/dz of theta_basic, same truncation policy.
ThetaValue theta_basic_dz(cplx z, const LatticeData& lat);

/// theta'(z)/theta(z); caller must keep z away from the lattice.
cplx theta_log_deriv(cplx z, const LatticeData& lat);

// Standard order-n basis function
//   theta_alpha(z) = e(alpha z + alpha/2n + alpha(alpha-n) eta/2n)
//                    * prod_{m=0}^{n-1} theta(z + m/n + alpha eta/n).
// alpha is taken as given (not reduced mod n); theta_{alpha+n} = theta_alpha
// holds as an identity of the values.
ThetaValue theta_alpha(long alpha, cplx z, const LatticeData& lat);

/// theta_alpha'(z)/theta_alpha(z).
cplx theta_alpha_log_deriv(long alpha, cplx z, const LatticeData& lat);

// Basis of Theta_{n,c}: theta_{alpha,c}(z) = theta_alpha(z - c/n + (n-1)/2n).
ThetaValue theta_alpha_c(long alpha, cplx c, cplx z, const LatticeData& lat);

// Alternate basis for odd n: psi_alpha = e(-alpha(n+1)/2n) theta_alpha.
// Throws EvenOrder when n is even.
ThetaValue psi_alpha(long alpha, cplx z, const LatticeData& lat);

// Real coordinates (a, b) with z = a*w1 + b*w2.
std::pair<double, double> lattice_coords(cplx z, cplx w1, cplx w2);

// Representative of z modulo Z*w1 + Z*w2 with coordinates in [-1/2, 1/2).
cplx lattice_reduce(cplx z, cplx w1, cplx w2);

/// Distance from z to the nearest point of Z*w1 + Z*w2.
double lattice_distance(cplx z, cplx w1, cplx w2);

} // namespace ellq
