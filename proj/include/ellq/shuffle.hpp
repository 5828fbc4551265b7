#pragma once

#include <functional>
#include <vector>

#include "ellq/algebra.hpp"

namespace ellq {

inline constexpr double kPoleFloor = 1e-8;

// Element of Sym^d Theta_{n, c_d} with c_d = (n-1)/2 + (1-d) n tau,
// represented by coefficients over theta_{alpha_1, c_d} (x) ... (x)
// theta_{alpha_d, c_d}, multi-indices row-major over Z_n^d.
struct SymFunction {
    int degree;
    int n;
    CVector coeffs;

    static SymFunction zero(int degree, int n);
    /// Degree-1 basis element theta_alpha.
    static SymFunction theta_unit(int n, int alpha);

    void symmetrize();
    bool is_symmetric(double tol = 1e-12) const;
};

/// Character of degree d: c_d = (n-1)/2 + (1-d) n tau.
cplx degree_character(int degree, const AlgebraParams& p);

// Pointwise value of f at (z_1, ..., z_d).
cplx sym_eval(const SymFunction& f, const AlgebraParams& p, const std::vector<cplx>& points);

// Degree (1,1) product:
// (f*g)(x,y) = f(x) g(y+2tau) theta(x-y+n tau)/theta(x-y)
//            + f(y) g(x+2tau) theta(y-x+n tau)/theta(y-x).
// Throws PoleProximity when |theta(x-y)| < kPoleFloor.
cplx star_degree11(const SymFunction& f, const SymFunction& g, const AlgebraParams& p,
                   cplx x, cplx y);

// Pointwise form of a graded piece, for composing products whose factors are
// themselves star products.
using SymEval = std::function<cplx(const std::vector<cplx>&)>;

// Shuffle product with callable factors: sum over the (a|b) shuffles of
// c_{a,b,sigma}(z) f(z_f) g(z_g + 2 a tau). Total degree capped at 4.
cplx star_eval(const SymEval& f, int deg_f, const SymEval& g, int deg_g,
               const AlgebraParams& p, const std::vector<cplx>& points);

// General product over the (a|b) shuffles, a+b <= 4.
cplx star_general(const SymFunction& f, const SymFunction& g, const AlgebraParams& p,
                  const std::vector<cplx>& points);

/// f_ij(x,y) = theta_i(x) theta_j(y) - theta_i(y) theta_j(x).
cplx f_ij(int i, int j, const AlgebraParams& p, cplx x, cplx y);

// h_ij(x,y) = d * sum_r theta_{j-r}(x) theta_{i+r}(y) /
//             (theta_{j-i-r}(-tau) theta_r(tau)),
// d = (1/n) theta(1/n)...theta((n-1)/n) theta(-n tau) theta_{j-i}(0).
cplx h_ij(int i, int j, const AlgebraParams& p, cplx x, cplx y);

// psi applied to f_ij:
// psi(f)(x,y) = theta(x-y+(2-n)tau)/theta(x-y+2tau) f(x+tau, y-tau).
cplx psi_map(int i, int j, const AlgebraParams& p, cplx x, cplx y);

} // namespace ellq
