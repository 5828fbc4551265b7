#include "ellq/shuffle.hpp"

#include <algorithm>
#include <cmath>

namespace ellq {

namespace {

long ipow(int base, int exp) {
    long v = 1;
    for (int t = 0; t < exp; ++t)
        v *= base;
    return v;
}

cplx theta_ratio_guarded(cplx num_arg, cplx den_arg, const LatticeData& lat) {
    const cplx den = theta_basic(den_arg, lat).value;
    if (std::abs(den) < kPoleFloor)
        throw PoleProximity("evaluation point within the pole floor of a theta divisor");
    return theta_basic(num_arg, lat).value / den;
}

} // namespace

SymFunction SymFunction::zero(int degree, int n) {
    SymFunction f{degree, n, {}};
    f.coeffs = CVector::Zero(ipow(n, degree));
    return f;
}

SymFunction SymFunction::theta_unit(int n, int alpha) {
    SymFunction f = zero(1, n);
    f.coeffs(zmod(alpha, n)) = 1.0;
    return f;
}

namespace {

// next multi-index in row-major order
bool advance(std::vector<int>& idx, int n) {
    for (int t = int(idx.size()) - 1; t >= 0; --t) {
        if (++idx[std::size_t(t)] < n)
            return true;
        idx[std::size_t(t)] = 0;
    }
    return false;
}

std::vector<int> permuted(const std::vector<int>& idx, const std::vector<int>& perm) {
    std::vector<int> out(idx.size());
    for (std::size_t t = 0; t < idx.size(); ++t)
        out[t] = idx[std::size_t(perm[t])];
    return out;
}

long flat_index(const std::vector<int>& idx, int n) {
    long f = 0;
    for (int v : idx)
        f = f * n + v;
    return f;
}

} // namespace

void SymFunction::symmetrize() {
    if (degree <= 1)
        return;
    std::vector<int> perm(static_cast<std::size_t>(degree));
    for (int t = 0; t < degree; ++t)
        perm[std::size_t(t)] = t;
    CVector out = CVector::Zero(coeffs.size());
    long count = 0;
    do {
        std::vector<int> idx(std::size_t(degree), 0);
        do {
            out(flat_index(permuted(idx, perm), n)) += coeffs(flat_index(idx, n));
        } while (advance(idx, n));
        ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    coeffs = out / double(count);
}

bool SymFunction::is_symmetric(double tol) const {
    if (degree <= 1)
        return true;
    SymFunction s = *this;
    s.symmetrize();
    return (s.coeffs - coeffs).norm() <= tol * std::max(1.0, coeffs.norm());
}

cplx degree_character(int degree, const AlgebraParams& p) {
    return double(p.n - 1) / 2.0 + (1.0 - degree) * double(p.n) * p.tau;
}

cplx sym_eval(const SymFunction& f, const AlgebraParams& p, const std::vector<cplx>& points) {
    if (int(points.size()) != f.degree)
        throw ConfigError("sym_eval: wrong number of points");
    const int n = f.n;
    const cplx c = degree_character(f.degree, p);

    // theta_{alpha,c}(z_t) for all alpha and slots
    std::vector<std::vector<cplx>> tab(std::size_t(f.degree), std::vector<cplx>(std::size_t(n)));
    for (int t = 0; t < f.degree; ++t)
        for (int a = 0; a < n; ++a)
            tab[std::size_t(t)][std::size_t(a)] = theta_alpha_c(a, c, points[std::size_t(t)], p.lat).value;

    cplx total = 0.0;
    std::vector<int> idx(std::size_t(f.degree), 0);
    long flat = 0;
    do {
        const cplx co = f.coeffs(flat);
        if (co != cplx(0.0)) {
            cplx prod = co;
            for (int t = 0; t < f.degree; ++t)
                prod *= tab[std::size_t(t)][std::size_t(idx[std::size_t(t)])];
            total += prod;
        }
        ++flat;
    } while (advance(idx, n));
    return total;
}

cplx star_degree11(const SymFunction& f, const SymFunction& g, const AlgebraParams& p,
                   cplx x, cplx y) {
    if (f.degree != 1 || g.degree != 1)
        throw ConfigError("star_degree11: both factors must have degree 1");
    const cplx ntau = double(p.n) * p.tau;
    const cplx w1 = theta_ratio_guarded(x - y + ntau, x - y, p.lat);
    const cplx w2 = theta_ratio_guarded(y - x + ntau, y - x, p.lat);
    return sym_eval(f, p, {x}) * sym_eval(g, p, {y + 2.0 * p.tau}) * w1 +
           sym_eval(f, p, {y}) * sym_eval(g, p, {x + 2.0 * p.tau}) * w2;
}

cplx star_eval(const SymEval& f, int deg_f, const SymEval& g, int deg_g,
               const AlgebraParams& p, const std::vector<cplx>& points) {
    const int a = deg_f, b = deg_g;
    if (a + b > 4)
        throw ResourceExceeded("star product: total degree is capped at 4");
    if (int(points.size()) != a + b)
        throw ConfigError("star product: need a+b evaluation points");
    const cplx ntau = double(p.n) * p.tau;
    const cplx shift = 2.0 * double(a) * p.tau;

    // enumerate the (a|b) shuffles as a-subsets of {0..a+b-1}
    std::vector<int> sel(static_cast<std::size_t>(a));
    for (int t = 0; t < a; ++t)
        sel[std::size_t(t)] = t;
    cplx total = 0.0;
    while (true) {
        std::vector<char> in_f(std::size_t(a + b), 0);
        for (int s : sel)
            in_f[std::size_t(s)] = 1;
        cplx w = 1.0;
        std::vector<cplx> fpts, gpts;
        fpts.reserve(std::size_t(a));
        gpts.reserve(std::size_t(b));
        for (int t = 0; t < a + b; ++t)
            (in_f[std::size_t(t)] ? fpts : gpts).push_back(points[std::size_t(t)]);
        for (cplx zi : fpts)
            for (cplx zj : gpts)
                w *= theta_ratio_guarded(zi - zj + ntau, zi - zj, p.lat);
        for (cplx& z : gpts)
            z += shift;
        total += w * f(fpts) * g(gpts);

        // next combination
        int t = a - 1;
        while (t >= 0 && sel[std::size_t(t)] == t + b)
            --t;
        if (t < 0)
            break;
        ++sel[std::size_t(t)];
        for (int u = t + 1; u < a; ++u)
            sel[std::size_t(u)] = sel[std::size_t(u - 1)] + 1;
    }
    return total;
}

cplx star_general(const SymFunction& f, const SymFunction& g, const AlgebraParams& p,
                  const std::vector<cplx>& points) {
    auto fe = [&](const std::vector<cplx>& pts) { return sym_eval(f, p, pts); };
    auto ge = [&](const std::vector<cplx>& pts) { return sym_eval(g, p, pts); };
    return star_eval(fe, f.degree, ge, g.degree, p, points);
}

cplx f_ij(int i, int j, const AlgebraParams& p, cplx x, cplx y) {
    const LatticeData& lat = p.lat;
    return theta_alpha(i, x, lat).value * theta_alpha(j, y, lat).value -
           theta_alpha(i, y, lat).value * theta_alpha(j, x, lat).value;
}

cplx h_ij(int i, int j, const AlgebraParams& p, cplx x, cplx y) {
    const int n = p.n;
    const LatticeData& lat = p.lat;
    cplx d = theta_basic(-double(n) * p.tau, lat).value *
             theta_alpha(zmod(long(j) - i, n), 0.0, lat).value / double(n);
    for (int m = 1; m < n; ++m)
        d *= theta_basic(double(m) / n, lat).value;

    cplx sum = 0.0;
    for (int r = 0; r < n; ++r) {
        const cplx den = theta_alpha(zmod(long(j) - i - r, n), -p.tau, lat).value *
                         theta_alpha(r, p.tau, lat).value;
        if (std::abs(den) < kPoleFloor * kPoleFloor)
            throw PoleProximity("h_ij: tau within the pole floor of the torsion lattice");
        sum += theta_alpha(zmod(long(j) - r, n), x, lat).value *
               theta_alpha(zmod(long(i) + r, n), y, lat).value / den;
    }
    return d * sum;
}

cplx psi_map(int i, int j, const AlgebraParams& p, cplx x, cplx y) {
    const cplx ratio =
        theta_ratio_guarded(x - y + (2.0 - p.n) * p.tau, x - y + 2.0 * p.tau, p.lat);
    return ratio * f_ij(i, j, p, x + p.tau, y - p.tau);
}

} // namespace ellq
