#include "ellq/theta.hpp"

#include <cmath>
#include <vector>

namespace ellq {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

cplx e2pi(cplx w) {
    // exp(2 pi i w) = exp(-2 pi Im w) * (cos + i sin)(2 pi Re w)
    const double mag = std::exp(-kTwoPi * w.imag());
    const double ph = kTwoPi * w.real();
    return {mag * std::cos(ph), mag * std::sin(ph)};
}

LatticeData::LatticeData(cplx eta_, int n_, double trunc_eps_)
    : eta(eta_), n(n_), trunc_eps(trunc_eps_) {
    if (!(eta.imag() > 0.0))
        throw ConfigError("LatticeData: Im(eta) must be positive");
    if (n < 1)
        throw ConfigError("LatticeData: order n must be >= 1");
    if (!(trunc_eps > 0.0) || !(trunc_eps < 1e-6))
        throw ConfigError("LatticeData: trunc_eps must lie in (0, 1e-6)");
}

namespace {

// One term of the basic series, t_m = (-1)^m e(m z + m(m-1) eta / 2),
// optionally with the d/dz factor 2 pi i m.
inline cplx series_term(int m, cplx z, cplx eta, bool dz) {
    cplx t = e2pi(double(m) * z + 0.5 * double(m) * double(m - 1) * eta);
    if (m & 1)
        t = -t;
    if (dz)
        t *= cplx(0.0, kTwoPi * double(m));
    return t;
}

// Adaptive symmetric summation m in [-M, M]. Successive term ratios are
//   |t_{m+1}/t_m| = exp(-2pi (y + m v))   going up,
//   |t_{m-1}/t_m| = exp(+2pi (y + (m-1) v)) going down,
// with y = Im z, v = Im eta > 0, so both tails are geometrically dominated
// once the frontier ratios drop below one.
ThetaValue theta_series(cplx z, const LatticeData& lat, bool dz) {
    const double y = z.imag();
    const double v = lat.eta.imag();

    cplx sum = series_term(0, z, lat.eta, dz);
    cplx t_up = sum, t_dn = sum;
    double tail = 0.0;

    for (int M = 1; M <= kThetaSeriesCap; ++M) {
        t_up = series_term(M, z, lat.eta, dz);
        t_dn = series_term(-M, z, lat.eta, dz);
        sum += t_up + t_dn;

        const double r = std::exp(-kTwoPi * (y + double(M) * v));
        const double s = std::exp(kTwoPi * (y - double(M + 1) * v));
        if (r < 1.0 && s < 1.0) {
            double up = std::abs(t_up);
            double dn = std::abs(t_dn);
            if (dz) {
                // sum_{j>=1} (M+j) q^j = M q/(1-q) + q/(1-q)^2, and the extra
                // 2 pi factor is already inside |t| at the frontier; correct
                // for the growing index by (M+j)/M.
                up *= (r / (1.0 - r)) * (1.0 + 1.0 / (double(M) * (1.0 - r)));
                dn *= (s / (1.0 - s)) * (1.0 + 1.0 / (double(M) * (1.0 - s)));
            } else {
                up *= r / (1.0 - r);
                dn *= s / (1.0 - s);
            }
            tail = up + dn;
            if (tail < lat.trunc_eps)
                return {sum, tail};
        }
    }
    throw NonConvergent("theta series needs more than " + std::to_string(kThetaSeriesCap) +
                        " terms (Im eta too small for the requested tolerance)");
}

} // namespace

ThetaValue theta_basic(cplx z, const LatticeData& lat) {
    return theta_series(z, lat, false);
}

ThetaValue theta_basic_dz(cplx z, const LatticeData& lat) {
    return theta_series(z, lat, true);
}

cplx theta_log_deriv(cplx z, const LatticeData& lat) {
    return theta_basic_dz(z, lat).value / theta_basic(z, lat).value;
}

ThetaValue theta_alpha(long alpha, cplx z, const LatticeData& lat) {
    const int n = lat.n;
    const double a = double(alpha);
    const cplx pref =
        e2pi(a * z + a / (2.0 * n) + a * (a - n) / (2.0 * n) * lat.eta);

    std::vector<cplx> vals(n);
    std::vector<double> tails(n);
    for (int m = 0; m < n; ++m) {
        ThetaValue t = theta_basic(z + double(m) / n + a / n * lat.eta, lat);
        vals[m] = t.value;
        tails[m] = t.tail_bound;
    }

    // prefix/suffix |.| products give the first-order propagated tail bound
    // sum_i tail_i * prod_{j != i} |v_j| in O(n).
    std::vector<double> pre(n + 1, 1.0), suf(n + 1, 1.0);
    cplx prod = 1.0;
    for (int m = 0; m < n; ++m) {
        pre[m + 1] = pre[m] * std::abs(vals[m]);
        prod *= vals[m];
    }
    for (int m = n - 1; m >= 0; --m)
        suf[m] = suf[m + 1] * std::abs(vals[m]);
    double bound = 0.0;
    for (int m = 0; m < n; ++m)
        bound += tails[m] * pre[m] * suf[m + 1];

    return {pref * prod, std::abs(pref) * bound};
}

cplx theta_alpha_log_deriv(long alpha, cplx z, const LatticeData& lat) {
    const int n = lat.n;
    cplx acc(0.0, kTwoPi * double(alpha));
    for (int m = 0; m < n; ++m)
        acc += theta_log_deriv(z + double(m) / n + double(alpha) / n * lat.eta, lat);
    return acc;
}

ThetaValue theta_alpha_c(long alpha, cplx c, cplx z, const LatticeData& lat) {
    const int n = lat.n;
    return theta_alpha(alpha, z - c / double(n) + double(n - 1) / (2.0 * n), lat);
}

ThetaValue psi_alpha(long alpha, cplx z, const LatticeData& lat) {
    if (lat.n % 2 == 0)
        throw EvenOrder("psi basis is defined for odd order only");
    ThetaValue t = theta_alpha(alpha, z, lat);
    const cplx scale = e2pi(-double(alpha) * double(lat.n + 1) / (2.0 * lat.n));
    return {scale * t.value, std::abs(scale) * t.tail_bound};
}

std::pair<double, double> lattice_coords(cplx z, cplx w1, cplx w2) {
    const double det = w1.real() * w2.imag() - w1.imag() * w2.real();
    const double a = (z.real() * w2.imag() - z.imag() * w2.real()) / det;
    const double b = (z.imag() * w1.real() - z.real() * w1.imag()) / det;
    return {a, b};
}

cplx lattice_reduce(cplx z, cplx w1, cplx w2) {
    auto [a, b] = lattice_coords(z, w1, w2);
    a -= std::floor(a + 0.5);
    b -= std::floor(b + 0.5);
    return a * w1 + b * w2;
}

double lattice_distance(cplx z, cplx w1, cplx w2) {
    return std::abs(lattice_reduce(z, w1, w2));
}

} // namespace ellq
