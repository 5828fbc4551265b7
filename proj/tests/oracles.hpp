// Independent reference implementations used only by the tests: plain
// truncated series in extended precision, no adaptive logic shared with the
// library path they check.
#pragma once

#include <cmath>
#include <complex>

namespace oracle {

using cld = std::complex<long double>;

inline cld e2pi_ref(cld w) {
    const long double two_pi = 6.283185307179586476925286766559L;
    const long double mag = std::exp(-two_pi * w.imag());
    const long double ph = two_pi * w.real();
    return {mag * std::cos(ph), mag * std::sin(ph)};
}

// direct summation at fixed truncation N, extended precision
inline cld theta_ref(cld z, cld eta, int N = 200) {
    cld sum = 0.0L;
    for (int m = -N; m <= N; ++m) {
        cld t = e2pi_ref(cld(m, 0) * z + cld(0.5L * m * (m - 1), 0) * eta);
        sum += (m & 1) ? -t : t;
    }
    return sum;
}

inline cld theta_alpha_ref(long alpha, cld z, int n, cld eta, int N = 200) {
    const long double a = static_cast<long double>(alpha);
    cld v = e2pi_ref(a * z + cld(a / (2.0L * n), 0) + cld(a * (a - n) / (2.0L * n), 0) * eta);
    for (int m = 0; m < n; ++m)
        v *= theta_ref(z + cld(static_cast<long double>(m) / n, 0) +
                           cld(a / n, 0) * eta,
                       eta, N);
    return v;
}

} // namespace oracle
