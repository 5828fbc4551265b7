#include "ellq/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <set>

#include "ellq/contour.hpp"
#include "ellq/hilbert.hpp"
#include "ellq/parallel.hpp"
#include "ellq/shuffle.hpp"

namespace ellq {

void RunConfig::validate() const {
    if (!(eta.imag() > 0.0))
        throw ConfigError("RunConfig: Im(eta) must be positive");
    for (auto [n, k] : pairs) {
        if (n < 2 || k < 1 || k >= n || std::gcd(n, k) != 1)
            throw ConfigError("RunConfig: pair (" + std::to_string(n) + "," + std::to_string(k) +
                              ") is not an admissible coprime pair");
    }
}

Rng::Rng(std::uint64_t seed) : state(seed) {}

std::uint64_t Rng::next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double Rng::uniform() {
    return double(next() >> 11) * 0x1.0p-53;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t check_seed(std::uint64_t base, const std::string& id) {
    Rng r(base ^ fnv1a(id));
    return r.next();
}

cplx random_point(Rng& rng, cplx eta) {
    return rng.uniform() + rng.uniform() * eta;
}

cplx random_tau_generic(Rng& rng, cplx eta, int n) {
    for (int tries = 0; tries < 10000; ++tries) {
        const cplx t = random_point(rng, eta);
        if (lattice_distance(t, cplx(1.0, 0.0) / (2.0 * n), eta / (2.0 * n)) > 1e-3)
            return t;
    }
    throw ConfigError("random_tau_generic: rejection sampling failed");
}

namespace {

constexpr double kSubspaceTol = 1e-7; // canonical subspace-equality threshold

struct Ctx {
    const RunConfig& cfg;
    std::string id;
    std::uint64_t seed;

    double tol(double base) const { return base * cfg.tol_scale; }
    LatticeData lat(int n) const { return LatticeData(cfg.eta, n, cfg.trunc_eps); }
    AlgebraParams params(int n, int k, cplx tau) const {
        return AlgebraParams(n, k, tau, lat(n));
    }
    std::vector<int> distinct_ns() const {
        std::set<int> s;
        for (auto [n, k] : cfg.pairs)
            s.insert(n);
        return {s.begin(), s.end()};
    }
};

void maxm(std::map<std::string, double>& m, const std::string& key, double v) {
    auto it = m.find(key);
    if (it == m.end() || v > it->second)
        m[key] = v;
}

CheckResult make_result(const Ctx& c, bool ok, std::map<std::string, double> metrics,
                        json params = json::object()) {
    params["seed"] = c.seed;
    return CheckResult{c.id, std::move(params), ok ? "pass" : "fail", std::move(metrics), 0};
}

CheckResult ambiguous_result(const Ctx& c, const std::string& why) {
    return CheckResult{c.id, json{{"seed", c.seed}, {"note", why}}, "ambiguous",
                       {{"samples", 0.0}}, 0};
}

// ---------------------------------------------------------------- theta ----

CheckResult chk_theta_quasiperiod(const Ctx& c) {
    std::map<std::string, double> m;
    for (int n : c.distinct_ns()) {
        const LatticeData lat = c.lat(n);
        Rng rng(c.seed + std::uint64_t(n));
        for (int s = 0; s < 100; ++s) {
            const cplx z = random_point(rng, lat.eta);
            for (int a = 0; a < n; ++a) {
                const cplx t0 = theta_alpha(a, z, lat).value;
                maxm(m, "max_qp_resid",
                     std::abs(theta_alpha(a, z + 1.0, lat).value - t0) /
                         std::max(1.0, std::abs(t0)));
                // the eta shift scales values by |e(-nz)|, so the residual is
                // measured against the magnitudes actually subtracted
                const cplx up = theta_alpha(a, z + lat.eta, lat).value;
                maxm(m, "max_qp_resid",
                     std::abs(up + e2pi(-double(n) * z) * t0) /
                         std::max({1.0, std::abs(t0), std::abs(up)}));
            }
        }

        // transition matrix of translation by beta/n on the theta basis:
        // theta_a(z0 + beta/n) = e(a beta / n) theta_a(z0)
        cplx z0;
        for (int tries = 0;; ++tries) {
            z0 = random_point(rng, lat.eta);
            double lo = 1e300;
            for (int a = 0; a < n; ++a)
                lo = std::min(lo, std::abs(theta_alpha(a, z0, lat).value));
            if (lo > 1e-6 || tries > 100)
                break;
        }
        for (int a = 0; a < n; ++a) {
            const cplx base = theta_alpha(a, z0, lat).value;
            for (int b = 0; b < n; ++b) {
                const cplx ratio = theta_alpha(a, z0 + double(b) / n, lat).value / base;
                maxm(m, "eigen_resid", std::abs(ratio - e2pi(double(a) * b / n)));
            }
        }
    }
    const bool ok = m["max_qp_resid"] < c.tol(1e-9) && m["eigen_resid"] < c.tol(1e-9);
    return make_result(c, ok, std::move(m));
}

CheckResult chk_theta_zeros(const Ctx& c) {
    std::map<std::string, double> m;
    bool ok = true;
    for (int n : c.distinct_ns()) {
        const LatticeData lat = c.lat(n);
        Rng rng(c.seed + std::uint64_t(n) * 7919);
        for (int a = 0; a < n; ++a) {
            auto f = [&lat, a](cplx z) { return theta_alpha(a, z, lat).value; };
            auto df = [&lat, a](cplx z) {
                return theta_alpha_log_deriv(a, z, lat) * theta_alpha(a, z, lat).value;
            };
            for (int tries = 0; tries < 60; ++tries) {
                const cplx base = random_point(rng, lat.eta) - 0.5 - 0.5 * lat.eta;
                try {
                    FundamentalParallelogram P(base, 1.0, lat.eta);
                    ZeroCountResult zc = count_zeros(f, P, 512, df, 1e-6);
                    maxm(m, "max_winding_resid", zc.winding_residual);
                    maxm(m, "max_sum_dist",
                         lattice_distance(zc.zero_sum - double(n - 1) / 2.0, 1.0, lat.eta));
                    if (zc.count != n)
                        ok = false;
                    break;
                } catch (const ZeroOnBoundary&) {
                    if (tries == 59)
                        ok = false; // no admissible parallelogram found
                }
            }
        }
    }
    ok = ok && m["max_winding_resid"] < c.tol(1e-6) && m["max_sum_dist"] < c.tol(1e-5);
    return make_result(c, ok, std::move(m));
}

CheckResult chk_heisenberg(const Ctx& c) {
    if (c.cfg.tau_samples <= 0)
        return ambiguous_result(c, "tau_samples = 0");
    std::map<std::string, double> m;

    for (int n : c.distinct_ns()) {
        const LatticeData lat = c.lat(n);
        Rng rng(c.seed + std::uint64_t(n) * 104729);
        for (int s = 0; s < 20; ++s) {
            const cplx z = random_point(rng, lat.eta);
            for (int a = 0; a < n; ++a) {
                const cplx t0 = theta_alpha(a, z, lat).value;
                const cplx t1 = theta_alpha(a + 1, z, lat).value;
                const cplx Sf = theta_alpha(a, z + 1.0 / n, lat).value;
                const cplx Tf = e2pi(z + 1.0 / (2.0 * n) - double(n - 1) / (2.0 * n) * lat.eta) *
                                theta_alpha(a, z + lat.eta / double(n), lat).value;
                maxm(m, "func_resid", std::abs(Sf - e2pi(double(a) / n) * t0) /
                                          std::max(1.0, std::abs(t0)));
                maxm(m, "func_resid", std::abs(Tf - t1) / std::max(1.0, std::abs(t1)));
            }
        }

        const CMatrix S = heisenberg_degree1({1, 0, 0}, n);
        const CMatrix T = heisenberg_degree1({0, 1, 0}, n);
        maxm(m, "st_comm_resid", (S * T - e2pi(1.0 / n) * T * S).norm());
    }

    // relation-level equivariance
    for (auto [n, k] : c.cfg.pairs) {
        Rng rng(c.seed + fnv1a(std::to_string(n) + "," + std::to_string(k)));
        const CMatrix S2 = heisenberg_matrix({1, 0, 0}, 2, n);
        const CMatrix T2 = heisenberg_matrix({0, 1, 0}, 2, n);
        for (int s = 0; s < 3; ++s) {
            const cplx tau = random_tau_generic(rng, c.cfg.eta, n);
            const AlgebraParams p = c.params(n, k, tau);
            const RelationSpace rel = relation_space(p);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const TensorVector rij = relation_r_ij(p, i, j);
                    const double scale = rij.coeffs.norm();
                    if (scale < 1e-14)
                        continue;
                    const CVector su = S2 * rij.coeffs;
                    maxm(m, "eigen_rel_resid",
                         (su - e2pi(double(i + j) / n) * rij.coeffs).norm() / scale);
                    const TensorVector rshift = relation_r_ij(p, zmod(i + 1, n), zmod(j + 1, n));
                    maxm(m, "shift_rel_resid", (T2 * rij.coeffs - rshift.coeffs).norm() / scale);
                }
            maxm(m, "stab_S", projector_distance(S2 * rel.ortho_basis, rel.ortho_basis));
            maxm(m, "stab_T", projector_distance(T2 * rel.ortho_basis, rel.ortho_basis));
        }
    }
    const bool ok = m["func_resid"] < c.tol(1e-9) && m["st_comm_resid"] < c.tol(1e-12) &&
                    m["eigen_rel_resid"] < c.tol(1e-9) && m["shift_rel_resid"] < c.tol(1e-9) &&
                    m["stab_S"] < c.tol(1e-9) && m["stab_T"] < c.tol(1e-9);
    return make_result(c, ok, std::move(m));
}

// ------------------------------------------------------------- relation ----

CheckResult chk_rel_dim(const Ctx& c) {
    if (c.cfg.tau_samples <= 0)
        return ambiguous_result(c, "tau_samples = 0");
    std::map<std::string, double> m;
    m["min_gap"] = std::numeric_limits<double>::infinity();
    long bad = 0;
    for (auto [n, k] : c.cfg.pairs) {
        Rng rng(c.seed + fnv1a("rel-dim" + std::to_string(n) + "," + std::to_string(k)));
        for (int s = 0; s < c.cfg.tau_samples; ++s) {
            const cplx tau = random_tau_generic(rng, c.cfg.eta, n);
            const RelationSpace rel = relation_space(c.params(n, k, tau));
            if (rel.rank != n * (n - 1) / 2)
                ++bad;
            m["min_gap"] = std::min(m["min_gap"], rel.svd_gap);
        }
    }
    m["rank_mismatches"] = double(bad);
    const bool ok = bad == 0 && m["min_gap"] > 1e4;
    return make_result(c, ok, std::move(m),
                       json{{"tau_samples", c.cfg.tau_samples}});
}

CheckResult chk_rel_torsion_limit(const Ctx& c) {
    std::map<std::string, double> m;
    long rank_bad = 0;
    for (auto [n, k] : c.cfg.pairs) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                const cplx tau0 = (double(a) + double(b) * c.cfg.eta) / double(n);
                const AlgebraParams p = c.params(n, k, tau0);
                const CMatrix D3 = operator_R_diag(p, 1e-3);
                const CMatrix D4 = operator_R_diag(p, 1e-4);
                // entries grow like the quasi-periodicity factor deep in the
                // parallelogram, so agreement is measured relative to scale
                const double scale = std::max(1.0, D3.cwiseAbs().maxCoeff());
                maxm(m, "max_entry_diff", (D3 - D4).cwiseAbs().maxCoeff() / scale);
                const RelationSpace rel = relation_space(p);
                if (rel.rank != n * (n - 1) / 2)
                    ++rank_bad;
            }
    }
    m["rank_mismatches"] = double(rank_bad);
    const bool ok = m["max_entry_diff"] < c.tol(1e-8) && rank_bad == 0;
    return make_result(c, ok, std::move(m));
}

CheckResult chk_twist_thm(const Ctx& c) {
    if (c.cfg.tau_samples <= 0)
        return ambiguous_result(c, "tau_samples = 0");
    std::map<std::string, double> m;
    for (auto [n, k] : c.cfg.pairs) {
        if (n > 5)
            continue;
        const int kp = AlgebraParams(n, k, 0.0, c.cfg.eta).k_prime;
        Rng rng(c.seed + fnv1a("twist" + std::to_string(n) + "," + std::to_string(k)));
        const int bases = std::min(2, c.cfg.tau_samples);
        for (int s = 0; s < bases; ++s) {
            const cplx tau = random_tau_generic(rng, c.cfg.eta, n);
            const RelationSpace rel0 = relation_space(c.params(n, k, tau));
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    // phi = T^{-(k'+1)b} S^{-(k+1)a}: x_i -> e(-(k+1)a i/n) x_{i-(k'+1)b}
                    CMatrix phi = CMatrix::Zero(n, n);
                    for (int i = 0; i < n; ++i)
                        phi(zmod(i - long(kp + 1) * b, n), i) =
                            e2pi(-double((k + 1)) * a * i / n);
                    const RelationSpace twisted = twist_quadratic(rel0, phi);
                    const cplx shifted = tau + (double(a) + double(b) * c.cfg.eta) / double(n);
                    const RelationSpace target = relation_space(c.params(n, k, shifted));
                    maxm(m, "max_dist",
                         projector_distance(twisted.ortho_basis, target.ortho_basis));
                }
        }
    }
    return make_result(c, m["max_dist"] < c.tol(kSubspaceTol), std::move(m));
}

CheckResult chk_k_kprime(const Ctx& c) {
    if (c.cfg.tau_samples <= 0)
        return ambiguous_result(c, "tau_samples = 0");
    std::map<std::string, double> m;
    long k_ok = 0, kp_ok = 0, total = 0;
    for (auto [n, k] : c.cfg.pairs) {
        Rng rng(c.seed + fnv1a("kk'" + std::to_string(n) + "," + std::to_string(k)));
        const int samples = std::min(10, c.cfg.tau_samples);
        for (int s = 0; s < samples; ++s) {
            const cplx tau = random_tau_generic(rng, c.cfg.eta, n);
            const RelationSpace rel = relation_space(c.params(n, k, tau));
            const KkPrimeResult r = map_k_kprime(rel);
            ++total;
            if (r.dist_k < c.tol(kSubspaceTol))
                ++k_ok;
            if (r.dist_kp < c.tol(kSubspaceTol))
                ++kp_ok;
            maxm(m, "max_min_dist", std::min(r.dist_k, r.dist_kp));
            maxm(m, "max_dist_mult_k", r.dist_k);
        }
    }
    m["frac_mult_k"] = total ? double(k_ok) / double(total) : 0.0;
    m["frac_mult_kprime"] = total ? double(kp_ok) / double(total) : 0.0;
    const bool ok = total > 0 && m["max_min_dist"] < c.tol(kSubspaceTol);
    return make_result(c, ok, std::move(m));
}

CheckResult chk_op_algebra(const Ctx& c) {
    if (c.cfg.tau_samples <= 0)
        return ambiguous_result(c, "tau_samples = 0");
    std::map<std::string, double> m;
    for (auto [n, k] : c.cfg.pairs) {
        Rng rng(c.seed + fnv1a("op" + std::to_string(n) + "," + std::to_string(k)));
        const int samples = std::min(10, c.cfg.tau_samples);
        for (int s = 0; s < samples; ++s) {
            const cplx tau = random_tau_generic(rng, c.cfg.eta, n);
            const NegationResult r = negation_map(relation_space(c.params(n, k, tau)));
            maxm(m, "max_dist_negated", r.dist_negated);
            maxm(m, "max_dist_swapped", r.dist_swapped);
        }
    }
    const bool ok = m["max_dist_negated"] < c.tol(kSubspaceTol) &&
                    m["max_dist_swapped"] < c.tol(kSubspaceTol);
    return make_result(c, ok, std::move(m));
}

CheckResult chk_alt_relations(const Ctx& c) {
    if (c.cfg.tau_samples <= 0)
        return ambiguous_result(c, "tau_samples = 0");
    std::map<std::string, double> m;
    for (auto [n, k] : c.cfg.pairs) {
        Rng rng(c.seed + fnv1a("alt" + std::to_string(n) + "," + std::to_string(k)));
        const CMatrix S2 = heisenberg_matrix({1, 0, 0}, 2, n);
        const CMatrix T2 = heisenberg_matrix({0, 1, 0}, 2, n);
        for (int s = 0; s < 3; ++s) {
            const cplx tau = random_tau_generic(rng, c.cfg.eta, n);
            const AlgebraParams p = c.params(n, k, tau);
            const RelationSpace rel = relation_space(p);
            const AltRelations alt = alt_relations(p);

            auto span_of = [&](const std::vector<TensorVector>& gens) {
                return space_from_generators(p, gens).ortho_basis;
            };
            if (n % 2 == 1) {
                maxm(m, "span_dist", projector_distance(span_of(alt.R), rel.ortho_basis));
                maxm(m, "span_dist", projector_distance(span_of(alt.R_prime), rel.ortho_basis));
            } else {
                std::vector<TensorVector> both = alt.R;
                both.insert(both.end(), alt.R_prime.begin(), alt.R_prime.end());
                maxm(m, "span_dist", projector_distance(span_of(both), rel.ortho_basis));
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        const auto& a = alt.R[std::size_t(i) * n + j];
                        const auto& b =
                            alt.R[std::size_t(zmod(i + n / 2, n)) * n + zmod(j + n / 2, n)];
                        maxm(m, "half_shift_resid",
                             (a.coeffs + b.coeffs).norm() / std::max(1e-300, a.coeffs.norm()));
                    }
            }
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const auto& R = alt.R[std::size_t(i) * n + j];
                    const auto& Rp = alt.R_prime[std::size_t(i) * n + j];
                    const double sR = std::max(1e-300, R.coeffs.norm());
                    const double sRp = std::max(1e-300, Rp.coeffs.norm());
                    maxm(m, "s_eigen_resid",
                         (S2 * R.coeffs - e2pi(2.0 * j / n) * R.coeffs).norm() / sR);
                    maxm(m, "s_eigen_resid",
                         (S2 * Rp.coeffs - e2pi((2.0 * j + 1.0) / n) * Rp.coeffs).norm() / sRp);
                    const auto& Rnext = alt.R[std::size_t(i) * n + zmod(j + 1, n)];
                    const auto& Rpnext = alt.R_prime[std::size_t(i) * n + zmod(j + 1, n)];
                    maxm(m, "t_shift_resid", (T2 * R.coeffs - Rnext.coeffs).norm() / sR);
                    maxm(m, "t_shift_resid", (T2 * Rp.coeffs - Rpnext.coeffs).norm() / sRp);
                }
        }
    }
    const bool ok = m["span_dist"] < c.tol(kSubspaceTol) &&
                    m["s_eigen_resid"] < c.tol(1e-9) && m["t_shift_resid"] < c.tol(1e-9) &&
                    (!m.count("half_shift_resid") || m["half_shift_resid"] < c.tol(1e-9));
    return make_result(c, ok, std::move(m));
}

// -------------------------------------------------------------- hilbert ----

CheckResult chk_hilbert_poly(const Ctx& c) {
    std::map<std::string, double> m;
    long mismatches = 0;
    for (auto [n, k] : c.cfg.pairs) {
        if (n > 5)
            continue;
        const RelationSpace rel = relation_space(c.params(n, k, 0.0));
        const GradedDims g = graded_dims(rel, 4);
        for (int d = 0; d <= 4; ++d)
            if (g.dims[std::size_t(d)] != polynomial_dim(n, d))
                ++mismatches;
    }
    m["dim_mismatches"] = double(mismatches);
    return make_result(c, mismatches == 0, std::move(m));
}

CheckResult chk_hilbert_generic(const Ctx& c) {
    if (c.cfg.tau_samples <= 0)
        return ambiguous_result(c, "tau_samples = 0");
    std::map<std::string, double> m;
    long mismatches = 0, reported_deviations = 0;

    struct Case {
        int n, k, dmax;
    };
    const Case cases[] = {{2, 1, 4}, {3, 1, 4}, {4, 1, 4}, {5, 1, 4}, {5, 2, 4}};
    for (const Case& cs : cases) {
        Rng rng(c.seed + fnv1a("hg" + std::to_string(cs.n) + "," + std::to_string(cs.k)));
        const cplx tau = random_tau_generic(rng, c.cfg.eta, cs.n);
        const RelationSpace rel = relation_space(c.params(cs.n, cs.k, tau));
        const GradedDims g = graded_dims(rel, cs.dmax);
        for (int d = 0; d <= cs.dmax; ++d) {
            const long want = polynomial_dim(cs.n, d);
            const bool pinned = cs.k == 1 || d <= 3;
            if (g.dims[std::size_t(d)] != want) {
                if (pinned)
                    ++mismatches;
                else
                    ++reported_deviations; // reported, not asserted
            }
        }

        // twisting and passing to the opposite algebra leave the dims alone
        if (cs.n == 3) {
            const CMatrix T1 = heisenberg_degree1({0, 1, 0}, cs.n);
            const GradedDims gt = graded_dims(twist_quadratic(rel, T1), cs.dmax);
            std::vector<TensorVector> swapped;
            for (const auto& gen : rel.generators) {
                TensorVector v = TensorVector::zero(2, cs.n);
                for (int a = 0; a < cs.n; ++a)
                    for (int b = 0; b < cs.n; ++b)
                        v.at2(b, a) = gen.at2(a, b);
                swapped.push_back(std::move(v));
            }
            const GradedDims gs =
                graded_dims(space_from_generators(rel.params, swapped), cs.dmax);
            for (int d = 0; d <= cs.dmax; ++d) {
                if (gt.dims[std::size_t(d)] != g.dims[std::size_t(d)])
                    ++mismatches;
                if (gs.dims[std::size_t(d)] != g.dims[std::size_t(d)])
                    ++mismatches;
            }
        }
    }
    m["dim_mismatches"] = double(mismatches);
    m["reported_deviations"] = double(reported_deviations);
    return make_result(c, mismatches == 0, std::move(m));
}

// ------------------------------------------------------- degenerations ----

CheckResult chk_tau_zero_poly(const Ctx& c) {
    std::map<std::string, double> m;
    bool ok = true;
    for (auto [n, k] : c.cfg.pairs) {
        const AlgebraParams p0 = c.params(n, k, 0.0);
        const RelationSpace rel = relation_space(p0);
        maxm(m, "max_comm_dist", projector_distance(rel.ortho_basis, commutator_basis(n)));

        if (k == 1) {
            for (int i = 0; i < n; ++i)
                if (!relation_identically_zero(p0, i, i))
                    ok = false;
        } else {
            // the limit direction of r_ii at tau -> 0 is the pinned commutator
            // combination; r_ii itself is holomorphic there, so an 8-point
            // circle mean recovers the limit
            const LatticeData lat = c.lat(n);
            const int half = (n + 1) / 2 - 1;
            CVector want = CVector::Zero(n * n);
            for (int i = 0; i < n; ++i) {
                want.setZero();
                for (int r = 1; r <= half; ++r) {
                    const cplx coeff = theta_alpha(zmod(long(k - 1) * r, n), 0.0, lat).value /
                                       (theta_alpha(zmod(-long(r), n), 0.0, lat).value *
                                        theta_alpha(zmod(long(k) * r, n), 0.0, lat).value);
                    want(zmod(long(i) - r, n) * n + zmod(long(i) + r, n)) += coeff;
                    want(zmod(long(i) + r, n) * n + zmod(long(i) - r, n)) -= coeff;
                }
                CVector limit = CVector::Zero(n * n);
                for (int t = 0; t < 8; ++t) {
                    const cplx tt = 1e-3 * e2pi(double(t) / 8.0);
                    limit += relation_r_ij(p0.with_tau(tt), i, i).coeffs / 8.0;
                }
                const double align = std::abs(want.dot(limit)) / (want.norm() * limit.norm());
                maxm(m, "max_align_resid", 1.0 - align);
                if (relation_identically_zero(p0, i, i))
                    ok = false;
            }
        }
    }
    ok = ok && m["max_comm_dist"] < c.tol(kSubspaceTol) &&
         (!m.count("max_align_resid") || m["max_align_resid"] < c.tol(1e-8));
    return make_result(c, ok, std::move(m));
}

CheckResult chk_n_minus_one(const Ctx& c) {
    if (c.cfg.tau_samples <= 0)
        return ambiguous_result(c, "tau_samples = 0");
    std::map<std::string, double> m;
    bool saw = false;
    for (auto [n, k] : c.cfg.pairs) {
        if (k != n - 1)
            continue;
        saw = true;
        const CMatrix alt = commutator_basis(n);
        Rng rng(c.seed + fnv1a("nm1" + std::to_string(n)));
        const int samples = std::min(10, c.cfg.tau_samples);
        for (int s = 0; s < samples; ++s) {
            const cplx tau = random_tau_generic(rng, c.cfg.eta, n);
            const RelationSpace rel = relation_space(c.params(n, k, tau));
            for (const auto& g : rel.generators)
                maxm(m, "max_alt_resid", subspace_residual(g.coeffs, alt));
        }
    }
    const bool ok = saw && m["max_alt_resid"] < c.tol(1e-8);
    return make_result(c, ok, std::move(m));
}

CheckResult chk_two_torsion(const Ctx& c) {
    std::map<std::string, double> m;
    bool ok = true;
    for (auto [n, k] : c.cfg.pairs) {
        if (k != 1)
            continue;
        const cplx eta = c.cfg.eta;
        const cplx reps[3] = {0.5, 0.5 * eta, 0.5 + 0.5 * eta};
        if (n % 2 == 1 && n <= 5) {
            const CMatrix sym = symmetric_pair_basis(n);
            for (const cplx& tau : reps) {
                const RelationSpace rel = relation_space(c.params(n, k, tau));
                for (const auto& g : rel.generators)
                    maxm(m, "max_sym_resid", subspace_residual(g.coeffs, sym));
            }
        } else if (n == 4 || n == 6) {
            const CMatrix comm = commutator_basis(n);
            for (const cplx& tau : reps) {
                const RelationSpace rel = relation_space(c.params(n, k, tau));
                maxm(m, "max_comm_dist", projector_distance(rel.ortho_basis, comm));
            }
        }
    }
    ok = ok && (!m.count("max_sym_resid") || m["max_sym_resid"] < c.tol(1e-8)) &&
         (!m.count("max_comm_dist") || m["max_comm_dist"] < c.tol(kSubspaceTol));
    return make_result(c, ok, std::move(m));
}

CheckResult chk_samerank(const Ctx& c) {
    if (c.cfg.tau_samples <= 0)
        return ambiguous_result(c, "tau_samples = 0");
    std::map<std::string, double> m;
    long mismatches = 0;
    for (auto [n, k] : c.cfg.pairs) {
        Rng rng(c.seed + fnv1a("sr" + std::to_string(n) + "," + std::to_string(k)));
        const int samples = std::min(5, c.cfg.tau_samples);
        for (int s = 0; s < samples; ++s) {
            const cplx tau = random_tau_generic(rng, c.cfg.eta, n);
            const RelationSpace a = relation_space(c.params(n, k, tau));
            const RelationSpace b = relation_space(c.params(n, n - k, tau));
            if (a.rank != b.rank)
                ++mismatches;
        }
    }
    m["rank_mismatches"] = double(mismatches);
    return make_result(c, mismatches == 0, std::move(m));
}

// -------------------------------------------------------------- shuffle ----

// redraw points until every pairwise difference stays off the theta divisor
std::vector<cplx> pole_free_points(Rng& rng, const LatticeData& lat, int count) {
    for (int tries = 0; tries < 1000; ++tries) {
        std::vector<cplx> pts;
        for (int t = 0; t < count; ++t)
            pts.push_back(random_point(rng, lat.eta));
        double lo = 1e300;
        for (int i = 0; i < count; ++i)
            for (int j = i + 1; j < count; ++j)
                lo = std::min(lo, std::abs(theta_basic(pts[std::size_t(i)] - pts[std::size_t(j)], lat).value));
        if (lo > 1e-3)
            return pts;
    }
    throw ConfigError("pole_free_points: rejection sampling failed");
}

CheckResult chk_shuffle_hom(const Ctx& c) {
    if (c.cfg.tau_samples <= 0)
        return ambiguous_result(c, "tau_samples = 0");
    std::map<std::string, double> m;
    for (int n : c.distinct_ns()) {
        if (n > 5)
            continue;
        const LatticeData lat = c.lat(n);
        Rng rng(c.seed + fnv1a("sh" + std::to_string(n)));
        for (int s = 0; s < 50; ++s) {
            const cplx tau = random_tau_generic(rng, c.cfg.eta, n);
            const AlgebraParams p = c.params(n, 1, tau);
            const auto pts = pole_free_points(rng, lat, 2);
            const int i = int(rng.next() % std::uint64_t(n));
            int j = int(rng.next() % std::uint64_t(n));
            if (j == i)
                j = zmod(j + 1, n);

            cplx sum = 0.0;
            double scale = 0.0;
            for (int r = 0; r < n; ++r) {
                const cplx den = theta_alpha(zmod(long(j) - i - r, n), -tau, lat).value *
                                 theta_alpha(r, tau, lat).value;
                const cplx term = star_degree11(SymFunction::theta_unit(n, zmod(long(j) - r, n)),
                                                SymFunction::theta_unit(n, zmod(long(i) + r, n)),
                                                p, pts[0], pts[1]) /
                                  den;
                sum += term;
                scale = std::max(scale, std::abs(term));
            }
            maxm(m, "max_rel_resid", std::abs(sum) / scale);
        }
    }
    return make_result(c, m["max_rel_resid"] < c.tol(1e-8), std::move(m));
}

CheckResult chk_shuffle_assoc(const Ctx& c) {
    if (c.cfg.tau_samples <= 0)
        return ambiguous_result(c, "tau_samples = 0");
    std::map<std::string, double> m;
    for (int n : c.distinct_ns()) {
        if (n > 5)
            continue;
        const LatticeData lat = c.lat(n);
        Rng rng(c.seed + fnv1a("sa" + std::to_string(n)));

        auto random_deg1 = [&]() {
            SymFunction f = SymFunction::zero(1, n);
            for (int a = 0; a < n; ++a)
                f.coeffs(a) = cplx(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
            return f;
        };

        for (int s = 0; s < 20; ++s) {
            const cplx tau = random_tau_generic(rng, c.cfg.eta, n);
            const AlgebraParams p = c.params(n, 1, tau);
            const SymFunction f = random_deg1(), g = random_deg1(), h = random_deg1();
            const auto pts = pole_free_points(rng, lat, 3);

            auto ev = [&p](const SymFunction& fn) {
                return [&p, fnp = &fn](const std::vector<cplx>& z) {
                    return sym_eval(*fnp, p, z);
                };
            };
            auto fg = [&](const std::vector<cplx>& z) {
                return star_eval(ev(f), 1, ev(g), 1, p, z);
            };
            auto gh = [&](const std::vector<cplx>& z) {
                return star_eval(ev(g), 1, ev(h), 1, p, z);
            };
            const cplx lhs = star_eval(fg, 2, ev(h), 1, p, pts);
            const cplx rhs = star_eval(ev(f), 1, gh, 2, p, pts);
            maxm(m, "max_assoc_resid", std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs)));

            // degree (1,1) routes agree, and tau = 0 gives the plain shuffle
            const cplx v2 = star_general(f, g, p, {pts[0], pts[1]});
            const cplx v1 = star_degree11(f, g, p, pts[0], pts[1]);
            maxm(m, "max_deg11_resid", std::abs(v2 - v1) / std::max(1.0, std::abs(v1)));
        }

        Rng rng0(c.seed + fnv1a("sa0" + std::to_string(n)));
        const AlgebraParams p0 = c.params(n, 1, 0.0);
        for (int s = 0; s < 5; ++s) {
            const SymFunction f = random_deg1(), g = random_deg1();
            const auto pts = pole_free_points(rng0, lat, 2);
            const cplx v = star_degree11(f, g, p0, pts[0], pts[1]);
            const cplx classical = sym_eval(f, p0, {pts[0]}) * sym_eval(g, p0, {pts[1]}) +
                                   sym_eval(f, p0, {pts[1]}) * sym_eval(g, p0, {pts[0]});
            maxm(m, "max_tau0_resid", std::abs(v - classical) / std::max(1.0, std::abs(classical)));
        }
    }
    const bool ok = m["max_assoc_resid"] < c.tol(1e-8) && m["max_deg11_resid"] < c.tol(1e-10) &&
                    m["max_tau0_resid"] < c.tol(1e-10);
    return make_result(c, ok, std::move(m));
}

CheckResult chk_psi_identity(const Ctx& c) {
    if (c.cfg.tau_samples <= 0)
        return ambiguous_result(c, "tau_samples = 0");
    std::map<std::string, double> m;
    for (int n : c.distinct_ns()) {
        if (n > 5)
            continue;
        const LatticeData lat = c.lat(n);
        Rng rng(c.seed + fnv1a("psi" + std::to_string(n)));
        for (int s = 0; s < 50; ++s) {
            const cplx tau = random_tau_generic(rng, c.cfg.eta, n);
            const AlgebraParams p = c.params(n, 1, tau);
            const auto pts = pole_free_points(rng, lat, 2);
            const cplx x = pts[0], y = pts[1];
            const int i = int(rng.next() % std::uint64_t(n));
            int j = int(rng.next() % std::uint64_t(n));
            if (j == i)
                j = zmod(j + 1, n);

            // the two routes of the structure identity
            cplx d = theta_basic(-double(n) * tau, lat).value *
                     theta_alpha(zmod(long(j) - i, n), 0.0, lat).value / double(n);
            for (int t = 1; t < n; ++t)
                d *= theta_basic(double(t) / n, lat).value;
            const cplx lhs = theta_basic(-double(n) * tau + x - y, lat).value /
                             theta_basic(x - y, lat).value *
                             (theta_alpha(i, x + tau, lat).value * theta_alpha(j, y + tau, lat).value -
                              theta_alpha(i, y + tau, lat).value * theta_alpha(j, x + tau, lat).value);
            cplx rhs = 0.0;
            for (int r = 0; r < n; ++r)
                rhs += theta_alpha(zmod(long(j) - r, n), x, lat).value *
                       theta_alpha(zmod(long(i) + r, n), y + 2.0 * tau, lat).value /
                       (theta_alpha(zmod(long(j) - i - r, n), -tau, lat).value *
                        theta_alpha(r, tau, lat).value);
            rhs *= d;
            maxm(m, "max_identity_resid",
                 std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs)));

            const cplx pv = psi_map(i, j, p, x, y);
            const cplx hv = h_ij(i, j, p, x, y);
            maxm(m, "max_psi_h_resid", std::abs(pv - hv) / std::max(std::abs(pv), std::abs(hv)));

            // vanishing on the shifted diagonal, measured against the size of
            // the summands that cancel there
            const cplx ys = x + (2.0 - n) * tau;
            cplx dconst = theta_basic(-double(n) * tau, lat).value *
                          theta_alpha(zmod(long(j) - i, n), 0.0, lat).value / double(n);
            for (int t = 1; t < n; ++t)
                dconst *= theta_basic(double(t) / n, lat).value;
            double term_scale = 0.0;
            for (int r = 0; r < n; ++r)
                term_scale = std::max(
                    term_scale,
                    std::abs(dconst * theta_alpha(zmod(long(j) - r, n), x, lat).value *
                             theta_alpha(zmod(long(i) + r, n), ys, lat).value /
                             (theta_alpha(zmod(long(j) - i - r, n), -tau, lat).value *
                              theta_alpha(r, tau, lat).value)));
            maxm(m, "max_diag_resid", std::abs(h_ij(i, j, p, x, ys)) / term_scale);
        }

        // holomorphic extension across the torsion lattice: circle means of
        // h_ij at shrinking radii settle down, and the i = j function is 0
        Rng rng2(c.seed + fnv1a("psi-tors" + std::to_string(n)));
        const cplx torsion[2] = {cplx(1.0, 0.0) / double(n), c.cfg.eta / double(n)};
        for (const cplx& tau0 : torsion) {
            const auto pts = pole_free_points(rng2, lat, 2);
            auto circle_mean = [&](int i, int j, double rho) {
                cplx acc = 0.0;
                for (int t = 0; t < 8; ++t) {
                    const cplx tt = tau0 + rho * e2pi(double(t) / 8.0);
                    acc += h_ij(i, j, c.params(n, 1, tt), pts[0], pts[1]);
                }
                return acc / 8.0;
            };
            const cplx m3 = circle_mean(0, 1, 1e-3);
            const cplx m4 = circle_mean(0, 1, 1e-4);
            maxm(m, "max_cauchy_diff", std::abs(m3 - m4));
            maxm(m, "max_hii_torsion", std::abs(circle_mean(1, 1, 1e-3)));
        }
    }
    const bool ok = m["max_identity_resid"] < c.tol(1e-8) && m["max_psi_h_resid"] < c.tol(1e-8) &&
                    m["max_diag_resid"] < c.tol(1e-8) && m["max_cauchy_diff"] < c.tol(1e-6) &&
                    m["max_hii_torsion"] < c.tol(1e-8);
    return make_result(c, ok, std::move(m));
}

using CheckFn = CheckResult (*)(const Ctx&);

const std::vector<std::pair<std::string, CheckFn>>& registry_impl() {
    static const std::vector<std::pair<std::string, CheckFn>> reg = {
        {"theta-quasiperiod", chk_theta_quasiperiod},
        {"theta-zeros-appendix", chk_theta_zeros},
        {"heisenberg-rep", chk_heisenberg},
        {"rel-dim", chk_rel_dim},
        {"rel-torsion-limit", chk_rel_torsion_limit},
        {"twist-thm", chk_twist_thm},
        {"k-kprime-iso", chk_k_kprime},
        {"op-algebra", chk_op_algebra},
        {"alt-relations", chk_alt_relations},
        {"hilbert-poly", chk_hilbert_poly},
        {"hilbert-generic", chk_hilbert_generic},
        {"tau-zero-poly", chk_tau_zero_poly},
        {"n-minus-one-alt", chk_n_minus_one},
        {"two-torsion", chk_two_torsion},
        {"shuffle-hom", chk_shuffle_hom},
        {"shuffle-assoc", chk_shuffle_assoc},
        {"psi-identity", chk_psi_identity},
        {"samerank-k-nk", chk_samerank},
    };
    return reg;
}

} // namespace

const std::vector<std::string>& check_registry() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v;
        for (const auto& [id, fn] : registry_impl())
            v.push_back(id);
        return v;
    }();
    return ids;
}

CheckResult run_check(const std::string& id, const RunConfig& cfg) {
    cfg.validate();
    const CheckFn* fn = nullptr;
    for (const auto& [name, f] : registry_impl())
        if (name == id)
            fn = &f;
    if (!fn)
        throw UnknownCheck("no check named '" + id + "'");

    Ctx ctx{cfg, id, check_seed(cfg.seed, id)};
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult res;
    try {
        res = (*fn)(ctx);
    } catch (const std::exception& err) {
        res = CheckResult{id, json{{"seed", ctx.seed}, {"error", err.what()}}, "fail",
                          {{"errored", 1.0}}, 0};
    }
    res.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return res;
}

RunAllResult run_all(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.workers > 0)
        set_worker_count(cfg.workers);
    const auto& ids = check_registry();
    RunAllResult out;
    out.results.resize(ids.size());

    // checks are self-contained; run them concurrently, assemble in order
    parallel_for(0, std::int64_t(ids.size()), [&](std::int64_t i) {
        out.results[std::size_t(i)] = run_check(ids[std::size_t(i)], cfg);
    });

    out.all_pass = std::none_of(out.results.begin(), out.results.end(),
                                [](const CheckResult& r) { return r.status == "fail"; });
    return out;
}

namespace {

std::string metric_string(const std::map<std::string, double>& metrics) {
    std::string s;
    char buf[64];
    for (const auto& [k, v] : metrics) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        s += k;
        s += '=';
        s += buf;
        s += ';';
    }
    return s;
}

} // namespace

std::uint64_t report_hash(const RunAllResult& run) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](const std::string& s) {
        for (unsigned char ch : s) {
            h ^= ch;
            h *= 1099511628211ull;
        }
    };
    for (const CheckResult& r : run.results) {
        mix(r.check_id);
        mix("|");
        mix(r.status);
        mix("|");
        mix(r.params.dump());
        mix("|");
        mix(metric_string(r.metrics));
        mix("\n");
    }
    return h;
}

json report_json(const RunAllResult& run, const RunConfig& cfg, bool with_timing) {
    json pairs = json::array();
    for (auto [n, k] : cfg.pairs)
        pairs.push_back(json::array({n, k}));
    json results = json::array();
    for (const CheckResult& r : run.results) {
        json jr{{"check_id", r.check_id},
                {"status", r.status},
                {"params", r.params},
                {"metrics", r.metrics}};
        if (with_timing)
            jr["runtime_ms"] = r.runtime_ms;
        results.push_back(std::move(jr));
    }
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(report_hash(run)));
    json out{{"schema_version", 1},
             {"config", json{{"seed", cfg.seed},
                             {"eta", complex_json(cfg.eta)},
                             {"pairs", std::move(pairs)},
                             {"tau_samples", cfg.tau_samples},
                             {"tol_scale", cfg.tol_scale}}},
             {"results", std::move(results)},
             {"all_pass", run.all_pass},
             {"determinism_hash", std::string(hash)}};
    if (with_timing) {
        std::int64_t total = 0;
        for (const CheckResult& r : run.results)
            total += r.runtime_ms;
        out["timing"] = json{{"total_ms", total}};
    }
    return out;
}

} // namespace ellq
