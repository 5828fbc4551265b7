#include "ellq/algebra.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "ellq/parallel.hpp"

namespace ellq {

namespace {

constexpr double kTorsionRadius = 1e-3;
// Columns below this fraction of the largest column are treated as zero.
// It matches the global rank tolerance: anything smaller is indistinguishable
// from the continuation's aliasing floor, and normalizing it would inject a
// pure-noise direction.
constexpr double kZeroColumnTol = kRankTol;

// theta_alpha at a fixed point for all alpha in Z_n.
std::vector<cplx> theta_table(cplx z, const LatticeData& lat) {
    std::vector<cplx> t(std::size_t(lat.n));
    for (int a = 0; a < lat.n; ++a)
        t[std::size_t(a)] = theta_alpha(a, z, lat).value;
    return t;
}

} // namespace

AlgebraParams::AlgebraParams(int n_, int k_, cplx tau_, cplx eta, double trunc_eps)
    : AlgebraParams(n_, k_, tau_, LatticeData(eta, n_, trunc_eps)) {}

AlgebraParams::AlgebraParams(int n_, int k_, cplx tau_, LatticeData lat_)
    : n(n_), k(k_), k_prime(0), tau(tau_), lat(lat_) {
    if (n < 2)
        throw ConfigError("AlgebraParams: n must be >= 2");
    if (k < 1 || k >= n)
        throw ConfigError("AlgebraParams: k must satisfy 1 <= k < n");
    if (std::gcd(n, k) != 1)
        throw ConfigError("AlgebraParams: n and k must be coprime");
    if (lat.n != n)
        throw ConfigError("AlgebraParams: lattice order differs from n");
    for (int t = 1; t < n; ++t)
        if (zmod(long(k) * t, n) == 1) {
            k_prime = t;
            break;
        }
}

bool AlgebraParams::tau_on_torsion(double tol) const {
    return lattice_distance(tau, cplx(1.0 / n, 0.0), lat.eta / double(n)) < tol;
}

AlgebraParams AlgebraParams::with_tau(cplx t) const {
    return AlgebraParams(n, k, t, lat);
}

AlgebraParams AlgebraParams::with_k(int k_) const {
    return AlgebraParams(n, k_, tau, lat);
}

TensorVector TensorVector::zero(int degree, int n) {
    TensorVector v{degree, n, {}};
    long len = 1;
    for (int t = 0; t < degree; ++t)
        len *= n;
    v.coeffs = CVector::Zero(len);
    return v;
}

HeisenbergElement heisenberg_compose(const HeisenbergElement& g, const HeisenbergElement& h, int n) {
    // S^a1 T^b1 S^a2 T^b2 = omega^{-a2 b1} S^{a1+a2} T^{b1+b2}
    return {zmod(g.a + h.a, n), zmod(g.b + h.b, n), zmod(g.c + h.c - long(h.a) * g.b, n)};
}

CMatrix heisenberg_degree1(const HeisenbergElement& g, int n) {
    CMatrix M = CMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        M(zmod(i + g.b, n), i) = e2pi(double(zmod(g.c + long(g.a) * (i + g.b), n)) / n);
    return M;
}

CMatrix heisenberg_matrix(const HeisenbergElement& g, int degree, int n) {
    if (degree < 1)
        throw ConfigError("heisenberg_matrix: degree must be >= 1");
    return kronecker_power(heisenberg_degree1(g, n), degree);
}

TensorVector relation_r_ij(const AlgebraParams& p, int i, int j) {
    if (p.tau_on_torsion())
        throw TorsionPoint("r_ij is singular at tau on (1/n)Lambda; use relation_space");
    const int n = p.n;
    const auto th0 = theta_table(0.0, p.lat);
    const auto thp = theta_table(p.tau, p.lat);
    const auto thm = theta_table(-p.tau, p.lat);

    TensorVector v = TensorVector::zero(2, n);
    for (int r = 0; r < n; ++r) {
        const cplx num = th0[std::size_t(zmod(long(j) - i + long(p.k - 1) * r, n))];
        const cplx den = thm[std::size_t(zmod(long(j) - i - r, n))] * thp[std::size_t(zmod(long(p.k) * r, n))];
        v.at2(zmod(long(j) - r, n), zmod(long(i) + r, n)) += num / den;
    }
    return v;
}

CMatrix operator_R(const AlgebraParams& p, cplx z) {
    if (p.tau_on_torsion())
        throw TorsionPoint("operator_R: theta_alpha(tau) vanishes; tau is a torsion point");
    const int n = p.n;
    const auto th0 = theta_table(0.0, p.lat);
    const auto thmz = theta_table(-z, p.lat);
    const auto thsh = theta_table(-z + p.tau, p.lat);
    const auto thtau = theta_table(p.tau, p.lat);

    cplx den0 = 1.0;
    for (int a = 1; a < n; ++a)
        den0 *= th0[std::size_t(a)];

    // prod_{a != omit} theta_a(-z) via prefix/suffix products
    std::vector<cplx> pre(std::size_t(n) + 1, 1.0), suf(std::size_t(n) + 1, 1.0);
    for (int a = 0; a < n; ++a)
        pre[std::size_t(a) + 1] = pre[std::size_t(a)] * thmz[std::size_t(a)];
    for (int a = n - 1; a >= 0; --a)
        suf[std::size_t(a)] = suf[std::size_t(a) + 1] * thmz[std::size_t(a)];

    CMatrix M = CMatrix::Zero(n * n, n * n);
    parallel_for(0, std::int64_t(n) * n, [&](std::int64_t col) {
        const int i = int(col / n);
        const int j = int(col % n);
        for (int r = 0; r < n; ++r) {
            const int omit = zmod(long(j) - i - r, n);
            const cplx prod = pre[std::size_t(omit)] * suf[std::size_t(omit) + 1];
            const cplx num = thsh[std::size_t(zmod(long(j) - i + long(r) * (p.k - 1), n))];
            const cplx den = den0 * thtau[std::size_t(zmod(long(p.k) * r, n))];
            const int row = zmod(long(j) - r, n) * n + zmod(long(i) + r, n);
            M(row, col) += prod * num / den;
        }
    });
    return M;
}

CMatrix operator_R_diag(const AlgebraParams& p, double rho, int circle_points) {
    if (!p.tau_on_torsion())
        return operator_R(p, p.tau);
    const int n = p.n;
    CMatrix acc = CMatrix::Zero(n * n, n * n);
    for (int m = 0; m < circle_points; ++m) {
        const cplx t = p.tau + rho * e2pi(double(m) / circle_points);
        acc += operator_R(p.with_tau(t), t);
    }
    return acc / double(circle_points);
}

CMatrix operator_R_diag(const AlgebraParams& p) {
    return operator_R_diag(p, kTorsionRadius, 8);
}

RelationSpace space_from_generators(const AlgebraParams& p, const std::vector<TensorVector>& gens) {
    RelationSpace out{p, {}, {}, 0, 0.0, {}, 0};
    double global_max = 0.0;
    for (const auto& g : gens)
        global_max = std::max(global_max, g.coeffs.cwiseAbs().maxCoeff());

    for (const auto& g : gens) {
        Eigen::Index where = 0;
        const double m = g.coeffs.cwiseAbs().maxCoeff(&where);
        if (global_max == 0.0 || m < kZeroColumnTol * global_max)
            continue; // zero column
        TensorVector v = g;
        v.coeffs /= g.coeffs(where); // normalize by the largest-magnitude entry
        out.generators.push_back(std::move(v));
    }
    if (out.generators.empty()) {
        out.ortho_basis.resize(p.n * p.n, 0);
        out.svd_gap = std::numeric_limits<double>::infinity();
        return out;
    }

    CMatrix G(p.n * p.n, Eigen::Index(out.generators.size()));
    for (std::size_t c = 0; c < out.generators.size(); ++c)
        G.col(Eigen::Index(c)) = out.generators[c].coeffs;

    SvdBasis svd = svd_basis(G, kRankTol);
    out.ortho_basis = svd.basis;
    out.rank = svd.rank;
    out.svd_gap = svd.gap;
    out.singular_values = svd.singular_values;
    if (out.svd_gap < kGapFloor)
        throw RankAmbiguous("relation space rank is ambiguous (svd gap " +
                            std::to_string(out.svd_gap) + "); raise precision");
    return out;
}

RelationSpace relation_space(const AlgebraParams& p) {
    const CMatrix D = operator_R_diag(p);
    const int n = p.n;
    std::vector<TensorVector> gens;
    gens.reserve(std::size_t(n) * n);
    for (Eigen::Index col = 0; col < D.cols(); ++col) {
        TensorVector v = TensorVector::zero(2, n);
        v.coeffs = D.col(col);
        gens.push_back(std::move(v));
    }
    return space_from_generators(p, gens);
}

bool relation_identically_zero(const AlgebraParams& p, int i, int j) {
    // Probe at three fixed generic points; see the module notes for the
    // 1e-10 declaration threshold.
    static const cplx probes[3] = {{0.137, 0.291}, {0.382, 0.174}, {0.068, 0.417}};
    for (const cplx& c : probes) {
        const cplx t = c.real() + c.imag() * p.lat.eta;
        const TensorVector r = relation_r_ij(p.with_tau(t), i, j);
        if (r.coeffs.norm() >= 1e-10)
            return false;
    }
    return true;
}

AltRelations alt_relations(const AlgebraParams& p) {
    if (p.tau_on_torsion())
        throw TorsionPoint("alt_relations: tau on (1/n)Lambda");
    const int n = p.n, k = p.k;
    const auto th0 = theta_table(0.0, p.lat);
    const auto thp = theta_table(p.tau, p.lat);

    AltRelations out;
    out.R.reserve(std::size_t(n) * n);
    out.R_prime.reserve(std::size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            TensorVector R = TensorVector::zero(2, n);
            TensorVector Rp = TensorVector::zero(2, n);
            for (int r = 0; r < n; ++r) {
                const cplx ph = e2pi(double(r) / n);
                R.at2(zmod(long(j) - r, n), zmod(long(j) + r, n)) +=
                    ph * th0[std::size_t(zmod(-long(k + 1) * i + long(k - 1) * r, n))] /
                    (thp[std::size_t(zmod(long(r) + i, n))] * thp[std::size_t(zmod(long(k) * (r - i), n))]);
                Rp.at2(zmod(long(j) - r, n), zmod(long(j) + r + 1, n)) +=
                    ph * th0[std::size_t(zmod(long(k) - long(k + 1) * i + long(k - 1) * r, n))] /
                    (thp[std::size_t(zmod(long(r) + i, n))] * thp[std::size_t(zmod(long(k) * (r - i + 1), n))]);
            }
            out.R.push_back(std::move(R));
            out.R_prime.push_back(std::move(Rp));
        }
    return out;
}

RelationSpace twist_quadratic(const RelationSpace& rel, const CMatrix& phi) {
    const int n = rel.params.n;
    if (phi.rows() != n || phi.cols() != n)
        throw ConfigError("twist_quadratic: phi must be n x n");
    Eigen::FullPivLU<CMatrix> lu(phi);
    if (lu.rank() < n)
        throw SingularMap("twist_quadratic: phi is singular");

    std::vector<TensorVector> gens;
    gens.reserve(rel.generators.size());
    for (const auto& g : rel.generators) {
        TensorVector v = TensorVector::zero(2, n);
        // (id (x) phi): out[a][b'] = sum_b phi(b', b) g[a][b]
        for (int a = 0; a < n; ++a) {
            CVector slice(n);
            for (int b = 0; b < n; ++b)
                slice(b) = g.at2(a, b);
            const CVector mapped = phi * slice;
            for (int b = 0; b < n; ++b)
                v.at2(a, b) = mapped(b);
        }
        gens.push_back(std::move(v));
    }
    return space_from_generators(rel.params, gens);
}

RelationSpace substitution_image(const RelationSpace& rel, int mult) {
    const int n = rel.params.n;
    std::vector<TensorVector> gens;
    gens.reserve(rel.generators.size());
    for (const auto& g : rel.generators) {
        TensorVector v = TensorVector::zero(2, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                v.at2(zmod(long(mult) * a, n), zmod(long(mult) * b, n)) += g.at2(a, b);
        gens.push_back(std::move(v));
    }
    return space_from_generators(rel.params, gens);
}

KkPrimeResult map_k_kprime(const RelationSpace& rel) {
    KkPrimeResult out{relation_space(rel.params.with_k(rel.params.k_prime)),
                      substitution_image(rel, rel.params.k),
                      substitution_image(rel, rel.params.k_prime), 0.0, 0.0};
    out.dist_k = projector_distance(out.image_k.ortho_basis, out.target.ortho_basis);
    out.dist_kp = projector_distance(out.image_kp.ortho_basis, out.target.ortho_basis);
    return out;
}

NegationResult negation_map(const RelationSpace& rel) {
    const int n = rel.params.n;
    std::vector<TensorVector> neg, swp;
    neg.reserve(rel.generators.size());
    swp.reserve(rel.generators.size());
    for (const auto& g : rel.generators) {
        TensorVector a = TensorVector::zero(2, n);
        TensorVector b = TensorVector::zero(2, n);
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) {
                a.at2(zmod(-long(p), n), zmod(-long(q), n)) += g.at2(p, q);
                b.at2(q, p) += g.at2(p, q);
            }
        neg.push_back(std::move(a));
        swp.push_back(std::move(b));
    }
    NegationResult out{relation_space(rel.params.with_tau(-rel.params.tau)),
                       space_from_generators(rel.params, neg),
                       space_from_generators(rel.params, swp), 0.0, 0.0};
    out.dist_negated = projector_distance(out.negated.ortho_basis, out.target.ortho_basis);
    out.dist_swapped = projector_distance(out.swapped.ortho_basis, out.target.ortho_basis);
    return out;
}

CMatrix commutator_basis(int n) {
    CMatrix B = CMatrix::Zero(n * n, n * (n - 1) / 2);
    const double s = 1.0 / std::sqrt(2.0);
    int c = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            B(i * n + j, c) = s;
            B(j * n + i, c) = -s;
            ++c;
        }
    return B;
}

CMatrix symmetric_pair_basis(int n) {
    CMatrix B = CMatrix::Zero(n * n, n * (n + 1) / 2);
    const double s = 1.0 / std::sqrt(2.0);
    int c = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            if (i == j) {
                B(i * n + i, c) = 1.0;
            } else {
                B(i * n + j, c) = s;
                B(j * n + i, c) = s;
            }
            ++c;
        }
    return B;
}

} // namespace ellq
