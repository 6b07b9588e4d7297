#include "typea/affine_core.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace typea {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InputDomain: return "input-domain";
        case ErrorKind::DegenerateRicci: return "degenerate-ricci";
        case ErrorKind::NumericFailure: return "numeric-failure";
        case ErrorKind::Misuse: return "misuse";
        case ErrorKind::InternalInconsistency: return "internal-inconsistency";
    }
    return "unknown";
}

namespace {

using Full = std::array<std::array<std::array<double, 2>, 2>, 2>;

Full expand(const ChristoffelSymbols& c) {
    Full g{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) g[i][j][k] = c(i, j, k);
    return g;
}

void require_finite(const ChristoffelSymbols& c) {
    if (!c.is_finite()) throw Error(ErrorKind::InputDomain, "Christoffel symbols must be finite");
}

}  // namespace

double ChristoffelSymbols::operator()(int i, int j, int k) const noexcept {
    if (i > j) std::swap(i, j);
    if (i == 0 && j == 0) return k == 0 ? c111 : c112;
    if (i == 0) return k == 0 ? c121 : c122;
    return k == 0 ? c221 : c222;
}

double& ChristoffelSymbols::at(int i, int j, int k) noexcept {
    if (i > j) std::swap(i, j);
    if (i == 0 && j == 0) return k == 0 ? c111 : c112;
    if (i == 0) return k == 0 ? c121 : c122;
    return k == 0 ? c221 : c222;
}

double ChristoffelSymbols::max_abs() const noexcept {
    return std::max({std::abs(c111), std::abs(c112), std::abs(c121), std::abs(c122),
                     std::abs(c221), std::abs(c222)});
}

bool ChristoffelSymbols::is_finite() const noexcept {
    return std::isfinite(c111) && std::isfinite(c112) && std::isfinite(c121) &&
           std::isfinite(c122) && std::isfinite(c221) && std::isfinite(c222);
}

double SymmetricBilinear::operator()(int i, int j) const noexcept {
    if (i == 0 && j == 0) return m11;
    if (i == 1 && j == 1) return m22;
    return m12;
}

double SymmetricBilinear::max_abs() const noexcept {
    return std::max({std::abs(m11), std::abs(m12), std::abs(m22)});
}

double SymmetricBilinear::apply(const Vec2& xi, const Vec2& eta) const noexcept {
    return m11 * xi[0] * eta[0] + m12 * (xi[0] * eta[1] + xi[1] * eta[0]) + m22 * xi[1] * eta[1];
}

double RicciDerivative::max_abs() const noexcept {
    double m = 0.0;
    for (const auto& a : d)
        for (const auto& b : a)
            for (double v : b) m = std::max(m, std::abs(v));
    return m;
}

double LinearMap::operator()(int r, int c) const noexcept {
    if (r == 0) return c == 0 ? t11 : t12;
    return c == 0 ? t21 : t22;
}

double LinearMap::max_abs() const noexcept {
    return std::max({std::abs(t11), std::abs(t12), std::abs(t21), std::abs(t22)});
}

bool LinearMap::is_invertible() const noexcept {
    const double scale = max_abs();
    return std::isfinite(det()) && std::abs(det()) > kInvertibilityTolerance * scale * scale &&
           scale > 0.0;
}

LinearMap LinearMap::inverse() const {
    if (!is_invertible()) throw Error(ErrorKind::InputDomain, "linear map is singular");
    const double inv = 1.0 / det();
    return {t22 * inv, -t12 * inv, -t21 * inv, t11 * inv};
}

Vec2 LinearMap::apply(const Vec2& x) const noexcept {
    return {t11 * x[0] + t12 * x[1], t21 * x[0] + t22 * x[1]};
}

LinearMap operator*(const LinearMap& a, const LinearMap& b) noexcept {
    return {a.t11 * b.t11 + a.t12 * b.t21, a.t11 * b.t12 + a.t12 * b.t22,
            a.t21 * b.t11 + a.t22 * b.t21, a.t21 * b.t12 + a.t22 * b.t22};
}

const char* to_string(Definiteness d) noexcept {
    switch (d) {
        case Definiteness::PositiveDefinite: return "positive_definite";
        case Definiteness::NegativeDefinite: return "negative_definite";
        case Definiteness::PositiveSemiRank1: return "positive_semidefinite_rank1";
        case Definiteness::NegativeSemiRank1: return "negative_semidefinite_rank1";
        case Definiteness::Indefinite: return "indefinite";
        case Definiteness::Zero: return "zero";
    }
    return "unknown";
}

SymmetricBilinear ricci(const ChristoffelSymbols& c) {
    require_finite(c);
    const Full g = expand(c);
    // trace[m] = Gamma_im^i
    const std::array<double, 2> trace{g[0][0][0] + g[1][0][1], g[0][1][0] + g[1][1][1]};
    auto component = [&](int j, int k) {
        double s = 0.0;
        for (int m = 0; m < 2; ++m) s += trace[m] * g[j][k][m];
        for (int i = 0; i < 2; ++i)
            for (int m = 0; m < 2; ++m) s -= g[j][m][i] * g[i][k][m];
        return s;
    };
    return {component(0, 0), component(0, 1), component(1, 1)};
}

RicciDerivative nabla_ricci(const ChristoffelSymbols& c) {
    const SymmetricBilinear rho = ricci(c);
    RicciDerivative out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            for (int k = j; k < 2; ++k) {
                double s = 0.0;
                for (int m = 0; m < 2; ++m) s -= c(i, j, m) * rho(m, k) + c(i, k, m) * rho(j, m);
                out.d[i][j][k] = s;
                out.d[i][k][j] = s;
            }
        }
    }
    return out;
}

std::array<double, 2> eigenvalues(const SymmetricBilinear& m) noexcept {
    const double mean = 0.5 * (m.m11 + m.m22);
    const double radius = std::hypot(0.5 * (m.m11 - m.m22), m.m12);
    double hi = mean + radius;
    double lo = mean - radius;
    // Recover the smaller-magnitude eigenvalue from the determinant when the
    // direct formula cancels.
    if (std::abs(hi) >= std::abs(lo)) {
        if (hi != 0.0) lo = m.det() / hi;
    } else {
        hi = m.det() / lo;
    }
    if (lo > hi) std::swap(lo, hi);
    return {lo, hi};
}

RankSignature rank_signature(const SymmetricBilinear& rho, double tol) {
    if (!(tol > 0.0)) throw Error(ErrorKind::InputDomain, "rank tolerance must be positive");
    const double threshold = tol * std::max(1.0, rho.max_abs());
    const auto ev = eigenvalues(rho);
    int pos = 0;
    int neg = 0;
    for (double l : ev) {
        if (l > threshold) ++pos;
        else if (l < -threshold) ++neg;
    }
    RankSignature out;
    out.rank = pos + neg;
    if (pos == 2) out.definiteness = Definiteness::PositiveDefinite;
    else if (neg == 2) out.definiteness = Definiteness::NegativeDefinite;
    else if (pos == 1 && neg == 1) out.definiteness = Definiteness::Indefinite;
    else if (pos == 1) out.definiteness = Definiteness::PositiveSemiRank1;
    else if (neg == 1) out.definiteness = Definiteness::NegativeSemiRank1;
    else out.definiteness = Definiteness::Zero;
    return out;
}

RicciReport ricci_report(const ChristoffelSymbols& c, double rank_tol, double symmetric_tol) {
    RicciReport r;
    r.rho = ricci(c);
    r.nabla_rho = nabla_ricci(c);
    const auto rs = rank_signature(r.rho, rank_tol);
    r.rank = rs.rank;
    r.definiteness = rs.definiteness;
    const double scale = std::max(1.0, c.max_abs() * r.rho.max_abs());
    r.is_symmetric_space = r.nabla_rho.max_abs() < symmetric_tol * scale;
    return r;
}

ChristoffelSymbols pushforward(const ChristoffelSymbols& c, const LinearMap& t) {
    require_finite(c);
    const LinearMap inv = t.inverse();
    // C'_ab^c = (T^-1)_ia (T^-1)_jb C_ij^k T_ck
    ChristoffelSymbols out;
    for (int a = 0; a < 2; ++a) {
        for (int b = a; b < 2; ++b) {
            for (int cc = 0; cc < 2; ++cc) {
                double s = 0.0;
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j)
                        for (int k = 0; k < 2; ++k) s += inv(i, a) * inv(j, b) * c(i, j, k) * t(cc, k);
                out.at(a, b, cc) = s;
            }
        }
    }
    return out;
}

SymmetricBilinear pullback_form(const SymmetricBilinear& rho, const LinearMap& t) {
    const LinearMap inv = t.inverse();
    auto component = [&](int a, int b) {
        double s = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) s += inv(i, a) * inv(j, b) * rho(i, j);
        return s;
    };
    return {component(0, 0), component(0, 1), component(1, 1)};
}

SymmetricBilinear rho_check(const ChristoffelSymbols& c) {
    require_finite(c);
    auto component = [&](int i, int j) {
        double s = 0.0;
        for (int k = 0; k < 2; ++k)
            for (int l = 0; l < 2; ++l) s += c(i, k, l) * c(j, l, k);
        return s;
    };
    return {component(0, 0), component(0, 1), component(1, 1)};
}

SigmaPsi invariants_sigma_psi(const ChristoffelSymbols& c, double tol) {
    const SymmetricBilinear rho = ricci(c);
    if (rank_signature(rho, tol).rank != 2)
        throw Error(ErrorKind::DegenerateRicci, "Sigma and Psi need a rank-2 Ricci tensor");
    const SymmetricBilinear chk = rho_check(c);
    const double det = rho.det();
    SigmaPsi out;
    out.sigma = (rho.m22 * chk.m11 - 2.0 * rho.m12 * chk.m12 + rho.m11 * chk.m22) / det;
    out.psi = chk.det() / det;
    return out;
}

const char* to_string(CanonicalFamily f) noexcept {
    switch (f) {
        case CanonicalFamily::M1: return "M1";
        case CanonicalFamily::M2: return "M2";
        case CanonicalFamily::M3: return "M3";
        case CanonicalFamily::MPlus: return "M+";
        case CanonicalFamily::MMinus: return "M-";
    }
    return "unknown";
}

ChristoffelSymbols canonical_model(CanonicalFamily family, double delta) {
    ChristoffelSymbols c;
    switch (family) {
        case CanonicalFamily::M1:
            c.c111 = -1.0;
            c.c121 = -0.5;
            break;
        case CanonicalFamily::M2:
            c.c121 = -0.5;
            break;
        case CanonicalFamily::M3:
            c.c111 = -1.0;
            c.c221 = -1.0;
            break;
        case CanonicalFamily::MPlus:
        case CanonicalFamily::MMinus:
            if (!(delta >= 0.0) || !std::isfinite(delta))
                throw Error(ErrorKind::InputDomain, "delta must be finite and nonnegative");
            c.c112 = family == CanonicalFamily::MPlus ? 1.0 : -1.0;
            c.c121 = 0.5;
            c.c122 = 0.5 * delta;
            break;
    }
    return c;
}

namespace {

bool is_generic(const ChristoffelSymbols& c) {
    const double threshold = kGenericityThreshold * c.max_abs();
    for (double v : {c.c111, c.c112, c.c121, c.c122, c.c221, c.c222})
        if (!(std::abs(v) > threshold)) return false;
    return true;
}

// +-1, +-1/2, +-1/3, ... rotated by seed.
std::vector<double> shear_candidates(std::uint64_t seed) {
    constexpr int kDenominators = 24;
    std::vector<double> base;
    base.reserve(2 * kDenominators);
    for (int n = 1; n <= kDenominators; ++n) {
        base.push_back(1.0 / n);
        base.push_back(-1.0 / n);
    }
    std::rotate(base.begin(), base.begin() + static_cast<std::ptrdiff_t>(seed % base.size()),
                base.end());
    return base;
}

}  // namespace

NormalizedModel normalize_generic(const ChristoffelSymbols& c, std::uint64_t seed) {
    if (rank_signature(ricci(c)).rank != 2)
        throw Error(ErrorKind::DegenerateRicci, "genericity normalization needs a rank-2 Ricci tensor");
    if (is_generic(c)) return {c, LinearMap::identity()};

    const auto candidates = shear_candidates(seed);

    // Stage 1: make C_22^1 nonzero with T_eps; its value is a cubic in eps.
    std::vector<LinearMap> first_stage;
    if (std::abs(c.c221) > kGenericityThreshold * c.max_abs()) {
        first_stage.push_back(LinearMap::identity());
    } else {
        for (double eps : candidates) {
            const LinearMap t = LinearMap::shear_t(eps);
            const ChristoffelSymbols ct = pushforward(c, t);
            if (std::abs(ct.c221) > kGenericityThreshold * ct.max_abs()) first_stage.push_back(t);
        }
    }
    // Stage 2: S_eps keeps C_22^1 and turns the other five into nontrivial
    // polynomials in eps.
    for (const LinearMap& t : first_stage) {
        const ChristoffelSymbols ct = pushforward(c, t);
        if (is_generic(ct)) return {ct, t};
        for (double eps : candidates) {
            const LinearMap st = LinearMap::shear_s(eps) * t;
            const ChristoffelSymbols cs = pushforward(c, st);
            if (is_generic(cs)) return {cs, st};
        }
    }
    throw Error(ErrorKind::NumericFailure, "no shear in the candidate budget made every symbol nonzero");
}

}  // namespace typea
