#include "typea/completeness.hpp"

#include <algorithm>
#include <cmath>

#include "typea/polynomial.hpp"

namespace typea {

EPolynomials e_polynomials(const ChristoffelSymbols& c) noexcept {
    EPolynomials e;
    e.e1 = {c.c111, 2.0 * c.c121, c.c221};
    e.e2 = {c.c112, 2.0 * c.c122, c.c222};
    e.e3 = {-c.c112, c.c111 - 2.0 * c.c122, 2.0 * c.c121 - c.c222, c.c221};
    return e;
}

Vec2 e_values(const ChristoffelSymbols& c, double a, double b) noexcept {
    return {a * a * c.c111 + 2.0 * a * b * c.c121 + b * b * c.c221,
            a * a * c.c112 + 2.0 * a * b * c.c122 + b * b * c.c222};
}

double log_geodesic_residual(const ChristoffelSymbols& c, double a, double b) noexcept {
    const Vec2 e = e_values(c, a, b);
    return std::max(std::abs(a - e[0]), std::abs(b - e[1]));
}

namespace {

// Nonzero test for E_1(1, lambda).
bool clearly_nonzero(const std::array<double, 3>& e1, double lambda, double value) {
    const double norm = std::max({std::abs(e1[0]), std::abs(e1[1]), std::abs(e1[2])});
    return std::abs(value) > 1e-9 * (1.0 + norm * std::max(1.0, lambda * lambda));
}

bool same_solution(const LogGeodesicSolution& x, const LogGeodesicSolution& y) {
    const double scale = std::max(1.0, std::abs(x.a) + std::abs(x.b));
    return std::abs(x.a - y.a) + std::abs(x.b - y.b) <= 1e-7 * scale;
}

}  // namespace

std::vector<LogGeodesicSolution> log_geodesic_solutions(const ChristoffelSymbols& c, double tol) {
    if (!c.is_finite()) throw Error(ErrorKind::InputDomain, "Christoffel symbols must be finite");
    const EPolynomials e = e_polynomials(c);
    std::vector<LogGeodesicSolution> found;

    auto consider = [&](double a, double b, std::optional<double> lambda, bool family) {
        if (a == 0.0 && b == 0.0) return;
        if (!std::isfinite(a) || !std::isfinite(b)) return;
        const double residual = log_geodesic_residual(c, a, b);
        if (residual > tol * std::max(1.0, std::abs(a) + std::abs(b))) return;
        found.push_back({a, b, lambda, family, residual});
    };
    auto from_lambda = [&](double lambda, bool family) {
        const double e1 = evaluate_polynomial(e.e1, lambda);
        if (!clearly_nonzero(e.e1, lambda, e1)) return;
        const double a = 1.0 / e1;
        consider(a, lambda * a, lambda, family);
    };

    const PolynomialRoots roots = real_roots(e.e3);
    if (roots.identically_zero) {
        for (double lambda : {-2.0, -1.0, 0.0, 1.0, 2.0}) from_lambda(lambda, true);
    } else {
        for (const RealRoot& r : roots.roots) from_lambda(r.value, false);
    }

    // a = 0 forces C_22^1 b^2 = 0 and b = C_22^2 b^2.
    const double zero_scale = 1e-12 * std::max(1.0, c.max_abs());
    if (std::abs(c.c221) <= zero_scale && std::abs(c.c222) > zero_scale)
        consider(0.0, 1.0 / c.c222, std::nullopt, false);

    std::stable_sort(found.begin(), found.end(), [](const auto& x, const auto& y) {
        if (x.lambda.has_value() != y.lambda.has_value()) return x.lambda.has_value();
        return x.lambda.has_value() && *x.lambda < *y.lambda;
    });
    std::vector<LogGeodesicSolution> out;
    for (const auto& s : found) {
        const bool duplicate =
            std::any_of(out.begin(), out.end(), [&](const auto& kept) { return same_solution(kept, s); });
        if (!duplicate) out.push_back(s);
    }
    return out;
}

const char* to_string(SymmetricModel m) noexcept {
    switch (m) {
        case SymmetricModel::M1: return "M1";
        case SymmetricModel::M2: return "M2";
        case SymmetricModel::M3: return "M3";
    }
    return "unknown";
}

const char* to_string(BranchKind k) noexcept {
    switch (k) {
        case BranchKind::FlatUndetermined: return "flat_undetermined";
        case BranchKind::Rank1NonSymmetric: return "rank1_nonsymmetric";
        case BranchKind::Rank1Symmetric: return "rank1_symmetric";
        case BranchKind::Rank2Incomplete: return "rank2_incomplete";
        case BranchKind::Rank2Complete: return "rank2_complete";
    }
    return "unknown";
}

BranchKind CompletenessVerdict::kind() const noexcept {
    return static_cast<BranchKind>(branch.index());
}

std::optional<bool> CompletenessVerdict::model_complete() const noexcept {
    switch (kind()) {
        case BranchKind::FlatUndetermined: return std::nullopt;
        case BranchKind::Rank1NonSymmetric: return false;
        case BranchKind::Rank1Symmetric: return std::get<Rank1Symmetric>(branch).model_complete;
        case BranchKind::Rank2Incomplete: return false;
        case BranchKind::Rank2Complete: return true;
    }
    return std::nullopt;
}

std::optional<bool> CompletenessVerdict::essentially_complete() const noexcept {
    switch (kind()) {
        case BranchKind::FlatUndetermined: return std::nullopt;
        case BranchKind::Rank1NonSymmetric: return false;
        case BranchKind::Rank1Symmetric: return std::get<Rank1Symmetric>(branch).essentially_complete;
        case BranchKind::Rank2Incomplete: return false;
        case BranchKind::Rank2Complete: return true;
    }
    return std::nullopt;
}

const std::vector<LogGeodesicSolution>& CompletenessVerdict::witnesses() const noexcept {
    static const std::vector<LogGeodesicSolution> kNone;
    if (const auto* f = std::get_if<FlatUndetermined>(&branch)) return f->log_solutions;
    if (const auto* r = std::get_if<Rank2Incomplete>(&branch)) return r->all;
    return kNone;
}

SymmetricModel identify_symmetric_model(const ChristoffelSymbols& c, const Tolerances& tol) {
    const RicciReport report = ricci_report(c, tol.rank, tol.symmetric);
    if (report.rank != 1 || !report.is_symmetric_space)
        throw Error(ErrorKind::Misuse, "symmetric model identification needs rank-1 Ricci with nabla rho = 0");
    if (report.definiteness == Definiteness::PositiveSemiRank1) return SymmetricModel::M3;
    // A linear map carries log-geodesics to log-geodesics, so witness
    // existence separates M1 from M2.
    return log_geodesic_solutions(c, tol.root).empty() ? SymmetricModel::M2 : SymmetricModel::M1;
}

double recover_delta(const ChristoffelSymbols& c, const Tolerances& tol) {
    const SigmaPsi inv = invariants_sigma_psi(c, tol.rank);
    if (!(std::abs(inv.psi - 2.0) < tol.invariant))
        throw Error(ErrorKind::InternalInconsistency,
                    "Psi = " + std::to_string(inv.psi) + " does not match the M-(delta) family");
    double delta_sq = 0.5 * (inv.sigma + 3.0);
    if (delta_sq < 0.0 && delta_sq > -tol.invariant) delta_sq = 0.0;
    if (!(delta_sq >= 0.0 && delta_sq < 4.0))
        throw Error(ErrorKind::InternalInconsistency,
                    "(Sigma + 3) / 2 = " + std::to_string(delta_sq) + " is outside [0, 4)");
    return std::sqrt(delta_sq);
}

bool is_linearly_isomorphic_rank2(const ChristoffelSymbols& c, const ChristoffelSymbols& other, double tol) {
    const RankSignature rs1 = rank_signature(ricci(c));
    const RankSignature rs2 = rank_signature(ricci(other));
    if (rs1.rank != 2 || rs2.rank != 2)
        throw Error(ErrorKind::DegenerateRicci, "linear isomorphism test needs rank-2 Ricci tensors");
    if (rs1.definiteness != rs2.definiteness) return false;
    const SigmaPsi x = invariants_sigma_psi(c);
    const SigmaPsi y = invariants_sigma_psi(other);
    auto close = [tol](double p, double q) {
        return std::abs(p - q) <= tol * std::max({1.0, std::abs(p), std::abs(q)});
    };
    return close(x.sigma, y.sigma) && close(x.psi, y.psi);
}

CompletenessVerdict classify(const ChristoffelSymbols& c, const Tolerances& tol) {
    CompletenessVerdict v{FlatUndetermined{}, ricci_report(c, tol.rank, tol.symmetric), std::nullopt};
    switch (v.ricci.rank) {
        case 0:
            v.branch = FlatUndetermined{log_geodesic_solutions(c, tol.root)};
            break;
        case 1:
            if (!v.ricci.is_symmetric_space) {
                v.branch = Rank1NonSymmetric{};
            } else {
                const SymmetricModel m = identify_symmetric_model(c, tol);
                v.branch = Rank1Symmetric{m, m == SymmetricModel::M2, true};
            }
            break;
        default: {
            v.invariants = invariants_sigma_psi(c, tol.rank);
            auto solutions = log_geodesic_solutions(c, tol.root);
            if (!solutions.empty()) {
                const LogGeodesicSolution witness = solutions.front();
                v.branch = Rank2Incomplete{witness, std::move(solutions)};
            } else {
                v.branch = Rank2Complete{recover_delta(c, tol)};
            }
            break;
        }
    }
    return v;
}

}  // namespace typea
