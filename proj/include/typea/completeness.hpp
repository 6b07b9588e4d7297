#pragma once

// Geodesic completeness of Type A models.
//
// The decision procedure:
//   rank(rho) = 0  -> flat, no verdict (log-geodesic witnesses still reported)
//   rank(rho) = 1  -> essentially incomplete unless nabla rho = 0; the
//                     symmetric ones are linearly M1, M2 or M3
//   rank(rho) = 2  -> incomplete iff a geodesic (a, b) log t exists;
//                     otherwise linearly equivalent to M-(delta), 0 <= delta < 2

#include <array>
#include <optional>
#include <variant>
#include <vector>

#include "typea/affine_core.hpp"

namespace typea {

/// Coefficient arrays in increasing degree:
///   e1 = E_1(1, l) = C_11^1 + 2 l C_12^1 + l^2 C_22^1
///   e2 = E_2(1, l) = C_11^2 + 2 l C_12^2 + l^2 C_22^2
///   e3 = E_3(l)    = l E_1(1, l) - E_2(1, l)
struct EPolynomials {
    std::array<double, 3> e1{};
    std::array<double, 3> e2{};
    std::array<double, 4> e3{};
};

EPolynomials e_polynomials(const ChristoffelSymbols& c) noexcept;

/// E_i(a, b) = a^2 C_11^i + 2 a b C_12^i + b^2 C_22^i for i = 0, 1.
Vec2 e_values(const ChristoffelSymbols& c, double a, double b) noexcept;

/// A nonzero (a, b) with a = E_1(a, b) and b = E_2(a, b), i.e. the curve
/// (a, b) log t is a geodesic.
struct LogGeodesicSolution {
    double a = 0.0;
    double b = 0.0;
    std::optional<double> lambda;  // b / a; empty on the a = 0 branch
    bool family = false;           // representative of a one-parameter family
    double residual = 0.0;         // max(|a - E_1|, |b - E_2|)
};

inline constexpr double kDefaultRootTolerance = 1e-9;

/// max(|a - E_1(a,b)|, |b - E_2(a,b)|)
double log_geodesic_residual(const ChristoffelSymbols& c, double a, double b) noexcept;

/// All nonzero real solutions, ordered by lambda ascending with the a = 0
/// solution last. Every entry has residual <= tol * max(1, |a| + |b|).
std::vector<LogGeodesicSolution> log_geodesic_solutions(const ChristoffelSymbols& c,
                                                        double tol = kDefaultRootTolerance);

enum class SymmetricModel { M1, M2, M3 };

const char* to_string(SymmetricModel m) noexcept;

struct Tolerances {
    double rank = kDefaultRankTolerance;
    double symmetric = kDefaultSymmetricTolerance;
    double root = kDefaultRootTolerance;
    double invariant = 1e-6;  // |Psi - 2| and the delta range check
};

struct FlatUndetermined {
    std::vector<LogGeodesicSolution> log_solutions;
};
struct Rank1NonSymmetric {};
struct Rank1Symmetric {
    SymmetricModel model = SymmetricModel::M2;
    bool model_complete = false;
    bool essentially_complete = true;
};
struct Rank2Incomplete {
    LogGeodesicSolution witness;
    std::vector<LogGeodesicSolution> all;
};
struct Rank2Complete {
    double delta = 0.0;
};

using VerdictBranch =
    std::variant<FlatUndetermined, Rank1NonSymmetric, Rank1Symmetric, Rank2Incomplete, Rank2Complete>;

enum class BranchKind { FlatUndetermined, Rank1NonSymmetric, Rank1Symmetric, Rank2Incomplete, Rank2Complete };

const char* to_string(BranchKind k) noexcept;

struct CompletenessVerdict {
    VerdictBranch branch;
    RicciReport ricci;
    std::optional<SigmaPsi> invariants;  // rank 2 only

    BranchKind kind() const noexcept;
    /// Geodesic completeness of the model itself; empty for flat models.
    std::optional<bool> model_complete() const noexcept;
    /// Whether some surface modeled on it is complete; empty for flat models.
    std::optional<bool> essentially_complete() const noexcept;
    /// Log-geodesic solutions carried by the verdict (empty if none).
    const std::vector<LogGeodesicSolution>& witnesses() const noexcept;
};

CompletenessVerdict classify(const ChristoffelSymbols& c, const Tolerances& tol = {});

/// Requires rank(rho) = 1 and nabla rho = 0, else throws Misuse.
SymmetricModel identify_symmetric_model(const ChristoffelSymbols& c, const Tolerances& tol = {});

/// delta = sqrt((Sigma + 3) / 2) for a model linearly equivalent to M-(delta).
/// Throws InternalInconsistency when Psi != 2 or delta leaves [0, 2).
double recover_delta(const ChristoffelSymbols& c, const Tolerances& tol = {});

/// Same Ricci definiteness and (Sigma, Psi) within tol (relative to
/// max(1, |value|)). Throws DegenerateRicci if either model has rank < 2.
bool is_linearly_isomorphic_rank2(const ChristoffelSymbols& c, const ChristoffelSymbols& other,
                                  double tol = 1e-8);

}  // namespace typea
