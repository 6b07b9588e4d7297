#pragma once

// Value types and tensor algebra for Type A models: connections on R^2 whose
// Christoffel symbols C_ij^k are constant.
//
// Index convention: indices are 0-based in code (0 <-> 1, 1 <-> 2 in the
// usual notation). Lower indices are the first two, the upper index is last.

#include <array>
#include <cstdint>
#include <string>

#include "typea/error.hpp"

namespace typea {

using Vec2 = std::array<double, 2>;

/// The six independent Christoffel symbols of a torsion-free connection with
/// constant coefficients. Field cIJK stores C_{IJ}^K for I <= J; the entries
/// with I > J are implied by symmetry and never stored.
struct ChristoffelSymbols {
    double c111 = 0.0;
    double c112 = 0.0;
    double c121 = 0.0;
    double c122 = 0.0;
    double c221 = 0.0;
    double c222 = 0.0;

    /// C_{ij}^k with 0-based indices; symmetric in (i, j).
    double operator()(int i, int j, int k) const noexcept;
    /// Mutable access to the stored entry representing C_{ij}^k = C_{ji}^k.
    double& at(int i, int j, int k) noexcept;

    double max_abs() const noexcept;
    bool is_finite() const noexcept;

    friend bool operator==(const ChristoffelSymbols&, const ChristoffelSymbols&) = default;
};

/// Symmetric 2x2 matrix (m11, m12 = m21, m22).
struct SymmetricBilinear {
    double m11 = 0.0;
    double m12 = 0.0;
    double m22 = 0.0;

    double operator()(int i, int j) const noexcept;
    double det() const noexcept { return m11 * m22 - m12 * m12; }
    double trace() const noexcept { return m11 + m22; }
    double max_abs() const noexcept;
    /// Evaluates the form on (xi, eta).
    double apply(const Vec2& xi, const Vec2& eta) const noexcept;

    friend bool operator==(const SymmetricBilinear&, const SymmetricBilinear&) = default;
};

/// Components nabla_i rho_jk, symmetric in (j, k).
struct RicciDerivative {
    std::array<std::array<std::array<double, 2>, 2>, 2> d{};

    double operator()(int i, int j, int k) const noexcept { return d[i][j][k]; }
    double max_abs() const noexcept;
};

/// Invertible 2x2 matrix; as a change of coordinates it means w = T x.
struct LinearMap {
    double t11 = 1.0;
    double t12 = 0.0;
    double t21 = 0.0;
    double t22 = 1.0;

    static LinearMap identity() noexcept { return {}; }
    /// T_eps: (x1, x2) -> (x1 + eps x2, x2).
    static LinearMap shear_t(double eps) noexcept { return {1.0, eps, 0.0, 1.0}; }
    /// S_eps: (x1, x2) -> (x1, eps x1 + x2).
    static LinearMap shear_s(double eps) noexcept { return {1.0, 0.0, eps, 1.0}; }

    double operator()(int r, int c) const noexcept;
    double det() const noexcept { return t11 * t22 - t12 * t21; }
    double max_abs() const noexcept;
    bool is_invertible() const noexcept;
    /// Throws InputDomain when the map is numerically singular.
    LinearMap inverse() const;
    Vec2 apply(const Vec2& x) const noexcept;

    friend LinearMap operator*(const LinearMap& a, const LinearMap& b) noexcept;
    friend bool operator==(const LinearMap&, const LinearMap&) = default;
};

/// |det T| must exceed this times max|T_ij|^2.
inline constexpr double kInvertibilityTolerance = 1e-12;
inline constexpr double kDefaultRankTolerance = 1e-10;
inline constexpr double kDefaultSymmetricTolerance = 1e-9;

enum class Definiteness {
    PositiveDefinite,
    NegativeDefinite,
    PositiveSemiRank1,
    NegativeSemiRank1,
    Indefinite,
    Zero,
};

const char* to_string(Definiteness d) noexcept;

struct RankSignature {
    int rank = 0;
    Definiteness definiteness = Definiteness::Zero;
};

struct RicciReport {
    SymmetricBilinear rho;
    RicciDerivative nabla_rho;
    int rank = 0;
    Definiteness definiteness = Definiteness::Zero;
    bool is_symmetric_space = false;
};

/// Ricci tensor rho_jk = R_ijk^i with
/// R_ijk^l = Gamma_im^l Gamma_jk^m - Gamma_jm^l Gamma_ik^m.
SymmetricBilinear ricci(const ChristoffelSymbols& c);

/// nabla_i rho_jk = -Gamma_ij^m rho_mk - Gamma_ik^m rho_jm.
RicciDerivative nabla_ricci(const ChristoffelSymbols& c);

/// Rank and definiteness from the closed-form eigenvalues. An eigenvalue
/// counts as nonzero when |lambda| > tol * max(1, max|rho_ij|).
RankSignature rank_signature(const SymmetricBilinear& rho, double tol = kDefaultRankTolerance);

/// Eigenvalues in ascending order.
std::array<double, 2> eigenvalues(const SymmetricBilinear& m) noexcept;

/// Full report; nabla rho counts as zero when its largest component is below
/// symmetric_tol * max(1, |C| |rho|).
RicciReport ricci_report(const ChristoffelSymbols& c,
                         double rank_tol = kDefaultRankTolerance,
                         double symmetric_tol = kDefaultSymmetricTolerance);

/// Christoffel symbols of the same connection in the coordinates w = T x.
ChristoffelSymbols pushforward(const ChristoffelSymbols& c, const LinearMap& t);

/// Bilinear form expressed in the coordinates w = T x: rho' = T^{-T} rho T^{-1}.
SymmetricBilinear pullback_form(const SymmetricBilinear& rho, const LinearMap& t);

/// rho_check_ij = Gamma_ik^l Gamma_jl^k.
SymmetricBilinear rho_check(const ChristoffelSymbols& c);

struct SigmaPsi {
    double sigma = 0.0;
    double psi = 0.0;
};

/// Sigma = rho^ij rho_check_ij and Psi = det(rho_check) / det(rho).
/// Throws DegenerateRicci unless rank(rho) = 2 at tolerance tol.
SigmaPsi invariants_sigma_psi(const ChristoffelSymbols& c, double tol = kDefaultRankTolerance);

enum class CanonicalFamily { M1, M2, M3, MPlus, MMinus };

const char* to_string(CanonicalFamily f) noexcept;

/// The canonical constant tables. delta is used by MPlus / MMinus only and
/// must be nonnegative.
ChristoffelSymbols canonical_model(CanonicalFamily family, double delta = 0.0);

struct NormalizedModel {
    ChristoffelSymbols symbols;
    LinearMap transform;  // symbols == pushforward(original, transform)
};

inline constexpr double kGenericityThreshold = 1e-3;

/// Composes shears T_eps and S_eps until every entry satisfies
/// |C'_ij^k| > kGenericityThreshold * max|C'|. The eps candidates are
/// +-1, +-1/2, +-1/3, ... visited in an order rotated by seed.
NormalizedModel normalize_generic(const ChristoffelSymbols& c, std::uint64_t seed = 0);

}  // namespace typea
