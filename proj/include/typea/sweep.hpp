#pragma once

// Cross-check of the algebraic verdict against numerical integration on
// random rank-2 models.
//
// Incomplete verdicts: the geodesic from x = 0 with velocity equal to the
// witness (a, b) is (a, b) log(1 + t), so 1 / |v| = (1 + t) / |(a, b)| is
// linear and vanishes at t = -1. It is integrated backward over a window
// [0, -W], the reciprocal speed is fitted by a line, and the case agrees when
// the fit is linear to linearity_tolerance and its zero lies within
// escape_tolerance of -1.
// The ray is repelling in backward time: writing v = (w + p) / (1 + t), a
// transverse p grows like (1 + t)^-k with k = tr D - 3, D^k_j = 2 G_ij^k w^i.
// Integrating to the singularity would leave the ray through roundoff, so W is
// the largest window, capped at witness_window, over which that growth stays
// below drift_budget.
// Complete verdicts: survival_trials geodesics from x = 0 with |v| <= 1 must
// all reach the horizon.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "typea/completeness.hpp"
#include "typea/integrator.hpp"

namespace typea {

struct SweepOptions {
    int count = 200;
    std::uint64_t seed = 7;
    double horizon = 200.0;
    double entry_bound = 2.0;
    double rank_tolerance = 1e-8;
    double escape_tolerance = 1e-2;
    double witness_window = 0.5;
    double drift_budget = 1e4;
    double linearity_tolerance = 1e-6;
    int survival_trials = 50;
    /// Checked before the random models; they count toward count.
    std::vector<ChristoffelSymbols> injections;
};

struct SweepCase {
    int index = 0;
    ChristoffelSymbols model;
    bool injected = false;
    BranchKind branch = BranchKind::FlatUndetermined;
    std::optional<LogGeodesicSolution> witness;
    std::optional<double> delta;
    Termination termination = Termination::HorizonReached;  // witness run, or first failing survival run
    std::optional<double> escape_estimate;
    std::optional<double> linearity_residual;  // max |1/|v| - fit| / max 1/|v| on the witness run
    int survived = 0;
    bool agree = false;
};

struct SweepReport {
    SweepOptions options;
    std::vector<SweepCase> cases;

    int agreements() const noexcept;
    int disagreements() const noexcept { return static_cast<int>(cases.size()) - agreements(); }
};

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw; identical
/// on every platform, unlike std::uniform_real_distribution.
double unit_uniform(std::mt19937_64& rng) noexcept;

/// Entries uniform in [-bound, bound], redrawn until rank(rho) = 2 at rank_tolerance.
ChristoffelSymbols random_rank2_model(std::mt19937_64& rng, double bound, double rank_tolerance);

/// Growth exponent k of transverse perturbations of the ray through v0 under
/// backward integration; at most zero when the ray is not repelling.
double ray_repulsion_exponent(const ChristoffelSymbols& c, const Vec2& v0);

/// Window W <= cap with (1 - W)^-k <= budget for k = ray_repulsion_exponent.
double witness_fit_window(const ChristoffelSymbols& c, const Vec2& v0, double cap, double budget);

/// Escape estimate and relative linearity residual of 1 / |v| along the
/// backward run from x = 0 with initial velocity v0; empty when the run does
/// not reach -window.
struct ReciprocalSpeedFit {
    double escape = 0.0;
    double residual = 0.0;
};
std::optional<ReciprocalSpeedFit> reciprocal_speed_fit(const ChristoffelSymbols& c, const Vec2& v0, double window,
                                                       Termination* termination = nullptr);

/// Throws InputDomain for count < 1, a nonpositive horizon, more injections
/// than count, or an injected model whose Ricci tensor is not of rank 2.
SweepReport run_sweep(const SweepOptions& options);

nlohmann::ordered_json sweep_report_json(const SweepReport& report);

}  // namespace typea
