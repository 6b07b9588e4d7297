#include "typea/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "typea/geodesic.hpp"
#include "typea/model_io.hpp"

namespace typea {

int SweepReport::agreements() const noexcept {
    int n = 0;
    for (const SweepCase& c : cases) n += c.agree ? 1 : 0;
    return n;
}

double unit_uniform(std::mt19937_64& rng) noexcept {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

ChristoffelSymbols random_rank2_model(std::mt19937_64& rng, double bound, double rank_tolerance) {
    for (;;) {
        ChristoffelSymbols c;
        for (double* entry : {&c.c111, &c.c112, &c.c121, &c.c122, &c.c221, &c.c222})
            *entry = bound * (2.0 * unit_uniform(rng) - 1.0);
        if (rank_signature(ricci(c), rank_tolerance).rank == 2) return c;
    }
}

double ray_repulsion_exponent(const ChristoffelSymbols& c, const Vec2& v0) {
    double trace = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) trace += 2.0 * c(i, k, k) * v0[i];
    return trace - 3.0;
}

double witness_fit_window(const ChristoffelSymbols& c, const Vec2& v0, double cap, double budget) {
    if (!(cap > 0.0 && cap < 1.0) || !(budget > 1.0)) throw Error(ErrorKind::InputDomain, "bad fit window bounds");
    const double k = ray_repulsion_exponent(c, v0);
    if (!(k > 0.0)) return cap;
    return std::min(cap, -std::expm1(-std::log(budget) / k));
}

std::optional<ReciprocalSpeedFit> reciprocal_speed_fit(const ChristoffelSymbols& c, const Vec2& v0, double window,
                                                       Termination* termination) {
    if (!(window > 0.0) || !std::isfinite(window)) throw Error(ErrorKind::InputDomain, "fit window must be positive");
    constexpr int kSamples = 50;
    IntegrateOptions opts;
    opts.abs_tol = opts.rel_tol = 1e-12;
    for (int i = 1; i < kSamples; ++i) opts.sample_times.push_back(-window * i / kSamples);
    const Trajectory tr = integrate(ConstantModel{c}, {{0.0, 0.0}, v0}, 0.0, -window, opts);
    if (termination) *termination = tr.termination;
    if (tr.termination != Termination::HorizonReached) return std::nullopt;

    double st = 0.0, sy = 0.0, ymax = 0.0;
    std::vector<std::pair<double, double>> pts;
    for (const TrajectorySample& s : tr.samples) {
        const double speed = std::hypot(s.v[0], s.v[1]);
        if (!(speed > 0.0)) return std::nullopt;
        pts.emplace_back(s.t, 1.0 / speed);
        st += s.t;
        sy += 1.0 / speed;
        ymax = std::max(ymax, 1.0 / speed);
    }
    const double n = static_cast<double>(pts.size());
    const double mt = st / n, my = sy / n;
    double stt = 0.0, sty = 0.0;
    for (const auto& [t, y] : pts) {
        stt += (t - mt) * (t - mt);
        sty += (t - mt) * (y - my);
    }
    const double slope = sty / stt;
    if (!(slope != 0.0) || !std::isfinite(slope)) return std::nullopt;
    const double intercept = my - slope * mt;
    double worst = 0.0;
    for (const auto& [t, y] : pts) worst = std::max(worst, std::abs(y - (intercept + slope * t)));
    return ReciprocalSpeedFit{-intercept / slope, worst / ymax};
}

namespace {

void check_witness(SweepCase& out, const SweepOptions& options) {
    const LogGeodesicSolution& w = *out.witness;
    const auto fit = reciprocal_speed_fit(
        out.model, {w.a, w.b},
        witness_fit_window(out.model, {w.a, w.b}, options.witness_window, options.drift_budget), &out.termination);
    if (!fit) return;
    out.escape_estimate = fit->escape;
    out.linearity_residual = fit->residual;
    out.agree = fit->residual <= options.linearity_tolerance &&
                std::abs(fit->escape + 1.0) <= options.escape_tolerance;
}

void check_survival(SweepCase& out, const SweepOptions& options, std::mt19937_64& rng) {
    IntegrateOptions opts;
    opts.sample_times = {0.5 * options.horizon};
    out.agree = true;
    for (int trial = 0; trial < options.survival_trials; ++trial) {
        const double angle = 2.0 * std::numbers::pi * unit_uniform(rng);
        const double radius = std::sqrt(unit_uniform(rng));
        const Vec2 v0{radius * std::cos(angle), radius * std::sin(angle)};
        const Trajectory tr = integrate(ConstantModel{out.model}, {{0.0, 0.0}, v0}, 0.0, options.horizon, opts);
        if (tr.termination != Termination::HorizonReached) {
            out.termination = tr.termination;
            out.escape_estimate = tr.escape_time;
            out.agree = false;
            return;
        }
        ++out.survived;
    }
}

}  // namespace

SweepReport run_sweep(const SweepOptions& options) {
    if (options.count < 1) throw Error(ErrorKind::InputDomain, "sweep count must be at least 1");
    if (!(options.horizon > 0.0) || !std::isfinite(options.horizon))
        throw Error(ErrorKind::InputDomain, "sweep horizon must be positive");
    if (static_cast<int>(options.injections.size()) > options.count)
        throw Error(ErrorKind::InputDomain, "more injected models than the sweep count");
    if (options.survival_trials < 1) throw Error(ErrorKind::InputDomain, "survival trials must be positive");

    SweepReport report;
    report.options = options;
    std::mt19937_64 model_rng(options.seed);
    std::mt19937_64 trial_rng(options.seed ^ 0x9e3779b97f4a7c15ULL);
    for (int i = 0; i < options.count; ++i) {
        SweepCase sc;
        sc.index = i;
        sc.injected = i < static_cast<int>(options.injections.size());
        sc.model = sc.injected ? options.injections[static_cast<std::size_t>(i)]
                               : random_rank2_model(model_rng, options.entry_bound, options.rank_tolerance);
        if (sc.injected && rank_signature(ricci(sc.model), kDefaultRankTolerance).rank != 2)
            throw Error(ErrorKind::InputDomain, "injected sweep models need rank-2 Ricci tensors");

        const CompletenessVerdict verdict = classify(sc.model);
        sc.branch = verdict.kind();
        if (const auto* inc = std::get_if<Rank2Incomplete>(&verdict.branch)) {
            sc.witness = inc->witness;
            check_witness(sc, options);
        } else if (const auto* comp = std::get_if<Rank2Complete>(&verdict.branch)) {
            sc.delta = comp->delta;
            check_survival(sc, options, trial_rng);
        } else {
            throw Error(ErrorKind::InternalInconsistency, "rank-2 model classified outside the rank-2 branches");
        }
        report.cases.push_back(std::move(sc));
    }
    return report;
}

nlohmann::ordered_json sweep_report_json(const SweepReport& report) {
    using Json = nlohmann::ordered_json;
    const auto model_json = [](const ChristoffelSymbols& c) { return Json::parse(serialize_model_document({c, {}})); };
    Json j = Json::object();
    j["count"] = report.options.count;
    j["seed"] = report.options.seed;
    j["horizon"] = report.options.horizon;
    j["agreements"] = report.agreements();
    j["disagreements"] = report.disagreements();
    int incomplete = 0, complete = 0;
    for (const SweepCase& c : report.cases) (c.branch == BranchKind::Rank2Incomplete ? incomplete : complete) += 1;
    j["incomplete_verdicts"] = incomplete;
    j["complete_verdicts"] = complete;

    Json cases = Json::array();
    Json failures = Json::array();
    for (const SweepCase& c : report.cases) {
        Json row = Json::object();
        row["index"] = c.index;
        row["injected"] = c.injected;
        row["branch"] = to_string(c.branch);
        if (c.witness) row["witness"] = Json{{"a", c.witness->a}, {"b", c.witness->b}};
        if (c.delta) row["delta"] = *c.delta;
        row["termination"] = to_string(c.termination);
        row["escape"] = c.escape_estimate ? Json(*c.escape_estimate) : Json(nullptr);
        if (c.linearity_residual) row["linearity_residual"] = *c.linearity_residual;
        if (c.branch == BranchKind::Rank2Complete) row["survived"] = c.survived;
        row["agree"] = c.agree;
        if (!c.agree) {
            Json failure = row;
            failure["model"] = model_json(c.model);
            failures.push_back(std::move(failure));
        }
        cases.push_back(std::move(row));
    }
    j["disagreement_cases"] = std::move(failures);
    j["cases"] = std::move(cases);
    return j;
}

}  // namespace typea
