// Acceptance gate: one PASS/FAIL line per criterion; nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "properties.hpp"
#include "typea/cli.hpp"
#include "typea/geodesic.hpp"
#include "typea/killing.hpp"
#include "typea/phase_portrait.hpp"
#include "typea/sweep.hpp"

using namespace typea;
using namespace typea::testing;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail = what;
        pass = pass && ok;
    }
};

ChristoffelSymbols minus(double delta) { return canonical_model(CanonicalFamily::MMinus, delta); }
ChristoffelSymbols plus(double delta) { return canonical_model(CanonicalFamily::MPlus, delta); }

std::string fmt(double x) {
    std::ostringstream s;
    s.precision(3);
    s << x;
    return s.str();
}

std::vector<std::string> cli_lines(const std::vector<std::string>& args, int& code) {
    std::ostringstream out, err;
    code = run_cli(args, out, err);
    std::vector<std::string> ls;
    std::istringstream in(out.str());
    for (std::string l; std::getline(in, l);) ls.push_back(l);
    return ls;
}

Outcome canonical_verdicts() {
    Outcome o;
    const auto m1 = classify(canonical_model(CanonicalFamily::M1));
    const auto m2 = classify(canonical_model(CanonicalFamily::M2));
    const auto m3 = classify(canonical_model(CanonicalFamily::M3));
    o.require(m2.kind() == BranchKind::Rank1Symmetric && m2.model_complete() == true, "M2 complete");
    o.require(m1.kind() == BranchKind::Rank1Symmetric && m1.model_complete() == false &&
                  m1.essentially_complete() == true,
              "M1 incomplete, essentially complete");
    o.require(m3.kind() == BranchKind::Rank1Symmetric && m3.model_complete() == false &&
                  m3.essentially_complete() == true,
              "M3 incomplete, essentially complete");
    for (double delta : {0.0, 1.0, 1.9, 2.0, 3.0}) {
        const auto p = classify(plus(delta));
        o.require(p.kind() == BranchKind::Rank2Incomplete && p.essentially_complete() == false,
                  "M+ essentially incomplete at delta " + fmt(delta));
        const auto m = classify(minus(delta));
        if (delta < 2.0) {
            o.require(m.kind() == BranchKind::Rank2Complete && m.model_complete() == true,
                      "M- complete at delta " + fmt(delta));
            if (const auto* c = std::get_if<Rank2Complete>(&m.branch))
                o.require(std::abs(c->delta - delta) < 1e-9, "recovered delta " + fmt(delta));
        } else {
            o.require(m.kind() == BranchKind::Rank2Incomplete, "M- incomplete at delta " + fmt(delta));
        }
    }
    o.detail = o.pass ? "13 models, expected branches" : o.detail;
    return o;
}

Outcome invariant_identity() {
    Outcome o;
    double worst = 0.0;
    for (double delta : {0.0, 0.5, 1.0, 1.5, 1.9}) {
        const SigmaPsi s = invariants_sigma_psi(minus(delta));
        const double err = std::max(std::abs(s.sigma - (-3.0 + 2.0 * delta * delta)), std::abs(s.psi - 2.0));
        worst = std::max(worst, err);
        o.require(err <= 1e-12, "delta " + fmt(delta) + " error " + fmt(err));
    }
    if (o.pass) o.detail = "max abs error " + fmt(worst);
    return o;
}

Outcome root_formulas() {
    Outcome o;
    double worst = 0.0;
    const auto expect = [&](const std::vector<LogGeodesicSolution>& sols, double a, const std::string& label) {
        double best = INFINITY;
        for (const auto& s : sols) best = std::min(best, std::max(std::abs(s.a - a), std::abs(s.b - 1.0)));
        worst = std::max(worst, best);
        o.require(best <= 1e-10, label + " a=" + fmt(a) + " off by " + fmt(best));
    };
    for (double delta : {0.0, 1.0, 2.0, 3.0}) {
        const auto p = log_geodesic_solutions(plus(delta));
        const double r = std::sqrt(delta * delta + 4.0);
        expect(p, 0.5 * (-delta + r), "M+");
        expect(p, 0.5 * (-delta - r), "M+");
        if (delta >= 2.0) {
            const auto m = log_geodesic_solutions(minus(delta));
            const double q = std::sqrt(delta * delta - 4.0);
            expect(m, 0.5 * (delta + q), "M-");
            expect(m, 0.5 * (delta - q), "M-");
        }
    }
    if (o.pass) o.detail = "max error " + fmt(worst);
    return o;
}

Outcome closed_forms() {
    Outcome o;
    Gen gen(2024);
    IntegrateOptions opts;
    opts.abs_tol = opts.rel_tol = 1e-12;
    for (int i = 1; i <= 100; ++i) opts.sample_times.push_back(0.1 * i);
    double worst = 0.0;
    for (int n = 0; n < 100; ++n) {
        const double a = gen.uniform(-1, 1), b = gen.uniform(-1, 1), c = gen.uniform(-1, 1), d = gen.uniform(-1, 1);
        const Trajectory m2 = integrate(ConstantModel{canonical_model(CanonicalFamily::M2)}, {{a, b}, {c, d}}, 0, 10, opts);
        const Trajectory m3 = integrate(TildeM3Model{}, {{a, b}, {c, d}}, 0, 10, opts);
        o.require(m2.termination == Termination::HorizonReached && m3.termination == Termination::HorizonReached,
                  "horizon not reached");
        for (const auto& s : m2.samples) {
            const Vec2 x = closed_form_m2(a, b, c, d, s.t);
            worst = std::max({worst, std::abs(s.x[0] - x[0]), std::abs(s.x[1] - x[1])});
        }
        for (const auto& s : m3.samples) {
            const Vec2 x = closed_form_m3tilde(a, b, c, d, s.t);
            worst = std::max({worst, std::abs(s.x[0] - x[0]), std::abs(s.x[1] - x[1])});
        }
    }
    o.require(worst < 1e-6, "max error " + fmt(worst));
    double exp_worst = 0.0;
    for (int n = 0; n < 100; ++n) {
        const double a = gen.uniform(-3, 3), b = gen.uniform(-3, 3), c = gen.uniform(-3, 3);
        const Vec2 x = exp_map(ExpModel::TildeM3, {a, b}, {c, std::numbers::pi});
        exp_worst = std::max({exp_worst, std::abs(x[0] + a), std::abs(x[1] - b - std::numbers::pi)});
    }
    o.require(exp_worst <= 1e-8, "Exp degeneracy error " + fmt(exp_worst));
    if (o.pass) o.detail = "200 runs, max abs error " + fmt(worst) + ", Exp error " + fmt(exp_worst);
    return o;
}

Outcome oracle_sweep() {
    Outcome o;
    SweepOptions opts;
    opts.count = 200;
    opts.seed = 7;
    const SweepReport rep = run_sweep(opts);
    int complete = 0;
    for (const auto& c : rep.cases) complete += c.branch == BranchKind::Rank2Complete ? 1 : 0;
    o.require(rep.agreements() == 200, std::to_string(rep.agreements()) + "/200 agree");
    o.detail = std::to_string(rep.agreements()) + "/200 agree (" + std::to_string(200 - complete) + " incomplete, " +
               std::to_string(complete) + " complete)";
    return o;
}

Outcome gl2_suite() {
    Outcome o;
    const PropertyReport rep = run_gl2_properties(500, 500);
    for (const auto* t : {&rep.tensoriality, &rep.invariants, &rep.branch, &rep.witnesses})
        o.require(t->failed == 0, t->first_failure);
    if (o.pass)
        o.detail = "500 pairs; worst scaled errors " + fmt(rep.tensoriality.worst) + ", " + fmt(rep.invariants.worst) +
                   ", " + fmt(rep.witnesses.worst) + "; " + std::to_string(rep.witnesses.checked) + " witnesses";
    return o;
}

Outcome phase_certificates() {
    Outcome o;
    for (double delta : {0.0, 0.5, 1.0, 1.5, 1.99}) {
        std::vector<Vec2> right, left;
        for (int i = 0; i < 100; ++i)
            for (int j = 0; j < 100; ++j) {
                const double v = -5.0 + 0.1 * (j + 0.5);
                right.push_back({0.05 * (i + 1), v});
                left.push_back({-0.05 * i, v});
            }
        o.require(slope_certificate(delta, right), "slope certificate at delta " + fmt(delta));
        o.require(radial_certificate(delta, left), "radial certificate at delta " + fmt(delta));
    }
    Gen gen(77);
    int exited = 0;
    for (int n = 0; n < 50; ++n) {
        const FlowCurve c = flow_integrate(minus(1), {gen.uniform(-3, 3), gen.uniform(-3, 3)}, 0, 50);
        o.require(!reenters_first_quadrant(c), "flow re-entered the first quadrant");
        const bool started_inside = c.samples.front().u > 0 && c.samples.front().v > 0;
        const bool ends_inside = c.samples.back().u > 0 && c.samples.back().v > 0;
        exited += started_inside && !ends_inside ? 1 : 0;
    }
    if (o.pass) o.detail = "10^4-point grids x 5 deltas; 50 flows, " + std::to_string(exited) + " exits, no re-entry";
    return o;
}

Outcome killing_fields() {
    Outcome o;
    std::vector<Vec2> grid;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) grid.push_back({-1.0 + 0.5 * i, -1.0 + 0.5 * j});
    double worst = 0.0;
    for (const NamedField& f : m3_killing_fields()) {
        const double r = verify_killing(ConstantModel{canonical_model(CanonicalFamily::M3)}, f.field, grid);
        worst = std::max(worst, r);
        o.require(r < 1e-6, "M3 field " + f.name + " residual " + fmt(r));
    }
    for (const NamedField& f : tilde_m3_killing_fields()) {
        const double r = verify_killing(TildeM3Model{}, f.field, grid);
        worst = std::max(worst, r);
        o.require(r < 1e-6, "~M3 field " + f.name + " residual " + fmt(r));
    }
    Gen gen(88);
    const auto translations = m3_killing_fields();
    double trans_worst = 0.0;
    for (int n = 0; n < 50; ++n) {
        const ModelKind kind = ConstantModel{gen.symbols()};
        for (int k = 0; k < 2; ++k) trans_worst = std::max(trans_worst, verify_killing(kind, translations[k].field, grid));
    }
    o.require(trans_worst < 1e-10, "translation residual " + fmt(trans_worst));
    if (o.pass) o.detail = "10 fields max residual " + fmt(worst) + "; translations " + fmt(trans_worst);
    return o;
}

Outcome figure_data() {
    Outcome o;
    int code = 0;
    const auto moduli = cli_lines({"moduli", "--t-range", "0.5,2", "--delta-range", "0,1.9", "--n", "61"}, code);
    o.require(code == kExitOk, "moduli exit code");
    const auto has = [&](const std::string& row) {
        return std::find(moduli.begin(), moduli.end(), row) != moduli.end();
    };
    o.require(has("plus,1,7,10"), "sigma_+(1) = (7,10)");
    o.require(has("minus,1,-3,2"), "sigma_-(1) = (-3,2)");
    o.require(has("delta,0,-3,2"), "segment endpoint (-3,2)");

    const std::vector<std::string> args{"flow", "--canonical", "M-:1", "--window", "-2,2,-2,2", "--grid-n", "21"};
    const auto first = cli_lines(args, code);
    o.require(code == kExitOk, "flow exit code");
    o.require(cli_lines(args, code) == first, "flow grid not deterministic");
    int fixed = 0;
    for (std::size_t i = 1; i < first.size(); ++i) {
        std::istringstream row(first[i]);
        std::string u, v, du, dv;
        std::getline(row, u, ',');
        std::getline(row, v, ',');
        std::getline(row, du, ',');
        std::getline(row, dv, ',');
        const bool still = std::stod(du) == 0.0 && std::stod(dv) == 0.0;
        o.require(still == (std::stod(u) == 0.0), "fixed point off the u = 0 column at " + first[i]);
        fixed += still ? 1 : 0;
    }
    o.require(first.size() == 442 && fixed == 21, "grid size or fixed-point count");
    if (o.pass) o.detail = "moduli anchors exact; 441-row grid, 21 fixed points all at u = 0";
    return o;
}

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "canonical verdict table", 1.0, canonical_verdicts},
        {2, "invariant identity (-3 + 2 delta^2, 2)", 1.0, invariant_identity},
        {3, "log-geodesic root formulas", 1.0, root_formulas},
        {4, "closed forms vs integrator", 30.0, closed_forms},
        {5, "oracle equivalence sweep", 300.0, oracle_sweep},
        {6, "GL(2) invariance suite", 60.0, gl2_suite},
        {7, "phase-flow certificates", 30.0, phase_certificates},
        {8, "Killing fields", 10.0, killing_fields},
        {9, "figure data", 5.0, figure_data},
    };
    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (seconds > c.budget_seconds) {
            o.pass = false;
            o.detail += " (over the " + fmt(c.budget_seconds) + " s budget)";
        }
        failures += o.pass ? 0 : 1;
        std::printf("%s criterion %d: %s | %s | %.3f s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                    seconds);
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
