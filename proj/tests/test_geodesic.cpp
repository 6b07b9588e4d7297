#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "support.hpp"
#include "typea/geodesic.hpp"
#include "typea/killing.hpp"

using namespace typea;
using namespace typea::testing;

namespace {

const ChristoffelSymbols kM1 = canonical_model(CanonicalFamily::M1);
const ChristoffelSymbols kM2 = canonical_model(CanonicalFamily::M2);
const ChristoffelSymbols kM3 = canonical_model(CanonicalFamily::M3);

ChristoffelSymbols rank1_nonsymmetric() {
    ChristoffelSymbols c;
    c.c121 = 1;
    c.c222 = 3;
    return c;
}

IntegrateOptions sampled(double t0, double t1, int n) {
    IntegrateOptions o;
    for (int i = 1; i < n; ++i) o.sample_times.push_back(t0 + (t1 - t0) * i / n);
    return o;
}

std::vector<Vec2> grid5() {
    std::vector<Vec2> pts;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) pts.push_back({-1.0 + 0.5 * i, -1.0 + 0.5 * j});
    return pts;
}

}  // namespace

TEST_CASE("geodesic right-hand side") {
    auto a = geodesic_rhs(ConstantModel{kM2}, {{0, 0}, {1, 1}});
    CHECK(a == std::array<double, 4>{1, 1, 1, 0});
    a = geodesic_rhs(TildeM3Model{}, {{2, 0}, {0, 1}});
    CHECK(a == std::array<double, 4>{0, 1, -2, 0});
    a = geodesic_rhs(ConstantModel{Gen(3).symbols()}, {{5, 5}, {0, 0}});
    CHECK(a[2] == 0.0);
    CHECK(a[3] == 0.0);

    Gen gen(47);
    for (int n = 0; n < 50; ++n) {
        const ChristoffelSymbols c = gen.symbols();
        const Vec2 v{gen.uniform(-2, 2), gen.uniform(-2, 2)};
        const auto r = geodesic_rhs(ConstantModel{c}, {{0, 0}, v});
        const Vec2 o = oracle_acceleration(c, v);
        CHECK(r[2] == doctest::Approx(o[0]).epsilon(1e-13));
        CHECK(r[3] == doctest::Approx(o[1]).epsilon(1e-13));
    }
}

TEST_CASE("integrator option validation and time span") {
    IntegrateOptions bad;
    bad.abs_tol = 0;
    CHECK_THROWS_AS(integrate(ConstantModel{kM2}, {{0, 0}, {1, 0}}, 0, 1, bad), Error);
    bad = {};
    bad.blow_up_norm = -1;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = {};
    bad.escape_fit_window = 1;
    CHECK_THROWS_AS(bad.validate(), Error);
    CHECK_THROWS_AS(integrate(ConstantModel{kM2}, {{0, 0}, {1, 0}}, 1, 1), Error);
    CHECK_THROWS_AS(integrate(ConstantModel{kM2}, {{0, 0}, {NAN, 0}}, 0, 1), Error);
    CHECK_THROWS_AS(integrate(ConstantModel{kM2}, {{0, 0}, {1, 0}}, 0, INFINITY), Error);
    ChristoffelSymbols inf = kM2;
    inf.c111 = INFINITY;
    CHECK_THROWS_AS(integrate(ConstantModel{inf}, {{0, 0}, {1, 0}}, 0, 1), Error);
}

TEST_CASE("integrator samples, budget and termination names") {
    const Trajectory tr = integrate(ConstantModel{kM2}, {{0, 0}, {1, 1}}, 0, 2, sampled(0, 2, 4));
    REQUIRE(tr.samples.size() == 5);
    CHECK(tr.samples[1].t == 0.5);
    CHECK(tr.samples[3].t == 1.5);
    CHECK(tr.samples.back().t == 2.0);
    CHECK(tr.termination == Termination::HorizonReached);
    for (std::size_t i = 1; i < tr.samples.size(); ++i) CHECK(tr.samples[i].t > tr.samples[i - 1].t);

    IntegrateOptions tiny;
    tiny.max_steps = 5;
    const Trajectory cut = integrate(ConstantModel{kM2}, {{0, 0}, {1, 1}}, 0, 10, tiny);
    CHECK(cut.termination == Termination::StepBudgetExhausted);
    CHECK(cut.samples.back().t < 10.0);

    CHECK(std::string(to_string(Termination::BlowUp)) == "BlowUp");
    CHECK(std::string(to_string(Termination::StepUnderflow)) == "StepUnderflow");

    const Trajectory back = integrate(ConstantModel{kM2}, {{0, 0}, {1, 1}}, 0, -1);
    CHECK(back.termination == Termination::HorizonReached);
    CHECK(back.samples.back().t == -1.0);
    for (std::size_t i = 1; i < back.samples.size(); ++i) CHECK(back.samples[i].t < back.samples[i - 1].t);
}

TEST_CASE("M1 log-geodesic blows up at t = -1") {
    const Trajectory tr = integrate(ConstantModel{kM1}, {{0, 0}, {-1, 0}}, 0, -2);
    CHECK(tr.termination == Termination::BlowUp);
    REQUIRE(tr.escape_time);
    CHECK(std::abs(*tr.escape_time + 1.0) < 1e-3);
    CHECK(tr.stats.max_norm > 1e8);
}

TEST_CASE("M2 and ~M3 match their closed forms") {
    const Trajectory m2 = integrate(ConstantModel{kM2}, {{0, 0}, {1, 1}}, 0, 10, sampled(0, 10, 50));
    CHECK(m2.termination == Termination::HorizonReached);
    for (const auto& s : m2.samples) {
        CHECK(std::abs(s.x[0] - std::expm1(s.t)) <= 1e-8 * std::max(1.0, std::abs(s.x[0])));
        CHECK(std::abs(s.x[1] - s.t) <= 1e-8 * std::max(1.0, s.t));
    }

    const Trajectory m3 = integrate(TildeM3Model{}, {{1, 0}, {0, 1}}, 0, 10, sampled(0, 10, 50));
    CHECK(m3.termination == Termination::HorizonReached);
    for (const auto& s : m3.samples) {
        CHECK(std::abs(s.x[0] - std::cos(s.t)) < 1e-8);
        CHECK(std::abs(s.x[1] - s.t) < 1e-8);
    }
}

TEST_CASE("M-(1) geodesics survive to t = 200") {
    Gen gen(53);
    const ChristoffelSymbols c = canonical_model(CanonicalFamily::MMinus, 1);
    for (int n = 0; n < 10; ++n) {
        const double r = std::sqrt(gen.uniform(0, 1)), th = gen.uniform(0, 2 * std::numbers::pi);
        const Trajectory tr = integrate(ConstantModel{c}, {{0, 0}, {r * std::cos(th), r * std::sin(th)}}, 0, 200,
                                        sampled(0, 200, 2));
        CHECK(tr.termination == Termination::HorizonReached);
    }
}

TEST_CASE("closed forms and h") {
    CHECK(closed_form_m2(0, 0, 1, 0, 5) == Vec2{5, 0});
    const Vec2 e = closed_form_m2(0, 0, 1, 1, 1);
    CHECK(e[0] == doctest::Approx(std::numbers::e - 1).epsilon(1e-15));
    CHECK(e[1] == 1.0);
    CHECK(closed_form_m2(3, 4, 5, 6, 0) == Vec2{3, 4});

    const Vec2 c = closed_form_m3tilde(1, 0, 0, 1, std::numbers::pi);
    CHECK(c[0] == doctest::Approx(-1).epsilon(1e-15));
    CHECK(c[1] == doctest::Approx(std::numbers::pi));
    CHECK(closed_form_m3tilde(2, 3, 4, 0, 1.5) == Vec2{8, 3});

    // Initial velocity by central difference.
    const double h = 1e-6;
    const Vec2 p = closed_form_m3tilde(0, 0, 1, 2, h), m = closed_form_m3tilde(0, 0, 1, 2, -h);
    CHECK(closed_form_m3tilde(0, 0, 1, 2, 0) == Vec2{0, 0});
    CHECK((p[0] - m[0]) / (2 * h) == doctest::Approx(1).epsilon(1e-8));
    CHECK((p[1] - m[1]) / (2 * h) == doctest::Approx(2).epsilon(1e-8));

    CHECK(h_function(2.0, 0.0) == 2.0);
    for (double t : {-3.0, 0.5, 4.0}) {
        const double below = h_function(t, kHSwitchTolerance * (1 - 1e-9));
        const double above = h_function(t, kHSwitchTolerance * (1 + 1e-9));
        CHECK(below == doctest::Approx(above).epsilon(1e-11));
        CHECK(h_function(t, 1.0) == doctest::Approx(std::expm1(t)).epsilon(1e-15));
    }
}

TEST_CASE("exponential maps") {
    CHECK(exp_map(ExpModel::M2, {0, 0}, {1, 0}) == Vec2{1, 0});
    CHECK(exp_map(ExpModel::TildeM3, {1, 2}, {0, 0}) == Vec2{1, 2});
    for (double c : {-2.0, 0.0, 3.5}) {
        const Vec2 x = exp_map(ExpModel::TildeM3, {0.7, -1.2}, {c, std::numbers::pi});
        CHECK(x[0] == doctest::Approx(-0.7).epsilon(1e-14));
        CHECK(x[1] == doctest::Approx(-1.2 + std::numbers::pi).epsilon(1e-14));
    }
}

TEST_CASE("log-geodesic curves") {
    GeodesicState s = log_geodesic_curve(-1, 0, 1);
    CHECK(s.x == Vec2{0, 0});
    CHECK(s.v == Vec2{-1, 0});
    s = log_geodesic_curve(1, 1, std::numbers::e);
    CHECK(s.x[0] == doctest::Approx(1));
    CHECK(s.v[1] == doctest::Approx(1 / std::numbers::e));
    CHECK_THROWS_AS(log_geodesic_curve(1, 1, 0), Error);

    const ChristoffelSymbols c = canonical_model(CanonicalFamily::MPlus, 0);
    for (double t : {0.1, 1.0, 7.0}) {
        const GeodesicState g = log_geodesic_curve(1, 1, t);
        const Vec2 accel{-1 / (t * t), -1 / (t * t)};
        const Vec2 o = oracle_acceleration(c, g.v);
        CHECK(std::abs(accel[0] - o[0]) < 1e-12);
        CHECK(std::abs(accel[1] - o[1]) < 1e-12);
    }
}

TEST_CASE("rank-1 witness") {
    const Rank1Witness w = rank1_incomplete_witness(rank1_nonsymmetric());
    CHECK(w.trajectory.termination == Termination::BlowUp);
    REQUIRE(w.trajectory.escape_time);
    CHECK(std::abs(*w.trajectory.escape_time + 1.0) < 1e-2);
    REQUIRE(w.kappa_exponent);
    CHECK(*w.kappa_exponent >= -2.2);
    CHECK(*w.kappa_exponent <= -1.8);

    Gen gen(59);
    for (int n = 0; n < 10; ++n) {
        const Rank1Witness p = rank1_incomplete_witness(pushforward(rank1_nonsymmetric(), gen.linear_map()));
        CHECK(p.trajectory.termination == Termination::BlowUp);
    }
    CHECK_THROWS_AS(rank1_incomplete_witness(kM2), Error);
    CHECK_THROWS_AS(rank1_incomplete_witness(canonical_model(CanonicalFamily::MMinus, 1)), Error);
}

TEST_CASE("translations are affine Killing fields of every model") {
    Gen gen(61);
    const auto pts = grid5();
    const auto fields = m3_killing_fields();
    for (int n = 0; n < 20; ++n) {
        const ModelKind kind = ConstantModel{gen.symbols()};
        CHECK(verify_killing(kind, fields[0].field, pts) < 1e-10);
        CHECK(verify_killing(kind, fields[1].field, pts) < 1e-10);
    }
}

TEST_CASE("Killing fields of M3 and ~M3") {
    const auto pts = grid5();
    for (const NamedField& f : m3_killing_fields()) {
        INFO(f.name);
        CHECK(verify_killing(ConstantModel{kM3}, f.field, pts) < 1e-6);
    }
    const auto tilde = tilde_m3_killing_fields();
    CHECK(tilde.size() == 6);
    for (const NamedField& f : tilde) {
        INFO(f.name);
        CHECK(verify_killing(TildeM3Model{}, f.field, pts) < 1e-6);
    }

    // Negative controls.
    const VectorFieldSpec x1_squared{{FieldTerm{1.0, {BasisFunction::X1, BasisFunction::X1}, 0}}};
    CHECK(verify_killing(ConstantModel{kM3}, x1_squared, pts) > 1e-2);
    CHECK(verify_killing(ConstantModel{kM3}, tilde[0].field, pts) > 1e-2);
    CHECK_THROWS_AS(verify_killing(ConstantModel{kM3}, tilde[0].field, pts, 0.0), Error);
}

TEST_CASE("vector field evaluation") {
    const auto tilde = tilde_m3_killing_fields();
    const Vec2 x{0.3, 1.1};
    const Vec2 eta2 = tilde[4].field(x);
    CHECK(eta2[0] == doctest::Approx(std::sin(1.1)));
    CHECK(eta2[1] == 1.0);
    const Vec2 xi3 = tilde[2].field(x);
    CHECK(xi3[0] == doctest::Approx(0.3 - std::sin(1.1)));
}

TEST_CASE("chart from M3 to ~M3") {
    CHECK(tilde_m3_chart_check({0, 0}) < 1e-6);
    CHECK(tilde_m3_chart_check({std::log(2.0), 1}) < 1e-6);
    Gen gen(67);
    for (int n = 0; n < 20; ++n) CHECK(tilde_m3_chart_check({gen.uniform(-1, 1), gen.uniform(-3, 3)}) < 1e-6);
}
