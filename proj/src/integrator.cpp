#include "typea/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include <boost/numeric/odeint.hpp>

#include "typea/error.hpp"

namespace typea {

const char* to_string(Termination t) noexcept {
    switch (t) {
        case Termination::HorizonReached: return "HorizonReached";
        case Termination::BlowUp: return "BlowUp";
        case Termination::StepUnderflow: return "StepUnderflow";
        case Termination::StepBudgetExhausted: return "StepBudgetExhausted";
    }
    return "unknown";
}

void IntegrateOptions::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw Error(ErrorKind::InputDomain, "integration tolerances must be positive");
    if (!(blow_up_norm > 0.0)) throw Error(ErrorKind::InputDomain, "blow-up norm must be positive");
    if (!(min_step_factor > 0.0)) throw Error(ErrorKind::InputDomain, "minimum step factor must be positive");
    if (max_steps == 0) throw Error(ErrorKind::InputDomain, "max_steps must be positive");
    if (escape_fit_window < 2) throw Error(ErrorKind::InputDomain, "escape fit needs at least two points");
    if (initial_step < 0.0 || !std::isfinite(initial_step))
        throw Error(ErrorKind::InputDomain, "initial step must be finite and nonnegative");
}

namespace {

namespace odeint = boost::numeric::odeint;

std::optional<double> fit_escape_time(const std::deque<std::pair<double, double>>& window) {
    // Least squares of 1/norm = alpha + beta t.
    const double n = static_cast<double>(window.size());
    if (window.size() < 2) return std::nullopt;
    double st = 0.0, sy = 0.0;
    for (const auto& [t, norm] : window) {
        st += t;
        sy += 1.0 / norm;
    }
    const double mt = st / n;
    const double my = sy / n;
    double stt = 0.0, sty = 0.0;
    for (const auto& [t, norm] : window) {
        stt += (t - mt) * (t - mt);
        sty += (t - mt) * (1.0 / norm - my);
    }
    if (stt == 0.0 || sty == 0.0) return std::nullopt;
    const double beta = sty / stt;
    const double alpha = my - beta * mt;
    return -alpha / beta;
}

template <std::size_t N>
bool all_finite(const std::array<double, N>& y) {
    return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace

template <std::size_t N>
OdeSolution<N> integrate_autonomous(const OdeRhs<N>& rhs, const std::array<double, N>& y0, double t0,
                                    double t1, const IntegrateOptions& opts, const OdeNorm<N>& norm) {
    opts.validate();
    if (!std::isfinite(t0) || !std::isfinite(t1) || t0 == t1)
        throw Error(ErrorKind::InputDomain, "time span must be finite and nondegenerate");
    if (!all_finite(y0)) throw Error(ErrorKind::InputDomain, "initial state must be finite");

    using State = std::array<double, N>;
    auto system = [&rhs](const State& y, State& dydt, double) { rhs(y, dydt); };
    auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(opts.abs_tol, opts.rel_tol);

    const double span = t1 - t0;
    const double direction = span > 0.0 ? 1.0 : -1.0;
    const double min_step = opts.min_step_factor * std::abs(span);

    // Sample times strictly inside the span, in integration order.
    std::vector<double> targets;
    for (double s : opts.sample_times)
        if (std::isfinite(s) && (s - t0) * direction > 0.0 && (t1 - s) * direction > 0.0) targets.push_back(s);
    std::sort(targets.begin(), targets.end(), [direction](double a, double b) { return a * direction < b * direction; });
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    const bool record_every_step = opts.sample_times.empty();

    OdeSolution<N> out;
    State y = y0;
    double t = t0;
    double dt = direction * (opts.initial_step > 0.0 ? std::min(opts.initial_step, std::abs(span))
                                                     : 1e-4 * std::abs(span));
    out.samples.push_back({t, y});
    out.stats.max_norm = norm(y);
    std::deque<std::pair<double, double>> recent;
    std::size_t next_target = 0;

    auto finish = [&](Termination why) {
        out.termination = why;
        if (out.samples.back().t != t) out.samples.push_back({t, y});
    };

    for (;;) {
        if ((t1 - t) * direction <= 0.0) {
            finish(Termination::HorizonReached);
            break;
        }
        if (out.stats.accepted_steps + out.stats.rejected_steps >= opts.max_steps) {
            finish(Termination::StepBudgetExhausted);
            break;
        }
        const bool has_target = next_target < targets.size();
        const double target = has_target ? targets[next_target] : t1;
        double step = dt;
        bool clipped = false;
        if ((t + step - target) * direction >= 0.0) {
            step = target - t;
            clipped = true;
        }

        const State backup = y;
        const double t_before = t;
        const odeint::controlled_step_result result = stepper.try_step(system, y, t, step);
        if (result == odeint::fail) {
            ++out.stats.rejected_steps;
            dt = step;
            if (std::abs(dt) < min_step) {
                finish(Termination::StepUnderflow);
                break;
            }
            continue;
        }
        if (!all_finite(y)) {
            y = backup;
            t = t_before;
            stepper.reset();
            ++out.stats.rejected_steps;
            dt = 0.5 * (clipped ? target - t_before : dt);
            if (std::abs(dt) < min_step) {
                finish(Termination::StepUnderflow);
                break;
            }
            continue;
        }
        ++out.stats.accepted_steps;
        if (clipped) {
            t = target;
            dt = direction * std::max(std::abs(step), std::abs(dt));
        } else {
            dt = step;
        }

        const double n = norm(y);
        out.stats.max_norm = std::max(out.stats.max_norm, n);
        recent.emplace_back(t, n);
        if (recent.size() > opts.escape_fit_window) recent.pop_front();

        const bool at_target = clipped && has_target;
        if (at_target) ++next_target;
        if (record_every_step || at_target) out.samples.push_back({t, y});

        if (n > opts.blow_up_norm) {
            out.escape_time = fit_escape_time(recent);
            finish(Termination::BlowUp);
            break;
        }
    }
    return out;
}

template OdeSolution<2> integrate_autonomous<2>(const OdeRhs<2>&, const std::array<double, 2>&, double, double,
                                                const IntegrateOptions&, const OdeNorm<2>&);
template OdeSolution<4> integrate_autonomous<4>(const OdeRhs<4>&, const std::array<double, 4>&, double, double,
                                                const IntegrateOptions&, const OdeNorm<4>&);

}  // namespace typea
