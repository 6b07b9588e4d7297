#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace typea {

enum class Termination {
    HorizonReached,
    BlowUp,               // the monitored norm exceeded blow_up_norm
    StepUnderflow,        // error control kept failing below the minimum step
    StepBudgetExhausted,  // max_steps attempts used before reaching the horizon
};

const char* to_string(Termination t) noexcept;

struct IntegrateOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    double blow_up_norm = 1e8;
    double min_step_factor = 1e-13;  // relative to |t1 - t0|
    std::size_t max_steps = 5'000'000;
    double initial_step = 0.0;  // 0 picks 1e-4 |t1 - t0|
    /// When nonempty, samples are recorded exactly at these times (those
    /// inside the span) plus the start and end of integration; otherwise every
    /// accepted step is recorded.
    std::vector<double> sample_times;
    std::size_t escape_fit_window = 10;

    /// Throws InputDomain for nonpositive tolerances or thresholds.
    void validate() const;
};

struct IntegrationStats {
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;
    double max_norm = 0.0;
};

template <std::size_t N>
struct OdeSample {
    double t = 0.0;
    std::array<double, N> y{};
};

template <std::size_t N>
struct OdeSolution {
    std::vector<OdeSample<N>> samples;
    Termination termination = Termination::HorizonReached;
    std::optional<double> escape_time;  // set on BlowUp
    IntegrationStats stats;
};

template <std::size_t N>
using OdeRhs = std::function<void(const std::array<double, N>&, std::array<double, N>&)>;

template <std::size_t N>
using OdeNorm = std::function<double(const std::array<double, N>&)>;

/// Adaptive Dormand-Prince 5(4) integration of an autonomous system from t0 to
/// t1 (t1 < t0 integrates backward). The escape time on BlowUp extrapolates a
/// least-squares fit of 1 / norm(y) against t over the last
/// escape_fit_window accepted steps, which is exact when norm ~ K / |t_esc - t|.
template <std::size_t N>
OdeSolution<N> integrate_autonomous(const OdeRhs<N>& rhs, const std::array<double, N>& y0, double t0,
                                    double t1, const IntegrateOptions& opts, const OdeNorm<N>& norm);

extern template OdeSolution<2> integrate_autonomous<2>(const OdeRhs<2>&, const std::array<double, 2>&, double,
                                                       double, const IntegrateOptions&, const OdeNorm<2>&);
extern template OdeSolution<4> integrate_autonomous<4>(const OdeRhs<4>&, const std::array<double, 4>&, double,
                                                       double, const IntegrateOptions&, const OdeNorm<4>&);

}  // namespace typea
