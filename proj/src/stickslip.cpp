#include "stickiness/stickslip.hpp"

#include "stickiness/errors.hpp"

#include <cmath>
#include <limits>

namespace stickiness
{

namespace
{

void check_inputs(std::span<const double> r_m, const CouplingSeries &g, double rc)
{
    if (!(rc >= 0.0))
        throw DomainError("stick-slip threshold must be non-negative");
    if (g.size() != r_m.size())
        throw InterfaceError("coupling and market series lengths differ");
}

} // namespace

// The slip test uses |g * stress| rather than g * |stress| so that a negative
// covariance-beta coupling still reduces to the linear model at rc = 0.

StickSlipTrace simulate_stickslip(std::span<const double> r_m, const CouplingSeries &g, double rc)
{
    check_inputs(r_m, g, rc);
    const std::size_t T = r_m.size();

    StickSlipTrace trace;
    trace.rc = rc;
    trace.start = std::min(g.first_defined, T);
    trace.stress.assign(T, std::numeric_limits<double>::quiet_NaN());
    trace.slipped.assign(T, false);
    trace.prediction.assign(T, std::numeric_limits<double>::quiet_NaN());

    double stress = 0.0;
    bool prev_slipped = true;
    for (std::size_t t = trace.start; t < T; ++t)
    {
        stress = prev_slipped ? r_m[t] : stress + r_m[t];
        const double loaded = g.g[t] * stress;
        const bool slip = std::fabs(loaded) > rc;
        trace.stress[t] = stress;
        trace.slipped[t] = slip;
        trace.prediction[t] = slip ? loaded : 0.0;
        prev_slipped = slip;
    }
    return trace;
}

void stickslip_predictions(std::span<const double> r_m, const CouplingSeries &g, double rc,
                           std::span<double> prediction)
{
    check_inputs(r_m, g, rc);
    if (prediction.size() != r_m.size())
        throw InterfaceError("prediction buffer length differs from the market series");
    const std::size_t T = r_m.size();
    const std::size_t start = std::min(g.first_defined, T);
    for (std::size_t t = 0; t < start; ++t)
        prediction[t] = std::numeric_limits<double>::quiet_NaN();

    double stress = 0.0;
    bool prev_slipped = true;
    for (std::size_t t = start; t < T; ++t)
    {
        stress = prev_slipped ? r_m[t] : stress + r_m[t];
        const double loaded = g.g[t] * stress;
        prev_slipped = std::fabs(loaded) > rc;
        prediction[t] = prev_slipped ? loaded : 0.0;
    }
}

OscillationStats oscillation_stats(const StickSlipTrace &trace)
{
    OscillationStats s;
    std::size_t last_slip = 0;
    std::size_t interval_sum = 0;
    for (std::size_t t = trace.start; t < trace.size(); ++t)
    {
        ++s.steps;
        s.max_abs_stress = std::max(s.max_abs_stress, std::fabs(trace.stress[t]));
        if (!trace.slipped[t])
            continue;
        if (s.slip_count > 0)
            interval_sum += t - last_slip;
        last_slip = t;
        ++s.slip_count;
    }
    if (s.slip_count > 1)
        s.mean_interval = static_cast<double>(interval_sum) / static_cast<double>(s.slip_count - 1);
    return s;
}

} // namespace stickiness
