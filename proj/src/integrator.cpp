#include "capedu/integrator.hpp"

#include "capedu/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

namespace capedu {

namespace {

// Dormand & Prince (1980) RK5(4)7M, as tabulated by Hairer, Norsett & Wanner.
namespace dp {
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;

constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
// fifth-order weights; stage 7 is evaluated at the new point (FSAL)
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
// b - b_hat
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
} // namespace dp

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 5.0;
constexpr double kFailureShrink = 0.25;

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

struct Workspace {
    explicit Workspace(std::size_t n)
        : k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), y_new(n) {}
    StateVector k1, k2, k3, k4, k5, k6, k7, tmp, y_new;
};

enum class TrialFailure { none, domain, non_finite };

} // namespace

void validate(const IntegratorSettings& s) {
    if (!(s.rel_tol > 0.0) || !std::isfinite(s.rel_tol))
        throw ValidationError("rel_tol", "rel_tol must be positive");
    if (!(s.abs_tol > 0.0) || !std::isfinite(s.abs_tol))
        throw ValidationError("abs_tol", "abs_tol must be positive");
    if (!(s.initial_step > 0.0))
        throw ValidationError("initial_step", "initial_step must be positive");
    if (!(s.max_step >= s.initial_step) || !std::isfinite(s.max_step))
        throw ValidationError("max_step", "max_step must be finite and >= initial_step");
    if (s.max_steps == 0)
        throw ValidationError("max_steps", "max_steps must be positive");
}

std::vector<double> sample_grid(double t0, double t1, double step) {
    if (!(t1 > t0))
        throw ValidationError("horizon", "integration interval must satisfy t1 > t0");
    if (!(step > 0.0) || !std::isfinite(step))
        throw ValidationError("sample_step", "sample_step must be positive");

    const double span = t1 - t0;
    const auto n = static_cast<std::size_t>(std::floor(span / step + 1e-9));
    std::vector<double> grid;
    grid.reserve(n + 2);
    for (std::size_t i = 0; i <= n; ++i)
        grid.push_back(t0 + static_cast<double>(i) * step);
    if (std::abs(grid.back() - t1) <= 1e-9 * step)
        grid.back() = t1;
    else if (grid.back() < t1)
        grid.push_back(t1);
    else
        grid.back() = t1;
    return grid;
}

RawTrajectory integrate(const VectorField& field, const StateVector& y0, double t0, double t1,
                        const IntegratorSettings& settings, double sample_step) {
    validate(settings);
    if (y0.empty())
        throw ValidationError("initial", "state dimension must be at least 1");
    if (!all_finite(y0))
        throw NonFiniteState("initial state is not finite", t0);

    const std::vector<double> grid = sample_grid(t0, t1, sample_step);
    const std::size_t n = y0.size();

    RawTrajectory out;
    out.times.reserve(grid.size());
    out.states.reserve(grid.size());
    out.times.push_back(t0);
    out.states.push_back(y0);

    Workspace w(n);
    StateVector y = y0;
    double t = t0;

    auto eval = [&](std::span<const double> state, std::span<double> dydt) {
        field(state, dydt);
        ++out.stats.evaluations;
    };

    try {
        eval(y, w.k1);
    } catch (const DomainError& e) {
        throw DomainError(e.what(), t0);
    }
    if (!all_finite(w.k1))
        throw NonFiniteState("vector field is not finite at the initial state", t0);

    double h = std::min(settings.initial_step, settings.max_step);
    bool rejected_last = false;
    std::size_t attempts = 0;
    std::optional<std::string> last_domain_message;

    for (std::size_t g = 1; g < grid.size(); ++g) {
        const double target = grid[g];
        while (t < target) {
            if (++attempts > settings.max_steps)
                throw StepLimitExceeded(
                    "step limit of " + std::to_string(settings.max_steps) + " exceeded", t);

            const double remaining = target - t;
            const bool clipped = h >= remaining;
            const double step = clipped ? remaining : h;

            const double min_step = 16.0 * std::numeric_limits<double>::epsilon() *
                                    std::max(std::abs(t), 1.0);
            if (step < min_step && !clipped) {
                if (last_domain_message)
                    throw DomainError(*last_domain_message, t);
                throw StepLimitExceeded("step size underflow", t);
            }

            // Trial step. Stages k2..k7; k1 is carried over (FSAL).
            TrialFailure failure = TrialFailure::none;
            try {
                using namespace dp;
                for (std::size_t i = 0; i < n; ++i)
                    w.tmp[i] = y[i] + step * a21 * w.k1[i];
                eval(w.tmp, w.k2);
                for (std::size_t i = 0; i < n; ++i)
                    w.tmp[i] = y[i] + step * (a31 * w.k1[i] + a32 * w.k2[i]);
                eval(w.tmp, w.k3);
                for (std::size_t i = 0; i < n; ++i)
                    w.tmp[i] = y[i] + step * (a41 * w.k1[i] + a42 * w.k2[i] + a43 * w.k3[i]);
                eval(w.tmp, w.k4);
                for (std::size_t i = 0; i < n; ++i)
                    w.tmp[i] = y[i] + step * (a51 * w.k1[i] + a52 * w.k2[i] + a53 * w.k3[i] +
                                              a54 * w.k4[i]);
                eval(w.tmp, w.k5);
                for (std::size_t i = 0; i < n; ++i)
                    w.tmp[i] = y[i] + step * (a61 * w.k1[i] + a62 * w.k2[i] + a63 * w.k3[i] +
                                              a64 * w.k4[i] + a65 * w.k5[i]);
                eval(w.tmp, w.k6);
                for (std::size_t i = 0; i < n; ++i)
                    w.y_new[i] = y[i] + step * (b1 * w.k1[i] + b3 * w.k3[i] + b4 * w.k4[i] +
                                                b5 * w.k5[i] + b6 * w.k6[i]);
                eval(w.y_new, w.k7);
                if (!all_finite(w.y_new) || !all_finite(w.k7))
                    failure = TrialFailure::non_finite;
            } catch (const DomainError& e) {
                failure = TrialFailure::domain;
                last_domain_message = e.what();
            }

            double err = 0.0;
            if (failure == TrialFailure::none) {
                using namespace dp;
                for (std::size_t i = 0; i < n; ++i) {
                    const double e = step * (e1 * w.k1[i] + e3 * w.k3[i] + e4 * w.k4[i] +
                                             e5 * w.k5[i] + e6 * w.k6[i] + e7 * w.k7[i]);
                    const double scale =
                        settings.abs_tol +
                        settings.rel_tol * std::max(std::abs(y[i]), std::abs(w.y_new[i]));
                    err = std::max(err, std::abs(e) / scale);
                }
                if (!std::isfinite(err))
                    failure = TrialFailure::non_finite;
            }

            if (failure != TrialFailure::none) {
                ++out.stats.rejected;
                rejected_last = true;
                if (step * kFailureShrink < min_step) {
                    if (failure == TrialFailure::domain)
                        throw DomainError(*last_domain_message, t);
                    throw NonFiniteState("state became non-finite", t);
                }
                h = step * kFailureShrink;
                continue;
            }

            if (err <= 1.0) {
                ++out.stats.accepted;
                t = clipped ? target : t + step;
                y.swap(w.y_new);
                w.k1.swap(w.k7);
                last_domain_message.reset();

                double factor =
                    err == 0.0 ? kMaxFactor
                               : std::clamp(kSafety * std::pow(err, -0.2), kMinFactor, kMaxFactor);
                if (rejected_last)
                    factor = std::min(factor, 1.0);
                const double proposal = step * factor;
                // a clipped step says nothing against the unclipped size
                h = (clipped && factor >= 1.0) ? std::max(h, proposal) : proposal;
                h = std::min(h, settings.max_step);
                rejected_last = false;
            } else {
                ++out.stats.rejected;
                rejected_last = true;
                h = step * std::max(kMinFactor, kSafety * std::pow(err, -0.2));
            }
        }
        out.times.push_back(target);
        out.states.push_back(y);
    }
    return out;
}

} // namespace capedu
