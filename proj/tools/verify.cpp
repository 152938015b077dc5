#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>

#include "qbox/analysis.hpp"
#include "qbox/nodes.hpp"
#include "table.hpp"

namespace qbox::cli {
namespace {

constexpr double kPi = std::numbers::pi;

// Portable uniform draws: std::uniform_real_distribution differs across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double uniform(double lo, double hi) {
        const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * unit;
    }
    double sign() { return uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0; }

private:
    std::mt19937_64 engine_;
};

TwoStateSuperposition random_complex_state(Rng& rng) {
    return TwoStateSuperposition{{rng.uniform(-1, 1), rng.uniform(-1, 1)}, {rng.uniform(-1, 1), rng.uniform(-1, 1)}};
}

// Both coefficients bounded away from zero.
TwoStateSuperposition random_real_state(Rng& rng) {
    return TwoStateSuperposition{rng.sign() * rng.uniform(0.2, 1.0), rng.sign() * rng.uniform(0.2, 1.0)};
}

class Checks {
public:
    Checks(const VerifyOptions& options) : opt_(options), rng_(options.seed) {}

    void add(std::string name, double measured, double tolerance) {
        const bool passed = std::isfinite(measured) && measured <= tolerance * opt_.tolerance_scale;
        results_.push_back({std::move(name), measured, tolerance, passed});
    }

    std::vector<CheckResult> run() {
        core_checks();
        node_checks();
        analysis_checks();
        return std::move(results_);
    }

private:
    const WellConfig& cfg() const { return opt_.well; }
    double a() const { return opt_.well.width(); }
    double period() const { return beat_period(opt_.well); }

    void core_checks() {
        const double expected_dw = 3.0 * kPi * kPi * cfg().hbar() / (2.0 * cfg().mass() * a() * a());
        add("delta-omega-closed-form", std::abs(delta_omega(cfg()) - expected_dw), 1e-12 * expected_dw);

        double boundary = 0.0;
        double negative = 0.0;
        double closed_form = 0.0;
        double periodicity = 0.0;
        for (int s = 0; s < 20; ++s) {
            const auto state = random_complex_state(rng_);
            for (int k = 0; k < 16; ++k) {
                const double t = period() * k / 16.0;
                boundary = std::max({boundary, std::abs(evaluate_psi(cfg(), state, 0.0, t)),
                                     std::abs(evaluate_psi(cfg(), state, a(), t))});
                for (int i = 0; i <= 128; ++i) {
                    const double x = a() * i / 128.0;
                    const double rho = density_exact(cfg(), state, x, t);
                    negative = std::max(negative, -rho);
                    closed_form = std::max(closed_form, std::abs(density_closed_form(cfg(), state, x, t) - rho));
                    periodicity = std::max(periodicity, std::abs(density_exact(cfg(), state, x, t + period()) - rho));
                }
            }
        }
        add("boundary-zero", boundary, 0.0);
        add("density-nonnegative", negative, 0.0);
        add("closed-form-equivalence", closed_form, 1e-12);
        add("density-periodicity", periodicity, 1e-12);

        double norm_value = 0.0;
        double norm_drift = 0.0;
        for (int s = 0; s < 5; ++s) {
            const auto state = random_complex_state(rng_);
            double lo = 1e300, hi = -1e300;
            for (int k = 0; k < 10; ++k) {
                const double n = norm_integral(cfg(), state, period() * k / 10.0);
                lo = std::min(lo, n);
                hi = std::max(hi, n);
                norm_value = std::max(norm_value, std::abs(n - state.norm_squared()));
            }
            norm_drift = std::max(norm_drift, hi - lo);
        }
        add("norm-integral", norm_value, 1e-8);
        add("norm-conservation", norm_drift, 1e-10);

        const TwoStateSuperposition ground{1.0, 0.0};
        double stationary = 0.0;
        for (int i = 0; i <= 256; ++i) {
            const double x = a() * i / 256.0;
            stationary = std::max(stationary, std::abs(density_exact(cfg(), ground, x, 0.0) -
                                                       density_exact(cfg(), ground, x, 0.37 * period())));
        }
        add("stationary-state", stationary, 1e-13);

        double node_count_errors = 0.0;
        for (int n = 1; n <= 6; ++n) {
            int changes = 0;
            double prev = eigenfunction(cfg(), EigenIndex{n}, a() / 10000.0);
            for (int i = 2; i < 10000; ++i) {
                const double cur = eigenfunction(cfg(), EigenIndex{n}, a() * i / 10000.0);
                if (cur != 0.0 && prev != 0.0 && (cur < 0.0) != (prev < 0.0)) ++changes;
                if (cur != 0.0) prev = cur;
            }
            node_count_errors += std::abs(changes - (n - 1));
        }
        add("eigenfunction-node-count", node_count_errors, 0.0);
    }

    void node_checks() {
        double period_err = 0.0;
        double reflection = 0.0;
        for (int s = 0; s < 20; ++s) {
            const RatioA ratio{rng_.uniform(-1.0, 1.0)};
            for (int k = 0; k < 64; ++k) {
                const double t = period() * k / 64.0;
                const double x = *analytic_node_position(cfg(), ratio, t);
                period_err = std::max(period_err, std::abs(*analytic_node_position(cfg(), ratio, t + period()) - x));
                reflection = std::max(reflection,
                                      std::abs(x + *analytic_node_position(cfg(), ratio, t + 0.5 * period()) - a()));
            }
        }
        add("node-period", period_err, 1e-12);
        add("node-reflection-symmetry", reflection, 1e-12);

        const auto traj = track_trajectory(cfg(), TwoStateSuperposition{1.0, 1.0}, NodeKind::AnalyticFormula, 0.0,
                                           period(), 256);
        double lo = a(), hi = 0.0;
        for (const auto& s : traj.samples) {
            lo = std::min(lo, *s.position);
            hi = std::max(hi, *s.position);
        }
        add("node-range-attained", std::max(std::abs(lo - a() / 3.0), std::abs(hi - 2.0 * a() / 3.0)), 1e-9);

        double agreement = 0.0;
        double zero_density = 0.0;
        double between = 0.0;
        double tracker = 0.0;
        for (int s = 0; s < 5; ++s) {
            const auto state = random_real_state(rng_);
            const double c1 = state.c1().real();
            const double c2 = state.c2().real();
            const RatioA ratio = ratio_from_state(state);
            if (std::abs(ratio.value()) < 0.95) {
                for (double t : {0.0, 0.5 * period(), period()}) {
                    const double x = *analytic_node_position(cfg(), ratio, t);
                    const auto re = find_real_part_zeros(cfg(), state, t);
                    const auto mins = find_density_minima(cfg(), state, t);
                    double best_re = 1.0, best_min = 1.0, best_rho = 1e300;
                    for (double r : re) best_re = std::min(best_re, std::abs(r - x));
                    for (const auto& m : mins) {
                        if (std::abs(m.position - x) < best_min) {
                            best_min = std::abs(m.position - x);
                            best_rho = m.density;
                        }
                    }
                    agreement = std::max({agreement, best_re, best_min});
                    zero_density = std::max(zero_density, best_rho);
                }
            }
            // Away from the special times the density keeps a positive floor.
            for (double frac : {0.1, 0.25, 0.4, 0.6, 0.9}) {
                const double t = frac * period();
                double floor = 1e300;
                for (int i = 1; i < 1024; ++i) floor = std::min(floor, density_exact(cfg(), state, a() * i / 1024.0, t));
                for (const auto& m : find_density_minima(cfg(), state, t)) floor = std::min(floor, m.density);
                between += floor > 0.0 ? 0.0 : 1.0;
            }
            for (int k = 0; k < 16; ++k) {
                const double t = period() * (k + 0.3) / 16.0;
                const double u = -(c1 * std::cos(omega(cfg(), EigenIndex{1}) * t)) /
                                 (2.0 * c2 * std::cos(omega(cfg(), EigenIndex{2}) * t));
                const auto roots = find_real_part_zeros(cfg(), state, t);
                if (std::abs(u) > 1.0) {
                    tracker = std::max(tracker, static_cast<double>(roots.size()));
                } else if (1.0 - std::abs(u) > 1e-5) {
                    const double expected = a() / kPi * std::acos(u);
                    double best = roots.empty() ? 1.0 : a();
                    for (double r : roots) best = std::min(best, std::abs(r - expected));
                    tracker = std::max(tracker, best);
                }
            }
        }
        add("special-time-agreement", agreement, 1e-8);
        add("special-time-zero-density", zero_density, 1e-10);
        add("no-zero-between-special-times", between, 0.0);
        add("real-part-tracker-consistency", tracker, 1e-10);
    }

    void analysis_checks() {
        double amplitude = 0.0;
        for (int s = 0; s < 50; ++s) {
            const double ratio = rng_.uniform(1e-3, 1.0);
            amplitude = std::max(amplitude, std::abs(oscillation_amplitude(cfg(), RatioA{ratio}) -
                                                     a() / kPi * std::asin(ratio)));
        }
        add("amplitude-arcsin-oracle", amplitude, 1e-9);

        double mean = 0.0;
        for (int s = 0; s < 20; ++s) {
            mean = std::max(mean, std::abs(time_avg_node_position(cfg(), RatioA{rng_.uniform(-0.99, 0.99)}) - 0.5 * a()));
        }
        add("mean-position-symmetry", mean, 1e-9);

        double stationary = 0.0;
        for (int s = 0; s < 5; ++s) {
            const auto state = normalize(random_real_state(rng_));
            for (int i = 0; i < 256; ++i) {
                const double x = a() * i / 255.0;
                const double p1 = eigenfunction(cfg(), EigenIndex{1}, x);
                const double p2 = eigenfunction(cfg(), EigenIndex{2}, x);
                const double expected = std::norm(state.c1()) * p1 * p1 + std::norm(state.c2()) * p2 * p2;
                stationary = std::max(stationary, std::abs(time_avg_density(cfg(), state, x) - expected));
            }
        }
        add("time-average-stationarity", stationary, 1e-10);

        const auto grid = heatmap(cfg(), 64, 16);
        double row_norm = 0.0;
        double separation_drops = 0.0;
        for (std::size_t r = 0; r < grid.values.size(); ++r) {
            row_norm = std::max(row_norm, std::abs(row_integral(grid, r) - 1.0));
            if (r > 0 && peak_separation(grid, r) < peak_separation(grid, r - 1)) separation_drops += 1.0;
        }
        add("heatmap-row-normalization", row_norm, 1e-6);
        add("heatmap-peak-separation-monotone", separation_drops, 0.0);

        const auto sweep = amplitude_sweep(cfg(), SweepSpec{});
        const auto log_fit = fit_power_law(sweep, FitMethod::LogLogOls);
        add("fit-log-residual-positive", log_fit.rms_log_residual > 0.0 ? 0.0 : 1.0, 0.0);
        add("fit-log-residual-bound", log_fit.rms_log_residual, 0.15);
        const auto nls_fit = fit_power_law(sweep, FitMethod::NonlinearLeastSquares);
        add("fit-coefficient-0.42", std::abs(nls_fit.coefficient / a() - 0.42), 0.05);
        add("fit-exponent-1.32", std::abs(nls_fit.exponent - 1.32), 0.15);
    }

    const VerifyOptions& opt_;
    Rng rng_;
    std::vector<CheckResult> results_;
};

std::string short_sci(double v) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(3) << v;
    return os.str();
}

}  // namespace

std::vector<CheckResult> run_invariant_checks(const VerifyOptions& options) { return Checks{options}.run(); }

bool report(const VerifyOptions& options, const std::vector<CheckResult>& results, std::ostream& out) {
    out << "delta_omega = " << format_double(delta_omega(options.well)) << "\n";
    bool all = true;
    for (const auto& r : results) {
        all = all && r.passed;
        out << (r.passed ? "PASS " : "FAIL ") << std::left << std::setw(36) << r.name
            << " measured=" << short_sci(r.measured) << " tol=" << short_sci(r.tolerance * options.tolerance_scale)
            << "\n";
    }
    out << (all ? "all checks passed" : "verification FAILED") << "\n";
    return all;
}

}  // namespace qbox::cli
