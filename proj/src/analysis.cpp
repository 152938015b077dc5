#include "qbox/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qbox/errors.hpp"
#include "qbox/numerics.hpp"

namespace qbox {
namespace {

constexpr double kExtremumTolerance = 1e-10;

void require_samples(std::size_t n, std::size_t minimum, const char* what) {
    if (n < minimum) {
        throw std::invalid_argument(std::string(what) + " needs at least " + std::to_string(minimum) +
                                    " samples, got " + std::to_string(n));
    }
}

// Analytic trajectory for |A| <= 1, where the node always exists.
double node_at(const WellConfig& cfg, RatioA ratio, double t) { return *analytic_node_position(cfg, ratio, t); }

struct LineFit {
    double slope;
    double intercept;
};

LineFit least_squares_line(std::span<const double> xs, std::span<const double> ys) {
    const double n = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    if (sxx == 0.0) {
        throw DomainError("power-law fit needs at least two distinct A values");
    }
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

double sum_squared_residuals(std::span<const double> xs, std::span<const double> ys, double k, double p) {
    double sse = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - k * std::pow(xs[i], p);
        sse += r * r;
    }
    return sse;
}

// Levenberg-Marquardt for y = k x^p with Marquardt diagonal scaling.
void refine_linear_space(std::span<const double> xs, std::span<const double> ys, double& k, double& p) {
    double lambda = 1e-3;
    double sse = sum_squared_residuals(xs, ys, k, p);
    for (int iter = 0; iter < 500; ++iter) {
        double jkk = 0.0, jkp = 0.0, jpp = 0.0, gk = 0.0, gp = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double xp = std::pow(xs[i], p);
            const double dk = xp;
            const double dp = k * xp * std::log(xs[i]);
            const double r = ys[i] - k * xp;
            jkk += dk * dk;
            jkp += dk * dp;
            jpp += dp * dp;
            gk += dk * r;
            gp += dp * r;
        }
        bool improved = false;
        while (lambda < 1e16) {
            const double akk = jkk * (1.0 + lambda);
            const double app = jpp * (1.0 + lambda);
            const double det = akk * app - jkp * jkp;
            if (det <= 0.0 || !std::isfinite(det)) {
                lambda *= 10.0;
                continue;
            }
            const double step_k = (app * gk - jkp * gp) / det;
            const double step_p = (akk * gp - jkp * gk) / det;
            const double trial = sum_squared_residuals(xs, ys, k + step_k, p + step_p);
            if (trial < sse) {
                const bool converged = std::abs(step_k) <= 1e-15 * std::abs(k) && std::abs(step_p) <= 1e-15 * (1.0 + std::abs(p));
                k += step_k;
                p += step_p;
                sse = trial;
                lambda = std::max(lambda / 10.0, 1e-12);
                improved = !converged;
                break;
            }
            lambda *= 10.0;
        }
        if (!improved) break;
    }
}

}  // namespace

std::string_view to_string(FitMethod method) {
    switch (method) {
        case FitMethod::LogLogOls:
            return "log-log-ols";
        case FitMethod::NonlinearLeastSquares:
            return "nonlinear-least-squares";
    }
    return "unknown";
}

double PowerLawFit::predict(double ratio) const { return coefficient * std::pow(ratio, exponent); }

double oscillation_amplitude(const WellConfig& cfg, RatioA ratio, std::size_t n_samples) {
    require_samples(n_samples, 64, "oscillation_amplitude");
    if (std::abs(ratio.value()) > 1.0) {
        throw UnsupportedError("oscillation amplitude needs |A| <= 1");
    }
    const double period = beat_period(cfg);
    const double dt = period / static_cast<double>(n_samples);
    std::size_t i_max = 0;
    std::size_t i_min = 0;
    std::vector<double> xs(n_samples);
    for (std::size_t j = 0; j < n_samples; ++j) {
        xs[j] = node_at(cfg, ratio, dt * static_cast<double>(j));
        if (xs[j] > xs[i_max]) i_max = j;
        if (xs[j] < xs[i_min]) i_min = j;
    }
    const double tol = kExtremumTolerance * period;
    const auto around = [&](std::size_t j) { return dt * static_cast<double>(j); };

    const auto peak = numerics::golden_section_minimize([&](double t) { return -node_at(cfg, ratio, t); },
                                                        around(i_max) - dt, around(i_max) + dt, tol);
    const auto trough = numerics::golden_section_minimize([&](double t) { return node_at(cfg, ratio, t); },
                                                          around(i_min) - dt, around(i_min) + dt, tol);
    const double x_max = std::max(xs[i_max], -peak.value);
    const double x_min = std::min(xs[i_min], trough.value);
    return 0.5 * (x_max - x_min);
}

std::vector<double> sweep_ratios(const SweepSpec& spec) {
    if (!(spec.a_min > 0.0 && spec.a_min < spec.a_max && spec.a_max <= 1.0)) {
        throw std::invalid_argument("sweep needs 0 < A_min < A_max <= 1");
    }
    if (spec.count < 2) {
        throw std::invalid_argument("sweep needs at least 2 points");
    }
    std::vector<double> ratios(spec.count);
    const double last = static_cast<double>(spec.count - 1);
    for (std::size_t i = 0; i < spec.count; ++i) {
        const double f = static_cast<double>(i) / last;
        ratios[i] = spec.spacing == Spacing::Logarithmic
                        ? std::exp(std::log(spec.a_min) + f * (std::log(spec.a_max) - std::log(spec.a_min)))
                        : spec.a_min + f * (spec.a_max - spec.a_min);
    }
    ratios.front() = spec.a_min;
    ratios.back() = spec.a_max;
    return ratios;
}

AmplitudeSweep amplitude_sweep(const WellConfig& cfg, const SweepSpec& spec) {
    AmplitudeSweep sweep{{}, spec};
    for (double a : sweep_ratios(spec)) {
        sweep.entries.push_back({a, oscillation_amplitude(cfg, RatioA{a})});
    }
    return sweep;
}

PowerLawFit fit_power_law(std::span<const double> ratios, std::span<const double> amplitudes, FitMethod method) {
    if (ratios.size() != amplitudes.size()) {
        throw std::invalid_argument("power-law fit: ratio and amplitude counts differ");
    }
    if (ratios.size() < 3) {
        throw std::invalid_argument("power-law fit needs at least 3 points");
    }
    std::vector<double> log_x(ratios.size());
    std::vector<double> log_y(ratios.size());
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        if (!(ratios[i] > 0.0 && amplitudes[i] > 0.0) || !std::isfinite(ratios[i]) || !std::isfinite(amplitudes[i])) {
            throw DomainError("power-law fit needs strictly positive finite data");
        }
        log_x[i] = std::log(ratios[i]);
        log_y[i] = std::log(amplitudes[i]);
    }
    const LineFit line = least_squares_line(log_x, log_y);
    double k = std::exp(line.intercept);
    double p = line.slope;
    if (method == FitMethod::NonlinearLeastSquares) {
        refine_linear_space(ratios, amplitudes, k, p);
    }

    double sum_sq = 0.0;
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        const double r = log_y[i] - (std::log(k) + p * log_x[i]);
        sum_sq += r * r;
    }
    return {k, p, std::sqrt(sum_sq / static_cast<double>(ratios.size())), method};
}

PowerLawFit fit_power_law(const AmplitudeSweep& sweep, FitMethod method) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& e : sweep.entries) {
        xs.push_back(e.ratio);
        ys.push_back(e.amplitude);
    }
    return fit_power_law(xs, ys, method);
}

double time_avg_node_position(const WellConfig& cfg, RatioA ratio, std::size_t n_samples) {
    require_samples(n_samples, 64, "time_avg_node_position");
    if (std::abs(ratio.value()) >= 1.0) {
        throw UnsupportedError("time-averaged node position needs |A| < 1");
    }
    const double dt = beat_period(cfg) / static_cast<double>(n_samples);
    double sum = 0.0;
    for (std::size_t j = 0; j < n_samples; ++j) {
        sum += node_at(cfg, ratio, dt * static_cast<double>(j));
    }
    return sum / static_cast<double>(n_samples);
}

double time_avg_density(const WellConfig& cfg, const TwoStateSuperposition& state, double x, std::size_t n_samples) {
    require_samples(n_samples, 2, "time_avg_density");
    const double dt = beat_period(cfg) / static_cast<double>(n_samples);
    double sum = 0.0;
    for (std::size_t j = 0; j < n_samples; ++j) {
        sum += density_exact(cfg, state, x, dt * static_cast<double>(j));
    }
    return sum / static_cast<double>(n_samples);
}

HeatmapGrid heatmap(const WellConfig& cfg, std::size_t x_count, std::size_t mix_count) {
    if (x_count < 8 || mix_count < 8) {
        throw std::invalid_argument("heatmap needs at least 8 positions and 8 mixing angles");
    }
    HeatmapGrid grid;
    grid.x_values.resize(x_count);
    for (std::size_t i = 0; i < x_count; ++i) {
        grid.x_values[i] = cfg.width() * static_cast<double>(i) / static_cast<double>(x_count - 1);
    }
    grid.x_values.back() = cfg.width();

    grid.mix_values.resize(mix_count);
    grid.values.assign(mix_count, std::vector<double>(x_count));
    for (std::size_t j = 0; j < mix_count; ++j) {
        const bool last = j + 1 == mix_count;
        const double theta = last ? std::numbers::pi / 2.0
                                  : std::numbers::pi / 2.0 * static_cast<double>(j) / static_cast<double>(mix_count - 1);
        grid.mix_values[j] = theta;
        const TwoStateSuperposition state{last ? 0.0 : std::cos(theta), j == 0 ? 0.0 : std::sin(theta)};
        for (std::size_t i = 0; i < x_count; ++i) {
            grid.values[j][i] = time_avg_density(cfg, state, grid.x_values[i]);
        }
    }
    return grid;
}

double row_integral(const HeatmapGrid& grid, std::size_t row) {
    const double dx = grid.x_values[1] - grid.x_values[0];
    return numerics::trapezoid(grid.values.at(row), dx);
}

std::vector<double> row_peaks(const HeatmapGrid& grid, std::size_t row) {
    const auto& v = grid.values.at(row);
    std::vector<double> peaks;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        if (v[i] >= v[i - 1] && v[i] > v[i + 1]) {
            peaks.push_back(grid.x_values[i]);
        }
    }
    return peaks;
}

double peak_separation(const HeatmapGrid& grid, std::size_t row) {
    const auto peaks = row_peaks(grid, row);
    if (peaks.size() < 2) return 0.0;
    return peaks.back() - peaks.front();
}

}  // namespace qbox
