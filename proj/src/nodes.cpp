#include "qbox/nodes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qbox/errors.hpp"
#include "qbox/numerics.hpp"

namespace qbox {
namespace {

constexpr double kRootTolerance = 1e-12;     // relative to a
constexpr double kMinimumTolerance = 1e-10;  // relative to a
constexpr double kZeroThreshold = 1e-10;     // relative to the spatial maximum
constexpr std::size_t kTimeScanPerPeriod = 256;

bool is_real(Complex c) { return std::abs(c.imag()) <= 1e-14 * std::abs(c); }

void require_real(const TwoStateSuperposition& state) {
    if (!is_real(state.c1()) || !is_real(state.c2())) {
        throw UnsupportedError("analytic node tracking needs real coefficients");
    }
}

void require_grid(std::size_t grid_n) {
    if (grid_n < 16) {
        throw std::invalid_argument("scan grid needs at least 16 intervals, got " + std::to_string(grid_n));
    }
}

double grid_point(const WellConfig& cfg, std::size_t i, std::size_t grid_n) {
    if (i == grid_n) return cfg.width();
    return cfg.width() * static_cast<double>(i) / static_cast<double>(grid_n);
}

// Densities on the closed grid plus refined interior minima.
struct DensityScan {
    double max_density = 0.0;
    std::vector<DensityMinimum> minima;
};

DensityScan scan_density(const WellConfig& cfg, const TwoStateSuperposition& state, double t, std::size_t grid_n) {
    require_grid(grid_n);
    std::vector<double> values(grid_n + 1);
    for (std::size_t i = 0; i <= grid_n; ++i) {
        values[i] = density_exact(cfg, state, grid_point(cfg, i, grid_n), t);
    }
    DensityScan scan;
    scan.max_density = *std::max_element(values.begin(), values.end());
    const auto density_at = [&](double x) { return density_exact(cfg, state, x, t); };
    for (std::size_t i = 1; i < grid_n; ++i) {
        if (values[i] < values[i - 1] && values[i] <= values[i + 1]) {
            const auto best = numerics::golden_section_minimize(density_at, grid_point(cfg, i - 1, grid_n),
                                                                grid_point(cfg, i + 1, grid_n),
                                                                kMinimumTolerance * cfg.width());
            scan.minima.push_back(best.value <= values[i]
                                      ? DensityMinimum{best.x, best.value}
                                      : DensityMinimum{grid_point(cfg, i, grid_n), values[i]});
        }
    }
    return scan;
}

// Smallest interior minimum relative to the spatial maximum; 1 when there is no interior minimum.
double relative_min_density(const WellConfig& cfg, const TwoStateSuperposition& state, double t) {
    const DensityScan scan = scan_density(cfg, state, t, kDefaultScanGrid);
    double best = 1.0;
    for (const auto& m : scan.minima) {
        best = std::min(best, m.density / scan.max_density);
    }
    return best;
}

std::optional<RatioA> try_ratio(const TwoStateSuperposition& state) {
    if (state.c2() == Complex{0.0, 0.0} || !is_real(state.c1()) || !is_real(state.c2())) {
        return std::nullopt;
    }
    return ratio_from_state(state);
}

}  // namespace

RatioA::RatioA(double value) : value_(value) {
    if (!std::isfinite(value)) {
        throw DomainError("ratio A must be finite");
    }
}

std::string_view to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::AnalyticFormula:
            return "analytic-formula";
        case NodeKind::RealPartZero:
            return "real-part-zero";
        case NodeKind::DensityMinimum:
            return "density-minimum";
        case NodeKind::TrueZero:
            return "true-zero";
    }
    return "unknown";
}

std::optional<double> analytic_node_position(const WellConfig& cfg, RatioA ratio, double t) {
    const double u = -ratio.value() * std::cos(delta_omega(cfg) * t);
    if (std::abs(u) > 1.0) {
        return std::nullopt;
    }
    return cfg.width() / std::numbers::pi * std::acos(u);
}

RatioA ratio_from_state(const TwoStateSuperposition& state) {
    if (state.c2() == Complex{0.0, 0.0}) {
        throw DegenerateStateError("ratio c1/(2 c2) undefined for c2 = 0");
    }
    require_real(state);
    return RatioA{state.c1().real() / (2.0 * state.c2().real())};
}

std::vector<double> find_real_part_zeros(const WellConfig& cfg, const TwoStateSuperposition& state, double t,
                                         std::size_t grid_n) {
    require_grid(grid_n);
    require_real(state);
    const auto re_psi = [&](double x) { return evaluate_psi(cfg, state, x, t).real(); };

    std::vector<double> roots;
    double prev = re_psi(grid_point(cfg, 1, grid_n));
    if (prev == 0.0) roots.push_back(grid_point(cfg, 1, grid_n));
    for (std::size_t i = 2; i < grid_n; ++i) {
        const double x = grid_point(cfg, i, grid_n);
        const double cur = re_psi(x);
        if (cur == 0.0) {
            roots.push_back(x);
        } else if (prev != 0.0 && (prev < 0.0) != (cur < 0.0)) {
            roots.push_back(numerics::bisect(re_psi, grid_point(cfg, i - 1, grid_n), x, kRootTolerance * cfg.width()));
        }
        prev = cur;
    }
    return roots;
}

std::vector<DensityMinimum> find_density_minima(const WellConfig& cfg, const TwoStateSuperposition& state,
                                                double t, std::size_t grid_n) {
    return scan_density(cfg, state, t, grid_n).minima;
}

std::vector<double> find_true_zeros(const WellConfig& cfg, const TwoStateSuperposition& state, double t,
                                    std::size_t grid_n) {
    const DensityScan scan = scan_density(cfg, state, t, grid_n);
    std::vector<double> zeros;
    for (const auto& m : scan.minima) {
        if (m.density <= kZeroThreshold * scan.max_density) {
            zeros.push_back(m.position);
        }
    }
    return zeros;
}

std::vector<double> exact_zero_times(const WellConfig& cfg, const TwoStateSuperposition& state,
                                     std::size_t period_count) {
    require_real(state);
    if (state.c1() == Complex{0.0, 0.0}) {
        throw DegenerateStateError("c1 = 0 is stationary: the psi_2 node is a zero at every time");
    }
    if (period_count == 0) {
        return {};
    }
    const double span = static_cast<double>(period_count) * beat_period(cfg);
    const std::size_t steps = kTimeScanPerPeriod * period_count;
    const double dt = span / static_cast<double>(steps);
    const auto time_at = [&](std::size_t k) { return k == steps ? span : dt * static_cast<double>(k); };
    const auto rel = [&](double t) { return relative_min_density(cfg, state, t); };

    std::vector<double> scan(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) {
        scan[k] = rel(time_at(k));
    }

    std::vector<double> times;
    for (std::size_t k = 0; k <= steps; ++k) {
        const bool left_ok = k == 0 || scan[k] < scan[k - 1];
        const bool right_ok = k == steps || scan[k] <= scan[k + 1];
        if (!left_ok || !right_ok) continue;

        const double lo = k == 0 ? 0.0 : time_at(k - 1);
        const double hi = k == steps ? span : time_at(k + 1);
        auto best = numerics::golden_section_minimize(rel, lo, hi, 1e-10 * beat_period(cfg));
        if (scan[k] <= best.value) {
            best = {time_at(k), scan[k]};
        }
        if (best.value > kZeroThreshold) continue;
        if (!times.empty() && std::abs(best.x - times.back()) < 0.5 * dt) continue;
        times.push_back(best.x);
    }
    return times;
}

NodeTrajectory track_trajectory(const WellConfig& cfg, const TwoStateSuperposition& state, NodeKind kind,
                                double t_start, double t_end, std::size_t n_samples, std::size_t grid_n) {
    if (!(std::isfinite(t_start) && std::isfinite(t_end) && t_start < t_end)) {
        throw std::invalid_argument("trajectory needs finite t_start < t_end");
    }
    if (n_samples < 2) {
        throw std::invalid_argument("trajectory needs at least 2 samples");
    }
    require_grid(grid_n);

    NodeTrajectory trajectory{cfg, state, std::nullopt, kind, {}};
    if (kind == NodeKind::AnalyticFormula) {
        trajectory.ratio = ratio_from_state(state);
    } else {
        trajectory.ratio = try_ratio(state);
    }

    const auto candidates_at = [&](double t) -> std::vector<double> {
        switch (kind) {
            case NodeKind::AnalyticFormula: {
                const auto x = analytic_node_position(cfg, *trajectory.ratio, t);
                return x ? std::vector<double>{*x} : std::vector<double>{};
            }
            case NodeKind::RealPartZero:
                return find_real_part_zeros(cfg, state, t, grid_n);
            case NodeKind::DensityMinimum: {
                std::vector<double> xs;
                for (const auto& m : find_density_minima(cfg, state, t, grid_n)) xs.push_back(m.position);
                return xs;
            }
            case NodeKind::TrueZero:
                return find_true_zeros(cfg, state, t, grid_n);
        }
        return {};
    };

    double reference = 0.5 * cfg.width();
    const double step = (t_end - t_start) / static_cast<double>(n_samples);
    trajectory.samples.reserve(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double t = t_start + step * static_cast<double>(i);
        const auto candidates = candidates_at(t);
        std::optional<double> chosen;
        double best_distance = std::numeric_limits<double>::infinity();
        for (double x : candidates) {
            const double d = std::abs(x - reference);
            if (d < best_distance) {
                best_distance = d;
                chosen = x;
            }
        }
        if (chosen) reference = *chosen;
        trajectory.samples.push_back({t, chosen, kind});
    }
    return trajectory;
}

}  // namespace qbox
