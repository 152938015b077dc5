#pragma once

// Sweeps and time averages over the quasi-node trajectory and the density.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "qbox/core.hpp"
#include "qbox/nodes.hpp"

namespace qbox {

enum class Spacing { Linear, Logarithmic };

struct SweepSpec {
    double a_min = 0.05;
    double a_max = 1.0;
    std::size_t count = 64;
    Spacing spacing = Spacing::Logarithmic;
};

struct AmplitudeEntry {
    double ratio;
    double amplitude;
};

struct AmplitudeSweep {
    std::vector<AmplitudeEntry> entries;  // ratio strictly increasing in (0, 1]
    SweepSpec spec;
};

enum class FitMethod {
    /// Ordinary least squares on (ln A, ln amplitude).
    LogLogOls,
    /// Levenberg-Marquardt on the linear-space residuals amplitude - k A^p, seeded by LogLogOls.
    NonlinearLeastSquares,
};

std::string_view to_string(FitMethod method);

struct PowerLawFit {
    double coefficient;
    double exponent;
    double rms_log_residual;
    FitMethod method;

    double predict(double ratio) const;
};

struct HeatmapGrid {
    std::vector<double> x_values;    // uniform over [0, a]
    std::vector<double> mix_values;  // mixing angle theta, uniform over [0, pi/2]
    std::vector<std::vector<double>> values;  // values[theta][x]
};

inline constexpr std::size_t kDefaultTimeSamples = 1024;

/// Half the peak-to-peak range of the analytic trajectory over one period.
/// Throws UnsupportedError when |A| > 1 (the node leaves the well during the period).
double oscillation_amplitude(const WellConfig& cfg, RatioA ratio, std::size_t n_samples = kDefaultTimeSamples);

/// A values for a sweep: endpoints included exactly.
std::vector<double> sweep_ratios(const SweepSpec& spec);

AmplitudeSweep amplitude_sweep(const WellConfig& cfg, const SweepSpec& spec);

/// Power law amplitude ~ k A^p. Needs >= 3 points; non-positive data is a DomainError.
PowerLawFit fit_power_law(std::span<const double> ratios, std::span<const double> amplitudes,
                          FitMethod method = FitMethod::LogLogOls);
PowerLawFit fit_power_law(const AmplitudeSweep& sweep, FitMethod method = FitMethod::LogLogOls);

/// Mean analytic node position over one period; requires |A| < 1.
double time_avg_node_position(const WellConfig& cfg, RatioA ratio, std::size_t n_samples = kDefaultTimeSamples);

/// Mean of density_exact over one beat period.
double time_avg_density(const WellConfig& cfg, const TwoStateSuperposition& state, double x,
                        std::size_t n_samples = kDefaultTimeSamples);

/// Rows over theta in [0, pi/2] with (c1, c2) = (cos theta, sin theta); cells are time_avg_density.
HeatmapGrid heatmap(const WellConfig& cfg, std::size_t x_count, std::size_t mix_count);

/// Trapezoid integral of one heatmap row over x.
double row_integral(const HeatmapGrid& grid, std::size_t row);

/// Positions of the local maxima of one row (a plateau counts once).
std::vector<double> row_peaks(const HeatmapGrid& grid, std::size_t row);

/// Distance between the outermost peaks of a row; 0 for a single peak.
double peak_separation(const HeatmapGrid& grid, std::size_t row);

}  // namespace qbox
