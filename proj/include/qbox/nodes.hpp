#pragma once

// Quasi-node dynamics of the (1, 2) superposition.
//
// Four notions of "node" are kept apart:
//   analytic-formula  x(t) = (a/pi) arccos(-A cos(dw t)), A = c1 / (2 c2)
//   real-part-zero    sign changes of Re Psi(., t)
//   density-minimum   interior local minima of |Psi(., t)|^2
//   true-zero         density minima that actually vanish
// They coincide only at the discrete times where sin(dw t) = 0.

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "qbox/core.hpp"

namespace qbox {

/// Amplitude A = c1 / (2 c2) of the arccos argument.
class RatioA {
public:
    /// Throws DomainError when `value` is not finite.
    explicit RatioA(double value);
    double value() const { return value_; }

private:
    double value_;
};

enum class NodeKind { AnalyticFormula, RealPartZero, DensityMinimum, TrueZero };

std::string_view to_string(NodeKind kind);

struct NodeSample {
    double t;
    std::optional<double> position;  // absent when no node exists at t
    NodeKind kind;
};

struct NodeTrajectory {
    WellConfig config;
    TwoStateSuperposition state;
    std::optional<RatioA> ratio;  // only defined for real coefficients with c2 != 0
    NodeKind kind;
    std::vector<NodeSample> samples;  // strictly increasing t
};

struct DensityMinimum {
    double position;
    double density;
};

inline constexpr std::size_t kDefaultScanGrid = 2048;

/// (a/pi) arccos(u) with u = -A cos(dw t); absent when |u| > 1.
std::optional<double> analytic_node_position(const WellConfig& cfg, RatioA ratio, double t);

/// Throws DegenerateStateError if c2 == 0, UnsupportedError for materially complex coefficients.
RatioA ratio_from_state(const TwoStateSuperposition& state);

/// Interior sign changes of Re Psi(., t), bisected to 1e-12 a. Requires real coefficients.
std::vector<double> find_real_part_zeros(const WellConfig& cfg, const TwoStateSuperposition& state, double t,
                                         std::size_t grid_n = kDefaultScanGrid);

/// Interior local minima of the density: grid scan, then golden-section refinement to 1e-10 a.
std::vector<DensityMinimum> find_density_minima(const WellConfig& cfg, const TwoStateSuperposition& state,
                                                double t, std::size_t grid_n = kDefaultScanGrid);

/// Density minima at t whose value is at most 1e-10 of the maximum density at t.
std::vector<double> find_true_zeros(const WellConfig& cfg, const TwoStateSuperposition& state, double t,
                                    std::size_t grid_n = kDefaultScanGrid);

/// Times in [0, period_count * 2 pi / dw] at which the density has an interior zero
/// (relative threshold 1e-10 of the spatial maximum). Real coefficients only; c1 == 0
/// is rejected because the psi_2 node then persists for all t.
std::vector<double> exact_zero_times(const WellConfig& cfg, const TwoStateSuperposition& state,
                                     std::size_t period_count);

/// n_samples uniform samples over the half-open window [t_start, t_end), so a window of one
/// beat period has no duplicated endpoint. Where several roots exist the one
/// nearest the previous position is kept; the first sample is seeded nearest a/2.
NodeTrajectory track_trajectory(const WellConfig& cfg, const TwoStateSuperposition& state, NodeKind kind,
                                double t_start, double t_end, std::size_t n_samples,
                                std::size_t grid_n = kDefaultScanGrid);

}  // namespace qbox
