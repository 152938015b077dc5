#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "qbox/errors.hpp"
#include "qbox/nodes.hpp"

using namespace qbox;
using std::numbers::pi;

namespace {

const WellConfig unit{};
const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
const TwoStateSuperposition equal{inv_sqrt2, inv_sqrt2};

// Magnitudes in [0.2, 1] with random signs.
TwoStateSuperposition random_real(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> mag(0.2, 1.0);
    std::bernoulli_distribution flip(0.5);
    return TwoStateSuperposition{(flip(rng) ? -1.0 : 1.0) * mag(rng), (flip(rng) ? -1.0 : 1.0) * mag(rng)};
}

// Values at the interior local minima of a uniform grid scan.
std::vector<double> grid_local_minima(const WellConfig& cfg, const TwoStateSuperposition& s, double t, int n) {
    std::vector<double> v(n + 1);
    for (int i = 0; i <= n; ++i) v[i] = density_exact(cfg, s, cfg.width() * i / n, t);
    std::vector<double> out;
    for (int i = 1; i < n; ++i) {
        if (v[i] < v[i - 1] && v[i] <= v[i + 1]) out.push_back(v[i]);
    }
    return out;
}

}  // namespace

TEST_CASE("analytic node position examples") {
    const double dw = delta_omega(unit);
    CHECK(*analytic_node_position(unit, RatioA{0.5}, 0.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(*analytic_node_position(unit, RatioA{0.5}, pi / dw) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    for (double t : {0.0, 0.1, 0.7}) {
        CHECK(*analytic_node_position(unit, RatioA{0.0}, t) == doctest::Approx(0.5).epsilon(1e-15));
    }
    CHECK_FALSE(analytic_node_position(unit, RatioA{1.5}, 0.0).has_value());
    CHECK(*analytic_node_position(WellConfig{2.0, 1.0, 1.0}, RatioA{0.0}, 0.3) == doctest::Approx(1.0));
    CHECK_THROWS_AS(RatioA{INFINITY}, DomainError);
}

TEST_CASE("ratio from state") {
    CHECK(ratio_from_state(equal).value() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(ratio_from_state(TwoStateSuperposition{0.6, 0.8}).value() == doctest::Approx(0.375).epsilon(1e-15));
    CHECK(ratio_from_state(TwoStateSuperposition{-0.6, 0.8}).value() == doctest::Approx(-0.375).epsilon(1e-15));
    CHECK_THROWS_AS(ratio_from_state(TwoStateSuperposition{1.0, 0.0}), DegenerateStateError);
    CHECK_THROWS_AS(ratio_from_state(TwoStateSuperposition{{0.0, 1.0}, 1.0}), UnsupportedError);
}

TEST_CASE("real-part zeros") {
    const auto equal_roots = find_real_part_zeros(unit, equal, 0.0, 2048);
    REQUIRE(equal_roots.size() == 1);
    CHECK(std::abs(equal_roots[0] - 2.0 / 3.0) < 1e-10);

    CHECK(find_real_part_zeros(unit, TwoStateSuperposition{1.0, 0.0}, 0.0).empty());

    const auto excited = find_real_part_zeros(unit, TwoStateSuperposition{0.0, 1.0}, 0.0);
    REQUIRE(excited.size() == 1);
    CHECK(std::abs(excited[0] - 0.5) < 1e-10);

    CHECK_THROWS_AS(find_real_part_zeros(unit, equal, 0.0, 8), std::invalid_argument);
    CHECK_THROWS_AS(find_real_part_zeros(unit, TwoStateSuperposition{{0.0, 1.0}, 1.0}, 0.0), UnsupportedError);
}

TEST_CASE("density minima") {
    const auto at_zero = find_density_minima(unit, equal, 0.0);
    REQUIRE(at_zero.size() == 1);
    CHECK(std::abs(at_zero[0].position - 2.0 / 3.0) < 1e-8);
    CHECK(at_zero[0].density < 1e-8);

    for (double t : {0.0, 0.05, 0.3}) {
        const auto m = find_density_minima(unit, TwoStateSuperposition{0.0, 1.0}, t);
        REQUIRE(m.size() == 1);
        CHECK(std::abs(m[0].position - 0.5) < 1e-8);
        CHECK(m[0].density < 1e-15);
    }

    const double quarter = beat_period(unit) / 4.0;
    const auto q = find_density_minima(unit, equal, quarter);
    REQUIRE(q.size() == 1);
    CHECK(q[0].density > 0.0);
    // Brute force: interior local minima of a fine grid scan, none of which vanishes.
    const auto grid_minima = grid_local_minima(unit, equal, quarter, 8192);
    REQUIRE(grid_minima.size() == 1);
    CHECK(grid_minima[0] > 1e-3);
    CHECK(q[0].density <= grid_minima[0]);
}

TEST_CASE("exact zero times for equal weights") {
    const double dw = delta_omega(unit);
    const auto times = exact_zero_times(unit, equal, 1);
    REQUIRE(times.size() == 3);
    CHECK(std::abs(times[0]) < 1e-6);
    CHECK(std::abs(times[1] - pi / dw) < 1e-6);
    CHECK(std::abs(times[2] - 2 * pi / dw) < 1e-6);
    for (double t : times) {
        const auto zeros = find_true_zeros(unit, equal, t);
        REQUIRE(zeros.size() == 1);
        CHECK(std::abs(zeros[0] - *analytic_node_position(unit, ratio_from_state(equal), t)) < 1e-8);
    }
}

TEST_CASE("exact zero times edge cases") {
    CHECK(exact_zero_times(unit, TwoStateSuperposition{1.0, 0.0}, 1).empty());
    CHECK_THROWS_AS(exact_zero_times(unit, TwoStateSuperposition{0.0, 1.0}, 1), DegenerateStateError);
    // |A| > 1: the real-part node never enters the well, so there is no true zero either.
    CHECK(exact_zero_times(unit, TwoStateSuperposition{0.9, 0.3}, 1).empty());
    CHECK(exact_zero_times(unit, equal, 0).empty());

    const auto two = exact_zero_times(unit, TwoStateSuperposition{0.3, -0.8}, 2);
    const double half = pi / delta_omega(unit);
    REQUIRE(two.size() == 5);
    for (std::size_t k = 0; k < two.size(); ++k) CHECK(std::abs(two[k] - k * half) < 1e-6);
}

TEST_CASE("track trajectory examples") {
    const double period = beat_period(unit);
    const auto traj = track_trajectory(unit, equal, NodeKind::AnalyticFormula, 0.0, period, 256);
    REQUIRE(traj.samples.size() == 256);
    CHECK(traj.samples.front().t == 0.0);
    CHECK(traj.samples[128].t == doctest::Approx(period / 2).epsilon(1e-15));
    CHECK(traj.samples.back().t < period);
    double lo = 1.0, hi = 0.0;
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        const auto& s = traj.samples[i];
        REQUIRE(s.position.has_value());
        CHECK(s.kind == NodeKind::AnalyticFormula);
        if (i) CHECK(s.t > traj.samples[i - 1].t);
        lo = std::min(lo, *s.position);
        hi = std::max(hi, *s.position);
    }
    CHECK(std::abs(lo - 1.0 / 3.0) < 1e-9);
    CHECK(std::abs(hi - 2.0 / 3.0) < 1e-9);

    const auto stationary =
        track_trajectory(unit, TwoStateSuperposition{0.0, 1.0}, NodeKind::DensityMinimum, 0.0, period, 32);
    CHECK(stationary.ratio.has_value());
    for (const auto& s : stationary.samples) {
        REQUIRE(s.position.has_value());
        CHECK(std::abs(*s.position - 0.5) < 1e-8);
    }

    const auto sparse = track_trajectory(unit, TwoStateSuperposition{3.0, 1.0}, NodeKind::AnalyticFormula, 0.0,
                                         period, 200);
    const double dw = delta_omega(unit);
    for (const auto& s : sparse.samples) {
        const double c = std::abs(std::cos(dw * s.t));
        if (std::abs(c - 1.0 / 1.5) > 1e-9) CHECK(s.position.has_value() == (c <= 1.0 / 1.5));
    }

    CHECK_THROWS_AS(track_trajectory(unit, TwoStateSuperposition{1.0, 0.0}, NodeKind::AnalyticFormula, 0.0, 1.0, 8),
                    DegenerateStateError);
    CHECK_THROWS_AS(track_trajectory(unit, equal, NodeKind::AnalyticFormula, 1.0, 1.0, 8), std::invalid_argument);
    CHECK_THROWS_AS(track_trajectory(unit, equal, NodeKind::AnalyticFormula, 0.0, 1.0, 1), std::invalid_argument);
    // Numerical kinds accept states without a ratio.
    const auto ground = track_trajectory(unit, TwoStateSuperposition{1.0, 0.0}, NodeKind::DensityMinimum, 0.0, 1.0, 4);
    CHECK_FALSE(ground.ratio.has_value());
    for (const auto& s : ground.samples) CHECK_FALSE(s.position.has_value());
}

TEST_CASE("density-minimum tracking stays on a continuous branch") {
    const auto traj = track_trajectory(unit, equal, NodeKind::DensityMinimum, 0.0, beat_period(unit), 64);
    for (std::size_t i = 1; i < traj.samples.size(); ++i) {
        REQUIRE(traj.samples[i].position.has_value());
        CHECK(std::abs(*traj.samples[i].position - *traj.samples[i - 1].position) < 0.05);
    }
}

TEST_CASE("property: analytic trajectory periodicity, reflection and range") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> ratio_dist(-1.0, 1.0);
    const WellConfig cfg{1.8, 2.0, 0.5};
    const double period = beat_period(cfg);
    for (int s = 0; s < 30; ++s) {
        const RatioA ratio{ratio_dist(rng)};
        double lo = cfg.width(), hi = 0.0;
        for (int k = 0; k < 256; ++k) {
            const double t = period * k / 256.0;
            const double x = *analytic_node_position(cfg, ratio, t);
            CHECK(std::abs(*analytic_node_position(cfg, ratio, t + period) - x) <= 1e-12);
            CHECK(std::abs(x + *analytic_node_position(cfg, ratio, t + period / 2) - cfg.width()) <= 1e-12);
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        const double a = std::abs(ratio.value());
        CHECK(lo >= cfg.width() / pi * std::acos(a) - 1e-12);
        CHECK(hi <= cfg.width() / pi * std::acos(-a) + 1e-12);
        // t = 0 and T/2 are samples, so both bounds are hit.
        CHECK(std::abs(lo - cfg.width() / pi * std::acos(a)) < 1e-12);
        CHECK(std::abs(hi - cfg.width() / pi * std::acos(-a)) < 1e-12);
    }
}

TEST_CASE("property: node notions agree at special times") {
    std::mt19937_64 rng(23);
    const double half = pi / delta_omega(unit);
    int checked = 0;
    for (int s = 0; s < 20; ++s) {
        const auto state = random_real(rng);
        const RatioA ratio = ratio_from_state(state);
        if (std::abs(ratio.value()) >= 0.99) continue;
        ++checked;
        for (int k = 0; k <= 2; ++k) {
            const double t = k * half;
            const double x = *analytic_node_position(unit, ratio, t);
            const auto re = find_real_part_zeros(unit, state, t);
            const auto mins = find_density_minima(unit, state, t);
            REQUIRE(re.size() == 1);
            REQUIRE(mins.size() == 1);
            CHECK(std::abs(re[0] - x) < 1e-8);
            CHECK(std::abs(mins[0].position - x) < 1e-8);
            CHECK(mins[0].density <= 1e-10);
        }
    }
    CHECK(checked > 5);
}

TEST_CASE("property: no interior zero between special times (brute force)") {
    std::mt19937_64 rng(29);
    const double period = beat_period(unit);
    for (int s = 0; s < 20; ++s) {
        const auto state = random_real(rng);
        double max_density = 0.0;
        for (int i = 0; i <= 1024; ++i) max_density = std::max(max_density, density_exact(unit, state, i / 1024.0, 0.1));
        for (double frac : {0.05, 0.2, 0.33, 0.45, 0.55, 0.7, 0.95}) {
            const double t = frac * period;
            for (double v : grid_local_minima(unit, state, t, 4096)) CHECK(v > 1e-10 * max_density);
            for (const auto& m : find_density_minima(unit, state, t)) CHECK(m.density > 1e-10 * max_density);
        }
    }
}

TEST_CASE("property: real-part zero trajectory matches its closed form") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    const double w1 = omega(unit, EigenIndex{1});
    const double w2 = omega(unit, EigenIndex{2});
    for (int s = 0; s < 20; ++s) {
        const double c1 = coef(rng);
        const double c2 = coef(rng);
        const TwoStateSuperposition state{c1, c2};
        const auto traj = track_trajectory(unit, state, NodeKind::RealPartZero, 0.0, beat_period(unit), 97);
        for (const auto& sample : traj.samples) {
            const double u = -(c1 * std::cos(w1 * sample.t)) / (2.0 * c2 * std::cos(w2 * sample.t));
            if (std::abs(u) > 1.0) {
                CHECK_FALSE(sample.position.has_value());
            } else if (1.0 - std::abs(u) > 1e-5) {
                REQUIRE(sample.position.has_value());
                CHECK(std::abs(*sample.position - std::acos(u) / pi) < 1e-10);
            }
        }
    }
}
