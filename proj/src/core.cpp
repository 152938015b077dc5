#include "qbox/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qbox/errors.hpp"
#include "qbox/numerics.hpp"

namespace qbox {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kNormIntervals = 2048;

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

void require_inside(const WellConfig& cfg, double x) {
    if (!(x >= 0.0 && x <= cfg.width())) {
        throw DomainError("position " + std::to_string(x) + " outside the well [0, " +
                          std::to_string(cfg.width()) + "]");
    }
}

// Unchecked psi_n; callers validate x.
double psi(const WellConfig& cfg, int n, double x) {
    const double a = cfg.width();
    if (x == 0.0 || x == a) {
        return 0.0;
    }
    return std::sqrt(2.0 / a) * std::sin(n * kPi * x / a);
}

Complex phase(double angular_frequency, double t) { return std::polar(1.0, -angular_frequency * t); }

}  // namespace

WellConfig::WellConfig(double width, double mass, double hbar) : width_(width), mass_(mass), hbar_(hbar) {
    if (!positive_finite(width) || !positive_finite(mass) || !positive_finite(hbar)) {
        throw DomainError("well width, mass and hbar must be finite and strictly positive");
    }
}

EigenIndex::EigenIndex(int n) : n_(n) {
    if (n < 1) {
        throw DomainError("eigen index must be >= 1, got " + std::to_string(n));
    }
}

TwoStateSuperposition::TwoStateSuperposition(Complex c1, Complex c2) : c1_(c1), c2_(c2) {
    if (!finite(c1) || !finite(c2)) {
        throw DegenerateStateError("superposition coefficients must be finite");
    }
    if (norm_squared() <= 0.0) {
        throw DegenerateStateError("zero state: |c1|^2 + |c2|^2 must be positive");
    }
}

bool TwoStateSuperposition::is_normalized() const { return std::abs(norm_squared() - 1.0) <= 1e-12; }

GeneralSuperposition::GeneralSuperposition(std::vector<SuperpositionTerm> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) {
        throw DegenerateStateError("superposition needs at least one term");
    }
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (!finite(terms_[i].amplitude)) {
            throw DegenerateStateError("superposition amplitudes must be finite");
        }
        for (std::size_t j = i + 1; j < terms_.size(); ++j) {
            if (terms_[i].n == terms_[j].n) {
                throw DomainError("duplicate eigen index " + std::to_string(terms_[i].n.value()));
            }
        }
    }
}

double eigenfunction(const WellConfig& cfg, EigenIndex n, double x) {
    require_inside(cfg, x);
    return psi(cfg, n.value(), x);
}

double energy(const WellConfig& cfg, EigenIndex n) {
    const double k = n.value();
    const double a = cfg.width();
    return k * k * kPi * kPi * cfg.hbar() * cfg.hbar() / (2.0 * cfg.mass() * a * a);
}

double omega(const WellConfig& cfg, EigenIndex n) { return energy(cfg, n) / cfg.hbar(); }

double delta_omega(const WellConfig& cfg) { return omega(cfg, EigenIndex{2}) - omega(cfg, EigenIndex{1}); }

double beat_period(const WellConfig& cfg) { return 2.0 * kPi / delta_omega(cfg); }

Complex evaluate_psi(const WellConfig& cfg, const TwoStateSuperposition& state, double x, double t) {
    require_inside(cfg, x);
    const double w1 = omega(cfg, EigenIndex{1});
    const double w2 = omega(cfg, EigenIndex{2});
    return state.c1() * psi(cfg, 1, x) * phase(w1, t) + state.c2() * psi(cfg, 2, x) * phase(w2, t);
}

Complex evaluate_psi_general(const WellConfig& cfg, const GeneralSuperposition& state, double x, double t) {
    require_inside(cfg, x);
    Complex sum{0.0, 0.0};
    for (const auto& term : state.terms()) {
        sum += term.amplitude * psi(cfg, term.n.value(), x) * phase(omega(cfg, term.n), t);
    }
    return sum;
}

double density_exact(const WellConfig& cfg, const TwoStateSuperposition& state, double x, double t) {
    return std::norm(evaluate_psi(cfg, state, x, t));
}

double density_closed_form(const WellConfig& cfg, const TwoStateSuperposition& state, double x, double t) {
    require_inside(cfg, x);
    const double p1 = psi(cfg, 1, x);
    const double p2 = psi(cfg, 2, x);
    const Complex cross = state.c1() * std::conj(state.c2()) * std::polar(1.0, delta_omega(cfg) * t);
    return std::norm(state.c1()) * p1 * p1 + std::norm(state.c2()) * p2 * p2 + 2.0 * p1 * p2 * cross.real();
}

double norm_integral(const WellConfig& cfg, const TwoStateSuperposition& state, double t) {
    return numerics::simpson([&](double x) { return density_exact(cfg, state, std::min(x, cfg.width()), t); },
                             0.0, cfg.width(), kNormIntervals);
}

TwoStateSuperposition normalize(const TwoStateSuperposition& state) {
    const double scale = std::sqrt(state.norm_squared());
    return TwoStateSuperposition{state.c1() / scale, state.c2() / scale};
}

}  // namespace qbox
