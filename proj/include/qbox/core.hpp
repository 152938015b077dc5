#pragma once

// Particle in a 1D infinite square well: analytic eigenstates and the
// time evolution of superpositions built from them.

#include <complex>
#include <vector>

namespace qbox {

using Complex = std::complex<double>;

/// Physical parameters of the well. Default construction gives natural units a = m = hbar = 1.
class WellConfig {
public:
    WellConfig() = default;
    /// Throws DomainError unless all three parameters are finite and strictly positive.
    WellConfig(double width, double mass, double hbar);

    double width() const { return width_; }
    double mass() const { return mass_; }
    double hbar() const { return hbar_; }

    friend bool operator==(const WellConfig&, const WellConfig&) = default;

private:
    double width_ = 1.0;
    double mass_ = 1.0;
    double hbar_ = 1.0;
};

/// Quantum number n >= 1.
class EigenIndex {
public:
    explicit EigenIndex(int n);
    int value() const { return n_; }

    friend auto operator<=>(const EigenIndex&, const EigenIndex&) = default;

private:
    int n_;
};

/// c1 * psi_1 + c2 * psi_2. Normalization is not required.
class TwoStateSuperposition {
public:
    /// Throws DegenerateStateError for the zero state or non-finite coefficients.
    TwoStateSuperposition(Complex c1, Complex c2);

    Complex c1() const { return c1_; }
    Complex c2() const { return c2_; }

    /// |c1|^2 + |c2|^2
    double norm_squared() const { return std::norm(c1_) + std::norm(c2_); }
    bool is_normalized() const;

    friend bool operator==(const TwoStateSuperposition&, const TwoStateSuperposition&) = default;

private:
    Complex c1_;
    Complex c2_;
};

struct SuperpositionTerm {
    EigenIndex n;
    Complex amplitude;
};

/// Finite superposition sum_n c_n psi_n with pairwise distinct indices.
class GeneralSuperposition {
public:
    explicit GeneralSuperposition(std::vector<SuperpositionTerm> terms);

    const std::vector<SuperpositionTerm>& terms() const { return terms_; }

private:
    std::vector<SuperpositionTerm> terms_;
};

/// sqrt(2/a) sin(n pi x / a); exactly zero at both walls. Throws DomainError outside [0, a].
double eigenfunction(const WellConfig& cfg, EigenIndex n, double x);

/// E_n = n^2 pi^2 hbar^2 / (2 m a^2)
double energy(const WellConfig& cfg, EigenIndex n);

/// omega_n = E_n / hbar
double omega(const WellConfig& cfg, EigenIndex n);

/// omega_2 - omega_1, the beat frequency of the (1, 2) superposition.
double delta_omega(const WellConfig& cfg);

/// Recurrence period 2 pi / delta_omega of the two-state density.
double beat_period(const WellConfig& cfg);

Complex evaluate_psi(const WellConfig& cfg, const TwoStateSuperposition& state, double x, double t);
Complex evaluate_psi_general(const WellConfig& cfg, const GeneralSuperposition& state, double x, double t);

/// |Psi(x, t)|^2 through full complex arithmetic.
double density_exact(const WellConfig& cfg, const TwoStateSuperposition& state, double x, double t);

/// |c1|^2 psi1^2 + |c2|^2 psi2^2 + 2 psi1 psi2 Re(c1 c2* e^{i dw t}).
/// Reduces to the cosine form when c1 c2* is real.
double density_closed_form(const WellConfig& cfg, const TwoStateSuperposition& state, double x, double t);

/// Composite Simpson (2048 intervals) of density_exact over [0, a].
double norm_integral(const WellConfig& cfg, const TwoStateSuperposition& state, double t);

/// Rescales to unit norm, keeping each coefficient's phase.
TwoStateSuperposition normalize(const TwoStateSuperposition& state);

}  // namespace qbox
