#pragma once

// Small 1D numerical primitives: composite quadrature, bracketed root
// refinement and unimodal minimization.

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>

namespace qbox::numerics {

/// Composite Simpson rule on `intervals` uniform sub-intervals (must be even and > 0).
template <typename F>
double simpson(F&& f, double lower, double upper, std::size_t intervals) {
    if (intervals == 0 || intervals % 2 != 0) {
        throw std::invalid_argument("simpson: interval count must be even and positive");
    }
    if (!(upper > lower)) {
        throw std::invalid_argument("simpson: upper limit must exceed lower limit");
    }
    const double h = (upper - lower) / static_cast<double>(intervals);
    double odd = 0.0;
    double even = 0.0;
    for (std::size_t i = 1; i < intervals; ++i) {
        const double v = f(lower + static_cast<double>(i) * h);
        if (i % 2 == 1) {
            odd += v;
        } else {
            even += v;
        }
    }
    return h / 3.0 * (f(lower) + f(upper) + 4.0 * odd + 2.0 * even);
}

/// Trapezoid rule over samples on a uniform grid with spacing `dx`.
inline double trapezoid(std::span<const double> samples, double dx) {
    if (samples.size() < 2) {
        return 0.0;
    }
    double sum = 0.5 * (samples.front() + samples.back());
    for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
        sum += samples[i];
    }
    return sum * dx;
}

/// Bisection on a sign-changing bracket [lo, hi] until the bracket is no wider than `tol`.
/// Returns the midpoint of the final bracket, or an endpoint that evaluates to exactly zero.
template <typename F>
double bisect(F&& f, double lo, double hi, double tol) {
    double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0)) {
        throw std::invalid_argument("bisect: root not bracketed");
    }
    // 200 halvings exhaust double resolution for any finite bracket.
    for (int iter = 0; iter < 200 && (hi - lo) > tol; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fmid = f(mid);
        if (fmid == 0.0) return mid;
        if ((fmid < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

struct Minimum {
    double x;
    double value;
};

/// Golden-section search for the minimum of a function unimodal on [lo, hi].
/// Stops once the bracket is no wider than `tol`.
template <typename F>
Minimum golden_section_minimize(F&& f, double lo, double hi, double tol) {
    constexpr double kInvPhi = 0.6180339887498948482;  // (sqrt(5) - 1) / 2
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int iter = 0; iter < 300 && (hi - lo) > tol; ++iter) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = f(x2);
        }
    }
    return f1 <= f2 ? Minimum{x1, f1} : Minimum{x2, f2};
}

}  // namespace qbox::numerics
