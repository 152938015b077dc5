#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "qbox/numerics.hpp"

using namespace qbox::numerics;

TEST_CASE("simpson is exact for cubics") {
    const auto cubic = [](double x) { return 4 * x * x * x - 3 * x * x + 2 * x - 1; };
    // antiderivative x^4 - x^3 + x^2 - x on [-1, 2]
    CHECK(simpson(cubic, -1.0, 2.0, 2) == doctest::Approx(6.0).epsilon(1e-14));
}

TEST_CASE("simpson converges on a smooth integrand") {
    const double v = simpson([](double x) { return std::exp(x); }, 0.0, 1.0, 2048);
    CHECK(std::abs(v - (std::numbers::e - 1.0)) < 1e-14);
}

TEST_CASE("simpson rejects odd interval counts") {
    CHECK_THROWS_AS(simpson([](double) { return 1.0; }, 0.0, 1.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(simpson([](double) { return 1.0; }, 1.0, 0.0, 2), std::invalid_argument);
}

TEST_CASE("trapezoid") {
    const std::vector<double> y{0.0, 1.0, 2.0, 3.0};
    CHECK(trapezoid(y, 0.5) == doctest::Approx(2.25));
    CHECK(trapezoid(std::vector<double>{1.0}, 0.5) == 0.0);
}

TEST_CASE("bisect finds sqrt(2) to the requested width") {
    const double r = bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-13);
    CHECK(std::abs(r - std::numbers::sqrt2) < 1e-13);
    CHECK(bisect([](double x) { return x - 1.0; }, 1.0, 3.0, 1e-12) == 1.0);
    CHECK_THROWS_AS(bisect([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-12), std::invalid_argument);
}

TEST_CASE("golden section locates a parabola vertex") {
    const auto m = golden_section_minimize([](double x) { return (x - 0.3) * (x - 0.3) + 2.0; }, 0.0, 1.0, 1e-12);
    CHECK(std::abs(m.x - 0.3) < 1e-7);
    CHECK(m.value == doctest::Approx(2.0).epsilon(1e-14));

    // |x - c| is non-smooth but unimodal.
    const auto v = golden_section_minimize([](double x) { return std::abs(x - 0.71); }, 0.0, 1.0, 1e-12);
    CHECK(std::abs(v.x - 0.71) < 1e-11);
}
