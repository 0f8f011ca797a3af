#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "framesph/cavity.hpp"
#include "framesph/error.hpp"

using namespace framesph::cavity;

TEST_CASE("ventilation classes split at 2 mm and 10 mm") {
    CHECK(classify_ventilation(0.0) == VentilationClass::unventilated);
    CHECK(classify_ventilation(0.002) == VentilationClass::unventilated);
    CHECK(classify_ventilation(0.0021) == VentilationClass::slightly_ventilated);
    CHECK(classify_ventilation(0.010) == VentilationClass::slightly_ventilated);
    CHECK(classify_ventilation(0.011) == VentilationClass::fully_ventilated);
    CHECK_THROWS_AS(classify_ventilation(-0.001), framesph::Error);
}

TEST_CASE("equivalent rectangle from area and aspect ratio") {
    // A' = 2e-4 with d'/b' = 2 gives d = 0.02, b = 0.01.
    const Rectangle r = equivalent_rectangle(0.0002, 0.02, 0.01);
    CHECK(r.depth_d == doctest::Approx(0.02).epsilon(1e-12));
    CHECK(r.width_b == doctest::Approx(0.01).epsilon(1e-12));

    // An already-rectangular input is a fixed point.
    const Rectangle fixed = equivalent_rectangle(0.01 * 0.005, 0.01, 0.005);
    CHECK(fixed.width_b == doctest::Approx(0.005).epsilon(1e-12));
    CHECK(fixed.depth_d == doctest::Approx(0.01).epsilon(1e-12));

    const Rectangle square = equivalent_rectangle(0.0001, 0.007, 0.007);
    CHECK(square.width_b == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(square.depth_d == doctest::Approx(0.01).epsilon(1e-12));

    CHECK_THROWS_AS(equivalent_rectangle(0.0, 0.01, 0.01), framesph::Error);
    CHECK_THROWS_AS(equivalent_rectangle(1e-4, -0.01, 0.01), framesph::Error);
}

TEST_CASE("equivalent rectangle preserves area and aspect ratio") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> log_area(-8.0, 0.0);
    std::uniform_real_distribution<double> log_ratio(-3.0, 3.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const double area = std::pow(10.0, log_area(rng));
        const double depth = std::sqrt(area) * std::pow(10.0, log_ratio(rng) / 2.0);
        const double width = std::sqrt(area) * std::pow(10.0, -log_ratio(rng) / 2.0);
        const Rectangle r = equivalent_rectangle(area, depth, width);
        CHECK(std::abs(r.width_b * r.depth_d - area) <= 1e-12 * area);
        const double ratio = depth / width;
        CHECK(std::abs(r.depth_d / r.width_b - ratio) <= 1e-12 * ratio);
    }
}

TEST_CASE("convective coefficient branches on the 5 mm width") {
    CHECK(convective_coefficient(0.005, 0.005) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(convective_coefficient(0.01, 0.01) == doctest::Approx(2.5).epsilon(1e-12));
    // Deep cavity: the C3 floor dominates C1/d.
    CHECK(convective_coefficient(0.05, 0.01) == doctest::Approx(1.57).epsilon(1e-12));
    CHECK_THROWS_AS(convective_coefficient(0.0, 0.01), framesph::Error);
}

TEST_CASE("radiative coefficient closed form") {
    CHECK(radiative_coefficient(0.01, 0.01) ==
          doctest::Approx(2.11 * std::sqrt(2.0)).epsilon(1e-12));
    // d/b = 3/4 makes the square root 5/4: C4 * (1 + 5/4 - 3/4) = 1.5 * C4.
    CHECK(radiative_coefficient(0.003, 0.004) == doctest::Approx(2.11 * 1.5).epsilon(1e-12));
    // Wide flat cavity: h_r approaches 2*C4.
    CHECK(radiative_coefficient(1e-8, 1.0) == doctest::Approx(4.22).epsilon(1e-6));
    CHECK_THROWS_AS(radiative_coefficient(0.01, -1.0), framesph::Error);
}

TEST_CASE("h_r decreases with aspect ratio, h_a does not increase with depth") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uni(1e-3, 1e-1);
    for (int trial = 0; trial < 500; ++trial) {
        const double b = uni(rng);
        double d1 = uni(rng);
        double d2 = uni(rng);
        if (d1 > d2) std::swap(d1, d2);
        CHECK(radiative_coefficient(d2, b) <= radiative_coefficient(d1, b) + 1e-15);
        CHECK(convective_coefficient(d2, b) <= convective_coefficient(d1, b) + 1e-15);
    }
}

TEST_CASE("equivalent conductivity of a closed square cavity") {
    CavitySpec spec;
    spec.name = "core";
    spec.geometry = Rectangle{0.01, 0.01};
    spec.gap_width = 0.0;

    const CavityEvaluation eval = equivalent_conductivity(spec);
    CHECK(eval.ventilation == VentilationClass::unventilated);
    REQUIRE(eval.k_eq.has_value());
    // R = 1/(2.5 + 2.11*sqrt(2)) = 0.18235, k_eq = d/R.
    CHECK(eval.resistance == doctest::Approx(0.182349).epsilon(1e-4));
    CHECK(*eval.k_eq == doctest::Approx(0.0548399).epsilon(1e-5));
}

TEST_CASE("slight ventilation doubles the closed value exactly") {
    CavitySpec closed;
    closed.name = "c";
    closed.geometry = Rectangle{0.01, 0.01};
    closed.gap_width = 0.0;
    CavitySpec slight = closed;
    slight.gap_width = 0.005;

    const auto closed_eval = equivalent_conductivity(closed);
    const auto slight_eval = equivalent_conductivity(slight);
    CHECK(*slight_eval.k_eq == 2.0 * *closed_eval.k_eq);
    CHECK(*slight_eval.k_eq == doctest::Approx(0.109680).epsilon(1e-5));
}

TEST_CASE("wide gaps mark the cavity fully ventilated") {
    CavitySpec spec;
    spec.name = "open";
    spec.geometry = Rectangle{0.01, 0.01};
    spec.gap_width = 0.02;
    const auto eval = equivalent_conductivity(spec);
    CHECK(eval.ventilation == VentilationClass::fully_ventilated);
    CHECK_FALSE(eval.k_eq.has_value());
}

TEST_CASE("polygon form of a rectangle matches the rectangle form") {
    CavitySpec rect;
    rect.name = "r";
    rect.geometry = Rectangle{0.004, 0.012};
    CavitySpec poly = rect;
    poly.geometry = PolygonSummary{0.004 * 0.012, 0.012, 0.004};

    const auto a = equivalent_conductivity(rect);
    const auto b = equivalent_conductivity(poly);
    CHECK(*a.k_eq == doctest::Approx(*b.k_eq).epsilon(1e-12));
}

TEST_CASE("k_eq is positive for random closed cavities") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> uni(5e-4, 5e-2);
    for (int trial = 0; trial < 500; ++trial) {
        CavitySpec spec;
        spec.name = "p";
        spec.geometry = Rectangle{uni(rng), uni(rng)};
        spec.gap_width = 0.0;
        CHECK(*equivalent_conductivity(spec).k_eq > 0.0);
    }
}
