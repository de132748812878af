#include <doctest.h>

#include <initializer_list>
#include <stdexcept>

#include <cmath>
#include <numbers>

#include "sgcircuit/special_functions.hpp"

using namespace sgcircuit;

TEST_CASE("gamma_half_is_sqrt_pi") {
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-14));
}

TEST_CASE("gamma_reflection_formula") {
    // Gamma(x) Gamma(1-x) = pi / sin(pi x) on (0, 1)
    for (double x = 0.02; x < 1.0; x += 0.035) {
        const double lhs = gamma_fn(x) * gamma_fn(1.0 - x);
        const double rhs = std::numbers::pi / std::sin(std::numbers::pi * x);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("gamma_matches_standard_library") {
    // std::tgamma as an independent oracle over the arguments the mass
    // formula produces for K in (1e-4, 1.9).
    for (double x : {2.5e-5, 1e-4, 1e-3, 0.025, 0.1, 0.25, 0.5, 0.5719665, 0.874177, 0.975,
                     1.0, 1.5, 3.0, 9.75, 19.5}) {
        CHECK(gamma_fn(x) == doctest::Approx(std::tgamma(x)).epsilon(1e-13));
    }
}

TEST_CASE("log_gamma_consistent_with_gamma") {
    for (double x : {1e-4, 0.07, 0.5, 1.0, 2.75, 10.0, 19.5}) {
        CHECK(std::exp(log_gamma_fn(x)) == doctest::Approx(gamma_fn(x)).epsilon(1e-12));
    }
}

TEST_CASE("gamma_poles_throw") {
    CHECK_THROWS_AS(gamma_fn(0.0), std::domain_error);
    CHECK_THROWS_AS(gamma_fn(-2.0), std::domain_error);
    CHECK_THROWS_AS(log_gamma_fn(0.0), std::domain_error);
}
