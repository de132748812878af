#include "sgcircuit/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sgcircuit {

namespace {

// Lanczos coefficients for g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7,
};

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

// Lanczos series and the (x - 1/2, t) pieces, valid for x >= 1/2.
double lanczos_sum(double x) {
    double s = kLanczos[0];
    for (int i = 1; i < 9; ++i) s += kLanczos[i] / (x - 1.0 + static_cast<double>(i));
    return s;
}

}  // namespace

double gamma_fn(double x) {
    if (is_nonpositive_integer(x)) throw std::domain_error("gamma_fn: pole at non-positive integer");
    if (x < 0.5) {
        // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
    }
    const double t = x + kLanczosG - 0.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x - 0.5) * std::exp(-t) * lanczos_sum(x);
}

double log_gamma_fn(double x) {
    if (is_nonpositive_integer(x)) throw std::domain_error("log_gamma_fn: pole at non-positive integer");
    if (x < 0.5) {
        const double s = std::sin(std::numbers::pi * x);
        return std::log(std::numbers::pi / std::abs(s)) - log_gamma_fn(1.0 - x);
    }
    const double t = x + kLanczosG - 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (x - 0.5) * std::log(t) - t +
           std::log(lanczos_sum(x));
}

}  // namespace sgcircuit
