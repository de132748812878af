#pragma once

namespace sgcircuit {

/// Gamma function for real arguments (Lanczos approximation, g = 7, 9 terms,
/// reflection formula for x < 1/2). Relative accuracy is ~1e-14 over the
/// argument ranges used by the mass formula, well past the 12 significant
/// digits the spectrum layer needs.
/// Throws std::domain_error at the poles (x = 0, -1, -2, ...).
double gamma_fn(double x);

/// log |Gamma(x)| on the same footing; used to keep the mass formula in log
/// space so large exponents 1/(2-K) do not overflow intermediates.
double log_gamma_fn(double x);

}  // namespace sgcircuit
