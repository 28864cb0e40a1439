#pragma once

namespace vofrac {

/// Euler's gamma function on the real line.
///
/// Fixed-coefficient Lanczos approximation (relative error <= 1e-12 on
/// (0, 50]), reflection formula for negative arguments, exact factorial
/// values at positive integers. Throws PoleError within 1e-14 of
/// {0, -1, -2, ...}.
double gamma(double x);

/// Logarithmic derivative of gamma. Relative error <= 1e-10 on (0.1, 50];
/// recurrence + asymptotic series, reflection for x < 0. Poles as gamma.
double digamma(double x);

}  // namespace vofrac
