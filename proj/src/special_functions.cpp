#include "vofrac/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "vofrac/errors.hpp"

namespace vofrac {

namespace {

constexpr double kPoleTol = 1e-14;

// Lanczos coefficients, g = 7, 9 terms (Godfrey's set). Good to ~1e-13
// relative on the positive real axis.
constexpr double kLanczosG = 7.0;
constexpr double kLanczosCoeff[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

// (m-1)! for m = 1..23; 22! is still exactly representable in a double.
constexpr double kFactorialTable[23] = {
    1.0,
    1.0,
    2.0,
    6.0,
    24.0,
    120.0,
    720.0,
    5040.0,
    40320.0,
    362880.0,
    3628800.0,
    39916800.0,
    479001600.0,
    6227020800.0,
    87178291200.0,
    1307674368000.0,
    20922789888000.0,
    355687428096000.0,
    6402373705728000.0,
    121645100408832000.0,
    2432902008176640000.0,
    51090942171709440000.0,
    1124000727777607680000.0,
};

bool near_nonpositive_integer(double x) {
    if (x > 0.5) return false;
    return std::abs(x - std::round(x)) <= kPoleTol;
}

// Lanczos sum for x >= 0.5.
double gamma_positive(double x) {
    const double z = x - 1.0;
    double acc = kLanczosCoeff[0];
    for (int k = 1; k < 9; ++k) acc += kLanczosCoeff[k] / (z + k);
    const double t = z + kLanczosG + 0.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) *
           std::exp(-t) * acc;
}

}  // namespace

double gamma(double x) {
    if (near_nonpositive_integer(x)) {
        throw PoleError("gamma pole at x = " + std::to_string(x));
    }
    // Exact values at positive integers keep identities like Gamma(1) = 1
    // bit-for-bit.
    const double rounded = std::round(x);
    if (rounded >= 1.0 && rounded <= 23.0 && std::abs(x - rounded) <= kPoleTol) {
        return kFactorialTable[static_cast<int>(rounded) - 1];
    }
    if (x >= 0.5) return gamma_positive(x);
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
    const double s = std::sin(std::numbers::pi * x);
    return std::numbers::pi / (s * gamma_positive(1.0 - x));
}

double digamma(double x) {
    if (near_nonpositive_integer(x)) {
        throw PoleError("digamma pole at x = " + std::to_string(x));
    }
    if (x < 0.5) {
        // psi(x) = psi(1-x) - pi / tan(pi x)
        return digamma(1.0 - x) -
               std::numbers::pi / std::tan(std::numbers::pi * x);
    }
    // Shift into the asymptotic regime, then use the Bernoulli series.
    double shift = 0.0;
    double y = x;
    while (y < 8.0) {
        shift -= 1.0 / y;
        y += 1.0;
    }
    const double inv = 1.0 / y;
    const double inv2 = inv * inv;
    // B_{2k}/(2k) coefficients of the asymptotic expansion.
    const double series =
        inv2 * (1.0 / 12.0 +
                inv2 * (-1.0 / 120.0 +
                        inv2 * (1.0 / 252.0 +
                                inv2 * (-1.0 / 240.0 +
                                        inv2 * (1.0 / 132.0 +
                                                inv2 * (-691.0 / 32760.0 +
                                                        inv2 * (1.0 / 12.0)))))));
    return shift + std::log(y) - 0.5 * inv - series;
}

}  // namespace vofrac
