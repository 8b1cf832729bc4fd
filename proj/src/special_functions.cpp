#include "biphoton/special_functions.hpp"

#include <cmath>
#include <stdexcept>

#include "biphoton/constants.hpp"

namespace biphoton {

double sinc(double x)
{
    const double ax = std::fabs(x);
    if (ax < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

namespace {

// Ci(x) = gamma + ln x + sum_{k>=1} (-x^2)^k / (2k (2k)!)
double ci_series(double x)
{
    const double x2 = -x * x;
    double u = 1.0;     // (-x^2)^k / (2k)!
    double sum = 0.0;
    for (int k = 1; k <= 200; ++k) {
        u *= x2 / double((2 * k - 1) * (2 * k));
        const double term = u / double(2 * k);
        sum += term;
        if (std::fabs(term) < 1e-18 * (std::fabs(sum) + 1e-300))
            break;
    }
    return euler_gamma + std::log(x) + sum;
}

// Ci(x) = f(x) sin x - g(x) cos x with the usual divergent expansions
//   f ~ (1/x)   (1 - 2!/x^2 + 4!/x^4 - ...)
//   g ~ (1/x^2) (1 - 3!/x^2 + 5!/x^4 - ...)
// summed until the terms stop shrinking.
double ci_asymptotic(double x)
{
    const double ix2 = 1.0 / (x * x);
    double f = 0.0, g = 0.0;
    double af = 1.0;    // (2k)!   / x^(2k)
    double ag = 1.0;    // (2k+1)! / x^(2k)
    double sign = 1.0;
    for (int k = 0; k <= 40; ++k) {
        f += sign * af;
        g += sign * ag;
        const double nf = af * double((2 * k + 1) * (2 * k + 2)) * ix2;
        const double ng = ag * double((2 * k + 2) * (2 * k + 3)) * ix2;
        if (nf >= af || ng >= ag)
            break;      // smallest term of the divergent series reached
        af = nf;
        ag = ng;
        sign = -sign;
        if (af < 1e-18)
            break;
    }
    f /= x;
    g *= ix2;
    return f * std::sin(x) - g * std::cos(x);
}

} // namespace

double cosine_integral(double x)
{
    if (!(x > 0.0))
        throw std::domain_error("cosine_integral requires x > 0");
    if (x <= 20.0)
        return ci_series(x);
    return ci_asymptotic(x);
}

double sin_sq_over_x_integral(double x)
{
    if (!(x > 0.0))
        throw std::domain_error("sin_sq_over_x_integral requires x > 0");
    return 0.5 * (std::log(2.0 * x) + euler_gamma - cosine_integral(2.0 * x));
}

} // namespace biphoton
