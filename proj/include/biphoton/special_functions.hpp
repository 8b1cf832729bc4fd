#pragma once

// sinc and the cosine integral Ci. Ci backs the closed-form evaluation of
// int_0^X sin^2(x)/x dx = (ln 2X + gamma - Ci(2X)) / 2, which the moment
// diagnostics report next to the block-summed value.

namespace biphoton {

// sin(x)/x, with the even Taylor series below |x| = 1e-4 to avoid 0/0.
double sinc(double x);

// Ci(x) for x > 0: power series up to x = 20, auxiliary-function asymptotic
// expansion beyond, truncated at its smallest term.
double cosine_integral(double x);

// (ln 2x + gamma - Ci(2x)) / 2  for x > 0.
double sin_sq_over_x_integral(double x);

} // namespace biphoton
