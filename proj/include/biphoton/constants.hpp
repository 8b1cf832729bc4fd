#pragma once

// Physical and mathematical constants used throughout the library.
// SI units everywhere: J, kg, m, s.

namespace biphoton {

inline constexpr double hbar = 1.054571817e-34;     // J s
inline constexpr double c_light = 2.99792458e8;     // m/s
inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double euler_gamma = 0.577215664901532860606512090082;

// kg -> g
inline constexpr double kg_to_gram = 1e3;

} // namespace biphoton
