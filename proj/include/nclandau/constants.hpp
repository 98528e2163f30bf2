#pragma once

// CODATA 2018 values, SI units.

namespace nclandau::constants {

inline constexpr double hbar = 1.054571817e-34;           // J s
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double electron_mass = 9.1093837015e-31;     // kg
inline constexpr double pi = 3.141592653589793238462643383279502884;

}  // namespace nclandau::constants
