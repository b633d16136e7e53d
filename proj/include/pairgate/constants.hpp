#pragma once

#include <numbers>

namespace pairgate::constants
{
// CODATA 2018, SI.
inline constexpr double pi = std::numbers::pi;
inline constexpr double c = 299'792'458.0;            // m/s, exact
inline constexpr double h = 6.62607015e-34;           // J s, exact
inline constexpr double hbar = h / (2.0 * pi);        // J s
inline constexpr double mu0 = 1.25663706212e-6;       // H/m
inline constexpr double eps0 = 8.8541878128e-12;      // F/m
inline constexpr double z0 = mu0 * c;                 // ohm, impedance of free space

/// Bundled view of the constants used throughout the model.
struct PhysicalConstants
{
    double c = constants::c;
    double hbar = constants::hbar;
    double h = constants::h;
    double eps0 = constants::eps0;
    double mu0 = constants::mu0;
};

inline constexpr PhysicalConstants codata2018{};
}  // namespace pairgate::constants
