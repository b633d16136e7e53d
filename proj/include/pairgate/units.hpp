#pragma once

// Unit-suffixed quantity parsing and human-readable formatting. This is the
// only place where non-SI units appear.
//
// Grammar: a decimal number immediately followed by a unit token, e.g.
// "532nm", "40MW/cm2", "1pm/V", "1e-22m2/V2", "1GHz". Numbers are parsed with
// std::from_chars, so the result never depends on the process locale.

#include <span>
#include <string>
#include <string_view>

namespace pairgate::units
{
enum class Kind
{
    Length,        ///< m
    Area,          ///< m^2
    Intensity,     ///< W/m^2
    Chi2,          ///< m/V
    Chi3,          ///< m^2/V^2
    Frequency,     ///< Hz
    Dimensionless,
};

std::string_view to_string(Kind kind) noexcept;

struct UnitToken
{
    std::string_view symbol;
    double scale;  ///< multiply a value in this unit by scale to get SI
};

/// Accepted unit tokens for a quantity kind, in documentation order.
std::span<const UnitToken> tokens(Kind kind) noexcept;

/// Scale factor of a unit symbol for the kind, throws ParseError if unknown.
double unit_scale(Kind kind, std::string_view symbol);

/// True when the symbol is a valid unit for the kind.
bool accepts(Kind kind, std::string_view symbol) noexcept;

struct Split
{
    double number;
    std::string_view unit;  ///< may be empty
};

/// Split "12.5mm" into {12.5, "mm"}; whitespace between the two is not allowed.
Split split_number(std::string_view text);

/// Parse into SI. Dimensionless quantities take no unit; all others require one.
double parse(std::string_view text, Kind kind);

/// Round to a number of significant digits, printed without exponent when
/// the magnitude allows it.
std::string format_significant(double value, int digits = 3);

/// Full round-trip precision, used for CSV.
std::string format_full(double value);

/// Intensity in W/m^2 rendered as W/kW/MW/GW/TW per cm^2 with 3 digits.
std::string format_intensity(double watts_per_m2);

/// Length in metres rendered as nm/um/mm/cm/m/km with 3 digits.
std::string format_length(double metres);
}  // namespace pairgate::units
