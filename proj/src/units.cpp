#include "pairgate/units.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <string>
#include <system_error>

#include <fmt/format.h>

#include "pairgate/errors.hpp"

namespace pairgate::units
{
namespace
{
constexpr std::array length_tokens{
    UnitToken{"nm", 1e-9}, UnitToken{"um", 1e-6}, UnitToken{"µm", 1e-6},
    UnitToken{"mm", 1e-3}, UnitToken{"cm", 1e-2}, UnitToken{"m", 1.0},
    UnitToken{"km", 1e3},
};

constexpr std::array area_tokens{
    UnitToken{"um2", 1e-12}, UnitToken{"µm2", 1e-12}, UnitToken{"um²", 1e-12},
    UnitToken{"µm²", 1e-12}, UnitToken{"mm2", 1e-6}, UnitToken{"mm²", 1e-6},
    UnitToken{"cm2", 1e-4}, UnitToken{"cm²", 1e-4}, UnitToken{"m2", 1.0},
    UnitToken{"m²", 1.0},
};

constexpr std::array intensity_tokens{
    UnitToken{"W/m2", 1.0},      UnitToken{"W/m²", 1.0},   UnitToken{"W/cm2", 1e4},
    UnitToken{"W/cm²", 1e4}, UnitToken{"kW/cm2", 1e7},      UnitToken{"kW/cm²", 1e7},
    UnitToken{"MW/cm2", 1e10},   UnitToken{"MW/cm²", 1e10}, UnitToken{"GW/cm2", 1e13},
    UnitToken{"GW/cm²", 1e13}, UnitToken{"TW/cm2", 1e16},   UnitToken{"TW/cm²", 1e16},
};

constexpr std::array chi2_tokens{
    UnitToken{"pm/V", 1e-12},
    UnitToken{"m/V", 1.0},
};

constexpr std::array chi3_tokens{
    UnitToken{"m2/V2", 1.0},
    UnitToken{"m²/V²", 1.0},
};

constexpr std::array frequency_tokens{
    UnitToken{"Hz", 1.0},   UnitToken{"kHz", 1e3},  UnitToken{"MHz", 1e6},
    UnitToken{"GHz", 1e9},  UnitToken{"THz", 1e12},
};

struct Scaled
{
    double factor;
    std::string_view symbol;
};

std::string scaled_string(double value, std::span<const Scaled> ladder)
{
    if (value == 0.0 || !std::isfinite(value))
        return format_significant(value) + " " + std::string(ladder.front().symbol);

    // Walk from the largest unit down; pick the first whose rounded mantissa is >= 1.
    for (auto it = ladder.rbegin(); it != ladder.rend(); ++it)
    {
        const double mantissa = std::stod(fmt::format("{:.3g}", value / it->factor));
        if (std::abs(mantissa) >= 1.0 || std::next(it) == ladder.rend())
            return format_significant(value / it->factor) + " " + std::string(it->symbol);
    }
    return {};
}
}  // namespace

std::string_view to_string(Kind kind) noexcept
{
    switch (kind)
    {
        case Kind::Length:
            return "length";
        case Kind::Area:
            return "area";
        case Kind::Intensity:
            return "intensity";
        case Kind::Chi2:
            return "second-order susceptibility";
        case Kind::Chi3:
            return "third-order susceptibility";
        case Kind::Frequency:
            return "frequency";
        case Kind::Dimensionless:
            return "dimensionless number";
    }
    return "?";
}

std::span<const UnitToken> tokens(Kind kind) noexcept
{
    switch (kind)
    {
        case Kind::Length:
            return length_tokens;
        case Kind::Area:
            return area_tokens;
        case Kind::Intensity:
            return intensity_tokens;
        case Kind::Chi2:
            return chi2_tokens;
        case Kind::Chi3:
            return chi3_tokens;
        case Kind::Frequency:
            return frequency_tokens;
        case Kind::Dimensionless:
            return {};
    }
    return {};
}

bool accepts(Kind kind, std::string_view symbol) noexcept
{
    for (const auto& token : tokens(kind))
    {
        if (token.symbol == symbol)
            return true;
    }
    return false;
}

double unit_scale(Kind kind, std::string_view symbol)
{
    for (const auto& token : tokens(kind))
    {
        if (token.symbol == symbol)
            return token.scale;
    }
    std::string known;
    for (const auto& token : tokens(kind))
    {
        if (token.symbol.find('\xc2') != std::string_view::npos)
            continue;  // skip the unicode spellings in the hint
        known += known.empty() ? "" : ", ";
        known += token.symbol;
    }
    throw ParseError("unknown " + std::string(to_string(kind)) + " unit '" + std::string(symbol)
                     + "' (expected one of: " + known + ")");
}

Split split_number(std::string_view text)
{
    std::string_view body = text;
    if (!body.empty() && body.front() == '+')
        body.remove_prefix(1);

    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
    if (ec != std::errc{} || ptr == body.data())
        throw ParseError("expected a number at the start of '" + std::string(text) + "'");
    if (!std::isfinite(value))
        throw ParseError("non-finite number in '" + std::string(text) + "'");

    std::string_view unit(ptr, static_cast<std::size_t>(body.data() + body.size() - ptr));
    if (!unit.empty() && (unit.front() == ' ' || unit.front() == '\t'))
        throw ParseError("unit must follow the number without whitespace in '" + std::string(text)
                         + "'");
    return {value, unit};
}

double parse(std::string_view text, Kind kind)
{
    const auto [number, unit] = split_number(text);
    if (kind == Kind::Dimensionless)
    {
        if (!unit.empty())
            throw ParseError("unexpected unit '" + std::string(unit) + "' on a dimensionless value");
        return number;
    }
    if (unit.empty())
        throw ParseError("missing " + std::string(to_string(kind)) + " unit in '" + std::string(text)
                         + "'");
    return number * unit_scale(kind, unit);
}

std::string format_significant(double value, int digits)
{
    return fmt::format("{:.{}g}", value, digits);
}

std::string format_full(double value) { return fmt::format("{:.17g}", value); }

std::string format_intensity(double watts_per_m2)
{
    static constexpr std::array ladder{
        Scaled{1e4, "W/cm2"},  Scaled{1e7, "kW/cm2"},  Scaled{1e10, "MW/cm2"},
        Scaled{1e13, "GW/cm2"}, Scaled{1e16, "TW/cm2"},
    };
    return scaled_string(watts_per_m2, ladder);
}

std::string format_length(double metres)
{
    static constexpr std::array ladder{
        Scaled{1e-9, "nm"}, Scaled{1e-6, "um"}, Scaled{1e-3, "mm"},
        Scaled{1e-2, "cm"}, Scaled{1.0, "m"},   Scaled{1e3, "km"},
    };
    return scaled_string(metres, ladder);
}
}  // namespace pairgate::units
