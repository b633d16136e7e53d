#pragma once

// Tabular results and parameter sweeps. Everything here is a projection of
// physics.hpp / coupled_wave.hpp results into rows; no formula lives here.

#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "pairgate/physics.hpp"

namespace pairgate::report
{
enum class Format
{
    Table,
    Csv,
};

using Cell = std::variant<double, std::string>;

/// One named scalar of a report. display is the human string (3 digits, units).
struct Field
{
    std::string key;
    Cell value;
    std::string display;
};

using Record = std::vector<Field>;

struct Table
{
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

void render(const Record& record, Format format, std::ostream& out);
void render(const Table& table, Format format, std::ostream& out);

//---------------------------------------------------------------------------//
enum class SweepVariable
{
    BetaL,
    Length,
    PumpIntensity,
};

enum class Scale
{
    Linear,
    Log,
};

struct SweepSpec
{
    SweepVariable variable = SweepVariable::BetaL;
    double min = 0.0;
    double max = 1.0;
    int count = 2;
    Scale scale = Scale::Linear;

    /// Throws ContractError unless min < max, count >= 2 and log implies min > 0.
    void validate() const;
    /// Sample abscissae; the first and last points are exactly min and max.
    std::vector<double> points() const;
};

/// Fixed parameters of an explicit sweep. Which ones are needed depends on
/// the swept variable.
struct SweepContext
{
    std::optional<Medium> medium;
    std::optional<double> lambda_s;
    std::optional<double> lambda_i;
    std::optional<double> lambda_p;
    std::optional<double> length;
    std::optional<double> pump_intensity;
    std::optional<Bandwidth> bandwidth;
    double at_limit_band = 0.01;
};

Table sweep(const SweepSpec& spec, const SweepContext& context);

/// Figure presets: 2 is pairs per bandwidth vs beta L over [0, 6]; 3 and 4
/// are the effective limit intensity vs L for three SPDC / FWM susceptibilities.
Table figure(int number);
SweepSpec figure_spec(int number);

//---------------------------------------------------------------------------//
Record criteria_record();
Record regime_record(const RegimeReport& report);
}  // namespace pairgate::report
