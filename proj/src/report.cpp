#include "pairgate/report.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "pairgate/errors.hpp"
#include "pairgate/units.hpp"

namespace pairgate::report
{
namespace
{
std::string csv_cell(const Cell& cell)
{
    if (const auto* d = std::get_if<double>(&cell))
        return units::format_full(*d);
    return std::get<std::string>(cell);
}

std::string text_cell(const Cell& cell)
{
    if (const auto* d = std::get_if<double>(&cell))
        return units::format_significant(*d);
    return std::get<std::string>(cell);
}

template<class Range, class Fn>
void write_joined(std::ostream& out, const Range& range, Fn&& fn)
{
    bool first = true;
    for (const auto& item : range)
    {
        if (!first)
            out << ',';
        out << fn(item);
        first = false;
    }
    out << '\n';
}

const Medium& need(const std::optional<Medium>& medium)
{
    if (!medium)
        throw ContractError("this sweep needs a medium (--material, --chi2 or --chi3)");
    return *medium;
}

double need(const std::optional<double>& value, const char* what)
{
    if (!value)
        throw ContractError(std::string("this sweep needs ") + what);
    return *value;
}

WaveTriplet triplet_for(const SweepContext& ctx, Process process)
{
    return WaveTriplet::from_wavelengths(process, need(ctx.lambda_s, "--lambda-s"),
                                         need(ctx.lambda_i, "--lambda-i"), ctx.lambda_p);
}

std::string regime_name(const RegimeReport& r) { return std::string(to_string(r.regime)); }
}  // namespace

void render(const Record& record, Format format, std::ostream& out)
{
    if (format == Format::Csv)
    {
        write_joined(out, record, [](const Field& f) { return f.key; });
        write_joined(out, record, [](const Field& f) { return csv_cell(f.value); });
        return;
    }
    std::size_t width = 0;
    for (const auto& f : record)
        width = std::max(width, f.key.size());
    for (const auto& f : record)
        out << fmt::format("{:<{}}  {}\n", f.key, width, f.display);
}

void render(const Table& table, Format format, std::ostream& out)
{
    if (format == Format::Csv)
    {
        write_joined(out, table.columns, [](const std::string& c) { return c; });
        for (const auto& row : table.rows)
            write_joined(out, row, csv_cell);
        return;
    }

    std::vector<std::size_t> widths;
    for (const auto& c : table.columns)
        widths.push_back(c.size());
    std::vector<std::vector<std::string>> text;
    for (const auto& row : table.rows)
    {
        auto& line = text.emplace_back();
        for (std::size_t k = 0; k < row.size(); ++k)
        {
            line.push_back(text_cell(row[k]));
            widths[k] = std::max(widths[k], line.back().size());
        }
    }
    for (std::size_t k = 0; k < table.columns.size(); ++k)
        out << fmt::format("{}{:>{}}", k ? "  " : "", table.columns[k], widths[k]);
    out << '\n';
    for (const auto& line : text)
    {
        for (std::size_t k = 0; k < line.size(); ++k)
            out << fmt::format("{}{:>{}}", k ? "  " : "", line[k], widths[k]);
        out << '\n';
    }
}

//---------------------------------------------------------------------------//
void SweepSpec::validate() const
{
    if (!std::isfinite(min) || !std::isfinite(max) || !(min < max))
        throw ContractError("sweep range needs min < max");
    if (count < 2)
        throw ContractError("sweep needs at least 2 points");
    if (scale == Scale::Log && !(min > 0.0))
        throw ContractError("log-scale sweep needs min > 0");
    if (min < 0.0)
        throw ContractError("swept quantities are nonnegative; min must be >= 0");
}

std::vector<double> SweepSpec::points() const
{
    validate();
    std::vector<double> out(static_cast<std::size_t>(count));
    const double last = count - 1;
    for (int k = 0; k < count; ++k)
    {
        const double t = k / last;
        if (scale == Scale::Linear)
            out[k] = min + t * (max - min);
        else
            out[k] = std::pow(10.0, std::log10(min) + t * (std::log10(max) - std::log10(min)));
    }
    out.front() = min;
    out.back() = max;
    return out;
}

Table sweep(const SweepSpec& spec, const SweepContext& ctx)
{
    const auto xs = spec.points();
    Table table;

    switch (spec.variable)
    {
        case SweepVariable::BetaL:
        {
            table.columns = {"beta_l", "pairs_per_bandwidth", "field_ratio", "regime"};
            if (ctx.bandwidth)
                table.columns.push_back("pairs_per_s");
            for (const double x : xs)
            {
                const auto r = classify_regime(x, ctx.at_limit_band);
                std::vector<Cell> row{x, r.pairs_per_bandwidth, r.field_ratio, regime_name(r)};
                if (ctx.bandwidth)
                    row.emplace_back(pair_flux_reduced(x, *ctx.bandwidth));
                table.rows.push_back(std::move(row));
            }
            break;
        }
        case SweepVariable::Length:
        {
            const Medium& medium = need(ctx.medium);
            const double ls = need(ctx.lambda_s, "--lambda-s");
            const double li = need(ctx.lambda_i, "--lambda-i");
            table.columns = {"length_m", "limit_intensity_W_per_m2", "gamma_W_per_m2"};
            std::optional<WaveTriplet> triplet;
            if (ctx.pump_intensity)
            {
                triplet = triplet_for(ctx, medium.process());
                table.columns.insert(table.columns.end(),
                                     {"beta_l", "pairs_per_bandwidth", "regime"});
            }
            for (const double x : xs)
            {
                std::vector<Cell> row{x, limit_pump_intensity(medium, ls, li, x),
                                      effective_limit_intensity(medium, ls, li, x)};
                if (triplet)
                {
                    const double bl = gain_product(
                        medium, *triplet, PumpDrive::from_intensity(*ctx.pump_intensity), x);
                    const auto r = classify_regime(bl, ctx.at_limit_band);
                    row.insert(row.end(), {bl, r.pairs_per_bandwidth, regime_name(r)});
                }
                table.rows.push_back(std::move(row));
            }
            break;
        }
        case SweepVariable::PumpIntensity:
        {
            const Medium& medium = need(ctx.medium);
            const auto triplet = triplet_for(ctx, medium.process());
            const double length = need(ctx.length, "--length");
            table.columns = {"pump_intensity_W_per_m2", "beta_l", "pairs_per_bandwidth",
                             "field_ratio", "regime"};
            for (const double x : xs)
            {
                const double bl
                    = gain_product(medium, triplet, PumpDrive::from_intensity(x), length);
                const auto r = classify_regime(bl, ctx.at_limit_band);
                table.rows.push_back(
                    {x, bl, r.pairs_per_bandwidth, r.field_ratio, regime_name(r)});
            }
            break;
        }
    }
    return table;
}

SweepSpec figure_spec(int number)
{
    switch (number)
    {
        case 2:
            return {SweepVariable::BetaL, 0.0, 6.0, 601, Scale::Linear};
        case 3:
            return {SweepVariable::Length, 1e-3, 1.0, 301, Scale::Log};
        case 4:
            return {SweepVariable::Length, 1e-3, 1e3, 601, Scale::Log};
        default:
            throw ContractError("figure must be 2, 3 or 4 (got " + std::to_string(number) + ")");
    }
}

Table figure(int number)
{
    const auto spec = figure_spec(number);
    const auto xs = spec.points();
    constexpr double lambda = 1e-6;

    Table table;
    if (number == 2)
    {
        table.columns = {"beta_l", "pairs_per_bandwidth"};
        for (const double x : xs)
            table.rows.push_back({x, pairs_per_bandwidth(x)});
        return table;
    }

    struct Curve
    {
        Medium medium;
        std::string column;
    };
    std::vector<Curve> curves;
    if (number == 3)
    {
        for (const int pm : {1, 10, 100})
        {
            curves.push_back({Medium(Process::Spdc, pm * 1e-12),
                              fmt::format("gamma_W_per_m2_chi2_{}pm_per_V", pm)});
        }
    }
    else
    {
        for (const char* chi : {"1e-22", "1e-20", "1e-18"})
        {
            curves.push_back({Medium(Process::Fwm, std::stod(chi)),
                              fmt::format("gamma_W_per_m2_chi3_{}_m2_per_V2", chi)});
        }
    }

    table.columns = {"length_m"};
    for (const auto& curve : curves)
        table.columns.push_back(curve.column);
    for (const double x : xs)
    {
        std::vector<Cell> row{x};
        for (const auto& curve : curves)
            row.emplace_back(effective_limit_intensity(curve.medium, lambda, lambda, x));
        table.rows.push_back(std::move(row));
    }
    return table;
}

//---------------------------------------------------------------------------//
Record criteria_record()
{
    const auto lim = limit_criteria();
    auto field = [](std::string key, double value) {
        return Field{std::move(key), value,
                     fmt::format("{:.3f}  ({})", value, units::format_full(value))};
    };
    return {
        field("pairs_per_s_per_Hz", lim.pairs_limit),
        field("photons_per_s_per_Hz", lim.photons_limit),
        field("field_ratio", lim.field_ratio_limit),
    };
}

Record regime_record(const RegimeReport& report)
{
    return {
        {"beta_l", report.beta_l, units::format_significant(report.beta_l)},
        {"regime", std::string(to_string(report.regime)), std::string(to_string(report.regime))},
        {"pairs_per_bandwidth", report.pairs_per_bandwidth,
         units::format_significant(report.pairs_per_bandwidth)},
        {"field_ratio", report.field_ratio, units::format_significant(report.field_ratio)},
    };
}
}  // namespace pairgate::report
