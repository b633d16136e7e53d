#include "pairgate/cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "pairgate/coupled_wave.hpp"
#include "pairgate/errors.hpp"
#include "pairgate/materials.hpp"
#include "pairgate/physics.hpp"
#include "pairgate/report.hpp"
#include "pairgate/units.hpp"

namespace pairgate::cli
{
namespace
{
using units::Kind;

/// Validation failure attributed to one command-line flag.
class FlagError : public ContractError
{
  public:
    FlagError(const std::string& flag, const std::string& what) : ContractError(flag + ": " + what) {}
};

double flag_value(const std::string& flag, const std::string& text, Kind kind)
{
    try
    {
        return units::parse(text, kind);
    }
    catch (const ParseError& e)
    {
        throw FlagError(flag, e.what());
    }
}

std::optional<double> optional_flag(const std::string& flag, const std::string& text, Kind kind)
{
    if (text.empty())
        return std::nullopt;
    return flag_value(flag, text, kind);
}

double required_flag(const std::string& flag, const std::string& text, Kind kind)
{
    if (text.empty())
        throw FlagError(flag, "is required for this command");
    return flag_value(flag, text, kind);
}

/// Re-throw core errors with the responsible flag named.
template<class Fn>
auto blame(const std::string& flag, Fn&& fn) -> decltype(fn())
{
    try
    {
        return fn();
    }
    catch (const DomainError& e)
    {
        throw FlagError(flag, e.what());
    }
}

struct GlobalArgs
{
    std::string materials;
    std::string format = "table";
    std::string out;
};

struct MediumArgs
{
    std::string material;
    std::string chi2;
    std::string chi3;
    std::string n_p;
    std::string n_s;
    std::string n_i;

    void add_to(CLI::App& cmd)
    {
        auto* m = cmd.add_option("--material", material, "Material name from the catalog");
        auto* c2 = cmd.add_option("--chi2", chi2, "Effective chi(2), e.g. 1pm/V (selects SPDC)");
        auto* c3 = cmd.add_option("--chi3", chi3, "Effective chi(3), e.g. 1e-22m2/V2 (selects FWM)");
        m->excludes(c2)->excludes(c3);
        c2->excludes(c3);
        cmd.add_option("--n-p", n_p, "Pump refractive index");
        cmd.add_option("--n-s", n_s, "Signal refractive index");
        cmd.add_option("--n-i", n_i, "Idler refractive index");
    }

    bool given() const { return !material.empty() || !chi2.empty() || !chi3.empty(); }

    Medium build(const GlobalArgs& global) const
    {
        Process process = Process::Spdc;
        double chi = 0.0;
        double np = 1.0;
        double ns = 1.0;
        double ni = 1.0;
        std::string source = "--chi2";
        if (!material.empty())
        {
            source = "--material";
            std::optional<std::filesystem::path> path;
            if (!global.materials.empty())
                path = global.materials;
            const auto catalog = materials::resolve_catalog(path);
            const materials::MaterialRecord* found = catalog.find(material);
            if (!found)
            {
                try
                {
                    catalog.lookup(material);
                }
                catch (const ContractError& e)
                {
                    throw FlagError("--material", e.what());
                }
            }
            const auto& record = *found;
            process = record.process;
            chi = record.chi_eff();
            np = record.n_p;
            ns = record.n_s;
            ni = record.n_i;
        }
        else if (!chi2.empty())
        {
            chi = flag_value("--chi2", chi2, Kind::Chi2);
        }
        else if (!chi3.empty())
        {
            source = "--chi3";
            process = Process::Fwm;
            chi = flag_value("--chi3", chi3, Kind::Chi3);
        }
        else
        {
            throw FlagError("--material/--chi2/--chi3", "one of these is required");
        }
        np = optional_flag("--n-p", n_p, Kind::Dimensionless).value_or(np);
        ns = optional_flag("--n-s", n_s, Kind::Dimensionless).value_or(ns);
        ni = optional_flag("--n-i", n_i, Kind::Dimensionless).value_or(ni);
        return blame(source + "/--n-*", [&] { return Medium(process, chi, np, ns, ni); });
    }
};

struct WaveArgs
{
    std::string lambda_s;
    std::string lambda_i;
    std::string lambda_p;

    void add_to(CLI::App& cmd)
    {
        cmd.add_option("--lambda-s", lambda_s, "Signal wavelength, e.g. 1um");
        cmd.add_option("--lambda-i", lambda_i, "Idler wavelength, e.g. 1um");
        cmd.add_option("--lambda-p", lambda_p, "Pump wavelength (optional, checked for energy conservation)");
    }

    double signal() const { return required_flag("--lambda-s", lambda_s, Kind::Length); }
    double idler() const { return required_flag("--lambda-i", lambda_i, Kind::Length); }
    std::optional<double> pump() const { return optional_flag("--lambda-p", lambda_p, Kind::Length); }

    WaveTriplet build(Process process) const
    {
        const double ls = signal();
        const double li = idler();
        const auto lp = pump();
        return blame(lp ? "--lambda-p" : "--lambda-s/--lambda-i",
                     [&] { return WaveTriplet::from_wavelengths(process, ls, li, lp); });
    }
};

report::Format parse_format(const std::string& text)
{
    if (text == "table")
        return report::Format::Table;
    if (text == "csv")
        return report::Format::Csv;
    throw FlagError("--format", "expected table or csv, got '" + text + "'");
}

/// Sends rendered output either to stdout or to --out.
class Sink
{
  public:
    Sink(const GlobalArgs& global, std::ostream& stdout_stream) : global_(global), out_(stdout_stream) {}

    template<class T>
    void emit(const T& content, report::Format format)
    {
        std::ostringstream buffer;
        report::render(content, format, buffer);
        if (global_.out.empty())
        {
            out_ << buffer.str();
            return;
        }
        std::ofstream file(global_.out, std::ios::binary | std::ios::trunc);
        if (!file)
            throw IoError("cannot open '" + global_.out + "' for writing");
        file << buffer.str();
        file.flush();
        if (!file)
            throw IoError("failed writing '" + global_.out + "'");
    }

  private:
    const GlobalArgs& global_;
    std::ostream& out_;
};

void append(report::Record& record, std::string key, double value, std::string display)
{
    record.push_back({std::move(key), value, std::move(display)});
}

std::string sig(double value) { return units::format_significant(value); }
}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"pairgate: photon-pair generation regimes for SPDC and FWM", "pairgate"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalArgs global;
    app.add_option("--materials", global.materials, "Material catalog file (overrides $PAIRGATE_MATERIALS)");
    app.add_option("--format", global.format, "Output format: table or csv");
    app.add_option("--out", global.out, "Write output to this file instead of stdout");

    std::function<void()> action;

    // criteria ------------------------------------------------------------
    auto* criteria = app.add_subcommand("criteria", "Universal limit constants at beta*L = 1");
    criteria->callback([&] {
        action = [&] {
            Sink(global, out).emit(report::criteria_record(), parse_format(global.format));
        };
    });

    // classify ------------------------------------------------------------
    MediumArgs classify_medium;
    WaveArgs classify_waves;
    std::string classify_length, classify_pump, classify_section, classify_dnu, classify_band;
    auto* classify = app.add_subcommand("classify", "Gain product and regime for a configuration");
    classify_medium.add_to(*classify);
    classify_waves.add_to(*classify);
    classify->add_option("--length", classify_length, "Interaction length, e.g. 1cm");
    classify->add_option("--pump-intensity", classify_pump, "Pump intensity (total for FWM), e.g. 135MW/cm2");
    classify->add_option("--section", classify_section, "Beam overlap section, e.g. 1mm2");
    classify->add_option("--delta-nu", classify_dnu, "Pair linewidth, e.g. 1GHz");
    classify->add_option("--band", classify_band, "Relative half-width of the AtLimit band (default 0.01)");
    classify->callback([&] {
        action = [&] {
            const auto medium = classify_medium.build(global);
            const auto triplet = classify_waves.build(medium.process());
            const double length = required_flag("--length", classify_length, Kind::Length);
            const double intensity = required_flag("--pump-intensity", classify_pump, Kind::Intensity);
            const double band = optional_flag("--band", classify_band, Kind::Dimensionless).value_or(0.01);
            const auto pump = blame("--pump-intensity", [&] { return PumpDrive::from_intensity(intensity); });
            const double beta_l = blame("--length", [&] { return gain_product(medium, triplet, pump, length); });

            const auto regime = [&] {
                try
                {
                    return classify_regime(beta_l, band);
                }
                catch (const ContractError& e)
                {
                    throw FlagError("--band", e.what());
                }
            }();
            auto record = report::regime_record(regime);
            record.insert(record.begin(), report::Field{"process", std::string(to_string(medium.process())),
                                                        std::string(to_string(medium.process()))});

            if (const auto dnu = optional_flag("--delta-nu", classify_dnu, Kind::Frequency))
            {
                const auto bandwidth = blame("--delta-nu", [&] { return Bandwidth::from_hz(*dnu); });
                append(record, "pairs_per_s", pair_flux_reduced(beta_l, bandwidth),
                       sig(pair_flux_reduced(beta_l, bandwidth)) + " pairs/s");
                if (const auto section = optional_flag("--section", classify_section, Kind::Area))
                {
                    const auto geometry = blame("--section", [&] { return Geometry(length, *section); });
                    const double vac = vacuum_fluctuation(triplet.omega_s(), medium.n_s(), geometry.section(),
                                                          bandwidth.delta_omega());
                    const double gen = generated_field(beta_l, triplet, medium, geometry, bandwidth, Arm::Signal);
                    append(record, "vacuum_field_signal_V_per_m", vac, sig(vac) + " V/m");
                    append(record, "generated_field_signal_V_per_m", gen, sig(gen) + " V/m");
                }
            }
            Sink(global, out).emit(record, parse_format(global.format));
        };
    });

    // flux ----------------------------------------------------------------
    MediumArgs flux_medium;
    WaveArgs flux_waves;
    std::string flux_beta_l, flux_length, flux_pump, flux_section, flux_dnu;
    auto* flux = app.add_subcommand("flux", "Absolute pair flux for a gain product or a configuration");
    flux_medium.add_to(*flux);
    flux_waves.add_to(*flux);
    flux->add_option("--beta-l", flux_beta_l, "Gain product beta*L (dimensionless)");
    flux->add_option("--length", flux_length, "Interaction length");
    flux->add_option("--pump-intensity", flux_pump, "Pump intensity (total for FWM)");
    flux->add_option("--section", flux_section, "Beam overlap section");
    flux->add_option("--delta-nu", flux_dnu, "Pair linewidth, e.g. 1GHz (required)");
    flux->callback([&] {
        action = [&] {
            const double dnu = required_flag("--delta-nu", flux_dnu, Kind::Frequency);
            const auto bandwidth = blame("--delta-nu", [&] { return Bandwidth::from_hz(dnu); });

            report::Record record;
            double beta_l = 0.0;
            std::optional<Medium> medium;
            std::optional<WaveTriplet> triplet;
            double length = 0.0;
            if (!flux_beta_l.empty())
            {
                if (flux_medium.given())
                    throw FlagError("--beta-l", "give either --beta-l or a medium configuration, not both");
                beta_l = flag_value("--beta-l", flux_beta_l, Kind::Dimensionless);
                // Validate through the core model.
                blame("--beta-l", [&] { return pairs_per_bandwidth(beta_l); });
            }
            else
            {
                medium = flux_medium.build(global);
                triplet = flux_waves.build(medium->process());
                length = required_flag("--length", flux_length, Kind::Length);
                const double intensity = required_flag("--pump-intensity", flux_pump, Kind::Intensity);
                const auto pump = blame("--pump-intensity", [&] { return PumpDrive::from_intensity(intensity); });
                beta_l = blame("--length", [&] { return gain_product(*medium, *triplet, pump, length); });
            }

            const double per_bw = pairs_per_bandwidth(beta_l);
            const double flux_value = pair_flux_reduced(beta_l, bandwidth);
            append(record, "beta_l", beta_l, sig(beta_l));
            append(record, "pairs_per_bandwidth", per_bw, sig(per_bw));
            append(record, "delta_nu_Hz", bandwidth.delta_nu(), sig(bandwidth.delta_nu()) + " Hz");
            append(record, "pairs_per_s", flux_value, sig(flux_value) + " pairs/s");

            if (medium)
            {
                if (const auto section = optional_flag("--section", flux_section, Kind::Area))
                {
                    const auto geometry = blame("--section", [&] { return Geometry(length, *section); });
                    const double vac_s = vacuum_fluctuation(triplet->omega_s(), medium->n_s(), *section,
                                                            bandwidth.delta_omega());
                    const double vac_i = vacuum_fluctuation(triplet->omega_i(), medium->n_i(), *section,
                                                            bandwidth.delta_omega());
                    const double general = pair_flux_general(beta_l, vac_s, vac_i, *triplet, *medium, geometry);
                    append(record, "pairs_per_s_seeded_form", general, sig(general) + " pairs/s");
                    append(record, "vacuum_field_signal_V_per_m", vac_s, sig(vac_s) + " V/m");
                    append(record, "vacuum_field_idler_V_per_m", vac_i, sig(vac_i) + " V/m");
                }
            }
            Sink(global, out).emit(record, parse_format(global.format));
        };
    });

    // limit ---------------------------------------------------------------
    MediumArgs limit_medium;
    WaveArgs limit_waves;
    std::string limit_length;
    auto* limit = app.add_subcommand("limit", "Pump intensity at which beta*L = 1");
    limit_medium.add_to(*limit);
    limit_waves.add_to(*limit);
    limit->add_option("--length", limit_length, "Interaction length");
    limit->callback([&] {
        action = [&] {
            const auto medium = limit_medium.build(global);
            const double ls = limit_waves.signal();
            const double li = limit_waves.idler();
            if (limit_waves.pump())
                limit_waves.build(medium.process());  // energy-conservation check only
            const double length = required_flag("--length", limit_length, Kind::Length);
            const double intensity = blame("--length", [&] { return limit_pump_intensity(medium, ls, li, length); });
            const double gamma = effective_limit_intensity(medium, ls, li, length);

            report::Record record;
            record.push_back({"process", std::string(to_string(medium.process())),
                              std::string(to_string(medium.process()))});
            append(record, "length_m", length, units::format_length(length));
            append(record, "limit_intensity_W_per_m2", intensity, units::format_intensity(intensity));
            append(record, "gamma_W_per_m2", gamma, units::format_intensity(gamma));
            Sink(global, out).emit(record, parse_format(global.format));
        };
    });

    // oracle --------------------------------------------------------------
    std::string oracle_beta_l = "1";
    std::string oracle_dnu = "1Hz";
    int oracle_steps = 1024;
    auto* oracle_cmd = app.add_subcommand("oracle", "Compare the RK4 coupled-wave oracle with the closed form");
    oracle_cmd->add_option("--beta-l", oracle_beta_l, "Gain product beta*L")->capture_default_str();
    oracle_cmd->add_option("--steps", oracle_steps, "RK4 step count (>= 16)")->capture_default_str();
    oracle_cmd->add_option("--delta-nu", oracle_dnu, "Pair linewidth")->capture_default_str();
    oracle_cmd->callback([&] {
        action = [&] {
            const double beta_l = flag_value("--beta-l", oracle_beta_l, Kind::Dimensionless);
            const double dnu = flag_value("--delta-nu", oracle_dnu, Kind::Frequency);
            const auto bandwidth = blame("--delta-nu", [&] { return Bandwidth::from_hz(dnu); });
            const auto setup = blame("--beta-l", [&] { return oracle::reference_setup(beta_l); });
            const double analytic = pair_flux_reduced(beta_l, bandwidth);
            const double numeric = [&] {
                try
                {
                    return oracle::oracle_pair_flux(setup.medium, setup.triplet, setup.pump, setup.geometry,
                                                    bandwidth, oracle::IntegrationConfig{oracle_steps});
                }
                catch (const ContractError& e)
                {
                    throw FlagError("--steps", e.what());
                }
            }();
            const double rel = analytic == 0.0 ? std::abs(numeric) : std::abs(numeric - analytic) / analytic;

            report::Record record;
            append(record, "beta_l", beta_l, sig(beta_l));
            append(record, "steps", oracle_steps, std::to_string(oracle_steps));
            append(record, "delta_nu_Hz", bandwidth.delta_nu(), sig(bandwidth.delta_nu()) + " Hz");
            append(record, "analytic_pairs_per_s", analytic, units::format_full(analytic));
            append(record, "oracle_pairs_per_s", numeric, units::format_full(numeric));
            append(record, "relative_error", rel, units::format_significant(rel, 3));
            Sink(global, out).emit(record, parse_format(global.format));
        };
    });

    // sweep ---------------------------------------------------------------
    int sweep_figure = 0;
    MediumArgs sweep_medium;
    WaveArgs sweep_waves;
    std::string sweep_variable, sweep_min, sweep_max, sweep_scale = "linear";
    std::string sweep_length, sweep_pump, sweep_dnu, sweep_band;
    int sweep_points = 101;
    auto* sweep_cmd = app.add_subcommand("sweep", "CSV/table parameter sweep or figure preset");
    auto* fig_opt = sweep_cmd->add_option("--figure", sweep_figure, "Figure preset: 2, 3 or 4");
    auto* var_opt = sweep_cmd->add_option("--variable", sweep_variable, "beta_l, length or pump_intensity");
    fig_opt->excludes(var_opt);
    sweep_cmd->add_option("--min", sweep_min, "Range start (with unit unless beta_l)");
    sweep_cmd->add_option("--max", sweep_max, "Range end");
    sweep_cmd->add_option("--points", sweep_points, "Number of points (>= 2)")->capture_default_str();
    sweep_cmd->add_option("--scale", sweep_scale, "linear or log")->capture_default_str();
    sweep_medium.add_to(*sweep_cmd);
    sweep_waves.add_to(*sweep_cmd);
    sweep_cmd->add_option("--length", sweep_length, "Fixed interaction length");
    sweep_cmd->add_option("--pump-intensity", sweep_pump, "Fixed pump intensity");
    sweep_cmd->add_option("--delta-nu", sweep_dnu, "Pair linewidth (adds pairs_per_s)");
    sweep_cmd->add_option("--band", sweep_band, "AtLimit band (default 0.01)");
    sweep_cmd->callback([&] {
        action = [&] {
            const auto format = parse_format(global.format);
            if (*fig_opt)
            {
                const auto table = [&] {
                    try
                    {
                        return report::figure(sweep_figure);
                    }
                    catch (const ContractError& e)
                    {
                        throw FlagError("--figure", e.what());
                    }
                }();
                Sink(global, out).emit(table, format);
                return;
            }
            if (sweep_variable.empty())
                throw FlagError("--figure/--variable", "one of these is required");

            report::SweepSpec spec;
            Kind kind = Kind::Dimensionless;
            if (sweep_variable == "beta_l")
                spec.variable = report::SweepVariable::BetaL;
            else if (sweep_variable == "length")
                spec.variable = report::SweepVariable::Length, kind = Kind::Length;
            else if (sweep_variable == "pump_intensity")
                spec.variable = report::SweepVariable::PumpIntensity, kind = Kind::Intensity;
            else
                throw FlagError("--variable", "expected beta_l, length or pump_intensity");

            spec.min = required_flag("--min", sweep_min, kind);
            spec.max = required_flag("--max", sweep_max, kind);
            spec.count = sweep_points;
            if (sweep_scale == "linear")
                spec.scale = report::Scale::Linear;
            else if (sweep_scale == "log")
                spec.scale = report::Scale::Log;
            else
                throw FlagError("--scale", "expected linear or log");

            report::SweepContext ctx;
            if (sweep_medium.given())
                ctx.medium = sweep_medium.build(global);
            ctx.lambda_s = optional_flag("--lambda-s", sweep_waves.lambda_s, Kind::Length);
            ctx.lambda_i = optional_flag("--lambda-i", sweep_waves.lambda_i, Kind::Length);
            ctx.lambda_p = sweep_waves.pump();
            ctx.length = optional_flag("--length", sweep_length, Kind::Length);
            ctx.pump_intensity = optional_flag("--pump-intensity", sweep_pump, Kind::Intensity);
            if (const auto dnu = optional_flag("--delta-nu", sweep_dnu, Kind::Frequency))
                ctx.bandwidth = blame("--delta-nu", [&] { return Bandwidth::from_hz(*dnu); });
            ctx.at_limit_band = optional_flag("--band", sweep_band, Kind::Dimensionless).value_or(0.01);

            const auto table = [&] {
                try
                {
                    return report::sweep(spec, ctx);
                }
                catch (const ContractError& e)
                {
                    throw FlagError("sweep", e.what());
                }
                catch (const DomainError& e)
                {
                    throw FlagError("sweep", e.what());
                }
            }();
            Sink(global, out).emit(table, format);
        };
    });

    // CLI11 wants argv[0] plus mutable-free C strings.
    std::vector<const char*> argv{"pairgate"};
    for (const auto& a : args)
        argv.push_back(a.c_str());

    try
    {
        app.parse(static_cast<int>(argv.size()), argv.data());
    }
    catch (const CLI::CallForHelp&)
    {
        out << app.help();
        return Success;
    }
    catch (const CLI::CallForAllHelp&)
    {
        out << app.help("", CLI::AppFormatMode::All);
        return Success;
    }
    catch (const CLI::ParseError& e)
    {
        err << "error: " << e.what() << '\n';
        return ValidationError;
    }

    try
    {
        if (action)
            action();
    }
    catch (const IoError& e)
    {
        err << "error: " << e.what() << '\n';
        return IoFailure;
    }
    catch (const ParseError& e)
    {
        err << "error: " << e.what() << '\n';
        return ValidationError;
    }
    catch (const std::invalid_argument& e)
    {
        err << "error: " << e.what() << '\n';
        return ValidationError;
    }
    catch (const std::domain_error& e)
    {
        err << "error: " << e.what() << '\n';
        return ValidationError;
    }
    return Success;
}
}  // namespace pairgate::cli
