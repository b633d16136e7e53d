#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "pairgate/cli.hpp"
#include "pairgate/coupled_wave.hpp"
#include "pairgate/materials.hpp"
#include "pairgate/physics.hpp"
#include "pairgate/report.hpp"
#include "pairgate/units.hpp"
#include "test_support.hpp"

using namespace pairgate;
using pairgate::test::rel_err;

namespace
{
struct Result
{
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

/// Parse the two-line CSV of a scalar report into key -> cell text.
std::map<std::string, std::string> csv_record(const std::string& text)
{
    std::istringstream in(text);
    std::string header;
    std::string values;
    std::getline(in, header);
    std::getline(in, values);
    std::map<std::string, std::string> out;
    std::istringstream h(header);
    std::istringstream v(values);
    std::string key;
    std::string value;
    while (std::getline(h, key, ',') && std::getline(v, value, ','))
        out[key] = value;
    return out;
}

double num(const std::map<std::string, std::string>& rec, const std::string& key) { return std::stod(rec.at(key)); }

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

const std::filesystem::path tmp = PAIRGATE_TEST_TMPDIR;
}  // namespace

TEST_CASE("criteria")
{
    const auto r = run({"criteria"});
    CHECK(r.code == 0);
    CHECK(r.out.find("0.369") != std::string::npos);
    CHECK(r.out.find("0.738") != std::string::npos);
    CHECK(r.out.find("1.718") != std::string::npos);

    const auto csv = csv_record(run({"criteria", "--format", "csv"}).out);
    const auto lim = limit_criteria();
    CHECK(num(csv, "pairs_per_s_per_Hz") == lim.pairs_limit);
    CHECK(num(csv, "photons_per_s_per_Hz") == lim.photons_limit);
    CHECK(num(csv, "field_ratio") == lim.field_ratio_limit);
}

TEST_CASE("classify reproduces the SPDC and FWM limits")
{
    const auto at_limit = run({"classify", "--material", "KTP_class", "--length", "1cm", "--lambda-s", "1um",
                               "--lambda-i", "1um", "--pump-intensity", "135MW/cm2", "--format", "csv"});
    REQUIRE(at_limit.code == 0);
    auto rec = csv_record(at_limit.out);
    CHECK(rel_err(num(rec, "beta_l"), 1.0) < 0.01);
    CHECK(rec.at("regime") == "AtLimit");

    // Golden: identical to a direct library call.
    const Medium ktp = materials::builtin_presets().lookup("KTP_class").to_medium();
    const auto triplet = WaveTriplet::from_wavelengths(Process::Spdc, 1e-6, 1e-6);
    const double direct = gain_product(ktp, triplet, PumpDrive::from_intensity(135e10), 1e-2);
    CHECK(num(rec, "beta_l") == direct);
    CHECK(num(rec, "pairs_per_bandwidth") == pairs_per_bandwidth(direct));
    CHECK(num(rec, "field_ratio") == field_ratio(direct));

    const auto halved = csv_record(run({"classify", "--chi2", "1pm/V", "--length", "1cm", "--lambda-s", "1um",
                                        "--lambda-i", "1um", "--pump-intensity", "67.5MW/cm2", "--format", "csv"})
                                       .out);
    CHECK(halved.at("regime") == "SmallSignal");

    const auto fwm = csv_record(run({"classify", "--material", "silica_fiber", "--length", "10m", "--lambda-s",
                                     "1um", "--lambda-i", "1um", "--pump-intensity", "84.5MW/cm2", "--format", "csv"})
                                    .out);
    CHECK(fwm.at("regime") == "AtLimit");
    CHECK(fwm.at("process") == "FWM");

    const auto table = run({"classify", "--chi3", "1e-22m2/V2", "--length", "1km", "--lambda-s", "1um", "--lambda-i",
                            "1um", "--pump-intensity", "10MW/cm2", "--delta-nu", "1GHz", "--section", "80um2"});
    CHECK(table.code == 0);
    CHECK(table.out.find("HighSignal") != std::string::npos);
    CHECK(table.out.find("generated_field_signal_V_per_m") != std::string::npos);
}

TEST_CASE("validation errors exit with 2 and name the flag")
{
    const auto bad_unit = run({"classify", "--chi2", "1pm/V", "--length", "1", "--lambda-s", "1um", "--lambda-i",
                               "1um", "--pump-intensity", "1MW/cm2"});
    CHECK(bad_unit.code == 2);
    CHECK(bad_unit.err.find("--length") != std::string::npos);

    const auto missing = run({"classify", "--chi2", "1pm/V", "--length", "1cm", "--lambda-s", "1um",
                              "--lambda-i", "1um"});
    CHECK(missing.code == 2);
    CHECK(missing.err.find("--pump-intensity") != std::string::npos);

    const auto negative = run({"limit", "--chi2", "1pm/V", "--length", "-1cm", "--lambda-s", "1um", "--lambda-i", "1um"});
    CHECK(negative.code == 2);
    CHECK(negative.err.find("--length") != std::string::npos);

    const auto unknown = run({"limit", "--material", "KTP", "--length", "1cm", "--lambda-s", "1um", "--lambda-i", "1um"});
    CHECK(unknown.code == 2);
    CHECK(unknown.err.find("--material") != std::string::npos);
    CHECK(unknown.err.find("KTP_class") != std::string::npos);

    const auto energy = run({"limit", "--chi2", "1pm/V", "--length", "1cm", "--lambda-s", "1um", "--lambda-i", "1um",
                             "--lambda-p", "600nm"});
    CHECK(energy.code == 2);
    CHECK(energy.err.find("--lambda-p") != std::string::npos);

    CHECK(run({"oracle", "--steps", "8"}).code == 2);
    CHECK(run({"classify", "--chi2", "1pm/V", "--chi3", "1e-22m2/V2"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"criteria", "--format", "xml"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("limit")
{
    const auto r = run({"limit", "--chi2", "1pm/V", "--length", "1mm", "--lambda-s", "1um", "--lambda-i", "1um"});
    CHECK(r.code == 0);
    CHECK(r.out.find("13.4 GW/cm2") != std::string::npos);

    const auto csv = csv_record(run({"limit", "--material", "silica_fiber", "--length", "1km", "--lambda-s", "1um",
                                     "--lambda-i", "1um", "--format", "csv"})
                                    .out);
    CHECK(rel_err(num(csv, "gamma_W_per_m2"), 845e7) < 0.01);

    const auto indexed = csv_record(run({"limit", "--chi2", "10pm/V", "--n-p", "2.2", "--n-s", "2.1", "--n-i", "2.1",
                                         "--length", "2cm", "--lambda-s", "1.5um", "--lambda-i", "1.6um",
                                         "--format", "csv"})
                                        .out);
    const Medium m(Process::Spdc, 10e-12, 2.2, 2.1, 2.1);
    CHECK(num(indexed, "limit_intensity_W_per_m2") == limit_pump_intensity(m, 1.5e-6, 1.6e-6, 0.02));
    CHECK(num(indexed, "gamma_W_per_m2") == effective_limit_intensity(m, 1.5e-6, 1.6e-6, 0.02));
}

TEST_CASE("flux")
{
    const auto zero = csv_record(run({"flux", "--beta-l", "0", "--delta-nu", "1GHz", "--format", "csv"}).out);
    CHECK(num(zero, "pairs_per_s") == 0.0);

    const auto one = csv_record(run({"flux", "--beta-l", "1", "--delta-nu", "1Hz", "--format", "csv"}).out);
    CHECK(num(one, "pairs_per_s") == pair_flux_reduced(1.0, Bandwidth::from_hz(1.0)));

    CHECK(run({"flux", "--beta-l", "1"}).code == 2);
    CHECK(run({"flux", "--beta-l", "-1", "--delta-nu", "1Hz"}).code == 2);

    const auto physical = csv_record(run({"flux", "--chi2", "10pm/V", "--length", "1cm", "--lambda-s", "810nm",
                                          "--lambda-i", "810nm", "--pump-intensity", "1MW/cm2", "--delta-nu",
                                          "100GHz", "--section", "0.01mm2", "--format", "csv"})
                                         .out);
    CHECK(rel_err(num(physical, "pairs_per_s_seeded_form"), num(physical, "pairs_per_s")) < 1e-12);
}

TEST_CASE("oracle")
{
    const auto rec = csv_record(run({"oracle", "--beta-l", "1", "--format", "csv"}).out);
    CHECK(num(rec, "relative_error") <= 1e-6);
    CHECK(num(rec, "steps") == 1024);

    const auto s = oracle::reference_setup(2.0);
    const auto direct = oracle::oracle_pair_flux(s.medium, s.triplet, s.pump, s.geometry, Bandwidth::from_hz(1.0), {256});
    const auto via_cli = csv_record(run({"oracle", "--beta-l", "2", "--steps", "256", "--format", "csv"}).out);
    CHECK(num(via_cli, "oracle_pairs_per_s") == direct);
}

TEST_CASE("sweep files")
{
    const auto a = tmp / "fig3_a.csv";
    const auto b = tmp / "fig3_b.csv";
    REQUIRE(run({"sweep", "--figure", "3", "--format", "csv", "--out", a.string()}).code == 0);
    REQUIRE(run({"--format", "csv", "--out", b.string(), "sweep", "--figure", "3"}).code == 0);
    const auto text = slurp(a);
    CHECK(text == slurp(b));
    CHECK(text.rfind("length_m,gamma_W_per_m2_chi2_1pm_per_V,", 0) == 0);

    std::ostringstream expected;
    report::render(report::figure(3), report::Format::Csv, expected);
    CHECK(text == expected.str());

    const auto fig2 = run({"sweep", "--figure", "2", "--format", "csv"});
    CHECK(fig2.out.rfind("beta_l,pairs_per_bandwidth\n0,0\n", 0) == 0);

    const auto unwritable = run({"sweep", "--figure", "4", "--out", "/nonexistent-dir/x.csv"});
    CHECK(unwritable.code == 3);

    const auto explicit_sweep = run({"sweep", "--variable", "pump_intensity", "--min", "1MW/cm2", "--max",
                                     "1GW/cm2", "--points", "4", "--scale", "log", "--material", "PPLN_class",
                                     "--length", "1cm", "--lambda-s", "1um", "--lambda-i", "1um", "--format", "csv"});
    CHECK(explicit_sweep.code == 0);
    CHECK(explicit_sweep.out.rfind("pump_intensity_W_per_m2,beta_l", 0) == 0);

    CHECK(run({"sweep", "--variable", "length", "--min", "1mm", "--max", "1m", "--scale", "log"}).code == 2);
    CHECK(run({"sweep", "--variable", "beta_l", "--min", "2", "--max", "1"}).code == 2);
    CHECK(run({"sweep", "--figure", "7"}).code == 2);
}

TEST_CASE("materials flag and environment")
{
    const auto file = tmp / "cli_materials.txt";
    {
        std::ofstream out(file);
        out << "[thin_film]\nprocess = SPDC\nchi_eff = 25 pm/V\nn_p = 2.2\nn_s = 2.1\nn_i = 2.1\n";
    }
    const auto r = run({"--materials", file.string(), "limit", "--material", "thin_film", "--length", "1mm",
                        "--lambda-s", "1550nm", "--lambda-i", "1550nm", "--format", "csv"});
    REQUIRE(r.code == 0);
    const Medium m(Process::Spdc, 25e-12, 2.2, 2.1, 2.1);
    const double lambda = units::parse("1550nm", units::Kind::Length);
    CHECK(num(csv_record(r.out), "limit_intensity_W_per_m2") == limit_pump_intensity(m, lambda, lambda, 1e-3));

    ::setenv(materials::env_var, file.c_str(), 1);
    CHECK(run({"limit", "--material", "thin_film", "--length", "1mm", "--lambda-s", "1550nm", "--lambda-i", "1550nm"})
              .code
          == 0);
    ::unsetenv(materials::env_var);

    const auto bad = tmp / "cli_bad_materials.txt";
    {
        std::ofstream out(bad);
        out << "[x]\nprocess = FWM\nchi_eff = 1 pm/V\n";
    }
    const auto rejected = run({"--materials", bad.string(), "limit", "--material", "x", "--length", "1mm",
                               "--lambda-s", "1um", "--lambda-i", "1um"});
    CHECK(rejected.code == 2);
    CHECK(rejected.err.find("unit mismatch") != std::string::npos);

    CHECK(run({"--materials", (tmp / "missing.txt").string(), "limit", "--material", "x", "--length", "1mm",
               "--lambda-s", "1um", "--lambda-i", "1um"})
              .code
          == 3);
}
