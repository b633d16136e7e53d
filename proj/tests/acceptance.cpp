// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "pairgate/coupled_wave.hpp"
#include "pairgate/physics.hpp"
#include "pairgate/report.hpp"
#include "test_support.hpp"

using namespace pairgate;
using pairgate::test::Draw;
using pairgate::test::rel_err;

namespace
{
struct Outcome
{
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok)
        {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

constexpr double um = 1e-6;
constexpr double e = std::numbers::e;

std::string three_digits(double x) { return fmt::format("{:.3f}", x); }

Outcome universal_constants()
{
    Outcome o;
    const auto lim = limit_criteria();
    o.require(rel_err(lim.pairs_limit, 0.125 * (e - 1) * (e - 1)) < 1e-15, "pairs closed form");
    o.require(lim.photons_limit == 2.0 * lim.pairs_limit, "photons = 2 pairs");
    o.require(lim.field_ratio_limit * lim.field_ratio_limit / 8.0 == lim.pairs_limit, "pairs = ratio^2/8");
    o.require(rel_err(lim.photons_limit, 0.25 * (e - 1) * (e - 1)) < 1e-15, "photons closed form");
    o.require(rel_err(lim.field_ratio_limit, e - 1) < 1e-15, "ratio closed form");
    o.require(three_digits(lim.pairs_limit) == "0.369", "0.369 display");
    o.require(three_digits(lim.photons_limit) == "0.738", "0.738 display");
    o.require(three_digits(lim.field_ratio_limit) == "1.718", "1.718 display");
    o.detail = fmt::format("{} {} {}", three_digits(lim.pairs_limit), three_digits(lim.photons_limit),
                           three_digits(lim.field_ratio_limit))
               + (o.detail.empty() ? "" : " | " + o.detail);
    return o;
}

struct Endpoint
{
    double length;
    double chi;
    double expected;  // W/m^2
};

Outcome endpoints(Process process, const std::vector<Endpoint>& cases)
{
    Outcome o;
    double worst = 0.0;
    for (const auto& c : cases)
    {
        const double gamma = effective_limit_intensity(Medium(process, c.chi), um, um, c.length);
        const double err = rel_err(gamma, c.expected);
        worst = std::max(worst, err);
        o.require(err <= 0.01, fmt::format("L={} chi={} got {:.4g} W/cm2", c.length, c.chi, gamma / 1e4));
    }
    o.detail = fmt::format("worst relative deviation {:.2e} (tol 1e-2)", worst) + (o.detail.empty() ? "" : " | " + o.detail);
    return o;
}

Outcome oracle_equivalence()
{
    Outcome o;
    double worst = 0.0;
    const auto bw = Bandwidth::from_hz(1.0);
    for (const double bl : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0})
    {
        const auto s = oracle::reference_setup(bl);
        const double numeric = oracle::oracle_pair_flux(s.medium, s.triplet, s.pump, s.geometry, bw, {1024});
        const double err = rel_err(numeric, pair_flux_reduced(bl, bw));
        worst = std::max(worst, err);
        o.require(err <= 1e-6, fmt::format("beta_l={} err={:.2e}", bl, err));
    }

    // Convergence order from step halving against the exact cosh/sinh solution.
    const auto s = oracle::reference_setup(5.0);
    const auto sys = oracle::CoupledWaveSystem::make(s.medium, s.triplet, s.pump);
    const double r = std::sqrt(sys.kappa_s / sys.kappa_i);
    const double exact_s = std::cosh(5.0) + 0.5 * r * std::sinh(5.0);
    std::vector<double> errors;
    for (const int steps : {16, 32, 64, 128})
    {
        const auto out = oracle::integrate(s.medium, s.triplet, s.pump, s.geometry, {0.0, 1.0, 0.5}, {steps});
        errors.push_back(rel_err(out.e_s, exact_s));
    }
    std::string orders;
    for (std::size_t k = 0; k + 1 < errors.size(); ++k)
    {
        const double order = std::log2(errors[k] / errors[k + 1]);
        orders += fmt::format("{}{:.3f}", orders.empty() ? "" : ",", order);
        o.require(std::abs(order - 4.0) <= 0.2, fmt::format("order {:.3f}", order));
    }
    o.detail = fmt::format("max rel err {:.2e} (tol 1e-6), orders {}", worst, orders) + (o.detail.empty() ? "" : " | " + o.detail);
    return o;
}

Outcome limit_round_trip()
{
    Outcome o;
    Draw draw(2024);
    double worst = 0.0;
    for (const auto process : {Process::Spdc, Process::Fwm})
    {
        for (int k = 0; k < 100; ++k)
        {
            const double chi = process == Process::Spdc ? draw.log_uniform(1e-13, 1e-9) : draw.log_uniform(1e-24, 1e-17);
            const Medium m(process, chi, draw.index(), draw.index(), draw.index());
            const double ls = draw.wavelength();
            const double li = draw.wavelength();
            const Geometry g(draw.log_uniform(1e-4, 1e4), draw.log_uniform(1e-12, 1e-4));
            const auto t = WaveTriplet::from_wavelengths(process, ls, li);
            const double intensity = limit_pump_intensity(m, ls, li, g.length());
            const double bl = gain_product(m, t, PumpDrive::from_intensity(intensity), g.length());
            worst = std::max(worst, rel_err(bl, 1.0));
        }
    }
    o.require(worst <= 1e-9, "round trip");
    o.detail = fmt::format("200 draws, worst |beta_l - 1| = {:.2e} (tol 1e-9)", worst);
    return o;
}

Outcome regime_scaling()
{
    Outcome o;
    std::string ratios;
    for (const auto process : {Process::Spdc, Process::Fwm})
    {
        const Medium m(process, process == Process::Spdc ? 1e-12 : 1e-22);
        const auto t = WaveTriplet::from_wavelengths(process, um, um);
        const double length = 1e-2;
        const double i_lim = limit_pump_intensity(m, um, um, length);
        // beta L scales as sqrt(I) for SPDC and as I for FWM.
        const double i0 = process == Process::Spdc ? i_lim * 1e-6 : i_lim * 1e-3;
        const double bl0 = gain_product(m, t, PumpDrive::from_intensity(i0), length);
        const double bl1 = gain_product(m, t, PumpDrive::from_intensity(2 * i0), length);
        const double ratio = pairs_per_bandwidth(bl1) / pairs_per_bandwidth(bl0);
        const double expected = process == Process::Spdc ? 2.0 : 4.0;
        o.require(rel_err(bl0, 1e-3) < 1e-9, "start point beta_l = 1e-3");
        o.require(rel_err(ratio, expected) <= 0.01, fmt::format("{} ratio {:.4f}", to_string(process), ratio));
        ratios += fmt::format("{} x{:.4f} ", to_string(process), ratio);
    }
    double worst_high = 0.0;
    for (double bl = 8.0; bl <= 30.0; bl += 0.5)
        worst_high = std::max(worst_high, rel_err(asymptote(bl, Branch::High), pairs_per_bandwidth(bl)));
    o.require(worst_high <= 1e-3, "high-signal asymptote");
    o.detail = ratios + fmt::format("| high-branch worst {:.2e} (tol 1e-3)", worst_high)
               + (o.detail.empty() ? "" : " | " + o.detail);
    return o;
}

Outcome forms_equivalence()
{
    Outcome o;
    Draw draw(77);
    double worst_flux = 0.0;
    double worst_vac = 0.0;
    for (int k = 0; k < 500; ++k)
    {
        const auto process = k % 2 ? Process::Spdc : Process::Fwm;
        const auto t = WaveTriplet::from_signal_idler(process, draw.optical_omega(), draw.optical_omega());
        const Medium m(process, 1.0, draw.index(), draw.index(), draw.index());
        const Geometry g(draw.log_uniform(1e-4, 1e3), draw.log_uniform(1e-12, 1e-4));
        const auto bw = Bandwidth::from_hz(draw.log_uniform(1.0, 1e12));
        const double bl = draw.uniform(0.0, 10.0);
        const double vs = vacuum_fluctuation(t.omega_s(), m.n_s(), g.section(), bw.delta_omega());
        const double vi = vacuum_fluctuation(t.omega_i(), m.n_i(), g.section(), bw.delta_omega());
        worst_flux = std::max(worst_flux, rel_err(pair_flux_general(bl, vs, vi, t, m, g), pair_flux_reduced(bl, bw)));
        const double vs_hz = vacuum_fluctuation_hz(t.omega_s() / (2 * std::numbers::pi), m.n_s(), g.section(), bw.delta_nu());
        worst_vac = std::max(worst_vac, rel_err(vs, vs_hz));
    }
    o.require(worst_flux <= 1e-12, "general vs reduced");
    o.require(worst_vac <= 1e-12, "vacuum forms");
    o.detail = fmt::format("500 draws, flux {:.2e}, vacuum {:.2e} (tol 1e-12)", worst_flux, worst_vac);
    return o;
}

Outcome desk_scale_limitation()
{
    // Measured thresholds are out of reach of a numerical artifact. What can be
    // checked is that the model maps any such threshold consistently: for a
    // KTP-class crystal pumped at 532 nm, the length at which 40 MW/cm2 is the
    // limit intensity reproduces beta L = 1.
    Outcome o;
    const Medium m(Process::Spdc, 1e-12);
    const double lambda = 1064e-9;
    const double target = 40e10;
    const double length = 1e-3 * std::sqrt(limit_pump_intensity(m, lambda, lambda, 1e-3) / target);
    const auto t = WaveTriplet::from_wavelengths(Process::Spdc, lambda, lambda, 532e-9);
    const double bl = gain_product(m, t, PumpDrive::from_intensity(target), length);
    o.require(rel_err(bl, 1.0) < 1e-9, "model consistency");
    o.detail = fmt::format("not reproducible experimentally; model-consistency only (L = {:.3g} m gives beta_l = {:.12f})",
                           length, bl);
    return o;
}
}  // namespace

int main()
{
    struct Criterion
    {
        const char* name;
        std::function<Outcome()> check;
    };

    const std::vector<Criterion> criteria{
        {"1 universal constants 0.369 / 0.738 / 1.718", universal_constants},
        {"2 SPDC effective limit intensity endpoints",
         [] {
             return endpoints(Process::Spdc, {{1e-3, 1e-12, 13.5e13},
                                              {1e-2, 1e-12, 135e10},
                                              {1e-3, 10e-12, 135e10},
                                              {1e-2, 10e-12, 1.35e10},
                                              {1e-3, 100e-12, 1.35e10},
                                              {1e-2, 100e-12, 13.5e7}});
         }},
        {"3 FWM effective limit intensity endpoints",
         [] {
             return endpoints(Process::Fwm, {{1e-3, 1e-22, 845e13},
                                             {1e-2, 1e-22, 84.5e13},
                                             {1e-3, 1e-20, 8.45e13},
                                             {1e-2, 1e-20, 845e10},
                                             {1e-3, 1e-18, 84.5e10},
                                             {1e-2, 1e-18, 8.45e10},
                                             {10.0, 1e-22, 84.5e10},
                                             {1e3, 1e-22, 845e7}});
         }},
        {"4 RK4 oracle equivalence and 4th-order convergence", oracle_equivalence},
        {"5 limit intensity round trip (100 draws per process)", limit_round_trip},
        {"6 small-signal scaling and high-signal asymptote", regime_scaling},
        {"7 equivalence of seeded/reduced and vacuum forms", forms_equivalence},
        {"8 experimental threshold (documented limitation)", desk_scale_limitation},
    };

    int failures = 0;
    for (const auto& c : criteria)
    {
        Outcome o;
        try
        {
            o = c.check();
        }
        catch (const std::exception& ex)
        {
            o.pass = false;
            o.detail = std::string("exception: ") + ex.what();
        }
        failures += o.pass ? 0 : 1;
        std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
