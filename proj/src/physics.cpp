#include "pairgate/physics.hpp"

#include <cmath>
#include <string>

#include "pairgate/constants.hpp"
#include "pairgate/errors.hpp"

namespace pairgate
{
namespace
{
using constants::c;
using constants::eps0;
using constants::h;
using constants::hbar;
using constants::mu0;
using constants::pi;

void require_positive(double value, const char* name)
{
    if (!(value > 0.0) || !std::isfinite(value))
    {
        throw DomainError(std::string(name) + " must be finite and strictly positive (got "
                          + std::to_string(value) + ")");
    }
}

void require_nonnegative(double value, const char* name)
{
    if (!(value >= 0.0) || !std::isfinite(value))
    {
        throw DomainError(std::string(name) + " must be finite and nonnegative (got "
                          + std::to_string(value) + ")");
    }
}

void require_index(double n, const char* name)
{
    if (!(n >= 1.0) || !std::isfinite(n))
    {
        throw DomainError(std::string(name) + " must be a refractive index >= 1 (got "
                          + std::to_string(n) + ")");
    }
}

void require_beta_l(double beta_l) { require_nonnegative(beta_l, "beta*L"); }

double expm1_squared_over_8(double beta_l)
{
    const double g = std::expm1(beta_l);
    return 0.125 * g * g;
}
}  // namespace

std::string_view to_string(Process process) noexcept
{
    return process == Process::Spdc ? "SPDC" : "FWM";
}

std::string_view to_string(Regime regime) noexcept
{
    switch (regime)
    {
        case Regime::SmallSignal:
            return "SmallSignal";
        case Regime::AtLimit:
            return "AtLimit";
        case Regime::HighSignal:
            return "HighSignal";
    }
    return "?";
}

//---------------------------------------------------------------------------//
WaveTriplet::WaveTriplet(Process process, double omega_p, double omega_s, double omega_i)
    : process_(process), omega_p_(omega_p), omega_s_(omega_s), omega_i_(omega_i)
{
    require_positive(omega_p, "pump angular frequency");
    require_positive(omega_s, "signal angular frequency");
    require_positive(omega_i, "idler angular frequency");

    const double pump_energy = process == Process::Spdc ? omega_p : 2.0 * omega_p;
    const double generated = omega_s + omega_i;
    if (std::abs(pump_energy - generated) > energy_tolerance * pump_energy)
    {
        throw DomainError("energy conservation violated for " + std::string(to_string(process))
                          + ": relative mismatch "
                          + std::to_string(std::abs(pump_energy - generated) / pump_energy));
    }
}

WaveTriplet WaveTriplet::from_signal_idler(Process process, double omega_s, double omega_i)
{
    require_positive(omega_s, "signal angular frequency");
    require_positive(omega_i, "idler angular frequency");
    const double omega_p = process == Process::Spdc ? omega_s + omega_i : 0.5 * (omega_s + omega_i);
    return WaveTriplet(process, omega_p, omega_s, omega_i);
}

WaveTriplet WaveTriplet::from_wavelengths(Process process, double lambda_s, double lambda_i,
                                          std::optional<double> lambda_p)
{
    const double omega_s = wavelength_to_omega(lambda_s);
    const double omega_i = wavelength_to_omega(lambda_i);
    if (!lambda_p)
        return from_signal_idler(process, omega_s, omega_i);
    return WaveTriplet(process, wavelength_to_omega(*lambda_p), omega_s, omega_i);
}

//---------------------------------------------------------------------------//
Medium::Medium(Process process, double chi_eff, double n_p, double n_s, double n_i)
    : process_(process), chi_eff_(chi_eff), n_p_(n_p), n_s_(n_s), n_i_(n_i)
{
    require_positive(chi_eff, "effective susceptibility");
    require_index(n_p, "n_p");
    require_index(n_s, "n_s");
    require_index(n_i, "n_i");
}

Geometry::Geometry(double length, double section) : length_(length), section_(section)
{
    require_positive(length, "interaction length");
    require_positive(section, "overlap section");
}

PumpDrive PumpDrive::from_intensity(double intensity)
{
    require_nonnegative(intensity, "pump intensity");
    return PumpDrive(Intensity{intensity});
}

PumpDrive PumpDrive::from_field(double field_amplitude)
{
    require_nonnegative(field_amplitude, "pump field amplitude");
    return PumpDrive(FieldAmplitude{field_amplitude});
}

double PumpDrive::field(double n_p) const
{
    if (const auto* e = std::get_if<FieldAmplitude>(&value_))
        return e->value;
    return intensity_to_field(std::get<Intensity>(value_).value, n_p);
}

double PumpDrive::intensity(double n_p) const
{
    if (const auto* i = std::get_if<Intensity>(&value_))
        return i->value;
    return field_to_intensity(std::get<FieldAmplitude>(value_).value, n_p);
}

Bandwidth Bandwidth::from_rad_per_s(double delta_omega)
{
    require_positive(delta_omega, "bandwidth");
    return Bandwidth(delta_omega);
}

Bandwidth Bandwidth::from_hz(double delta_nu)
{
    require_positive(delta_nu, "bandwidth");
    return Bandwidth(2.0 * pi * delta_nu);
}

double Bandwidth::delta_nu() const noexcept { return delta_omega_ / (2.0 * pi); }

//---------------------------------------------------------------------------//
double coshm1(double x) noexcept
{
    const double s = std::sinh(0.5 * x);
    return 2.0 * s * s;
}

double wavelength_to_omega(double lambda)
{
    require_positive(lambda, "wavelength");
    return 2.0 * pi * c / lambda;
}

double omega_to_wavelength(double omega)
{
    require_positive(omega, "angular frequency");
    return 2.0 * pi * c / omega;
}

double kappa(double omega, double n)
{
    require_positive(omega, "angular frequency");
    require_index(n, "refractive index");
    return omega / (2.0 * n * c);
}

double vacuum_fluctuation(double omega, double n, double section, double delta_omega)
{
    require_positive(omega, "angular frequency");
    require_index(n, "refractive index");
    require_positive(section, "overlap section");
    require_positive(delta_omega, "bandwidth");
    return std::sqrt(hbar * omega * delta_omega / (4.0 * pi * c * eps0 * n * section));
}

double vacuum_fluctuation_hz(double nu, double n, double section, double delta_nu)
{
    require_positive(nu, "frequency");
    require_index(n, "refractive index");
    require_positive(section, "overlap section");
    require_positive(delta_nu, "bandwidth");
    return std::sqrt(h * nu * delta_nu / (2.0 * c * eps0 * n * section));
}

double intensity_to_field(double intensity, double n)
{
    require_nonnegative(intensity, "intensity");
    require_index(n, "refractive index");
    return std::sqrt(2.0 * intensity * c * mu0 / n);
}

double field_to_intensity(double field_amplitude, double n)
{
    require_nonnegative(field_amplitude, "field amplitude");
    require_index(n, "refractive index");
    return 0.5 * n / (c * mu0) * field_amplitude * field_amplitude;
}

double gain_coefficient(const Medium& medium, const WaveTriplet& triplet, const PumpDrive& pump)
{
    if (medium.process() != triplet.process())
    {
        throw ContractError("process mismatch: medium is " + std::string(to_string(medium.process()))
                            + " but waves are " + std::string(to_string(triplet.process())));
    }
    const double coupling
        = std::sqrt(kappa(triplet.omega_s(), medium.n_s()) * kappa(triplet.omega_i(), medium.n_i()));
    const double e_p = pump.field(medium.n_p());
    if (medium.process() == Process::Spdc)
        return medium.chi_eff() * e_p * coupling;
    return 0.5 * medium.chi_eff() * e_p * e_p * coupling;
}

double gain_product(const Medium& medium, const WaveTriplet& triplet, const PumpDrive& pump,
                    double length)
{
    require_positive(length, "interaction length");
    return gain_coefficient(medium, triplet, pump) * length;
}

double pair_flux_general(double beta_l, double vac_s, double vac_i, const WaveTriplet& triplet,
                         const Medium& medium, const Geometry& geometry)
{
    require_beta_l(beta_l);
    require_nonnegative(vac_s, "signal seed amplitude");
    require_nonnegative(vac_i, "idler seed amplitude");

    const double omega_s = triplet.omega_s();
    const double n_s = medium.n_s();
    const double cross = std::sqrt(omega_s * medium.n_i() / (triplet.omega_i() * n_s));
    const double bracket = vac_s * coshm1(beta_l) + cross * vac_i * std::sinh(beta_l);
    return eps0 * n_s * c * geometry.section() / (4.0 * hbar * omega_s) * bracket * bracket;
}

double pair_flux_reduced(double beta_l, const Bandwidth& bandwidth)
{
    require_beta_l(beta_l);
    return bandwidth.delta_nu() * expm1_squared_over_8(beta_l);
}

double pairs_per_bandwidth(double beta_l)
{
    require_beta_l(beta_l);
    return expm1_squared_over_8(beta_l);
}

double asymptote(double beta_l, Branch branch)
{
    require_beta_l(beta_l);
    if (branch == Branch::Small)
        return 0.125 * beta_l * beta_l;
    return 0.125 * std::exp(2.0 * beta_l);
}

LimitCriteria limit_criteria() noexcept
{
    const double ratio = std::expm1(1.0);
    const double pairs = 0.125 * ratio * ratio;
    return {pairs, 2.0 * pairs, ratio};
}

double field_ratio(double beta_l)
{
    require_beta_l(beta_l);
    return std::expm1(beta_l);
}

double generated_field(double beta_l, const WaveTriplet& triplet, const Medium& medium,
                       const Geometry& geometry, const Bandwidth& bandwidth, Arm arm)
{
    const double vacuum = vacuum_fluctuation(triplet.omega(arm), medium.n(arm), geometry.section(),
                                             bandwidth.delta_omega());
    return vacuum * field_ratio(beta_l);
}

double photon_number_from_field(double field_amplitude, Arm arm, const WaveTriplet& triplet,
                                const Medium& medium, const Geometry& geometry)
{
    require_nonnegative(field_amplitude, "field amplitude");
    const double nu = triplet.omega(arm) / (2.0 * pi);
    return eps0 * medium.n(arm) * c * geometry.section() / (4.0 * h * nu) * field_amplitude
           * field_amplitude;
}

double limit_pump_intensity(const Medium& medium, double lambda_s, double lambda_i, double length)
{
    require_positive(lambda_s, "signal wavelength");
    require_positive(lambda_i, "idler wavelength");
    require_positive(length, "interaction length");

    const double n_p = medium.n_p();
    const double n_s = medium.n_s();
    const double n_i = medium.n_i();
    const double chi = medium.chi_eff();
    if (medium.process() == Process::Spdc)
    {
        const double lc = length * chi;
        return n_p * n_s * n_i * lambda_s * lambda_i / (2.0 * pi * pi * mu0 * c * lc * lc);
    }
    return std::sqrt(eps0 / mu0) / pi * n_p * std::sqrt(n_s * n_i * lambda_s * lambda_i)
           / (length * chi);
}

double effective_limit_intensity(const Medium& medium, double lambda_s, double lambda_i,
                                 double length)
{
    const double intensity = limit_pump_intensity(medium, lambda_s, lambda_i, length);
    if (medium.process() == Process::Spdc)
        return intensity / (medium.n_p() * medium.n_s() * medium.n_i());
    return intensity / (medium.n_p() * std::sqrt(medium.n_s() * medium.n_i()));
}

RegimeReport classify_regime(double beta_l, double at_limit_band)
{
    if (!(at_limit_band >= 0.0 && at_limit_band < 1.0))
        throw ContractError("at-limit band must lie in [0, 1) (got " + std::to_string(at_limit_band)
                            + ")");
    require_beta_l(beta_l);

    Regime regime = Regime::AtLimit;
    if (beta_l < 1.0 - at_limit_band)
        regime = Regime::SmallSignal;
    else if (beta_l > 1.0 + at_limit_band)
        regime = Regime::HighSignal;
    return {beta_l, pairs_per_bandwidth(beta_l), field_ratio(beta_l), regime};
}
}  // namespace pairgate
