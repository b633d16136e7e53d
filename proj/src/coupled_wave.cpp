#include "pairgate/coupled_wave.hpp"

#include <cmath>
#include <string>

#include "pairgate/errors.hpp"

namespace pairgate::oracle
{
CoupledWaveSystem CoupledWaveSystem::make(const Medium& medium, const WaveTriplet& triplet,
                                          const PumpDrive& pump)
{
    if (medium.process() != triplet.process())
        throw ContractError("process mismatch between medium and wave triplet");

    const double e_p = pump.field(medium.n_p());
    const double drive = medium.process() == Process::Spdc ? medium.chi_eff() * e_p
                                                           : 0.5 * medium.chi_eff() * e_p * e_p;
    return {kappa(triplet.omega_s(), medium.n_s()), kappa(triplet.omega_i(), medium.n_i()), drive};
}

double CoupledWaveSystem::beta() const { return drive * std::sqrt(kappa_s * kappa_i); }

double CoupledWaveSystem::invariant(const OdeState& state) const noexcept
{
    return kappa_i * state.e_s * state.e_s - kappa_s * state.e_i * state.e_i;
}

OdeState integrate(const Medium& medium, const WaveTriplet& triplet, const PumpDrive& pump,
                   const Geometry& geometry, const OdeState& initial,
                   const IntegrationConfig& config, const Observer& observer)
{
    if (config.steps < IntegrationConfig::min_steps)
    {
        throw ContractError("RK4 needs at least " + std::to_string(IntegrationConfig::min_steps)
                            + " steps (got " + std::to_string(config.steps) + ")");
    }
    if (initial.z != 0.0)
        throw ContractError("integration must start at z = 0");
    if (!(initial.e_s >= 0.0) || !(initial.e_i >= 0.0))
        throw DomainError("initial field moduli must be nonnegative");

    const auto sys = CoupledWaveSystem::make(medium, triplet, pump);
    const double a_s = sys.kappa_s * sys.drive;
    const double a_i = sys.kappa_i * sys.drive;
    const double dz = geometry.length() / config.steps;

    OdeState state = initial;
    if (observer)
        observer(state);

    for (int step = 0; step < config.steps; ++step)
    {
        const double s = state.e_s;
        const double i = state.e_i;

        const double k1s = a_s * i;
        const double k1i = a_i * s;
        const double k2s = a_s * (i + 0.5 * dz * k1i);
        const double k2i = a_i * (s + 0.5 * dz * k1s);
        const double k3s = a_s * (i + 0.5 * dz * k2i);
        const double k3i = a_i * (s + 0.5 * dz * k2s);
        const double k4s = a_s * (i + dz * k3i);
        const double k4i = a_i * (s + dz * k3s);

        state.e_s = s + dz / 6.0 * (k1s + 2.0 * k2s + 2.0 * k3s + k4s);
        state.e_i = i + dz / 6.0 * (k1i + 2.0 * k2i + 2.0 * k3i + k4i);
        // Accumulating dz drifts; recompute the abscissa from the step index.
        state.z = geometry.length() * (step + 1) / config.steps;

        if (observer)
            observer(state);
    }
    return state;
}

double oracle_pair_flux(const Medium& medium, const WaveTriplet& triplet, const PumpDrive& pump,
                        const Geometry& geometry, const Bandwidth& bandwidth,
                        const IntegrationConfig& config)
{
    const double vac_s = vacuum_fluctuation(triplet.omega_s(), medium.n_s(), geometry.section(),
                                            bandwidth.delta_omega());
    const double vac_i = vacuum_fluctuation(triplet.omega_i(), medium.n_i(), geometry.section(),
                                            bandwidth.delta_omega());

    const OdeState out
        = integrate(medium, triplet, pump, geometry, OdeState{0.0, vac_s, vac_i}, config);
    const double generated = out.e_s - vac_s;
    return photon_number_from_field(generated, Arm::Signal, triplet, medium, geometry);
}

ReferenceSetup reference_setup(double beta_l)
{
    if (!(beta_l >= 0.0) || !std::isfinite(beta_l))
        throw DomainError("beta*L must be finite and nonnegative");

    constexpr double lambda = 1e-6;
    constexpr double chi2 = 1e-12;
    constexpr double length = 1e-3;
    constexpr double section = 1e-6;

    Medium medium(Process::Spdc, chi2);
    auto triplet = WaveTriplet::from_wavelengths(Process::Spdc, lambda, lambda);
    const double coupling = std::sqrt(kappa(triplet.omega_s(), medium.n_s())
                                      * kappa(triplet.omega_i(), medium.n_i()));
    auto pump = PumpDrive::from_field(beta_l / (length * chi2 * coupling));
    return {medium, triplet, pump, Geometry(length, section)};
}
}  // namespace pairgate::oracle
