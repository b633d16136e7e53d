#pragma once

// Fixed-step RK4 integration of the real, phase-matched, undepleted-pump
// coupled-wave system
//
//   d e_s / dz = kappa_s * D * e_i
//   d e_i / dz = kappa_i * D * e_s
//
// with D = chi2 |E_p| (SPDC) or D = chi3 |E_p|^2 / 2 (FWM). Its solution is
// the cosh/sinh pair whose closed form the analytic pair-flux formulas use,
// so it serves as an independent numerical check on them.

#include <functional>

#include "pairgate/physics.hpp"

namespace pairgate::oracle
{
struct OdeState
{
    double z = 0.0;    ///< position along the interaction path (m)
    double e_s = 0.0;  ///< signal field modulus (V/m)
    double e_i = 0.0;  ///< idler field modulus (V/m)
};

enum class Scheme
{
    Rk4,
};

struct IntegrationConfig
{
    static constexpr int min_steps = 16;

    int steps = 1024;
    Scheme scheme = Scheme::Rk4;
};

/// Right-hand side coefficients of the linear system.
struct CoupledWaveSystem
{
    double kappa_s;
    double kappa_i;
    double drive;  ///< D, 1/m per (1/m) coupling

    static CoupledWaveSystem make(const Medium& medium, const WaveTriplet& triplet,
                                  const PumpDrive& pump);

    double beta() const;

    /// kappa_i e_s^2 - kappa_s e_i^2, conserved along exact trajectories.
    double invariant(const OdeState& state) const noexcept;
};

using Observer = std::function<void(const OdeState&)>;

/*!
 * Integrate from z = 0 to z = L with classical RK4.
 *
 * The observer, when set, sees the initial state and every accepted step.
 */
OdeState integrate(const Medium& medium, const WaveTriplet& triplet, const PumpDrive& pump,
                   const Geometry& geometry, const OdeState& initial,
                   const IntegrationConfig& config = {}, const Observer& observer = {});

/*!
 * Pair flux (pairs/s) obtained numerically.
 *
 * Both arms are seeded with their vacuum fluctuation amplitudes, the system
 * is integrated, the initial signal vacuum is subtracted from the output
 * signal field, and the remainder is converted to a photon flux.
 */
double oracle_pair_flux(const Medium& medium, const WaveTriplet& triplet, const PumpDrive& pump,
                        const Geometry& geometry, const Bandwidth& bandwidth,
                        const IntegrationConfig& config = {});

/// A concrete degenerate SPDC configuration (1 um, unit indices, 1 pm/V,
/// L = 1 mm, S = 1e-6 m^2) whose pump field is chosen to yield beta_l.
struct ReferenceSetup
{
    Medium medium;
    WaveTriplet triplet;
    PumpDrive pump;
    Geometry geometry;
};

ReferenceSetup reference_setup(double beta_l);
}  // namespace pairgate::oracle
