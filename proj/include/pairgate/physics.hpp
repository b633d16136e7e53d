#pragma once

// Semiclassical photon-pair generation model for phase-matched SPDC and FWM
// in the undepleted-pump approximation. Every quantity is strict SI; unit
// conveniences live in units.hpp and are only used at the CLI boundary.

#include <optional>
#include <string_view>
#include <variant>

namespace pairgate
{
enum class Process
{
    Spdc,  ///< chi(2): omega_p -> omega_s + omega_i
    Fwm,   ///< chi(3): omega_p + omega_p -> omega_s + omega_i
};

std::string_view to_string(Process process) noexcept;

enum class Arm
{
    Signal,
    Idler,
};

//---------------------------------------------------------------------------//
/*!
 * Pump, signal and idler angular frequencies obeying energy conservation.
 *
 * The full-triplet constructor accepts a relative mismatch up to
 * \c energy_tolerance; the two-frequency factories compute the pump exactly.
 * Signal and idler may coincide (degenerate operation).
 */
class WaveTriplet
{
  public:
    static constexpr double energy_tolerance = 1e-6;

    WaveTriplet(Process process, double omega_p, double omega_s, double omega_i);

    static WaveTriplet from_signal_idler(Process process, double omega_s, double omega_i);
    /// Wavelengths in metres (vacuum); the pump wavelength is optional.
    static WaveTriplet from_wavelengths(Process process, double lambda_s, double lambda_i,
                                        std::optional<double> lambda_p = std::nullopt);

    Process process() const noexcept { return process_; }
    double omega_p() const noexcept { return omega_p_; }
    double omega_s() const noexcept { return omega_s_; }
    double omega_i() const noexcept { return omega_i_; }
    double omega(Arm arm) const noexcept { return arm == Arm::Signal ? omega_s_ : omega_i_; }

  private:
    Process process_;
    double omega_p_;
    double omega_s_;
    double omega_i_;
};

//---------------------------------------------------------------------------//
/*!
 * Nonlinear medium: process order, effective susceptibility and the three
 * refractive indices.
 *
 * chi_eff is in m/V for SPDC and m^2/V^2 for FWM.
 */
class Medium
{
  public:
    Medium(Process process, double chi_eff, double n_p = 1.0, double n_s = 1.0, double n_i = 1.0);

    Process process() const noexcept { return process_; }
    double chi_eff() const noexcept { return chi_eff_; }
    double n_p() const noexcept { return n_p_; }
    double n_s() const noexcept { return n_s_; }
    double n_i() const noexcept { return n_i_; }
    double n(Arm arm) const noexcept { return arm == Arm::Signal ? n_s_ : n_i_; }

  private:
    Process process_;
    double chi_eff_;
    double n_p_;
    double n_s_;
    double n_i_;
};

/// Interaction length L (m) and beam-overlap section S (m^2).
class Geometry
{
  public:
    Geometry(double length, double section);

    double length() const noexcept { return length_; }
    double section() const noexcept { return section_; }

  private:
    double length_;
    double section_;
};

//---------------------------------------------------------------------------//
/*!
 * Pump drive given either as an intensity (W/m^2) or as a field modulus (V/m).
 *
 * For FWM the value is the TOTAL of the two pump waves, not the amplitude of
 * each. Using a per-wave value would silently change beta by a factor of two.
 */
class PumpDrive
{
  public:
    struct Intensity
    {
        double value;
    };
    struct FieldAmplitude
    {
        double value;
    };

    static PumpDrive from_intensity(double intensity);
    static PumpDrive from_field(double field_amplitude);

    double field(double n_p) const;
    double intensity(double n_p) const;

  private:
    explicit PumpDrive(std::variant<Intensity, FieldAmplitude> value) : value_(value) {}

    std::variant<Intensity, FieldAmplitude> value_;
};

/// Spectral linewidth of the generated pairs, stored as delta-omega (rad/s).
class Bandwidth
{
  public:
    static Bandwidth from_rad_per_s(double delta_omega);
    static Bandwidth from_hz(double delta_nu);

    double delta_omega() const noexcept { return delta_omega_; }
    double delta_nu() const noexcept;

  private:
    explicit Bandwidth(double delta_omega) : delta_omega_(delta_omega) {}

    double delta_omega_;
};

enum class Regime
{
    SmallSignal,
    AtLimit,
    HighSignal,
};

std::string_view to_string(Regime regime) noexcept;

struct RegimeReport
{
    double beta_l;
    double pairs_per_bandwidth;  ///< (1/8)(e^{beta L} - 1)^2
    double field_ratio;          ///< generated field / vacuum field
    Regime regime;
};

enum class Branch
{
    Small,
    High,
};

struct LimitCriteria
{
    double pairs_limit;        ///< pairs per second per hertz at beta L = 1
    double photons_limit;      ///< signal + idler photons per second per hertz
    double field_ratio_limit;  ///< generated/vacuum field modulus
};

//---------------------------------------------------------------------------//
// Numerically stable primitives

/// cosh(x) - 1 without cancellation near zero.
double coshm1(double x) noexcept;

//---------------------------------------------------------------------------//
// Closed-form model

/// Coupling factor omega / (2 n c), 1/m per unit field normalisation.
double kappa(double omega, double n);

/// Zero-point field modulus sqrt(hbar omega domega / (4 pi c eps0 n S)), V/m.
double vacuum_fluctuation(double omega, double n, double section, double delta_omega);

/// Same quantity written with h, nu and delta-nu: sqrt(h nu dnu / (2 c eps0 n S)).
double vacuum_fluctuation_hz(double nu, double n, double section, double delta_nu);

/// |E| = sqrt(2 I c mu0 / n).
double intensity_to_field(double intensity, double n);
/// I = (1/2) n / (c mu0) |E|^2.
double field_to_intensity(double field_amplitude, double n);

/*!
 * Parametric gain coefficient beta (1/m).
 *
 * SPDC: beta = chi2 |E_p| sqrt(kappa_s kappa_i)
 * FWM:  beta = (1/2) chi3 |E_p|^2 sqrt(kappa_s kappa_i), |E_p| the total pump.
 */
double gain_coefficient(const Medium& medium, const WaveTriplet& triplet, const PumpDrive& pump);

/// Convenience: gain_coefficient(...) * length.
double gain_product(const Medium& medium, const WaveTriplet& triplet, const PumpDrive& pump,
                    double length);

/*!
 * Pair flux (pairs/s) from arbitrary signal/idler seed amplitudes:
 *
 *   N = eps0 n_s c S / (4 hbar omega_s)
 *       * [vac_s (cosh(bL) - 1) + sqrt(omega_s n_i / (omega_i n_s)) vac_i sinh(bL)]^2
 */
double pair_flux_general(double beta_l, double vac_s, double vac_i, const WaveTriplet& triplet,
                         const Medium& medium, const Geometry& geometry);

/// (dnu / 8) (exp(bL) - 1)^2, valid when both arms are seeded by vacuum.
double pair_flux_reduced(double beta_l, const Bandwidth& bandwidth);

/// (1/8) (exp(bL) - 1)^2; dimensionless.
double pairs_per_bandwidth(double beta_l);

/// Small: (1/8)(bL)^2. High: (1/8) exp(2 bL).
double asymptote(double beta_l, Branch branch);

/// ((e-1)^2/8, (e-1)^2/4, e-1), evaluated exactly.
LimitCriteria limit_criteria() noexcept;

/// exp(bL) - 1.
double field_ratio(double beta_l);

/// Generated field modulus on one arm: vacuum_fluctuation(arm) * (exp(bL) - 1).
double generated_field(double beta_l, const WaveTriplet& triplet, const Medium& medium,
                       const Geometry& geometry, const Bandwidth& bandwidth, Arm arm);

/// Photons/s carried by a field modulus: eps0 n c S / (4 h nu) |E|^2.
double photon_number_from_field(double field_amplitude, Arm arm, const WaveTriplet& triplet,
                                const Medium& medium, const Geometry& geometry);

/*!
 * Pump intensity (W/m^2) at which beta L = 1.
 *
 * SPDC: n_p n_s n_i lambda_s lambda_i / (2 pi^2 mu0 c (L chi2)^2)
 * FWM:  (1/pi) sqrt(eps0/mu0) n_p sqrt(n_s n_i lambda_s lambda_i) / (L chi3)
 */
double limit_pump_intensity(const Medium& medium, double lambda_s, double lambda_i, double length);

/// Index-normalised limit intensity Gamma: I_lim/(n_p n_s n_i) for SPDC,
/// I_lim/(n_p sqrt(n_s n_i)) for FWM.
double effective_limit_intensity(const Medium& medium, double lambda_s, double lambda_i,
                                 double length);

/// SmallSignal below 1 - band, HighSignal above 1 + band, AtLimit otherwise.
RegimeReport classify_regime(double beta_l, double at_limit_band = 0.01);

double wavelength_to_omega(double lambda);
double omega_to_wavelength(double omega);
}  // namespace pairgate
