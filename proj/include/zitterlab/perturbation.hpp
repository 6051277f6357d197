#pragma once

// Degenerate stationary perturbation theory for H0 = beta mc^2 perturbed by
// H_I = c alpha.pi in a weak field B along z, the zitterbewegung field
// correction and the resulting g factor, plus an exact Dirac-Landau
// diagonalization cross-check.

#include "zitterlab/check.hpp"
#include "zitterlab/constants.hpp"
#include "zitterlab/dirac.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

namespace zitterlab {

struct FieldConfig {
    double B = 0.0;  // along z, B >= 0
    PhysicalConstants constants = PhysicalConstants::natural();
};

enum class SpinAlignment { aligned, anti_aligned };

/// <+s|H_I|+s'> for the two positive-energy spin states, with the kinetic
/// momentum components treated as c-numbers `pi`. Zero by block structure.
ComplexMatrix first_order_matrix(const FieldConfig& config, const Vec3& pi = {1.0, 1.0, 1.0});
/// Same construction on the negative-energy doublet.
ComplexMatrix first_order_matrix_negative(const FieldConfig& config, const Vec3& pi = {1.0, 1.0, 1.0});

/// Third-order degenerate correction on the positive doublet (c-number pi),
/// returned as the 2x2 effective matrix.
ComplexMatrix third_order_matrix(const FieldConfig& config, const Vec3& pi = {1.0, 1.0, 1.0});

struct SecondOrderEnergy {
    double energy;            // pi^2/2m -+ (e hbar/2m) B
    double negative_route;    // sum over negative-energy intermediate states
    double full_route;        // <+s|H_I^2|+s> / 2mc^2 (closure over all states)
    double positive_residual; // contribution of positive intermediates (must vanish)
};

/// Second-order energy of the spin state aligned (or anti-aligned) with B,
/// with pi^2 carried as a real parameter.
SecondOrderEnergy second_order_energy(const FieldConfig& config, double pi_sq,
                                      SpinAlignment spin = SpinAlignment::aligned);

/// pi^2/2m - (e hbar/2m)(B + delta_B): the second-order energy with the ZB
/// field added.
double second_order_energy_shifted(const FieldConfig& config, double pi_sq, double delta_b);

class DerivativeInstability : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct MomentEstimate {
    double value;                  // -d(energy)/dB extrapolated to B -> 0+
    std::vector<double> estimates; // central differences at B = h, h/2, h/4, h/8
    double spread;                 // disagreement between two extrapolations
};

/// -lim_{B->0+} d energy/dB via Richardson-extrapolated central differences.
/// Every evaluation point is strictly positive.
MomentEstimate magnetic_moment(const std::function<double(double)>& energy_fn, double h = 1e-3,
                               double rel_tol = 1e-6);

struct ZBField {
    double radius;       // R = hbar/mc
    double current;      // e c / (2 pi R)
    double delta_b;      // I / (2 pi epsilon0 c^2 R)
    double closed_form;  // e m^2 c / (4 pi^2 epsilon0 hbar^2)
};

ZBField zb_delta_b(const PhysicalConstants& k);

/// -(1/2mc^2) [pi^4/4m^2 - 2 (pi^2/2m)(e hbar/2m)(B + dB) + (e^2 hbar^2/4m^2)(B + dB)^2]
double fourth_order_energy(const FieldConfig& config, double pi_sq, double delta_b);

struct SchwingerCorrection {
    double via_delta_b;   // (e^2 hbar^2 / 4 m^3 c^2) delta_B
    double numeric;       // -d epsilon_4/dB at B -> 0+, pi^2 = 0
    double closed_form;   // (e hbar/2m)(alpha/2pi), alpha from e, epsilon0, hbar, c
    double ratio;         // via_delta_b / (e hbar/2m)
};

SchwingerCorrection schwinger_correction(const PhysicalConstants& k);

/// 2 (1 + alpha/2pi)
double g_factor(double alpha);

struct SelfEnergy {
    double energy;                 // e^2 / (4 pi epsilon0 R), R = hbar/mc
    double ratio_to_rest_energy;   // = alpha
    double augmented_rest_energy;  // mc^2 (1 + alpha)
};

SelfEnergy zb_self_energy(const PhysicalConstants& k);

struct PerturbationLedger {
    double epsilon1;
    double epsilon2;
    double epsilon3;
    double epsilon4;
    double delta_b;
    double moment;
    double delta_moment;
    double g;
    double self_energy;
};

/// Evaluates every rung at field config.B and kinetic term pi_sq.
PerturbationLedger build_ledger(const FieldConfig& config, double pi_sq = 0.0);

class RegimeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// H = c alpha.pi + beta mc^2 at p_z = 0 on a Landau basis: N levels for the
/// spin-up orbital block and N-1 for spin-down, the pairing sigma.pi preserves.
ComplexMatrix dirac_landau_hamiltonian(double b_field, std::size_t levels,
                                       const PhysicalConstants& k = PhysicalConstants::natural());

/// sqrt(m^2 c^4 + 2 c^2 e hbar B n)
double landau_level(double b_field, std::size_t n, const PhysicalConstants& k = PhysicalConstants::natural());

struct LandauSpectrum {
    std::vector<double> eigenvalues;  // ascending, all
    std::vector<double> positive;     // ascending, E > 0
    double closed_form_deviation;     // max over the lowest levels/2 positive eigenvalues
    double symmetry_defect;           // max |lambda_i + lambda_{n-1-i}|
};

LandauSpectrum landau_spectrum(double b_field, std::size_t levels,
                               const PhysicalConstants& k = PhysicalConstants::natural());

/// Spin-split ratio (E_1 - E_0) / ((e hbar/2m) B) at a single field.
double landau_split_g(double b_field, std::size_t levels, const PhysicalConstants& k = PhysicalConstants::natural());

/// Fitted g from fields {B, B/2, B/4}, extrapolated to B -> 0; g = 2 within
/// 1e-6. Detail reports the closed-form deviation and the N vs 2N gap.
CheckResult dirac_landau_crosscheck(double b_field, std::size_t levels,
                                    const PhysicalConstants& k = PhysicalConstants::natural());

/// Interior positive levels against the closed form, to 1e-9.
CheckResult landau_closed_form_check(double b_field, std::size_t levels,
                                     const PhysicalConstants& k = PhysicalConstants::natural());

}  // namespace zitterlab
