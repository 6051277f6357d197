#pragma once

// Dirac matrices (Dirac-Pauli representation), free Hamiltonian, plane-wave
// spinors and energy projectors.

#include "zitterlab/check.hpp"
#include "zitterlab/linalg.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

namespace zitterlab {

using Vec3 = std::array<double, 3>;

double dot(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);

struct DiracBasis {
    std::array<ComplexMatrix, 3> alpha;  // 4x4
    ComplexMatrix beta;                  // 4x4
    std::array<ComplexMatrix, 3> sigma;  // 2x2 Pauli
    std::array<ComplexMatrix, 3> spin;   // 4x4 Sigma_i = diag(sigma_i, sigma_i)
};

/// Shared immutable instance.
const DiracBasis& dirac_basis();

enum class EnergySign { positive, negative };
enum class SpinLabel { up, down };

struct SpinorLabel {
    EnergySign energy;
    SpinLabel spin;
};

struct Spinor {
    std::array<Complex, 4> components{};
    std::optional<SpinorLabel> label = std::nullopt;

    ComplexVector vector() const { return {components.begin(), components.end()}; }
    static Spinor from_vector(const ComplexVector& v, std::optional<SpinorLabel> label = std::nullopt);
    double norm() const;
    Spinor normalized() const;
};

/// Relativistic energy sqrt(m^2 c^4 + p^2 c^2).
double dirac_energy(const Vec3& p, double m, double c = 1.0);

/// Polynomial in (px, py, pz) with 4x4 matrix coefficients.
class MomentumPolynomialOperator {
public:
    struct Monomial {
        int px = 0, py = 0, pz = 0;
    };
    struct Term {
        Monomial powers;
        ComplexMatrix coefficient;
    };

    MomentumPolynomialOperator() = default;
    /// Rejects negative powers (rational functions of p are not supported).
    explicit MomentumPolynomialOperator(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    ComplexMatrix evaluate(const Vec3& p) const;
    /// Exact partial derivative with respect to p_axis.
    MomentumPolynomialOperator derivative(int axis) const;

private:
    std::vector<Term> terms_;
};

class UnsupportedOperator : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// H(p) = c alpha.p + beta m c^2 as a polynomial operator.
MomentumPolynomialOperator free_hamiltonian_operator(double m, double c = 1.0);
ComplexMatrix free_hamiltonian(const Vec3& p, double m, double c = 1.0);

/// dH/dp_axis, the x-representation of -(i/hbar)[x_axis, H].
MomentumPolynomialOperator velocity_from_commutator(const MomentumPolynomialOperator& h, int axis);
ComplexMatrix velocity_from_commutator(const MomentumPolynomialOperator& h, int axis, const Vec3& p);

struct PlaneWaveSpinors {
    Spinor u1, u2, v1, v2;

    std::array<const Spinor*, 4> all() const { return {&u1, &u2, &v1, &v2}; }
};

enum class SpinorGauge {
    first_component,  // first nonzero component real positive
    rest_frame,       // the phi / chi block is real positive; smooth in p
};

/// Unit-normalized u (energy +E) and v (energy -E) spinors.
PlaneWaveSpinors plane_wave_spinors(const Vec3& p, double m, double c = 1.0,
                                    SpinorGauge gauge = SpinorGauge::first_component);

struct EnergyProjectors {
    ComplexMatrix positive;
    ComplexMatrix negative;
};

/// Lambda_+- = (I +- H/E)/2.
EnergyProjectors energy_projectors(const Vec3& p, double m, double c = 1.0);

/// ||Lambda_+ v||^2 for a normalized v.
double positive_energy_weight(const ComplexVector& v, const Vec3& p, double m, double c = 1.0);

/// Maximum entrywise violation of the Dirac algebra relations
/// {alpha_i, alpha_j} = 2 delta_ij, {alpha_i, beta} = 0, beta^2 = I.
double dirac_algebra_defect(const DiracBasis& basis = dirac_basis());

/// Build pi_x, pi_y on an n-level oscillator basis with [pi_x, pi_y] = i e hbar B.
struct KineticMomenta {
    ComplexMatrix pi_x;
    ComplexMatrix pi_y;
};
KineticMomenta landau_kinetic_momenta(double e_hbar_b, std::size_t levels);

class InsufficientTruncation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Compares (sigma.pi)^2 with pi^2 - e hbar sigma.B on the spin (x) oscillator
/// space. Only the first levels-1 oscillator levels are compared; the boundary
/// deviation is reported in `detail`.
CheckResult sigma_pi_squared_check(double b_field, std::size_t levels, double e = 1.0, double hbar = 1.0);

}  // namespace zitterlab
