#pragma once

// Spectral and time-domain analysis of the zitterbewegung operators.

#include "zitterlab/check.hpp"
#include "zitterlab/dirac.hpp"

#include <array>
#include <stdexcept>
#include <vector>

namespace zitterlab {

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct VelocityEigenPair {
    double eigenvalue;      // +-c
    Spinor eigenvector;
    double pos_weight;      // ||Lambda_+ v||^2
    double family_residual; // distance from the (a, b) eigenvector family of the same sign
};

/// Two-vector orthonormal basis of the eigenspace of alpha_axis with
/// eigenvalue sign (+1 or -1): the (a, b) parametrized family.
std::array<Spinor, 2> velocity_eigen_family(int axis, int sign);

/// ||v - P v|| for P the projector onto velocity_eigen_family(axis, sign).
double family_residual(const ComplexVector& v, int axis, int sign);

std::vector<VelocityEigenPair> velocity_eigensystem(int axis, const Vec3& p, double m, double c = 1.0);

/// <v^2>_k = int_0^k v^2 p^2 dp / int_0^k p^2 dp with v^2 = p^2 / (m^2 + p^2/c^2).
double expected_v_squared(double k, double m, double c = 1.0);
/// Closed form c^2 [1 - 3 (mc/k)^2 + 3 (mc/k)^3 atan(k/mc)].
double expected_v_squared_closed_form(double k, double m, double c = 1.0);

/// Heisenberg-picture velocity c[alpha - c p H^-1] e^{-2iHt/hbar} + c^2 p H^-1,
/// one matrix per Cartesian axis.
std::array<ComplexMatrix, 3> heisenberg_velocity(double t, const Vec3& p, double m, double c = 1.0,
                                                 double hbar = 1.0);

/// The oscillating part c[alpha - c p H^-1] e^{-2iHt/hbar} alone.
std::array<ComplexMatrix, 3> zb_velocity_term(double t, const Vec3& p, double m, double c = 1.0,
                                              double hbar = 1.0);

/// Transverse displacement x(t) = (i hbar / 2H) c alpha_x e^{-2iHt/hbar} for an
/// electron at rest (integration constant zero).
ComplexMatrix zb_displacement_operator(double t, double m, double c = 1.0, double hbar = 1.0);
/// x^dagger x built from zb_displacement_operator.
ComplexMatrix x_squared_operator(double t, double m, double c = 1.0, double hbar = 1.0);
/// hbar^2 / (4 m^2 c^2)
double x_squared_eigenvalue(double m, double c = 1.0, double hbar = 1.0);

/// The in-plane angular velocity operator (i/hbar)[H, phi] at polar angle phi
/// and radius r. Hermitian, traceless, eigenvalues +-c/r.
ComplexMatrix angular_velocity_operator(double phi, double r, double c = 1.0);

/// The four closed-form eigenfunctions of the angular velocity operator
/// (normalized), ordered: two with eigenvalue -c/r, then two with +c/r.
std::array<Spinor, 4> angular_eigenfunctions(double phi);

/// Eigenpair membership, positive-energy weight 1/2 and spin balance
/// <Sigma_z> = 0 for each closed-form eigenfunction, at r = hbar/2mc.
std::vector<CheckResult> angular_eigenfunction_audit(double phi, double m = 1.0, double c = 1.0,
                                                     double hbar = 1.0);

}  // namespace zitterlab
