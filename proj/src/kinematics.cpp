#include "zitterlab/kinematics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

namespace zitterlab {

namespace {

void require_axis(int axis) {
    if (axis < 0 || axis > 2) throw ContractViolation("axis must be 0 (x), 1 (y) or 2 (z)");
}

}  // namespace

std::array<Spinor, 2> velocity_eigen_family(int axis, int sign) {
    require_axis(axis);
    if (sign != 1 && sign != -1) throw ContractViolation("velocity_eigen_family: sign must be +1 or -1");
    const double s = sign;
    const double h = 1.0 / std::numbers::sqrt2;
    // (a, 0) and (0, b) members of the family; the -c family flips the lower block.
    switch (axis) {
        case 0:  // (a, b, b, a)
            return {Spinor{{h, 0.0, 0.0, s * h}}, Spinor{{0.0, h, s * h, 0.0}}};
        case 1:  // (a, b, -ib, ia)
            return {Spinor{{h, 0.0, 0.0, s * kI * h}}, Spinor{{0.0, h, -s * kI * h, 0.0}}};
        default:  // (a, b, a, -b)
            return {Spinor{{h, 0.0, s * h, 0.0}}, Spinor{{0.0, h, 0.0, -s * h}}};
    }
}

double family_residual(const ComplexVector& v, int axis, int sign) {
    const auto family = velocity_eigen_family(axis, sign);
    ComplexVector rest = v;
    for (const auto& f : family) {
        const auto fv = f.vector();
        const Complex coeff = inner(fv, v);
        for (std::size_t i = 0; i < 4; ++i) rest[i] -= coeff * fv[i];
    }
    return norm(rest);
}

std::vector<VelocityEigenPair> velocity_eigensystem(int axis, const Vec3& p, double m, double c) {
    require_axis(axis);
    const ComplexMatrix velocity = dirac_basis().alpha[axis] * Complex(c);
    const auto eig = hermitian_eigensystem(velocity);
    std::vector<VelocityEigenPair> out;
    for (std::size_t k = 0; k < 4; ++k) {
        const auto v = eig.eigenvector(k);
        const int sign = eig.eigenvalues[k] > 0.0 ? 1 : -1;
        out.push_back({eig.eigenvalues[k], Spinor::from_vector(v), positive_energy_weight(v, p, m, c),
                       family_residual(v, axis, sign)});
    }
    return out;
}

double expected_v_squared(double k, double m, double c) {
    if (!(k > 0.0)) throw DomainError("expected_v_squared: cutoff k must be positive");
    if (m == 0.0) return c * c;
    const double mc = m * c;
    // v^2 p^2 = c^2 p^4 / (m^2 c^2 + p^2); integrate in the scaled variable x = p/k.
    auto integrand = [&](double x) {
        const double p = k * x;
        const double p2 = p * p;
        return p2 * p2 / (mc * mc + p2);
    };
    double error = 0.0;
    const double numerator =
        boost::math::quadrature::gauss_kronrod<double, 15>::integrate(integrand, 0.0, 1.0, 30, 1e-14, &error);
    // int_0^1 p^2 d x with p = k x is k^2 / 3.
    return c * c * numerator / (k * k / 3.0);
}

double expected_v_squared_closed_form(double k, double m, double c) {
    if (!(k > 0.0)) throw DomainError("expected_v_squared: cutoff k must be positive");
    const double r = m * c / k;
    return c * c * (1.0 - 3.0 * r * r + 3.0 * r * r * r * std::atan(1.0 / r));
}

std::array<ComplexMatrix, 3> zb_velocity_term(double t, const Vec3& p, double m, double c, double hbar) {
    const double energy = dirac_energy(p, m, c);
    if (!(energy > 0.0)) throw ContractViolation("heisenberg_velocity: requires E(p) > 0");
    const auto h = free_hamiltonian(p, m, c);
    const ComplexMatrix h_inv = h * Complex(1.0 / (energy * energy));  // H^2 = E^2 I
    const ComplexMatrix phase = matrix_exponential(h, Complex(0.0, -2.0 * t / hbar));
    const auto& b = dirac_basis();
    std::array<ComplexMatrix, 3> out;
    for (int i = 0; i < 3; ++i)
        out[i] = (b.alpha[i] - h_inv * Complex(c * p[i])) * phase * Complex(c);
    return out;
}

std::array<ComplexMatrix, 3> heisenberg_velocity(double t, const Vec3& p, double m, double c, double hbar) {
    auto out = zb_velocity_term(t, p, m, c, hbar);
    const double energy = dirac_energy(p, m, c);
    const ComplexMatrix h_inv = free_hamiltonian(p, m, c) * Complex(1.0 / (energy * energy));
    for (int i = 0; i < 3; ++i) out[i] += h_inv * Complex(c * c * p[i]);
    return out;
}

ComplexMatrix zb_displacement_operator(double t, double m, double c, double hbar) {
    if (!(m > 0.0)) throw ContractViolation("zb_displacement_operator: requires m > 0 (electron at rest)");
    const auto& b = dirac_basis();
    const double rest = m * c * c;
    const ComplexMatrix h = b.beta * Complex(rest);
    const ComplexMatrix h_inv = b.beta * Complex(1.0 / rest);
    const ComplexMatrix phase = matrix_exponential(h, Complex(0.0, -2.0 * t / hbar));
    return h_inv * b.alpha[0] * phase * Complex(0.0, hbar * c / 2.0);
}

ComplexMatrix x_squared_operator(double t, double m, double c, double hbar) {
    const auto x = zb_displacement_operator(t, m, c, hbar);
    return x.adjoint() * x;
}

double x_squared_eigenvalue(double m, double c, double hbar) { return hbar * hbar / (4.0 * m * m * c * c); }

ComplexMatrix angular_velocity_operator(double phi, double r, double c) {
    if (!(r > 0.0)) throw DomainError("angular_velocity_operator: radius must be positive");
    const Complex em = std::polar(1.0, -phi);
    const Complex ep = std::polar(1.0, phi);
    ComplexMatrix m(4);
    m(0, 3) = -em;
    m(1, 2) = ep;
    m(2, 1) = -em;
    m(3, 0) = ep;
    return m * Complex(0.0, c / r);
}

std::array<Spinor, 4> angular_eigenfunctions(double phi) {
    const Complex em = std::polar(1.0, -phi / 2.0);
    const Complex ep = std::polar(1.0, phi / 2.0);
    const double h = 1.0 / std::numbers::sqrt2;
    return {Spinor{{kI * em * h, 0.0, 0.0, ep * h}}, Spinor{{0.0, ep * h, kI * em * h, 0.0}},
            Spinor{{em * h, 0.0, 0.0, kI * ep * h}}, Spinor{{0.0, kI * ep * h, em * h, 0.0}}};
}

std::vector<CheckResult> angular_eigenfunction_audit(double phi, double m, double c, double hbar) {
    const double r = hbar / (2.0 * m * c);
    const double omega = 2.0 * m * c * c / hbar;
    const ComplexMatrix op = angular_velocity_operator(phi, r, c);
    const auto functions = angular_eigenfunctions(phi);
    const ComplexMatrix& spin_z = dirac_basis().spin[2];
    const Vec3 rest{0.0, 0.0, 0.0};

    std::vector<CheckResult> out;
    for (std::size_t k = 0; k < functions.size(); ++k) {
        const auto v = functions[k].vector();
        const double eigenvalue = k < 2 ? -omega : omega;
        const auto image = op.apply(v);
        double residual = 0.0;
        for (std::size_t i = 0; i < 4; ++i) residual = std::max(residual, std::abs(image[i] - eigenvalue * v[i]));

        std::ostringstream name;
        name << "kinematics.angular_eigenfunction_" << k + 1;
        std::ostringstream detail;
        detail << "phi=" << phi << " eigenvalue=" << eigenvalue;
        out.push_back(make_check(name.str(),
                                 "angular velocity eigenfunctions: equal positive/negative energy "
                                 "proportions and even spin up/down balance",
                                 {residual / omega, positive_energy_weight(v, rest, m, c),
                                  std::real(expectation(spin_z, v))},
                                 {0.0, 0.5, 0.0}, 1e-12, detail.str()));
    }
    return out;
}

}  // namespace zitterlab
