#include "zitterlab/dirac.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace zitterlab {

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

namespace {

ComplexMatrix block(const ComplexMatrix& tl, const ComplexMatrix& tr, const ComplexMatrix& bl,
                    const ComplexMatrix& br) {
    ComplexMatrix m(4);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            m(i, j) = tl(i, j);
            m(i, j + 2) = tr(i, j);
            m(i + 2, j) = bl(i, j);
            m(i + 2, j + 2) = br(i, j);
        }
    return m;
}

DiracBasis build_basis() {
    DiracBasis b;
    b.sigma[0] = ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}};
    b.sigma[1] = ComplexMatrix{{0.0, -kI}, {kI, 0.0}};
    b.sigma[2] = ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}};
    const auto zero2 = ComplexMatrix::zero(2);
    const auto id2 = ComplexMatrix::identity(2);
    for (int i = 0; i < 3; ++i) {
        b.alpha[i] = block(zero2, b.sigma[i], b.sigma[i], zero2);
        b.spin[i] = block(b.sigma[i], zero2, zero2, b.sigma[i]);
    }
    b.beta = block(id2, zero2, zero2, -id2);
    return b;
}

// Multiply so that the first component with modulus above `floor` is real positive.
void fix_phase(std::array<Complex, 4>& c, double floor) {
    for (const auto& z : c) {
        if (std::abs(z) > floor) {
            const Complex phase = std::conj(z) / std::abs(z);
            for (auto& w : c) w *= phase;
            return;
        }
    }
}

}  // namespace

const DiracBasis& dirac_basis() {
    static const DiracBasis basis = build_basis();
    return basis;
}

Spinor Spinor::from_vector(const ComplexVector& v, std::optional<SpinorLabel> label) {
    if (v.size() != 4) throw ContractViolation("Spinor: expected 4 components");
    Spinor s;
    std::copy(v.begin(), v.end(), s.components.begin());
    s.label = label;
    return s;
}

double Spinor::norm() const {
    double acc = 0.0;
    for (const auto& z : components) acc += std::norm(z);
    return std::sqrt(acc);
}

Spinor Spinor::normalized() const {
    const double n = norm();
    if (n == 0.0) throw ContractViolation("Spinor: cannot normalize the zero spinor");
    Spinor s = *this;
    for (auto& z : s.components) z /= n;
    return s;
}

double dirac_energy(const Vec3& p, double m, double c) {
    return std::sqrt(m * m * c * c * c * c + dot(p, p) * c * c);
}

MomentumPolynomialOperator::MomentumPolynomialOperator(std::vector<Term> terms) : terms_(std::move(terms)) {
    for (const auto& t : terms_) {
        if (t.powers.px < 0 || t.powers.py < 0 || t.powers.pz < 0)
            throw UnsupportedOperator("momentum operator has a negative power; only polynomials in p are supported");
        if (t.coefficient.dim() != 4) throw ContractViolation("momentum operator coefficients must be 4x4");
    }
}

ComplexMatrix MomentumPolynomialOperator::evaluate(const Vec3& p) const {
    ComplexMatrix out(4);
    for (const auto& t : terms_) {
        const double w = std::pow(p[0], t.powers.px) * std::pow(p[1], t.powers.py) * std::pow(p[2], t.powers.pz);
        out += t.coefficient * Complex(w);
    }
    return out;
}

MomentumPolynomialOperator MomentumPolynomialOperator::derivative(int axis) const {
    if (axis < 0 || axis > 2) throw ContractViolation("derivative: axis must be 0, 1 or 2");
    std::vector<Term> out;
    for (const auto& t : terms_) {
        Monomial mono = t.powers;
        int& power = axis == 0 ? mono.px : axis == 1 ? mono.py : mono.pz;
        if (power == 0) continue;
        const double factor = power;
        --power;
        out.push_back({mono, t.coefficient * Complex(factor)});
    }
    return MomentumPolynomialOperator(std::move(out));
}

MomentumPolynomialOperator free_hamiltonian_operator(double m, double c) {
    if (m < 0.0) throw ContractViolation("free_hamiltonian: mass must be non-negative");
    const auto& b = dirac_basis();
    return MomentumPolynomialOperator({
        {{1, 0, 0}, b.alpha[0] * Complex(c)},
        {{0, 1, 0}, b.alpha[1] * Complex(c)},
        {{0, 0, 1}, b.alpha[2] * Complex(c)},
        {{0, 0, 0}, b.beta * Complex(m * c * c)},
    });
}

ComplexMatrix free_hamiltonian(const Vec3& p, double m, double c) {
    if (m < 0.0) throw ContractViolation("free_hamiltonian: mass must be non-negative");
    const auto& b = dirac_basis();
    ComplexMatrix h = b.beta * Complex(m * c * c);
    for (int i = 0; i < 3; ++i) h += b.alpha[i] * Complex(c * p[i]);
    return h;
}

MomentumPolynomialOperator velocity_from_commutator(const MomentumPolynomialOperator& h, int axis) {
    return h.derivative(axis);
}

ComplexMatrix velocity_from_commutator(const MomentumPolynomialOperator& h, int axis, const Vec3& p) {
    return h.derivative(axis).evaluate(p);
}

PlaneWaveSpinors plane_wave_spinors(const Vec3& p, double m, double c, SpinorGauge gauge) {
    const double energy = dirac_energy(p, m, c);
    if (!(energy > 0.0)) throw ContractViolation("plane_wave_spinors: requires E(p) > 0");
    const double rest = m * c * c;
    const double n = std::sqrt((energy + rest) / (2.0 * energy));
    const double k = c / (energy + rest);

    // c sigma.p / (E + mc^2) as a 2x2 block
    const Complex s00 = k * p[2];
    const Complex s01 = k * Complex(p[0], -p[1]);
    const Complex s10 = k * Complex(p[0], p[1]);
    const Complex s11 = -k * p[2];

    const double floor = 1e-14;
    auto make = [&](std::array<Complex, 4> comps, SpinorLabel label) {
        for (auto& z : comps) z *= n;
        if (gauge == SpinorGauge::first_component) fix_phase(comps, floor);
        Spinor s;
        s.components = comps;
        s.label = label;
        return s;
    };

    PlaneWaveSpinors out;
    out.u1 = make({1.0, 0.0, s00, s10}, {EnergySign::positive, SpinLabel::up});
    out.u2 = make({0.0, 1.0, s01, s11}, {EnergySign::positive, SpinLabel::down});
    out.v1 = make({-s00, -s10, 1.0, 0.0}, {EnergySign::negative, SpinLabel::up});
    out.v2 = make({-s01, -s11, 0.0, 1.0}, {EnergySign::negative, SpinLabel::down});
    return out;
}

EnergyProjectors energy_projectors(const Vec3& p, double m, double c) {
    const double energy = dirac_energy(p, m, c);
    if (!(energy > 0.0)) throw ContractViolation("energy_projectors: requires E(p) > 0");
    const auto h_over_e = free_hamiltonian(p, m, c) * Complex(1.0 / energy);
    const auto id = ComplexMatrix::identity(4);
    return {(id + h_over_e) * Complex(0.5), (id - h_over_e) * Complex(0.5)};
}

double positive_energy_weight(const ComplexVector& v, const Vec3& p, double m, double c) {
    const auto proj = energy_projectors(p, m, c);
    const auto pv = proj.positive.apply(v);
    return std::real(inner(pv, pv));
}

double dirac_algebra_defect(const DiracBasis& basis) {
    const auto id = ComplexMatrix::identity(4);
    double worst = max_abs_diff(basis.beta * basis.beta, id);
    for (int i = 0; i < 3; ++i) {
        worst = std::max(worst, anticommutator(basis.alpha[i], basis.beta).max_abs());
        for (int j = 0; j < 3; ++j) {
            const auto expected = i == j ? id * Complex(2.0) : ComplexMatrix::zero(4);
            worst = std::max(worst, max_abs_diff(anticommutator(basis.alpha[i], basis.alpha[j]), expected));
        }
    }
    return worst;
}

KineticMomenta landau_kinetic_momenta(double e_hbar_b, std::size_t levels) {
    ComplexMatrix a(levels);  // annihilation: a|n> = sqrt(n)|n-1>
    for (std::size_t n = 1; n < levels; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    const ComplexMatrix ad = a.adjoint();
    const double scale = std::sqrt(std::abs(e_hbar_b) / 2.0);
    const double sign = e_hbar_b < 0.0 ? -1.0 : 1.0;
    // pi_x = s (a + a^dagger), pi_y = -i sgn s (a - a^dagger): [pi_x, pi_y] = i e hbar B
    return {(a + ad) * Complex(scale), (a - ad) * (-kI * sign * scale)};
}

CheckResult sigma_pi_squared_check(double b_field, std::size_t levels, double e, double hbar) {
    if (levels < 4) throw InsufficientTruncation("sigma_pi_squared_check: needs at least 4 oscillator levels");
    const auto& basis = dirac_basis();
    const double ehb = e * hbar * b_field;
    const auto [pi_x, pi_y] = landau_kinetic_momenta(ehb, levels);
    const auto id_n = ComplexMatrix::identity(levels);

    const ComplexMatrix sigma_pi = kron(basis.sigma[0], pi_x) + kron(basis.sigma[1], pi_y);
    const ComplexMatrix lhs = sigma_pi * sigma_pi;
    const ComplexMatrix pi_sq = pi_x * pi_x + pi_y * pi_y;
    const ComplexMatrix rhs = kron(ComplexMatrix::identity(2), pi_sq) - kron(basis.sigma[2], id_n) * Complex(ehb);

    double interior = 0.0, boundary = 0.0, scale = 0.0;
    const std::size_t dim = lhs.dim();
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            const double d = std::abs(lhs(i, j) - rhs(i, j));
            const bool edge = i % levels == levels - 1 || j % levels == levels - 1;
            if (edge) {
                boundary = std::max(boundary, d);
            } else {
                interior = std::max(interior, d);
                scale = std::max(scale, std::abs(rhs(i, j)));
            }
        }
    }
    std::ostringstream detail;
    detail << "levels=" << levels << " B=" << b_field << " boundary_deviation=" << boundary << " (excluded)";
    return make_check("dirac.sigma_pi_squared", "(sigma.pi)^2 = pi^2 - e hbar sigma.B", {interior}, {0.0},
                      1e-10 * std::max(1.0, scale), detail.str());
}

}  // namespace zitterlab
