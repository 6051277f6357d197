#include "zitterlab/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace zitterlab {

namespace {

constexpr std::size_t kPositive[2] = {0, 1};
constexpr std::size_t kNegative[2] = {2, 3};

// c alpha.pi with pi as c-numbers.
ComplexMatrix interaction(const PhysicalConstants& k, const Vec3& pi) {
    const auto& basis = dirac_basis();
    ComplexMatrix h(4);
    for (int i = 0; i < 3; ++i) h += basis.alpha[i] * Complex(k.c * pi[i]);
    return h;
}

ComplexMatrix doublet_block(const ComplexMatrix& m, const std::size_t (&rows)[2]) {
    ComplexMatrix out(2);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) out(a, b) = m(rows[a], rows[b]);
    return out;
}

// Field unit m^2 c^2 / (e hbar): natural step sizes are quoted in it.
double field_unit(const PhysicalConstants& k) { return k.m_e * k.m_e * k.c * k.c / (k.e * k.hbar); }

// Energy from the 3x3 tensor C_ij = sum_beta (alpha_i)_{s beta} (alpha_j)_{beta s}:
// (1/2m) [sum_ij S_ij {pi_i,pi_j}/2 + sum_ij A_ij [pi_i,pi_j]/2] with
// [pi_x, pi_y] = i e hbar B and S = identity.
double energy_from_tensor(const std::array<std::array<Complex, 3>, 3>& c_ij, const FieldConfig& config,
                          double pi_sq) {
    const auto& k = config.constants;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const Complex sym = 0.5 * (c_ij[i][j] + c_ij[j][i]);
            if (std::abs(sym - (i == j ? 1.0 : 0.0)) > 1e-14)
                throw std::logic_error("second_order_energy: symmetric part of the coupling tensor is not the identity");
        }
    const Complex anti_xy = 0.5 * (c_ij[0][1] - c_ij[1][0]);
    // A_xy [pi_x,pi_y]/2 + A_yx [pi_y,pi_x]/2 = A_xy i e hbar B
    const Complex term = pi_sq + anti_xy * kI * (k.e * k.hbar * config.B);
    return std::real(term) / (2.0 * k.m_e);
}

}  // namespace

ComplexMatrix first_order_matrix(const FieldConfig& config, const Vec3& pi) {
    return doublet_block(interaction(config.constants, pi), kPositive);
}

ComplexMatrix first_order_matrix_negative(const FieldConfig& config, const Vec3& pi) {
    return doublet_block(interaction(config.constants, pi), kNegative);
}

ComplexMatrix third_order_matrix(const FieldConfig& config, const Vec3& pi) {
    const auto& k = config.constants;
    const ComplexMatrix v = interaction(k, pi);
    const double gap = 2.0 * k.rest_energy();  // E0 - E_k for every negative-energy k
    ComplexMatrix out(2);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
            Complex chain = 0.0, renorm = 0.0;
            for (auto kk : kNegative)
                for (auto ll : kNegative)
                    chain += v(kPositive[a], kk) * v(kk, ll) * v(ll, kPositive[b]) / (gap * gap);
            for (auto g : kPositive)
                for (auto kk : kNegative) {
                    renorm += v(kPositive[a], kk) * v(kk, g) * v(g, kPositive[b]) / (gap * gap);
                    renorm += v(kPositive[a], g) * v(g, kk) * v(kk, kPositive[b]) / (gap * gap);
                }
            out(a, b) = chain - 0.5 * renorm;
        }
    return out;
}

SecondOrderEnergy second_order_energy(const FieldConfig& config, double pi_sq, SpinAlignment spin) {
    const auto& basis = dirac_basis();
    const std::size_t s = spin == SpinAlignment::aligned ? 0 : 1;
    std::array<std::array<Complex, 3>, 3> negative{}, positive{}, full{};
    double positive_residual = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            for (auto beta : kNegative) negative[i][j] += basis.alpha[i](s, beta) * basis.alpha[j](beta, s);
            for (auto beta : kPositive) positive[i][j] += basis.alpha[i](s, beta) * basis.alpha[j](beta, s);
            full[i][j] = negative[i][j] + positive[i][j];
            positive_residual = std::max(positive_residual, std::abs(positive[i][j]));
        }
    const double neg = energy_from_tensor(negative, config, pi_sq);
    const double all = energy_from_tensor(full, config, pi_sq);
    return {neg, neg, all, positive_residual};
}

double second_order_energy_shifted(const FieldConfig& config, double pi_sq, double delta_b) {
    FieldConfig shifted = config;
    shifted.B = config.B + delta_b;
    return second_order_energy(shifted, pi_sq).energy;
}

MomentEstimate magnetic_moment(const std::function<double(double)>& energy_fn, double h, double rel_tol) {
    if (!(h > 0.0)) throw std::invalid_argument("magnetic_moment: step must be positive");
    MomentEstimate out{};
    for (int level = 0; level < 4; ++level) {
        const double b = h / static_cast<double>(1 << level);
        const double d = -(energy_fn(1.5 * b) - energy_fn(0.5 * b)) / b;
        if (!std::isfinite(d)) throw DerivativeInstability("magnetic_moment: energy function is not finite near B = 0+");
        out.estimates.push_back(d);
    }
    const auto& e = out.estimates;
    // Error expansion D(B) = D0 + a B + b B^2 + ...
    auto extrapolate = [](double d1, double d2, double d4) {
        const double r1 = 2.0 * d2 - d1;
        const double r2 = 2.0 * d4 - d2;
        return (4.0 * r2 - r1) / 3.0;
    };
    const double coarse = extrapolate(e[0], e[1], e[2]);
    const double fine = extrapolate(e[1], e[2], e[3]);
    out.value = coarse;
    out.spread = std::abs(coarse - fine);
    if (out.spread > rel_tol * std::max(std::abs(coarse), std::abs(fine))) {
        std::ostringstream msg;
        msg << "magnetic_moment: derivative estimates do not converge as B -> 0 (extrapolations " << coarse
            << " vs " << fine << ")";
        throw DerivativeInstability(msg.str());
    }
    return out;
}

ZBField zb_delta_b(const PhysicalConstants& k) {
    const double pi = std::numbers::pi;
    ZBField f{};
    f.radius = k.hbar / (k.m_e * k.c);
    f.current = k.e * k.c / (2.0 * pi * f.radius);
    f.delta_b = f.current / (2.0 * pi * k.epsilon0 * k.c * k.c * f.radius);
    f.closed_form = k.e * k.m_e * k.m_e * k.c / (4.0 * pi * pi * k.epsilon0 * k.hbar * k.hbar);
    return f;
}

double fourth_order_energy(const FieldConfig& config, double pi_sq, double delta_b) {
    const auto& k = config.constants;
    const double m = k.m_e;
    const double field = config.B + delta_b;
    const double mu = k.e * k.hbar / (2.0 * m);
    const double kinetic = pi_sq / (2.0 * m);
    const double bracket = pi_sq * pi_sq / (4.0 * m * m) - 2.0 * kinetic * mu * field + mu * mu * field * field;
    return -bracket / (2.0 * k.rest_energy());
}

SchwingerCorrection schwinger_correction(const PhysicalConstants& k) {
    const double delta_b = zb_delta_b(k).delta_b;
    const double m = k.m_e;
    SchwingerCorrection out{};
    out.via_delta_b = k.e * k.e * k.hbar * k.hbar / (4.0 * m * m * m * k.c * k.c) * delta_b;
    out.closed_form = k.bohr_magneton() * k.fine_structure() / (2.0 * std::numbers::pi);
    out.ratio = out.via_delta_b / k.bohr_magneton();

    FieldConfig config{0.0, k};
    const auto eps4 = [&](double b) {
        config.B = b;
        return fourth_order_energy(config, 0.0, delta_b);
    };
    out.numeric = magnetic_moment(eps4, 1e-3 * field_unit(k)).value;
    return out;
}

double g_factor(double alpha) { return 2.0 * (1.0 + alpha / (2.0 * std::numbers::pi)); }

SelfEnergy zb_self_energy(const PhysicalConstants& k) {
    const double r = k.hbar / (k.m_e * k.c);
    SelfEnergy s{};
    s.energy = k.e * k.e / (4.0 * std::numbers::pi * k.epsilon0 * r);
    s.ratio_to_rest_energy = s.energy / k.rest_energy();
    s.augmented_rest_energy = k.rest_energy() + s.energy;
    return s;
}

PerturbationLedger build_ledger(const FieldConfig& config, double pi_sq) {
    const auto& k = config.constants;
    PerturbationLedger l{};
    l.epsilon1 = first_order_matrix(config).max_abs();
    l.epsilon2 = second_order_energy(config, pi_sq).energy;
    l.epsilon3 = third_order_matrix(config).max_abs();
    l.delta_b = zb_delta_b(k).delta_b;
    l.epsilon4 = fourth_order_energy(config, pi_sq, l.delta_b);

    FieldConfig probe = config;
    const auto eps2 = [&](double b) {
        probe.B = b;
        return second_order_energy(probe, pi_sq).energy;
    };
    l.moment = magnetic_moment(eps2, 1e-3 * field_unit(k)).value;
    l.delta_moment = schwinger_correction(k).via_delta_b;
    l.g = 2.0 * (l.moment + l.delta_moment) / k.bohr_magneton();
    l.self_energy = zb_self_energy(k).energy;
    return l;
}

ComplexMatrix dirac_landau_hamiltonian(double b_field, std::size_t levels, const PhysicalConstants& k) {
    if (levels < 2) throw RegimeError("dirac_landau_hamiltonian: needs at least 2 Landau levels");
    const double ehb = k.e * k.hbar * b_field;
    if (!(ehb > 0.0)) throw RegimeError("dirac_landau_hamiltonian: requires e hbar B > 0");
    const std::size_t n_up = levels, n_down = levels - 1;
    const std::size_t half = n_up + n_down;
    const double coupling = k.c * std::sqrt(2.0 * ehb);
    const double rest = k.rest_energy();

    ComplexMatrix h(2 * half);
    for (std::size_t i = 0; i < half; ++i) {
        h(i, i) = rest;
        h(half + i, half + i) = -rest;
    }
    // c sigma.pi: up level n <-> down level n-1 with amplitude c sqrt(2 e hbar B n).
    auto set_coupling = [&](std::size_t upper, std::size_t lower, double value) {
        h(upper, half + lower) = value;
        h(half + lower, upper) = value;
    };
    for (std::size_t n = 1; n < n_up; ++n) {
        const double value = coupling * std::sqrt(static_cast<double>(n));
        const std::size_t up = n, down = n_up + (n - 1);
        set_coupling(up, down, value);  // upper up  <-> lower down
        set_coupling(down, up, value);  // upper down <-> lower up
    }
    return h;
}

double landau_level(double b_field, std::size_t n, const PhysicalConstants& k) {
    const double rest = k.rest_energy();
    return std::sqrt(rest * rest + 2.0 * k.c * k.c * k.e * k.hbar * b_field * static_cast<double>(n));
}

LandauSpectrum landau_spectrum(double b_field, std::size_t levels, const PhysicalConstants& k) {
    LandauSpectrum s{};
    s.eigenvalues = hermitian_eigenvalues(dirac_landau_hamiltonian(b_field, levels, k));
    for (double e : s.eigenvalues)
        if (e > 0.0) s.positive.push_back(e);

    std::vector<double> expected{landau_level(b_field, 0, k)};
    for (std::size_t n = 1; n < levels; ++n) {
        expected.push_back(landau_level(b_field, n, k));
        expected.push_back(landau_level(b_field, n, k));
    }
    const std::size_t interior = std::min(levels, s.positive.size());
    for (std::size_t i = 0; i < interior; ++i)
        s.closed_form_deviation = std::max(s.closed_form_deviation, std::abs(s.positive[i] - expected[i]));
    const std::size_t n = s.eigenvalues.size();
    for (std::size_t i = 0; i < n; ++i)
        s.symmetry_defect = std::max(s.symmetry_defect, std::abs(s.eigenvalues[i] + s.eigenvalues[n - 1 - i]));
    return s;
}

double landau_split_g(double b_field, std::size_t levels, const PhysicalConstants& k) {
    const auto s = landau_spectrum(b_field, levels, k);
    return (s.positive.at(1) - s.positive.at(0)) / (k.bohr_magneton() * b_field);
}

namespace {

void require_landau_regime(double b_field, std::size_t levels, const PhysicalConstants& k) {
    const double reduced = k.e * k.hbar * b_field / (k.m_e * k.m_e * k.c * k.c);
    if (!(reduced > 0.0) || reduced > 0.05) {
        std::ostringstream msg;
        msg << "Dirac-Landau cross-check: e hbar B / m^2 c^2 = " << reduced << " outside (0, 0.05]";
        throw RegimeError(msg.str());
    }
    if (levels < 32) throw RegimeError("Dirac-Landau cross-check: needs at least 32 Landau levels");
}

}  // namespace

CheckResult dirac_landau_crosscheck(double b_field, std::size_t levels, const PhysicalConstants& k) {
    require_landau_regime(b_field, levels, k);
    const double g1 = landau_split_g(b_field, levels, k);
    const double g2 = landau_split_g(b_field / 2.0, levels, k);
    const double g4 = landau_split_g(b_field / 4.0, levels, k);
    const double fitted = (8.0 * g4 - 6.0 * g2 + g1) / 3.0;

    const auto coarse = landau_spectrum(b_field, levels, k);
    const auto fine = landau_spectrum(b_field, 2 * levels, k);
    double truncation_gap = 0.0;
    for (std::size_t i = 0; i < levels; ++i)
        truncation_gap = std::max(truncation_gap, std::abs(coarse.positive[i] - fine.positive[i]));

    std::ostringstream detail;
    detail.precision(17);
    detail << "B=" << b_field << " N=" << levels << " split=" << coarse.positive[1] - coarse.positive[0]
           << " g(B)=" << g1 << " closed_form_deviation=" << coarse.closed_form_deviation
           << " truncation_gap(N vs 2N)=" << truncation_gap << " symmetry_defect=" << coarse.symmetry_defect;
    return make_check("perturbation.landau_g_factor",
                      "magnetic moment agrees with the Pauli-equation value (g = 2)", {fitted}, {2.0}, 1e-6,
                      detail.str());
}

CheckResult landau_closed_form_check(double b_field, std::size_t levels, const PhysicalConstants& k) {
    require_landau_regime(b_field, levels, k);
    const auto s = landau_spectrum(b_field, levels, k);
    std::ostringstream detail;
    detail << "B=" << b_field << " N=" << levels << " compared " << levels << " lowest positive levels";
    return make_check("perturbation.landau_closed_form",
                      "relativistic Landau levels sqrt(m^2c^4 + 2c^2 e hbar B n)",
                      {s.closed_form_deviation, s.symmetry_defect}, {0.0, 0.0}, 1e-9, detail.str());
}

}  // namespace zitterlab
