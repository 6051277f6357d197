// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.
// Usage: acceptance <scratch-dir>

#include "zitterlab/fock.hpp"
#include "zitterlab/kinematics.hpp"
#include "zitterlab/perturbation.hpp"
#include "zitterlab/report.hpp"
#include "zitterlab/wavepacket.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

using namespace zitterlab;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

Verdict dirac_algebra() {
    const auto& b = dirac_basis();
    const auto id = ComplexMatrix::identity(4);
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j)
            worst = std::max(worst, max_abs_diff(anticommutator(b.alpha[i], b.alpha[j]),
                                                 i == j ? id * Complex(2.0) : ComplexMatrix::zero(4)));
        worst = std::max(worst, anticommutator(b.alpha[i], b.beta).max_abs());
    }
    worst = std::max(worst, max_abs_diff(b.beta * b.beta, id));
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (int trial = 0; trial < 100; ++trial) {
        const Vec3 p{dist(rng), dist(rng), dist(rng)};
        const double m = std::abs(dist(rng));
        const auto h = free_hamiltonian(p, m);
        const double e2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + m * m;
        worst = std::max(worst, max_abs_diff(h * h, id * Complex(e2)));
    }
    return {worst <= 1e-12, "max entrywise deviation " + fmt(worst) + " over 100 momenta"};
}

Verdict velocity_spectrum() {
    double eig_dev = 0.0, weight_dev = 0.0;
    for (double c : {1.0, 2.5})
        for (int axis = 0; axis < 3; ++axis)
            for (const auto& pair : velocity_eigensystem(axis, {0.0, 0.0, 0.0}, 1.0, c)) {
                eig_dev = std::max(eig_dev, std::abs(std::abs(pair.eigenvalue) - c));
                weight_dev = std::max(weight_dev, std::abs(pair.pos_weight - 0.5));
            }
    return {eig_dev <= 1e-12 && weight_dev <= 1e-12,
            "|eig| - c " + fmt(eig_dev) + ", pos_weight - 0.5 " + fmt(weight_dev)};
}

Verdict v_squared_limit() {
    double rel = 0.0;
    bool bounded = true;
    for (double k : {1.0, 10.0, 100.0}) {
        const double q = expected_v_squared(k, 1.0);
        rel = std::max(rel, std::abs(q - expected_v_squared_closed_form(k, 1.0)) / q);
        bounded = bounded && std::abs(q - 1.0) <= 3.0 / (k * k);
    }
    return {rel <= 1e-10 && bounded, "closed-form relative deviation " + fmt(rel) +
                                         (bounded ? ", inside 3(mc/k)^2" : ", outside 3(mc/k)^2")};
}

Verdict zb_simulation() {
    GaussianPacketParams mix;
    mix.sigma_p = 0.01;
    mix.negative_fraction = 0.5;
    const auto sig = extract_zb_signature(simulate(gaussian_packet(mix)));
    const double f_err = std::abs(sig.frequency - 2.0) / 2.0;
    const double a_err = std::abs(sig.amplitude - 0.5) / 0.5;

    GaussianPacketParams pure = mix;
    pure.negative_fraction = 0.0;
    pure.center = {0.3, 0.0, 0.0};
    const double flat = extract_zb_signature(simulate(gaussian_packet(pure))).amplitude;

    const double si = convert(2.0, QuantityKind::angular_frequency, UnitSystem::natural_electron(), UnitSystem::si());
    const bool si_ok = std::abs(si / 1e21 - 1.55) < 0.005;
    return {f_err <= 0.01 && a_err <= 0.05 && flat <= 1e-6 * 0.5 && si_ok,
            "frequency error " + fmt(f_err) + ", amplitude error " + fmt(a_err) + ", pure amplitude " + fmt(flat) +
                ", SI " + fmt(si) + " rad/s"};
}

Verdict fock_currents() {
    double herm = 0.0, charge = 0.0, ladder_dev = 0.0, amp_dev = 0.0;
    for (double p : {0.0, 0.75, 2.0}) {
        const auto space = build_fock_space(p, 1.0);
        const auto h = free_fock_hamiltonian(space);
        const auto q = charge_operator(space);
        const double e = space.energy();
        for (const auto& z : {zb_transverse_current(space, 0.3), zb_longitudinal_current(space, 0.3)}) {
            herm = std::max(herm, z.op.hermiticity_defect());
            charge = std::max(charge, commutator(q, z.op).max_abs());
            ladder_dev = std::max(ladder_dev, max_abs_diff(commutator(h, z.raising), z.raising * Complex(2.0 * e)));
            ladder_dev = std::max(ladder_dev, max_abs_diff(commutator(h, z.lowering), z.lowering * Complex(-2.0 * e)));
        }
        amp_dev = std::max(amp_dev, std::abs(zb_longitudinal_current(space, 0.0).amplitude - 1.0 / e));
    }
    return {herm <= 1e-12 && charge <= 1e-12 && ladder_dev <= 1e-10 && amp_dev <= 1e-12,
            "hermiticity " + fmt(herm) + ", [Q,Z] " + fmt(charge) + ", [H,Z+-] " + fmt(ladder_dev) +
                ", mc^2/E amplitude " + fmt(amp_dev)};
}

Verdict perturbation_ladder() {
    const auto k = PhysicalConstants::natural();
    bool eps1_zero = true;
    for (double b : {0.0, 0.01, 1.0})
        eps1_zero = eps1_zero && first_order_matrix(FieldConfig{b, k}, {0.3, -0.2, 0.5}).max_abs() == 0.0;

    FieldConfig probe{0.0, k};
    const auto moment = magnetic_moment([&](double b) {
                            probe.B = b;
                            return second_order_energy(probe, 0.0).energy;
                        }).value;
    const double moment_rel = std::abs(moment - 0.5) / 0.5;

    const auto schwinger = schwinger_correction(k);
    const double a2pi = k.alpha / (2.0 * std::numbers::pi);
    const double ratio_dev = std::abs(schwinger.via_delta_b / k.bohr_magneton() - a2pi);

    const double g_dev = std::abs(g_factor(PhysicalConstants::codata2018().alpha) - 2.00232282);
    return {eps1_zero && moment_rel <= 1e-10 && ratio_dev <= 1e-12 && g_dev <= 1e-8,
            std::string(eps1_zero ? "eps1 = 0" : "eps1 != 0") + ", moment rel " + fmt(moment_rel) +
                ", delta_m/m - alpha/2pi " + fmt(ratio_dev) + ", g - 2.00232282 " + fmt(g_dev)};
}

Verdict landau_crosscheck() {
    const auto fit = dirac_landau_crosscheck(0.01, 64);
    const auto closed = landau_closed_form_check(0.01, 64);
    const double g_dev = std::abs(fit.measured[0] - 2.0);
    return {g_dev <= 1e-6 && closed.measured[0] <= 1e-9,
            "N=64 extrapolated g - 2 " + fmt(g_dev) + ", closed-form deviation " + fmt(closed.measured[0])};
}

Verdict angular_operator() {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(-std::numbers::pi, std::numbers::pi);
    const double r = 0.5;
    double spec_dev = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto ev = hermitian_eigenvalues(angular_velocity_operator(dist(rng), r));
        const double expected[] = {-1.0 / r, -1.0 / r, 1.0 / r, 1.0 / r};
        for (int i = 0; i < 4; ++i) spec_dev = std::max(spec_dev, std::abs(ev[i] - expected[i]));
    }
    double weight_dev = 0.0, spin_dev = 0.0;
    bool all = true;
    for (double phi : {0.0, 1.1, -2.4})
        for (const auto& c : angular_eigenfunction_audit(phi)) {
            all = all && c.passed;
            weight_dev = std::max(weight_dev, std::abs(c.measured[1] - 0.5));
            spin_dev = std::max(spin_dev, std::abs(c.measured[2]));
        }
    return {all && spec_dev <= 1e-12 && weight_dev <= 1e-12 && spin_dev <= 1e-12,
            "spectrum +-c/r deviation " + fmt(spec_dev) + ", pos_weight " + fmt(weight_dev) + ", <Sigma_z> " +
                fmt(spin_dev)};
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Verdict determinism(const fs::path& scratch) {
    auto run_all = [](const fs::path& dir) {
        fs::remove_all(dir);
        RunConfig config;
        config.out_dir = dir;
        cmd_verify(config);
        cmd_simulate(config);
        cmd_perturb(config);
        for (const char* selector : {"alpha_x", "phidot", "hamiltonian"}) {
            config.selector = selector;
            cmd_spectrum(config);
        }
    };
    const auto a = scratch / "run_a", b = scratch / "run_b";
    run_all(a);
    run_all(b);
    std::size_t files = 0, differing = 0;
    for (const auto& entry : fs::directory_iterator(a)) {
        ++files;
        const auto other = b / entry.path().filename();
        if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) ++differing;
    }
    return {files >= 8 && differing == 0, std::to_string(files) + " files, " + std::to_string(differing) + " differ"};
}

}  // namespace

int main(int argc, char** argv) {
    const fs::path scratch = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "zitterlab_acceptance";
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"Dirac algebra and H^2 = E^2 I", dirac_algebra},
        {"velocity spectrum +-c with equal energy weights", velocity_spectrum},
        {"<v^2>_k closed form and c^2 limit", v_squared_limit},
        {"wave-packet ZB frequency and amplitude", zb_simulation},
        {"Fock ZB currents", fock_currents},
        {"perturbation ladder and g factor", perturbation_ladder},
        {"Dirac-Landau cross-check", landau_crosscheck},
        {"angular velocity operator", angular_operator},
        {"report determinism", [&] { return determinism(scratch); }},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failures += v.pass ? 0 : 1;
        std::printf("%s criterion %zu: %s (%s)\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    v.detail.c_str());
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
