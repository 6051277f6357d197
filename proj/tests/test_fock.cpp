#include <doctest.h>

#include "zitterlab/fock.hpp"

#include <cmath>
#include <numbers>
#include <set>

using namespace zitterlab;

namespace {

ComplexVector vacuum(const FockSpace& space) {
    ComplexVector v(space.dim());
    v[0] = 1.0;
    return v;
}

}  // namespace

TEST_CASE("Fock space layout") {
    for (double p : {0.0, 0.5, 3.0}) CHECK(build_fock_space(p, 1.0).dim() == 256);
    const auto space = build_fock_space(0.75, 1.0);
    CHECK(space.mode_count() == 8);
    CHECK(space.index_of(1, Species::electron, 1) == 0);
    CHECK(space.index_of(-1, Species::electron, 2) == 3);
    CHECK(space.index_of(1, Species::positron, 2) == 5);
    CHECK(space.index_of(-1, Species::positron, 2) == 7);
    CHECK(space.energy() == doctest::Approx(1.25));
    CHECK(space.basis_state({0, 5}) == 33);
    CHECK(space.particle_count(33) == 2);
    CHECK_THROWS_AS(space.basis_state({8}), ContractViolation);
    CHECK_THROWS_AS(space.index_of(1, Species::electron, 3), ContractViolation);
    CHECK_THROWS_AS(build_fock_space(-1.0, 1.0), ContractViolation);
    CHECK_THROWS_AS(FockSpace(std::vector<FockMode>(13, {1, Species::electron, 1}), 0.0, 1.0), ContractViolation);
}

TEST_CASE("ladder operators") {
    const auto space = build_fock_space(0.5, 1.0);
    const auto id = ComplexMatrix::identity(space.dim());
    const auto a0 = ladder(space, 0, LadderKind::annihilate).matrix;
    const auto a0d = ladder(space, 0, LadderKind::create).matrix;
    const auto a3d = ladder(space, 3, LadderKind::create).matrix;
    CHECK(max_abs_diff(anticommutator(a0, a0d), id) == 0.0);
    CHECK((a0 * a0).max_abs() == 0.0);
    CHECK(anticommutator(a0, a3d).max_abs() == 0.0);
    CHECK(max_abs_diff(a0d, a0.adjoint()) == 0.0);

    const auto vac = vacuum(space);
    for (std::size_t j = 0; j < 8; ++j) CHECK(norm(ladder(space, j, LadderKind::annihilate).matrix.apply(vac)) == 0.0);

    // Jordan-Wigner sign: (-1)^(occupied modes below 3)
    ComplexVector two(space.dim());
    two[space.basis_state({0, 1})] = 1.0;
    const auto three = a3d.apply(two);
    CHECK(three[space.basis_state({0, 1, 3})] == Complex(1.0));
    ComplexVector one(space.dim());
    one[space.basis_state({0})] = 1.0;
    CHECK(a3d.apply(one)[space.basis_state({0, 3})] == Complex(-1.0));

    CHECK_THROWS_AS(ladder(space, 8, LadderKind::create), ContractViolation);
}

TEST_CASE("property: canonical anticommutation for every mode pair") {
    const auto space = build_fock_space(0.5, 1.0);
    const auto id = ComplexMatrix::identity(space.dim());
    const auto zero = ComplexMatrix::zero(space.dim());
    for (std::size_t i = 0; i < 8; ++i) {
        const auto ai = ladder(space, i, LadderKind::annihilate).matrix;
        for (std::size_t j = 0; j < 8; ++j) {
            const auto aj = ladder(space, j, LadderKind::annihilate).matrix;
            const auto ajd = ladder(space, j, LadderKind::create).matrix;
            CHECK(max_abs_diff(anticommutator(ai, ajd), i == j ? id : zero) <= 1e-14);
            CHECK(anticommutator(ai, aj).max_abs() <= 1e-14);
        }
    }
}

TEST_CASE("free Hamiltonian spectrum") {
    const auto space = build_fock_space(0.75, 1.0);
    const double e = space.energy();
    std::set<long> levels;
    for (double v : hermitian_eigenvalues(free_fock_hamiltonian(space))) {
        const double n = std::round(v / e);
        CHECK(std::abs(v - n * e) <= 1e-10);
        levels.insert(static_cast<long>(n));
    }
    CHECK(levels == std::set<long>{0, 1, 2, 3, 4, 5, 6, 7, 8});
    CHECK(std::abs(number_operator(space).trace() - 1024.0) == 0.0);
    CHECK(std::abs(charge_operator(space).trace()) == 0.0);
}

TEST_CASE("transverse current") {
    const auto space = build_fock_space(0.75, 1.0);
    const auto z = zb_transverse_current(space, 0.0);
    CHECK(z.direction == CurrentDirection::transverse);
    CHECK(z.frequency == doctest::Approx(2.5));
    CHECK(z.op.hermiticity_defect() <= 1e-15);

    const auto vac = vacuum(space);
    const auto image = z.op.apply(vac);
    CHECK(std::abs(inner(vac, image)) == 0.0);
    // sqrt2 c (A+ - B+)|0>: two orthogonal unit pair states
    CHECK(std::abs(norm(image) - 2.0) <= 1e-14);
    const auto pair_sector = sector_projector(space, 2, 0).apply(image);
    CHECK(std::abs(norm(pair_sector) - 2.0) <= 1e-14);
    const std::size_t a_state = space.basis_state({space.index_of(1, Species::electron, 2),
                                                   space.index_of(-1, Species::positron, 1)});
    CHECK(std::abs(std::abs(image[a_state]) - std::sqrt(2.0)) <= 1e-14);

    const auto h = free_fock_hamiltonian(space);
    const double e = space.energy();
    CHECK(max_abs_diff(commutator(h, z.raising), z.raising * Complex(2.0 * e)) <= 1e-10);
    CHECK(max_abs_diff(commutator(h, z.lowering), z.lowering * Complex(-2.0 * e)) <= 1e-10);
    CHECK(commutator(charge_operator(space), z.op).max_abs() <= 1e-12);
}

TEST_CASE("longitudinal current") {
    const auto massless = build_fock_space(0.75, 0.0);
    CHECK(zb_longitudinal_current(massless, 0.4).op.max_abs() == 0.0);

    const auto at_rest = build_fock_space(0.0, 1.0);
    CHECK(zb_longitudinal_current(at_rest, 0.0).amplitude == 1.0);

    const auto fast = build_fock_space(std::sqrt(3.0), 1.0);
    const auto z = zb_longitudinal_current(fast, 0.0);
    CHECK(std::abs(z.amplitude - 0.5) <= 1e-12);
    CHECK(z.direction == CurrentDirection::longitudinal);
    CHECK(z.op.hermiticity_defect() <= 1e-15);
    CHECK(commutator(charge_operator(fast), z.op).max_abs() <= 1e-12);

    const auto h = free_fock_hamiltonian(fast);
    CHECK(max_abs_diff(commutator(h, z.raising), z.raising * Complex(2.0 * fast.energy())) <= 1e-10);

    // amplitude ratio follows mc^2/E
    for (double p : {0.2, 1.0, 5.0}) {
        const auto s = build_fock_space(p, 1.0);
        CHECK(std::abs(zb_longitudinal_current(s, 0.0).amplitude - 1.0 / std::sqrt(1.0 + p * p)) <= 1e-12);
    }
}

TEST_CASE("property: Heisenberg evolution reproduces the explicit phases") {
    const auto space = build_fock_space(0.75, 1.0);
    const auto h = free_fock_hamiltonian(space);
    const double period = std::numbers::pi / space.energy();
    const auto zt = zb_transverse_current(space, 0.0);
    const auto zl = zb_longitudinal_current(space, 0.0);
    for (double t : {0.0, period / 8.0, period / 4.0, 0.37}) {
        const auto u = matrix_exponential(h, Complex(0.0, -t));
        const auto ud = matrix_exponential(h, Complex(0.0, t));
        CHECK(max_abs_diff(ud * zt.op * u, zb_transverse_current(space, t).op) <= 1e-10);
        CHECK(max_abs_diff(ud * zl.op * u, zb_longitudinal_current(space, t).op) <= 1e-10);
    }
}

TEST_CASE("property: current spectra are symmetric about zero") {
    const auto space = build_fock_space(1.1, 0.8);
    for (const auto& z : {zb_transverse_current(space, 0.2), zb_longitudinal_current(space, 0.2)}) {
        const auto ev = hermitian_eigenvalues(z.op);
        for (std::size_t i = 0; i < ev.size(); ++i) CHECK(std::abs(ev[i] + ev[ev.size() - 1 - i]) <= 1e-10);
    }
}

TEST_CASE("pair cycle") {
    const auto space = build_fock_space(0.75, 1.0);
    const auto r = pair_cycle_audit(space);
    CHECK(r.passed);
    CHECK(r.name == "fock.pair_cycle");
    REQUIRE(r.measured.size() == 2);
    CHECK(std::abs(r.measured[0] - 1.0) <= 1e-12);
    CHECK(std::abs(r.measured[1] - 2.0) <= 1e-12);

    const auto one = sector_projector(space, 1, 1);
    CHECK(std::abs(one.trace() - 4.0) == 0.0);
}
