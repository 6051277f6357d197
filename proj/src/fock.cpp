#include "zitterlab/fock.hpp"

#include <bit>
#include <cmath>
#include <sstream>

namespace zitterlab {

FockSpace::FockSpace(std::vector<FockMode> modes, double p, double m, double c, double hbar)
    : modes_(std::move(modes)), p_(p), m_(m), c_(c), hbar_(hbar) {
    if (modes_.empty() || modes_.size() > kMaxFockModes)
        throw ContractViolation("FockSpace: mode count must be between 1 and 12");
    if (!(p >= 0.0)) throw ContractViolation("FockSpace: momentum magnitude must be non-negative");
    if (!(m >= 0.0)) throw ContractViolation("FockSpace: mass must be non-negative");
    energy_ = std::sqrt(m * m * c * c * c * c + p * p * c * c);
}

std::size_t FockSpace::index_of(int momentum_sign, Species species, int spin) const {
    for (std::size_t j = 0; j < modes_.size(); ++j) {
        const auto& mode = modes_[j];
        if (mode.momentum_sign == momentum_sign && mode.species == species && mode.spin == spin) return j;
    }
    throw ContractViolation("FockSpace: no such mode");
}

std::size_t FockSpace::basis_state(const std::vector<std::size_t>& occupied) const {
    std::size_t state = 0;
    for (auto j : occupied) {
        if (j >= modes_.size()) throw ContractViolation("FockSpace: invalid mode index");
        state |= std::size_t{1} << j;
    }
    return state;
}

int FockSpace::particle_count(std::size_t state) const { return std::popcount(state); }

FockSpace build_fock_space(double p, double m, double c, double hbar) {
    std::vector<FockMode> modes;
    for (Species species : {Species::electron, Species::positron})
        for (int sign : {1, -1})
            for (int spin : {1, 2}) modes.push_back({sign, species, spin});
    return FockSpace(std::move(modes), p, m, c, hbar);
}

LadderOperator ladder(const FockSpace& space, std::size_t mode, LadderKind kind) {
    if (mode >= space.mode_count()) {
        std::ostringstream msg;
        msg << "ladder: mode index " << mode << " out of range (" << space.mode_count() << " modes)";
        throw ContractViolation(msg.str());
    }
    const std::size_t dim = space.dim();
    const std::size_t bit = std::size_t{1} << mode;
    const std::size_t lower_mask = bit - 1;
    ComplexMatrix a(dim);
    for (std::size_t state = 0; state < dim; ++state) {
        if (!(state & bit)) continue;
        // Jordan-Wigner string over modes preceding `mode`.
        const double sign = std::popcount(state & lower_mask) % 2 == 0 ? 1.0 : -1.0;
        a(state & ~bit, state) = sign;
    }
    if (kind == LadderKind::create) a = a.adjoint();
    return {mode, kind, std::move(a)};
}

namespace {

ComplexMatrix diagonal_count(const FockSpace& space, double electron_weight, double positron_weight) {
    std::vector<double> diag(space.dim());
    for (std::size_t state = 0; state < space.dim(); ++state) {
        double value = 0.0;
        for (std::size_t j = 0; j < space.mode_count(); ++j)
            if (state & (std::size_t{1} << j))
                value += space.modes()[j].species == Species::electron ? electron_weight : positron_weight;
        diag[state] = value;
    }
    return ComplexMatrix::diagonal(diag);
}

ComplexMatrix create(const FockSpace& space, int sign, Species species, int spin) {
    return ladder(space, space.index_of(sign, species, spin), LadderKind::create).matrix;
}

ZBCurrent assemble(CurrentDirection direction, const FockSpace& space, double t, double amplitude,
                   const ComplexMatrix& pair_creation) {
    const double omega = 2.0 * space.energy() / space.hbar();
    ZBCurrent z{direction, {}, pair_creation * (std::polar(1.0, omega * t) * amplitude), {}, omega, amplitude};
    z.lowering = z.raising.adjoint();
    z.op = z.raising + z.lowering;
    return z;
}

}  // namespace

ComplexMatrix free_fock_hamiltonian(const FockSpace& space) {
    return diagonal_count(space, space.energy(), space.energy());
}

ComplexMatrix number_operator(const FockSpace& space) { return diagonal_count(space, 1.0, 1.0); }

ComplexMatrix charge_operator(const FockSpace& space) { return diagonal_count(space, 1.0, -1.0); }

ZBCurrent zb_transverse_current(const FockSpace& space, double t) {
    // X = sqrt2 c [A+ e^{iwt} - B e^{-iwt}] with A+ = c+(p,2) d+(-p,1), B = c(-p,1) d(p,2).
    // Z = X + X^dagger = sqrt2 c [(A+ - B+) e^{iwt} + h.c.].
    const auto a_dag = create(space, 1, Species::electron, 2) * create(space, -1, Species::positron, 1);
    const auto b_dag = create(space, 1, Species::positron, 2) * create(space, -1, Species::electron, 1);
    return assemble(CurrentDirection::transverse, space, t, std::sqrt(2.0) * space.c(), a_dag - b_dag);
}

ZBCurrent zb_longitudinal_current(const FockSpace& space, double t) {
    const auto first = create(space, 1, Species::electron, 1) * create(space, -1, Species::positron, 1);
    const auto second = create(space, 1, Species::electron, 2) * create(space, -1, Species::positron, 2);
    const double ratio = space.energy() > 0.0 ? space.m() * space.c() * space.c() / space.energy() : 0.0;
    return assemble(CurrentDirection::longitudinal, space, t, space.c() * ratio, first - second);
}

ComplexMatrix sector_projector(const FockSpace& space, int particles, int charge) {
    std::vector<double> diag(space.dim(), 0.0);
    for (std::size_t state = 0; state < space.dim(); ++state) {
        int q = 0;
        for (std::size_t j = 0; j < space.mode_count(); ++j)
            if (state & (std::size_t{1} << j)) q += space.modes()[j].species == Species::electron ? 1 : -1;
        if (space.particle_count(state) == particles && q == charge) diag[state] = 1.0;
    }
    return ComplexMatrix::diagonal(diag);
}

CheckResult pair_cycle_audit(const FockSpace& space) {
    const auto z = zb_transverse_current(space, 0.0);
    ComplexVector start(space.dim());
    start[space.basis_state({space.index_of(1, Species::electron, 2)})] = 1.0;

    const auto raised = z.raising.apply(start);
    const auto cycled = z.lowering.apply(raised);
    const auto one_electron = sector_projector(space, 1, 1).apply(cycled);

    const double total = std::real(inner(cycled, cycled));
    const double in_sector = std::real(inner(one_electron, one_electron));
    const double raised_norm = std::real(inner(raised, raised));
    const double added_particles =
        raised_norm > 0.0 ? std::real(expectation(number_operator(space), raised)) / raised_norm - 1.0 : 0.0;

    std::ostringstream detail;
    detail << "norm^2 after cycle=" << total << " particles added by raising=" << added_particles;
    return make_check("fock.pair_cycle", "virtual pairs created and annihilated around a real electron",
                      {total > 0.0 ? in_sector / total : 0.0, added_particles}, {1.0, 2.0}, 1e-12, detail.str());
}

}  // namespace zitterlab
