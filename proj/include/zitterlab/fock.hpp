#pragma once

// Truncated fermionic Fock space for one momentum pair (p, -p) carrying the
// quantized zitterbewegung currents.
//
// Mode order (also the Jordan-Wigner order):
//   0 c(p,1)  1 c(p,2)  2 c(-p,1)  3 c(-p,2)
//   4 d(p,1)  5 d(p,2)  6 d(-p,1)  7 d(-p,2)
// Basis state index bit j is the occupation of mode j; index 0 is the vacuum.

#include "zitterlab/check.hpp"
#include "zitterlab/linalg.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace zitterlab {

enum class Species { electron, positron };  // c and d quanta

struct FockMode {
    int momentum_sign;  // +1 for p, -1 for -p
    Species species;
    int spin;           // 1 or 2
};

class FockSpace {
public:
    FockSpace(std::vector<FockMode> modes, double p, double m, double c = 1.0, double hbar = 1.0);

    std::size_t mode_count() const { return modes_.size(); }
    std::size_t dim() const { return std::size_t{1} << modes_.size(); }
    const std::vector<FockMode>& modes() const { return modes_; }
    double p() const { return p_; }
    double m() const { return m_; }
    double c() const { return c_; }
    double hbar() const { return hbar_; }
    /// sqrt(m^2 c^4 + p^2 c^2)
    double energy() const { return energy_; }

    std::size_t index_of(int momentum_sign, Species species, int spin) const;
    /// Basis index with exactly the listed modes occupied.
    std::size_t basis_state(const std::vector<std::size_t>& occupied) const;
    int particle_count(std::size_t state) const;

private:
    std::vector<FockMode> modes_;
    double p_, m_, c_, hbar_, energy_;
};

constexpr std::size_t kMaxFockModes = 12;

/// The eight-mode space of a single (p, -p) pair.
FockSpace build_fock_space(double p, double m, double c = 1.0, double hbar = 1.0);

enum class LadderKind { create, annihilate };

struct LadderOperator {
    std::size_t mode;
    LadderKind kind;
    ComplexMatrix matrix;
};

LadderOperator ladder(const FockSpace& space, std::size_t mode, LadderKind kind);

/// E * sum over modes of n_j.
ComplexMatrix free_fock_hamiltonian(const FockSpace& space);
/// Total particle number N_c + N_d.
ComplexMatrix number_operator(const FockSpace& space);
/// Charge N_c - N_d.
ComplexMatrix charge_operator(const FockSpace& space);

enum class CurrentDirection { transverse, longitudinal };

struct ZBCurrent {
    CurrentDirection direction;
    ComplexMatrix op;        // full Hermitian current at time t
    ComplexMatrix raising;   // pair-creation part (including its e^{+i2Et/hbar} phase)
    ComplexMatrix lowering;  // raising^dagger
    double frequency;        // 2E/hbar
    double amplitude;        // scalar prefactor of the pair operators
};

/// c sqrt(2) [c+(p,2) d+(-p,1) e^{i2Et/hbar} - c(-p,1) d(p,2) e^{-i2Et/hbar}] + h.c.
ZBCurrent zb_transverse_current(const FockSpace& space, double t);
/// c (mc^2/E) [c+(p,1) d+(-p,1) - c+(p,2) d+(-p,2)] e^{i2Et/hbar} + h.c.
ZBCurrent zb_longitudinal_current(const FockSpace& space, double t);

/// Projector onto basis states holding the given particle count and charge.
ComplexMatrix sector_projector(const FockSpace& space, int particles, int charge);

/// From the one-electron state c+(p,2)|0>, apply the raising then lowering part
/// of the transverse current; the result must lie in the one-electron sector.
CheckResult pair_cycle_audit(const FockSpace& space);

}  // namespace zitterlab
