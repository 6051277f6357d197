#pragma once

// Free Dirac wave packets on a momentum grid, in natural units
// (hbar = c = 1, energies in units of the packet mass scale).
//
// A packet is a discrete superposition of plane-wave modes. Each grid
// momentum carries complex weights for (u1, u2, v1, v2). Observables built
// from cα are diagonal in momentum, so expectations reduce to sums over modes
// of 4x4 spinor-space forms.

#include "zitterlab/dirac.hpp"

#include <array>
#include <stdexcept>
#include <vector>

namespace zitterlab {

struct WavePacket {
    std::vector<Vec3> grid;
    std::vector<std::array<Complex, 4>> weights;  // (u1, u2, v1, v2) per mode
    double m = 1.0;

    double norm_squared() const;
    /// Sum of |u1|^2 + |u2|^2 over modes.
    double positive_weight() const;
};

struct GaussianPacketParams {
    Vec3 center{0.0, 0.0, 0.0};
    double sigma_p = 0.01;
    int axis = 0;
    std::size_t nodes = 129;
    double span_sigmas = 5.0;
    /// Fraction of the norm in the negative-energy component.
    double negative_fraction = 0.5;
    double m = 1.0;
    /// Spinor slots receiving the positive and negative parts (0..1 = u1,u2; 2..3 = v1,v2).
    int positive_slot = 0;
    int negative_slot = 3;
};

class InvalidPacket : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class InsufficientData : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Gaussian envelope on a 1-D momentum grid along params.axis. sigma_p = 0
/// yields a single mode at the center momentum.
WavePacket gaussian_packet(const GaussianPacketParams& params);

/// Exact free evolution: u-weights pick up e^{-iEt}, v-weights e^{+iEt}.
WavePacket evolve(const WavePacket& packet, double t);

/// <c alpha> at time t.
Vec3 expectation_velocity(const WavePacket& packet, double t);
/// Time integral of expectation_velocity from 0 to t (x(0) = 0), done exactly
/// mode by mode.
Vec3 expectation_position(const WavePacket& packet, double t);
/// Weight-averaged energy sum |w|^2 E.
double mean_energy(const WavePacket& packet);

struct TrajectorySample {
    double t;
    Vec3 x_mean;
    Vec3 v_mean;
    double pos_weight;
    double norm;
};

/// `samples` uniformly spaced samples t_k = k * dt over `periods` ZB periods
/// (period pi / <E>).
std::vector<TrajectorySample> simulate(const WavePacket& packet, std::size_t samples = 512, double periods = 8.0);

struct ZBSignature {
    double frequency;  // rad / time
    double amplitude;  // length
    double phase;      // rad
};

/// Dominant oscillation of x_mean[axis]: DFT peak refined by a least-squares
/// fit of A cos(w t + phi) + c0 + c1 t.
ZBSignature extract_zb_signature(const std::vector<TrajectorySample>& series, int axis = 0);

}  // namespace zitterlab
