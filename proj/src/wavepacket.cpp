#include "zitterlab/wavepacket.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <sstream>

namespace zitterlab {

namespace {

constexpr double kSign[4] = {1.0, 1.0, -1.0, -1.0};

// Spinor-space forms of one grid mode: energy and <S_r| alpha_i |S_s>.
struct ModeForms {
    double energy;
    std::array<std::array<std::array<Complex, 4>, 4>, 3> velocity;
};

ModeForms mode_forms(const Vec3& p, double m) {
    ModeForms f{};
    f.energy = dirac_energy(p, m);
    const auto spinors = plane_wave_spinors(p, m, 1.0, SpinorGauge::rest_frame);
    const auto all = spinors.all();
    const auto& basis = dirac_basis();
    for (int i = 0; i < 3; ++i)
        for (int r = 0; r < 4; ++r) {
            const auto image = basis.alpha[i].apply(all[r]->vector());
            for (int s = 0; s < 4; ++s) f.velocity[i][s][r] = inner(all[s]->vector(), image);
        }
    return f;
}

std::vector<ModeForms> packet_forms(const WavePacket& packet) {
    std::vector<ModeForms> forms;
    forms.reserve(packet.grid.size());
    for (const auto& p : packet.grid) forms.push_back(mode_forms(p, packet.m));
    return forms;
}

// Sum over modes of per-mode contributions, reduced pairwise per component.
Vec3 reduce(const std::vector<Vec3>& parts) {
    Vec3 out{};
    std::vector<double> column(parts.size());
    for (int i = 0; i < 3; ++i) {
        for (std::size_t k = 0; k < parts.size(); ++k) column[k] = parts[k][i];
        out[i] = pairwise_sum(column.data(), column.size());
    }
    return out;
}

// integrate == false: <v>(t); integrate == true: int_0^t <v>.
Vec3 velocity_moment(const WavePacket& packet, const std::vector<ModeForms>& forms, double t, bool integrate) {
    std::vector<Vec3> parts(forms.size());
    for (std::size_t k = 0; k < forms.size(); ++k) {
        const auto& f = forms[k];
        const auto& w = packet.weights[k];
        Vec3 acc{};
        for (int s = 0; s < 4; ++s) {
            for (int r = 0; r < 4; ++r) {
                const Complex amp = std::conj(w[s]) * w[r];
                if (amp == Complex(0.0, 0.0)) continue;
                // w_s(t)* w_r(t) = amp * e^{i (sign_s - sign_r) E t}
                const double freq = (kSign[s] - kSign[r]) * f.energy;
                Complex factor;
                if (!integrate) {
                    factor = std::polar(1.0, freq * t);
                } else if (freq == 0.0) {
                    factor = t;
                } else {
                    factor = (std::polar(1.0, freq * t) - 1.0) / Complex(0.0, freq);
                }
                for (int i = 0; i < 3; ++i) acc[i] += std::real(amp * factor * f.velocity[i][s][r]);
            }
        }
        parts[k] = acc;
    }
    return reduce(parts);
}

void require_normalized(const WavePacket& packet) {
    if (packet.grid.size() != packet.weights.size())
        throw InvalidPacket("wave packet: grid and weights differ in length");
    const double n = packet.norm_squared();
    if (std::abs(n - 1.0) > 1e-12) {
        std::ostringstream msg;
        msg << "wave packet is not normalized (norm^2 = " << n << ")";
        throw InvalidPacket(msg.str());
    }
}

}  // namespace

double WavePacket::norm_squared() const {
    std::vector<double> parts;
    parts.reserve(weights.size());
    for (const auto& w : weights) parts.push_back(std::norm(w[0]) + std::norm(w[1]) + std::norm(w[2]) + std::norm(w[3]));
    return pairwise_sum(parts.data(), parts.size());
}

double WavePacket::positive_weight() const {
    std::vector<double> parts;
    parts.reserve(weights.size());
    for (const auto& w : weights) parts.push_back(std::norm(w[0]) + std::norm(w[1]));
    return pairwise_sum(parts.data(), parts.size());
}

WavePacket gaussian_packet(const GaussianPacketParams& params) {
    if (!(params.sigma_p >= 0.0) || !std::isfinite(params.sigma_p))
        throw InvalidPacket("gaussian_packet: sigma_p must be finite and non-negative");
    if (!(params.negative_fraction >= 0.0 && params.negative_fraction <= 1.0))
        throw InvalidPacket("gaussian_packet: mixing fraction must lie in [0, 1]");
    if (params.axis < 0 || params.axis > 2) throw InvalidPacket("gaussian_packet: axis must be 0, 1 or 2");
    if (params.positive_slot < 0 || params.positive_slot > 1 || params.negative_slot < 2 || params.negative_slot > 3)
        throw InvalidPacket("gaussian_packet: positive slot must be u1/u2 and negative slot v1/v2");
    if (!(params.m >= 0.0)) throw InvalidPacket("gaussian_packet: mass must be non-negative");

    const std::size_t nodes = params.sigma_p == 0.0 ? 1 : params.nodes;
    if (nodes == 0) throw InvalidPacket("gaussian_packet: needs at least one node");

    WavePacket packet;
    packet.m = params.m;
    std::vector<double> envelope(nodes, 1.0);
    const double half = params.span_sigmas * params.sigma_p;
    for (std::size_t k = 0; k < nodes; ++k) {
        Vec3 p = params.center;
        if (nodes > 1) {
            const double offset = -half + 2.0 * half * static_cast<double>(k) / static_cast<double>(nodes - 1);
            p[params.axis] += offset;
            envelope[k] = std::exp(-offset * offset / (4.0 * params.sigma_p * params.sigma_p));
        }
        if (!(dirac_energy(p, params.m) > 0.0)) throw InvalidPacket("gaussian_packet: a grid mode has E = 0");
        packet.grid.push_back(p);
    }
    std::vector<double> sq(nodes);
    for (std::size_t k = 0; k < nodes; ++k) sq[k] = envelope[k] * envelope[k];
    const double scale = 1.0 / std::sqrt(pairwise_sum(sq.data(), sq.size()));

    const double pos = std::sqrt(1.0 - params.negative_fraction);
    const double neg = std::sqrt(params.negative_fraction);
    for (std::size_t k = 0; k < nodes; ++k) {
        std::array<Complex, 4> w{};
        w[params.positive_slot] = pos * envelope[k] * scale;
        w[params.negative_slot] = neg * envelope[k] * scale;
        packet.weights.push_back(w);
    }
    return packet;
}

WavePacket evolve(const WavePacket& packet, double t) {
    require_normalized(packet);
    WavePacket out = packet;
    for (std::size_t k = 0; k < packet.grid.size(); ++k) {
        const double energy = dirac_energy(packet.grid[k], packet.m);
        for (int s = 0; s < 4; ++s) out.weights[k][s] *= std::polar(1.0, -kSign[s] * energy * t);
    }
    return out;
}

Vec3 expectation_velocity(const WavePacket& packet, double t) {
    require_normalized(packet);
    return velocity_moment(packet, packet_forms(packet), t, false);
}

Vec3 expectation_position(const WavePacket& packet, double t) {
    require_normalized(packet);
    return velocity_moment(packet, packet_forms(packet), t, true);
}

double mean_energy(const WavePacket& packet) {
    std::vector<double> parts;
    for (std::size_t k = 0; k < packet.grid.size(); ++k) {
        const auto& w = packet.weights[k];
        const double weight = std::norm(w[0]) + std::norm(w[1]) + std::norm(w[2]) + std::norm(w[3]);
        parts.push_back(weight * dirac_energy(packet.grid[k], packet.m));
    }
    return pairwise_sum(parts.data(), parts.size());
}

std::vector<TrajectorySample> simulate(const WavePacket& packet, std::size_t samples, double periods) {
    require_normalized(packet);
    if (samples == 0) throw InvalidPacket("simulate: needs at least one sample");
    if (!(periods > 0.0)) throw InvalidPacket("simulate: span must cover a positive number of periods");
    const auto forms = packet_forms(packet);
    const double period = std::numbers::pi / mean_energy(packet);
    const double dt = periods * period / static_cast<double>(samples);

    std::vector<TrajectorySample> out;
    out.reserve(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        const double t = static_cast<double>(k) * dt;
        const WavePacket state = evolve(packet, t);
        out.push_back({t, velocity_moment(packet, forms, t, true), velocity_moment(packet, forms, t, false),
                       state.positive_weight(), state.norm_squared()});
    }
    return out;
}

namespace {

struct SinusoidFit {
    double residual;
    double cos_coeff;
    double sin_coeff;
};

SinusoidFit fit_sinusoid(const std::vector<double>& t, const std::vector<double>& y, double omega) {
    const auto n = static_cast<Eigen::Index>(t.size());
    Eigen::MatrixXd design(n, 4);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        design(k, 0) = std::cos(omega * t[k]);
        design(k, 1) = std::sin(omega * t[k]);
        design(k, 2) = 1.0;
        design(k, 3) = t[k];
        rhs(k) = y[k];
    }
    const Eigen::VectorXd coeffs = design.colPivHouseholderQr().solve(rhs);
    return {(design * coeffs - rhs).squaredNorm(), coeffs(0), coeffs(1)};
}

}  // namespace

ZBSignature extract_zb_signature(const std::vector<TrajectorySample>& series, int axis) {
    constexpr std::size_t kMinSamples = 64;
    constexpr double kMinPeriods = 4.0;
    if (axis < 0 || axis > 2) throw ContractViolation("extract_zb_signature: axis must be 0, 1 or 2");
    const std::size_t n = series.size();
    if (n < kMinSamples) {
        std::ostringstream msg;
        msg << "extract_zb_signature: " << n << " samples given, at least " << kMinSamples << " required";
        throw InsufficientData(msg.str());
    }
    const double dt = series[1].t - series[0].t;
    if (!(dt > 0.0)) throw InsufficientData("extract_zb_signature: sample times must increase");
    for (std::size_t k = 1; k < n; ++k)
        if (std::abs(series[k].t - series[k - 1].t - dt) > 1e-9 * dt)
            throw InsufficientData("extract_zb_signature: samples must be uniformly spaced");

    std::vector<double> t(n), y(n);
    for (std::size_t k = 0; k < n; ++k) {
        t[k] = series[k].t;
        y[k] = series[k].x_mean[axis];
    }

    // Remove the mean motion before looking for the oscillation.
    double st = 0, sy = 0, stt = 0, sty = 0, ymax = 0;
    for (std::size_t k = 0; k < n; ++k) {
        st += t[k];
        sy += y[k];
        stt += t[k] * t[k];
        sty += t[k] * y[k];
        ymax = std::max(ymax, std::abs(y[k]));
    }
    const double nn = static_cast<double>(n);
    const double slope = (nn * sty - st * sy) / (nn * stt - st * st);
    const double offset = (sy - slope * st) / nn;
    std::vector<double> detrended(n);
    double rms = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        detrended[k] = y[k] - offset - slope * t[k];
        rms += detrended[k] * detrended[k];
    }
    rms = std::sqrt(rms / nn);

    std::size_t peak = 1;
    double best = -1.0;
    for (std::size_t j = 1; j <= n / 2; ++j) {
        Complex acc = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            acc += detrended[k] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(j * k % n) / nn);
        if (std::abs(acc) > best) {
            best = std::abs(acc);
            peak = j;
        }
    }
    const double span = nn * dt;
    const double bin = 2.0 * std::numbers::pi / span;

    const bool silent = rms <= 1e-12 * std::max(1.0, ymax);
    if (silent) return {static_cast<double>(peak) * bin, std::sqrt(2.0) * rms, 0.0};

    if (static_cast<double>(peak) < kMinPeriods) {
        std::ostringstream msg;
        msg << "extract_zb_signature: series spans " << span << " but at least " << kMinPeriods
            << " periods of the dominant oscillation (" << kMinPeriods * 2.0 * std::numbers::pi / (peak * bin)
            << ") are required";
        throw InsufficientData(msg.str());
    }

    // Golden-section search for the frequency minimizing the fit residual.
    double lo = (static_cast<double>(peak) - 1.0) * bin;
    double hi = (static_cast<double>(peak) + 1.0) * bin;
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = hi - ratio * (hi - lo), b = lo + ratio * (hi - lo);
    double fa = fit_sinusoid(t, y, a).residual, fb = fit_sinusoid(t, y, b).residual;
    for (int iter = 0; iter < 100 && hi - lo > 1e-13 * hi; ++iter) {
        if (fa < fb) {
            hi = b;
            b = a;
            fb = fa;
            a = hi - ratio * (hi - lo);
            fa = fit_sinusoid(t, y, a).residual;
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + ratio * (hi - lo);
            fb = fit_sinusoid(t, y, b).residual;
        }
    }
    const double omega = 0.5 * (lo + hi);
    const auto fit = fit_sinusoid(t, y, omega);
    return {omega, std::hypot(fit.cos_coeff, fit.sin_coeff), std::atan2(-fit.sin_coeff, fit.cos_coeff)};
}

}  // namespace zitterlab
