#include <doctest.h>

#include "zitterlab/constants.hpp"
#include "zitterlab/wavepacket.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace zitterlab;

namespace {

GaussianPacketParams rest_mix(double f, double sigma = 0.01) {
    GaussianPacketParams p;
    p.sigma_p = sigma;
    p.negative_fraction = f;
    return p;
}

// Brute-force oracle: single rest-frame mode psi(t) = a u1 e^{-it} + b v2 e^{it},
// trapezoid integral of <alpha_x>, amplitude read off as (max - min)/2.
double brute_force_amplitude(double f) {
    const auto& alpha_x = dirac_basis().alpha[0];
    const double a = std::sqrt(1.0 - f), b = std::sqrt(f);
    const int steps = 200000;
    const double t_end = 2.0 * std::numbers::pi;
    const double dt = t_end / steps;
    double x = 0.0, lo = 0.0, hi = 0.0;
    auto velocity = [&](double t) {
        const ComplexVector psi{a * std::polar(1.0, -t), 0.0, 0.0, b * std::polar(1.0, t)};
        return std::real(expectation(alpha_x, psi));
    };
    double v_prev = velocity(0.0);
    for (int k = 1; k <= steps; ++k) {
        const double v = velocity(k * dt);
        x += 0.5 * (v + v_prev) * dt;
        v_prev = v;
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    return 0.5 * (hi - lo);
}

}  // namespace

TEST_CASE("gaussian packet construction") {
    const auto packet = gaussian_packet(rest_mix(0.5));
    CHECK(packet.grid.size() == 129);
    CHECK(std::abs(packet.norm_squared() - 1.0) <= 1e-12);
    CHECK(std::abs(packet.positive_weight() - 0.5) <= 1e-12);
    CHECK(packet.grid.front()[0] == doctest::Approx(-0.05));
    CHECK(packet.grid.back()[0] == doctest::Approx(0.05));
    for (std::size_t k = 1; k < packet.grid.size(); ++k) CHECK(packet.grid[k][0] > packet.grid[k - 1][0]);

    const auto single = gaussian_packet(rest_mix(0.25, 0.0));
    REQUIRE(single.grid.size() == 1);
    CHECK(std::abs(single.weights[0][0] - std::sqrt(0.75)) <= 1e-15);
    CHECK(std::abs(single.weights[0][3] - 0.5) <= 1e-15);

    auto bad = rest_mix(0.5);
    bad.sigma_p = -1.0;
    CHECK_THROWS_AS(gaussian_packet(bad), InvalidPacket);
    bad = rest_mix(1.5);
    CHECK_THROWS_AS(gaussian_packet(bad), InvalidPacket);
    bad = rest_mix(0.5);
    bad.negative_slot = 1;
    CHECK_THROWS_AS(gaussian_packet(bad), InvalidPacket);
    bad = rest_mix(0.5, 0.0);
    bad.m = 0.0;
    CHECK_THROWS_AS(gaussian_packet(bad), InvalidPacket);
}

TEST_CASE("evolve") {
    const auto packet = gaussian_packet(rest_mix(0.5, 0.0));
    const auto same = evolve(packet, 0.0);
    CHECK(same.weights == packet.weights);

    const auto pure = gaussian_packet(rest_mix(0.0, 0.0));
    const auto later = evolve(pure, 3.7);
    CHECK(std::abs(std::abs(later.weights[0][0]) - 1.0) <= 1e-15);
    CHECK(std::abs(later.weights[0][0] - std::polar(1.0, -3.7)) <= 1e-15);

    // t = pi hbar/2mc^2: u picks up -i, v picks up +i, relative phase pi
    const auto half = evolve(packet, std::numbers::pi / 2.0);
    const Complex ratio = half.weights[0][3] / half.weights[0][0];
    CHECK(std::abs(ratio - Complex(-1.0, 0.0)) <= 1e-15);

    WavePacket broken = packet;
    broken.weights[0][0] *= 2.0;
    CHECK_THROWS_AS(evolve(broken, 1.0), InvalidPacket);
    broken = packet;
    broken.grid.push_back({0.0, 0.0, 0.0});
    CHECK_THROWS_AS(evolve(broken, 1.0), InvalidPacket);
}

TEST_CASE("expectation velocity") {
    auto positive = rest_mix(0.0, 0.0);
    positive.center = {0.3, 0.0, 0.0};
    const auto moving = gaussian_packet(positive);
    for (double t : {0.0, 1.3, 10.0}) {
        const auto v = expectation_velocity(moving, t);
        CHECK(std::abs(v[0] - 0.28734788556634538) <= 1e-12);
        CHECK(std::abs(v[1]) <= 1e-15);
    }

    const auto mix = gaussian_packet(rest_mix(0.5, 0.0));
    CHECK(std::abs(expectation_velocity(mix, 0.0)[0] - 1.0) <= 1e-12);
    CHECK(std::abs(expectation_velocity(mix, std::numbers::pi / 2.0)[0] + 1.0) <= 1e-12);
    CHECK(std::abs(expectation_velocity(mix, std::numbers::pi / 4.0)[0]) <= 1e-12);
}

TEST_CASE("expectation position") {
    const auto pure = gaussian_packet(rest_mix(0.0, 0.0));
    for (double t : {0.0, 0.5, 4.0}) CHECK(norm(expectation_position(pure, t)) == 0.0);

    const auto mix = gaussian_packet(rest_mix(0.5, 0.0));
    // x(t) = sin(2t)/2
    CHECK(std::abs(expectation_position(mix, std::numbers::pi / 4.0)[0] - 0.5) <= 1e-12);
    CHECK(std::abs(expectation_position(mix, 0.3)[0] - 0.5 * std::sin(0.6)) <= 1e-12);

    for (double f : {0.25, 0.1}) {
        const auto packet = gaussian_packet(rest_mix(f, 0.0));
        const double oracle = brute_force_amplitude(f);
        const double analytic = 2.0 * std::sqrt(f * (1.0 - f)) * 0.5;
        CHECK(std::abs(oracle - analytic) <= 1e-6);
        const auto sig = extract_zb_signature(simulate(packet));
        CHECK(std::abs(sig.amplitude - oracle) <= 1e-6);
    }
    CHECK(std::abs(brute_force_amplitude(0.25) - 0.4330127) <= 1e-6);
}

TEST_CASE("ZB signature of a rest-frame mixture") {
    const auto packet = gaussian_packet(rest_mix(0.5));
    const auto series = simulate(packet);
    REQUIRE(series.size() == 512);
    const auto sig = extract_zb_signature(series);
    CHECK(std::abs(sig.frequency - 2.0) <= 0.02);
    CHECK(std::abs(sig.amplitude - 0.5) <= 0.025);
    CHECK(sig.frequency > 0.0);

    const auto natural = UnitSystem::natural_electron();
    const double si = convert(sig.frequency, QuantityKind::angular_frequency, natural, UnitSystem::si());
    CHECK(std::abs(si / 1.5527e21 - 1.0) <= 0.01);
}

TEST_CASE("pure positive packet shows no ZB") {
    auto params = rest_mix(0.0, 0.05);
    params.center = {0.3, 0.0, 0.0};
    const auto sig = extract_zb_signature(simulate(gaussian_packet(params)));
    CHECK(sig.amplitude <= 1e-6 * 0.5);

    auto negative = rest_mix(1.0, 0.05);
    negative.center = {-0.2, 0.0, 0.0};
    CHECK(extract_zb_signature(simulate(gaussian_packet(negative))).amplitude <= 1e-6 * 0.5);
}

TEST_CASE("property: conservation and velocity bound") {
    for (double f : {0.0, 0.3, 0.5, 1.0}) {
        auto params = rest_mix(f, 0.05);
        params.center = {0.2, 0.0, 0.0};
        params.positive_slot = 1;
        params.negative_slot = 2;
        const auto packet = gaussian_packet(params);
        for (const auto& s : simulate(packet, 128, 4.0)) {
            CHECK(std::abs(s.norm - 1.0) <= 1e-12);
            CHECK(std::abs(s.pos_weight - (1.0 - f)) <= 1e-12);
            CHECK(norm(s.v_mean) <= 1.0 + 1e-9);
        }
    }
}

TEST_CASE("property: amplitude law 2 sqrt(f(1-f)) hbar/2mc") {
    for (int i = 1; i <= 9; ++i) {
        const double f = 0.1 * i;
        const auto sig = extract_zb_signature(simulate(gaussian_packet(rest_mix(f))));
        const double expected = 2.0 * std::sqrt(f * (1.0 - f)) * 0.5;
        CHECK(std::abs(sig.amplitude / expected - 1.0) <= 0.02);
    }
}

TEST_CASE("property: frequency error grows with packet width") {
    double previous = -1.0;
    for (double sigma : {0.01, 0.05, 0.1}) {
        const auto packet = gaussian_packet(rest_mix(0.5, sigma));
        const auto sig = extract_zb_signature(simulate(packet));
        const double error = std::abs(sig.frequency - 2.0) / 2.0;
        CHECK(error <= 0.01);
        CHECK(error >= previous);
        previous = error;
    }
}

TEST_CASE("property: reduction order does not change expectations") {
    auto params = rest_mix(0.4, 0.05);
    params.center = {0.1, 0.0, 0.0};
    const auto packet = gaussian_packet(params);
    WavePacket reversed = packet;
    std::reverse(reversed.grid.begin(), reversed.grid.end());
    std::reverse(reversed.weights.begin(), reversed.weights.end());
    for (double t : {0.2, 3.3}) {
        const auto a = expectation_position(packet, t);
        const auto b = expectation_position(reversed, t);
        const auto va = expectation_velocity(packet, t);
        const auto vb = expectation_velocity(reversed, t);
        for (int i = 0; i < 3; ++i) {
            CHECK(std::abs(a[i] - b[i]) <= 1e-13);
            CHECK(std::abs(va[i] - vb[i]) <= 1e-13);
        }
    }
}

TEST_CASE("signature extraction errors") {
    const auto packet = gaussian_packet(rest_mix(0.5));
    CHECK_THROWS_AS(extract_zb_signature(simulate(packet, 32, 8.0)), InsufficientData);

    auto series = simulate(packet, 128, 8.0);
    series[10].t += 1e-3;
    CHECK_THROWS_AS(extract_zb_signature(series), InsufficientData);

    // Too few periods: the peak sits below the resolvable bins.
    CHECK_THROWS_AS(extract_zb_signature(simulate(packet, 128, 1.0)), InsufficientData);
    CHECK_THROWS_AS(extract_zb_signature(simulate(packet, 128, 8.0), 3), ContractViolation);
    CHECK_THROWS_AS(simulate(packet, 0, 8.0), InvalidPacket);
}
