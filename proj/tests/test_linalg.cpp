#include <doctest.h>

#include "zitterlab/dirac.hpp"
#include "zitterlab/fock.hpp"
#include "zitterlab/linalg.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace zitterlab;

namespace {

ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t dim) {
    std::normal_distribution<double> dist;
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) m(i, j) = Complex(dist(rng), dist(rng));
    return m;
}

ComplexMatrix random_hermitian(std::mt19937_64& rng, std::size_t dim) {
    const auto a = random_matrix(rng, dim);
    return (a + a.adjoint()) * Complex(0.5);
}

const ComplexMatrix kSigmaX{{0.0, 1.0}, {1.0, 0.0}};
const ComplexMatrix kSigmaY{{0.0, -kI}, {kI, 0.0}};
const ComplexMatrix kSigmaZ{{1.0, 0.0}, {0.0, -1.0}};

}  // namespace

TEST_CASE("construction and basic algebra") {
    const auto id = ComplexMatrix::identity(3);
    CHECK(id.dim() == 3);
    CHECK(id.trace() == Complex(3.0));
    CHECK(ComplexMatrix::zero(2).max_abs() == 0.0);
    CHECK_THROWS_AS((ComplexMatrix{{1.0, 2.0}, {3.0}}), ContractViolation);

    const auto d = ComplexMatrix::diagonal({1.0, -2.0});
    CHECK(d(1, 1) == Complex(-2.0));
    CHECK(d(0, 1) == Complex(0.0));

    CHECK(max_abs_diff(kSigmaX * kSigmaY, kSigmaZ * kI) == 0.0);
    CHECK(max_abs_diff(commutator(kSigmaX, kSigmaY), kSigmaZ * Complex(0.0, 2.0)) == 0.0);
    CHECK(anticommutator(kSigmaX, kSigmaZ).max_abs() == 0.0);
    CHECK(kSigmaY.hermiticity_defect() == 0.0);
    CHECK(kSigmaY.unitarity_defect() == 0.0);

    const auto k = kron(kSigmaZ, kSigmaX);
    CHECK(k.dim() == 4);
    CHECK(k(0, 1) == Complex(1.0));
    CHECK(k(2, 3) == Complex(-1.0));
    CHECK(frobenius_norm(k) == doctest::Approx(2.0));
}

TEST_CASE("vectors") {
    const ComplexVector a{1.0, kI};
    const ComplexVector b{kI, 1.0};
    CHECK(inner(a, b) == Complex(0.0, 0.0));
    CHECK(norm(a) == doctest::Approx(std::sqrt(2.0)));
    CHECK(std::real(expectation(kSigmaZ, ComplexVector{1.0, 0.0})) == 1.0);
    CHECK_THROWS_AS(kSigmaX.apply(ComplexVector{1.0}), ContractViolation);
    CHECK_THROWS_AS(inner(a, ComplexVector{1.0}), ContractViolation);
}

TEST_CASE("commutator antisymmetry is exact") {
    std::mt19937_64 rng(11);
    const auto a = random_matrix(rng, 6);
    const auto b = random_matrix(rng, 6);
    CHECK(commutator(a, b) == -commutator(b, a));
}

TEST_CASE("hermitian eigensystem examples") {
    const auto z = hermitian_eigenvalues(kSigmaZ);
    REQUIRE(z.size() == 2);
    CHECK(z[0] == doctest::Approx(-1.0));
    CHECK(z[1] == doctest::Approx(1.0));

    const auto ax = hermitian_eigenvalues(dirac_basis().alpha[0]);
    const double expected[] = {-1.0, -1.0, 1.0, 1.0};
    for (int i = 0; i < 4; ++i) CHECK(std::abs(ax[i] - expected[i]) <= 1e-14);

    const auto space = build_fock_space(0.75, 1.0);
    const double e = space.energy();
    for (double v : hermitian_eigenvalues(free_fock_hamiltonian(space))) {
        const double n = std::round(v / e);
        CHECK(std::abs(v - n * e) <= 1e-10);
        CHECK(n >= 0.0);
        CHECK(n <= 8.0);
    }
}

TEST_CASE("hermitian eigensystem rejects non-Hermitian input") {
    const ComplexMatrix m{{0.0, 1.0}, {0.0, 0.0}};
    CHECK_THROWS_AS(hermitian_eigensystem(m), ContractViolation);
    CHECK_THROWS_AS(hermitian_eigenvalues(m), ContractViolation);
}

TEST_CASE("eigenvector phase convention and determinism") {
    std::mt19937_64 rng(5);
    const auto m = random_hermitian(rng, 12);
    const auto a = hermitian_eigensystem(m);
    const auto b = hermitian_eigensystem(m);
    CHECK(a.eigenvectors == b.eigenvectors);
    for (std::size_t k = 0; k < 12; ++k) {
        const auto v = a.eigenvector(k);
        std::size_t big = 0;
        for (std::size_t i = 1; i < v.size(); ++i)
            if (std::abs(v[i]) > std::abs(v[big])) big = i;
        CHECK(std::abs(v[big].imag()) <= 1e-15);
        CHECK(v[big].real() > 0.0);
    }
}

TEST_CASE("property: reconstruction of random Hermitian matrices") {
    std::mt19937_64 rng(2024);
    for (std::size_t dim : {1, 2, 4, 16, 64, 256}) {
        const auto m = random_hermitian(rng, dim);
        const auto eig = hermitian_eigensystem(m);
        for (std::size_t i = 1; i < dim; ++i) CHECK(eig.eigenvalues[i - 1] <= eig.eigenvalues[i]);
        const auto v = eig.eigenvectors;
        const auto recon = v * ComplexMatrix::diagonal(eig.eigenvalues) * v.adjoint();
        CHECK(frobenius_norm(recon - m) <= 1e-9 * frobenius_norm(m));
        CHECK(v.unitarity_defect() <= 1e-10);
    }
}

TEST_CASE("matrix exponential examples") {
    std::mt19937_64 rng(3);
    const auto m = random_matrix(rng, 5);
    CHECK(max_abs_diff(matrix_exponential(m, 0.0), ComplexMatrix::identity(5)) == 0.0);

    const auto rot = matrix_exponential(kSigmaX, Complex(0.0, std::numbers::pi / 2.0));
    CHECK(max_abs_diff(rot, kSigmaX * kI) <= 1e-12);

    // H0 = beta mc^2 at rest, m = c = hbar = 1.
    const auto& beta = dirac_basis().beta;
    const auto half_period = matrix_exponential(beta, Complex(0.0, -2.0 * std::numbers::pi / 2.0));
    CHECK(max_abs_diff(half_period, ComplexMatrix::identity(4) * Complex(-1.0)) <= 1e-12);
    const auto quarter = matrix_exponential(beta, Complex(0.0, -2.0 * std::numbers::pi / 4.0));
    CHECK(max_abs_diff(quarter, beta * Complex(0.0, -1.0)) <= 1e-12);

    const auto diag = matrix_exponential(ComplexMatrix::diagonal({0.0, 1.0, -2.0}));
    CHECK(std::abs(diag(1, 1) - std::exp(1.0)) <= 1e-14 * std::exp(1.0));
    CHECK(std::abs(diag(2, 2) - std::exp(-2.0)) <= 1e-15);
}

TEST_CASE("matrix exponential of large-norm input stays accurate") {
    const ComplexMatrix m{{0.0, 40.0}, {-40.0, 0.0}};
    const auto e = matrix_exponential(m);
    CHECK(std::abs(e(0, 0) - std::cos(40.0)) <= 1e-12);
    CHECK(std::abs(e(0, 1) - std::sin(40.0)) <= 1e-12);
    CHECK(e.unitarity_defect() <= 1e-12);
}

TEST_CASE("property: exp(A) exp(-A) = I and exp(A)^dagger = exp(A^dagger)") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t dim = 1 + trial % 16;
        const auto a = random_matrix(rng, dim) * Complex(0.5);
        const auto plus = matrix_exponential(a);
        const auto minus = matrix_exponential(a, -1.0);
        CHECK(max_abs_diff(plus * minus, ComplexMatrix::identity(dim)) <= 1e-10);
        CHECK(max_abs_diff(plus.adjoint(), matrix_exponential(a.adjoint())) <= 1e-10);

        const auto h = random_hermitian(rng, dim);
        CHECK(matrix_exponential(h, Complex(0.0, 1.7)).unitarity_defect() <= 1e-10);
    }
}

TEST_CASE("pairwise summation") {
    std::vector<double> values(1000, 0.1);
    CHECK(pairwise_sum(values.data(), values.size()) == doctest::Approx(100.0).epsilon(1e-15));
    CHECK(pairwise_sum(values.data(), 0) == 0.0);
    std::vector<Complex> z(7, Complex(1.0, -1.0));
    CHECK(pairwise_sum(z.data(), z.size()) == Complex(7.0, -7.0));
}
