#pragma once

// Dense complex linear algebra used by every other zitterlab module.
// Matrices are square, row-major, double precision.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace zitterlab {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

inline constexpr Complex kI{0.0, 1.0};

/// Thrown when an operation's precondition on its arguments is violated.
class ContractViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix zero(std::size_t dim) { return ComplexMatrix(dim); }
    static ComplexMatrix diagonal(const std::vector<double>& values);

    std::size_t dim() const { return dim_; }

    Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
    const Complex& operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }

    const Complex* data() const { return data_.data(); }
    Complex* data() { return data_.data(); }

    ComplexMatrix adjoint() const;
    Complex trace() const;

    /// Largest entry modulus.
    double max_abs() const;
    /// max |M - M^dagger|
    double hermiticity_defect() const;
    /// max |M^dagger M - I|
    double unitarity_defect() const;

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(Complex s);

    ComplexVector apply(const ComplexVector& v) const;

    bool operator==(const ComplexMatrix&) const = default;

private:
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, Complex s);
ComplexMatrix operator*(Complex s, ComplexMatrix m);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector operator*(const ComplexMatrix& m, const ComplexVector& v);

/// Kronecker product, a (x) b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// max |a - b| entrywise.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
/// Frobenius norm.
double frobenius_norm(const ComplexMatrix& m);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

// Vector helpers.
Complex inner(const ComplexVector& a, const ComplexVector& b);  // a^dagger b
double norm(const ComplexVector& v);
/// <v|M|v>
Complex expectation(const ComplexMatrix& m, const ComplexVector& v);

struct HermitianEigensystem {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]

    ComplexVector eigenvector(std::size_t k) const;
};

/// Rejects input whose asymmetry max|M - M^dagger| exceeds 1e-12 * max|M|.
HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& m);

/// Eigenvalues only; same preconditions as hermitian_eigensystem.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// exp(scale * M) by scaling and squaring with a degree-13 Padé approximant.
ComplexMatrix matrix_exponential(const ComplexMatrix& m, Complex scale = 1.0);

/// Sum with pairwise (cascade) reduction; the result does not depend on how
/// the caller partitions work as long as the element order is fixed.
double pairwise_sum(const double* values, std::size_t n);
Complex pairwise_sum(const Complex* values, std::size_t n);

}  // namespace zitterlab
