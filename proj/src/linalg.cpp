#include "zitterlab/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace zitterlab {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.dim() != b.dim()) {
        std::ostringstream msg;
        msg << op << ": dimension mismatch (" << a.dim() << " vs " << b.dim() << ")";
        throw ContractViolation(msg.str());
    }
}

using EigenMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const EigenMatrix> as_eigen(const ComplexMatrix& m) {
    const auto n = static_cast<Eigen::Index>(m.dim());
    return {m.data(), n, n};
}

ComplexMatrix from_eigen(const EigenMatrix& e) {
    ComplexMatrix out(static_cast<std::size_t>(e.rows()));
    std::copy(e.data(), e.data() + e.size(), out.data());
    return out;
}

double one_norm(const ComplexMatrix& m) {
    double best = 0.0;
    for (std::size_t j = 0; j < m.dim(); ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < m.dim(); ++i) col += std::abs(m(i, j));
        best = std::max(best, col);
    }
    return best;
}

template <typename T>
T pairwise_sum_impl(const T* values, std::size_t n) {
    if (n == 0) return T{};
    if (n <= 8) {
        T acc{};
        for (std::size_t i = 0; i < n; ++i) acc += values[i];
        return acc;
    }
    const std::size_t half = n / 2;
    return pairwise_sum_impl(values, half) + pairwise_sum_impl(values + half, n - half);
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : ComplexMatrix(rows.size()) {
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != dim_) throw ContractViolation("ComplexMatrix: rows must form a square matrix");
        std::size_t j = 0;
        for (const auto& value : row) (*this)(i, j++) = value;
        ++i;
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<double>& values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double best = 0.0;
    for (const auto& z : data_) best = std::max(best, std::abs(z));
    return best;
}

double ComplexMatrix::hermiticity_defect() const {
    double best = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i; j < dim_; ++j)
            best = std::max(best, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return best;
}

double ComplexMatrix::unitarity_defect() const {
    return max_abs_diff(adjoint() * (*this), identity(dim_));
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    require_same_dim(*this, rhs, "operator+");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    require_same_dim(*this, rhs, "operator-");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
}

ComplexVector ComplexMatrix::apply(const ComplexVector& v) const {
    if (v.size() != dim_) throw ContractViolation("apply: vector length does not match matrix dimension");
    ComplexVector out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        Complex acc = 0.0;
        for (std::size_t j = 0; j < dim_; ++j) acc += (*this)(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator-(ComplexMatrix m) { return m *= -1.0; }
ComplexMatrix operator*(ComplexMatrix m, Complex s) { return m *= s; }
ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "operator*");
    const std::size_t n = a.dim();
    ComplexMatrix c(n);
    // i-k-j order; zero entries of a are skipped, which keeps products of the
    // sparse Fock ladder matrices cheap.
    for (std::size_t i = 0; i < n; ++i) {
        Complex* crow = c.data() + i * n;
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex(0.0, 0.0)) continue;
            const Complex* brow = b.data() + k * n;
            for (std::size_t j = 0; j < n; ++j) crow[j] += aik * brow[j];
        }
    }
    return c;
}

ComplexVector operator*(const ComplexMatrix& m, const ComplexVector& v) { return m.apply(v); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t na = a.dim(), nb = b.dim();
    ComplexMatrix out(na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex(0.0, 0.0)) continue;
            for (std::size_t k = 0; k < nb; ++k)
                for (std::size_t l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = aij * b(k, l);
        }
    return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "max_abs_diff");
    double best = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) best = std::max(best, std::abs(a(i, j) - b(i, j)));
    return best;
}

double frobenius_norm(const ComplexMatrix& m) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) acc += std::norm(m(i, j));
    return std::sqrt(acc);
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "commutator");
    return a * b - b * a;
}

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "anticommutator");
    return a * b + b * a;
}

Complex inner(const ComplexVector& a, const ComplexVector& b) {
    if (a.size() != b.size()) throw ContractViolation("inner: length mismatch");
    Complex acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

double norm(const ComplexVector& v) { return std::sqrt(std::real(inner(v, v))); }

Complex expectation(const ComplexMatrix& m, const ComplexVector& v) { return inner(v, m.apply(v)); }

ComplexVector HermitianEigensystem::eigenvector(std::size_t k) const {
    ComplexVector v(eigenvectors.dim());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = eigenvectors(i, k);
    return v;
}

namespace {

void require_hermitian(const ComplexMatrix& m) {
    const double defect = m.hermiticity_defect();
    const double scale = m.max_abs();
    if (defect > 1e-12 * scale) {
        std::ostringstream msg;
        msg << "hermitian_eigensystem: input is not Hermitian (max|M - M^dagger| = " << defect
            << ", max|M| = " << scale << ")";
        throw ContractViolation(msg.str());
    }
}

}  // namespace

HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& m) {
    require_hermitian(m);
    HermitianEigensystem out;
    if (m.dim() == 0) return out;
    // Eigen reads the lower triangle only; symmetrize so both halves count.
    const EigenMatrix sym = 0.5 * (as_eigen(m) + as_eigen(m).adjoint());
    Eigen::SelfAdjointEigenSolver<EigenMatrix> solver(sym, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) throw std::runtime_error("hermitian_eigensystem: no convergence");

    const auto n = m.dim();
    out.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    EigenMatrix vecs = solver.eigenvectors();
    // Deterministic phase: the largest-modulus component of each column (first
    // one on ties) is made real positive.
    for (Eigen::Index k = 0; k < vecs.cols(); ++k) {
        Eigen::Index pivot = 0;
        double best = -1.0;
        for (Eigen::Index i = 0; i < vecs.rows(); ++i) {
            const double a = std::abs(vecs(i, k));
            if (a > best * (1.0 + 1e-12)) {
                best = a;
                pivot = i;
            }
        }
        const Complex z = vecs(pivot, k);
        if (std::abs(z) > 0.0) vecs.col(k) *= std::conj(z) / std::abs(z);
    }
    out.eigenvectors = from_eigen(vecs);
    return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    require_hermitian(m);
    if (m.dim() == 0) return {};
    const EigenMatrix sym = 0.5 * (as_eigen(m) + as_eigen(m).adjoint());
    Eigen::SelfAdjointEigenSolver<EigenMatrix> solver(sym, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("hermitian_eigenvalues: no convergence");
    return {solver.eigenvalues().data(), solver.eigenvalues().data() + m.dim()};
}

ComplexMatrix matrix_exponential(const ComplexMatrix& m, Complex scale) {
    // Higham (2005) degree-13 coefficients and threshold.
    static constexpr double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                   1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                   670442572800.0,      33522128640.0,       1323241920.0,
                                   40840800.0,          960960.0,            16380.0,
                                   182.0,               1.0};
    static constexpr double theta13 = 5.371920351148152;

    const std::size_t n = m.dim();
    const auto id = ComplexMatrix::identity(n);
    ComplexMatrix a = m * scale;
    const double norm1 = one_norm(a);
    if (norm1 == 0.0) return id;
    int squarings = 0;
    if (norm1 > theta13) {
        squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
        a *= std::ldexp(1.0, -squarings);
    }

    const ComplexMatrix a2 = a * a;
    const ComplexMatrix a4 = a2 * a2;
    const ComplexMatrix a6 = a4 * a2;

    const ComplexMatrix u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
                                  b[3] * a2 + b[1] * id;
    const ComplexMatrix u = a * u_inner;
    const ComplexMatrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 +
                            b[2] * a2 + b[0] * id;

    const EigenMatrix p = as_eigen(v - u);
    const EigenMatrix q = as_eigen(v + u);
    ComplexMatrix result = from_eigen(p.partialPivLu().solve(q));
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

double pairwise_sum(const double* values, std::size_t n) { return pairwise_sum_impl(values, n); }
Complex pairwise_sum(const Complex* values, std::size_t n) { return pairwise_sum_impl(values, n); }

}  // namespace zitterlab
