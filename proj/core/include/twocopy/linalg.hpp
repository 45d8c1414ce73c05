#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <random>
#include <vector>

namespace twocopy::linalg {

using cplx = std::complex<double>;

// Numerical tolerances used across the quantum backend.
inline constexpr double EPS_HERM = 1e-10;         // hermiticity acceptance
inline constexpr double EPS_RECON = 1e-9;         // eigendecomposition reconstruction
inline constexpr double JACOBI_OFF_TOL = 1e-12;   // off-diagonal norm stop
inline constexpr int JACOBI_MAX_SWEEPS = 100;

/// Dense row-major complex matrix. Dimensions in this project never exceed 16,
/// so everything is stored flat and copied by value.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);

    std::size_t dim() const { return dim_; }

    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }

    const std::vector<cplx>& entries() const { return a_; }

    ComplexMatrix adjoint() const;
    cplx trace() const;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cplx s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

    /// max_ij |a_ij - conj(a_ji)|
    double hermiticity_defect() const;

private:
    std::size_t dim_ = 0;
    std::vector<cplx> a_;
};

/// Entrywise max-norm distance; throws on dimension mismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tensor product: entry ((i*bd+k),(j*bd+l)) = a(i,j) * b(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Trace out every subsystem not listed in `keep`. `dims` are the subsystem
/// dimensions in tensor order, and their product must equal rho.dim().
/// Kept subsystems stay in their original relative order.
ComplexMatrix partial_trace(const ComplexMatrix& rho,
                            const std::vector<std::size_t>& keep,
                            const std::vector<std::size_t>& dims);

struct EigenResult {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // columns, aligned with eigenvalues
};

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi sweeps.
/// Input must be Hermitian within EPS_HERM (it is symmetrized internally);
/// otherwise throws std::invalid_argument.
EigenResult hermitian_eig(const ComplexMatrix& h, bool want_vectors = true);

/// Uniform double in [0,1) from the top 53 bits of the generator. Used instead
/// of std::uniform_real_distribution so seeded streams are identical across
/// standard libraries.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Random density matrix: G G^dag normalized to unit trace, G with entries
/// uniform in the complex unit square.
ComplexMatrix random_density_matrix(std::size_t dim, std::mt19937_64& rng);

/// Random Hermitian matrix with entries of magnitude O(1).
ComplexMatrix random_hermitian(std::size_t dim, std::mt19937_64& rng);

}  // namespace twocopy::linalg
