#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "twocopy/linalg.hpp"

using namespace twocopy::linalg;

namespace {

ComplexMatrix pauli_z() { return ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}); }

ComplexMatrix reconstruct(const EigenResult& e) {
    const std::size_t n = e.eigenvalues.size();
    ComplexMatrix d(n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = e.eigenvalues[i];
    return e.eigenvectors * d * e.eigenvectors.adjoint();
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("kron identity and pauli products") {
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    CHECK(max_abs_diff(kron(i2, i2), ComplexMatrix::identity(4)) == 0.0);

    const ComplexMatrix zz = kron(pauli_z(), pauli_z());
    ComplexMatrix expect(4);
    expect(0, 0) = 1.0;
    expect(1, 1) = -1.0;
    expect(2, 2) = -1.0;
    expect(3, 3) = 1.0;
    CHECK(max_abs_diff(zz, expect) == 0.0);
}

TEST_CASE("kron of basis projectors lands on basis index 1") {
    // hand expansion: |0><0| (x) |1><1| = diag(0, 1, 0, 0)
    const ComplexMatrix p0 = ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, 0.0}});
    const ComplexMatrix p1 = ComplexMatrix::from_rows({{0.0, 0.0}, {0.0, 1.0}});
    const ComplexMatrix k = kron(p0, p1);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(k(i, j) == ((i == 1 && j == 1) ? cplx(1.0) : cplx(0.0)));
}

TEST_CASE("kron is associative exactly on integer matrices") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        ComplexMatrix a(2), b(2), c(2);
        for (auto* m : {&a, &b, &c})
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j)
                    (*m)(i, j) = cplx(static_cast<double>(rng() % 7) - 3.0,
                                      static_cast<double>(rng() % 7) - 3.0);
        CHECK(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))) == 0.0);
    }
}

TEST_CASE("partial trace of product states") {
    std::mt19937_64 rng(42);
    const ComplexMatrix rho = random_density_matrix(2, rng);
    const ComplexMatrix sigma = random_density_matrix(2, rng);
    CHECK(max_abs_diff(partial_trace(kron(rho, sigma), {0}, {2, 2}), rho) < 1e-12);
    CHECK(max_abs_diff(partial_trace(kron(rho, sigma), {1}, {2, 2}), sigma) < 1e-12);
}

TEST_CASE("partial trace of the singlet gives the maximally mixed qubit") {
    // hand expansion of the singlet projector
    ComplexMatrix singlet(4);
    singlet(1, 1) = 0.5;
    singlet(1, 2) = -0.5;
    singlet(2, 1) = -0.5;
    singlet(2, 2) = 0.5;
    ComplexMatrix half = ComplexMatrix::identity(2);
    half *= cplx(0.5, 0.0);
    CHECK(max_abs_diff(partial_trace(singlet, {0}, {2, 2}), half) < 1e-12);

    ComplexMatrix mixed4 = ComplexMatrix::identity(4);
    mixed4 *= cplx(0.25, 0.0);
    CHECK(max_abs_diff(partial_trace(mixed4, {1}, {2, 2}), half) < 1e-12);
}

TEST_CASE("partial trace preserves trace and hermiticity") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 25; ++rep) {
        const ComplexMatrix h = random_hermitian(4, rng);
        const ComplexMatrix r = partial_trace(h, {0}, {2, 2});
        CHECK(std::abs((r.trace() - h.trace()).real()) < 1e-12);
        CHECK(std::abs((r.trace() - h.trace()).imag()) < 1e-12);
        CHECK(r.hermiticity_defect() < 1e-12);
    }
}

TEST_CASE("partial trace over one factor scales by the other's trace") {
    std::mt19937_64 rng(13);
    for (int rep = 0; rep < 20; ++rep) {
        const ComplexMatrix a = random_hermitian(2, rng);
        const ComplexMatrix b = random_hermitian(2, rng);
        ComplexMatrix scaled = a;
        scaled *= b.trace();
        CHECK(max_abs_diff(partial_trace(kron(a, b), {0}, {2, 2}), scaled) < 1e-12);
    }
}

TEST_CASE("partial trace rejects inconsistent dims") {
    CHECK_THROWS_AS(partial_trace(ComplexMatrix::identity(4), {0}, {2, 3}),
                    std::invalid_argument);
}

TEST_CASE("hermitian_eig on pauli z and identity") {
    auto ez = hermitian_eig(pauli_z());
    REQUIRE(ez.eigenvalues.size() == 2);
    CHECK(ez.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(ez.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));

    auto ei = hermitian_eig(ComplexMatrix::identity(4));
    for (double v : ei.eigenvalues) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hermitian_eig on the partially transposed singlet") {
    // hand computation: PT of the singlet projector swaps the off-diagonal
    // coherence onto the (00,11) corner, eigenvalues (-1/2, 1/2, 1/2, 1/2)
    ComplexMatrix pt(4);
    pt(0, 3) = -0.5;
    pt(3, 0) = -0.5;
    pt(1, 1) = 0.5;
    pt(2, 2) = 0.5;
    auto e = hermitian_eig(pt);
    CHECK(e.eigenvalues[0] == doctest::Approx(-0.5).epsilon(1e-10));
    CHECK(e.eigenvalues[1] == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(e.eigenvalues[2] == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(e.eigenvalues[3] == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("hermitian_eig reconstruction and trace identity") {
    std::mt19937_64 rng(2024);
    for (std::size_t dim : {4u, 16u}) {
        for (int rep = 0; rep < 10; ++rep) {
            const ComplexMatrix h = random_hermitian(dim, rng);
            auto e = hermitian_eig(h);
            double sum = 0.0;
            for (double v : e.eigenvalues) sum += v;
            CHECK(std::abs(sum - h.trace().real()) < 1e-10);
            CHECK(max_abs_diff(reconstruct(e), h) < EPS_RECON);
            for (std::size_t i = 1; i < e.eigenvalues.size(); ++i)
                CHECK(e.eigenvalues[i - 1] <= e.eigenvalues[i]);
        }
    }
}

TEST_CASE("hermitian_eig handles heavily degenerate spectra") {
    // 4x4 with eigenvalues {p, (1-p)/3 x3} tensored with itself: products of
    // the two levels give a 16x16 spectrum with multiplicities 1, 3, 3, 9
    ComplexMatrix w(4);
    const double p = 0.5, rest = (1.0 - p) / 3.0;
    w(1, 1) = 0.5 * p + rest * 0.5;
    w(2, 2) = w(1, 1);
    w(1, 2) = -0.5 * p + rest * 0.5;
    w(2, 1) = w(1, 2);
    w(0, 0) = rest;
    w(3, 3) = rest;
    const ComplexMatrix h = kron(w, w);
    auto e = hermitian_eig(h);
    CHECK(max_abs_diff(reconstruct(e), h) < EPS_RECON);

    // closed-form spectrum: 1/4 once, 1/12 six-fold, 1/36 nine-fold
    int at_quarter = 0, at_twelfth = 0, at_thirty_sixth = 0;
    for (double v : e.eigenvalues) {
        if (std::abs(v - 0.25) < 1e-9) ++at_quarter;
        if (std::abs(v - 1.0 / 12.0) < 1e-9) ++at_twelfth;
        if (std::abs(v - 1.0 / 36.0) < 1e-9) ++at_thirty_sixth;
    }
    CHECK(at_quarter == 1);
    CHECK(at_twelfth == 6);
    CHECK(at_thirty_sixth == 9);

    // eigenvectors stay orthonormal inside the degenerate blocks
    const ComplexMatrix gram = e.eigenvectors.adjoint() * e.eigenvectors;
    CHECK(max_abs_diff(gram, ComplexMatrix::identity(16)) < 1e-9);
}

TEST_CASE("hermitian_eig rejects non-hermitian input") {
    ComplexMatrix m(2);
    m(0, 1) = 1.0;  // strictly upper triangular, defect 1
    CHECK_THROWS_AS(hermitian_eig(m), std::invalid_argument);
}

}  // TEST_SUITE
