#include "twocopy/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace twocopy::linalg {

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
    const std::size_t n = rows.size();
    ComplexMatrix m(n);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != n) throw std::invalid_argument("from_rows: ragged rows");
        std::size_t j = 0;
        for (const auto& v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

cplx ComplexMatrix::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    if (dim_ != o.dim_) throw std::invalid_argument("matrix dimension mismatch");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    if (dim_ != o.dim_) throw std::invalid_argument("matrix dimension mismatch");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (auto& v : a_) v *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("matrix dimension mismatch");
    const std::size_t n = a.dim();
    ComplexMatrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

double ComplexMatrix::hermiticity_defect() const {
    double d = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j)
            d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return d;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("matrix dimension mismatch");
    double d = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k)
        d = std::max(d, std::abs(a.entries()[k] - b.entries()[k]));
    return d;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t ad = a.dim(), bd = b.dim();
    ComplexMatrix c(ad * bd);
    for (std::size_t i = 0; i < ad; ++i)
        for (std::size_t j = 0; j < ad; ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx{}) continue;
            for (std::size_t k = 0; k < bd; ++k)
                for (std::size_t l = 0; l < bd; ++l)
                    c(i * bd + k, j * bd + l) = aij * b(k, l);
        }
    return c;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho,
                            const std::vector<std::size_t>& keep,
                            const std::vector<std::size_t>& dims) {
    const std::size_t nsub = dims.size();
    std::size_t total = 1;
    for (auto d : dims) total *= d;
    if (total != rho.dim()) throw std::invalid_argument("partial_trace: dims do not factor rho");
    for (auto k : keep)
        if (k >= nsub) throw std::invalid_argument("partial_trace: keep index out of range");

    std::vector<bool> kept(nsub, false);
    for (auto k : keep) kept[k] = true;

    std::size_t keep_dim = 1, trace_dim = 1;
    for (std::size_t s = 0; s < nsub; ++s) (kept[s] ? keep_dim : trace_dim) *= dims[s];

    // Strides of each subsystem in the flat index (tensor order, row-major).
    std::vector<std::size_t> stride(nsub, 1);
    for (std::size_t s = nsub; s-- > 1;) stride[s - 1] = stride[s] * dims[s];

    // Flat index of a (kept multi-index, traced multi-index) combination.
    auto flat = [&](std::size_t kidx, std::size_t tidx) {
        std::size_t idx = 0;
        // peel multi-indices from the last subsystem backwards
        for (std::size_t s = nsub; s-- > 0;) {
            std::size_t d = dims[s];
            std::size_t comp;
            if (kept[s]) {
                comp = kidx % d;
                kidx /= d;
            } else {
                comp = tidx % d;
                tidx /= d;
            }
            idx += comp * stride[s];
        }
        return idx;
    };

    ComplexMatrix out(keep_dim);
    for (std::size_t i = 0; i < keep_dim; ++i)
        for (std::size_t j = 0; j < keep_dim; ++j) {
            cplx sum = 0.0;
            for (std::size_t t = 0; t < trace_dim; ++t) sum += rho(flat(i, t), flat(j, t));
            out(i, j) = sum;
        }
    return out;
}

EigenResult hermitian_eig(const ComplexMatrix& h, bool want_vectors) {
    const std::size_t n = h.dim();
    if (n == 0) throw std::invalid_argument("hermitian_eig: empty matrix");
    if (h.hermiticity_defect() > EPS_HERM)
        throw std::invalid_argument("hermitian_eig: matrix not Hermitian within tolerance");

    ComplexMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));

    ComplexMatrix v = ComplexMatrix::identity(n);

    auto off_norm = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += std::norm(a(i, j));
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < JACOBI_MAX_SWEEPS && off_norm() >= JACOBI_OFF_TOL; ++sweep) {
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;

                // Unitary 2x2 rotation zeroing a_pq: phase from arg(a_pq),
                // angle from the real-symmetric Jacobi formula on |a_pq|.
                const cplx phase = apq / mag;  // e^{i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                // smaller-magnitude root of t^2 - 2 tau t - 1 = 0
                const double t = (tau >= 0.0 ? -1.0 : 1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx sp = s * phase;        // s e^{+i phi}
                const cplx sm = s * std::conj(phase);  // s e^{-i phi}

                // columns: A <- A J with J = [[c, -s e^{i phi}],[s e^{-i phi}, c]]
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp + sm * akq;
                    a(k, q) = -sp * akp + c * akq;
                }
                // rows: A <- J^dag A
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk + sp * aqk;
                    a(q, k) = -sm * apk + c * aqk;
                }
                if (want_vectors) {
                    for (std::size_t k = 0; k < n; ++k) {
                        const cplx vkp = v(k, p), vkq = v(k, q);
                        v(k, p) = c * vkp + sm * vkq;
                        v(k, q) = -sp * vkp + c * vkq;
                    }
                }
            }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenResult res;
    res.eigenvalues.resize(n);
    for (std::size_t i = 0; i < n; ++i) res.eigenvalues[i] = a(order[i], order[i]).real();
    if (want_vectors) {
        res.eigenvectors = ComplexMatrix(n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) res.eigenvectors(i, j) = v(i, order[j]);
    }
    return res;
}

ComplexMatrix random_density_matrix(std::size_t dim, std::mt19937_64& rng) {
    ComplexMatrix g(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            g(i, j) = cplx(uniform01(rng) - 0.5, uniform01(rng) - 0.5);
    ComplexMatrix rho = g * g.adjoint();
    const double tr = rho.trace().real();
    rho *= cplx(1.0 / tr, 0.0);
    return rho;
}

ComplexMatrix random_hermitian(std::size_t dim, std::mt19937_64& rng) {
    ComplexMatrix g(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            g(i, j) = cplx(2.0 * uniform01(rng) - 1.0, 2.0 * uniform01(rng) - 1.0);
    ComplexMatrix h = g;
    h += g.adjoint();
    h *= cplx(0.5, 0.0);
    return h;
}

}  // namespace twocopy::linalg
