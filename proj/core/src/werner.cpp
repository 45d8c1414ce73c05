#include "twocopy/werner.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>

namespace twocopy::werner {

using linalg::cplx;
using linalg::kron;
using linalg::partial_trace;

const ComplexMatrix& singlet_projector() {
    static const ComplexMatrix p = [] {
        // |psi-> = (|01> - |10>)/sqrt(2), qubit order (Alice, Bob)
        ComplexMatrix m(4);
        m(1, 1) = 0.5;
        m(1, 2) = -0.5;
        m(2, 1) = -0.5;
        m(2, 2) = 0.5;
        return m;
    }();
    return p;
}

void validate_two_qubit_state(const ComplexMatrix& rho) {
    if (rho.dim() != 4) throw std::invalid_argument("two-qubit state must be 4x4");
    if (rho.hermiticity_defect() > EPS_STATE)
        throw std::invalid_argument("two-qubit state not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > EPS_STATE || std::abs(rho.trace().imag()) > EPS_STATE)
        throw std::invalid_argument("two-qubit state trace != 1");
    auto eig = linalg::hermitian_eig(rho, false);
    if (eig.eigenvalues.front() < -EPS_STATE)
        throw std::invalid_argument("two-qubit state not positive semidefinite");
}

ComplexMatrix werner_state(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("werner_state: p outside [0,1]");
    const ComplexMatrix& s0 = singlet_projector();
    ComplexMatrix s1 = ComplexMatrix::identity(4);
    s1 -= s0;
    s1 *= cplx(1.0 / 3.0, 0.0);
    ComplexMatrix w = s0;
    w *= cplx(p, 0.0);
    s1 *= cplx(1.0 - p, 0.0);
    w += s1;
    return w;
}

double singlet_fidelity(const ComplexMatrix& rho) {
    if (rho.dim() != 4) throw std::invalid_argument("singlet_fidelity: state must be 4x4");
    const ComplexMatrix& s0 = singlet_projector();
    cplx f = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) f += s0(i, j) * rho(j, i);
    return f.real();
}

namespace {

ComplexMatrix pauli_y() {
    ComplexMatrix y(2);
    y(0, 1) = cplx(0.0, -1.0);
    y(1, 0) = cplx(0.0, 1.0);
    return y;
}

ComplexMatrix hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    return ComplexMatrix::from_rows({{s, s}, {s, -s}});
}

ComplexMatrix phase_s() {
    return ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, cplx(0.0, 1.0)}});
}

// Global-phase canonical form: scale so the first entry of magnitude > eps is
// real positive, then quantize for use as a dedup key.
std::vector<int64_t> phase_key(const ComplexMatrix& u) {
    cplx scale = 1.0;
    for (const auto& v : u.entries())
        if (std::abs(v) > 1e-8) {
            scale = std::abs(v) / v;
            break;
        }
    std::vector<int64_t> key;
    key.reserve(u.entries().size() * 2);
    for (const auto& v : u.entries()) {
        const cplx w = v * scale;
        key.push_back(std::llround(w.real() * 1e6));
        key.push_back(std::llround(w.imag() * 1e6));
    }
    return key;
}

}  // namespace

const std::vector<ComplexMatrix>& clifford_2design() {
    static const std::vector<ComplexMatrix> group = [] {
        std::vector<ComplexMatrix> elems;
        std::map<std::vector<int64_t>, std::size_t> seen;
        auto push = [&](const ComplexMatrix& u) {
            auto key = phase_key(u);
            if (seen.emplace(std::move(key), elems.size()).second) elems.push_back(u);
        };
        push(ComplexMatrix::identity(2));
        const ComplexMatrix h = hadamard(), s = phase_s();
        for (std::size_t i = 0; i < elems.size(); ++i) {  // grows during closure
            push(elems[i] * h);
            push(elems[i] * s);
        }
        if (elems.size() != 24)
            throw std::runtime_error("clifford_2design: closure did not yield 24 elements");
        return elems;
    }();
    return group;
}

ComplexMatrix twirl_quantum(const ComplexMatrix& rho, TwirlMethod method) {
    if (rho.dim() != 4) throw std::invalid_argument("twirl_quantum: state must be 4x4");
    if (method == TwirlMethod::closed_form) {
        const double f = singlet_fidelity(rho);
        const ComplexMatrix& s0 = singlet_projector();
        ComplexMatrix s1 = ComplexMatrix::identity(4);
        s1 -= s0;
        s1 *= cplx((1.0 - f) / 3.0, 0.0);
        ComplexMatrix out = s0;
        out *= cplx(f, 0.0);
        out += s1;
        return out;
    }
    ComplexMatrix acc(4);
    for (const auto& u : clifford_2design()) {
        const ComplexMatrix uu = kron(u, u);
        acc += uu * rho * uu.adjoint();
    }
    acc *= cplx(1.0 / 24.0, 0.0);
    return acc;
}

double ppt_min_eigenvalue(const ComplexMatrix& rho) {
    if (rho.dim() != 4) throw std::invalid_argument("ppt_min_eigenvalue: state must be 4x4");
    // transpose the second qubit: (2i+k, 2j+l) <- (2i+l, 2j+k)
    ComplexMatrix pt(4);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l)
                    pt(2 * i + k, 2 * j + l) = rho(2 * i + l, 2 * j + k);
    auto eig = linalg::hermitian_eig(pt, false);
    return eig.eigenvalues.front();
}

double werner_threshold_bisect(double tol) {
    double lo = 0.0, hi = 1.0;  // ppt min eig is positive at 0, negative at 1
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (ppt_min_eigenvalue(werner_state(mid)) >= 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

// Qubit order of the two-pair register: (A1, B1, A2, B2), A1 most significant.
constexpr int kBitA1 = 3, kBitB1 = 2, kBitA2 = 1, kBitB2 = 0;

ComplexMatrix cnot16(int control_bit, int target_bit) {
    ComplexMatrix u(16);
    for (std::size_t i = 0; i < 16; ++i) {
        const std::size_t j = (i >> control_bit) & 1 ? i ^ (std::size_t{1} << target_bit) : i;
        u(j, i) = 1.0;
    }
    return u;
}

}  // namespace

ProtocolOutcome bbpssw_step(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("bbpssw_step: p outside [0,1]");

    const ComplexMatrix w = werner_state(p);
    ComplexMatrix rho = kron(w, w);

    // Local basis change on Bob's qubits: sigma_y maps |psi-> to |phi+> (up to
    // phase), putting both pairs in the Bell state the bilateral-CNOT
    // recurrence purifies toward.
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    const ComplexMatrix rot = kron(kron(i2, pauli_y()), kron(i2, pauli_y()));
    rho = rot * rho * rot.adjoint();

    // Bilateral CNOT: each party's source qubit controls its target qubit.
    const ComplexMatrix bc = cnot16(kBitB1, kBitB2) * cnot16(kBitA1, kBitA2);
    rho = bc * rho * bc.adjoint();

    // Measure both target qubits (A2, B2); post-select on equal outcomes.
    ComplexMatrix kept(16);
    double success = 0.0;
    for (int outcome = 0; outcome < 2; ++outcome) {
        ComplexMatrix branch(16);
        for (std::size_t i = 0; i < 16; ++i) {
            if ((int)((i >> kBitA2) & 1) != outcome || (int)((i >> kBitB2) & 1) != outcome) continue;
            for (std::size_t j = 0; j < 16; ++j) {
                if ((int)((j >> kBitA2) & 1) != outcome || (int)((j >> kBitB2) & 1) != outcome) continue;
                branch(i, j) = rho(i, j);
            }
        }
        success += branch.trace().real();
        kept += branch;
    }

    ProtocolOutcome out{};
    out.success_prob = success;
    if (success < 1e-14) {
        // success impossible; the post-selected branch is undefined
        out.out_purity_success = 0.0;
        out.out_purity_deterministic = p;
        return out;
    }

    ComplexMatrix pair = partial_trace(kept, {0, 1}, {2, 2, 2, 2});
    pair *= cplx(1.0 / success, 0.0);

    // Undo the basis change on the surviving pair, then twirl.
    const ComplexMatrix back = kron(i2, pauli_y());
    pair = back * pair * back.adjoint();
    pair = twirl_quantum(pair, TwirlMethod::closed_form);

    out.out_purity_success = singlet_fidelity(pair);
    out.out_purity_deterministic = success * out.out_purity_success + (1.0 - success) * p;
    return out;
}

double three_copy_protocol(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("three_copy_protocol: p outside [0,1]");
    return bbpssw_step(p).out_purity_deterministic;
}

double three_copy_formula(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("three_copy_formula: p outside [0,1]");
    return (-8.0 * p * p * p + 14.0 * p * p + 2.0 * p + 1.0) / 9.0;
}

}  // namespace twocopy::werner
