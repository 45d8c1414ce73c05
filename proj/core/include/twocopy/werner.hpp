#pragma once

#include "twocopy/linalg.hpp"

namespace twocopy::werner {

using linalg::ComplexMatrix;

// Two-qubit state validity tolerances.
inline constexpr double EPS_STATE = 1e-10;

/// Projector onto the singlet (|01> - |10>)/sqrt(2).
const ComplexMatrix& singlet_projector();

/// Checks Hermiticity, unit trace and positivity (min eigenvalue >= -EPS_STATE);
/// throws std::invalid_argument describing the first violated property.
void validate_two_qubit_state(const ComplexMatrix& rho);

/// p * s0 + (1-p) * s1 with s0 the singlet projector and s1 = (I - s0)/3.
/// Throws if p is outside [0,1].
ComplexMatrix werner_state(double p);

/// tr(s0 * rho); recovers the family parameter on Werner states.
double singlet_fidelity(const ComplexMatrix& rho);

enum class TwirlMethod { closed_form, two_design };

/// Projects onto the Werner family. closed_form maps rho to
/// werner_state(singlet_fidelity(rho)); two_design averages
/// (U (x) U) rho (U (x) U)^dag over the 24 single-qubit Cliffords.
/// The two methods agree to 1e-10 entrywise.
ComplexMatrix twirl_quantum(const ComplexMatrix& rho, TwirlMethod method = TwirlMethod::closed_form);

/// The single-qubit Clifford group mod global phase, generated from H and S.
/// Exactly 24 unitaries; a unitary 2-design, so averaging over it reproduces
/// the Haar twirl on degree-(2,2) polynomials.
const std::vector<ComplexMatrix>& clifford_2design();

/// Minimum eigenvalue of the partial transpose on the second qubit.
/// For two qubits, rho is separable iff this is >= 0.
double ppt_min_eigenvalue(const ComplexMatrix& rho);

/// Bisects ppt_min_eigenvalue(werner_state(p)) = 0 over p in [0,1].
double werner_threshold_bisect(double tol = 1e-9);

struct ProtocolOutcome {
    double success_prob;
    double out_purity_success;        // Werner parameter of the kept pair, post-selected
    double out_purity_deterministic;  // success * out + (1-success) * input (third copy fallback)
};

/// One recurrence step of the Bennett et al. post-selected purification,
/// simulated on the exact 16x16 two-pair density matrix:
/// rotate each pair's Bob qubit by sigma_y (singlet <-> phi+), apply bilateral
/// CNOTs (sources -> targets), measure both target qubits, keep equal outcomes,
/// rotate back and twirl the surviving pair.
ProtocolOutcome bbpssw_step(double p);

/// Deterministic three-copy purity: run bbpssw_step on two copies; on failure
/// output the third copy unchanged.
double three_copy_protocol(double p);

/// (1/9)(-8 p^3 + 14 p^2 + 2 p + 1), the closed-form three-copy curve.
double three_copy_formula(double p);

}  // namespace twocopy::werner
