#pragma once

#include <array>
#include <random>
#include <string>

namespace twocopy::boxworld {

// Distribution equality metric is entrywise max-norm throughout.
inline constexpr double EPS_BOX_SUM = 1e-10;    // per-input normalization
inline constexpr double EPS_BOX_NEG = 1e-12;    // entry nonnegativity slack
inline constexpr double EPS_NOSIG = 1e-10;      // marginal independence
inline constexpr double EPS_TWIRL = 1e-12;      // twirl-into-family residual

/// Bipartite binary-input binary-output behavior P(ab|xy), stored as a flat
/// table in (x,y,a,b) lexicographic order (the JSON wire order as well).
struct BoxDistribution {
    std::array<double, 16> table{};

    static constexpr int index(int x, int y, int a, int b) { return x * 8 + y * 4 + a * 2 + b; }
    double& at(int x, int y, int a, int b) { return table[index(x, y, a, b)]; }
    double at(int x, int y, int a, int b) const { return table[index(x, y, a, b)]; }
};

/// Throws std::invalid_argument unless entries are >= -EPS_BOX_NEG and every
/// input pair's outcomes sum to 1 within EPS_BOX_SUM.
void validate(const BoxDistribution& d);

double max_abs_diff(const BoxDistribution& a, const BoxDistribution& b);

/// P(ab|xy) = 1/2 when a xor b = x.y, else 0.
BoxDistribution pr_box();

/// P(ab|xy) = 1/2 when a xor b != x.y, else 0.
BoxDistribution anti_pr_box();

/// p * pr_box + (1-p) * anti_pr_box; throws if p outside [0,1].
BoxDistribution noisy_pr(double p);

/// Marginals of each party independent of the other party's input.
bool is_nonsignalling(const BoxDistribution& d, double tol = EPS_NOSIG);

/// E00 + E01 + E10 - E11 with E_xy = P(a xor b = 0|xy) - P(a xor b = 1|xy).
double chsh_value(const BoxDistribution& d);

/// (1/4) sum_xy P(a xor b = x.y | xy). Inverts noisy_pr on the family.
double pr_weight(const BoxDistribution& d);

/// Shared-randomness twirl: uniform average over the 8 values of three shared
/// bits (alpha, beta, gamma) of the relabeled box whose entry at (x,y,a,b) is
/// the original at inputs (x^alpha, y^beta) and outputs
/// (a ^ beta.x ^ alpha.beta ^ gamma, b ^ alpha.y ^ gamma).
/// Maps every distribution (signalling included) onto noisy_pr(pr_weight(d)).
BoxDistribution box_twirl(const BoxDistribution& d);

struct LhvResult {
    bool feasible = false;
    /// Weights over the 16 deterministic strategies (a = f(x), b = g(y)),
    /// indexed f*4+g with f,g encoding (value at 0, value at 1) as 2 bits.
    /// Meaningful only when feasible.
    std::array<double, 16> weights{};
    /// Phase-1 simplex optimum (total artificial mass left over when fitting
    /// the best sub-normalized deterministic mixture under the table),
    /// computed in exact arithmetic on the dyadic readings of the doubles.
    /// Exactly 0 for exactly-representable local tables; feasible is the
    /// exact comparison optimum <= 1e-9, which forgives floating-point noise
    /// in the table without touching the boundary decision.
    double violation_margin = 0.0;
};

/// Local-hidden-variable membership: can d be written as a convex combination
/// of the 16 deterministic product strategies? Decided exactly.
LhvResult lhv_membership(const BoxDistribution& d);

/// Per input pair, 4 nonnegative entries normalized to 1. Generally
/// signalling; used by the twirl property suites.
BoxDistribution random_box(std::mt19937_64& rng);

/// Bare JSON array of the 16 table entries in (x,y,a,b) order.
std::string box_to_json(const BoxDistribution& d);
BoxDistribution box_from_json(const std::string& text);

}  // namespace twocopy::boxworld
