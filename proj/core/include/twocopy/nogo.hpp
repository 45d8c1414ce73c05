#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "twocopy/wirings.hpp"

namespace twocopy::nogo {

using wirings::QuadCoeffs;

/// Output purity of a twirled two-copy map as a function of input purity:
/// Q(p) = p^2 q00 + p(1-p)(q01 + q10) + (1-p)^2 q11, together with the
/// separability threshold of the family it acts on. The degree is fixed by
/// construction: only the four two-copy purities parameterize it, so cubic or
/// higher curves are unrepresentable.
struct QFunction {
    QuadCoeffs coeffs;
    double p_s;

    QFunction(QuadCoeffs c, double threshold);  // requires p_s in (0,1)
};

double q_of_p(const QFunction& f, double p);

/// The four necessary properties of a deterministic two-copy purification,
/// decided in exact rational arithmetic on the (dyadic) coefficients.
struct ConditionReport {
    bool universal = false;                // A: Q([0,1]) inside [0,1], coefficients in [0,1]
    bool separability_preserving = false;  // B: Q(p_s) <= p_s
    bool useful = false;                   // C: exists p_e with Q(p_e) > p_e > p_s (p_e < 1)
    bool quadratic = true;                 // D: structural for QFunction
    double p_e = 0.0;                      // witness point when useful, NaN otherwise

    // signed gaps of the four relations, in increasing p order
    double q_at_0 = 0.0;   // Q(0), required >= 0
    double sep_gap = 0.0;  // p_s - Q(p_s), required >= 0
    double sup_gap = 0.0;  // sup over (p_s, 1) of Q(p) - p, > 0 iff useful
    double one_gap = 0.0;  // 1 - Q(1), required >= 0
};

ConditionReport check_conditions(const QFunction& f);

/// Samples coefficient quadruples uniformly from [0,1]^4, keeps those
/// satisfying A and B, and counts how many also satisfy C. The impossibility
/// theorem says the count is 0.
std::uint64_t theorem_scan(double p_s, std::uint64_t samples, std::uint64_t seed);

/// Exhaustive sweep over the 81 corner quadruples q in {0, 1/2, 1}^4.
std::uint64_t corner_sweep(double p_s);

/// Three distinct fixed points of Q force (q00, q01+q10, q11) = (1, 1, 0),
/// i.e. Q = p is the only quadratic fixing three points of the diagonal.
/// Solves the 3x3 linear system exactly; returns false if the points fail
/// to pin down the identity.
bool identity_forced_by_fixed_points(double p1, double p2, double p3);

struct Fig1Region {
    int region_id;
    double p;
    double q_min;
    double q_max;  // the p_e region's lower bound is strict (Q > p_e)
};

struct Fig1Curve {
    int curve_id;
    std::string label;
    std::vector<double> p, q;
};

struct Fig1Data {
    std::array<Fig1Region, 4> regions;
    std::vector<Fig1Curve> curves;  // sampled failed purification attempts
};

/// The four pointwise constraint regions a successful Q would have to thread
/// (at p = 0, p_s, p_e, 1), plus example quadratics that each violate one of
/// them. Requires 0 < p_s < p_e < 1.
Fig1Data figure1_regions(double p_s, double p_e, int grid_points = 101);

std::string report_to_json(const ConditionReport& r);
std::string regions_to_csv(const Fig1Data& d);
std::string curves_to_csv(const Fig1Data& d);

}  // namespace twocopy::nogo
