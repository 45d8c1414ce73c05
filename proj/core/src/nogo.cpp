#include "twocopy/nogo.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "rational_util.hpp"

namespace twocopy::nogo {

using detail::Rational;
using detail::rational_from_double;
using detail::rational_to_double;

QFunction::QFunction(QuadCoeffs c, double threshold) : coeffs(c), p_s(threshold) {
    if (!(p_s > 0.0 && p_s < 1.0)) throw std::invalid_argument("QFunction: p_s must be in (0,1)");
}

double q_of_p(const QFunction& f, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("q_of_p: p outside [0,1]");
    return wirings::quad_value(f.coeffs, p);
}

namespace {

struct Quad {  // A p^2 + B p + C over exact rationals
    Rational A, B, C;
    Rational eval(const Rational& p) const { return (A * p + B) * p + C; }
};

struct Extremum {
    Rational value;
    Rational arg;
};

// Max of a quadratic over a closed interval: endpoints plus the vertex when
// it lies inside. Ties resolve toward the smaller argument.
Extremum quad_max(const Quad& q, const Rational& lo, const Rational& hi) {
    Extremum best{q.eval(lo), lo};
    const Rational at_hi = q.eval(hi);
    if (at_hi > best.value) best = {at_hi, hi};
    if (q.A != 0) {
        const Rational v = -q.B / (2 * q.A);
        if (v > lo && v < hi) {
            const Rational at_v = q.eval(v);
            if (at_v > best.value) best = {at_v, v};
        }
    }
    return best;
}

Extremum quad_min(const Quad& q, const Rational& lo, const Rational& hi) {
    Quad neg{-q.A, -q.B, -q.C};
    Extremum m = quad_max(neg, lo, hi);
    return {-m.value, m.arg};
}

struct ExactCoeffs {
    Rational q00, q01, q10, q11, ps;
    Quad q_poly() const {
        return {q00 - q01 - q10 + q11, q01 + q10 - 2 * q11, q11};
    }
    Quad gap_poly() const {  // Q(p) - p
        Quad q = q_poly();
        q.B -= 1;
        return q;
    }
};

ExactCoeffs exact_of(const QFunction& f) {
    return {rational_from_double(f.coeffs.q00), rational_from_double(f.coeffs.q01),
            rational_from_double(f.coeffs.q10), rational_from_double(f.coeffs.q11),
            rational_from_double(f.p_s)};
}

bool cond_universal(const ExactCoeffs& e) {
    for (const Rational* q : {&e.q00, &e.q01, &e.q10, &e.q11})
        if (*q < 0 || *q > 1) return false;
    const Quad q = e.q_poly();
    if (quad_min(q, Rational(0), Rational(1)).value < 0) return false;
    if (quad_max(q, Rational(0), Rational(1)).value > 1) return false;
    return true;
}

bool cond_separability(const ExactCoeffs& e) { return e.q_poly().eval(e.ps) <= e.ps; }

struct UsefulResult {
    bool useful = false;
    Rational sup;  // sup over the open interval (p_s, 1) of Q(p) - p
    Rational p_e;  // strictly interior witness when useful
};

// Condition C demands a strict interior point: Q(p_e) > p_e with
// p_s < p_e < 1. The sup over the open interval equals the closed-interval
// max by continuity; when that max sits on an endpoint with positive value,
// positivity spreads inward and halving steps find a witness.
UsefulResult cond_useful(const ExactCoeffs& e) {
    const Quad gap = e.gap_poly();
    const Rational one(1);
    const Extremum m = quad_max(gap, e.ps, one);
    UsefulResult r;
    r.sup = m.value;
    if (m.value <= 0) return r;
    if (m.arg > e.ps && m.arg < one) {
        r.useful = true;
        r.p_e = m.arg;
        return r;
    }
    Rational step = (one - e.ps) / 2;
    const bool from_left = (m.arg == e.ps);
    for (int k = 0; k < 512; ++k, step /= 2) {
        const Rational cand = from_left ? Rational(e.ps + step) : Rational(one - step);
        if (gap.eval(cand) > 0) {
            r.useful = true;
            r.p_e = cand;
            return r;
        }
    }
    throw std::logic_error("cond_useful: interior witness not found despite positive sup");
}

}  // namespace

ConditionReport check_conditions(const QFunction& f) {
    const ExactCoeffs e = exact_of(f);
    ConditionReport rep;
    rep.universal = cond_universal(e);
    rep.separability_preserving = cond_separability(e);
    const UsefulResult u = cond_useful(e);
    rep.useful = u.useful;
    rep.quadratic = true;
    rep.p_e = u.useful ? rational_to_double(u.p_e) : std::numeric_limits<double>::quiet_NaN();
    rep.q_at_0 = rational_to_double(e.q11);
    rep.sep_gap = rational_to_double(e.ps - e.q_poly().eval(e.ps));
    rep.sup_gap = rational_to_double(u.sup);
    rep.one_gap = rational_to_double(1 - e.q00);
    return rep;
}

namespace {

bool is_counterexample_exact(const QuadCoeffs& c, double p_s) {
    const QFunction f(c, p_s);
    const ExactCoeffs e = exact_of(f);
    return cond_universal(e) && cond_separability(e) && cond_useful(e).useful;
}

}  // namespace

std::uint64_t theorem_scan(double p_s, std::uint64_t samples, std::uint64_t seed) {
    if (!(p_s > 0.0 && p_s < 1.0)) throw std::invalid_argument("theorem_scan: p_s outside (0,1)");
    if (samples < 1) throw std::invalid_argument("theorem_scan: samples must be >= 1");
    std::mt19937_64 rng(seed);
    auto u01 = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    std::uint64_t violations = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        const QuadCoeffs c{u01(), u01(), u01(), u01()};
        // cheap double-precision screen; anything near the boundary goes
        // through the exact path
        const double qps = wirings::quad_value(c, p_s);
        if (qps - p_s > 1e-6) continue;  // B clearly fails
        const double a = c.q00 - c.q01 - c.q10 + c.q11;
        const double b = c.q01 + c.q10 - 2.0 * c.q11 - 1.0;
        const double cc = c.q11;
        double sup = std::max(a * p_s * p_s + b * p_s + cc, a + b + cc);
        if (a < 0.0) {
            const double v = -b / (2.0 * a);
            if (v > p_s && v < 1.0) sup = std::max(sup, cc - b * b / (4.0 * a));
        }
        if (sup < -1e-6) continue;  // C clearly fails
        if (is_counterexample_exact(c, p_s)) ++violations;
    }
    return violations;
}

std::uint64_t corner_sweep(double p_s) {
    if (!(p_s > 0.0 && p_s < 1.0)) throw std::invalid_argument("corner_sweep: p_s outside (0,1)");
    static constexpr double corners[3] = {0.0, 0.5, 1.0};
    std::uint64_t violations = 0;
    for (double q00 : corners)
        for (double q01 : corners)
            for (double q10 : corners)
                for (double q11 : corners)
                    if (is_counterexample_exact(QuadCoeffs{q00, q01, q10, q11}, p_s))
                        ++violations;
    return violations;
}

bool identity_forced_by_fixed_points(double p1, double p2, double p3) {
    const Rational ps[3] = {rational_from_double(p1), rational_from_double(p2),
                            rational_from_double(p3)};
    if (ps[0] == ps[1] || ps[0] == ps[2] || ps[1] == ps[2])
        throw std::invalid_argument("identity_forced_by_fixed_points: points must be distinct");

    // Solve for (q00, s, q11) in p^2 q00 + p(1-p) s + (1-p)^2 q11 = p at the
    // three points, by exact Gaussian elimination.
    Rational m[3][4];
    for (int i = 0; i < 3; ++i) {
        const Rational& p = ps[i];
        m[i][0] = p * p;
        m[i][1] = p * (1 - p);
        m[i][2] = (1 - p) * (1 - p);
        m[i][3] = p;
    }
    for (int col = 0; col < 3; ++col) {
        int piv = -1;
        for (int row = col; row < 3; ++row)
            if (m[row][col] != 0) {
                piv = row;
                break;
            }
        if (piv < 0) return false;  // singular: points do not pin a quadratic
        for (int j = 0; j < 4; ++j) std::swap(m[col][j], m[piv][j]);
        for (int row = 0; row < 3; ++row) {
            if (row == col || m[row][col] == 0) continue;
            const Rational factor = m[row][col] / m[col][col];
            for (int j = col; j < 4; ++j) m[row][j] -= factor * m[col][j];
        }
    }
    const Rational q00 = m[0][3] / m[0][0];
    const Rational s = m[1][3] / m[1][1];
    const Rational q11 = m[2][3] / m[2][2];
    return q00 == 1 && s == 1 && q11 == 0;
}

Fig1Data figure1_regions(double p_s, double p_e, int grid_points) {
    if (!(0.0 < p_s && p_s < p_e && p_e < 1.0))
        throw std::invalid_argument("figure1_regions: need 0 < p_s < p_e < 1");
    if (grid_points < 2) throw std::invalid_argument("figure1_regions: grid_points must be >= 2");

    Fig1Data d;
    d.regions = {Fig1Region{0, 0.0, 0.0, 1.0},     // Q(0) >= 0 (and universal <= 1)
                 Fig1Region{1, p_s, 0.0, p_s},     // Q(p_s) <= p_s
                 Fig1Region{2, p_e, p_e, 1.0},     // Q(p_e) > p_e (strict lower bound)
                 Fig1Region{3, 1.0, 0.0, 1.0}};    // Q(1) <= 1

    std::vector<double> grid(grid_points);
    for (int i = 0; i < grid_points; ++i)
        grid[i] = static_cast<double>(i) / (grid_points - 1);

    auto add_curve = [&](int id, std::string label, auto&& fn) {
        Fig1Curve c;
        c.curve_id = id;
        c.label = std::move(label);
        c.p = grid;
        c.q.reserve(grid.size());
        for (double p : grid) c.q.push_back(fn(p));
        d.curves.push_back(std::move(c));
    };

    // identity map: separability-preserving but never useful
    add_curve(0, "identity", [](double p) { return p; });

    // parabola threaded through (p_s, p_s), (p_e, p_e + delta), (1, 1):
    // useful but not universal (Q(0) < 0)
    const double delta = 0.5 * (1.0 - p_e);
    const double xs[3] = {p_s, p_e, 1.0}, ys[3] = {p_s, p_e + delta, 1.0};
    add_curve(1, "not_universal", [&](double p) {
        double q = 0.0;
        for (int i = 0; i < 3; ++i) {
            double term = ys[i];
            for (int j = 0; j < 3; ++j)
                if (j != i) term *= (p - xs[j]) / (xs[i] - xs[j]);
            q += term;
        }
        return q;
    });

    // Q(p) = (1+p)/2: universal and useful but maps the separable point up
    add_curve(2, "not_separability_preserving", [](double p) { return 0.5 * (1.0 + p); });

    return d;
}

namespace {

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string report_to_json(const ConditionReport& r) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["kind"] = "condition-report";
    j["universal"] = r.universal;
    j["separability_preserving"] = r.separability_preserving;
    j["useful"] = r.useful;
    j["quadratic"] = r.quadratic;
    if (r.useful)
        j["p_e"] = r.p_e;
    else
        j["p_e"] = nullptr;
    j["relations"] = {{"q_at_0", r.q_at_0},
                      {"sep_gap", r.sep_gap},
                      {"sup_gap", r.sup_gap},
                      {"one_gap", r.one_gap}};
    return j.dump(1) + "\n";
}

std::string regions_to_csv(const Fig1Data& d) {
    std::ostringstream out;
    out << "region_id,p,q_min,q_max\n";
    for (const auto& r : d.regions)
        out << r.region_id << ',' << fmt17(r.p) << ',' << fmt17(r.q_min) << ',' << fmt17(r.q_max)
            << '\n';
    return out.str();
}

std::string curves_to_csv(const Fig1Data& d) {
    std::ostringstream out;
    out << "curve_id,label,p,q\n";
    for (const auto& c : d.curves)
        for (std::size_t i = 0; i < c.p.size(); ++i)
            out << c.curve_id << ',' << c.label << ',' << fmt17(c.p[i]) << ',' << fmt17(c.q[i])
                << '\n';
    return out.str();
}

}  // namespace twocopy::nogo
