#include "twocopy/boxworld.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "rational_util.hpp"

namespace twocopy::boxworld {

using detail::Rational;

void validate(const BoxDistribution& d) {
    for (double v : d.table)
        if (!(v >= -EPS_BOX_NEG))
            throw std::invalid_argument("box distribution has a negative entry");
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            double s = 0.0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) s += d.at(x, y, a, b);
            if (std::abs(s - 1.0) > EPS_BOX_SUM)
                throw std::invalid_argument("box distribution input pair not normalized");
        }
}

double max_abs_diff(const BoxDistribution& a, const BoxDistribution& b) {
    double m = 0.0;
    for (int i = 0; i < 16; ++i) m = std::max(m, std::abs(a.table[i] - b.table[i]));
    return m;
}

BoxDistribution pr_box() {
    BoxDistribution d;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    d.at(x, y, a, b) = ((a ^ b) == (x & y)) ? 0.5 : 0.0;
    return d;
}

BoxDistribution anti_pr_box() {
    BoxDistribution d;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    d.at(x, y, a, b) = ((a ^ b) != (x & y)) ? 0.5 : 0.0;
    return d;
}

BoxDistribution noisy_pr(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("noisy_pr: p outside [0,1]");
    BoxDistribution d;
    const BoxDistribution pr = pr_box(), anti = anti_pr_box();
    for (int i = 0; i < 16; ++i) d.table[i] = p * pr.table[i] + (1.0 - p) * anti.table[i];
    return d;
}

bool is_nonsignalling(const BoxDistribution& d, double tol) {
    validate(d);
    for (int x = 0; x < 2; ++x)
        for (int a = 0; a < 2; ++a) {
            const double m0 = d.at(x, 0, a, 0) + d.at(x, 0, a, 1);
            const double m1 = d.at(x, 1, a, 0) + d.at(x, 1, a, 1);
            if (std::abs(m0 - m1) > tol) return false;
        }
    for (int y = 0; y < 2; ++y)
        for (int b = 0; b < 2; ++b) {
            const double m0 = d.at(0, y, 0, b) + d.at(0, y, 1, b);
            const double m1 = d.at(1, y, 0, b) + d.at(1, y, 1, b);
            if (std::abs(m0 - m1) > tol) return false;
        }
    return true;
}

double chsh_value(const BoxDistribution& d) {
    validate(d);
    double chsh = 0.0;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            double e = 0.0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) e += ((a ^ b) == 0 ? 1.0 : -1.0) * d.at(x, y, a, b);
            chsh += (x == 1 && y == 1) ? -e : e;
        }
    return chsh;
}

double pr_weight(const BoxDistribution& d) {
    validate(d);
    double w = 0.0;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    if ((a ^ b) == (x & y)) w += d.at(x, y, a, b);
    return 0.25 * w;
}

BoxDistribution box_twirl(const BoxDistribution& d) {
    validate(d);
    BoxDistribution out;
    for (int alpha = 0; alpha < 2; ++alpha)
        for (int beta = 0; beta < 2; ++beta)
            for (int gamma = 0; gamma < 2; ++gamma)
                for (int x = 0; x < 2; ++x)
                    for (int y = 0; y < 2; ++y)
                        for (int a = 0; a < 2; ++a)
                            for (int b = 0; b < 2; ++b)
                                out.at(x, y, a, b) +=
                                    0.125 * d.at(x ^ alpha, y ^ beta,
                                                 a ^ (beta & x) ^ (alpha & beta) ^ gamma,
                                                 b ^ (alpha & y) ^ gamma);
    return out;
}

namespace {

// Phase-1 simplex over exact rationals: minimize the sum of artificial
// variables subject to  D w + z = p,  w >= 0, z >= 0.  Bland's rule, so it
// terminates despite the degenerate (rank-deficient) constraint set.
struct Phase1Result {
    Rational optimum;
    std::array<Rational, 16> weights;
};

Phase1Result lhv_phase1(const std::array<Rational, 16>& rhs_in) {
    constexpr int m = 16;           // one equality per table cell
    constexpr int n_struct = 16;    // deterministic strategies
    constexpr int n = n_struct + m; // plus artificials
    // tab rows 0..m-1: constraints with rhs at column n; row m: reduced costs.
    std::vector<std::vector<Rational>> tab(m + 1, std::vector<Rational>(n + 1));

    for (int cell = 0; cell < m; ++cell) {
        const int x = (cell >> 3) & 1, y = (cell >> 2) & 1, a = (cell >> 1) & 1, b = cell & 1;
        for (int f = 0; f < 4; ++f)
            for (int g = 0; g < 4; ++g) {
                const int fa = (f >> x) & 1;  // f encodes (f(0), f(1)) as bits 0,1
                const int gb = (g >> y) & 1;
                if (fa == a && gb == b) tab[cell][f * 4 + g] = 1;
            }
        tab[cell][n_struct + cell] = 1;
        tab[cell][n] = rhs_in[cell];
        if (tab[cell][n] < 0) {  // keep rhs nonnegative for the artificial start
            for (int j = 0; j <= n; ++j) tab[cell][j] = -tab[cell][j];
            tab[cell][n_struct + cell] = 1;
        }
    }

    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = n_struct + i;

    // reduced-cost row z_j - c_j for the all-artificial basis
    for (int j = 0; j <= n; ++j) {
        Rational s = 0;
        for (int i = 0; i < m; ++i) s += tab[i][j];
        if (j < n_struct || j == n) tab[m][j] = s;  // artificial columns have c_j = 1
    }

    for (;;) {
        int enter = -1;
        for (int j = 0; j < n; ++j)
            if (tab[m][j] > 0) { enter = j; break; }  // Bland: smallest index
        if (enter < 0) break;

        int leave = -1;
        Rational best;
        for (int i = 0; i < m; ++i) {
            if (tab[i][enter] <= 0) continue;
            Rational ratio = tab[i][n] / tab[i][enter];
            if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                best = ratio;
                leave = i;
            }
        }
        if (leave < 0) throw std::runtime_error("lhv_membership: phase-1 simplex unbounded");

        const Rational piv = tab[leave][enter];
        for (int j = 0; j <= n; ++j) tab[leave][j] /= piv;
        for (int i = 0; i <= m; ++i) {
            if (i == leave) continue;
            const Rational factor = tab[i][enter];
            if (factor == 0) continue;
            for (int j = 0; j <= n; ++j) tab[i][j] -= factor * tab[leave][j];
        }
        basis[leave] = enter;
    }

    Phase1Result res;
    res.optimum = tab[m][n];
    for (int i = 0; i < m; ++i)
        if (basis[i] < n_struct) res.weights[basis[i]] = tab[i][n];
    return res;
}

}  // namespace

LhvResult lhv_membership(const BoxDistribution& d) {
    validate(d);
    std::array<Rational, 16> rhs;
    for (int i = 0; i < 16; ++i) rhs[i] = detail::rational_from_double(d.table[i]);

    const Phase1Result p1 = lhv_phase1(rhs);

    // The program is solved exactly on the dyadic reading of the doubles, so
    // the boundary of the local polytope is decided with no floating fudge
    // (noisy_pr(3/4) comes out at optimum exactly 0). The feasibility margin
    // only forgives representation noise in tables that were themselves
    // computed in floating point, and the margin comparison is again exact.
    static const Rational kFeasibilityMargin(1, 1000000000);
    LhvResult out;
    out.feasible = (p1.optimum <= kFeasibilityMargin);
    out.violation_margin = detail::rational_to_double(p1.optimum);
    if (out.feasible)
        for (int i = 0; i < 16; ++i) out.weights[i] = detail::rational_to_double(p1.weights[i]);
    return out;
}

BoxDistribution random_box(std::mt19937_64& rng) {
    auto u01 = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    BoxDistribution d;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            double s = 0.0, v[4];
            for (double& e : v) {
                e = u01() + 1e-12;
                s += e;
            }
            int k = 0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) d.at(x, y, a, b) = v[k++] / s;
        }
    return d;
}

std::string box_to_json(const BoxDistribution& d) {
    nlohmann::json arr = nlohmann::json::array();
    for (double v : d.table) arr.push_back(v);
    return arr.dump();
}

BoxDistribution box_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    if (!j.is_array() || j.size() != 16)
        throw std::invalid_argument("box JSON must be a 16-element array");
    BoxDistribution d;
    for (int i = 0; i < 16; ++i) d.table[i] = j[i].get<double>();
    return d;
}

}  // namespace twocopy::boxworld
