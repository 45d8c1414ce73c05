#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "twocopy/search.hpp"
#include "twocopy/wirings.hpp"

using namespace twocopy;
using namespace twocopy::wirings;
using boxworld::BoxDistribution;

namespace {

PartyWiring pass_through() {
    PartyWiring w;
    for (int x = 0; x < 2; ++x) w.sub[x] = SubWiring{false, x, 0, 0b1100};  // a = o1
    return w;
}

PartyWiring constant_zero() { return decode(0); }

std::mt19937_64& shared_rng() {
    static std::mt19937_64 rng(871263);
    return rng;
}

std::pair<WiringBehavior, WiringBehavior> random_pair(std::mt19937_64& rng) {
    return {behavior_of(decode(static_cast<std::uint32_t>(rng() % kWiringCount))),
            behavior_of(decode(static_cast<std::uint32_t>(rng() % kWiringCount)))};
}

}  // namespace

TEST_SUITE("wirings") {

TEST_CASE("enumeration covers exactly 65536 encodable wirings") {
    const auto all = enumerate_party_wirings();
    REQUIRE(all.size() == kWiringCount);
    CHECK_NOTHROW(behavior_of(decode(0)));
    for (std::uint32_t e = 0; e < kWiringCount; ++e) CHECK(encode(all[e]) == e);
    CHECK_THROWS_AS(decode(kWiringCount), std::invalid_argument);
}

TEST_CASE("behavior dedup collapses order when adaptivity is unused") {
    // box1-first with constant second input k == box2-first with the roles of
    // the two constants swapped
    for (int c = 0; c < 2; ++c)
        for (int k = 0; k < 2; ++k) {
            PartyWiring w1, w2;
            for (int x = 0; x < 2; ++x) {
                w1.sub[x] = SubWiring{false, c, k ? 0b11 : 0b00, 0b0110};
                w2.sub[x] = SubWiring{true, k, c ? 0b11 : 0b00, 0b0110};
            }
            CHECK(behavior_of(w1) == behavior_of(w2));
        }
    // but a reachable output difference is a different class
    PartyWiring a = pass_through(), b = pass_through();
    b.sub[0].output_fn = 0b0011;
    CHECK(!(behavior_of(a) == behavior_of(b)));
}

TEST_CASE("deduped class count is the frozen regression value") {
    const BehaviorSet set = dedupe_behaviors(enumerate_party_wirings());
    CHECK(set.classes.size() == 36864);  // 192 distinct per-input tables, squared
    CHECK(set.classes.size() == set.representative.size());
    CHECK(set.classes.size() < kWiringCount);
    // representatives are sorted because classes appear in encoding order
    for (std::size_t i = 1; i < set.representative.size(); ++i)
        CHECK(set.representative[i - 1] < set.representative[i]);
    // spot check: every representative maps back to its class
    for (std::size_t i = 0; i < set.classes.size(); i += 1717)
        CHECK(behavior_of(decode(set.representative[i])) == set.classes[i]);
}

TEST_CASE("pass-through wiring forwards box 1") {
    const WiringBehavior w = behavior_of(pass_through());
    const BoxDistribution pr = boxworld::pr_box();
    CHECK(boxworld::max_abs_diff(effective_box(w, w, pr, boxworld::noisy_pr(0.37)), pr) < 1e-15);
    for (double p : {0.1, 0.6, 0.9})
        CHECK(boxworld::max_abs_diff(
                  effective_box(w, w, boxworld::noisy_pr(p), boxworld::noisy_pr(0.25)),
                  boxworld::noisy_pr(p)) < 1e-15);

    const QuadCoeffs c = extract_quad_coeffs(w, w);
    CHECK(c.q00 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c.q01 == doctest::Approx(1.0).epsilon(1e-15));  // box 2 unused
    CHECK(c.q10 == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(c.q11 == doctest::Approx(0.0).epsilon(1e-15));
    // identity map: Q(p) = p
    for (int k = 0; k <= 10; ++k)
        CHECK(quad_value(c, k / 10.0) == doctest::Approx(k / 10.0).epsilon(1e-15));
}

TEST_CASE("constant wiring maps everything to the separable boundary") {
    const WiringBehavior w = behavior_of(constant_zero());
    const QuadCoeffs c = extract_quad_coeffs(w, w);
    for (double q : {c.q00, c.q01, c.q10, c.q11})
        CHECK(q == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("example strategy has the hand-computed coefficients") {
    const auto [wa, wb] = figure2_wiring();
    CHECK(encode(wa) == 0x6a68);  // frozen encodings
    CHECK(encode(wb) == 0x9a98);
    const WiringBehavior ba = behavior_of(wa), bb = behavior_of(wb);
    const QuadCoeffs c = extract_quad_coeffs(ba, bb);
    CHECK(c.q00 == doctest::Approx(3.0 / 8.0).epsilon(1e-15));
    CHECK(c.q01 == doctest::Approx(5.0 / 8.0).epsilon(1e-15));
    CHECK(c.q10 == doctest::Approx(7.0 / 8.0).epsilon(1e-15));
    CHECK(c.q11 == doctest::Approx(1.0 / 8.0).epsilon(1e-15));
    for (double q : {c.q00, c.q01, c.q10, c.q11}) {
        CHECK(q >= 0.0);
        CHECK(q <= 1.0);
    }
    // it never purifies: Q(p) <= p on (3/4, 1]
    for (int k = 1; k <= 101; ++k) {
        const double p = 0.75 + 0.25 * k / 101.0;
        CHECK(quad_value(c, p) - p <= 0.0);
    }
}

TEST_CASE("wiring maps are exactly quadratic in the family parameter") {
    std::vector<double> grid;
    for (int k = 0; k <= 10; ++k) grid.push_back(k / 10.0);

    const auto [wa, wb] = figure2_wiring();
    CHECK(q_curve_check(behavior_of(wa), behavior_of(wb), grid) <= 1e-10);

    const WiringBehavior pass = behavior_of(pass_through());
    CHECK(q_curve_check(pass, pass, grid) <= 1e-10);

    const WiringBehavior cz = behavior_of(constant_zero());
    CHECK(q_curve_check(cz, cz, grid) <= 1e-10);

    for (int rep = 0; rep < 50; ++rep) {
        const auto [a, b] = random_pair(shared_rng());
        CHECK(q_curve_check(a, b, grid) <= 1e-10);
    }
}

TEST_CASE("coefficients stay in the unit interval for random wirings") {
    std::mt19937_64 rng(10101);
    for (int rep = 0; rep < 1000; ++rep) {
        const auto [a, b] = random_pair(rng);
        const QuadCoeffs c = kernel_quad_coeffs(a, b);
        for (double q : {c.q00, c.q01, c.q10, c.q11}) {
            CHECK(q >= 0.0);
            CHECK(q <= 1.0);
        }
    }
}

TEST_CASE("kernel coefficients equal the explicit composition path") {
    std::mt19937_64 rng(90210);
    const auto [fa, fb] = figure2_wiring();
    auto check_pair = [](const WiringBehavior& a, const WiringBehavior& b) {
        const QuadCoeffs lhs = kernel_quad_coeffs(a, b);
        const QuadCoeffs rhs = extract_quad_coeffs(a, b);
        CHECK(lhs.q00 == doctest::Approx(rhs.q00).epsilon(1e-12));
        CHECK(lhs.q01 == doctest::Approx(rhs.q01).epsilon(1e-12));
        CHECK(lhs.q10 == doctest::Approx(rhs.q10).epsilon(1e-12));
        CHECK(lhs.q11 == doctest::Approx(rhs.q11).epsilon(1e-12));
    };
    check_pair(behavior_of(fa), behavior_of(fb));
    for (int rep = 0; rep < 200; ++rep) {
        const auto [a, b] = random_pair(rng);
        check_pair(a, b);
    }
}

TEST_CASE("effective box is linear in each slot") {
    std::mt19937_64 rng(31337);
    for (int rep = 0; rep < 25; ++rep) {
        const auto [wa, wb] = random_pair(rng);
        const double lam = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const BoxDistribution u = boxworld::noisy_pr(0.2), v = boxworld::noisy_pr(0.9);
        BoxDistribution mix;
        for (int i = 0; i < 16; ++i) mix.table[i] = lam * u.table[i] + (1.0 - lam) * v.table[i];
        const BoxDistribution other = boxworld::noisy_pr(0.4);

        for (int slot = 0; slot < 2; ++slot) {
            const BoxDistribution lhs = slot == 0 ? effective_box(wa, wb, mix, other)
                                                  : effective_box(wa, wb, other, mix);
            const BoxDistribution eu = slot == 0 ? effective_box(wa, wb, u, other)
                                                 : effective_box(wa, wb, other, u);
            const BoxDistribution ev = slot == 0 ? effective_box(wa, wb, v, other)
                                                 : effective_box(wa, wb, other, v);
            BoxDistribution rhs;
            for (int i = 0; i < 16; ++i)
                rhs.table[i] = lam * eu.table[i] + (1.0 - lam) * ev.table[i];
            CHECK(boxworld::max_abs_diff(lhs, rhs) <= 1e-12);
        }
    }
}

TEST_CASE("shared randomness mixes the quadratics convexly") {
    std::mt19937_64 rng(246810);
    for (int rep = 0; rep < 20; ++rep) {
        const auto [ua, ub] = random_pair(rng);
        const auto [va, vb] = random_pair(rng);
        const double lam = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        for (double p : {0.1, 0.5, 0.8, 1.0}) {
            const BoxDistribution in = boxworld::noisy_pr(p);
            const BoxDistribution eu = effective_box(ua, ub, in, in);
            const BoxDistribution ev = effective_box(va, vb, in, in);
            BoxDistribution mix;
            for (int i = 0; i < 16; ++i)
                mix.table[i] = lam * eu.table[i] + (1.0 - lam) * ev.table[i];
            const double q_mix = boxworld::pr_weight(boxworld::box_twirl(mix));
            const double q_split =
                lam * quad_value(extract_quad_coeffs(ua, ub), p) +
                (1.0 - lam) * quad_value(extract_quad_coeffs(va, vb), p);
            CHECK(std::abs(q_mix - q_split) <= 1e-12);
        }
    }
}

TEST_CASE("wirings preserve separability at the threshold") {
    std::mt19937_64 rng(112358);
    const BoxDistribution boundary = boxworld::noisy_pr(0.75);
    for (int rep = 0; rep < 100; ++rep) {
        const auto [a, b] = random_pair(rng);
        const BoxDistribution twirled = boxworld::box_twirl(effective_box(a, b, boundary, boundary));
        CHECK(boxworld::pr_weight(twirled) <= 0.75 + 1e-12);
        CHECK(boxworld::lhv_membership(twirled).feasible);
    }
}

}  // TEST_SUITE
