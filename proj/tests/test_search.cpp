#include <doctest.h>

#include <stdexcept>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "twocopy/search.hpp"

using namespace twocopy::wirings;
namespace boxworld = twocopy::boxworld;

namespace {

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_SUITE("search") {

TEST_CASE("default grid spans the open-left interval") {
    const auto g = default_search_grid();
    REQUIRE(g.size() == 101);
    for (double p : g) {
        CHECK(p > 0.75);
        CHECK(p <= 1.0);
    }
    CHECK(g.back() == 1.0);
}

TEST_CASE("grid outside the interval is rejected") {
    SearchOptions opts;
    opts.grid = {0.75, 0.9};  // 0.75 itself is excluded
    CHECK_THROWS_AS(search_all_wirings(opts), std::invalid_argument);
    opts.grid = {0.9, 1.0 + 1e-9};
    CHECK_THROWS_AS(search_all_wirings(opts), std::invalid_argument);
}

TEST_CASE("restricted scan over the first classes finds no purification") {
    SearchOptions opts;
    opts.class_limit = 100;
    const SearchReport rep = search_all_wirings(opts);
    CHECK(rep.complete);
    CHECK(rep.deduped_party_count == 36864);
    CHECK(rep.total_pairs == 10000);
    CHECK(rep.pairs_scanned == 10000);
    CHECK(rep.max_gap.value() <= 0.0);
    CHECK(rep.boundary_gap.value() <= 0.0);
    CHECK(rep.interior_gap.value() <= 0.0);
    // the constant-output wiring pins the boundary limit at exactly zero
    CHECK(rep.max_gap.num == 0);
    CHECK(rep.max_gap.witness_a == 0);
    CHECK(rep.max_gap.witness_b == 0);
}

TEST_CASE("reports are deterministic across worker counts") {
    SearchOptions one;
    one.class_limit = 300;
    one.workers = 1;
    SearchOptions two = one;
    two.workers = 2;
    const std::string ja = report_to_json(search_all_wirings(one));
    const std::string jb = report_to_json(search_all_wirings(two));
    CHECK(ja == jb);
}

TEST_CASE("checkpoint resume reproduces the uninterrupted report") {
    const auto path = temp_file("twocopy_search_ckpt_test.json");
    std::filesystem::remove(path);

    SearchOptions base;
    base.class_limit = 300;  // 5 blocks
    base.workers = 2;

    const std::string fresh = report_to_json(search_all_wirings(base));

    SearchOptions partial = base;
    partial.checkpoint_path = path.string();
    partial.max_blocks = 2;
    partial.checkpoint_every = 1;
    const SearchReport mid = search_all_wirings(partial);
    CHECK(!mid.complete);
    CHECK(mid.blocks_done == 2);
    CHECK(std::filesystem::exists(path));

    SearchOptions resume = base;
    resume.checkpoint_path = path.string();
    const SearchReport done = search_all_wirings(resume);
    CHECK(done.complete);
    CHECK(report_to_json(done) == fresh);
    std::filesystem::remove(path);
}

TEST_CASE("corrupt checkpoints are rejected loudly") {
    const auto path = temp_file("twocopy_search_ckpt_bad.json");
    {
        std::ofstream out(path);
        out << "{ this is not json";
    }
    SearchOptions opts;
    opts.class_limit = 128;
    opts.checkpoint_path = path.string();
    CHECK_THROWS_AS(search_all_wirings(opts), std::runtime_error);
    std::filesystem::remove(path);
}

TEST_CASE("checkpoints from a different configuration are rejected") {
    const auto path = temp_file("twocopy_search_ckpt_mismatch.json");
    std::filesystem::remove(path);
    SearchOptions first;
    first.class_limit = 128;
    first.checkpoint_path = path.string();
    first.max_blocks = 1;
    search_all_wirings(first);

    SearchOptions other = first;
    other.class_limit = 192;
    CHECK_THROWS_AS(search_all_wirings(other), std::runtime_error);
    std::filesystem::remove(path);
}

TEST_CASE("kernel coefficients match the composition path on a systematic slice") {
    const auto set = dedupe_behaviors(enumerate_party_wirings());
    for (std::size_t i = 0; i < 40; ++i)
        for (std::size_t j = 0; j < 40; ++j) {
            const QuadCoeffs fast = kernel_quad_coeffs(set.classes[i], set.classes[j]);
            const QuadCoeffs slow = extract_quad_coeffs(set.classes[i], set.classes[j]);
            CHECK(fast.q00 == doctest::Approx(slow.q00).epsilon(1e-12));
            CHECK(fast.q01 == doctest::Approx(slow.q01).epsilon(1e-12));
            CHECK(fast.q10 == doctest::Approx(slow.q10).epsilon(1e-12));
            CHECK(fast.q11 == doctest::Approx(slow.q11).epsilon(1e-12));
        }
}

TEST_CASE("the maximally mixed point maps to Q(1/2), not necessarily to 1/2") {
    // output-constant wirings leave the twirled image at 3/4 even on the
    // maximally mixed input, so the fixed-point expectation holds only as
    // agreement with the quadratic
    const auto mixed = boxworld::noisy_pr(0.5);
    std::mt19937_64 rng(2468);
    for (int rep = 0; rep < 30; ++rep) {
        const auto wa = behavior_of(decode(static_cast<std::uint32_t>(rng() % kWiringCount)));
        const auto wb = behavior_of(decode(static_cast<std::uint32_t>(rng() % kWiringCount)));
        const double measured =
            boxworld::pr_weight(boxworld::box_twirl(effective_box(wa, wb, mixed, mixed)));
        CHECK(measured == doctest::Approx(quad_value(kernel_quad_coeffs(wa, wb), 0.5))
                              .epsilon(1e-12));
    }
    const auto cz = behavior_of(decode(0));
    CHECK(boxworld::pr_weight(boxworld::box_twirl(effective_box(cz, cz, mixed, mixed))) ==
          doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("gap merge is an order-independent total order") {
    const GapValue a{0, 256, 0, 0};
    const GapValue b{-4, 16, 5, 7};
    const GapValue c{0, 16, 3, 1};  // equal value to a, later witness
    GapValue m1 = a;
    m1.merge(b);
    m1.merge(c);
    GapValue m2 = c;
    m2.merge(a);
    m2.merge(b);
    CHECK(m1.num * m2.den == m2.num * m1.den);
    CHECK(m1.witness_a == m2.witness_a);
    CHECK(m1.witness_b == m2.witness_b);
    CHECK(m1.witness_a == 0);  // smallest witness wins ties
}

TEST_CASE("report json carries the stable fields") {
    SearchOptions opts;
    opts.class_limit = 64;
    const std::string j = report_to_json(search_all_wirings(opts));
    CHECK(j.find("\"schema_version\"") != std::string::npos);
    CHECK(j.find("\"max_gap\"") != std::string::npos);
    CHECK(j.find("\"boundary_gap\"") != std::string::npos);
    CHECK(j.find("\"interior_gap\"") != std::string::npos);
    CHECK(j.find("0x00000000") != std::string::npos);
    CHECK(j.find("elapsed") == std::string::npos);  // timing never serialized
}

}  // TEST_SUITE
