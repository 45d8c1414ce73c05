#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "twocopy/boxworld.hpp"

namespace twocopy::wirings {

using boxworld::BoxDistribution;

/// One party's strategy for a single value of its external input bit:
/// consume the two boxes in some order, feed a fixed bit to the first box,
/// choose the second box's input as a function of the first box's output,
/// and produce the final output from both box outputs.
struct SubWiring {
    bool box2_first = false;   // consumption order
    int first_input = 0;       // bit fed to the first-consumed box
    int second_input_fn = 0;   // 2-bit truth table over the first box's output
    int output_fn = 0;         // 4-bit truth table over (o1,o2), bit index o1*2+o2
                               // (o1, o2 are the outputs of box 1 and box 2 by label)
};

/// Deterministic adaptive wiring of two boxes; one SubWiring per external input.
struct PartyWiring {
    std::array<SubWiring, 2> sub{};
};

inline constexpr std::uint32_t kWiringCount = 65536;  // 256 sub-strategies per input bit

/// Packs 8 bits per input bit: [0]=order, [1]=first_input, [2:3]=second_input_fn,
/// [4:7]=output_fn; input bit 0 in the low byte. Encodings 0..65535 are all valid.
std::uint32_t encode(const PartyWiring& w);
PartyWiring decode(std::uint32_t enc);

std::vector<PartyWiring> enumerate_party_wirings();

/// What a wiring does, tabulated: induced box inputs and final output per
/// external input x and per box-outcome pair (o1,o2). Wirings with equal
/// behavior produce identical effective boxes for every pair of box states,
/// so this is the dedup key for the search.
struct WiringBehavior {
    std::array<std::array<std::uint8_t, 4>, 2> in1{};  // [x][o1*2+o2] -> input to box 1
    std::array<std::array<std::uint8_t, 4>, 2> in2{};  // [x][o1*2+o2] -> input to box 2
    std::array<std::array<std::uint8_t, 4>, 2> out{};  // [x][o1*2+o2] -> final output

    std::uint32_t key() const;  // canonical 24-bit packing
    bool operator==(const WiringBehavior&) const = default;
};

WiringBehavior behavior_of(const PartyWiring& w);

struct BehaviorSet {
    std::vector<WiringBehavior> classes;        // in first-encounter order
    std::vector<std::uint32_t> representative;  // smallest wiring encoding per class
};

/// Distinct behaviors among the given wirings. Enumerating all 65536 wirings
/// yields 36864 classes (the consumption order is unobservable whenever the
/// second box's input ignores the first box's output).
BehaviorSet dedupe_behaviors(const std::vector<PartyWiring>& wirings);

/// Composition of two bipartite boxes under local wirings: for each (x,y),
/// sum over the 16 outcome quadruples of box1(a1 b1|x1 y1) * box2(a2 b2|x2 y2),
/// with each party's box inputs read off its behavior table at its own outcome
/// pair. Requires non-signalling inputs for the composition to be well posed;
/// throws std::runtime_error if the result fails normalization.
BoxDistribution effective_box(const WiringBehavior& wa, const WiringBehavior& wb,
                              const BoxDistribution& box1, const BoxDistribution& box2);

/// The four purities of the twirled wiring map on PR/anti-PR basis pairs.
struct QuadCoeffs {
    double q00 = 0, q01 = 0, q10 = 0, q11 = 0;
};

/// q_ij = pr_weight(box_twirl(effective_box(wa, wb, s_i, s_j))) with
/// s_0 = pr_box, s_1 = anti_pr_box. Every q_ij is a multiple of 1/16.
QuadCoeffs extract_quad_coeffs(const WiringBehavior& wa, const WiringBehavior& wb);

/// Output purity of the twirled wiring map on two copies of noisy_pr(p),
/// evaluated from the coefficients: p^2 q00 + p(1-p)(q01+q10) + (1-p)^2 q11.
double quad_value(const QuadCoeffs& c, double p);

/// Max over the samples of |pr_weight(box_twirl(effective_box(noisy_pr(p)^2)))
/// - quad_value(p)|: the executable witness that the wiring map is quadratic
/// in the family parameter.
double q_curve_check(const WiringBehavior& wa, const WiringBehavior& wb,
                     std::span<const double> samples);

/// A natural (but unsuccessful) purification attempt, kept as a documented
/// example: both parties consume box 1 first feeding it the external input,
/// route its output into box 2's input, and combine the two outputs by XOR,
/// with a NOT gate on one party's output stage. Hand-computed coefficients:
/// (3/8, 5/8, 7/8, 1/8).
std::pair<PartyWiring, PartyWiring> figure2_wiring();

}  // namespace twocopy::wirings
