#include "twocopy/wirings.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace twocopy::wirings {

namespace {

std::uint8_t encode_sub(const SubWiring& s) {
    return static_cast<std::uint8_t>((s.box2_first ? 1 : 0) | (s.first_input & 1) << 1 |
                                     (s.second_input_fn & 3) << 2 | (s.output_fn & 15) << 4);
}

SubWiring decode_sub(std::uint8_t e) {
    SubWiring s;
    s.box2_first = e & 1;
    s.first_input = (e >> 1) & 1;
    s.second_input_fn = (e >> 2) & 3;
    s.output_fn = (e >> 4) & 15;
    return s;
}

}  // namespace

std::uint32_t encode(const PartyWiring& w) {
    return encode_sub(w.sub[0]) | static_cast<std::uint32_t>(encode_sub(w.sub[1])) << 8;
}

PartyWiring decode(std::uint32_t enc) {
    if (enc >= kWiringCount) throw std::invalid_argument("wiring encoding out of range");
    PartyWiring w;
    w.sub[0] = decode_sub(enc & 0xff);
    w.sub[1] = decode_sub((enc >> 8) & 0xff);
    return w;
}

std::vector<PartyWiring> enumerate_party_wirings() {
    std::vector<PartyWiring> ws;
    ws.reserve(kWiringCount);
    for (std::uint32_t e = 0; e < kWiringCount; ++e) ws.push_back(decode(e));
    return ws;
}

WiringBehavior behavior_of(const PartyWiring& w) {
    WiringBehavior b;
    for (int x = 0; x < 2; ++x) {
        const SubWiring& s = w.sub[x];
        for (int o1 = 0; o1 < 2; ++o1)
            for (int o2 = 0; o2 < 2; ++o2) {
                const int idx = o1 * 2 + o2;
                if (!s.box2_first) {
                    b.in1[x][idx] = static_cast<std::uint8_t>(s.first_input);
                    b.in2[x][idx] = static_cast<std::uint8_t>((s.second_input_fn >> o1) & 1);
                } else {
                    b.in2[x][idx] = static_cast<std::uint8_t>(s.first_input);
                    b.in1[x][idx] = static_cast<std::uint8_t>((s.second_input_fn >> o2) & 1);
                }
                b.out[x][idx] = static_cast<std::uint8_t>((s.output_fn >> idx) & 1);
            }
    }
    return b;
}

std::uint32_t WiringBehavior::key() const {
    std::uint32_t k = 0;
    int shift = 0;
    for (int x = 0; x < 2; ++x)
        for (int idx = 0; idx < 4; ++idx) {
            k |= static_cast<std::uint32_t>(in1[x][idx] << 2 | in2[x][idx] << 1 | out[x][idx])
                 << shift;
            shift += 3;
        }
    return k;
}

BehaviorSet dedupe_behaviors(const std::vector<PartyWiring>& wirings) {
    BehaviorSet set;
    std::unordered_map<std::uint32_t, std::size_t> seen;
    seen.reserve(wirings.size());
    for (const PartyWiring& w : wirings) {
        const WiringBehavior b = behavior_of(w);
        if (seen.emplace(b.key(), set.classes.size()).second) {
            set.classes.push_back(b);
            set.representative.push_back(encode(w));
        }
    }
    return set;
}

BoxDistribution effective_box(const WiringBehavior& wa, const WiringBehavior& wb,
                              const BoxDistribution& box1, const BoxDistribution& box2) {
    boxworld::validate(box1);
    boxworld::validate(box2);

    BoxDistribution out;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            for (int a1 = 0; a1 < 2; ++a1)
                for (int a2 = 0; a2 < 2; ++a2)
                    for (int b1 = 0; b1 < 2; ++b1)
                        for (int b2 = 0; b2 < 2; ++b2) {
                            const int ia = a1 * 2 + a2, ib = b1 * 2 + b2;
                            const double p1 = box1.at(wa.in1[x][ia], wb.in1[y][ib], a1, b1);
                            const double p2 = box2.at(wa.in2[x][ia], wb.in2[y][ib], a2, b2);
                            out.at(x, y, wa.out[x][ia], wb.out[y][ib]) += p1 * p2;
                        }
            double sum = 0.0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) sum += out.at(x, y, a, b);
            if (std::abs(sum - 1.0) > boxworld::EPS_BOX_SUM)
                throw std::runtime_error(
                    "effective_box: composition not normalized (signalling inputs?)");
        }
    return out;
}

QuadCoeffs extract_quad_coeffs(const WiringBehavior& wa, const WiringBehavior& wb) {
    const BoxDistribution s0 = boxworld::pr_box();
    const BoxDistribution s1 = boxworld::anti_pr_box();
    auto q = [&](const BoxDistribution& bi, const BoxDistribution& bj) {
        return boxworld::pr_weight(boxworld::box_twirl(effective_box(wa, wb, bi, bj)));
    };
    return QuadCoeffs{q(s0, s0), q(s0, s1), q(s1, s0), q(s1, s1)};
}

double quad_value(const QuadCoeffs& c, double p) {
    return p * p * c.q00 + p * (1.0 - p) * (c.q01 + c.q10) + (1.0 - p) * (1.0 - p) * c.q11;
}

double q_curve_check(const WiringBehavior& wa, const WiringBehavior& wb,
                     std::span<const double> samples) {
    const QuadCoeffs c = extract_quad_coeffs(wa, wb);
    double worst = 0.0;
    for (double p : samples) {
        const BoxDistribution noisy = boxworld::noisy_pr(p);
        const double measured =
            boxworld::pr_weight(boxworld::box_twirl(effective_box(wa, wb, noisy, noisy)));
        worst = std::max(worst, std::abs(measured - quad_value(c, p)));
    }
    return worst;
}

std::pair<PartyWiring, PartyWiring> figure2_wiring() {
    constexpr int kIdentityFn = 0b10;  // second box gets the first box's output
    constexpr int kXor = 0b0110;
    constexpr int kXnor = 0b1001;
    PartyWiring alice, bob;
    for (int x = 0; x < 2; ++x) {
        alice.sub[x] = SubWiring{false, x, kIdentityFn, kXor};
        bob.sub[x] = SubWiring{false, x, kIdentityFn, kXnor};  // NOT gate after the XOR
    }
    return {alice, bob};
}

}  // namespace twocopy::wirings
