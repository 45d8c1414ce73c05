#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "twocopy/wirings.hpp"

namespace twocopy::wirings {

/// Exact rational gap value with the wiring pair attaining it. Gaps produced
/// by the search are ratios of small integers, so an int64 fraction is exact.
struct GapValue {
    long long num = 0;
    long long den = 0;  // den == 0 means "unset"
    std::uint32_t witness_a = 0;  // wiring encodings (class representatives)
    std::uint32_t witness_b = 0;

    bool set() const { return den != 0; }
    double value() const { return set() ? static_cast<double>(num) / static_cast<double>(den) : 0.0; }

    /// Strict total order: larger gap wins; ties broken toward the
    /// lexicographically smallest witness pair. Makes the parallel reduction
    /// order-independent.
    bool better_than(const GapValue& o) const;
    void merge(const GapValue& o);
};

struct SearchOptions {
    /// Purity grid; all points must lie in (3/4, 1]. Recorded in the report.
    /// The per-pair maximum of Q(p) - p is computed in closed form over the
    /// whole interval (endpoints plus the quadratic's vertex), so the grid's
    /// resolution cannot hide a violation. Empty selects the default
    /// 101-point grid spanning (3/4, 1].
    std::vector<double> grid;
    int workers = 1;
    std::string checkpoint_path;        // empty disables checkpointing
    std::uint32_t class_limit = 0;      // restrict both parties to the first N behavior classes (0 = all)
    std::uint32_t max_blocks = 0;       // stop after computing N new blocks (0 = run to completion)
    std::uint32_t checkpoint_every = 32;  // completed blocks between checkpoint writes
};

struct SearchReport {
    std::uint32_t schema_version = 1;
    std::uint32_t deduped_party_count = 0;
    std::uint64_t total_pairs = 0;      // deduped_party_count^2 (or class_limit^2)
    std::uint64_t pairs_scanned = 0;
    bool complete = false;

    /// sup over p in (3/4, 1] of Q(p) - p, maximized over all wiring pairs.
    /// Computed as the closed-interval maximum (the limit toward 3/4 is the
    /// supremum contribution of the open endpoint). <= 0 certifies that no
    /// deterministic local wiring purifies.
    GapValue max_gap;
    /// Q(3/4) - 3/4 maximized over pairs: the open-boundary limit, reported
    /// distinctly. Equality with 0 here is not a purification.
    GapValue boundary_gap;
    /// sup restricted to points attained strictly inside (3/4, 1]
    /// (the interval's right endpoint and interior vertex maxima).
    GapValue interior_gap;

    std::vector<double> grid;
    std::uint32_t blocks_total = 0;
    std::uint32_t blocks_done = 0;
    double elapsed_seconds = 0.0;  // console metadata; never serialized
};

/// Exhaustive scan of all deduped behavior pairs. Deterministic for a given
/// grid and class limit regardless of worker count; resumable from the JSON
/// checkpoint file, and a resumed run reproduces the uninterrupted report
/// bit-identically.
SearchReport search_all_wirings(const SearchOptions& opts = {});

/// Stable serialization (no timing fields), with gaps as exact fractions and
/// wiring encodings as 32-bit hex strings.
std::string report_to_json(const SearchReport& r);

std::vector<double> default_search_grid(int points = 101);

/// QuadCoeffs via the integer counting kernel the search runs on; exact
/// multiples of 1/16 and equal to extract_quad_coeffs (tested, not assumed).
QuadCoeffs kernel_quad_coeffs(const WiringBehavior& wa, const WiringBehavior& wb);

}  // namespace twocopy::wirings
