#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "zetaline/common.hpp"
#include "zetaline/parallel.hpp"
#include "zetaline/zeta.hpp"

namespace zetaline {

enum class TableSource { computed, ingested, merged };

/// Ordered zero ordinates over a height range (range_lo, range_hi].
///
/// `complete` means the count passed the Riemann-von Mangoldt check; only
/// tables scanned (or merged) from height 0 can earn it. first_index is
/// the global index of the first ordinate (1 for tables starting at 0,
/// a main-term estimate otherwise).
struct ZeroTable {
    double range_lo = 0.0;
    double range_hi = 0.0;
    std::vector<double> ordinates;
    std::uint64_t first_index = 1;
    bool complete = false;
    TableSource source = TableSource::computed;

    std::int64_t count_below(double t) const {
        return std::upper_bound(ordinates.begin(), ordinates.end(), t) -
               ordinates.begin();
    }

    bool covers_from_zero(double t) const {
        return complete && range_lo == 0.0 && range_hi >= t;
    }

    void validate() const {
        detail::require(range_lo >= 0.0 && range_hi > range_lo,
                        "ZeroTable: invalid range");
        for (std::size_t i = 0; i < ordinates.size(); ++i) {
            detail::require(
                ordinates[i] > range_lo && ordinates[i] <= range_hi,
                "ZeroTable: ordinate outside (range_lo, range_hi]");
            if (i > 0) {
                detail::require(ordinates[i] > ordinates[i - 1],
                                "ZeroTable: ordinates not strictly increasing");
                detail::require(ordinates[i] - ordinates[i - 1] < 10.0,
                                "ZeroTable: consecutive gap >= 10");
            }
        }
    }

    /// Restriction to (lo, hi]. Keeps completeness only when the lower
    /// edge is preserved.
    ZeroTable slice(double lo, double hi) const {
        detail::require(lo >= range_lo && hi <= range_hi && lo < hi,
                        "ZeroTable::slice: window outside table range");
        ZeroTable out;
        out.range_lo = lo;
        out.range_hi = hi;
        auto first = std::upper_bound(ordinates.begin(), ordinates.end(), lo);
        auto last = std::upper_bound(ordinates.begin(), ordinates.end(), hi);
        out.ordinates.assign(first, last);
        out.first_index = first_index + (first - ordinates.begin());
        out.complete = complete && lo == range_lo;
        out.source = source;
        return out;
    }
};

/// Result of the Riemann-von Mangoldt count check.
struct CompletenessReport {
    double expected_count = 0.0;  // smooth main term + 7/8 at range_hi
    std::int64_t found_count = 0;
    double max_abs_s = 0.0;  // largest |S| observed at zeros and at T
    int refined_passes = 1;
    bool passed = false;
};

/// Smooth part of the zero-counting function:
/// (T/2pi) log(T/2pi) - T/2pi + 7/8.
inline double count_main_term(double T) {
    detail::require(detail::finite(T) && T > 0.0,
                    "count_main_term: T must be > 0");
    const double x = T / kTwoPi;
    return x * std::log(x) - x + 0.875;
}

/// Scan grid: eight samples per mean zero gap at the top of the range.
inline double default_grid_step(double t_hi) {
    const double density = std::max(1.0, std::log(t_hi / kTwoPi));
    return kTwoPi / (8.0 * density);
}

namespace detail {

inline constexpr double kZeroTol = 1e-9;       // refinement tolerance in t
inline constexpr double kSBound = 3.0;         // completeness residual bound
inline constexpr int kMaxRefineIter = 200;

inline int sign_of(double x) { return x < 0.0 ? -1 : 1; }

// Bracket refinement: bisection (the width halves every iteration) down
// to the tolerance, then one secant interpolation inside the final
// bracket for the returned estimate.
inline double refine_bracket(double lo, double hi, double f_lo, double f_hi,
                             const EvalConfig& cfg) {
    int it = 0;
    while (hi - lo > kZeroTol) {
        if (++it > kMaxRefineIter)
            throw convergence_error("refine_zero: unresolved interval after " +
                                    std::to_string(kMaxRefineIter) +
                                    " bisections");
        const double m = 0.5 * (lo + hi);
        if (m <= lo || m >= hi) break;  // hit float resolution
        const double f_m = z_function(m, cfg).z;
        if (sign_of(f_m) != sign_of(f_lo)) {
            hi = m;
            f_hi = f_m;
        } else {
            lo = m;
            f_lo = f_m;
        }
    }
    if (f_hi == f_lo) return 0.5 * (lo + hi);
    const double c = hi - f_hi * (hi - lo) / (f_hi - f_lo);
    return std::min(std::max(c, lo), hi);
}

// Same-sign interval handler: probes the center and keeps splitting while
// the values show a dip (interior value below both edges) or an edge sits
// very close to zero. Catches zero pairs down to ~step/64; anything finer
// is left to the completeness-check rescan at step/4.
inline void probe_dip(double u, double v, double f_u, double f_v,
                      const EvalConfig& cfg, int depth,
                      std::vector<double>& out) {
    const double q = 0.5 * (u + v);
    const double f_q = z_function(q, cfg).z;
    if (sign_of(f_q) != sign_of(f_u)) {
        out.push_back(refine_bracket(u, q, f_u, f_q, cfg));
        out.push_back(refine_bracket(q, v, f_q, f_v, cfg));
        return;
    }
    if (depth <= 0) return;
    const double dip = std::min(std::abs(f_u), std::abs(f_v));
    if (std::abs(f_q) < dip) {  // genuine dip: pursue both sides
        probe_dip(u, q, f_u, f_q, cfg, depth - 1, out);
        probe_dip(q, v, f_q, f_v, cfg, depth - 1, out);
        return;
    }
    // monotone pattern; keep looking only right next to a tiny edge value
    if (std::min(std::abs(f_u), std::abs(f_q)) < 0.35)
        probe_dip(u, q, f_u, f_q, cfg, depth - 1, out);
    if (std::min(std::abs(f_q), std::abs(f_v)) < 0.35)
        probe_dip(q, v, f_q, f_v, cfg, depth - 1, out);
}

// Half of a sign-change cell: either the half carrying the crossing or
// the one that may still hide an extra pair next to it.
inline void scan_half(double u, double v, double f_u, double f_v,
                      const EvalConfig& cfg, std::vector<double>& out) {
    if (sign_of(f_u) != sign_of(f_v)) {
        out.push_back(refine_bracket(u, v, f_u, f_v, cfg));
        return;
    }
    if (std::min(std::abs(f_u), std::abs(f_v)) < 1.5)
        probe_dip(u, v, f_u, f_v, cfg, 4, out);
}

// Cell handler: refine a straight sign change; otherwise run the dip
// probe when the edge values are small enough that zeros could hide
// inside (|Z'| stays in the low tens at desk heights, so larger edge
// values cannot reach zero within a cell).
inline void scan_cell(double a, double b, double f_a, double f_b,
                      const EvalConfig& cfg, std::vector<double>& out) {
    if (sign_of(f_a) != sign_of(f_b)) {
        const double m = 0.5 * (a + b);
        const double f_m = z_function(m, cfg).z;
        scan_half(a, m, f_a, f_m, cfg, out);
        scan_half(m, b, f_m, f_b, cfg, out);
        return;
    }
    if (std::min(std::abs(f_a), std::abs(f_b)) < 4.0)
        probe_dip(a, b, f_a, f_b, cfg, 5, out);
}

inline std::vector<double> scan_pass(double t_lo, double t_hi,
                                     const EvalConfig& cfg, double step,
                                     int jobs) {
    // Grid anchored at integer multiples of step so that subrange scans
    // and the full scan see identical cells.
    const std::int64_t i0 = static_cast<std::int64_t>(std::floor(t_lo / step));
    const std::int64_t i1 = static_cast<std::int64_t>(std::ceil(t_hi / step));
    const std::int64_t n_cells = i1 - i0;
    if (n_cells <= 0) return {};

    constexpr std::int64_t kChunk = 4096;
    const std::int64_t n_chunks = (n_cells + kChunk - 1) / kChunk;
    std::vector<std::vector<double>> found(n_chunks);

    run_chunks(n_chunks, jobs, [&](std::int64_t ci) {
        const std::int64_t lo_cell = i0 + ci * kChunk;
        const std::int64_t hi_cell = std::min(i1, lo_cell + kChunk);
        auto grid_point = [&](std::int64_t i) {
            return std::min(std::max(static_cast<double>(i) * step, t_lo),
                            t_hi);
        };
        double a = grid_point(lo_cell);
        double f_a = z_function(a, cfg).z;
        for (std::int64_t i = lo_cell; i < hi_cell; ++i) {
            const double b = grid_point(i + 1);
            if (b <= a) continue;  // clamped-away cell at the edges
            const double f_b = z_function(b, cfg).z;
            scan_cell(a, b, f_a, f_b, cfg, found[ci]);
            a = b;
            f_a = f_b;
        }
    });

    std::vector<double> zeros;
    for (auto& part : found)
        zeros.insert(zeros.end(), part.begin(), part.end());
    // zeros arrive ordered; drop duplicates from brackets that met at a
    // shared endpoint
    std::vector<double> unique;
    for (double g : zeros)
        if (unique.empty() || g - unique.back() > kZeroTol) unique.push_back(g);
    return unique;
}

}  // namespace detail

/// Refines a sign-change bracket of Z to an ordinate within 1e-9.
inline double refine_zero(double lo, double hi, const EvalConfig& cfg = {}) {
    cfg.validate();
    detail::require(detail::finite(lo) && detail::finite(hi) && lo < hi,
                    "refine_zero: need lo < hi");
    detail::require(lo >= 0.0, "refine_zero: bracket must be nonnegative");
    const double f_lo = z_function(lo, cfg).z;
    const double f_hi = z_function(hi, cfg).z;
    detail::require(f_lo * f_hi < 0.0,
                    "refine_zero: invalid bracket, Z does not change sign");
    return detail::refine_bracket(lo, hi, f_lo, f_hi, cfg);
}

/// Count check against the smooth main term. Requires a table anchored at
/// height 0. Passes when |found - expected| <= 3.
inline CompletenessReport verify_completeness(const ZeroTable& table,
                                              int refined_passes = 1) {
    detail::require(table.range_lo == 0.0,
                    "verify_completeness: table must start at height 0");
    CompletenessReport rep;
    rep.refined_passes = std::max(1, refined_passes);
    rep.expected_count = count_main_term(table.range_hi);
    rep.found_count = static_cast<std::int64_t>(table.ordinates.size());
    double max_s = std::abs(rep.found_count - rep.expected_count);
    for (std::size_t i = 0; i < table.ordinates.size(); ++i) {
        const double main = count_main_term(table.ordinates[i]);
        const double n = static_cast<double>(i + 1);
        max_s = std::max(max_s, std::abs(n - main));        // S just after
        max_s = std::max(max_s, std::abs(n - 1.0 - main));  // S just before
    }
    rep.max_abs_s = max_s;
    rep.passed =
        std::abs(rep.found_count - rep.expected_count) <= detail::kSBound;
    return rep;
}

/// Locates all zeros in (t_lo, t_hi] by grid sign changes plus bracket
/// refinement. Tables anchored at 0 are rescanned at step/4 (up to three
/// passes total) until the completeness check passes.
inline ZeroTable scan_zeros(double t_lo, double t_hi,
                            const EvalConfig& cfg = {}, double grid_step = 0.0,
                            int jobs = 1) {
    cfg.validate();
    detail::require(detail::finite(t_lo) && detail::finite(t_hi) &&
                        t_lo >= 0.0 && t_lo < t_hi,
                    "scan_zeros: need 0 <= t_lo < t_hi");
    detail::require(grid_step >= 0.0, "scan_zeros: grid_step must be > 0");
    if (grid_step == 0.0) grid_step = default_grid_step(t_hi);

    ZeroTable table;
    table.range_lo = t_lo;
    table.range_hi = t_hi;
    table.source = TableSource::computed;

    double step = grid_step;
    const int max_passes = 3;
    for (int pass = 1; pass <= max_passes; ++pass) {
        table.ordinates = detail::scan_pass(t_lo, t_hi, cfg, step, jobs);
        if (t_lo != 0.0) break;  // no absolute count to check against
        table.first_index = 1;
        const CompletenessReport rep = verify_completeness(table, pass);
        if (rep.passed) {
            table.complete = true;
            break;
        }
        // three failed passes leave the table marked incomplete
        step *= 0.25;
    }
    if (t_lo != 0.0) {
        // estimated global index; exact once merged with a from-zero table
        table.first_index = static_cast<std::uint64_t>(
            std::llround(count_main_term(t_lo))) + 1;
    }
    table.validate();
    return table;
}

/// S(T) = N(T) - main term, from a complete table covering (0, T].
inline double s_value(double T, const ZeroTable& table) {
    detail::require(T > 0.0, "s_value: T must be > 0");
    detail::require(table.covers_from_zero(T),
                    "s_value: incomplete table over (0, T]");
    return static_cast<double>(table.count_below(T)) - count_main_term(T);
}

/// Ordered union of two overlapping (or touching) tables; ordinates equal
/// within tol are deduplicated.
inline ZeroTable merge_tables(const ZeroTable& a, const ZeroTable& b,
                              double tol = 1e-8) {
    const ZeroTable& lo = a.range_lo <= b.range_lo ? a : b;
    const ZeroTable& hi = a.range_lo <= b.range_lo ? b : a;
    detail::require(hi.range_lo <= lo.range_hi,
                    "merge_tables: ranges neither overlap nor touch");
    ZeroTable out;
    out.range_lo = lo.range_lo;
    out.range_hi = std::max(lo.range_hi, hi.range_hi);
    out.first_index = lo.first_index;
    out.source = TableSource::merged;
    out.complete = lo.complete && hi.complete;

    std::vector<double> merged;
    merged.reserve(lo.ordinates.size() + hi.ordinates.size());
    std::merge(lo.ordinates.begin(), lo.ordinates.end(), hi.ordinates.begin(),
               hi.ordinates.end(), std::back_inserter(merged));
    for (double g : merged)
        if (out.ordinates.empty() || g - out.ordinates.back() > tol)
            out.ordinates.push_back(g);
    out.validate();
    return out;
}

}  // namespace zetaline
