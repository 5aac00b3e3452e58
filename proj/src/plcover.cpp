#include "sparsecard/plcover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace sparsecard {

using detail::approx_le;
using detail::strictly_lt;

NextLineResult next_line(const ConcaveSeq& g, std::int64_t u, double eps) {
    const std::int64_t k = g.k();
    if (u < 0 || u > k)
        throw std::domain_error("next_line: u=" + std::to_string(u) + " outside [0,k]");
    if (eps < 0.0) throw std::domain_error("next_line: eps must be >= 0");

    if (u >= k - 1) {
        // Only 1 or 2 points left; the secant through the last two covers them.
        return {k + 1, Line::through(static_cast<double>(k - 1), g(k - 1),
                                     static_cast<double>(k), g(k))};
    }
    Line line = Line::through(static_cast<double>(u), (1.0 + eps) * g(u),
                              static_cast<double>(u + 1), g(u + 1));
    std::int64_t up = u + 2;
    while (up <= k && approx_le(line(static_cast<double>(up)), (1.0 + eps) * g(up))) {
        if (strictly_lt(line(static_cast<double>(up)), g(up))) {
            line = Line::through(static_cast<double>(u), (1.0 + eps) * g(u),
                                 static_cast<double>(up), g(up));
        }
        ++up;
    }
    return {up, line};
}

std::vector<Line> greedy_cover_lines(const ConcaveSeq& g, double eps) {
    std::vector<Line> lines;
    std::int64_t u = 0;
    while (u <= g.k()) {
        NextLineResult r = next_line(g, u, eps);
        lines.push_back(r.line);
        u = r.u_next;
    }
    return lines;
}

namespace {

// Lower envelope of a slope-sorted line collection as a PLFunction.
// Consecutive near-parallel lines (slope gap below 1e-12 * max(|m_1|,1)) are
// merged, keeping the lower of the two, so no zero-weight gadget edges can
// come out of the conversion later.
PLFunction pl_from_lines(std::vector<Line> lines, std::int64_t k) {
    if (lines.empty()) throw validation_error("pl_from_lines: empty line set");
    double slope_tol = 1e-12 * std::max(std::abs(lines.front().slope), 1.0);
    std::vector<Line> kept;
    kept.reserve(lines.size());
    for (const Line& l : lines) {
        if (!kept.empty() && std::abs(kept.back().slope - l.slope) <= slope_tol) {
            double mid = static_cast<double>(k) / 2.0;
            if (l(mid) < kept.back()(mid)) kept.back() = l;
            continue;
        }
        if (!kept.empty() && !(kept.back().slope > l.slope))
            throw std::logic_error("pl_from_lines: line slopes not decreasing");
        kept.push_back(l);
    }
    std::vector<double> slopes, breakpoints;
    slopes.reserve(kept.size());
    breakpoints.reserve(kept.size() - 1);
    for (const Line& l : kept) slopes.push_back(l.slope);
    const double kd = static_cast<double>(k);
    for (std::size_t i = 0; i + 1 < kept.size(); ++i) {
        double x = (kept[i + 1].intercept - kept[i].intercept) /
                   (kept[i].slope - kept[i + 1].slope);
        // Two lines meeting exactly at k (the flat tail of a symmetric cover
        // meets the final secant at r) can land a rounding hair above it.
        if (x > kd && x <= kd * (1.0 + 1e-12) + 1e-12) x = kd;
        breakpoints.push_back(x);
    }
    return PLFunction(k, kept.front().intercept, std::move(slopes), std::move(breakpoints));
}

}  // namespace

PLFunction greedy_pl_cover(const ConcaveSeq& g, double eps) {
    return pl_from_lines(greedy_cover_lines(g, eps), g.k());
}

PLFunction symmetric_pl_cover(const MonotoneConcaveSeq& h, double eps) {
    const std::int64_t r = h.r();
    std::vector<Line> lines = greedy_cover_lines(h.seq(), eps);
    double hr = h(r);

    if (!lines.empty() && lines.back().slope < 0.0) lines.pop_back();
    if (lines.size() >= 2 && lines.back().slope > 0.0) {
        const Line& prev = lines[lines.size() - 2];
        if (approx_le(prev(static_cast<double>(r - 1)), (1.0 + eps) * h(r - 1))) lines.pop_back();
    }
    // Any remaining trailing flat lines sit at or above h(r); the appended
    // flat piece supersedes them.
    while (!lines.empty() && std::abs(lines.back().slope) <= 1e-12 * std::max(std::abs(lines.front().slope), 1.0))
        lines.pop_back();
    lines.push_back(Line{0.0, hr});
    return pl_from_lines(std::move(lines), r);
}

std::vector<Line> tangent_log_cover(const ConcaveSeq& g, double eps) {
    const std::int64_t k = g.k();
    if (!(eps > 0.0)) throw std::domain_error("tangent_log_cover: eps must be > 0");

    std::int64_t peak = 0;
    for (std::int64_t i = 1; i <= k; ++i)
        if (g(i) > g(peak)) peak = i;

    std::vector<Line> lines;
    // Increasing side [0, peak]: base secant over {0,1}, then interpolation
    // segments at geometrically spaced anchors y, 1, (1+eps), (1+eps)^2, ...
    if (peak >= 1) {
        lines.push_back(Line::through(0.0, g(0), 1.0, g(1)));
        std::int64_t last_seg = 0;
        for (double y = 1.0; y < static_cast<double>(peak); y *= (1.0 + eps)) {
            std::int64_t i = static_cast<std::int64_t>(std::floor(y));
            i = std::min(i, k - 1);
            if (i == last_seg) continue;
            last_seg = i;
            lines.push_back(Line::through(static_cast<double>(i), g(i),
                                          static_cast<double>(i + 1), g(i + 1)));
        }
    }
    // Decreasing side [peak, k]: mirror of the same construction.
    if (peak <= k - 1) {
        auto gm = [&](std::int64_t i) { return g(k - i); };
        std::int64_t peak_m = k - peak;
        lines.push_back(Line::through(static_cast<double>(k), gm(0),
                                      static_cast<double>(k - 1), gm(1)));
        std::int64_t last_seg = -1;
        for (double y = 1.0; y < static_cast<double>(peak_m); y *= (1.0 + eps)) {
            std::int64_t i = static_cast<std::int64_t>(std::floor(y));
            i = std::min(i, k - 1);
            if (i == last_seg) continue;
            last_seg = i;
            double s = gm(i + 1) - gm(i);
            // L(x) = s*(k - x) + (gm(i) - s*i)
            lines.push_back(Line{-s, s * static_cast<double>(k) + gm(i) - s * static_cast<double>(i)});
        }
    }
    return lines;
}

std::vector<Line> clique_cover(std::int64_t k, double eps) {
    if (k < 2) throw std::domain_error("clique_cover: k must be >= 2");
    if (!(eps > 0.0)) throw std::domain_error("clique_cover: eps must be > 0");
    const double kd = static_cast<double>(k);

    std::vector<Line> lines;
    lines.push_back(Line{kd - 1.0, 0.0});
    double z = 1.0;
    for (int iter = 0;; ++iter) {
        if (iter > 100000000) throw std::logic_error("clique_cover: iteration cap hit");
        double t = z + std::sqrt(z * (kd - z) * eps);
        z = t / (1.0 + eps) + kd * eps / (2.0 * (1.0 + eps)) +
            std::sqrt(kd * kd * eps * eps + 4.0 * eps * t * (kd - t)) / (2.0 * (1.0 + eps));
        lines.push_back(Line{kd - 2.0 * t, t * t});
        if (z >= kd / 2.0) break;
    }
    return lines;
}

int min_cover_oracle(const ConcaveSeq& g, double eps) {
    const std::int64_t k = g.k();
    if (k > 2000)
        throw size_error("min_cover_oracle: k=" + std::to_string(k) + " exceeds guard 2000");
    if (eps < 0.0) throw std::domain_error("min_cover_oracle: eps must be >= 0");

    // Canonical candidates: per u < k the minimum-slope line through
    // {u, (1+eps)g(u)} that still upper-bounds all points (the binding
    // constraint is the max slope to a point on the right; concavity makes
    // the left-side constraints slack), plus the two boundary secants. Any
    // cover can be exchanged line-by-line into this set without losing reach.
    std::vector<Line> candidates;
    candidates.reserve(static_cast<std::size_t>(k) + 2);
    for (std::int64_t u = 0; u < k; ++u) {
        double gu = (1.0 + eps) * g(u);
        double slope = -std::numeric_limits<double>::infinity();
        for (std::int64_t i = u + 1; i <= k; ++i)
            slope = std::max(slope, (g(i) - gu) / static_cast<double>(i - u));
        candidates.push_back(Line{slope, gu - slope * static_cast<double>(u)});
    }
    candidates.push_back(Line::through(0.0, g(0), 1.0, g(1)));
    candidates.push_back(
        Line::through(static_cast<double>(k - 1), g(k - 1), static_cast<double>(k), g(k)));

    struct Interval {
        std::int64_t lo, hi;
    };
    std::vector<Interval> intervals;
    for (const Line& l : candidates) {
        bool upper = true;
        for (std::int64_t i = 0; i <= k && upper; ++i)
            if (!approx_le(g(i), l(static_cast<double>(i)))) upper = false;
        if (!upper) continue;
        std::int64_t lo = -1, hi = -1;
        for (std::int64_t i = 0; i <= k; ++i) {
            if (approx_le(l(static_cast<double>(i)), (1.0 + eps) * g(i))) {
                if (lo < 0) lo = i;
                hi = i;
            }
        }
        if (lo >= 0) intervals.push_back({lo, hi});
    }

    const int kInf = std::numeric_limits<int>::max() / 2;
    std::vector<int> dp(static_cast<std::size_t>(k) + 2, kInf);
    dp[0] = 0;
    for (std::int64_t p = 0; p <= k; ++p) {
        if (dp[static_cast<std::size_t>(p)] == kInf) continue;
        for (const Interval& iv : intervals)
            if (iv.lo <= p && p <= iv.hi)
                dp[static_cast<std::size_t>(iv.hi) + 1] =
                    std::min(dp[static_cast<std::size_t>(iv.hi) + 1],
                             dp[static_cast<std::size_t>(p)] + 1);
    }
    if (dp[static_cast<std::size_t>(k) + 1] >= kInf)
        throw std::logic_error("min_cover_oracle: no feasible cover found");
    return dp[static_cast<std::size_t>(k) + 1];
}

}  // namespace sparsecard
