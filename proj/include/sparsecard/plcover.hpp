#ifndef SPARSECARD_PLCOVER_HPP
#define SPARSECARD_PLCOVER_HPP

#include <cstdint>
#include <vector>

#include "sparsecard/concave.hpp"

namespace sparsecard {

struct NextLineResult {
    std::int64_t u_next;
    Line line;
};

// Widest-reach approximating line starting at integer u: upper-bounds {i,g(i)}
// for i in [u,k] and satisfies L(i) <= (1+eps) g(i) for i in [u, u_next-1].
NextLineResult next_line(const ConcaveSeq& g, std::int64_t u, double eps);

// Raw greedy line collection (the lines of the minimum cover, in slope order).
std::vector<Line> greedy_cover_lines(const ConcaveSeq& g, double eps);

// Minimum-piece concave PL function with g(i) <= l(i) <= (1+eps) g(i) at all
// integers in [0,k].
PLFunction greedy_pl_cover(const ConcaveSeq& g, double eps);

// Cover of a nondecreasing concave h on [0,r] by a minimum number of
// positive-sloped pieces plus one flat piece at h(r).
PLFunction symmetric_pl_cover(const MonotoneConcaveSeq& h, double eps);

// Constructive (not necessarily minimum) cover with at most
// 2 + 2*ceil(log_{1+eps} k) secant lines placed at geometrically spaced
// points; upper-bound comparator for the greedy count. Requires eps > 0.
std::vector<Line> tangent_log_cover(const ConcaveSeq& g, double eps);

// Tangent-line cover of x(k-x) over [1, k/2]: the fixed-point iteration on
// (t, z). First entry is the secant (k-1)x through {0,1}; the rest are
// tangents kx - 2tx + t^2. Requires k >= 2 and eps > 0.
std::vector<Line> clique_cover(std::int64_t k, double eps);

// Independent minimum piece count via canonical candidate enumeration and
// interval-cover DP. Guarded to k <= 2000.
int min_cover_oracle(const ConcaveSeq& g, double eps);

}  // namespace sparsecard

#endif
