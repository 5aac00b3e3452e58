#ifndef SPARSECARD_CONCAVE_HPP
#define SPARSECARD_CONCAVE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "sparsecard/errors.hpp"

namespace sparsecard {

namespace detail {

// a <= b up to relative tolerance 1e-12 (with an absolute floor so that
// comparisons against exact zeros behave).
inline bool approx_le(double a, double b) {
    double m = std::max(std::abs(a), std::abs(b));
    return a <= b + 1e-12 * std::max(m, 1.0);
}

// a < b beyond the same tolerance.
inline bool strictly_lt(double a, double b) {
    double m = std::max(std::abs(a), std::abs(b));
    return a < b - 1e-12 * std::max(m, 1.0);
}

}  // namespace detail

struct Line {
    double slope = 0.0;
    double intercept = 0.0;

    double operator()(double x) const { return slope * x + intercept; }

    static Line through(double x1, double y1, double x2, double y2) {
        double m = (y2 - y1) / (x2 - x1);
        return Line{m, y1 - m * x1};
    }
};

// A nonnegative concave function sampled at the integers 0..k. Values come
// either from an explicit list or from a generator evaluated lazily so that
// piece-count experiments at k ~ 1e5..1e6 need not materialize arrays up
// front. Nonnegativity and integer concavity (nonincreasing forward
// differences) are checked on whatever prefix actually gets evaluated.
class ConcaveSeq {
public:
    explicit ConcaveSeq(std::vector<double> values);
    static ConcaveSeq from_generator(std::int64_t k, std::function<double(std::int64_t)> gen);

    std::int64_t k() const { return k_; }
    double operator()(std::int64_t i) const;

private:
    ConcaveSeq() = default;
    void extend_cache(std::int64_t i) const;
    void check_point(std::int64_t i) const;

    std::int64_t k_ = 0;
    mutable std::vector<double> cache_;
    std::function<double(std::int64_t)> gen_;
};

// h sampled at 0..r: h(0) = 0, nondecreasing, concave. Wraps a ConcaveSeq and
// adds the extra checks.
class MonotoneConcaveSeq {
public:
    explicit MonotoneConcaveSeq(std::vector<double> values);
    static MonotoneConcaveSeq from_generator(std::int64_t r, std::function<double(std::int64_t)> gen);

    std::int64_t r() const { return seq_.k(); }
    double operator()(std::int64_t i) const;
    const ConcaveSeq& seq() const { return seq_; }

private:
    explicit MonotoneConcaveSeq(ConcaveSeq seq) : seq_(std::move(seq)) {}
    ConcaveSeq seq_;
};

// Concave piecewise linear function on [0,k]: slopes m_1 > ... > m_{J+1},
// breakpoints 0 < B_1 < ... < B_J <= k. (B_J = k is permitted; that case
// arises for symmetric covers whose flat tail starts exactly at r. The
// asymmetric gadget conversion separately rejects B_J >= k.)
class PLFunction {
public:
    PLFunction(std::int64_t k, double value_at_zero, std::vector<double> slopes,
               std::vector<double> breakpoints);

    std::int64_t k() const { return k_; }
    double value_at_zero() const { return value_at_zero_; }
    const std::vector<double>& slopes() const { return slopes_; }
    const std::vector<double>& breakpoints() const { return breakpoints_; }
    std::size_t piece_count() const { return slopes_.size(); }

    // Value at the breakpoints, cached at construction.
    const std::vector<double>& breakpoint_values() const { return breakpoint_values_; }

    double operator()(double x) const;

private:
    std::int64_t k_;
    double value_at_zero_;
    std::vector<double> slopes_;
    std::vector<double> breakpoints_;
    std::vector<double> breakpoint_values_;
};

inline double eval_pl(const PLFunction& pl, double x) { return pl(x); }

}  // namespace sparsecard

#endif
