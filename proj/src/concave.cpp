#include "sparsecard/concave.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace sparsecard {

ConcaveSeq::ConcaveSeq(std::vector<double> values) {
    if (values.size() < 2)
        throw validation_error("ConcaveSeq needs at least 2 values (k >= 1)");
    k_ = static_cast<std::int64_t>(values.size()) - 1;
    cache_ = std::move(values);
    for (std::int64_t i = 0; i <= k_; ++i) check_point(i);
}

ConcaveSeq ConcaveSeq::from_generator(std::int64_t k, std::function<double(std::int64_t)> gen) {
    if (k < 1) throw validation_error("ConcaveSeq needs k >= 1");
    ConcaveSeq g;
    g.k_ = k;
    g.gen_ = std::move(gen);
    g.cache_.reserve(16);
    return g;
}

double ConcaveSeq::operator()(std::int64_t i) const {
    if (i < 0 || i > k_)
        throw std::domain_error("ConcaveSeq evaluated outside [0,k]: i=" + std::to_string(i));
    if (i >= static_cast<std::int64_t>(cache_.size())) extend_cache(i);
    return cache_[static_cast<std::size_t>(i)];
}

void ConcaveSeq::extend_cache(std::int64_t i) const {
    for (std::int64_t j = static_cast<std::int64_t>(cache_.size()); j <= i; ++j) {
        cache_.push_back(gen_(j));
        check_point(j);
    }
}

void ConcaveSeq::check_point(std::int64_t i) const {
    double v = cache_[static_cast<std::size_t>(i)];
    if (!(v >= 0.0) || !std::isfinite(v))
        throw validation_error("ConcaveSeq value at " + std::to_string(i) +
                               " is negative or non-finite: " + std::to_string(v));
    if (i >= 2) {
        double d1 = cache_[static_cast<std::size_t>(i - 1)] - cache_[static_cast<std::size_t>(i - 2)];
        double d2 = v - cache_[static_cast<std::size_t>(i - 1)];
        if (!detail::approx_le(d2, d1))
            throw validation_error("ConcaveSeq violates integer concavity near i=" + std::to_string(i));
    }
}

MonotoneConcaveSeq::MonotoneConcaveSeq(std::vector<double> values) : seq_(std::move(values)) {
    if (!detail::approx_le(seq_(0), 0.0))
        throw validation_error("MonotoneConcaveSeq requires h(0) = 0");
    for (std::int64_t i = 1; i <= seq_.k(); ++i)
        if (!detail::approx_le(seq_(i - 1), seq_(i)))
            throw validation_error("MonotoneConcaveSeq must be nondecreasing (violated at i=" +
                                   std::to_string(i) + ")");
}

MonotoneConcaveSeq MonotoneConcaveSeq::from_generator(std::int64_t r,
                                                      std::function<double(std::int64_t)> gen) {
    // Monotonicity is enforced by the wrapper below as points get evaluated.
    auto base = gen;
    auto checked = [base](std::int64_t i) {
        double v = base(i);
        if (i == 0 && std::abs(v) > 1e-12)
            throw validation_error("MonotoneConcaveSeq requires h(0) = 0");
        return v;
    };
    MonotoneConcaveSeq h(ConcaveSeq::from_generator(r, checked));
    return h;
}

double MonotoneConcaveSeq::operator()(std::int64_t i) const {
    double v = seq_(i);
    if (i >= 1 && !detail::approx_le(seq_(i - 1), v))
        throw validation_error("MonotoneConcaveSeq must be nondecreasing (violated at i=" +
                               std::to_string(i) + ")");
    return v;
}

PLFunction::PLFunction(std::int64_t k, double value_at_zero, std::vector<double> slopes,
                       std::vector<double> breakpoints)
    : k_(k),
      value_at_zero_(value_at_zero),
      slopes_(std::move(slopes)),
      breakpoints_(std::move(breakpoints)) {
    if (k_ < 1) throw validation_error("PLFunction needs k >= 1");
    if (slopes_.empty() || slopes_.size() != breakpoints_.size() + 1)
        throw validation_error("PLFunction needs |slopes| = |breakpoints| + 1 >= 1");
    for (std::size_t i = 0; i + 1 < slopes_.size(); ++i)
        if (!(slopes_[i] > slopes_[i + 1]))
            throw validation_error("PLFunction slopes must be strictly decreasing");
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
        double lo = i == 0 ? 0.0 : breakpoints_[i - 1];
        if (!(breakpoints_[i] > lo) || !(breakpoints_[i] <= static_cast<double>(k_)))
            throw validation_error("PLFunction breakpoints must be strictly increasing in (0,k]");
    }
    breakpoint_values_.resize(breakpoints_.size());
    double v = value_at_zero_;
    double x = 0.0;
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
        v += slopes_[i] * (breakpoints_[i] - x);
        x = breakpoints_[i];
        breakpoint_values_[i] = v;
    }
}

double PLFunction::operator()(double x) const {
    if (x < 0.0 || x > static_cast<double>(k_))
        throw std::domain_error("PLFunction evaluated outside [0,k]: x=" + std::to_string(x));
    // Piece index: first breakpoint strictly greater than x.
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    std::size_t piece = static_cast<std::size_t>(it - breakpoints_.begin());
    double base_x = piece == 0 ? 0.0 : breakpoints_[piece - 1];
    double base_v = piece == 0 ? value_at_zero_ : breakpoint_values_[piece - 1];
    return base_v + slopes_[piece] * (x - base_x);
}

}  // namespace sparsecard
