#include "sparsecard/gadget.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sparsecard {

void CGFParams::validate() const {
    if (k < 1) throw validation_error("CGFParams: k must be >= 1");
    if (a.size() != b.size()) throw validation_error("CGFParams: |a| != |b|");
    if (!(z0 >= 0.0) || !(zk >= 0.0)) throw validation_error("CGFParams: z0, zk must be >= 0");
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (!(a[j] > 0.0)) throw validation_error("CGFParams: a_j must be > 0");
        double lo = j == 0 ? 0.0 : b[j - 1];
        if (!(b[j] > lo)) throw validation_error("CGFParams: b_j must be strictly increasing, > 0");
        if (!(b[j] < static_cast<double>(k)))
            throw validation_error("CGFParams: b_J must be < k (got b=" + std::to_string(b[j]) +
                                   ", k=" + std::to_string(k) + ")");
    }
}

void SymCGFParams::validate() const {
    if (r < 1) throw validation_error("SymCGFParams: r must be >= 1");
    if (a.size() != b.size()) throw validation_error("SymCGFParams: |a| != |b|");
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (!(a[j] > 0.0)) throw validation_error("SymCGFParams: a_j must be > 0");
        double lo = j == 0 ? 0.0 : b[j - 1];
        if (!(b[j] > lo)) throw validation_error("SymCGFParams: b_j must be strictly increasing, > 0");
        if (!(b[j] <= static_cast<double>(r)))
            throw validation_error("SymCGFParams: b_J must be <= r");
    }
}

double eval_cgf(const CGFParams& p, double x) {
    double kd = static_cast<double>(p.k);
    double v = p.z0 * (kd - x) + p.zk * x;
    for (std::size_t j = 0; j < p.a.size(); ++j)
        v += p.a[j] * std::min(x * (kd - p.b[j]), (kd - x) * p.b[j]);
    return v;
}

double eval_sym_cgf(const SymCGFParams& p, double x) {
    double v = 0.0;
    for (std::size_t j = 0; j < p.a.size(); ++j) v += p.a[j] * std::min(x, p.b[j]);
    return v;
}

CGFParams pl_to_cgf(const PLFunction& pl) {
    const std::int64_t k = pl.k();
    const auto& m = pl.slopes();
    const auto& bp = pl.breakpoints();
    double l0 = pl.value_at_zero();
    double lk = pl(static_cast<double>(k));
    // Endpoint values of a valid cover are >= 0 up to accumulation dust;
    // clamp the dust so z0/zk stay in range.
    double mag = std::max({1.0, std::abs(l0), std::abs(lk)});
    for (double v : pl.breakpoint_values()) mag = std::max(mag, std::abs(v));
    if (l0 < 0.0 && l0 >= -1e-12 * mag) l0 = 0.0;
    if (lk < 0.0 && lk >= -1e-12 * mag) lk = 0.0;
    if (!(l0 >= 0.0) || !(lk >= 0.0))
        throw validation_error("pl_to_cgf: function must be nonnegative at 0 and k");

    CGFParams p;
    p.k = k;
    p.z0 = l0 / static_cast<double>(k);
    p.zk = lk / static_cast<double>(k);
    p.a.reserve(bp.size());
    p.b = bp;
    for (std::size_t i = 0; i + 1 < m.size(); ++i) {
        double ai = (m[i] - m[i + 1]) / static_cast<double>(k);
        if (!(ai > 0.0)) throw std::logic_error("pl_to_cgf: derived a_i not positive");
        p.a.push_back(ai);
    }
    p.validate();
    return p;
}

PLFunction cgf_to_pl(const CGFParams& p) {
    p.validate();
    const std::size_t J = p.a.size();
    double beta = 0.0;
    for (std::size_t j = 0; j < J; ++j) beta += p.a[j] * p.b[j];
    // Slope over [b_t, b_{t+1}) is zk - z0 - beta + k * sum_{j>t} a_j.
    std::vector<double> slopes(J + 1);
    double alpha = 0.0;
    for (std::size_t t = J + 1; t-- > 0;) {
        slopes[t] = p.zk - p.z0 - beta + static_cast<double>(p.k) * alpha;
        if (t > 0) alpha += p.a[t - 1];
    }
    return PLFunction(p.k, p.z0 * static_cast<double>(p.k), std::move(slopes), p.b);
}

SymCGFParams sym_pl_to_cgf(const PLFunction& pl) {
    const auto& m = pl.slopes();
    const auto& bp = pl.breakpoints();
    const double flat_tol = 1e-12 * std::max(std::abs(m.front()), 1.0);
    if (std::abs(pl.value_at_zero()) > 1e-12)
        throw validation_error("sym_pl_to_cgf: function must be 0 at 0");
    if (std::abs(m.back()) > flat_tol)
        throw validation_error("sym_pl_to_cgf: final piece must be flat");
    SymCGFParams p;
    p.r = pl.k();
    p.b = bp;
    p.a.reserve(bp.size());
    for (std::size_t i = 0; i + 1 < m.size(); ++i) {
        double ai = m[i] - m[i + 1];
        if (!(ai > 0.0)) throw validation_error("sym_pl_to_cgf: slopes must be positive and decreasing");
        p.a.push_back(ai);
    }
    p.validate();
    return p;
}

GadgetGraph cgf_to_gadget(const CGFParams& p) {
    p.validate();
    const std::int64_t k = p.k;
    const std::int64_t J = static_cast<std::int64_t>(p.a.size());
    GadgetGraph gg;
    gg.support_size = k;
    gg.aux_count = J;
    gg.z0 = p.z0;
    gg.zk = p.zk;
    const std::int64_t s = gg.source_index();
    const std::int64_t t = gg.sink_index();
    for (std::int64_t v = 0; v < k; ++v) {
        if (p.z0 > 0.0) gg.edges.push_back({s, v, p.z0, EdgeRole::SourceToSupport});
        if (p.zk > 0.0) gg.edges.push_back({v, t, p.zk, EdgeRole::SupportToSink});
    }
    for (std::int64_t j = 0; j < J; ++j) {
        gg.gadgets.push_back({false, p.a[j], p.b[j]});
        const std::int64_t aux = k + j;
        const double w_in = p.a[j] * (static_cast<double>(k) - p.b[j]);
        const double w_out = p.a[j] * p.b[j];
        for (std::int64_t v = 0; v < k; ++v) {
            gg.edges.push_back({v, aux, w_in, EdgeRole::SupportToAux});
            gg.edges.push_back({aux, v, w_out, EdgeRole::AuxToSupport});
        }
    }
    return gg;
}

GadgetGraph sym_cgf_to_gadget(const SymCGFParams& p, std::int64_t k) {
    p.validate();
    if (p.r != k / 2)
        throw validation_error("sym_cgf_to_gadget: r must equal floor(k/2)");
    const std::int64_t J = static_cast<std::int64_t>(p.a.size());
    GadgetGraph gg;
    gg.support_size = k;
    gg.aux_count = 2 * J;
    for (std::int64_t j = 0; j < J; ++j) {
        gg.gadgets.push_back({true, p.a[j], p.b[j]});
        const std::int64_t e1 = k + 2 * j;      // e'
        const std::int64_t e2 = k + 2 * j + 1;  // e''
        for (std::int64_t v = 0; v < k; ++v) {
            gg.edges.push_back({v, e1, p.a[j], EdgeRole::SupportToAux});
            gg.edges.push_back({e2, v, p.a[j], EdgeRole::AuxToSupport});
        }
        gg.edges.push_back({e1, e2, p.a[j] * p.b[j], EdgeRole::AuxToAux});
    }
    return gg;
}

GadgetGraph unary_gadget(double g0, double g1) {
    if (!(g0 >= 0.0) || !(g1 >= 0.0))
        throw validation_error("unary_gadget: penalties must be nonnegative");
    GadgetGraph gg;
    gg.support_size = 1;
    gg.aux_count = 0;
    gg.z0 = g0;
    gg.zk = g1;
    if (g0 > 0.0) gg.edges.push_back({gg.source_index(), 0, g0, EdgeRole::SourceToSupport});
    if (g1 > 0.0) gg.edges.push_back({0, gg.sink_index(), g1, EdgeRole::SupportToSink});
    return gg;
}

double gadget_cut_eval(const GadgetGraph& gg, std::int64_t cardinality) {
    const std::int64_t k = gg.support_size;
    if (cardinality < 0 || cardinality > k)
        throw std::domain_error("gadget_cut_eval: cardinality outside [0,k]");
    const double i = static_cast<double>(cardinality);
    const double kd = static_cast<double>(k);
    double v = gg.z0 * (kd - i) + gg.zk * i;
    for (const CbGadgetDesc& gd : gg.gadgets) {
        if (gd.symmetric)
            v += gd.a * std::min({i, kd - i, gd.b});
        else
            v += gd.a * std::min(i * (kd - gd.b), (kd - i) * gd.b);
    }
    return v;
}

}  // namespace sparsecard
