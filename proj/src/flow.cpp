#include "sparsecard/flow.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <queue>
#include <string>

namespace sparsecard {

namespace {
constexpr std::int64_t kCapLimit = std::int64_t{1} << 62;
}

std::int64_t FlowNetwork::total_capacity() const {
    std::int64_t total = 0;
    for (std::int64_t c : arc_cap) total += c;
    return total;
}

FlowNetwork build_network(const std::vector<PlacedGadget>& gadgets, std::int64_t n,
                          std::int64_t scale, BuildStats* stats) {
    if (n < 0) throw validation_error("build_network: n must be >= 0");
    if (scale < 1) throw validation_error("build_network: scale must be >= 1");

    std::int64_t aux_total = 0;
    for (const PlacedGadget& pg : gadgets) {
        if (static_cast<std::int64_t>(pg.support.size()) != pg.graph.support_size)
            throw validation_error("build_network: support index list does not match gadget size");
        for (std::int64_t v : pg.support)
            if (v < 0 || v >= n)
                throw validation_error("build_network: support index out of range");
        aux_total += pg.graph.aux_count;
    }
    const std::int64_t node_count = n + aux_total + 2;
    const std::int64_t s = n + aux_total;
    const std::int64_t t = n + aux_total + 1;

    BuildStats local;
    std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> merged;
    std::int64_t running_total = 0;
    std::int64_t aux_base = n;
    for (const PlacedGadget& pg : gadgets) {
        const GadgetGraph& gg = pg.graph;
        auto map_node = [&](std::int64_t local_id) -> std::int64_t {
            if (local_id < gg.support_size) return pg.support[static_cast<std::size_t>(local_id)];
            if (local_id < gg.support_size + gg.aux_count)
                return aux_base + (local_id - gg.support_size);
            return local_id == gg.source_index() ? s : t;
        };
        for (const GadgetEdge& e : gg.edges) {
            if (!(e.weight > 0.0)) throw std::logic_error("build_network: nonpositive edge weight");
            double scaled = e.weight * static_cast<double>(scale);
            if (scaled >= static_cast<double>(kCapLimit))
                throw size_error("build_network: scaled capacity overflow; retry with scale <= " +
                                 std::to_string(scale / 2));
            std::int64_t cap = std::llround(scaled);
            if (cap == 0) {
                ++local.arcs_rounded_to_zero;
                continue;
            }
            running_total += cap;
            if (running_total >= kCapLimit)
                throw size_error("build_network: total scaled capacity overflow; retry with scale <= " +
                                 std::to_string(scale / 2));
            auto [it, inserted] = merged.try_emplace({map_node(e.tail), map_node(e.head)}, 0);
            if (!inserted) ++local.merged_parallel;
            it->second += cap;
        }
        aux_base += gg.aux_count;
    }

    FlowNetwork net;
    net.node_count = node_count;
    net.source = s;
    net.sink = t;
    net.scale = scale;
    net.arc_tail.reserve(merged.size());
    net.arc_head.reserve(merged.size());
    net.arc_cap.reserve(merged.size());
    for (const auto& [key, cap] : merged) {
        net.arc_tail.push_back(static_cast<std::int32_t>(key.first));
        net.arc_head.push_back(static_cast<std::int32_t>(key.second));
        net.arc_cap.push_back(cap);
    }
    if (stats) *stats = local;
    return net;
}

FlowNetwork pin_nodes(const FlowNetwork& net, const std::vector<std::int64_t>& to_source,
                      const std::vector<std::int64_t>& to_sink) {
    for (std::int64_t v : to_source)
        for (std::int64_t w : to_sink)
            if (v == w) throw std::invalid_argument("pin_nodes: pin sets must be disjoint");

    const std::int64_t sentinel = net.total_capacity() + 1;
    const std::int64_t added = static_cast<std::int64_t>(to_source.size() + to_sink.size());
    if (added > 0 && sentinel >= kCapLimit / (added + 1))
        throw size_error("pin_nodes: sentinel capacities would overflow");

    std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> merged;
    for (std::int64_t i = 0; i < net.arc_pair_count(); ++i)
        merged[{net.arc_tail[static_cast<std::size_t>(i)], net.arc_head[static_cast<std::size_t>(i)]}] +=
            net.arc_cap[static_cast<std::size_t>(i)];
    for (std::int64_t v : to_source) merged[{net.source, v}] += sentinel;
    for (std::int64_t v : to_sink) merged[{v, net.sink}] += sentinel;

    FlowNetwork out;
    out.node_count = net.node_count;
    out.source = net.source;
    out.sink = net.sink;
    out.scale = net.scale;
    for (const auto& [key, cap] : merged) {
        out.arc_tail.push_back(static_cast<std::int32_t>(key.first));
        out.arc_head.push_back(static_cast<std::int32_t>(key.second));
        out.arc_cap.push_back(cap);
    }
    return out;
}

namespace {

// Residual arc store: forward arc 2i has the pair's capacity, backward arc
// 2i+1 starts at 0. arc^1 is the reverse.
class PushRelabel {
public:
    explicit PushRelabel(const FlowNetwork& net) : net_(net), n_(net.node_count) {
        const std::int64_t m = net.arc_pair_count();
        cap_.resize(static_cast<std::size_t>(2 * m));
        head_.resize(static_cast<std::size_t>(2 * m));
        for (std::int64_t i = 0; i < m; ++i) {
            head_[static_cast<std::size_t>(2 * i)] = net.arc_head[static_cast<std::size_t>(i)];
            head_[static_cast<std::size_t>(2 * i + 1)] = net.arc_tail[static_cast<std::size_t>(i)];
            cap_[static_cast<std::size_t>(2 * i)] = net.arc_cap[static_cast<std::size_t>(i)];
            cap_[static_cast<std::size_t>(2 * i + 1)] = 0;
        }
        // CSR adjacency over both directions.
        first_.assign(static_cast<std::size_t>(n_) + 1, 0);
        for (std::int64_t a = 0; a < 2 * m; ++a)
            ++first_[static_cast<std::size_t>(other_end(a)) + 1];
        for (std::size_t v = 1; v < first_.size(); ++v) first_[v] += first_[v - 1];
        arcs_.resize(static_cast<std::size_t>(2 * m));
        std::vector<std::int64_t> fill(first_.begin(), first_.end() - 1);
        for (std::int64_t a = 0; a < 2 * m; ++a)
            arcs_[static_cast<std::size_t>(fill[static_cast<std::size_t>(other_end(a))]++)] = a;
    }

    CutResult run() {
        const std::int64_t s = net_.source, t = net_.sink;
        label_.assign(static_cast<std::size_t>(n_), 0);
        excess_.assign(static_cast<std::size_t>(n_), 0);
        cur_.assign(static_cast<std::size_t>(n_), 0);
        buckets_.assign(static_cast<std::size_t>(2 * n_ + 1), {});
        label_count_.assign(static_cast<std::size_t>(2 * n_ + 1), 0);

        global_relabel();
        // Saturate source arcs.
        for (std::int64_t idx = first_[static_cast<std::size_t>(s)];
             idx < first_[static_cast<std::size_t>(s) + 1]; ++idx) {
            std::int64_t a = arcs_[static_cast<std::size_t>(idx)];
            if (cap_[static_cast<std::size_t>(a)] > 0 && (a & 1) == 0) {
                std::int64_t v = head_[static_cast<std::size_t>(a)];
                std::int64_t delta = cap_[static_cast<std::size_t>(a)];
                cap_[static_cast<std::size_t>(a)] -= delta;
                cap_[static_cast<std::size_t>(a ^ 1)] += delta;
                excess_[static_cast<std::size_t>(v)] += delta;
            }
        }
        for (std::int64_t v = 0; v < n_; ++v)
            if (v != s && v != t && excess_[static_cast<std::size_t>(v)] > 0) activate(v);

        std::int64_t relabels_since_global = 0;
        while (highest_ >= 0) {
            while (highest_ >= 0 && buckets_[static_cast<std::size_t>(highest_)].empty()) --highest_;
            if (highest_ < 0) break;
            auto& q = buckets_[static_cast<std::size_t>(highest_)];
            std::int64_t v = q.front();
            q.pop_front();
            if (label_[static_cast<std::size_t>(v)] != highest_ ||
                excess_[static_cast<std::size_t>(v)] <= 0 ||
                label_[static_cast<std::size_t>(v)] >= n_)
                continue;  // stale entry
            discharge(v, relabels_since_global);
            if (relabels_since_global >= n_) {
                global_relabel();
                rebuild_buckets();
                relabels_since_global = 0;
            }
        }

        CutResult result;
        result.max_flow_scaled = excess_[static_cast<std::size_t>(t)];
        // Which nodes can still reach t through residual arcs?
        std::vector<bool> reaches_t(static_cast<std::size_t>(n_), false);
        std::queue<std::int64_t> bfs;
        reaches_t[static_cast<std::size_t>(t)] = true;
        bfs.push(t);
        while (!bfs.empty()) {
            std::int64_t v = bfs.front();
            bfs.pop();
            for (std::int64_t idx = first_[static_cast<std::size_t>(v)];
                 idx < first_[static_cast<std::size_t>(v) + 1]; ++idx) {
                std::int64_t a = arcs_[static_cast<std::size_t>(idx)];
                // a leaves v; a^1 enters v from head_[a].
                std::int64_t u = head_[static_cast<std::size_t>(a)];
                if (!reaches_t[static_cast<std::size_t>(u)] && cap_[static_cast<std::size_t>(a ^ 1)] > 0) {
                    reaches_t[static_cast<std::size_t>(u)] = true;
                    bfs.push(u);
                }
            }
        }
        assert(!reaches_t[static_cast<std::size_t>(s)]);
        result.source_side.assign(static_cast<std::size_t>(n_), false);
        for (std::int64_t v = 0; v < n_; ++v)
            result.source_side[static_cast<std::size_t>(v)] = !reaches_t[static_cast<std::size_t>(v)];

        std::int64_t cut = 0;
        for (std::int64_t i = 0; i < net_.arc_pair_count(); ++i) {
            std::int64_t u = net_.arc_tail[static_cast<std::size_t>(i)];
            std::int64_t w = net_.arc_head[static_cast<std::size_t>(i)];
            if (result.source_side[static_cast<std::size_t>(u)] &&
                !result.source_side[static_cast<std::size_t>(w)])
                cut += net_.arc_cap[static_cast<std::size_t>(i)];
        }
        result.cut_value_scaled = cut;
        result.cut_value = static_cast<double>(cut) / static_cast<double>(net_.scale);
        assert(result.cut_value_scaled == result.max_flow_scaled);
#ifndef NDEBUG
        // Capacity constraints: residuals nonnegative, pair sums conserved.
        for (std::int64_t i = 0; i < net_.arc_pair_count(); ++i) {
            std::int64_t fwd = cap_[static_cast<std::size_t>(2 * i)];
            std::int64_t bwd = cap_[static_cast<std::size_t>(2 * i + 1)];
            assert(fwd >= 0 && bwd >= 0);
            assert(fwd + bwd == net_.arc_cap[static_cast<std::size_t>(i)]);
        }
        // Conservation: a maximum preflow keeps positive excess only at
        // nodes cut off from t; everything on the t-side must balance.
        for (std::int64_t v = 0; v < n_; ++v) {
            if (v == s || v == t) continue;
            assert(excess_[static_cast<std::size_t>(v)] >= 0);
            if (reaches_t[static_cast<std::size_t>(v)])
                assert(excess_[static_cast<std::size_t>(v)] == 0);
        }
#endif
        return result;
    }

private:
    std::int64_t other_end(std::int64_t a) const { return head_[static_cast<std::size_t>(a ^ 1)]; }

    void activate(std::int64_t v) {
        std::int64_t d = label_[static_cast<std::size_t>(v)];
        if (d >= n_) return;
        buckets_[static_cast<std::size_t>(d)].push_back(v);
        highest_ = std::max(highest_, d);
    }

    void discharge(std::int64_t v, std::int64_t& relabels) {
        const std::int64_t s = net_.source, t = net_.sink;
        while (excess_[static_cast<std::size_t>(v)] > 0) {
            std::int64_t end = first_[static_cast<std::size_t>(v) + 1];
            bool pushed_any = false;
            for (std::int64_t& idx = cur_[static_cast<std::size_t>(v)]; idx < end; ++idx) {
                std::int64_t a = arcs_[static_cast<std::size_t>(idx)];
                std::int64_t w = head_[static_cast<std::size_t>(a)];
                if (cap_[static_cast<std::size_t>(a)] <= 0) continue;
                if (label_[static_cast<std::size_t>(v)] != label_[static_cast<std::size_t>(w)] + 1)
                    continue;
                std::int64_t delta =
                    std::min(excess_[static_cast<std::size_t>(v)], cap_[static_cast<std::size_t>(a)]);
                cap_[static_cast<std::size_t>(a)] -= delta;
                cap_[static_cast<std::size_t>(a ^ 1)] += delta;
                excess_[static_cast<std::size_t>(v)] -= delta;
                bool was_inactive = excess_[static_cast<std::size_t>(w)] == 0;
                excess_[static_cast<std::size_t>(w)] += delta;
                if (was_inactive && w != s && w != t) activate(w);
                if (excess_[static_cast<std::size_t>(v)] == 0) {
                    pushed_any = true;
                    break;
                }
            }
            if (excess_[static_cast<std::size_t>(v)] == 0) break;
            (void)pushed_any;
            // Relabel v to one more than the lowest admissible neighbor.
            std::int64_t old = label_[static_cast<std::size_t>(v)];
            std::int64_t best = 2 * n_;
            for (std::int64_t idx = first_[static_cast<std::size_t>(v)]; idx < end; ++idx) {
                std::int64_t a = arcs_[static_cast<std::size_t>(idx)];
                if (cap_[static_cast<std::size_t>(a)] > 0)
                    best = std::min(best, label_[static_cast<std::size_t>(head_[static_cast<std::size_t>(a)])] + 1);
            }
            ++relabels;
            set_label(v, best);
            cur_[static_cast<std::size_t>(v)] = first_[static_cast<std::size_t>(v)];
            // Gap heuristic: if the old level emptied out, nothing above it
            // (below n) can reach t anymore.
            if (old < n_ && label_count_[static_cast<std::size_t>(old)] == 0) {
                for (std::int64_t w = 0; w < n_; ++w) {
                    std::int64_t d = label_[static_cast<std::size_t>(w)];
                    if (d > old && d < n_) set_label(w, n_ + 1);
                }
            }
            if (label_[static_cast<std::size_t>(v)] >= n_) return;
        }
    }

    void set_label(std::int64_t v, std::int64_t d) {
        std::int64_t old = label_[static_cast<std::size_t>(v)];
        if (old < static_cast<std::int64_t>(label_count_.size()))
            --label_count_[static_cast<std::size_t>(old)];
        label_[static_cast<std::size_t>(v)] = d;
        if (d < static_cast<std::int64_t>(label_count_.size()))
            ++label_count_[static_cast<std::size_t>(d)];
    }

    // Exact labels = BFS distance to t in the residual graph; unreachable
    // nodes (and s) get n.
    void global_relabel() {
        std::fill(label_.begin(), label_.end(), n_);
        std::fill(label_count_.begin(), label_count_.end(), 0);
        label_[static_cast<std::size_t>(net_.sink)] = 0;
        std::queue<std::int64_t> bfs;
        bfs.push(net_.sink);
        while (!bfs.empty()) {
            std::int64_t v = bfs.front();
            bfs.pop();
            for (std::int64_t idx = first_[static_cast<std::size_t>(v)];
                 idx < first_[static_cast<std::size_t>(v) + 1]; ++idx) {
                std::int64_t a = arcs_[static_cast<std::size_t>(idx)];
                std::int64_t u = head_[static_cast<std::size_t>(a)];
                if (u == net_.source) continue;
                if (label_[static_cast<std::size_t>(u)] != n_ ||
                    cap_[static_cast<std::size_t>(a ^ 1)] <= 0)
                    continue;
                label_[static_cast<std::size_t>(u)] = label_[static_cast<std::size_t>(v)] + 1;
                bfs.push(u);
            }
        }
        label_[static_cast<std::size_t>(net_.source)] = n_;
        for (std::int64_t v = 0; v < n_; ++v)
            ++label_count_[static_cast<std::size_t>(std::min(label_[static_cast<std::size_t>(v)],
                                                             2 * n_))];
        std::fill(cur_.begin(), cur_.end(), 0);
        for (std::int64_t v = 0; v < n_; ++v)
            cur_[static_cast<std::size_t>(v)] = first_[static_cast<std::size_t>(v)];
    }

    void rebuild_buckets() {
        for (auto& b : buckets_) b.clear();
        highest_ = -1;
        for (std::int64_t v = 0; v < n_; ++v)
            if (v != net_.source && v != net_.sink && excess_[static_cast<std::size_t>(v)] > 0)
                activate(v);
    }

    const FlowNetwork& net_;
    std::int64_t n_;
    std::vector<std::int64_t> cap_;
    std::vector<std::int64_t> head_;
    std::vector<std::int64_t> first_;
    std::vector<std::int64_t> arcs_;
    std::vector<std::int64_t> label_;
    std::vector<std::int64_t> excess_;
    std::vector<std::int64_t> cur_;
    std::vector<std::deque<std::int64_t>> buckets_;
    std::vector<std::int64_t> label_count_;
    std::int64_t highest_ = -1;
};

}  // namespace

CutResult min_st_cut(const FlowNetwork& net) {
    if (net.node_count < 2 || net.source == net.sink)
        throw validation_error("min_st_cut: network needs distinct s and t");
    PushRelabel solver(net);
    return solver.run();
}

}  // namespace sparsecard
