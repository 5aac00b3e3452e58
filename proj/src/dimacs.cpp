#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "sparsecard/flow.hpp"

namespace sparsecard {

void write_dimacs(const FlowNetwork& net, std::ostream& out) {
    out << "c scale " << net.scale << "\n";
    out << "p max " << net.node_count << " " << net.arc_pair_count() << "\n";
    out << "n " << (net.source + 1) << " s\n";
    out << "n " << (net.sink + 1) << " t\n";
    for (std::int64_t i = 0; i < net.arc_pair_count(); ++i) {
        out << "a " << (net.arc_tail[static_cast<std::size_t>(i)] + 1) << " "
            << (net.arc_head[static_cast<std::size_t>(i)] + 1) << " "
            << net.arc_cap[static_cast<std::size_t>(i)] << "\n";
    }
}

FlowNetwork read_dimacs(std::istream& in) {
    FlowNetwork net;
    bool have_problem = false, have_source = false, have_sink = false;
    std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> merged;
    std::int64_t declared_arcs = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        char kind;
        ls >> kind;
        auto fail = [&](const std::string& why) {
            throw validation_error("dimacs line " + std::to_string(lineno) + ": " + why);
        };
        if (kind == 'c') {
            std::string word;
            if (ls >> word && word == "scale") {
                std::int64_t s;
                if (ls >> s && s >= 1) net.scale = s;
            }
        } else if (kind == 'p') {
            std::string prob;
            if (!(ls >> prob >> net.node_count >> declared_arcs) || prob != "max")
                fail("expected 'p max <nodes> <arcs>'");
            have_problem = true;
        } else if (kind == 'n') {
            std::int64_t id;
            char which;
            if (!(ls >> id >> which)) fail("expected 'n <id> s|t'");
            if (which == 's') {
                net.source = id - 1;
                have_source = true;
            } else if (which == 't') {
                net.sink = id - 1;
                have_sink = true;
            } else {
                fail("node designator must be s or t");
            }
        } else if (kind == 'a') {
            std::int64_t u, v, cap;
            if (!(ls >> u >> v >> cap)) fail("expected 'a <tail> <head> <cap>'");
            if (!have_problem) fail("arc before problem line");
            if (u < 1 || u > net.node_count || v < 1 || v > net.node_count)
                fail("arc endpoint out of range");
            if (cap < 0) fail("negative capacity");
            if (cap > 0) merged[{u - 1, v - 1}] += cap;
        } else {
            fail("unknown line type");
        }
    }
    if (!have_problem) throw validation_error("dimacs: missing problem line");
    if (!have_source || !have_sink) throw validation_error("dimacs: missing source or sink line");
    for (const auto& [key, cap] : merged) {
        net.arc_tail.push_back(static_cast<std::int32_t>(key.first));
        net.arc_head.push_back(static_cast<std::int32_t>(key.second));
        net.arc_cap.push_back(cap);
    }
    return net;
}

}  // namespace sparsecard
