#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "sparsecard/dsfm.hpp"
#include "sparsecard/instance_io.hpp"
#include "sparsecard/plcover.hpp"

namespace {

using nlohmann::json;
using namespace sparsecard;

constexpr const char* kSchema = "sparse-card/1";

std::int64_t default_scale() {
    if (const char* env = std::getenv("SPARSECARD_SCALE")) {
        char* end = nullptr;
        long long v = std::strtoll(env, &end, 10);
        if (end && *end == '\0' && v >= 1) return v;
        std::cerr << "warning: ignoring invalid SPARSECARD_SCALE='" << env << "'\n";
    }
    return 1000000;
}

DSFMInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open instance file '" + path + "'");
    return parse_instance(in);
}

json solution_to_json(const DSFMInstance& inst, const Solution& sol) {
    json j;
    j["schema"] = kSchema;
    std::vector<std::int64_t> ids;
    for (std::int64_t v = 0; v < inst.n; ++v)
        if (sol.members[static_cast<std::size_t>(v)]) ids.push_back(v + 1);
    j["solution"] = ids;
    j["objective"] = sol.objective;
    j["reduced_cut_value"] = sol.reduced_cut_value;
    if (std::isfinite(sol.a_posteriori_ratio))
        j["a_posteriori_ratio"] = sol.a_posteriori_ratio;
    else
        j["a_posteriori_ratio"] = "infinity";
    j["eps"] = sol.stats.eps;
    j["component_pieces"] = sol.stats.pieces_per_component;
    j["nodes"] = sol.stats.nodes;
    j["edges"] = sol.stats.edges;
    j["scale"] = sol.stats.scale;
    j["quantization_bound"] = sol.stats.quantization_bound;
    j["arcs_rounded_to_zero"] = sol.stats.arcs_rounded_to_zero;
    j["wall_ms"] = sol.stats.wall_ms;
    return j;
}

void emit_result(const json& j, const std::string& json_out, bool csv) {
    if (csv) {
        std::ostringstream row;
        row.precision(17);
        double ratio = j["a_posteriori_ratio"].is_number()
                           ? j["a_posteriori_ratio"].get<double>()
                           : std::numeric_limits<double>::infinity();
        row << j["eps"].get<double>() << "," << (ratio - 1.0) << ","
            << j["edges"].get<std::int64_t>() << "," << j["objective"].get<double>() << ","
            << j["wall_ms"].get<double>();
        std::cout << "eps,approx_minus_1,edges,objective,wall_ms\n" << row.str() << "\n";
    } else {
        std::cout << j.dump(2) << "\n";
    }
    if (!json_out.empty()) {
        std::ofstream out(json_out);
        if (!out) throw validation_error("cannot open output file '" + json_out + "'");
        out << j.dump(2) << "\n";
    }
}

int cmd_solve(const std::string& path, double eps, std::int64_t scale, bool force_asym,
              const std::string& json_out, bool csv) {
    DSFMInstance inst = load_instance(path);
    SolveOptions opts;
    opts.scale = scale;
    opts.force_asymmetric = force_asym;
    Solution sol = sparse_card(inst, eps, opts);
    emit_result(solution_to_json(inst, sol), json_out, csv);
    return 0;
}

int cmd_reduce(const std::string& path, double eps, std::int64_t scale, bool force_asym,
               const std::string& dimacs_out) {
    DSFMInstance inst = load_instance(path);
    SolveOptions opts;
    opts.scale = scale;
    opts.force_asymmetric = force_asym;
    Reduction red = build_reduction(inst, eps, opts);
    if (dimacs_out.empty() || dimacs_out == "-") {
        write_dimacs(red.network, std::cout);
    } else {
        std::ofstream out(dimacs_out);
        if (!out) throw validation_error("cannot open output file '" + dimacs_out + "'");
        write_dimacs(red.network, out);
    }
    std::cerr << "reduced graph: " << red.stats.nodes << " nodes, " << red.stats.edges
              << " arcs\n";
    return 0;
}

int cmd_curve(const std::string& spec_text, std::int64_t k, std::vector<double> eps_list) {
    PenaltySpec spec = parse_penalty_spec(spec_text);
    if (k < 1) throw validation_error("k must be >= 1");
    {   // reuse the instance checks (value counts, exponent range, ...)
        DSFMInstance probe;
        probe.n = k;
        Component comp;
        for (std::int64_t v = 0; v < k; ++v) comp.support.push_back(v);
        comp.penalty = spec;
        probe.components.push_back(std::move(comp));
        probe.validate(/*require_nonnegative=*/true);
    }
    if (eps_list.empty()) eps_list = {1.0, 0.2336, 0.0546, 0.0127, 0.003, 0.0007, 0.0002};

    std::cout.precision(12);
    std::cout << "# eps  pieces  bound  breakpoints / slopes\n";
    for (double eps : eps_list) {
        auto g = ConcaveSeq::from_generator(
            k, [&](std::int64_t i) { return evaluate_penalty(spec, k, i); });
        PLFunction cover = greedy_pl_cover(g, eps);
        double bound = 1.0 + std::floor(static_cast<double>(k) / 2.0);
        if (eps > 0.0)
            bound = std::min(bound, 2.0 + 2.0 * std::ceil(std::log(static_cast<double>(k)) /
                                                          std::log1p(eps)));
        std::cout << eps << "  " << cover.piece_count() << "  " << bound << "\n";
        std::cout << "  breakpoints:";
        for (double b : cover.breakpoints()) std::cout << " " << b;
        std::cout << "\n  slopes:";
        for (double m : cover.slopes()) std::cout << " " << m;
        std::cout << "\n";
    }
    return 0;
}

int cmd_oracle(const std::string& path, const std::string& json_out) {
    DSFMInstance inst = load_instance(path);
    BruteForceResult best = brute_force(inst);
    json j;
    j["schema"] = kSchema;
    std::vector<std::int64_t> ids;
    for (std::int64_t v = 0; v < inst.n; ++v)
        if (best.minimizer[static_cast<std::size_t>(v)]) ids.push_back(v + 1);
    j["solution"] = ids;
    j["objective"] = best.value;
    j["method"] = "brute_force";
    emit_result(j, json_out, false);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparsecard: cardinality-based decomposable submodular minimization via sparse graph reductions"};
    app.require_subcommand(1);

    std::string instance_path, json_out, dimacs_out, curve_spec;
    double eps = 0.0;
    std::int64_t scale = default_scale();
    std::int64_t curve_k = 0;
    bool force_asym = false, csv = false;
    std::vector<double> eps_list;

    auto* solve = app.add_subcommand("solve", "solve an instance and report the certified solution");
    solve->add_option("instance", instance_path, "instance file")->required();
    solve->add_option("--eps", eps, "approximation parameter (>= 0)");
    solve->add_option("--scale", scale, "fixed-point capacity multiplier");
    solve->add_flag("--force-asymmetric", force_asym, "use asymmetric gadgets even for symmetric penalties");
    solve->add_option("--json-out", json_out, "write the result document to this path");
    solve->add_flag("--csv", csv, "print a one-row csv summary instead of json");

    auto* reduce = app.add_subcommand("reduce", "emit the reduced graph in DIMACS max-flow format");
    reduce->add_option("instance", instance_path, "instance file")->required();
    reduce->add_option("--eps", eps, "approximation parameter (>= 0)");
    reduce->add_option("--scale", scale, "fixed-point capacity multiplier");
    reduce->add_flag("--force-asymmetric", force_asym, "use asymmetric gadgets even for symmetric penalties");
    reduce->add_option("--dimacs-out", dimacs_out, "output path ('-' for stdout)");

    auto* curve = app.add_subcommand("curve", "piece counts of the greedy cover for one penalty");
    curve->add_option("penalty", curve_spec, "penalty spec, e.g. clique or pow(0.9)")->required();
    curve->add_option("k", curve_k, "support size")->required();
    curve->add_option("--eps-list", eps_list, "eps values (default: the logarithmic sweep grid)")
        ->delimiter(',');

    auto* oracle = app.add_subcommand("oracle", "brute-force optimum (n <= 24)");
    oracle->add_option("instance", instance_path, "instance file")->required();
    oracle->add_option("--json-out", json_out, "write the result document to this path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(instance_path, eps, scale, force_asym, json_out, csv);
        if (reduce->parsed()) return cmd_reduce(instance_path, eps, scale, force_asym, dimacs_out);
        if (curve->parsed()) return cmd_curve(curve_spec, curve_k, eps_list);
        if (oracle->parsed()) return cmd_oracle(instance_path, json_out);
    } catch (const size_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
