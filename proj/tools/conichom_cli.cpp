#include <cstdint>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "conichom/errors.hpp"
#include "conichom/graph.hpp"
#include "conichom/homomorphism.hpp"
#include "conichom/json_io.hpp"
#include "conichom/theta.hpp"
#include "conichom/verify.hpp"

namespace {

conichom::ConeTag parse_cone(const std::string& s) {
    if (s == "cp") return conichom::ConeTag::CP;
    if (s == "dnn") return conichom::ConeTag::DNN;
    return conichom::ConeTag::SPLUS;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << text;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace conichom;

    CLI::App app{"conic graph homomorphisms and generalized theta functions"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string cone_s = "splus";
    std::string mode_s = "strong";
    std::string json_path;
    SolverOptions sopt = default_solver_options();
    uint32_t seed = 1;
    int max_size = 10;
    bool verbose = false;
    app.add_option("--cone", cone_s, "matrix cone")->check(CLI::IsMember({"cp", "dnn", "splus"}));
    app.add_option("--mode", mode_s, "witness mode")->check(CLI::IsMember({"strong", "weak"}));
    app.add_option("--feas-tol", sopt.feas_tol, "solver feasibility tolerance");
    app.add_option("--gap-tol", sopt.gap_tol, "solver gap tolerance");
    app.add_option("--seed", seed, "seed for the random corpus graphs");
    app.add_option("--max-size", max_size, "largest corpus graph admitted");
    app.add_option("--json", json_path, "also write the result JSON to this file");
    app.add_flag("--verbose", verbose, "per-instance progress on stderr");

    auto* cmd_theta = app.add_subcommand("theta", "evaluate a theta parameter of a graph");
    std::string theta_spec, kind = "theta";
    cmd_theta->add_option("graph", theta_spec, "graph file or generator string")->required();
    cmd_theta->add_option("--kind", kind, "which parameter")
        ->check(CLI::IsMember({"theta", "big_theta"}));

    auto* cmd_hom = app.add_subcommand("hom", "decide a conic homomorphism between two graphs");
    std::string hom_x, hom_y;
    cmd_hom->add_option("graphX", hom_x, "source graph")->required();
    cmd_hom->add_option("graphY", hom_y, "target graph")->required();

    auto* cmd_verify = app.add_subcommand("verify", "run invariant suites over the corpus");
    std::string suite = "all";
    cmd_verify->add_option("suite", suite, "suite name, alias, or 'all'");

    auto* cmd_product = app.add_subcommand("product", "construct a graph product");
    std::string op, prod_x, prod_y;
    cmd_product->add_option("op", op, "product operation")
        ->required()
        ->check(CLI::IsMember(
            {"homomorphic", "categorical", "strong", "lexicographic", "disjunctive", "union"}));
    cmd_product->add_option("graphX", prod_x, "first graph")->required();
    cmd_product->add_option("graphY", prod_y, "second graph")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        const ConeTag cone = parse_cone(cone_s);
        const HomMode mode = mode_s == "weak" ? HomMode::Weak : HomMode::Strong;

        if (*cmd_theta) {
            const Graph g = parse_graph_spec(theta_spec);
            const ThetaResult r = kind == "theta" ? theta(g, cone, sopt)
                                                  : big_theta(g, cone, sopt);
            const std::string out = theta_result_to_json(r);
            std::cout << out << "\n";
            if (!json_path.empty()) write_file(json_path, out);
            if (verbose)
                std::cerr << "status: " << (r.exact ? "exact" : "solver") << ", iterations "
                          << r.report.iterations << "\n";
            return r.exact || r.report.status == SolveStatus::Optimal ? 0 : 2;
        }

        if (*cmd_hom) {
            const Graph x = parse_graph_spec(hom_x);
            const Graph y = parse_graph_spec(hom_y);
            const HomDecision d = decide_hom(x, y, cone, mode, sopt);
            const std::string out = hom_decision_to_json(d);
            std::cout << out << "\n";
            if (!json_path.empty()) write_file(json_path, out);
            if (verbose) std::cerr << d.detail << "\n";
            switch (d.verdict) {
                case HomVerdict::Yes: return 0;
                case HomVerdict::No: return 3;
                default: return 2;
            }
        }

        if (*cmd_verify) {
            VerifyOptions vo;
            vo.corpus.seed = seed;
            vo.corpus.max_size = max_size;
            vo.solver = sopt;
            vo.verbose = verbose;
            vo.log = &std::cerr;
            const auto report = run_suites(resolve_suites(suite), vo);
            std::cout << report_to_text(report);
            if (!json_path.empty()) write_file(json_path, report_to_json(report));
            bool any_fail = false, any_inconclusive = false;
            for (const auto& r : report) {
                any_fail = any_fail || r.failed > 0;
                any_inconclusive = any_inconclusive || r.inconclusive > 0;
            }
            return any_fail ? 3 : (any_inconclusive ? 2 : 0);
        }

        if (*cmd_product) {
            const Graph x = parse_graph_spec(prod_x);
            const Graph y = parse_graph_spec(prod_y);
            Graph g;
            if (op == "homomorphic") g = homomorphic_product(x, y);
            else if (op == "categorical") g = categorical_product(x, y);
            else if (op == "strong") g = strong_product(x, y);
            else if (op == "lexicographic") g = lexicographic_product(x, y);
            else if (op == "disjunctive") g = disjunctive_product(x, y);
            else g = disjoint_union(x, y);
            const std::string out = graph_to_json(g);
            std::cout << out << "\n";
            if (!json_path.empty()) write_file(json_path, out);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
