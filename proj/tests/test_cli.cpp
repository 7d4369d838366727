#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "conichom/graph.hpp"
#include "conichom/homomorphism.hpp"
#include "conichom/json_io.hpp"
#include "conichom/symmetric_matrix.hpp"
#include "conichom/theta.hpp"

using namespace conichom;

TEST_CASE("graph json round trip is canonical and byte-stable") {
    // Edges arrive unsorted and reversed; serialization sorts them u < v.
    const Graph g = graph_from_json(R"({"n": 4, "edges": [[3, 1], [2, 0], [0, 1]]})");
    const std::string canon = graph_to_json(g);
    CHECK(canon == "{\"n\": 4, \"edges\": [[0, 1], [0, 2], [1, 3]]}");
    // Canonical text is a fixed point of parse-then-print.
    CHECK(graph_to_json(graph_from_json(canon)) == canon);

    CHECK(graph_to_json(Graph(0)) == "{\"n\": 0, \"edges\": []}");
    CHECK(graph_to_json(empty_graph(2)) == "{\"n\": 2, \"edges\": []}");
}

TEST_CASE("graph json rejects malformed input") {
    CHECK_THROWS_AS((void)graph_from_json("not json"), std::invalid_argument);
    CHECK_THROWS_AS((void)graph_from_json(R"({"edges": []})"), std::invalid_argument);
    CHECK_THROWS_AS((void)graph_from_json(R"({"n": -1})"), std::invalid_argument);
    CHECK_THROWS_AS((void)graph_from_json(R"({"n": 2, "edges": 7})"), std::invalid_argument);
    CHECK_THROWS_AS((void)graph_from_json(R"({"n": 2, "edges": [[0]]})"), std::invalid_argument);
    CHECK_THROWS_AS((void)graph_from_json(R"({"n": 2, "edges": [[0, "a"]]})"),
                    std::invalid_argument);
    // Structural validation comes from the graph itself.
    CHECK_THROWS((void)graph_from_json(R"({"n": 2, "edges": [[0, 5]]})"));
    CHECK_THROWS((void)graph_from_json(R"({"n": 2, "edges": [[1, 1]]})"));
}

TEST_CASE("matrix json round trip preserves doubles exactly") {
    Eigen::MatrixXd m(3, 3);
    const double a = 1.0 / 3.0, b = std::sqrt(2.0), c = -7.25e-13;
    m << 1.0, a, b,
         a, 2.0, c,
         b, c, 0.0;
    const SymMatrix s{m};
    const SymMatrix back = matrix_from_json(matrix_to_json(s));
    REQUIRE(back.dim() == 3);
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) CHECK(back(i, k) == s(i, k));  // bit-exact via %.17g

    CHECK_THROWS_AS((void)matrix_from_json("[]"), std::invalid_argument);
    CHECK_THROWS_AS((void)matrix_from_json(R"({"dim": 2, "rows": [[1, 0]]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)matrix_from_json(R"({"dim": 1, "rows": [["x"]]})"),
                    std::invalid_argument);
}

TEST_CASE("graph specs cover the named generators") {
    CHECK(parse_graph_spec("complete:4") == complete_graph(4));
    CHECK(parse_graph_spec("cycle:5") == cycle_graph(5));
    CHECK(parse_graph_spec("empty:3") == empty_graph(3));
    CHECK(parse_graph_spec("path:4") == path_graph(4));
    CHECK(parse_graph_spec("petersen") == petersen_graph());
    CHECK(parse_graph_spec("kneser:5:2") == kneser_graph(5, 2));
    // Seeded samples are deterministic.
    CHECK(parse_graph_spec("random:6:9") == parse_graph_spec("random:6:9"));
    CHECK(parse_graph_spec("random:6:9") == random_graph(6, 9));

    CHECK_THROWS_AS((void)parse_graph_spec("nosuch:5"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_graph_spec("cycle:x"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_graph_spec("cycle:3:4"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_graph_spec("kneser:5"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_graph_spec("/no/such/file.json"), std::invalid_argument);
}

TEST_CASE("graph specs fall back to reading json files") {
    const std::string path = "cli_spec_roundtrip.json";
    {
        std::ofstream out(path);
        out << graph_to_json(cycle_graph(6));
    }
    CHECK(parse_graph_spec(path) == cycle_graph(6));
    std::remove(path.c_str());
}

TEST_CASE("theta results serialize with value, gap, and attainment") {
    const ThetaResult r = theta(cycle_graph(5), ConeTag::SPLUS);
    const nlohmann::json j = nlohmann::json::parse(theta_result_to_json(r));
    CHECK(j["parameter"] == "theta");
    CHECK(j["cone"] == "splus");
    CHECK(std::abs(j["value"].get<double>() - std::sqrt(5.0)) < 1e-6);
    CHECK(j["gap"].get<double>() >= 0.0);
    CHECK(j["attained"].get<bool>());

    const ThetaResult e = theta(complete_graph(3), ConeTag::CP);
    const nlohmann::json je = nlohmann::json::parse(theta_result_to_json(e));
    CHECK(je["value"] == 1.0);  // exactly one independent vertex
    CHECK(je["gap"] == 0.0);
    CHECK(je["attained"].get<bool>());

    const ThetaResult b = big_theta(cycle_graph(4), ConeTag::SPLUS);
    const nlohmann::json jb = nlohmann::json::parse(theta_result_to_json(b));
    CHECK(jb["parameter"] == "big_theta");
    CHECK(std::abs(jb["value"].get<double>() - 2.0) < 1e-6);
}

TEST_CASE("hom decisions serialize verdict, method, and residuals") {
    const HomDecision yes = decide_hom(cycle_graph(5), complete_graph(3), ConeTag::CP,
                                       HomMode::Strong);
    const nlohmann::json jy = nlohmann::json::parse(hom_decision_to_json(yes));
    CHECK(jy["verdict"] == "yes");
    CHECK(jy["method"] == "combinatorial");
    REQUIRE(jy.contains("witness_residuals"));
    CHECK(jy["witness_residuals"]["block_sum_dev"].get<double>() <= 1e-12);
    CHECK(jy["detail"].is_string());

    const HomDecision no = decide_hom(complete_graph(3), cycle_graph(5), ConeTag::SPLUS,
                                      HomMode::Strong);
    const nlohmann::json jn = nlohmann::json::parse(hom_decision_to_json(no));
    CHECK(jn["verdict"] == "no");
    CHECK(jn.contains("theta_product"));
    CHECK(!jn.contains("witness_residuals"));
}

TEST_CASE("witnesses serialize with both graphs and the full matrix") {
    const HomDecision d = decide_hom(cycle_graph(4), complete_graph(2), ConeTag::CP,
                                     HomMode::Strong);
    REQUIRE(d.witness.has_value());
    const nlohmann::json j = nlohmann::json::parse(witness_to_json(*d.witness));
    CHECK(j["cone"] == "cp");
    CHECK(j["mode"] == "strong");
    CHECK(j["x"]["n"] == 4);
    CHECK(j["y"]["n"] == 2);
    CHECK(j["matrix"]["dim"] == 8);
    const SymMatrix h = matrix_from_json(j["matrix"].dump());
    CHECK(h.dim() == 8);
    CHECK(j["residuals"]["cone_dev"].get<double>() <= 1e-12);
}

TEST_CASE("verdict and method names are stable strings") {
    CHECK(verdict_name(HomVerdict::Yes) == "yes");
    CHECK(verdict_name(HomVerdict::No) == "no");
    CHECK(verdict_name(HomVerdict::Inconclusive) == "inconclusive");
    CHECK(method_name(HomMethod::DirectFeasibility) == "direct-feasibility");
    CHECK(method_name(HomMethod::ThetaReduction) == "theta-reduction");
    CHECK(method_name(HomMethod::Combinatorial) == "combinatorial");
}
