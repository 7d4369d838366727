#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "conichom/json_io.hpp"
#include "conichom/verify.hpp"

using namespace conichom;

namespace {

bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

const NamedGraph* find_named(const std::vector<NamedGraph>& corpus, const std::string& name) {
    for (const NamedGraph& g : corpus)
        if (g.name == name) return &g;
    return nullptr;
}

}  // namespace

TEST_CASE("suite registry exposes the canonical checks") {
    const std::vector<std::string>& names = suite_names();
    CHECK(names.size() == 17);
    // Spot-check the anchors of the registry; order is execution order.
    CHECK(names.front() == "theta-duality");
    CHECK(names.back() == "gram-blocksum");
    for (const char* id :
         {"theta-order", "cp-equivalence", "dnn-repair", "reflexivity", "transitivity",
          "hom-theta", "monotonicity", "multiplicativity", "lattice", "alpha-consistency",
          "weak-splus-degenerate", "weak-alpha", "alpha-attainment", "nonsignalling",
          "cone-closure"})
        CHECK(contains(names, id));
    // No duplicates.
    std::set<std::string> uniq(names.begin(), names.end());
    CHECK(uniq.size() == names.size());
}

TEST_CASE("suite name resolution accepts canonical ids, aliases, and 'all'") {
    CHECK(resolve_suites("all") == suite_names());
    CHECK(resolve_suites("ALL") == suite_names());

    CHECK(resolve_suites("theta-duality") == std::vector<std::string>{"theta-duality"});
    CHECK(resolve_suites("thm:thetas") == std::vector<std::string>{"theta-duality"});
    CHECK(resolve_suites("THM:THETAS") == std::vector<std::string>{"theta-duality"});
    CHECK(resolve_suites("lem:Gram") == std::vector<std::string>{"gram-blocksum"});
    CHECK(resolve_suites("ns") == std::vector<std::string>{"nonsignalling"});
    CHECK(resolve_suites("nonsignaling") == std::vector<std::string>{"nonsignalling"});
    CHECK(resolve_suites("repair") == std::vector<std::string>{"dnn-repair"});
    CHECK(resolve_suites("closure") == std::vector<std::string>{"cone-closure"});
    CHECK(resolve_suites("meet-join") == std::vector<std::string>{"lattice"});
    CHECK(resolve_suites("stronghom2alpha") == std::vector<std::string>{"cp-equivalence"});

    CHECK_THROWS_AS((void)resolve_suites("no-such-suite"), std::invalid_argument);
    try {
        (void)resolve_suites("no-such-suite");
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        // The error lists the valid tokens so a caller can self-correct.
        CHECK(msg.find("all") != std::string::npos);
        CHECK(msg.find("theta-duality") != std::string::npos);
    }
}

TEST_CASE("verification corpus is deterministic and reproducible from names") {
    const std::vector<NamedGraph> corpus = verification_corpus();
    const std::vector<NamedGraph> again = verification_corpus();
    REQUIRE(corpus.size() == again.size());
    for (size_t i = 0; i < corpus.size(); ++i) {
        CHECK(corpus[i].name == again[i].name);
        CHECK(corpus[i].graph == again[i].graph);
    }

    // Every name is a generator spec that rebuilds the same graph.
    for (const NamedGraph& g : corpus) {
        CAPTURE(g.name);
        CHECK(parse_graph_spec(g.name) == g.graph);
    }

    const NamedGraph* petersen = find_named(corpus, "petersen");
    REQUIRE(petersen != nullptr);
    CHECK(petersen->graph.vertex_count() == 10);
    CHECK(petersen->graph.edge_count() == 15);
    CHECK(find_named(corpus, "complete:5") != nullptr);
    CHECK(find_named(corpus, "cycle:7") != nullptr);
}

TEST_CASE("corpus size cap filters the named graphs") {
    CorpusOptions small;
    small.max_size = 4;
    small.random_min = 4;
    small.random_max = 4;
    const std::vector<NamedGraph> corpus = verification_corpus(small);
    CHECK(!corpus.empty());
    for (const NamedGraph& g : corpus) {
        CAPTURE(g.name);
        CHECK(g.graph.vertex_count() <= 4);
    }
    CHECK(find_named(corpus, "petersen") == nullptr);
    CHECK(find_named(corpus, "complete:5") == nullptr);
}

TEST_CASE("corpus seeds change the random samples only") {
    CorpusOptions a, b;
    a.seed = 1;
    b.seed = 2;
    const std::vector<NamedGraph> ca = verification_corpus(a);
    const std::vector<NamedGraph> cb = verification_corpus(b);
    REQUIRE(ca.size() == cb.size());
    bool some_random_differs = false;
    for (size_t i = 0; i < ca.size(); ++i) {
        const bool is_random = ca[i].name.rfind("random:", 0) == 0;
        if (!is_random) {
            CHECK(ca[i].name == cb[i].name);
            CHECK(ca[i].graph == cb[i].graph);
        } else if (!(ca[i].graph == cb[i].graph)) {
            some_random_differs = true;
        }
    }
    CHECK(some_random_differs);
}

TEST_CASE("reports render as text table and JSON array") {
    VerifyOptions opt;
    opt.corpus.max_size = 4;
    opt.corpus.random_min = 4;
    opt.corpus.random_max = 4;
    const std::vector<SuiteResult> report = run_suites({"reflexivity", "gram-blocksum"}, opt);
    REQUIRE(report.size() == 2);
    CHECK(report[0].id == "reflexivity");
    CHECK(report[1].id == "gram-blocksum");

    const std::string text = report_to_text(report);
    CHECK(text.find("suite") != std::string::npos);
    CHECK(text.find("reflexivity") != std::string::npos);
    CHECK(text.find("gram-blocksum") != std::string::npos);

    const nlohmann::json j = nlohmann::json::parse(report_to_json(report));
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 2);
    for (const auto& row : j) {
        CHECK(row.contains("suite"));
        CHECK(row.contains("instances"));
        CHECK(row.contains("passed"));
        CHECK(row.contains("failed"));
        CHECK(row.contains("inconclusive"));
        CHECK(row.contains("worst_residual"));
        CHECK(row.contains("wall_seconds"));
        CHECK(row.contains("failures"));
    }
    CHECK(j[0]["suite"] == "reflexivity");
    CHECK(j[0]["failed"] == 0);
}

TEST_CASE("run_suites rejects unknown suite ids") {
    CHECK_THROWS_AS((void)run_suites({"bogus"}, VerifyOptions{}), std::invalid_argument);
}

TEST_CASE("every verification suite passes on the full corpus") {
    VerifyOptions opt;  // default corpus: named graphs to 10 vertices plus random samples
    const std::vector<SuiteResult> report = run_suites(suite_names(), opt);
    REQUIRE(report.size() == suite_names().size());
    for (const SuiteResult& s : report) {
        CAPTURE(s.id);
        for (const std::string& f : s.failures) CAPTURE(f);
        CHECK(s.failed == 0);
        CHECK(s.inconclusive == 0);
        CHECK(s.instances > 0);
        CHECK(s.passed == s.instances);
        CHECK(s.ok());
    }
}
