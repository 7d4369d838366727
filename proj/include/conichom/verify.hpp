#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "conichom/conic_program.hpp"
#include "conichom/graph.hpp"

namespace conichom {

struct CorpusOptions {
    int max_size = 10;    // drop named graphs larger than this
    int random_min = 4;   // G(n, 1/2) sample sizes, inclusive
    int random_max = 8;
    uint32_t seed = 1;
};

struct NamedGraph {
    std::string name;  // generator-string form, reproducible from the CLI
    Graph graph;
};

// Named generators plus seeded G(n, 1/2) samples, deterministically ordered.
std::vector<NamedGraph> verification_corpus(const CorpusOptions& options = {});

struct SuiteResult {
    std::string id;
    int instances = 0;
    int passed = 0;
    int failed = 0;
    int inconclusive = 0;
    double worst_residual = 0.0;
    double wall_seconds = 0.0;
    std::vector<std::string> failures;  // reproducible instance descriptors

    bool ok() const { return failed == 0; }
};

struct VerifyOptions {
    CorpusOptions corpus;
    SolverOptions solver = default_solver_options();
    int workers = 0;  // 0 = hardware concurrency
    bool verbose = false;
    std::ostream* log = nullptr;  // per-instance lines when verbose
};

// Canonical suite names in execution order.
const std::vector<std::string>& suite_names();

// Map "all", a canonical name, or a registered alias to canonical names.
// Unknown tokens raise std::invalid_argument listing the known suites.
std::vector<std::string> resolve_suites(const std::string& token);

std::vector<SuiteResult> run_suites(const std::vector<std::string>& names,
                                    const VerifyOptions& options = {});

std::string report_to_text(const std::vector<SuiteResult>& report);
std::string report_to_json(const std::vector<SuiteResult>& report);

}  // namespace conichom
