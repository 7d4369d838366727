#pragma once

#include <string>

#include "conichom/graph.hpp"
#include "conichom/homomorphism.hpp"
#include "conichom/symmetric_matrix.hpp"
#include "conichom/theta.hpp"

namespace conichom {

// Graph JSON: {"n": <int>, "edges": [[u,v], ...]}.  The writer emits edges
// canonically (u < v, lexicographically sorted) so load-then-emit is
// byte-identical; the parser accepts either endpoint order.
Graph graph_from_json(const std::string& text);
std::string graph_to_json(const Graph& g);

// A graph spec is a generator string (complete:n, cycle:n, empty:n, path:n,
// petersen, kneser:n:k, random:n:seed) or a path to a graph JSON file.
Graph parse_graph_spec(const std::string& spec);

// Matrix JSON: {"dim": d, "rows": [[...], ...]} with full symmetric rows
// written at 17 significant digits, so values round-trip exactly.
SymMatrix matrix_from_json(const std::string& text);
std::string matrix_to_json(const SymMatrix& m);

// Result payloads; floating values at 9 significant digits.
std::string theta_result_to_json(const ThetaResult& r);
std::string hom_decision_to_json(const HomDecision& d);

// Graph pair descriptors + matrix + residual report.
std::string witness_to_json(const HomWitness& w);

std::string verdict_name(HomVerdict v);
std::string method_name(HomMethod m);

}  // namespace conichom
