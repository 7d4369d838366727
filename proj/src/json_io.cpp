#include "conichom/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace conichom {

namespace {

using nlohmann::json;

std::string fmt(double v, const char* spec) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string f17(double v) { return fmt(v, "%.17g"); }
std::string f9(double v) { return fmt(v, "%.9g"); }

json parse_or_throw(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw std::invalid_argument(std::string(what) + ": malformed json");
    return j;
}

int int_field(const json& j, const char* key, const char* what) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw std::invalid_argument(std::string(what) + ": missing integer field \"" + key +
                                    "\"");
    return j[key].get<int>();
}

}  // namespace

Graph graph_from_json(const std::string& text) {
    const json j = parse_or_throw(text, "graph json");
    const int n = int_field(j, "n", "graph json");
    if (n < 0) throw std::invalid_argument("graph json: n must be nonnegative");
    Graph g(n);
    if (j.contains("edges")) {
        if (!j["edges"].is_array()) throw std::invalid_argument("graph json: edges must be an array");
        for (const auto& e : j["edges"]) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
                !e[1].is_number_integer())
                throw std::invalid_argument("graph json: each edge must be a pair of integers");
            g.add_edge(e[0].get<int>(), e[1].get<int>());
        }
    }
    return g;
}

std::string graph_to_json(const Graph& g) {
    std::ostringstream os;
    os << "{\"n\": " << g.vertex_count() << ", \"edges\": [";
    bool first = true;
    for (const auto& [u, v] : g.edges()) {
        if (!first) os << ", ";
        first = false;
        os << "[" << u << ", " << v << "]";
    }
    os << "]}";
    return os.str();
}

Graph parse_graph_spec(const std::string& spec) {
    if (spec == "petersen") return petersen_graph();
    const auto colon = spec.find(':');
    if (colon != std::string::npos) {
        const std::string head = spec.substr(0, colon);
        std::vector<int> args;
        std::size_t pos = colon;
        while (pos != std::string::npos) {
            const std::size_t next = spec.find(':', pos + 1);
            const std::string tok = spec.substr(pos + 1, next == std::string::npos
                                                             ? std::string::npos
                                                             : next - pos - 1);
            try {
                std::size_t used = 0;
                args.push_back(std::stoi(tok, &used));
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw std::invalid_argument("graph spec: bad numeric argument in \"" + spec +
                                            "\"");
            }
            pos = next;
        }
        auto arity = [&](std::size_t want) {
            if (args.size() != want)
                throw std::invalid_argument("graph spec: \"" + head + "\" takes " +
                                            std::to_string(want) + " argument(s)");
        };
        if (head == "complete") return arity(1), complete_graph(args[0]);
        if (head == "cycle") return arity(1), cycle_graph(args[0]);
        if (head == "empty") return arity(1), empty_graph(args[0]);
        if (head == "path") return arity(1), path_graph(args[0]);
        if (head == "kneser") return arity(2), kneser_graph(args[0], args[1]);
        if (head == "random")
            return arity(2), random_graph(args[0], static_cast<uint32_t>(args[1]));
        throw std::invalid_argument("graph spec: unknown generator \"" + head + "\"");
    }
    std::ifstream in(spec);
    if (!in) throw std::invalid_argument("graph spec: cannot open file \"" + spec + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return graph_from_json(buf.str());
}

SymMatrix matrix_from_json(const std::string& text) {
    const json j = parse_or_throw(text, "matrix json");
    const int d = int_field(j, "dim", "matrix json");
    if (d < 0) throw std::invalid_argument("matrix json: dim must be nonnegative");
    if (!j.contains("rows") || !j["rows"].is_array() || j["rows"].size() != std::size_t(d))
        throw std::invalid_argument("matrix json: rows must be an array of dim rows");
    Eigen::MatrixXd m(d, d);
    for (int i = 0; i < d; ++i) {
        const auto& row = j["rows"][i];
        if (!row.is_array() || row.size() != std::size_t(d))
            throw std::invalid_argument("matrix json: each row must hold dim numbers");
        for (int k = 0; k < d; ++k) {
            if (!row[k].is_number())
                throw std::invalid_argument("matrix json: entries must be numbers");
            m(i, k) = row[k].get<double>();
        }
    }
    return SymMatrix(std::move(m));
}

std::string matrix_to_json(const SymMatrix& m) {
    std::ostringstream os;
    os << "{\"dim\": " << m.dim() << ", \"rows\": [";
    for (int i = 0; i < m.dim(); ++i) {
        os << (i ? ", [" : "[");
        for (int k = 0; k < m.dim(); ++k) os << (k ? ", " : "") << f17(m(i, k));
        os << "]";
    }
    os << "]}";
    return os.str();
}

std::string theta_result_to_json(const ThetaResult& r) {
    std::ostringstream os;
    os << "{\"parameter\": \"" << (r.kind == ThetaKind::Theta ? "theta" : "big_theta")
       << "\", \"cone\": \"" << cone_name(r.cone) << "\", \"value\": " << f9(r.value)
       << ", \"gap\": " << f9(r.exact ? 0.0 : r.report.gap) << ", \"attained\": "
       << ((r.exact || r.report.status == SolveStatus::Optimal) ? "true" : "false") << "}";
    return os.str();
}

std::string verdict_name(HomVerdict v) {
    switch (v) {
        case HomVerdict::Yes: return "yes";
        case HomVerdict::No: return "no";
        default: return "inconclusive";
    }
}

std::string method_name(HomMethod m) {
    switch (m) {
        case HomMethod::DirectFeasibility: return "direct-feasibility";
        case HomMethod::ThetaReduction: return "theta-reduction";
        default: return "combinatorial";
    }
}

std::string hom_decision_to_json(const HomDecision& d) {
    std::ostringstream os;
    os << "{\"verdict\": \"" << verdict_name(d.verdict) << "\", \"method\": \""
       << method_name(d.method) << "\"";
    if (d.method != HomMethod::Combinatorial)
        os << ", \"theta_product\": " << f9(d.theta_product);
    if (d.witness) {
        const auto& r = d.witness->residuals;
        os << ", \"witness_residuals\": {\"block_sum_dev\": " << f9(r.block_sum_dev)
           << ", \"ortho_dev\": " << f9(r.ortho_dev) << ", \"mortho_dev\": " << f9(r.mortho_dev)
           << ", \"cone_dev\": " << f9(r.cone_dev) << "}";
    }
    os << ", \"detail\": " << nlohmann::json(d.detail).dump() << "}";
    return os.str();
}

std::string witness_to_json(const HomWitness& w) {
    const auto& r = w.residuals;
    std::ostringstream os;
    os << "{\"x\": " << graph_to_json(w.x) << ", \"y\": " << graph_to_json(w.y)
       << ", \"cone\": \"" << cone_name(w.cone) << "\", \"mode\": \"" << mode_name(w.mode)
       << "\", \"matrix\": " << matrix_to_json(w.H)
       << ", \"residuals\": {\"block_sum_dev\": " << f9(r.block_sum_dev)
       << ", \"ortho_dev\": " << f9(r.ortho_dev) << ", \"mortho_dev\": " << f9(r.mortho_dev)
       << ", \"cone_dev\": " << f9(r.cone_dev) << "}}";
    return os.str();
}

}  // namespace conichom
