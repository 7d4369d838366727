#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace conichom {

// Finite simple undirected graph on vertices 0..n-1.
// Loops and duplicate edges are rejected at construction time.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);

    int vertex_count() const { return n_; }
    int edge_count() const { return edge_count_; }

    bool adjacent(int u, int v) const { return adj_[static_cast<size_t>(u) * n_ + v] != 0; }
    void add_edge(int u, int v);

    // Edges as (u, v) with u < v, in lexicographic order.
    std::vector<std::pair<int, int>> edges() const;
    std::vector<int> neighbors(int v) const;
    int degree(int v) const;

    bool operator==(const Graph& other) const = default;

private:
    void check_vertex(int v) const;

    int n_ = 0;
    int edge_count_ = 0;
    std::vector<uint8_t> adj_;
};

// Flat labeling of ordered vertex pairs (x, y) -> x * ny + y, shared by every
// matrix indexed over V(X) x V(Y).
struct VertexPairIndex {
    int nx = 0;
    int ny = 0;

    VertexPairIndex() = default;
    VertexPairIndex(int nx_in, int ny_in);

    int size() const { return nx * ny; }
    int flat(int x, int y) const { return x * ny + y; }
    std::pair<int, int> unflat(int i) const { return {i / ny, i % ny}; }
};

Graph complement(const Graph& g);
Graph disjoint_union(const Graph& a, const Graph& b);

// Vertex set of every product is V(X) x V(Y) with the VertexPairIndex layout.
Graph categorical_product(const Graph& x, const Graph& y);
Graph strong_product(const Graph& x, const Graph& y);
Graph lexicographic_product(const Graph& x, const Graph& y);
Graph disjunctive_product(const Graph& x, const Graph& y);

// (x,y) ~ (x',y') iff (x = x' and y != y') or (x ~ x' and y !~ y'),
// where y !~ y' covers y = y' as well.
Graph homomorphic_product(const Graph& x, const Graph& y);

Graph complete_graph(int n);
Graph empty_graph(int n);
Graph cycle_graph(int n);  // n >= 3
Graph path_graph(int n);   // n >= 1
Graph petersen_graph();
Graph kneser_graph(int n, int k);  // vertices are k-subsets of {0..n-1} in lex order

// Erdos-Renyi G(n, 1/2), deterministic for a given seed across platforms.
Graph random_graph(int n, uint32_t seed);

inline constexpr int kDefaultAutomorphismVertexLimit = 12;

// Every vertex permutation p with adjacency(p(u), p(v)) == adjacency(u, v).
// Factorial worst case; guarded by the vertex limit.
std::vector<std::vector<int>> automorphisms(const Graph& g,
                                            int vertex_limit = kDefaultAutomorphismVertexLimit);

bool is_vertex_transitive(const Graph& g,
                          int vertex_limit = kDefaultAutomorphismVertexLimit);

// Edge-preserving vertex map X -> Y found by backtracking with forward
// checking, or nullopt when exhaustive search proves none exists.
std::optional<std::vector<int>> classical_homomorphism(const Graph& x, const Graph& y);

// Check that an explicit map is edge preserving.
bool is_homomorphism(const Graph& x, const Graph& y, const std::vector<int>& map);

}  // namespace conichom
