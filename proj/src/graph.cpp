#include "conichom/graph.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "conichom/errors.hpp"

namespace conichom {

Graph::Graph(int n) : n_(n) {
    if (n < 0) throw std::invalid_argument("graph: vertex count must be nonnegative");
    adj_.assign(static_cast<size_t>(n) * n, 0);
}

void Graph::check_vertex(int v) const {
    if (v < 0 || v >= n_) {
        throw std::invalid_argument("graph: vertex " + std::to_string(v) + " out of range [0, " +
                                    std::to_string(n_) + ")");
    }
}

void Graph::add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("graph: loops are not allowed");
    if (adjacent(u, v)) throw std::invalid_argument("graph: duplicate edge");
    adj_[static_cast<size_t>(u) * n_ + v] = 1;
    adj_[static_cast<size_t>(v) * n_ + u] = 1;
    ++edge_count_;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> result;
    result.reserve(edge_count_);
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if (adjacent(u, v)) result.emplace_back(u, v);
    return result;
}

std::vector<int> Graph::neighbors(int v) const {
    check_vertex(v);
    std::vector<int> result;
    for (int u = 0; u < n_; ++u)
        if (adjacent(v, u)) result.push_back(u);
    return result;
}

int Graph::degree(int v) const {
    check_vertex(v);
    int d = 0;
    for (int u = 0; u < n_; ++u)
        if (adjacent(v, u)) ++d;
    return d;
}

VertexPairIndex::VertexPairIndex(int nx_in, int ny_in) : nx(nx_in), ny(ny_in) {
    if (nx < 0 || ny < 0) throw std::invalid_argument("vertex pair index: negative dimension");
}

Graph complement(const Graph& g) {
    const int n = g.vertex_count();
    Graph result(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!g.adjacent(u, v)) result.add_edge(u, v);
    return result;
}

Graph disjoint_union(const Graph& a, const Graph& b) {
    const int na = a.vertex_count();
    Graph result(na + b.vertex_count());
    for (auto [u, v] : a.edges()) result.add_edge(u, v);
    for (auto [u, v] : b.edges()) result.add_edge(na + u, na + v);
    return result;
}

namespace {

template <typename AdjacencyRule>
Graph pair_graph(const Graph& x, const Graph& y, AdjacencyRule rule) {
    const VertexPairIndex idx(x.vertex_count(), y.vertex_count());
    Graph result(idx.size());
    for (int i = 0; i < idx.size(); ++i) {
        const auto [xi, yi] = idx.unflat(i);
        for (int j = i + 1; j < idx.size(); ++j) {
            const auto [xj, yj] = idx.unflat(j);
            if (rule(xi, yi, xj, yj)) result.add_edge(i, j);
        }
    }
    return result;
}

}  // namespace

Graph categorical_product(const Graph& x, const Graph& y) {
    return pair_graph(x, y, [&](int a, int b, int c, int d) {
        return x.adjacent(a, c) && y.adjacent(b, d);
    });
}

Graph strong_product(const Graph& x, const Graph& y) {
    return pair_graph(x, y, [&](int a, int b, int c, int d) {
        const bool xe = x.adjacent(a, c), ye = y.adjacent(b, d);
        return (xe && ye) || (a == c && ye) || (xe && b == d);
    });
}

Graph lexicographic_product(const Graph& x, const Graph& y) {
    return pair_graph(x, y, [&](int a, int b, int c, int d) {
        return x.adjacent(a, c) || (a == c && y.adjacent(b, d));
    });
}

Graph disjunctive_product(const Graph& x, const Graph& y) {
    return pair_graph(x, y, [&](int a, int b, int c, int d) {
        return x.adjacent(a, c) || y.adjacent(b, d);
    });
}

Graph homomorphic_product(const Graph& x, const Graph& y) {
    return pair_graph(x, y, [&](int a, int b, int c, int d) {
        if (a == c) return b != d;
        return x.adjacent(a, c) && !y.adjacent(b, d);
    });
}

Graph complete_graph(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

Graph empty_graph(int n) { return Graph(n); }

Graph cycle_graph(int n) {
    if (n < 3) throw std::invalid_argument("cycle: need at least 3 vertices");
    Graph g(n);
    for (int v = 0; v < n; ++v) {
        const int w = (v + 1) % n;
        if (!g.adjacent(v, w)) g.add_edge(std::min(v, w), std::max(v, w));
    }
    return g;
}

Graph path_graph(int n) {
    if (n < 1) throw std::invalid_argument("path: need at least 1 vertex");
    Graph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

Graph petersen_graph() {
    // Outer 5-cycle 0..4, inner pentagram 5..9, spokes v -- v+5.
    Graph g(10);
    for (int v = 0; v < 5; ++v) {
        g.add_edge(v, (v + 1) % 5);
        g.add_edge(5 + v, 5 + (v + 2) % 5);
        g.add_edge(v, 5 + v);
    }
    return g;
}

Graph kneser_graph(int n, int k) {
    if (k < 1 || n < 2 * k) throw std::invalid_argument("kneser: require 1 <= k and n >= 2k");
    if (n > 30) throw CapabilityError("kneser: ground set too large");
    // k-subsets as bitmasks, enumerated in lexicographic order.
    std::vector<uint32_t> subsets;
    std::vector<int> c(k);
    for (int i = 0; i < k; ++i) c[i] = i;
    while (true) {
        uint32_t mask = 0;
        for (int e : c) mask |= 1u << e;
        subsets.push_back(mask);
        if (subsets.size() > 4096) throw CapabilityError("kneser: too many vertices");
        int i = k - 1;
        while (i >= 0 && c[i] == n - k + i) --i;
        if (i < 0) break;
        ++c[i];
        for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    }
    Graph g(static_cast<int>(subsets.size()));
    for (size_t i = 0; i < subsets.size(); ++i)
        for (size_t j = i + 1; j < subsets.size(); ++j)
            if ((subsets[i] & subsets[j]) == 0) g.add_edge(static_cast<int>(i), static_cast<int>(j));
    return g;
}

Graph random_graph(int n, uint32_t seed) {
    if (n < 0) throw std::invalid_argument("random graph: negative vertex count");
    std::mt19937 gen(seed);
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if ((gen() & 1u) != 0) g.add_edge(u, v);
    return g;
}

namespace {

void automorphism_backtrack(const Graph& g, std::vector<int>& image, std::vector<bool>& used,
                            int depth, const std::vector<int>& degree,
                            std::vector<std::vector<int>>& out) {
    const int n = g.vertex_count();
    if (depth == n) {
        out.push_back(image);
        return;
    }
    for (int w = 0; w < n; ++w) {
        if (used[w] || degree[depth] != degree[w]) continue;
        bool ok = true;
        for (int u = 0; u < depth && ok; ++u)
            ok = g.adjacent(u, depth) == g.adjacent(image[u], w);
        if (!ok) continue;
        image[depth] = w;
        used[w] = true;
        automorphism_backtrack(g, image, used, depth + 1, degree, out);
        used[w] = false;
    }
}

}  // namespace

std::vector<std::vector<int>> automorphisms(const Graph& g, int vertex_limit) {
    const int n = g.vertex_count();
    if (n > vertex_limit) {
        throw CapabilityError("automorphisms: " + std::to_string(n) + " vertices exceeds limit " +
                              std::to_string(vertex_limit));
    }
    std::vector<int> degree(n);
    for (int v = 0; v < n; ++v) degree[v] = g.degree(v);
    std::vector<std::vector<int>> out;
    std::vector<int> image(n, -1);
    std::vector<bool> used(n, false);
    automorphism_backtrack(g, image, used, 0, degree, out);
    return out;
}

bool is_vertex_transitive(const Graph& g, int vertex_limit) {
    const int n = g.vertex_count();
    if (n == 0) return true;
    std::vector<bool> orbit(n, false);
    int orbit_size = 0;
    for (const auto& perm : automorphisms(g, vertex_limit)) {
        if (!orbit[perm[0]]) {
            orbit[perm[0]] = true;
            ++orbit_size;
        }
    }
    return orbit_size == n;
}

namespace {

bool homomorphism_backtrack(const Graph& x, const Graph& y, const std::vector<int>& order,
                            int depth, std::vector<int>& map,
                            std::vector<std::vector<char>>& candidates) {
    const int nx = x.vertex_count();
    const int ny = y.vertex_count();
    if (depth == nx) return true;
    const int v = order[depth];
    for (int w = 0; w < ny; ++w) {
        if (!candidates[v][w]) continue;
        map[v] = w;
        // Restrict candidates of later neighbors of v to neighbors of w.
        std::vector<std::pair<int, int>> removed;
        bool dead = false;
        for (int di = depth + 1; di < nx && !dead; ++di) {
            const int u = order[di];
            if (!x.adjacent(u, v)) continue;
            int live = 0;
            for (int z = 0; z < ny; ++z) {
                if (candidates[u][z] && !y.adjacent(w, z)) {
                    candidates[u][z] = 0;
                    removed.emplace_back(u, z);
                } else if (candidates[u][z]) {
                    ++live;
                }
            }
            dead = live == 0;
        }
        if (!dead && homomorphism_backtrack(x, y, order, depth + 1, map, candidates)) return true;
        for (auto [u, z] : removed) candidates[u][z] = 1;
        map[v] = -1;
    }
    return false;
}

}  // namespace

std::optional<std::vector<int>> classical_homomorphism(const Graph& x, const Graph& y) {
    const int nx = x.vertex_count();
    const int ny = y.vertex_count();
    if (nx == 0) return std::vector<int>{};
    if (ny == 0) return std::nullopt;

    std::vector<int> order(nx);
    for (int v = 0; v < nx; ++v) order[v] = v;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return x.degree(a) > x.degree(b) || (x.degree(a) == x.degree(b) && a < b); });

    std::vector<std::vector<char>> candidates(nx, std::vector<char>(ny, 1));
    std::vector<int> map(nx, -1);
    if (homomorphism_backtrack(x, y, order, 0, map, candidates)) return map;
    return std::nullopt;
}

bool is_homomorphism(const Graph& x, const Graph& y, const std::vector<int>& map) {
    if (static_cast<int>(map.size()) != x.vertex_count()) return false;
    for (int v : map)
        if (v < 0 || v >= y.vertex_count()) return false;
    for (auto [u, v] : x.edges())
        if (!y.adjacent(map[u], map[v])) return false;
    return true;
}

}  // namespace conichom
