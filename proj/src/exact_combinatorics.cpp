#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "conichom/errors.hpp"
#include "conichom/homomorphism.hpp"

namespace conichom {

namespace {

std::vector<std::uint64_t> adjacency_masks(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<std::uint64_t> adj(n, 0);
    for (auto [u, v] : g.edges()) {
        adj[u] |= std::uint64_t(1) << v;
        adj[v] |= std::uint64_t(1) << u;
    }
    return adj;
}

std::vector<std::uint64_t> complement_masks(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<std::uint64_t> adj = adjacency_masks(g);
    const std::uint64_t all = n == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << n) - 1;
    for (int v = 0; v < n; ++v) adj[v] = all & ~adj[v] & ~(std::uint64_t(1) << v);
    return adj;
}

// Branch-and-bound maximum clique with a greedy-colouring bound.
struct CliqueSearch {
    const std::vector<std::uint64_t>& adj;
    std::vector<int> best, cur;

    explicit CliqueSearch(const std::vector<std::uint64_t>& a) : adj(a) {}

    void expand(std::uint64_t cand) {
        if (cand == 0) {
            if (cur.size() > best.size()) best = cur;
            return;
        }
        // Greedy colour classes of the candidate set; a vertex in class c
        // cannot extend the current clique past |cur| + c.
        std::vector<std::pair<int, int>> seq;
        std::uint64_t rem = cand;
        int colour = 0;
        while (rem) {
            ++colour;
            std::uint64_t cls = rem;
            while (cls) {
                const int v = std::countr_zero(cls);
                seq.emplace_back(v, colour);
                rem &= ~(std::uint64_t(1) << v);
                cls &= ~(std::uint64_t(1) << v);
                cls &= ~adj[v];
            }
        }
        std::uint64_t pool = cand;
        for (int i = static_cast<int>(seq.size()) - 1; i >= 0; --i) {
            const auto [v, bound] = seq[i];
            if (cur.size() + bound <= best.size()) return;
            cur.push_back(v);
            expand(pool & adj[v]);
            cur.pop_back();
            pool &= ~(std::uint64_t(1) << v);
        }
    }
};

std::vector<int> max_clique_masks(const std::vector<std::uint64_t>& adj, int n) {
    CliqueSearch search(adj);
    const std::uint64_t all = n == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << n) - 1;
    search.expand(all);
    std::sort(search.best.begin(), search.best.end());
    return search.best;
}

void check_vertex_limit(const Graph& g, int limit, const char* what) {
    if (g.vertex_count() > limit || g.vertex_count() > 64)
        throw CapabilityError(std::string(what) + ": graph exceeds the exact-search vertex limit");
}

// Greedy colouring picking the most saturated vertex first; upper bound for chi.
int saturation_upper_bound(const Graph& g, const std::vector<std::uint64_t>& adj) {
    const int n = g.vertex_count();
    std::vector<int> colour(n, -1);
    std::vector<std::uint64_t> neighbour_colours(n, 0);
    int used = 0;
    for (int step = 0; step < n; ++step) {
        int pick = -1, pick_sat = -1, pick_deg = -1;
        for (int v = 0; v < n; ++v) {
            if (colour[v] >= 0) continue;
            const int sat = std::popcount(neighbour_colours[v]);
            const int deg = g.degree(v);
            if (sat > pick_sat || (sat == pick_sat && deg > pick_deg)) {
                pick = v;
                pick_sat = sat;
                pick_deg = deg;
            }
        }
        const int c = std::countr_one(neighbour_colours[pick]);
        colour[pick] = c;
        used = std::max(used, c + 1);
        std::uint64_t nb = adj[pick];
        while (nb) {
            const int u = std::countr_zero(nb);
            nb &= nb - 1;
            neighbour_colours[u] |= std::uint64_t(1) << c;
        }
    }
    return used;
}

bool colourable(const Graph& g, const std::vector<std::uint64_t>& adj,
                const std::vector<int>& order, std::vector<int>& colour, int idx, int k,
                int used) {
    const int n = g.vertex_count();
    if (idx == n) return true;
    const int v = order[idx];
    std::uint64_t forbidden = 0;
    std::uint64_t nb = adj[v];
    while (nb) {
        const int u = std::countr_zero(nb);
        nb &= nb - 1;
        if (colour[u] >= 0) forbidden |= std::uint64_t(1) << colour[u];
    }
    const int limit = std::min(k, used + 1);  // first use of a colour: lowest index
    for (int c = 0; c < limit; ++c) {
        if (forbidden & (std::uint64_t(1) << c)) continue;
        colour[v] = c;
        if (colourable(g, adj, order, colour, idx + 1, k, std::max(used, c + 1))) return true;
        colour[v] = -1;
    }
    return false;
}

}  // namespace

std::vector<int> max_independent_set(const Graph& g, int vertex_limit) {
    check_vertex_limit(g, vertex_limit, "max_independent_set");
    if (g.vertex_count() == 0) return {};
    return max_clique_masks(complement_masks(g), g.vertex_count());
}

int alpha_exact(const Graph& g, int vertex_limit) {
    return static_cast<int>(max_independent_set(g, vertex_limit).size());
}

int omega_exact(const Graph& g, int vertex_limit) {
    check_vertex_limit(g, vertex_limit, "omega_exact");
    if (g.vertex_count() == 0) return 0;
    return static_cast<int>(max_clique_masks(adjacency_masks(g), g.vertex_count()).size());
}

int chi_exact(const Graph& g, int vertex_limit) {
    check_vertex_limit(g, vertex_limit, "chi_exact");
    const int n = g.vertex_count();
    if (n == 0) return 0;
    const auto adj = adjacency_masks(g);
    const int lower = omega_exact(g, vertex_limit);
    const int upper = saturation_upper_bound(g, adj);
    std::vector<int> order(n);
    for (int v = 0; v < n; ++v) order[v] = v;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return g.degree(a) != g.degree(b) ? g.degree(a) > g.degree(b) : a < b; });
    for (int k = lower; k < upper; ++k) {
        std::vector<int> colour(n, -1);
        if (colourable(g, adj, order, colour, 0, k, 0)) return k;
    }
    return upper;
}

}  // namespace conichom
