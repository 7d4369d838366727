#include "conichom/theta.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>

#include "conichom/errors.hpp"
#include "conichom/homomorphism.hpp"

namespace conichom {

std::string cone_name(ConeTag cone) {
    switch (cone) {
        case ConeTag::CP: return "cp";
        case ConeTag::DNN: return "dnn";
        case ConeTag::SPLUS: return "splus";
    }
    return "?";
}

namespace {

void require_nonempty(const Graph& g, const char* what) {
    if (g.vertex_count() == 0)
        throw std::invalid_argument(std::string(what) + ": graph must have at least one vertex");
}

// sup <M,J> s.t. tr M = 1, M[i][j] = 0 on edges, M PSD; entrywise
// nonnegativity (DNN) enters through paired orthant slacks on non-edges.
ConicProgram theta_program(const Graph& g, bool entrywise_nonneg) {
    const int n = g.vertex_count();
    ConicProgram p;
    p.set_sense(Sense::Maximize);
    const int m = p.add_psd_block(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) p.objective_psd(m, i, j, 1.0);
    const int tr = p.add_constraint(1.0);
    for (int i = 0; i < n; ++i) p.constraint_psd(tr, m, i, i, 1.0);
    for (auto [u, v] : g.edges()) {
        const int c = p.add_constraint(0.0);
        p.constraint_psd(c, m, u, v, 0.5);
    }
    if (entrywise_nonneg) {
        int count = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (!g.adjacent(i, j)) ++count;
        if (count > 0) {
            const int slack = p.add_orthant_block(count);
            int k = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (!g.adjacent(i, j)) {
                        const int c = p.add_constraint(0.0);
                        p.constraint_psd(c, m, i, j, 0.5);
                        p.constraint_orthant(c, slack, k++, -1.0);
                    }
        }
    }
    return p;
}

// inf t s.t. N[i][i] = t, N[i][j] = 0 on edges, N - J PSD, N in cone.
// Encoded over P = N - J: the PSD block is P itself, so N - J PSD and
// (since J is PSD and, entrywise, P + J >= 0 is forced where needed)
// cone membership of N both hold by construction.
ConicProgram big_theta_program(const Graph& g, bool entrywise_nonneg) {
    const int n = g.vertex_count();
    ConicProgram prog;
    prog.set_sense(Sense::Minimize);
    const int pb = prog.add_psd_block(n);
    const int tb = prog.add_orthant_block(1);
    prog.objective_orthant(tb, 0, 1.0);
    for (int i = 0; i < n; ++i) {
        const int c = prog.add_constraint(-1.0);  // P[i][i] - t = -1
        prog.constraint_psd(c, pb, i, i, 1.0);
        prog.constraint_orthant(c, tb, 0, -1.0);
    }
    for (auto [u, v] : g.edges()) {
        const int c = prog.add_constraint(-1.0);  // N[u][v] = 0
        prog.constraint_psd(c, pb, u, v, 0.5);
    }
    if (entrywise_nonneg) {
        int count = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (!g.adjacent(i, j)) ++count;
        if (count > 0) {
            const int slack = prog.add_orthant_block(count);
            int k = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (!g.adjacent(i, j)) {
                        const int c = prog.add_constraint(-1.0);  // N[i][j] = u >= 0
                        prog.constraint_psd(c, pb, i, j, 0.5);
                        prog.constraint_orthant(c, slack, k++, -1.0);
                    }
        }
    }
    return prog;
}

}  // namespace

ThetaResult theta(const Graph& g, ConeTag cone, const SolverOptions& options) {
    require_nonempty(g, "theta");
    const int n = g.vertex_count();
    ThetaResult res;
    res.cone = cone;
    res.kind = ThetaKind::Theta;
    if (cone == ConeTag::CP) {
        const std::vector<int> set = max_independent_set(g);
        const double a = static_cast<double>(set.size());
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
        for (int i : set)
            for (int j : set) m(i, j) = 1.0 / a;
        res.value = a;
        res.solution = SymMatrix(std::move(m));
        res.exact = true;
        return res;
    }
    const SolveReport report = solve(theta_program(g, cone == ConeTag::DNN), options);
    res.value = report.primal_value;
    res.solution = report.solution.psd[0];
    res.report = report;
    return res;
}

ThetaResult big_theta(const Graph& g, ConeTag cone, const SolverOptions& options) {
    require_nonempty(g, "big_theta");
    const int n = g.vertex_count();
    ThetaResult res;
    res.cone = cone;
    res.kind = ThetaKind::BigTheta;

    if (cone == ConeTag::CP) {
        // Fractional chromatic number: min sum w_S over independent sets
        // covering every vertex with total weight >= 1.
        const auto sets = maximal_independent_sets(g);
        ConicProgram lp;
        const int wb = lp.add_orthant_block(static_cast<int>(sets.size()));
        const int sb = lp.add_orthant_block(n);
        for (int k = 0; k < static_cast<int>(sets.size()); ++k) lp.objective_orthant(wb, k, 1.0);
        std::vector<std::vector<int>> sets_of(n);
        for (int k = 0; k < static_cast<int>(sets.size()); ++k)
            for (int v : sets[k]) sets_of[v].push_back(k);
        for (int v = 0; v < n; ++v) {
            const int c = lp.add_constraint(1.0);
            for (int k : sets_of[v]) lp.constraint_orthant(c, wb, k, 1.0);
            lp.constraint_orthant(c, sb, v, -1.0);
        }
        SolverOptions tight = options;
        tight.feas_tol = std::min(options.feas_tol, 1e-10);
        tight.gap_tol = std::min(options.gap_tol, 1e-10);
        const SolveReport report = solve(lp, tight);

        // Redistribute weight from over-covered vertices onto subsets so
        // coverage becomes exactly 1, then N = t * sum_S w_S chi_S chi_S^T
        // has constant diagonal t, zeros on edges, and N - J PSD.
        std::map<std::vector<int>, double> weight;
        double t = 0.0;
        for (int k = 0; k < static_cast<int>(sets.size()); ++k) {
            const double w = report.solution.orthant[k];
            if (w > 1e-14) {
                weight[sets[k]] += w;
                t += w;
            }
        }
        for (int v = 0; v < n; ++v) {
            double cover = 0.0;
            for (const auto& [set, w] : weight)
                if (std::binary_search(set.begin(), set.end(), v)) cover += w;
            if (cover <= 1.0 + 1e-15) continue;
            std::vector<std::vector<int>> holders;
            for (const auto& [set, w] : weight)
                if (w > 0.0 && std::binary_search(set.begin(), set.end(), v)) holders.push_back(set);
            for (const auto& set : holders) {
                if (cover <= 1.0 + 1e-15) break;
                const double delta = std::min(weight[set], cover - 1.0);
                if (delta <= 0.0) continue;
                weight[set] -= delta;
                std::vector<int> rest;
                for (int u : set)
                    if (u != v) rest.push_back(u);
                if (!rest.empty()) weight[rest] += delta;
                cover -= delta;
            }
        }
        Eigen::MatrixXd nm = Eigen::MatrixXd::Zero(n, n);
        for (const auto& [set, w] : weight) {
            if (w <= 0.0) continue;
            for (int i : set)
                for (int j : set) nm(i, j) += t * w;
        }
        res.value = t;
        res.solution = SymMatrix(std::move(nm));
        res.exact = true;
        res.report = report;
        return res;
    }

    const SolveReport report = solve(big_theta_program(g, cone == ConeTag::DNN), options);
    Eigen::MatrixXd nm = report.solution.psd[0].mat() + Eigen::MatrixXd::Ones(n, n);
    res.value = report.solution.orthant[0];  // t, the solution's own diagonal
    res.solution = SymMatrix(std::move(nm));
    res.report = report;
    return res;
}

SymMatrix symmetrize(const SymMatrix& m, const Graph& g) {
    if (m.dim() != g.vertex_count())
        throw std::invalid_argument("symmetrize: matrix dimension must match the vertex count");
    const auto perms = automorphisms(g);
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(m.dim(), m.dim());
    for (const auto& perm : perms) acc += permutation_conjugate(m, perm).mat();
    acc /= static_cast<double>(perms.size());
    SymMatrix out(std::move(acc));
    out.pair_labels = m.pair_labels;
    return out;
}

namespace {

constexpr double kScalingConstancyTol = 1e-6;

double constant_diagonal(const SymMatrix& m, const char* what) {
    const double mean = m.trace() / m.dim();
    for (int i = 0; i < m.dim(); ++i)
        if (std::abs(m(i, i) - mean) > kScalingConstancyTol * (1.0 + std::abs(mean)))
            throw std::invalid_argument(std::string(what) + ": diagonal is not constant");
    return mean;
}

}  // namespace

SymMatrix theta_to_big_theta_scaling(const SymMatrix& m_bar, const Graph& g) {
    const int n = g.vertex_count();
    if (m_bar.dim() != n)
        throw std::invalid_argument("theta_to_big_theta_scaling: dimension mismatch");
    constant_diagonal(m_bar, "theta_to_big_theta_scaling");
    const Eigen::VectorXd rows = m_bar.mat().rowwise().sum();
    const double row_mean = rows.mean();
    for (int i = 0; i < n; ++i)
        if (std::abs(rows[i] - row_mean) > kScalingConstancyTol * (1.0 + std::abs(row_mean)))
            throw std::invalid_argument("theta_to_big_theta_scaling: row sums are not constant");
    const double t = m_bar.sum();
    if (t <= 0.0) throw std::invalid_argument("theta_to_big_theta_scaling: total sum must be positive");
    return SymMatrix(Eigen::MatrixXd((static_cast<double>(n) * n / t) * m_bar.mat()));
}

SymMatrix big_theta_to_theta_scaling(const SymMatrix& nmat, const Graph& g) {
    const int n = g.vertex_count();
    if (nmat.dim() != n)
        throw std::invalid_argument("big_theta_to_theta_scaling: dimension mismatch");
    const double t = constant_diagonal(nmat, "big_theta_to_theta_scaling");
    if (t <= 0.0) throw std::invalid_argument("big_theta_to_theta_scaling: diagonal must be positive");
    return SymMatrix(Eigen::MatrixXd(nmat.mat() / (t * n)));
}

std::vector<std::vector<int>> maximal_independent_sets(const Graph& g, std::size_t cap) {
    const int n = g.vertex_count();
    if (n > 64) throw CapabilityError("maximal_independent_sets: more than 64 vertices");
    std::vector<std::uint64_t> non_adj(n, 0);  // neither equal nor adjacent
    const std::uint64_t all = n == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << n) - 1;
    for (int v = 0; v < n; ++v) {
        std::uint64_t mask = 0;
        for (int u = 0; u < n; ++u)
            if (u != v && !g.adjacent(u, v)) mask |= std::uint64_t(1) << u;
        non_adj[v] = mask;
    }
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    // Bron-Kerbosch with pivoting over the non-adjacency relation.
    auto expand = [&](auto&& self, std::uint64_t p, std::uint64_t x) -> void {
        if (p == 0 && x == 0) {
            if (out.size() >= cap)
                throw CapabilityError("maximal_independent_sets: set count exceeds the cap");
            out.push_back(cur);
            return;
        }
        int pivot = -1, best_cover = -1;
        std::uint64_t px = p | x;
        while (px) {
            const int v = std::countr_zero(px);
            px &= px - 1;
            const int cover = std::popcount(p & non_adj[v]);
            if (cover > best_cover) {
                best_cover = cover;
                pivot = v;
            }
        }
        std::uint64_t candidates = p & ~non_adj[pivot];
        while (candidates) {
            const int v = std::countr_zero(candidates);
            candidates &= candidates - 1;
            cur.push_back(v);
            self(self, p & non_adj[v], x & non_adj[v]);
            cur.pop_back();
            p &= ~(std::uint64_t(1) << v);
            x |= std::uint64_t(1) << v;
        }
    };
    if (n > 0) expand(expand, all, 0);
    for (auto& set : out) std::sort(set.begin(), set.end());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace conichom
