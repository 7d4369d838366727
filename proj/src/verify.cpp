#include "conichom/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "conichom/errors.hpp"
#include "conichom/homomorphism.hpp"
#include "conichom/symmetric_matrix.hpp"
#include "conichom/theta.hpp"

namespace conichom {

namespace {

constexpr long long kPairDimCap = 40;  // |V(X)|*|V(Y)| cap for pairwise suites
constexpr double kBruteMapCap = 1e6;   // |V(Y)|^|V(X)| cap for exhaustive search

struct Outcome {
    enum Kind { Pass, Fail, Inconclusive } kind = Pass;
    double residual = 0.0;
    std::string message;
};

Outcome pass(double residual = 0.0, std::string msg = {}) {
    return {Outcome::Pass, residual, std::move(msg)};
}

Outcome fail(double residual, std::string msg) {
    return {Outcome::Fail, residual, std::move(msg)};
}

struct Instance {
    std::string key;
    std::function<Outcome()> run;
};

std::string fnum(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

const char* verdict_str(HomVerdict v) {
    switch (v) {
        case HomVerdict::Yes: return "yes";
        case HomVerdict::No: return "no";
        default: return "inconclusive";
    }
}

// Caches shared by all suites of one run, so repeated solver work is reused.
struct Ctx {
    const VerifyOptions& opt;
    std::vector<NamedGraph> corpus;

    std::mutex mu;
    std::map<std::string, HomDecision> decisions;
    std::map<std::string, ThetaResult> thetas;
    std::map<std::string, int> alphas;

    explicit Ctx(const VerifyOptions& o) : opt(o), corpus(verification_corpus(o.corpus)) {}

    const NamedGraph* find(const std::string& name) const {
        for (const auto& g : corpus)
            if (g.name == name) return &g;
        return nullptr;
    }

    const HomDecision& decision(const NamedGraph* x, const NamedGraph* y, ConeTag cone,
                                HomMode mode) {
        const std::string key =
            x->name + "->" + y->name + "/" + cone_name(cone) + "/" + mode_name(mode);
        {
            std::lock_guard<std::mutex> lk(mu);
            auto it = decisions.find(key);
            if (it != decisions.end()) return it->second;
        }
        HomDecision d = decide_hom(x->graph, y->graph, cone, mode, opt.solver);
        std::lock_guard<std::mutex> lk(mu);
        return decisions.emplace(key, std::move(d)).first->second;
    }

    const ThetaResult& theta_of(const NamedGraph* g, ConeTag cone, ThetaKind kind,
                                bool of_complement = false) {
        const std::string key = std::string(kind == ThetaKind::Theta ? "t/" : "T/") +
                                (of_complement ? "~" : "") + g->name + "/" + cone_name(cone);
        {
            std::lock_guard<std::mutex> lk(mu);
            auto it = thetas.find(key);
            if (it != thetas.end()) return it->second;
        }
        const Graph target = of_complement ? complement(g->graph) : g->graph;
        ThetaResult r = kind == ThetaKind::Theta ? theta(target, cone, opt.solver)
                                                 : big_theta(target, cone, opt.solver);
        std::lock_guard<std::mutex> lk(mu);
        return thetas.emplace(key, std::move(r)).first->second;
    }

    int alpha(const NamedGraph* g, ConeTag cone) {
        const std::string key = g->name + "/" + cone_name(cone);
        {
            std::lock_guard<std::mutex> lk(mu);
            auto it = alphas.find(key);
            if (it != alphas.end()) return it->second;
        }
        const int v = conic_alpha(g->graph, cone, HomMode::Strong, opt.solver);
        std::lock_guard<std::mutex> lk(mu);
        return alphas.emplace(key, v).first->second;
    }

    std::vector<std::pair<const NamedGraph*, const NamedGraph*>> pairs(long long cap) const {
        std::vector<std::pair<const NamedGraph*, const NamedGraph*>> out;
        for (const auto& a : corpus)
            for (const auto& b : corpus) {
                const long long d =
                    static_cast<long long>(a.graph.vertex_count()) * b.graph.vertex_count();
                if (d >= 1 && d <= cap) out.push_back({&a, &b});
            }
        return out;
    }
};

const std::vector<ConeTag> kAllCones = {ConeTag::CP, ConeTag::DNN, ConeTag::SPLUS};
const std::vector<ConeTag> kSolverCones = {ConeTag::DNN, ConeTag::SPLUS};

bool brute_hom_exists(const Graph& x, const Graph& y) {
    const int nx = x.vertex_count(), ny = y.vertex_count();
    if (ny == 0) return nx == 0;
    std::vector<int> map(nx, 0);
    while (true) {
        if (is_homomorphism(x, y, map)) return true;
        int i = 0;
        while (i < nx && ++map[i] == ny) map[i++] = 0;
        if (i == nx) return false;
    }
}

// Feasibility residual of a candidate for theta(complement(y)) over the cone:
// unit trace, zeros on non-edges of y (= edges of its complement), membership.
double theta_feasibility_residual(const SymMatrix& m, const Graph& y, ConeTag cone) {
    double r = std::abs(m.trace() - 1.0);
    for (const auto& [u, v] : complement(y).edges()) r = std::max(r, std::abs(m(u, v)));
    r = std::max(r, -std::min(0.0, min_eigenvalue(m)));
    if (cone != ConeTag::SPLUS) r = std::max(r, -std::min(0.0, m.min_entry()));
    return r;
}

// Feasibility residual of a BigTheta candidate for graph x at level t:
// constant diagonal t, zeros on edges of x, m - J PSD, membership.
double cover_feasibility_residual(const SymMatrix& m, const Graph& x, ConeTag cone, double t) {
    double r = 0.0;
    for (int i = 0; i < m.dim(); ++i) r = std::max(r, std::abs(m(i, i) - t));
    for (const auto& [u, v] : x.edges()) r = std::max(r, std::abs(m(u, v)));
    const Eigen::MatrixXd gap = m.mat() - Eigen::MatrixXd::Ones(m.dim(), m.dim());
    r = std::max(r, -std::min(0.0, min_eigenvalue(SymMatrix(gap))));
    if (cone != ConeTag::SPLUS) r = std::max(r, -std::min(0.0, m.min_entry()));
    return r;
}

// ---- suites ---------------------------------------------------------------

// theta * BigTheta >= n for every graph and cone, with equality on the named
// vertex-transitive instances.
std::vector<Instance> build_theta_duality(Ctx& ctx) {
    Ctx* C = &ctx;
    static const std::set<std::string> kEqualityNames = {"cycle:5", "cycle:7", "complete:5",
                                                         "petersen"};
    std::vector<Instance> out;
    for (const NamedGraph& gref : ctx.corpus) {
        const NamedGraph* g = &gref;
        for (ConeTag cone : kAllCones)
            out.push_back({g->name + "/" + cone_name(cone), [C, g, cone] {
                const int n = g->graph.vertex_count();
                const double t = C->theta_of(g, cone, ThetaKind::Theta).value;
                const double b = C->theta_of(g, cone, ThetaKind::BigTheta).value;
                const double prod = t * b;
                if (n - prod > 1e-6)
                    return fail(n - prod, "product " + fnum(prod) + " below vertex count " +
                                              std::to_string(n));
                if (kEqualityNames.count(g->name) == 0)
                    return pass(std::max(0.0, n - prod), "product " + fnum(prod));
                if (!is_vertex_transitive(g->graph))
                    return fail(1.0, "equality instance is not vertex-transitive");
                const double dev = std::abs(prod - n);
                if (dev > 1e-5)
                    return fail(dev, "vertex-transitive equality violated: product " + fnum(prod));
                return pass(dev, "equality holds: product " + fnum(prod));
            }});
    }
    return out;
}

// Cone nesting: theta grows CP -> DNN -> SPLUS, BigTheta shrinks, and both
// stay inside the combinatorial sandwich (independence number, clique number,
// chromatic number).
std::vector<Instance> build_theta_order(Ctx& ctx) {
    Ctx* C = &ctx;
    std::vector<Instance> out;
    for (const NamedGraph& gref : ctx.corpus) {
        const NamedGraph* g = &gref;
        out.push_back({g->name, [C, g] {
            const double tcp = C->theta_of(g, ConeTag::CP, ThetaKind::Theta).value;
            const double tdnn = C->theta_of(g, ConeTag::DNN, ThetaKind::Theta).value;
            const double tsp = C->theta_of(g, ConeTag::SPLUS, ThetaKind::Theta).value;
            const double bcp = C->theta_of(g, ConeTag::CP, ThetaKind::BigTheta).value;
            const double bdnn = C->theta_of(g, ConeTag::DNN, ThetaKind::BigTheta).value;
            const double bsp = C->theta_of(g, ConeTag::SPLUS, ThetaKind::BigTheta).value;
            const double om = omega_exact(g->graph);
            const double chi = chi_exact(g->graph);
            const double viol = std::max(
                {tcp - tdnn, tdnn - tsp, bsp - bdnn, bdnn - bcp, om - bsp, bcp - chi});
            if (std::abs(tcp - alpha_exact(g->graph)) > 1e-9)
                return fail(1.0, "independence-number route mismatch: " + fnum(tcp));
            if (viol > 1e-6)
                return fail(viol, "nesting violated: theta " + fnum(tcp) + "<=" + fnum(tdnn) +
                                      "<=" + fnum(tsp) + ", dual side " + fnum(bsp) + "<=" +
                                      fnum(bdnn) + "<=" + fnum(bcp));
            return pass(std::max(0.0, viol));
        }});
    }
    return out;
}

// CP relations coincide with classical homomorphisms: exhaustive search,
// strong CP decision, weak CP decision, and the independence-number test on
// the homomorphic product must all agree.
std::vector<Instance> build_cp_equivalence(Ctx& ctx) {
    Ctx* C = &ctx;
    std::vector<Instance> out;
    for (const auto& [x, y] : ctx.pairs(48)) {
        const int nx = x->graph.vertex_count(), ny = y->graph.vertex_count();
        if (std::pow(static_cast<double>(ny), nx) > kBruteMapCap) continue;
        out.push_back({x->name + "->" + y->name, [C, x, y, nx] {
            const bool brute = brute_hom_exists(x->graph, y->graph);
            const auto& ds = C->decision(x, y, ConeTag::CP, HomMode::Strong);
            const auto& dw = C->decision(x, y, ConeTag::CP, HomMode::Weak);
            const bool alpha_route =
                alpha_exact(homomorphic_product(x->graph, y->graph)) == nx;
            if (ds.verdict == HomVerdict::Inconclusive ||
                dw.verdict == HomVerdict::Inconclusive)
                return fail(1.0, "combinatorial decision abstained");
            const bool s = ds.verdict == HomVerdict::Yes;
            const bool w = dw.verdict == HomVerdict::Yes;
            if (s != brute || w != brute || alpha_route != brute)
                return fail(1.0, std::string("routes disagree: exhaustive=") +
                                     (brute ? "yes" : "no") +
                                     " strong=" + verdict_str(ds.verdict) +
                                     " weak=" + verdict_str(dw.verdict) +
                                     " alpha=" + (alpha_route ? "yes" : "no"));
            if (s) {
                if (!ds.witness || !witness_passes(*ds.witness, 1e-9))
                    return fail(1.0, "classical lift fails witness conditions");
                return pass(ds.witness->residuals.worst(HomMode::Strong));
            }
            return pass(0.0, "agreed no");
        }});
    }
    return out;
}

// Every weak DNN witness repairs to a strong one over the same graphs.
std::vector<Instance> build_dnn_repair(Ctx& ctx) {
    Ctx* C = &ctx;
    std::vector<Instance> out;
    for (const auto& [x, y] : ctx.pairs(kPairDimCap))
        out.push_back({x->name + "->" + y->name, [C, x, y] {
            const auto& d = C->decision(x, y, ConeTag::DNN, HomMode::Weak);
            if (d.verdict != HomVerdict::Yes)
                return pass(0.0, std::string("no weak witness (") + verdict_str(d.verdict) + ")");
            const HomWitness rep = repair_weak_to_strong_dnn(*d.witness);
            const double r = rep.residuals.worst(HomMode::Strong);
            if (r > 1e-7) return fail(r, "repaired witness residual " + fnum(r));
            return pass(r, "repaired, residual " + fnum(r));
        }});
    return out;
}

// Identity witnesses are exact in every cone and the relation is reflexive
// under the solver as well.
std::vector<Instance> build_reflexivity(Ctx& ctx) {
    Ctx* C = &ctx;
    std::vector<Instance> out;
    for (const NamedGraph& gref : ctx.corpus) {
        const NamedGraph* g = &gref;
        out.push_back({g->name + "/identity", [g] {
            const HomWitness w = identity_witness(g->graph);
            const double r = w.residuals.worst(HomMode::Strong);
            if (r > 1e-12) return fail(r, "identity witness residual " + fnum(r));
            if (!lemma_gram_check(w.H)) return fail(1.0, "block-sum Gram condition rejected");
            return pass(r);
        }});
    }
    for (const char* name : {"complete:2", "cycle:4", "path:3"}) {
        const NamedGraph* g = ctx.find(name);
        if (!g) continue;
        for (ConeTag cone : kSolverCones)
            out.push_back({g->name + "/decide/" + cone_name(cone), [C, g, cone] {
                const auto& d = C->decision(g, g, cone, HomMode::Strong);
                if (d.verdict != HomVerdict::Yes)
                    return fail(1.0, std::string("self-relation not confirmed: ") +
                                         verdict_str(d.verdict));
                return pass(d.witness ? d.witness->residuals.worst(HomMode::Strong) : 0.0);
            }});
    }
    return out;
}

// Witness composition chains classical lifts and solver outputs.
std::vector<Instance> build_transitivity(Ctx& ctx) {
    Ctx* C = &ctx;
    std::vector<Instance> out;
    const NamedGraph* c5 = ctx.find("cycle:5");
    const NamedGraph* c7 = ctx.find("cycle:7");
    const NamedGraph* k3 = ctx.find("complete:3");
    const NamedGraph* k4 = ctx.find("complete:4");
    if (c5 && k3 && k4)
        out.push_back({"lift-chain/C5-K3-K4", [c5, k3, k4] {
            const auto f = classical_homomorphism(c5->graph, k3->graph);
            const auto g = classical_homomorphism(k3->graph, k4->graph);
            if (!f || !g) return fail(1.0, "expected classical maps missing");
            const HomWitness comp = compose_witnesses(lift_classical(*f, c5->graph, k3->graph),
                                                      lift_classical(*g, k3->graph, k4->graph));
            std::vector<int> fg(f->size());
            for (std::size_t i = 0; i < fg.size(); ++i) fg[i] = (*g)[(*f)[i]];
            const HomWitness direct = lift_classical(fg, c5->graph, k4->graph);
            const double dev = (comp.H.mat() - direct.H.mat()).cwiseAbs().maxCoeff();
            const double r = std::max(dev, comp.residuals.worst(HomMode::Strong));
            if (r > 1e-12) return fail(r, "composed lift deviates by " + fnum(r));
            return pass(r);
        }});
    if (c5 && k3)
        out.push_back({"splus-chain/C5-C5-K3", [C, c5, k3] {
            const auto& d1 = C->decision(c5, c5, ConeTag::SPLUS, HomMode::Strong);
            const auto& d2 = C->decision(c5, k3, ConeTag::SPLUS, HomMode::Strong);
            if (d1.verdict != HomVerdict::Yes || d2.verdict != HomVerdict::Yes)
                return fail(1.0, "expected solver witnesses missing");
            const HomWitness comp = compose_witnesses(*d1.witness, *d2.witness);
            const double r = comp.residuals.worst(HomMode::Strong);
            if (r > 1e-6) return fail(r, "composed witness residual " + fnum(r));
            return pass(r);
        }});
    if (c7 && c5 && k3) {
        out.push_back({"dnn-chain/C7-C5-K3", [C, c7, c5, k3] {
            const auto& d1 = C->decision(c7, c5, ConeTag::DNN, HomMode::Strong);
            const auto& d2 = C->decision(c5, k3, ConeTag::DNN, HomMode::Strong);
            if (d1.verdict != HomVerdict::Yes || d2.verdict != HomVerdict::Yes)
                return fail(1.0, "expected solver witnesses missing");
            const HomWitness comp = compose_witnesses(*d1.witness, *d2.witness);
            const double r = comp.residuals.worst(HomMode::Strong);
            if (r > 1e-6) return fail(r, "composed witness residual " + fnum(r));
            return pass(r);
        }});
        out.push_back({"weak-dnn-chain/C7-C5-K3", [C, c7, c5, k3] {
            const auto& d1 = C->decision(c7, c5, ConeTag::DNN, HomMode::Weak);
            const auto& d2 = C->decision(c5, k3, ConeTag::DNN, HomMode::Weak);
            if (d1.verdict != HomVerdict::Yes || d2.verdict != HomVerdict::Yes)
                return fail(1.0, "expected solver witnesses missing");
            const HomWitness comp = compose_witnesses(*d1.witness, *d2.witness);
            const double r = comp.residuals.worst(HomMode::Weak);
            if (r > 1e-6) return fail(r, "composed witness residual " + fnum(r));
            return pass(r);
        }});
    }
    return out;
}

// The direct feasibility decision and the theta-of-product criterion agree on
// every pair; confirmed relations respect theta monotonicity over SPLUS.
std::vector<Instance> build_hom_theta(Ctx& ctx) {
    Ctx* C = &ctx;
    std::vector<Instance> out;
    for (const auto& [x, y] : ctx.pairs(kPairDimCap))
        for (ConeTag cone : kSolverCones)
            out.push_back({x->name + "->" + y->name + "/" + cone_name(cone), [C, x, y, cone] {
                const auto& d = C->decision(x, y, cone, HomMode::Strong);
                if (d.verdict == HomVerdict::Inconclusive)
                    return fail(1.0, "decision routes abstained: " + d.detail);
                if (d.verdict == HomVerdict::Yes) {
                    if (!d.witness || !witness_passes(*d.witness, 1e-7))
                        return fail(1.0, "yes without a valid witness");
                    if (cone == ConeTag::SPLUS) {
                        const double tx =
                            C->theta_of(x, ConeTag::SPLUS, ThetaKind::Theta, true).value;
                        const double ty =
                            C->theta_of(y, ConeTag::SPLUS, ThetaKind::Theta, true).value;
                        if (tx > ty + 1e-5)
                            return fail(tx - ty, "relation exists but complement-theta grows: " +
                                                     fnum(tx) + " > " + fnum(ty));
                    }
                    return pass(d.witness->residuals.worst(HomMode::Strong),
                                "yes, product theta " + fnum(d.theta_product));
                }
                return pass(0.0, "no, product theta " + fnum(d.theta_product));
            }});
    return out;
}

// Pushing optimal solutions through a strong witness certifies monotonicity
// of both parameters in every cone.
std::vector<Instance> build_monotonicity(Ctx& ctx) {
    Ctx* C = &ctx;
    std::vector<Instance> out;
    for (const auto& [x, y] : ctx.pairs(kPairDimCap))
        for (ConeTag cone : kAllCones)
            out.push_back({x->name + "->" + y->name + "/" + cone_name(cone), [C, x, y, cone] {
                const auto& d = C->decision(x, y, cone, HomMode::Strong);
                if (d.verdict != HomVerdict::Yes)
                    return pass(0.0, std::string("no strong witness (") +
                                         verdict_str(d.verdict) + ")");
                const auto& mx = C->theta_of(x, cone, ThetaKind::Theta, true);
                const auto& my = C->theta_of(y, cone, ThetaKind::Theta, true);
                const SymMatrix n = monotone_transform_theta(mx.solution, *d.witness);
                const double rfeas = theta_feasibility_residual(n, y->graph, cone);
                const double keep = std::abs(n.sum() - mx.value);
                const double grow = n.sum() - my.value;
                const auto& by = C->theta_of(y, cone, ThetaKind::BigTheta);
                const auto& bx = C->theta_of(x, cone, ThetaKind::BigTheta);
                const SymMatrix m = monotone_transform_big_theta(by.solution, *d.witness);
                const double rcover = cover_feasibility_residual(m, x->graph, cone, by.value);
                const double order = bx.value - by.value;
                const double rmax = std::max(rfeas, rcover);
                if (rmax > 1e-6)
                    return fail(rmax, "transformed solution infeasible, residual " + fnum(rmax));
                if (keep > 1e-6)
                    return fail(keep, "pushed value drifted by " + fnum(keep));
                if (grow > 1e-5)
                    return fail(grow, "complement-theta monotonicity violated by " + fnum(grow));
                if (order > 1e-5)
                    return fail(order, "dual-side monotonicity violated by " + fnum(order));
                return pass(std::max({rmax, keep, std::max(0.0, grow), std::max(0.0, order)}));
            }});
    return out;
}

// theta is multiplicative for the disjunctive and lexicographic products;
// the dual parameter is submultiplicative for the disjunctive product.
std::vector<Instance> build_multiplicativity(Ctx& ctx) {
    Ctx* C = &ctx;
    std::vector<Instance> out;
    std::vector<const NamedGraph*> base;
    for (const char* name : {"cycle:5", "complete:3", "path:3", "cycle:4"})
        if (const NamedGraph* g = ctx.find(name)) base.push_back(g);
    for (std::size_t i = 0; i < base.size(); ++i)
        for (std::size_t j = 0; j < base.size(); ++j) {
            const NamedGraph* a = base[i];
            const NamedGraph* b = base[j];
            for (ConeTag cone : kSolverCones) {
                if (i <= j)
                    out.push_back(
                        {"disjunctive/" + a->name + "*" + b->name + "/" + cone_name(cone),
                         [C, a, b, cone] {
                             const Graph prod = disjunctive_product(a->graph, b->graph);
                             const double ta = C->theta_of(a, cone, ThetaKind::Theta).value;
                             const double tb = C->theta_of(b, cone, ThetaKind::Theta).value;
                             const double tp = theta(prod, cone, C->opt.solver).value;
                             const double rel = std::abs(tp - ta * tb) / (ta * tb);
                             if (rel > 1e-5)
                                 return fail(rel, "theta not multiplicative: " + fnum(tp) +
                                                      " vs " + fnum(ta * tb));
                             const double ba =
                                 C->theta_of(a, cone, ThetaKind::BigTheta).value;
                             const double bb =
                                 C->theta_of(b, cone, ThetaKind::BigTheta).value;
                             const double bp = big_theta(prod, cone, C->opt.solver).value;
                             if (bp > ba * bb + 1e-6)
                                 return fail(bp - ba * bb,
                                             "submultiplicativity violated: " + fnum(bp) +
                                                 " vs " + fnum(ba * bb));
                             return pass(rel, "theta ratio " + fnum(tp / (ta * tb)) +
                                                  ", dual slack " + fnum(ba * bb - bp));
                         }});
                out.push_back(
                    {"lexicographic/" + a->name + "[" + b->name + "]/" + cone_name(cone),
                     [C, a, b, cone] {
                         const Graph prod = lexicographic_product(a->graph, b->graph);
                         const double ta = C->theta_of(a, cone, ThetaKind::Theta).value;
                         const double tb = C->theta_of(b, cone, ThetaKind::Theta).value;
                         const double tp = theta(prod, cone, C->opt.solver).value;
                         const double rel = std::abs(tp - ta * tb) / (ta * tb);
                         if (rel > 1e-5)
                             return fail(rel, "theta not multiplicative: " + fnum(tp) + " vs " +
                                                  fnum(ta * tb));
                         return pass(rel, "theta ratio " + fnum(tp / (ta * tb)));
                     }});
            }
        }
    return out;
}

// Meet (categorical product target) and join (disjoint union source) both
// admit constructive witnesses, from classical lifts and from solver output.
std::vector<Instance> build_lattice(Ctx& ctx) {
    Ctx* C = &ctx;
    std::vector<Instance> out;
    const NamedGraph* c4 = ctx.find("cycle:4");
    const NamedGraph* c5 = ctx.find("cycle:5");
    const NamedGraph* c7 = ctx.find("cycle:7");
    const NamedGraph* k3 = ctx.find("complete:3");
    if (c5 && k3)
        out.push_back({"meet/lifts", [c5, k3] {
            const auto f = classical_homomorphism(c5->graph, k3->graph);
            if (!f) return fail(1.0, "expected classical map missing");
            const HomWitness m = categorical_meet_witness(
                lift_classical(*f, c5->graph, k3->graph), identity_witness(c5->graph));
            const double r = m.residuals.worst(HomMode::Strong);
            if (r > 1e-12) return fail(r, "meet witness residual " + fnum(r));
            if (!(m.y == categorical_product(k3->graph, c5->graph)))
                return fail(1.0, "meet target is not the categorical product");
            return pass(r);
        }});
    if (c5 && k3)
        for (ConeTag cone : kSolverCones)
            out.push_back({std::string("meet/") + cone_name(cone), [C, c5, k3, cone] {
                const auto& d1 = C->decision(c5, c5, cone, HomMode::Strong);
                const auto& d2 = C->decision(c5, k3, cone, HomMode::Strong);
                if (d1.verdict != HomVerdict::Yes || d2.verdict != HomVerdict::Yes)
                    return fail(1.0, "expected solver witnesses missing");
                const HomWitness m = categorical_meet_witness(*d1.witness, *d2.witness);
                const double r = m.residuals.worst(HomMode::Strong);
                if (r > 1e-6) return fail(r, "meet witness residual " + fnum(r));
                return pass(r);
            }});
    if (c4 && c5 && k3)
        out.push_back({"union/lifts", [c4, c5, k3] {
            const auto f = classical_homomorphism(c5->graph, k3->graph);
            const auto g = classical_homomorphism(c4->graph, k3->graph);
            if (!f || !g) return fail(1.0, "expected classical maps missing");
            const HomWitness u =
                disjoint_union_witness(lift_classical(*f, c5->graph, k3->graph),
                                       lift_classical(*g, c4->graph, k3->graph));
            const double r = u.residuals.worst(HomMode::Strong);
            if (r > 1e-12) return fail(r, "union witness residual " + fnum(r));
            if (!(u.x == disjoint_union(c5->graph, c4->graph)))
                return fail(1.0, "union source is not the disjoint union");
            return pass(r);
        }});
    if (c4 && c5 && k3)
        out.push_back({"union/dnn", [C, c4, c5, k3] {
            const auto& d1 = C->decision(c5, k3, ConeTag::DNN, HomMode::Strong);
            const auto& d2 = C->decision(c4, k3, ConeTag::DNN, HomMode::Strong);
            if (d1.verdict != HomVerdict::Yes || d2.verdict != HomVerdict::Yes)
                return fail(1.0, "expected solver witnesses missing");
            const HomWitness u = disjoint_union_witness(*d1.witness, *d2.witness);
            const double r = u.residuals.worst(HomMode::Strong);
            if (r > 1e-6) return fail(r, "union witness residual " + fnum(r));
            return pass(r);
        }});
    if (c5 && c7)
        out.push_back({"union/splus", [C, c5, c7] {
            const auto& d1 = C->decision(c5, c5, ConeTag::SPLUS, HomMode::Strong);
            const auto& d2 = C->decision(c7, c5, ConeTag::SPLUS, HomMode::Strong);
            if (d1.verdict != HomVerdict::Yes || d2.verdict != HomVerdict::Yes)
                return fail(1.0, "expected solver witnesses missing");
            const HomWitness u = disjoint_union_witness(*d1.witness, *d2.witness);
            const double r = u.residuals.worst(HomMode::Strong);
            if (r > 1e-6) return fail(r, "union witness residual " + fnum(r));
            return pass(r);
        }});
    out.push_back({"union/singletons", [] {
        const HomWitness u = disjoint_union_witness(identity_witness(complete_graph(1)),
                                                    identity_witness(complete_graph(1)));
        const double r = u.residuals.worst(HomMode::Strong);
        const double cross = std::abs(u.H(0, 1) - 1.0);
        if (std::max(r, cross) > 1e-12)
            return fail(std::max(r, cross), "rank-one union deviates");
        return pass(std::max(r, cross));
    }});
    return out;
}

// The incremental clique-source search and the floor-of-theta route to the
// conic independence number agree in every cone; CP matches the exact value.
std::vector<Instance> build_alpha_consistency(Ctx& ctx) {
    Ctx* C = &ctx;
    std::vector<Instance> out;
    for (const NamedGraph& gref : ctx.corpus) {
        const NamedGraph* g = &gref;
        for (ConeTag cone : kAllCones)
            out.push_back({g->name + "/" + cone_name(cone), [C, g, cone] {
                const int v = C->alpha(g, cone);
                const int exact = alpha_exact(g->graph);
                if (cone == ConeTag::CP && v != exact)
                    return fail(1.0, "CP value " + std::to_string(v) + " != exact " +
                                         std::to_string(exact));
                if (v < exact)
                    return fail(1.0, "value " + std::to_string(v) +
                                         " below the exact independence number " +
                                         std::to_string(exact));
                const double t = C->theta_of(g, cone, ThetaKind::Theta).value;
                if (v > t + 1e-5)
                    return fail(v - t,
                                "value " + std::to_string(v) + " exceeds theta " + fnum(t));
                return pass(0.0, "value " + std::to_string(v));
            }});
    }
    return out;
}

// The universal weak SPLUS witness relates every n-vertex graph to an edge.
std::vector<Instance> build_weak_splus_degenerate(Ctx& ctx) {
    std::vector<Instance> out;
    for (int n = 2; n <= 6; ++n) {
        out.push_back({"psd/" + std::to_string(n), [n] {
            const SymMatrix h = degenerate_weak_splus_witness(n);
            const double eig = min_eigenvalue(h);
            if (eig < -1e-9) return fail(-eig, "universal witness not PSD: " + fnum(eig));
            return pass(std::max(0.0, -eig));
        }});
        for (const NamedGraph& gref : ctx.corpus) {
            if (gref.graph.vertex_count() != n) continue;
            const NamedGraph* g = &gref;
            out.push_back({"graph/" + g->name, [g, n] {
                const SymMatrix h = degenerate_weak_splus_witness(n);
                const WitnessResiduals r = witness_residuals(h, g->graph, complete_graph(2),
                                                             ConeTag::SPLUS, HomMode::Weak);
                const double worst = r.worst(HomMode::Weak);
                if (worst > 1e-9)
                    return fail(worst, "weak conditions violated: block " + fnum(r.block_sum_dev) +
                                           ", ortho " + fnum(r.ortho_dev));
                return pass(worst);
            }});
        }
    }
    return out;
}

// Weak witnesses embed into independence-number certificates for the
// complement of the homomorphic product.
std::vector<Instance> build_weak_alpha(Ctx& ctx) {
    Ctx* C = &ctx;
    std::vector<Instance> out;
    out.push_back({"lift/C4-K2", [] {
        const Graph c4 = cycle_graph(4), k2 = complete_graph(2);
        const auto f = classical_homomorphism(c4, k2);
        if (!f) return fail(1.0, "expected classical map missing");
        const HomWitness emb = weak_alpha_embedding_witness(lift_classical(*f, c4, k2));
        const double r = emb.residuals.worst(HomMode::Weak);
        if (r > 1e-12) return fail(r, "embedded witness residual " + fnum(r));
        if (alpha_exact(homomorphic_product(c4, k2)) != 4)
            return fail(1.0, "product independence number mismatch");
        return pass(r);
    }});
    for (const auto& [x, y] : ctx.pairs(kPairDimCap))
        out.push_back({x->name + "->" + y->name, [C, x, y] {
            const auto& d = C->decision(x, y, ConeTag::DNN, HomMode::Weak);
            if (d.verdict != HomVerdict::Yes)
                return pass(0.0, std::string("no weak witness (") + verdict_str(d.verdict) + ")");
            const HomWitness emb = weak_alpha_embedding_witness(*d.witness);
            const double r = emb.residuals.worst(HomMode::Weak);
            if (r > 1e-6) return fail(r, "embedded witness residual " + fnum(r));
            return pass(r);
        }});
    return out;
}

// When theta coincides with the clique cover number, the conic independence
// number attains it exactly.
std::vector<Instance> build_alpha_attainment(Ctx& ctx) {
    Ctx* C = &ctx;
    std::vector<Instance> out;
    for (const NamedGraph& gref : ctx.corpus) {
        const NamedGraph* g = &gref;
        for (ConeTag cone : kAllCones)
            out.push_back({g->name + "/" + cone_name(cone), [C, g, cone] {
                const int cover = chi_exact(complement(g->graph));
                const double t = C->theta_of(g, cone, ThetaKind::Theta).value;
                if (std::abs(t - cover) > 1e-6)
                    return pass(0.0, "vacuous: theta " + fnum(t) + " away from cover number " +
                                         std::to_string(cover));
                const int v = C->alpha(g, cone);
                if (v != cover)
                    return fail(1.0, "integral theta " + fnum(t) + " not attained: value " +
                                         std::to_string(v));
                return pass(std::abs(t - cover), "attained " + std::to_string(cover));
            }});
    }
    return out;
}

// Weak witnesses over nonnegative cones define non-signalling correlations;
// a deliberately signalling table is rejected.
std::vector<Instance> build_nonsignalling(Ctx& ctx) {
    Ctx* C = &ctx;
    std::vector<Instance> out;
    for (const char* name : {"complete:3", "cycle:5", "path:4"}) {
        const NamedGraph* g = ctx.find(name);
        if (!g) continue;
        out.push_back({std::string("identity/") + name, [g] {
            if (!nonsignalling_check(identity_witness(g->graph)))
                return fail(1.0, "identity witness flagged as signalling");
            return pass();
        }});
    }
    for (const auto& [x, y] : ctx.pairs(kPairDimCap))
        out.push_back({x->name + "->" + y->name, [C, x, y] {
            const auto& d = C->decision(x, y, ConeTag::DNN, HomMode::Weak);
            if (d.verdict != HomVerdict::Yes)
                return pass(0.0, std::string("no weak witness (") + verdict_str(d.verdict) + ")");
            // A witness with block-sum residual eps has Gram row-sum vectors
            // within sqrt(2 eps) of a common vector, so marginal consistency
            // holds to that order; scale the test accordingly.
            const WitnessResiduals& r = d.witness->residuals;
            const double eps = r.block_sum_dev + std::max(0.0, r.cone_dev);
            const double tol = std::max(1e-6, 5.0 * std::sqrt(eps));
            if (!nonsignalling_check(*d.witness, tol))
                return fail(tol, "weak witness flagged as signalling at tolerance " + fnum(tol));
            return pass(0.0, "nonsignalling at tolerance " + fnum(tol));
        }});
    out.push_back({"control/signalling", [] {
        SymMatrix h(4);
        h.pair_labels = VertexPairIndex{2, 2};
        h.set(0, 0, 1.0);
        h.set(3, 3, 1.0);
        h.set(0, 2, 0.5);
        const HomWitness w =
            make_witness(h, empty_graph(2), empty_graph(2), ConeTag::DNN, HomMode::Weak);
        if (nonsignalling_check(w)) return fail(1.0, "signalling table accepted");
        return pass();
    }});
    return out;
}

// Contraction, Kronecker products, principal submatrices, and permutation
// conjugation preserve PSD and DNN membership on random instances.
std::vector<Instance> build_cone_closure(Ctx& ctx) {
    std::vector<Instance> out;
    static const char* kOps[] = {"contract", "kron", "submatrix", "permute"};
    for (int op = 0; op < 4; ++op)
        for (int i = 0; i < 200; ++i) {
            char key[32];
            std::snprintf(key, sizeof(key), "%s/%03d", kOps[op], i);
            const uint32_t seed = ctx.opt.corpus.seed * 1000003u +
                                  static_cast<uint32_t>(op) * 271829u +
                                  static_cast<uint32_t>(i) * 2654435761u;
            out.push_back({key, [op, i, seed] {
                std::mt19937 gen(seed);
                auto u01 = [&gen] { return (gen() >> 8) * (1.0 / 16777216.0); };
                const bool dnn = i % 2 == 0;
                auto random_psd = [&](int dim) {
                    Eigen::MatrixXd b(dim, dim);
                    for (int r = 0; r < dim; ++r)
                        for (int c = 0; c < dim; ++c) b(r, c) = dnn ? u01() : 2.0 * u01() - 1.0;
                    return SymMatrix(Eigen::MatrixXd(b * b.transpose()));
                };
                const int n = 3 + static_cast<int>(gen() % 6);
                const SymMatrix a = random_psd(n);
                SymMatrix result;
                switch (op) {
                    case 0: {
                        const int k = 1 + static_cast<int>(gen() % n);
                        Partition parts(k);
                        for (int v = 0; v < n; ++v) parts[gen() % k].push_back(v);
                        parts.erase(std::remove_if(parts.begin(), parts.end(),
                                                   [](const auto& p) { return p.empty(); }),
                                    parts.end());
                        result = contract(a, parts);
                        break;
                    }
                    case 1:
                        result = kron(a, random_psd(2 + static_cast<int>(gen() % 3)));
                        break;
                    case 2: {
                        std::vector<int> idx;
                        for (int v = 0; v < n; ++v)
                            if (gen() % 2 == 0) idx.push_back(v);
                        if (idx.empty()) idx.push_back(0);
                        result = principal_submatrix(a, idx);
                        break;
                    }
                    default: {
                        std::vector<int> perm(n);
                        for (int v = 0; v < n; ++v) perm[v] = v;
                        for (int v = n - 1; v > 0; --v)
                            std::swap(perm[v], perm[gen() % (v + 1)]);
                        result = permutation_conjugate(a, perm);
                        break;
                    }
                }
                const double eig = min_eigenvalue(result);
                if (eig < -1e-9) return fail(-eig, "PSD lost: eigenvalue " + fnum(eig));
                if (dnn && result.min_entry() < -1e-9)
                    return fail(-result.min_entry(),
                                "nonnegativity lost: entry " + fnum(result.min_entry()));
                return pass(std::max(0.0, -eig));
            }});
        }
    return out;
}

// The block-sum condition is equivalent to the Gram-vector resolution test.
std::vector<Instance> build_gram_blocksum(Ctx& ctx) {
    Ctx* C = &ctx;
    std::vector<Instance> out;
    for (const char* name : {"complete:3", "cycle:5", "petersen"}) {
        const NamedGraph* g = ctx.find(name);
        if (!g) continue;
        out.push_back({std::string("identity/") + name, [g] {
            if (!lemma_gram_check(identity_witness(g->graph).H))
                return fail(1.0, "identity witness rejected");
            return pass();
        }});
    }
    {
        const NamedGraph* c5 = ctx.find("cycle:5");
        const NamedGraph* k3 = ctx.find("complete:3");
        if (c5 && k3)
            out.push_back({"solver/C5-K3", [C, c5, k3] {
                const auto& d = C->decision(c5, k3, ConeTag::DNN, HomMode::Strong);
                if (d.verdict != HomVerdict::Yes)
                    return fail(1.0, "expected solver witness missing");
                if (!lemma_gram_check(d.witness->H, 1e-6))
                    return fail(1.0, "solver witness rejected");
                return pass();
            }});
    }
    out.push_back({"control/halved", [] {
        SymMatrix h = identity_witness(cycle_graph(4)).H;
        for (int i = 0; i < h.dim(); ++i)
            for (int j = i; j < h.dim(); ++j) h.set(i, j, 0.5 * h(i, j));
        if (lemma_gram_check(h)) return fail(1.0, "halved witness accepted");
        return pass();
    }});
    out.push_back({"control/labels", [] {
        SymMatrix h(Eigen::MatrixXd(Eigen::MatrixXd::Identity(2, 2)));
        h.pair_labels = VertexPairIndex{2, 1};
        if (lemma_gram_check(h)) return fail(1.0, "identity with singleton blocks accepted");
        return pass();
    }});
    return out;
}

// ---- runner and registry --------------------------------------------------

SuiteResult run_instances(const std::string& id, std::vector<Instance> list,
                          const VerifyOptions& opt) {
    std::sort(list.begin(), list.end(),
              [](const Instance& a, const Instance& b) { return a.key < b.key; });
    SuiteResult res;
    res.id = id;
    res.instances = static_cast<int>(list.size());
    std::vector<Outcome> outcomes(list.size());
    const auto t0 = std::chrono::steady_clock::now();

    int workers = opt.workers > 0 ? opt.workers
                                  : static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    workers = std::min<int>(workers, static_cast<int>(list.size()));

    std::atomic<std::size_t> next{0};
    std::mutex log_mu;
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < list.size();) {
            Outcome o;
            try {
                o = list[i].run();
            } catch (const std::exception& e) {
                o = fail(0.0, std::string("exception: ") + e.what());
            }
            outcomes[i] = o;
            if (opt.verbose && opt.log) {
                std::lock_guard<std::mutex> lk(log_mu);
                const char* tag = o.kind == Outcome::Pass
                                      ? "pass"
                                      : (o.kind == Outcome::Fail ? "FAIL" : "inconclusive");
                *opt.log << "  [" << tag << "] " << id << " " << list[i].key;
                if (o.residual != 0.0) *opt.log << " (" << fnum(o.residual) << ")";
                if (!o.message.empty()) *opt.log << " " << o.message;
                *opt.log << "\n";
            }
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (std::size_t i = 0; i < list.size(); ++i) {
        const Outcome& o = outcomes[i];
        res.worst_residual = std::max(res.worst_residual, o.residual);
        switch (o.kind) {
            case Outcome::Pass: ++res.passed; break;
            case Outcome::Inconclusive: ++res.inconclusive; break;
            case Outcome::Fail:
                ++res.failed;
                res.failures.push_back(list[i].key + ": " + o.message);
                break;
        }
    }
    res.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

struct SuiteDef {
    const char* id;
    std::vector<const char*> aliases;
    std::vector<Instance> (*builder)(Ctx&);
};

const std::vector<SuiteDef>& registry() {
    static const std::vector<SuiteDef> defs = {
        {"theta-duality", {"thm:thetas", "thetas", "duality"}, build_theta_duality},
        {"theta-order", {"order", "nesting"}, build_theta_order},
        {"cp-equivalence", {"cpequiv", "stronghom2alpha"}, build_cp_equivalence},
        {"dnn-repair", {"dnnequiv", "repair"}, build_dnn_repair},
        {"reflexivity", {"reflex"}, build_reflexivity},
        {"transitivity", {"trans"}, build_transitivity},
        {"hom-theta", {"hom2theta", "thm:hom2theta"}, build_hom_theta},
        {"monotonicity", {"monot", "monob"}, build_monotonicity},
        {"multiplicativity", {"products", "mult"}, build_multiplicativity},
        {"lattice", {"meet", "join", "meet-join"}, build_lattice},
        {"alpha-consistency", {"alphak", "alpha"}, build_alpha_consistency},
        {"weak-splus-degenerate", {"degenerate", "weaksplus"}, build_weak_splus_degenerate},
        {"weak-alpha", {"weakhom2alpha"}, build_weak_alpha},
        {"alpha-attainment", {"curious", "attainment"}, build_alpha_attainment},
        {"nonsignalling", {"ns", "nonsignaling"}, build_nonsignalling},
        {"cone-closure", {"closure"}, build_cone_closure},
        {"gram-blocksum", {"lem:gram", "gram"}, build_gram_blocksum},
    };
    return defs;
}

}  // namespace

std::vector<NamedGraph> verification_corpus(const CorpusOptions& options) {
    std::vector<NamedGraph> out;
    auto add = [&](std::string name, Graph g) {
        if (g.vertex_count() >= 1 && g.vertex_count() <= options.max_size)
            out.push_back({std::move(name), std::move(g)});
    };
    for (int n = 1; n <= 5; ++n) add("complete:" + std::to_string(n), complete_graph(n));
    for (int n = 4; n <= 7; ++n) add("cycle:" + std::to_string(n), cycle_graph(n));
    add("path:3", path_graph(3));
    add("path:4", path_graph(4));
    add("empty:4", empty_graph(4));
    add("petersen", petersen_graph());
    for (int n = std::max(1, options.random_min); n <= options.random_max; ++n)
        add("random:" + std::to_string(n) + ":" + std::to_string(options.seed),
            random_graph(n, options.seed));
    return out;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& d : registry()) v.push_back(d.id);
        return v;
    }();
    return names;
}

std::vector<std::string> resolve_suites(const std::string& token) {
    std::string t;
    for (char c : token) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (t == "all") return suite_names();
    for (const auto& d : registry()) {
        if (t == d.id) return {d.id};
        for (const char* a : d.aliases)
            if (t == a) return {d.id};
    }
    std::string known = "all";
    for (const auto& d : registry()) known += std::string(", ") + d.id;
    throw std::invalid_argument("unknown suite '" + token + "'; known: " + known);
}

std::vector<SuiteResult> run_suites(const std::vector<std::string>& names,
                                    const VerifyOptions& options) {
    Ctx ctx(options);
    std::vector<std::string> ordered;
    for (const auto& d : registry())
        if (std::find(names.begin(), names.end(), d.id) != names.end() &&
            std::find(ordered.begin(), ordered.end(), d.id) == ordered.end())
            ordered.push_back(d.id);
    for (const auto& n : names)
        if (std::find(ordered.begin(), ordered.end(), n) == ordered.end())
            throw std::invalid_argument("unknown suite '" + n + "'");

    std::vector<SuiteResult> report;
    for (const auto& name : ordered) {
        const SuiteDef* def = nullptr;
        for (const auto& d : registry())
            if (name == d.id) def = &d;
        if (options.verbose && options.log) *options.log << "suite " << name << "\n";
        report.push_back(run_instances(name, def->builder(ctx), options));
        if (options.verbose && options.log) {
            const SuiteResult& r = report.back();
            *options.log << "suite " << name << ": " << r.passed << "/" << r.instances
                         << " passed in " << fnum(r.wall_seconds) << "s\n";
        }
    }
    return report;
}

std::string report_to_text(const std::vector<SuiteResult>& report) {
    std::ostringstream os;
    char line[160];
    std::snprintf(line, sizeof(line), "%-24s %6s %6s %6s %7s %13s %9s\n", "suite", "cases",
                  "pass", "fail", "inconc", "worst-resid", "wall");
    os << line;
    for (const auto& r : report) {
        std::snprintf(line, sizeof(line), "%-24s %6d %6d %6d %7d %13.3e %8.2fs\n", r.id.c_str(),
                      r.instances, r.passed, r.failed, r.inconclusive, r.worst_residual,
                      r.wall_seconds);
        os << line;
    }
    bool any = false;
    for (const auto& r : report)
        for (const auto& f : r.failures) {
            if (!any) os << "failures:\n";
            any = true;
            os << "  [" << r.id << "] " << f << "\n";
        }
    return os.str();
}

std::string report_to_json(const std::vector<SuiteResult>& report) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : report) {
        nlohmann::json j;
        j["suite"] = r.id;
        j["instances"] = r.instances;
        j["passed"] = r.passed;
        j["failed"] = r.failed;
        j["inconclusive"] = r.inconclusive;
        j["worst_residual"] = r.worst_residual;
        j["wall_seconds"] = r.wall_seconds;
        j["failures"] = r.failures;
        out.push_back(std::move(j));
    }
    return out.dump(2);
}

}  // namespace conichom
