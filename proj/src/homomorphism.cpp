#include "conichom/homomorphism.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "conichom/errors.hpp"

namespace conichom {

std::string mode_name(HomMode mode) { return mode == HomMode::Strong ? "strong" : "weak"; }

double WitnessResiduals::worst(HomMode mode) const {
    double w = std::max({block_sum_dev, ortho_dev, cone_dev});
    if (mode == HomMode::Strong) w = std::max(w, mortho_dev);
    return w;
}

namespace {

void require_pair_dims(const SymMatrix& h, const Graph& x, const Graph& y, const char* what) {
    if (h.dim() != x.vertex_count() * y.vertex_count())
        throw std::invalid_argument(std::string(what) +
                                    ": matrix dimension must be |V(X)|*|V(Y)|");
}

void reject_weak_splus(ConeTag cone, HomMode mode, const char* what) {
    if (cone == ConeTag::SPLUS && mode == HomMode::Weak)
        throw std::invalid_argument(std::string(what) +
                                    ": weak mode over the psd cone is degenerate (every pair of "
                                    "graphs would be related) and is not accepted");
}

void require_valid(const HomWitness& w, double tol, const char* what) {
    if (!witness_passes(w, tol))
        throw std::invalid_argument(std::string(what) + ": input witness residuals exceed " +
                                    std::to_string(tol));
}

// Feasibility program for a conic homomorphism witness.  One PSD block holds
// H; required-zero entries are pinned by equality constraints; every pair
// block must sum to 1; for DNN each remaining strict-upper entry is paired
// with an orthant slack to force entrywise nonnegativity.
ConicProgram hom_program(const Graph& gx, const Graph& gy, ConeTag cone, HomMode mode) {
    const int nx = gx.vertex_count(), ny = gy.vertex_count();
    const int n = nx * ny;
    const VertexPairIndex idx{nx, ny};
    ConicProgram p;
    const int hb = p.add_psd_block(n);
    std::vector<std::vector<char>> fixed(n, std::vector<char>(n, 0));
    auto zero_entry = [&](int i, int j) {
        if (fixed[i][j]) return;
        fixed[i][j] = fixed[j][i] = 1;
        const int c = p.add_constraint(0.0);
        p.constraint_psd(c, hb, std::min(i, j), std::max(i, j), i == j ? 1.0 : 0.5);
    };
    for (int x1 = 0; x1 < nx; ++x1)
        for (int y1 = 0; y1 < ny; ++y1)
            for (int x2 = x1; x2 < nx; ++x2)
                for (int y2 = 0; y2 < ny; ++y2) {
                    const int i = idx.flat(x1, y1), j = idx.flat(x2, y2);
                    if (j < i) continue;
                    const bool y_nonadj = y1 == y2 || !gy.adjacent(y1, y2);
                    if (gx.adjacent(x1, x2) && y_nonadj) zero_entry(i, j);
                    if (mode == HomMode::Strong && x1 == x2 && y1 != y2) zero_entry(i, j);
                }
    for (int x1 = 0; x1 < nx; ++x1)
        for (int x2 = x1; x2 < nx; ++x2) {
            const int c = p.add_constraint(1.0);
            if (x1 == x2) {
                for (int y1 = 0; y1 < ny; ++y1) {
                    p.constraint_psd(c, hb, idx.flat(x1, y1), idx.flat(x1, y1), 1.0);
                    for (int y2 = y1 + 1; y2 < ny; ++y2)
                        p.constraint_psd(c, hb, idx.flat(x1, y1), idx.flat(x1, y2), 1.0);
                }
            } else {
                for (int y1 = 0; y1 < ny; ++y1)
                    for (int y2 = 0; y2 < ny; ++y2) {
                        const int i = idx.flat(x1, y1), j = idx.flat(x2, y2);
                        p.constraint_psd(c, hb, std::min(i, j), std::max(i, j), 0.5);
                    }
            }
        }
    if (cone == ConeTag::DNN) {
        int count = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (!fixed[i][j]) ++count;
        if (count > 0) {
            const int slack = p.add_orthant_block(count);
            int k = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (!fixed[i][j]) {
                        const int c = p.add_constraint(0.0);
                        p.constraint_psd(c, hb, i, j, 0.5);
                        p.constraint_orthant(c, slack, k++, -1.0);
                    }
        }
    }
    return p;
}

constexpr double kDecisionWitnessTol = 1e-7;
constexpr double kDecisionThetaBand = 1e-4;

}  // namespace

WitnessResiduals witness_residuals(const SymMatrix& h, const Graph& x, const Graph& y,
                                   ConeTag cone, HomMode mode) {
    (void)mode;
    require_pair_dims(h, x, y, "witness_residuals");
    const int nx = x.vertex_count(), ny = y.vertex_count();
    const VertexPairIndex idx{nx, ny};
    WitnessResiduals r;
    for (int x1 = 0; x1 < nx; ++x1)
        for (int x2 = 0; x2 < nx; ++x2) {
            double s = 0.0;
            for (int y1 = 0; y1 < ny; ++y1)
                for (int y2 = 0; y2 < ny; ++y2) s += h(idx.flat(x1, y1), idx.flat(x2, y2));
            r.block_sum_dev = std::max(r.block_sum_dev, std::abs(s - 1.0));
        }
    for (int x1 = 0; x1 < nx; ++x1)
        for (int x2 = 0; x2 < nx; ++x2) {
            if (!x.adjacent(x1, x2)) continue;
            for (int y1 = 0; y1 < ny; ++y1)
                for (int y2 = 0; y2 < ny; ++y2) {
                    if (y1 != y2 && y.adjacent(y1, y2)) continue;
                    r.ortho_dev =
                        std::max(r.ortho_dev, std::abs(h(idx.flat(x1, y1), idx.flat(x2, y2))));
                }
        }
    for (int x1 = 0; x1 < nx; ++x1)
        for (int y1 = 0; y1 < ny; ++y1)
            for (int y2 = y1 + 1; y2 < ny; ++y2)
                r.mortho_dev =
                    std::max(r.mortho_dev, std::abs(h(idx.flat(x1, y1), idx.flat(x1, y2))));
    r.cone_dev = std::max(0.0, -min_eigenvalue(h));
    if (cone != ConeTag::SPLUS) r.cone_dev = std::max(r.cone_dev, std::max(0.0, -h.min_entry()));
    return r;
}

HomWitness make_witness(SymMatrix h, Graph x, Graph y, ConeTag cone, HomMode mode) {
    require_pair_dims(h, x, y, "make_witness");
    h.pair_labels = VertexPairIndex{x.vertex_count(), y.vertex_count()};
    HomWitness w{std::move(x), std::move(y), std::move(h), cone, mode, {}};
    w.residuals = witness_residuals(w.H, w.x, w.y, w.cone, w.mode);
    return w;
}

bool witness_passes(const HomWitness& w, double tol) { return w.residuals.worst(w.mode) <= tol; }

HomWitness lift_classical(const std::vector<int>& map, const Graph& x, const Graph& y) {
    if (static_cast<int>(map.size()) != x.vertex_count())
        throw std::invalid_argument("lift_classical: map length must be |V(X)|");
    if (!is_homomorphism(x, y, map))
        throw std::invalid_argument("lift_classical: map is not a homomorphism");
    const int nx = x.vertex_count(), ny = y.vertex_count();
    const VertexPairIndex idx{nx, ny};
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(nx * ny, nx * ny);
    for (int a = 0; a < nx; ++a)
        for (int b = 0; b < nx; ++b) h(idx.flat(a, map[a]), idx.flat(b, map[b])) = 1.0;
    return make_witness(SymMatrix(std::move(h)), x, y, ConeTag::CP, HomMode::Strong);
}

HomWitness identity_witness(const Graph& x, ConeTag cone) {
    std::vector<int> id(x.vertex_count());
    std::iota(id.begin(), id.end(), 0);
    HomWitness w = lift_classical(id, x, x);
    w.cone = cone;
    return w;
}

HomDecision decide_hom(const Graph& x, const Graph& y, ConeTag cone, HomMode mode,
                       const SolverOptions& options) {
    if (x.vertex_count() == 0 || y.vertex_count() == 0)
        throw std::invalid_argument("decide_hom: graphs must be nonempty");
    reject_weak_splus(cone, mode, "decide_hom");
    HomDecision d;

    if (cone == ConeTag::CP) {
        // Strong and weak coincide with the existence of a classical map.
        d.method = HomMethod::Combinatorial;
        const auto map = classical_homomorphism(x, y);
        if (map) {
            HomWitness w = lift_classical(*map, x, y);
            w.mode = mode;
            d.verdict = HomVerdict::Yes;
            d.witness = std::move(w);
            d.detail = "classical map found by exhaustive search";
        } else {
            d.verdict = HomVerdict::No;
            d.detail = "exhaustive search over all vertex maps";
        }
        return d;
    }

    if (static_cast<long long>(x.vertex_count()) * y.vertex_count() >
        options.max_total_psd_dim)
        throw CapabilityError("decide_hom: |V(X)|*|V(Y)| exceeds the solver dimension cap");

    // Direct conic feasibility.  A numerical breakdown in this route is an
    // abstention, not an error: the product-theta criterion below still
    // decides on its own.
    bool direct_yes = false, direct_no = false;
    std::optional<HomWitness> witness;
    Eigen::VectorXd farkas;
    try {
        const FeasibilityReport feas = feasibility(hom_program(x, y, cone, mode), options);
        if (feas.status == FeasStatus::Feasible) {
            HomWitness w = make_witness(feas.solution.psd[0], x, y, cone, mode);
            if (witness_passes(w, kDecisionWitnessTol)) {
                direct_yes = true;
                witness = std::move(w);
            }
        } else if (feas.status == FeasStatus::Infeasible) {
            direct_no = true;
            farkas = feas.farkas_y;
        }
    } catch (const NumericalError&) {
    }

    // Independent oracle: a strong homomorphism exists iff the Theta value of
    // the homomorphic product reaches |V(X)| (by the DNN repair equivalence
    // the same criterion settles weak DNN mode).
    const ThetaResult tp = theta(homomorphic_product(x, y), cone, options);
    d.theta_product = tp.value;
    const double n = x.vertex_count();
    const bool theta_valid = tp.report.status == SolveStatus::Optimal;
    const bool theta_yes = theta_valid && tp.value > n - kDecisionThetaBand;
    const bool theta_no = theta_valid && tp.value <= n - kDecisionThetaBand;

    if (direct_yes && !theta_no) {
        d.verdict = HomVerdict::Yes;
        d.method = HomMethod::DirectFeasibility;
        d.witness = std::move(witness);
        d.detail = theta_yes ? "feasible witness; product-theta criterion concurs"
                             : "feasible witness; product-theta unavailable";
    } else if (direct_no && !theta_yes) {
        d.verdict = HomVerdict::No;
        d.method = HomMethod::DirectFeasibility;
        d.certificate = farkas;
        d.detail = theta_no ? "infeasibility certificate; product-theta criterion concurs"
                            : "infeasibility certificate; product-theta unavailable";
    } else if (!direct_yes && !direct_no && theta_no) {
        d.verdict = HomVerdict::No;
        d.method = HomMethod::ThetaReduction;
        d.detail = "product-theta falls short of |V(X)|; direct feasibility abstained "
                   "(attainment at the optimum is resolved within tolerance only)";
    } else {
        d.verdict = HomVerdict::Inconclusive;
        d.method = (direct_yes || direct_no) ? HomMethod::DirectFeasibility : HomMethod::ThetaReduction;
        std::ostringstream os;
        os << "methods disagree or abstain: direct="
           << (direct_yes ? "yes" : direct_no ? "no" : "abstain")
           << " product-theta=" << tp.value << " target=" << n;
        d.detail = os.str();
    }
    return d;
}

HomWitness compose_witnesses(const HomWitness& h1, const HomWitness& h2) {
    if (!(h1.y == h2.x))
        throw std::invalid_argument("compose_witnesses: middle graphs do not match");
    if (h1.cone != h2.cone || h1.mode != h2.mode)
        throw std::invalid_argument("compose_witnesses: cone/mode mismatch");
    if (h1.mode == HomMode::Weak) reject_weak_splus(h1.cone, h1.mode, "compose_witnesses");
    const int nx = h1.x.vertex_count(), ny = h1.y.vertex_count(), nz = h2.y.vertex_count();
    const int d1 = nx * ny, d2 = ny * nz;
    SymMatrix out(nx * nz);
    if (static_cast<long long>(d1) * d2 <= kDefaultKronDimCap) {
        // Principal submatrix of kron(H1,H2) on indices ((x,y),(y,z)),
        // contracted over the middle vertex.
        const SymMatrix k = kron(h1.H, h2.H);
        std::vector<int> keep;
        keep.reserve(static_cast<std::size_t>(nx) * ny * nz);
        for (int x = 0; x < nx; ++x)
            for (int y = 0; y < ny; ++y)
                for (int z = 0; z < nz; ++z) keep.push_back((x * ny + y) * d2 + (y * nz + z));
        const SymMatrix sub = principal_submatrix(k, keep);
        Partition parts(static_cast<std::size_t>(nx) * nz);
        for (int x = 0; x < nx; ++x)
            for (int y = 0; y < ny; ++y)
                for (int z = 0; z < nz; ++z) parts[x * nz + z].push_back((x * ny + y) * nz + z);
        out = contract(sub, parts);
    } else {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(nx * nz, nx * nz);
        const VertexPairIndex i1{nx, ny}, i2{ny, nz}, i3{nx, nz};
        for (int x = 0; x < nx; ++x)
            for (int z = 0; z < nz; ++z)
                for (int x2 = 0; x2 < nx; ++x2)
                    for (int z2 = 0; z2 < nz; ++z2) {
                        double s = 0.0;
                        for (int y = 0; y < ny; ++y)
                            for (int y2 = 0; y2 < ny; ++y2)
                                s += h1.H(i1.flat(x, y), i1.flat(x2, y2)) *
                                     h2.H(i2.flat(y, z), i2.flat(y2, z2));
                        m(i3.flat(x, z), i3.flat(x2, z2)) = s;
                    }
        out = SymMatrix(std::move(m));
    }
    return make_witness(std::move(out), h1.x, h2.y, h1.cone, h1.mode);
}

HomWitness repair_weak_to_strong_dnn(const HomWitness& h, double tol) {
    if (h.cone == ConeTag::SPLUS)
        throw std::invalid_argument("repair_weak_to_strong_dnn: witness must live in a "
                                    "nonnegative cone");
    require_valid(h, tol, "repair_weak_to_strong_dnn");
    const int nx = h.x.vertex_count(), ny = h.y.vertex_count();
    const VertexPairIndex idx{nx, ny};
    Eigen::MatrixXd m = h.H.mat();
    for (int x = 0; x < nx; ++x)
        for (int y1 = 0; y1 < ny; ++y1)
            for (int y2 = y1 + 1; y2 < ny; ++y2) {
                const int i = idx.flat(x, y1), j = idx.flat(x, y2);
                const double c = m(i, j);
                if (c == 0.0) continue;
                m(i, i) += c;
                m(j, j) += c;
                m(i, j) = 0.0;
                m(j, i) = 0.0;
            }
    return make_witness(SymMatrix(std::move(m)), h.x, h.y, ConeTag::DNN, HomMode::Strong);
}

HomWitness categorical_meet_witness(const HomWitness& h1, const HomWitness& h2) {
    if (!(h1.x == h2.x))
        throw std::invalid_argument("categorical_meet_witness: source graphs do not match");
    if (h1.cone != h2.cone || h1.mode != h2.mode)
        throw std::invalid_argument("categorical_meet_witness: cone/mode mismatch");
    const int nz = h1.x.vertex_count(), nx = h1.y.vertex_count(), ny = h2.y.vertex_count();
    const Graph target = categorical_product(h1.y, h2.y);
    const int np = nx * ny;
    SymMatrix out(nz * np);
    const long long kdim = static_cast<long long>(nz) * nx * nz * ny;
    if (kdim <= kDefaultKronDimCap) {
        const SymMatrix k = kron(h1.H, h2.H);
        std::vector<int> keep;
        keep.reserve(static_cast<std::size_t>(nz) * np);
        for (int z = 0; z < nz; ++z)
            for (int xv = 0; xv < nx; ++xv)
                for (int yv = 0; yv < ny; ++yv)
                    keep.push_back((z * nx + xv) * (nz * ny) + (z * ny + yv));
        out = principal_submatrix(k, keep);
    } else {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(nz * np, nz * np);
        const VertexPairIndex i1{nz, nx}, i2{nz, ny}, i3{nz, np};
        for (int z = 0; z < nz; ++z)
            for (int z2 = 0; z2 < nz; ++z2)
                for (int xv = 0; xv < nx; ++xv)
                    for (int x2 = 0; x2 < nx; ++x2)
                        for (int yv = 0; yv < ny; ++yv)
                            for (int y2 = 0; y2 < ny; ++y2)
                                m(i3.flat(z, xv * ny + yv), i3.flat(z2, x2 * ny + y2)) =
                                    h1.H(i1.flat(z, xv), i1.flat(z2, x2)) *
                                    h2.H(i2.flat(z, yv), i2.flat(z2, y2));
        out = SymMatrix(std::move(m));
    }
    return make_witness(std::move(out), h1.x, target, h1.cone, h1.mode);
}

HomWitness disjoint_union_witness(const HomWitness& h1, const HomWitness& h2) {
    if (!(h1.y == h2.y))
        throw std::invalid_argument("disjoint_union_witness: target graphs do not match");
    if (h1.cone != h2.cone || h1.mode != h2.mode)
        throw std::invalid_argument("disjoint_union_witness: cone/mode mismatch");
    if (h1.mode == HomMode::Weak) reject_weak_splus(h1.cone, h1.mode, "disjoint_union_witness");
    const int a = h1.x.vertex_count(), b = h2.x.vertex_count(), c = h1.y.vertex_count();
    const int da = a * c, db = b * c;
    const Eigen::MatrixXd k =
        (h1.H.mat() * Eigen::MatrixXd::Ones(da, db) * h2.H.mat()) / (static_cast<double>(a) * b);
    Eigen::MatrixXd m(da + db, da + db);
    m.topLeftCorner(da, da) = h1.H.mat();
    m.topRightCorner(da, db) = k;
    m.bottomLeftCorner(db, da) = k.transpose();
    m.bottomRightCorner(db, db) = h2.H.mat();
    HomWitness w = make_witness(SymMatrix(std::move(m)), disjoint_union(h1.x, h2.x), h1.y,
                                h1.cone, h1.mode);
    // The proof of cone membership is construction-specific; re-check here.
    if (w.residuals.cone_dev > 1e-7)
        throw NumericalError("disjoint_union_witness: assembled matrix failed the cone check");
    return w;
}

SymMatrix hom_to_theta_witness(const HomWitness& h) {
    if (h.mode != HomMode::Strong)
        throw std::invalid_argument("hom_to_theta_witness: strong witness required");
    require_valid(h, 1e-6, "hom_to_theta_witness");
    SymMatrix m(Eigen::MatrixXd(h.H.mat() / h.x.vertex_count()));
    m.pair_labels = h.H.pair_labels;
    return m;
}

HomWitness theta_to_hom_witness(const SymMatrix& m, const Graph& x, const Graph& y, ConeTag cone,
                                double tol) {
    require_pair_dims(m, x, y, "theta_to_hom_witness");
    const double n = x.vertex_count();
    if (m.sum() < n - tol)
        throw std::invalid_argument("theta_to_hom_witness: objective value falls short of |V(X)|");
    return make_witness(SymMatrix(Eigen::MatrixXd(n * m.mat())), x, y, cone, HomMode::Strong);
}

SymMatrix monotone_transform_theta(const SymMatrix& m, const HomWitness& h) {
    if (h.mode != HomMode::Strong)
        throw std::invalid_argument("monotone_transform_theta: strong witness required");
    const int nx = h.x.vertex_count(), ny = h.y.vertex_count();
    if (m.dim() != nx)
        throw std::invalid_argument("monotone_transform_theta: solution dimension mismatch");
    const VertexPairIndex idx{nx, ny};
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(ny, ny);
    for (int y1 = 0; y1 < ny; ++y1)
        for (int y2 = 0; y2 < ny; ++y2) {
            double s = 0.0;
            for (int x1 = 0; x1 < nx; ++x1)
                for (int x2 = 0; x2 < nx; ++x2)
                    s += m(x1, x2) * h.H(idx.flat(x1, y1), idx.flat(x2, y2));
            out(y1, y2) = s;
        }
    return SymMatrix(std::move(out));
}

SymMatrix monotone_transform_big_theta(const SymMatrix& n, const HomWitness& h) {
    if (h.mode == HomMode::Weak) reject_weak_splus(h.cone, h.mode, "monotone_transform_big_theta");
    const int nx = h.x.vertex_count(), ny = h.y.vertex_count();
    if (n.dim() != ny)
        throw std::invalid_argument("monotone_transform_big_theta: solution dimension mismatch");
    const double t = n.trace() / ny;
    for (int i = 0; i < ny; ++i)
        if (std::abs(n(i, i) - t) > 1e-6 * (1.0 + std::abs(t)))
            throw std::invalid_argument("monotone_transform_big_theta: diagonal is not constant");
    const VertexPairIndex idx{nx, ny};
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(nx, nx);
    for (int x1 = 0; x1 < nx; ++x1)
        for (int x2 = 0; x2 < nx; ++x2) {
            double s = 0.0;
            for (int y1 = 0; y1 < ny; ++y1)
                for (int y2 = 0; y2 < ny; ++y2)
                    s += h.H(idx.flat(x1, y1), idx.flat(x2, y2)) * n(y1, y2);
            out(x1, x2) = s;
        }
    for (int x1 = 0; x1 < nx; ++x1) {
        const double topup = t - out(x1, x1);
        if (topup < -1e-6 * (1.0 + std::abs(t)))
            throw NumericalError("monotone_transform_big_theta: diagonal exceeds the target value");
        out(x1, x1) = t;
    }
    return SymMatrix(std::move(out));
}

int conic_alpha(const Graph& g, ConeTag cone, HomMode mode, const SolverOptions& options) {
    if (g.vertex_count() == 0)
        throw std::invalid_argument("conic_alpha: graph must have at least one vertex");
    reject_weak_splus(cone, mode, "conic_alpha");

    // Route 1: floor of the theta value, unless it sits inside the guard
    // band around an integer where rounding could flip the floor.
    const double tv = theta(g, cone, options).value;
    const double nearest = std::round(tv);
    const bool banded = std::abs(tv - nearest) <= 1e-5;
    const int by_floor = banded ? -1 : static_cast<int>(std::floor(tv));

    // Route 2: largest m with complete(m) -> complement(g).
    const Graph target = complement(g);
    int by_search = 1;  // a single vertex always maps
    for (int m = 2; m <= g.vertex_count() + 1; ++m) {
        const HomDecision d = decide_hom(complete_graph(m), target, cone, mode, options);
        if (d.verdict == HomVerdict::Yes) {
            by_search = m;
        } else if (d.verdict == HomVerdict::No) {
            break;
        } else {
            throw NumericalError("conic_alpha: homomorphism decision inconclusive at m=" +
                                 std::to_string(m));
        }
    }

    if (by_floor >= 0 && by_floor != by_search)
        throw NumericalError("conic_alpha: floor(theta)=" + std::to_string(by_floor) +
                             " disagrees with incremental search=" + std::to_string(by_search) +
                             " (theta=" + std::to_string(tv) + ")");
    return by_search;
}

bool lemma_gram_check(const SymMatrix& h, double tol) {
    if (!h.pair_labels)
        throw std::invalid_argument("lemma_gram_check: matrix must carry pair labels");
    if (!is_psd(h, tol)) return false;
    const SymMatrix blocks = contract(h, pair_block_partition(*h.pair_labels));
    for (int i = 0; i < blocks.dim(); ++i)
        for (int j = 0; j < blocks.dim(); ++j)
            if (std::abs(blocks(i, j) - 1.0) > tol) return false;
    return true;
}

SymMatrix degenerate_weak_splus_witness(int n, double gamma) {
    if (n < 1) throw std::invalid_argument("degenerate_weak_splus_witness: n must be positive");
    if (gamma < 0.0) gamma = std::max(1.0, n / 4.0);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int x1 = 0; x1 < n; ++x1)
        for (int x2 = 0; x2 < n; ++x2)
            for (int y1 = 0; y1 < 2; ++y1)
                for (int y2 = 0; y2 < 2; ++y2) {
                    double v = y1 == y2 ? 0.0 : 0.5;  // (1/2) J (x) [[0,1],[1,0]]
                    if (x1 == x2) v += gamma * (y1 == y2 ? 1.0 : -1.0);
                    m(x1 * 2 + y1, x2 * 2 + y2) = v;
                }
    SymMatrix out{std::move(m)};
    out.pair_labels = VertexPairIndex{n, 2};
    return out;
}

HomWitness weak_alpha_embedding_witness(const HomWitness& h) {
    reject_weak_splus(h.cone, HomMode::Weak, "weak_alpha_embedding_witness");
    const int nx = h.x.vertex_count(), ny = h.y.vertex_count();
    const Graph target = complement(homomorphic_product(h.x, h.y));
    const int np = nx * ny;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(nx * np, nx * np);
    const VertexPairIndex ih{nx, ny}, io{nx, np};
    for (int x1 = 0; x1 < nx; ++x1)
        for (int y1 = 0; y1 < ny; ++y1)
            for (int x2 = 0; x2 < nx; ++x2)
                for (int y2 = 0; y2 < ny; ++y2)
                    m(io.flat(x1, ih.flat(x1, y1)), io.flat(x2, ih.flat(x2, y2))) =
                        h.H(ih.flat(x1, y1), ih.flat(x2, y2));
    return make_witness(SymMatrix(std::move(m)), complete_graph(nx), target, h.cone,
                        HomMode::Weak);
}

bool nonsignalling_check(const HomWitness& h, double tol) {
    const int nx = h.x.vertex_count(), ny = h.y.vertex_count();
    const VertexPairIndex idx{nx, ny};
    for (int x1 = 0; x1 < nx; ++x1)
        for (int y1 = 0; y1 < ny; ++y1) {
            double base = 0.0;
            for (int x2 = 0; x2 < nx; ++x2) {
                double s = 0.0;
                for (int y2 = 0; y2 < ny; ++y2) s += h.H(idx.flat(x1, y1), idx.flat(x2, y2));
                if (x2 == 0)
                    base = s;
                else if (std::abs(s - base) > tol)
                    return false;
            }
        }
    return true;
}

}  // namespace conichom
