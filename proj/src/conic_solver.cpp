#include "conichom/conic_program.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "conichom/errors.hpp"

namespace conichom {

int ConicProgram::add_psd_block(int dim) {
    if (dim <= 0) throw std::invalid_argument("conic program: PSD block dimension must be positive");
    blocks_.push_back({true, static_cast<int>(psd_dims_.size()), dim});
    psd_dims_.push_back(dim);
    return static_cast<int>(blocks_.size()) - 1;
}

int ConicProgram::add_orthant_block(int len) {
    if (len <= 0) throw std::invalid_argument("conic program: orthant length must be positive");
    blocks_.push_back({false, orthant_len_, len});
    orthant_len_ += len;
    return static_cast<int>(blocks_.size()) - 1;
}

void ConicProgram::check_psd_entry(int block, int i, int j) const {
    if (block < 0 || block >= static_cast<int>(blocks_.size()) || !blocks_[block].psd)
        throw std::invalid_argument("conic program: block is not a PSD block");
    const int d = blocks_[block].size;
    if (i < 0 || j < 0 || i >= d || j >= d)
        throw std::invalid_argument("conic program: PSD entry out of range");
}

void ConicProgram::check_orth_entry(int block, int k) const {
    if (block < 0 || block >= static_cast<int>(blocks_.size()) || blocks_[block].psd)
        throw std::invalid_argument("conic program: block is not an orthant block");
    if (k < 0 || k >= blocks_[block].size)
        throw std::invalid_argument("conic program: orthant entry out of range");
}

void ConicProgram::objective_psd(int block, int i, int j, double c) {
    check_psd_entry(block, i, j);
    objective_.psd.push_back({blocks_[block].index, std::min(i, j), std::max(i, j), c});
}

void ConicProgram::objective_orthant(int block, int k, double c) {
    check_orth_entry(block, k);
    objective_.orth.push_back({blocks_[block].index + k, c});
}

int ConicProgram::add_constraint(double rhs) {
    constraints_.emplace_back();
    rhs_.push_back(rhs);
    return static_cast<int>(rhs_.size()) - 1;
}

void ConicProgram::constraint_psd(int con, int block, int i, int j, double c) {
    if (con < 0 || con >= constraint_count()) throw std::invalid_argument("conic program: bad constraint id");
    check_psd_entry(block, i, j);
    constraints_[con].psd.push_back({blocks_[block].index, std::min(i, j), std::max(i, j), c});
}

void ConicProgram::constraint_orthant(int con, int block, int k, double c) {
    if (con < 0 || con >= constraint_count()) throw std::invalid_argument("conic program: bad constraint id");
    check_orth_entry(block, k);
    constraints_[con].orth.push_back({blocks_[block].index + k, c});
}

int ConicProgram::total_psd_dim() const {
    int total = 0;
    for (int d : psd_dims_) total += d;
    return total;
}

SolverOptions default_solver_options() {
    SolverOptions options;
    if (const char* cap = std::getenv("CONICHOM_MAX_PSD_DIM")) {
        const int value = std::atoi(cap);
        if (value > 0) options.max_total_psd_dim = value;
    }
    return options;
}

namespace {

// Factor a positive definite matrix as F F^T together with F^{-1}.
// Cholesky when it succeeds, eigenvalue-clamped square root otherwise.
void factor_psd(const Eigen::MatrixXd& x, Eigen::MatrixXd& f, Eigen::MatrixXd& finv) {
    const int d = static_cast<int>(x.rows());
    Eigen::LLT<Eigen::MatrixXd> llt(x);
    if (llt.info() == Eigen::Success) {
        f = llt.matrixL();
        finv = f.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(d, d));
        return;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x);
    if (es.info() != Eigen::Success) throw NumericalError("solver: eigendecomposition failed");
    const double top = std::max(es.eigenvalues().maxCoeff(), 1.0);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(1e-14 * top);
    f = es.eigenvectors() * ev.cwiseSqrt().asDiagonal();
    finv = ev.cwiseSqrt().cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
}

double min_eig(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("solver: eigendecomposition failed");
    return es.eigenvalues()[0];
}

// Largest step a with x + a*d staying PSD, given Finv for x = F F^T.
double max_step_psd(const Eigen::MatrixXd& finv, const Eigen::MatrixXd& d) {
    const Eigen::MatrixXd k = finv * d * finv.transpose();
    const double lo = min_eig(Eigen::MatrixXd(0.5 * (k + k.transpose())));
    if (lo >= -1e-15) return std::numeric_limits<double>::infinity();
    return -1.0 / lo;
}

double max_step_orth(const Eigen::VectorXd& x, const Eigen::VectorXd& d) {
    double step = std::numeric_limits<double>::infinity();
    for (int i = 0; i < x.size(); ++i)
        if (d[i] < 0.0) step = std::min(step, -x[i] / d[i]);
    return step;
}

struct NTScaling {
    Eigen::MatrixXd r, rinv, w;
    Eigen::VectorXd lambda;
};

}  // namespace

class SolverWorkspace {
public:
    SolverWorkspace(const ConicProgram& p, const SolverOptions& opt) : p_(p), opt_(opt) {
        if (p_.blocks_.empty()) throw std::invalid_argument("solver: program has no variable blocks");
        if (p_.total_psd_dim() > opt_.max_total_psd_dim)
            throw CapabilityError("solver: total PSD dimension " + std::to_string(p_.total_psd_dim()) +
                                  " exceeds cap " + std::to_string(opt_.max_total_psd_dim));
        dims_ = p_.psd_dims_;
        nb_ = static_cast<int>(dims_.size());
        mo_ = p_.orthant_len_;
        m_ = p_.constraint_count();
        sign_ = p_.sense_ == Sense::Maximize ? -1.0 : 1.0;

        nu_ = mo_;
        for (int d : dims_) nu_ += d;

        b_ = Eigen::Map<const Eigen::VectorXd>(p_.rhs_.data(), m_);
        cp_.assign(nb_, Eigen::MatrixXd());
        for (int bl = 0; bl < nb_; ++bl) cp_[bl] = Eigen::MatrixXd::Zero(dims_[bl], dims_[bl]);
        co_ = Eigen::VectorXd::Zero(mo_);
        add_functional(p_.objective_, sign_, cp_, co_);

        norm_b_ = b_.norm();
        norm_c_ = co_.squaredNorm();
        for (const auto& c : cp_) norm_c_ += c.squaredNorm();
        norm_c_ = std::sqrt(norm_c_);
    }

    SolveReport run();

private:
    void add_functional(const ConicProgram::Functional& f, double scale,
                        std::vector<Eigen::MatrixXd>& psd_out, Eigen::VectorXd& orth_out) const {
        for (const auto& e : f.psd) {
            psd_out[e.psd_block](e.i, e.j) += scale * e.c;
            if (e.i != e.j) psd_out[e.psd_block](e.j, e.i) += scale * e.c;
        }
        for (const auto& e : f.orth) orth_out[e.offset] += scale * e.c;
    }

    double eval_functional(const ConicProgram::Functional& f, const std::vector<Eigen::MatrixXd>& xp,
                           const Eigen::VectorXd& xo) const {
        double s = 0.0;
        for (const auto& e : f.psd)
            s += e.c * (e.i == e.j ? xp[e.psd_block](e.i, e.i) : 2.0 * xp[e.psd_block](e.i, e.j));
        for (const auto& e : f.orth) s += e.c * xo[e.offset];
        return s;
    }

    const ConicProgram& p_;
    SolverOptions opt_;
    std::vector<int> dims_;
    int nb_ = 0, mo_ = 0, m_ = 0;
    double sign_ = 1.0, nu_ = 0.0;
    Eigen::VectorXd b_, co_;
    std::vector<Eigen::MatrixXd> cp_;
    double norm_b_ = 0.0, norm_c_ = 0.0;
};

SolveReport SolverWorkspace::run() {
    SolveReport report;
    report.trace.reserve(opt_.collect_trace ? opt_.max_iter : 0);

    // Identity-like cold start, mildly scaled by the data.
    double bmax = 1.0, cmax = 1.0;
    if (m_ > 0) bmax = std::max(1.0, b_.cwiseAbs().maxCoeff());
    for (const auto& c : cp_)
        if (c.size() > 0) cmax = std::max(cmax, c.cwiseAbs().maxCoeff());
    if (mo_ > 0 && co_.size() > 0) cmax = std::max(cmax, co_.cwiseAbs().maxCoeff());

    std::vector<Eigen::MatrixXd> X(nb_), S(nb_);
    for (int bl = 0; bl < nb_; ++bl) {
        X[bl] = bmax * Eigen::MatrixXd::Identity(dims_[bl], dims_[bl]);
        S[bl] = cmax * Eigen::MatrixXd::Identity(dims_[bl], dims_[bl]);
    }
    Eigen::VectorXd xo = Eigen::VectorXd::Constant(mo_, bmax);
    Eigen::VectorXd so = Eigen::VectorXd::Constant(mo_, cmax);
    Eigen::VectorXd y = Eigen::VectorXd::Zero(m_);

    std::vector<Eigen::MatrixXd> Rd(nb_), dX(nb_), dS(nb_), T(nb_), U(nb_), adj(nb_);
    Eigen::VectorXd rd_o(mo_), dxo(mo_), dso(mo_), to(mo_), uo(mo_), adj_o(mo_);
    Eigen::VectorXd rp(m_);
    std::vector<NTScaling> nt(nb_);
    std::vector<Eigen::MatrixXd> fx(nb_), fxinv(nb_), fs(nb_), fsinv(nb_);
    int stall = 0;

    // Best iterate seen so far, by tolerance-scaled merit.  Ill-conditioning
    // near the optimum can make late iterates worse than earlier ones, so the
    // final answer is always drawn from this snapshot.
    struct Snapshot {
        std::vector<Eigen::MatrixXd> X, S;
        Eigen::VectorXd xo, so, y;
        double merit = std::numeric_limits<double>::infinity();
        bool set = false;
    } best;
    int no_progress = 0;

    auto apply_adjoint = [&](const Eigen::VectorXd& mult, std::vector<Eigen::MatrixXd>& out_p,
                             Eigen::VectorXd& out_o) {
        for (int bl = 0; bl < nb_; ++bl) out_p[bl].setZero(dims_[bl], dims_[bl]);
        out_o.setZero(mo_);
        for (int k = 0; k < m_; ++k)
            if (mult[k] != 0.0) add_functional(p_.constraints_[k], mult[k], out_p, out_o);
    };

    auto inner_blocks = [&](const std::vector<Eigen::MatrixXd>& a, const std::vector<Eigen::MatrixXd>& bm,
                            const Eigen::VectorXd& av, const Eigen::VectorXd& bv) {
        double s = av.dot(bv);
        for (int bl = 0; bl < nb_; ++bl) s += a[bl].cwiseProduct(bm[bl]).sum();
        return s;
    };

    try {
        for (int iter = 0; iter <= opt_.max_iter; ++iter) {
            // Residuals and objective values (internal minimization sense).
            for (int k = 0; k < m_; ++k) rp[k] = b_[k] - eval_functional(p_.constraints_[k], X, xo);
            apply_adjoint(y, adj, adj_o);
            double rd_sq = 0.0;
            for (int bl = 0; bl < nb_; ++bl) {
                Rd[bl] = cp_[bl] - adj[bl] - S[bl];
                rd_sq += Rd[bl].squaredNorm();
            }
            rd_o = co_ - adj_o - so;
            rd_sq += rd_o.squaredNorm();

            const double pobj = inner_blocks(cp_, X, co_, xo);
            const double dobj = b_.dot(y);
            const double xs = inner_blocks(X, S, xo, so);
            const double mu = nu_ > 0 ? xs / nu_ : 0.0;
            const double rp_norm = rp.norm();
            const double rd_norm = std::sqrt(rd_sq);
            const double rel_p = rp_norm / (1.0 + norm_b_);
            const double rel_d = rd_norm / (1.0 + norm_c_);
            const double rel_gap = std::abs(pobj - dobj) / (1.0 + std::max(std::abs(pobj), std::abs(dobj)));

            if (opt_.collect_trace) {
                double rd_x = xo.dot(rd_o);
                for (int bl = 0; bl < nb_; ++bl) rd_x += Rd[bl].cwiseProduct(X[bl]).sum();
                report.trace.push_back({mu, pobj, dobj, xs, rd_x, rp.dot(y), rp_norm, rd_norm});
            }
            report.iterations = iter;

            if (!std::isfinite(mu) || !std::isfinite(rp_norm) || !std::isfinite(rd_norm) ||
                (nu_ > 0 && xs <= 0.0)) {
                report.status = SolveStatus::NumericalFailure;
                break;
            }
            const double merit = std::max({rel_p / opt_.feas_tol, rel_d / opt_.feas_tol,
                                           rel_gap / opt_.gap_tol});
            if (merit < best.merit) {
                no_progress = merit < 0.9 * best.merit ? 0 : no_progress + 1;
                best.merit = merit;
                best.set = true;
                best.X = X;
                best.S = S;
                best.xo = xo;
                best.so = so;
                best.y = y;
            } else {
                ++no_progress;
            }
            if (merit <= 1.0) {
                report.status = SolveStatus::Optimal;
                break;
            }
            if (iter == opt_.max_iter || stall >= 5 || no_progress >= 12) {
                report.status = SolveStatus::IterationLimit;
                break;
            }

            // Nesterov-Todd scaling per PSD block, diagonal scaling on the orthant.
            for (int bl = 0; bl < nb_; ++bl) {
                factor_psd(X[bl], fx[bl], fxinv[bl]);
                factor_psd(S[bl], fs[bl], fsinv[bl]);
                const Eigen::MatrixXd g = fs[bl].transpose() * fx[bl];
                Eigen::JacobiSVD<Eigen::MatrixXd> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
                nt[bl].lambda = svd.singularValues();
                if (nt[bl].lambda.minCoeff() <= 0.0)
                    throw NumericalError("solver: scaling point collapsed");
                const Eigen::VectorXd isq = nt[bl].lambda.cwiseSqrt().cwiseInverse();
                nt[bl].r = fx[bl] * svd.matrixV() * isq.asDiagonal();
                nt[bl].rinv = isq.asDiagonal() * svd.matrixU().transpose() * fs[bl].transpose();
                nt[bl].w = nt[bl].r * nt[bl].r.transpose();
            }
            Eigen::VectorXd wo(mo_), lo(mo_);
            for (int i = 0; i < mo_; ++i) {
                wo[i] = std::sqrt(xo[i] / so[i]);
                lo[i] = std::sqrt(xo[i] * so[i]);
            }

            // Dense Schur complement M_kl = <A_k, W A_l W> + sum w_i^2 a_ki a_li.
            Eigen::MatrixXd schur = Eigen::MatrixXd::Zero(m_, m_);
            {
                Eigen::MatrixXd v;
                Eigen::VectorXd vo(mo_);
                for (int l = 0; l < m_; ++l) {
                    const auto& fl = p_.constraints_[l];
                    vo.setZero();
                    for (const auto& e : fl.orth) vo[e.offset] += wo[e.offset] * wo[e.offset] * e.c;
                    std::vector<Eigen::MatrixXd> vblocks(nb_);
                    for (const auto& e : fl.psd) {
                        if (vblocks[e.psd_block].size() == 0)
                            vblocks[e.psd_block] = Eigen::MatrixXd::Zero(dims_[e.psd_block], dims_[e.psd_block]);
                        const auto& w = nt[e.psd_block].w;
                        if (e.i == e.j) {
                            vblocks[e.psd_block].noalias() += e.c * w.col(e.i) * w.col(e.i).transpose();
                        } else {
                            vblocks[e.psd_block].noalias() += e.c * w.col(e.i) * w.col(e.j).transpose();
                            vblocks[e.psd_block].noalias() += e.c * w.col(e.j) * w.col(e.i).transpose();
                        }
                    }
                    for (int k = l; k < m_; ++k) {
                        const auto& fk = p_.constraints_[k];
                        double s = 0.0;
                        for (const auto& e : fk.psd) {
                            const auto& vb = vblocks[e.psd_block];
                            if (vb.size() == 0) continue;
                            s += e.c * (e.i == e.j ? vb(e.i, e.i) : 2.0 * vb(e.i, e.j));
                        }
                        for (const auto& e : fk.orth) s += e.c * vo[e.offset];
                        schur(k, l) = s;
                        schur(l, k) = s;
                    }
                }
            }

            Eigen::LLT<Eigen::MatrixXd> schur_llt;
            Eigen::LDLT<Eigen::MatrixXd> schur_ldlt;
            Eigen::MatrixXd schur_pristine;  // kept only when a ridge perturbs `schur`
            bool use_llt = false;
            if (m_ > 0) {
                schur_llt.compute(schur);
                use_llt = schur_llt.info() == Eigen::Success;
                if (!use_llt) {
                    schur_pristine = schur;
                    const double ridge = 1e-12 * std::max(1.0, schur.diagonal().cwiseAbs().maxCoeff());
                    schur.diagonal().array() += ridge;
                    schur_ldlt.compute(schur);
                    if (schur_ldlt.info() != Eigen::Success)
                        throw NumericalError("solver: Schur factorization failed");
                }
            }
            // Factor once, then polish with iterative refinement: near the
            // optimum the Schur system is ill-conditioned and a raw solve
            // loses enough accuracy to push the primal residual back up.
            auto schur_solve = [&](const Eigen::VectorXd& r) -> Eigen::VectorXd {
                if (m_ == 0) return Eigen::VectorXd();
                const Eigen::MatrixXd& a = use_llt ? schur : schur_pristine;
                Eigen::VectorXd dy = use_llt ? schur_llt.solve(r).eval() : schur_ldlt.solve(r).eval();
                for (int pass = 0; pass < 2; ++pass) {
                    Eigen::VectorXd res = r;
                    res.noalias() -= a * dy;
                    if (res.norm() <= 1e-15 * (1.0 + r.norm())) break;
                    dy += use_llt ? schur_llt.solve(res).eval() : schur_ldlt.solve(res).eval();
                }
                return dy;
            };

            // One Newton solve for a given complementarity target T.
            auto direction = [&](const std::vector<Eigen::MatrixXd>& tp, const Eigen::VectorXd& to_v) {
                Eigen::VectorXd rhs(m_);
                for (int bl = 0; bl < nb_; ++bl) {
                    const auto& w = nt[bl].w;
                    U[bl].noalias() = w * Rd[bl] * w;
                    U[bl] = tp[bl] - U[bl];
                }
                uo = to_v - (wo.array().square() * rd_o.array()).matrix();
                for (int k = 0; k < m_; ++k) rhs[k] = rp[k] - eval_functional(p_.constraints_[k], U, uo);
                const Eigen::VectorXd dy = schur_solve(rhs);
                apply_adjoint(dy, adj, adj_o);
                for (int bl = 0; bl < nb_; ++bl) {
                    dS[bl] = Rd[bl] - adj[bl];
                    dX[bl].noalias() = nt[bl].w * dS[bl] * nt[bl].w;
                    dX[bl] = tp[bl] - dX[bl];
                    dX[bl] = 0.5 * (dX[bl] + dX[bl].transpose()).eval();
                }
                dso = rd_o - adj_o;
                dxo = to_v - (wo.array().square() * dso.array()).matrix();
                return dy;
            };

            // Predictor (affine scaling direction).
            for (int bl = 0; bl < nb_; ++bl) T[bl] = -X[bl];
            to = -xo;
            Eigen::VectorXd dy = direction(T, to);

            double step_p = std::min(1.0, max_step_orth(xo, dxo));
            double step_d = std::min(1.0, max_step_orth(so, dso));
            for (int bl = 0; bl < nb_; ++bl) {
                step_p = std::min(step_p, max_step_psd(fxinv[bl], dX[bl]));
                step_d = std::min(step_d, max_step_psd(fsinv[bl], dS[bl]));
            }

            double xs_aff = (xo + step_p * dxo).dot(so + step_d * dso);
            for (int bl = 0; bl < nb_; ++bl)
                xs_aff += (X[bl] + step_p * dX[bl]).cwiseProduct(S[bl] + step_d * dS[bl]).sum();
            xs_aff = std::max(xs_aff, 0.0);
            const double sigma = std::min(1.0, std::max(1e-8, std::pow(xs_aff / xs, 3)));

            // Corrector: T solves lambda o G = -lambda^2 + sigma*mu*e - (dx^ o ds^).
            for (int bl = 0; bl < nb_; ++bl) {
                const auto& sc = nt[bl];
                const Eigen::MatrixXd dxh = sc.rinv * dX[bl] * sc.rinv.transpose();
                const Eigen::MatrixXd dsh = sc.r.transpose() * dS[bl] * sc.r;
                Eigen::MatrixXd d = -0.5 * (dxh * dsh + dsh * dxh);
                d.diagonal() -= sc.lambda.cwiseProduct(sc.lambda);
                d.diagonal().array() += sigma * mu;
                Eigen::MatrixXd g(dims_[bl], dims_[bl]);
                for (int i = 0; i < dims_[bl]; ++i)
                    for (int j = 0; j < dims_[bl]; ++j)
                        g(i, j) = 2.0 * d(i, j) / (sc.lambda[i] + sc.lambda[j]);
                T[bl].noalias() = sc.r * g * sc.r.transpose();
                T[bl] = 0.5 * (T[bl] + T[bl].transpose()).eval();
            }
            for (int i = 0; i < mo_; ++i) {
                const double corr = (dxo[i] / wo[i]) * (wo[i] * dso[i]);
                to[i] = wo[i] * ((-lo[i] * lo[i] + sigma * mu - corr) / lo[i]);
            }
            dy = direction(T, to);

            step_p = max_step_orth(xo, dxo);
            step_d = max_step_orth(so, dso);
            for (int bl = 0; bl < nb_; ++bl) {
                step_p = std::min(step_p, max_step_psd(fxinv[bl], dX[bl]));
                step_d = std::min(step_d, max_step_psd(fsinv[bl], dS[bl]));
            }
            const double frac = 0.9 + 0.09 * std::min(1.0, std::min(step_p, step_d));
            const double ap = std::min(1.0, frac * step_p);
            const double ad = std::min(1.0, frac * step_d);
            stall = std::min(ap, ad) < 1e-7 ? stall + 1 : 0;

            for (int bl = 0; bl < nb_; ++bl) {
                X[bl] += ap * dX[bl];
                X[bl] = 0.5 * (X[bl] + X[bl].transpose()).eval();
                S[bl] += ad * dS[bl];
                S[bl] = 0.5 * (S[bl] + S[bl].transpose()).eval();
            }
            xo += ap * dxo;
            so += ad * dso;
            y += ad * dy;
        }
    } catch (const NumericalError&) {
        report.status = SolveStatus::NumericalFailure;
    }

    if (best.set) {
        X = best.X;
        S = best.S;
        xo = best.xo;
        so = best.so;
        y = best.y;
    }

    // Package the final iterate in the program's own sense.
    const double pobj = inner_blocks(cp_, X, co_, xo);
    const double dobj = b_.dot(y);
    report.primal_value = sign_ * pobj;
    report.dual_value = sign_ * dobj;
    report.gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj));
    double rp_inf = 0.0;
    for (int k = 0; k < m_; ++k)
        rp_inf = std::max(rp_inf, std::abs(b_[k] - eval_functional(p_.constraints_[k], X, xo)));
    report.primal_residual = rp_inf;
    report.solution.psd.reserve(nb_);
    for (int bl = 0; bl < nb_; ++bl) report.solution.psd.emplace_back(Eigen::MatrixXd(X[bl]));
    report.solution.orthant = xo;
    report.solution.y = y;
    return report;
}

SolveReport solve(const ConicProgram& program, const SolverOptions& options) {
    return SolverWorkspace(program, options).run();
}

FeasibilityReport feasibility(const ConicProgram& program, const SolverOptions& options) {
    ConicProgram phase1 = program;
    phase1.sense_ = Sense::Minimize;
    phase1.objective_ = {};
    const int t_block = phase1.add_orthant_block(1);

    // Interior anchor X0: identity matrices, all-ones orthant (original part).
    std::vector<double> shift(program.constraint_count());
    for (int k = 0; k < program.constraint_count(); ++k) {
        double at_x0 = 0.0;
        for (const auto& e : program.constraints_[k].psd)
            if (e.i == e.j) at_x0 += e.c;
        for (const auto& e : program.constraints_[k].orth) at_x0 += e.c;
        shift[k] = program.rhs_[k] - at_x0;
        if (shift[k] != 0.0) phase1.constraint_orthant(k, t_block, 0, shift[k]);
    }
    phase1.objective_orthant(t_block, 0, 1.0);

    FeasibilityReport report;
    report.phase1 = solve(phase1, options);
    const int t_offset = phase1.orthant_len_ - 1;
    report.infeasibility = std::max(0.0, report.phase1.solution.orthant[t_offset]);

    const Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(program.rhs_.data(), program.constraint_count());
    const double bmax = b.size() > 0 ? std::max(1.0, b.cwiseAbs().maxCoeff()) : 1.0;

    // Residual of the original constraints (without the auxiliary column).
    double rp_orig = 0.0;
    for (int k = 0; k < program.constraint_count(); ++k) {
        double val = 0.0;
        for (const auto& e : program.constraints_[k].psd) {
            const auto& xb = report.phase1.solution.psd[e.psd_block];
            val += e.c * (e.i == e.j ? xb(e.i, e.i) : 2.0 * xb(e.i, e.j));
        }
        for (const auto& e : program.constraints_[k].orth)
            val += e.c * report.phase1.solution.orthant[e.offset];
        rp_orig = std::max(rp_orig, std::abs(program.rhs_[k] - val));
    }

    if (report.phase1.status != SolveStatus::NumericalFailure &&
        report.infeasibility <= options.feas_tol && rp_orig <= 10.0 * options.feas_tol * bmax) {
        report.status = FeasStatus::Feasible;
        report.solution.psd = report.phase1.solution.psd;
        report.solution.orthant = report.phase1.solution.orthant.head(program.orthant_len_);
        report.solution.y = report.phase1.solution.y;
        return report;
    }

    // Candidate separating certificate from the phase-1 dual: b'y > 0 with
    // -A*(y) in the dual cone.
    Eigen::VectorXd yc = report.phase1.solution.y;
    if (yc.size() == b.size() && yc.size() > 0) {
        yc /= std::max(1.0, yc.norm());
        std::vector<Eigen::MatrixXd> adj(program.psd_block_count());
        for (int bl = 0; bl < program.psd_block_count(); ++bl)
            adj[bl] = Eigen::MatrixXd::Zero(program.psd_dims_[bl], program.psd_dims_[bl]);
        Eigen::VectorXd adj_o = Eigen::VectorXd::Zero(program.orthant_len_);
        for (int k = 0; k < program.constraint_count(); ++k) {
            for (const auto& e : program.constraints_[k].psd) {
                adj[e.psd_block](e.i, e.j) += yc[k] * e.c;
                if (e.i != e.j) adj[e.psd_block](e.j, e.i) += yc[k] * e.c;
            }
            for (const auto& e : program.constraints_[k].orth) adj_o[e.offset] += yc[k] * e.c;
        }
        bool in_cone = program.orthant_len_ == 0 || (-adj_o).minCoeff() >= -options.feas_tol;
        try {
            for (int bl = 0; bl < program.psd_block_count() && in_cone; ++bl)
                in_cone = min_eig(-adj[bl]) >= -options.feas_tol;
        } catch (const NumericalError&) {
            in_cone = false;  // unverifiable certificate is no certificate
        }
        const double violation = b.dot(yc);
        if (in_cone && violation >= 10.0 * options.feas_tol) {
            report.status = FeasStatus::Infeasible;
            report.farkas_y = yc;
            report.certificate_violation = violation;
            return report;
        }
    }

    report.status = FeasStatus::Inconclusive;
    return report;
}

}  // namespace conichom
