#pragma once

#include <Eigen/Dense>
#include <vector>

#include "conichom/symmetric_matrix.hpp"

namespace conichom {

enum class Sense { Minimize, Maximize };

class ConicProgram;
struct SolverOptions;
struct FeasibilityReport;
FeasibilityReport feasibility(const ConicProgram& program, const SolverOptions& options);

// Linear conic program over a product of PSD blocks and nonnegative-orthant
// segments:
//
//   optimize  <C, X>   subject to   <A_k, X> = b_k,   X in K.
//
// Coefficients address one symmetric-matrix entry (i <= j, the coefficient
// applies to the symmetric pair, so an off-diagonal coefficient c contributes
// 2 c X_ij) or one orthant coordinate.
class ConicProgram {
public:
    int add_psd_block(int dim);
    int add_orthant_block(int len);

    void set_sense(Sense sense) { sense_ = sense; }
    Sense sense() const { return sense_; }

    void objective_psd(int block, int i, int j, double c);
    void objective_orthant(int block, int k, double c);

    int add_constraint(double rhs);
    void constraint_psd(int con, int block, int i, int j, double c);
    void constraint_orthant(int con, int block, int k, double c);

    int constraint_count() const { return static_cast<int>(rhs_.size()); }
    int block_count() const { return static_cast<int>(blocks_.size()); }
    int psd_block_count() const { return static_cast<int>(psd_dims_.size()); }
    int total_psd_dim() const;
    int orthant_length() const { return orthant_len_; }

private:
    friend class SolverWorkspace;
    friend FeasibilityReport feasibility(const ConicProgram& program, const SolverOptions& options);

    struct Block {
        bool psd;
        int index;  // into psd_dims_ or offset into the orthant vector
        int size;
    };
    struct PsdEntry {
        int psd_block;
        int i, j;  // i <= j
        double c;
    };
    struct OrthEntry {
        int offset;
        double c;
    };
    struct Functional {
        std::vector<PsdEntry> psd;
        std::vector<OrthEntry> orth;
    };

    void check_psd_entry(int block, int i, int j) const;
    void check_orth_entry(int block, int k) const;

    Sense sense_ = Sense::Minimize;
    std::vector<Block> blocks_;
    std::vector<int> psd_dims_;
    int orthant_len_ = 0;
    Functional objective_;
    std::vector<Functional> constraints_;
    std::vector<double> rhs_;
};

enum class SolveStatus { Optimal, IterationLimit, NumericalFailure };

// Values of one primal-dual iterate, for invariant checks and debugging.
struct IterateTrace {
    double mu;
    double primal_obj, dual_obj;  // internal minimization sense
    double xs;                    // <X, S>
    double rd_x, rp_y;            // <Rd, X> and <rp, y>
    double rp_norm, rd_norm;
};

struct Solution {
    std::vector<SymMatrix> psd;  // one per PSD block, in declaration order
    Eigen::VectorXd orthant;     // concatenated orthant segments
    Eigen::VectorXd y;           // equality multipliers
};

struct SolveReport {
    SolveStatus status = SolveStatus::NumericalFailure;
    double primal_value = 0.0;  // in the program's own sense
    double dual_value = 0.0;
    double gap = 0.0;  // |primal - dual| / (1 + |primal|)
    double primal_residual = 0.0;
    int iterations = 0;
    Solution solution;
    std::vector<IterateTrace> trace;
};

struct SolverOptions {
    double feas_tol = 1e-8;
    double gap_tol = 1e-8;
    int max_iter = 200;
    int max_total_psd_dim = 400;
    bool collect_trace = false;
};

// Default options with the PSD dimension ceiling taken from
// CONICHOM_MAX_PSD_DIM when that variable is set.
SolverOptions default_solver_options();

SolveReport solve(const ConicProgram& program, const SolverOptions& options = {});

enum class FeasStatus { Feasible, Infeasible, Inconclusive };

struct FeasibilityReport {
    FeasStatus status = FeasStatus::Inconclusive;
    double infeasibility = 0.0;  // optimum of the auxiliary scalar
    Solution solution;           // populated when feasible
    Eigen::VectorXd farkas_y;    // populated when infeasible: b'y > 0, -A*(y) in K
    double certificate_violation = 0.0;  // b'y of the normalized certificate
    SolveReport phase1;
};

// Decides feasibility of the constraint system (the objective is ignored) by
// minimizing an auxiliary infeasibility scalar t >= 0 over
// <A_k, X> + t (b_k - <A_k, X0>) = b_k with X0 the identity-like interior
// point. Feasible iff the optimum is <= feas_tol; an infeasible verdict is
// only issued together with a validated separating dual certificate.
FeasibilityReport feasibility(const ConicProgram& program, const SolverOptions& options = {});

}  // namespace conichom
