#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conichom/conic_program.hpp"
#include "conichom/graph.hpp"
#include "conichom/symmetric_matrix.hpp"
#include "conichom/theta.hpp"

namespace conichom {

// A conic homomorphism X -> Y is witnessed by a matrix H in the cone,
// indexed by ordered vertex pairs (x,y) with flat index x*|V(Y)|+y, with
//   (1) every block sum  sum_{y,y'} H[(x,y)][(x',y')] = 1,
//   (2) H[(x,y)][(x',y')] = 0 whenever x ~ x' and y,y' are neither equal
//       nor adjacent,
//   (3) strong mode only: H[(x,y)][(x,y')] = 0 for y != y'.
enum class HomMode { Strong, Weak };

std::string mode_name(HomMode mode);

struct WitnessResiduals {
    double block_sum_dev = 0.0;  // max |block sum - 1|
    double ortho_dev = 0.0;      // max |H| over the condition-(2) pattern
    double mortho_dev = 0.0;     // max |H| over the condition-(3) pattern
    double cone_dev = 0.0;       // cone membership violation (see below)

    double worst(HomMode mode) const;
};

// H carries pair labels (|V(x)|, |V(y)|).  For SPLUS, cone_dev is the
// negative part of the least eigenvalue; for DNN additionally the most
// negative entry.  CP membership is certified by construction (explicit
// nonnegative Gram factors) and checked here through its DNN relaxation.
struct HomWitness {
    Graph x;
    Graph y;
    SymMatrix H;
    ConeTag cone = ConeTag::SPLUS;
    HomMode mode = HomMode::Strong;
    WitnessResiduals residuals;
};

WitnessResiduals witness_residuals(const SymMatrix& h, const Graph& x, const Graph& y,
                                   ConeTag cone, HomMode mode);

// Bundle a candidate matrix with its graphs and freshly computed residuals.
HomWitness make_witness(SymMatrix h, Graph x, Graph y, ConeTag cone, HomMode mode);

bool witness_passes(const HomWitness& w, double tol);

enum class HomVerdict { Yes, No, Inconclusive };
enum class HomMethod { DirectFeasibility, ThetaReduction, Combinatorial };

struct HomDecision {
    HomVerdict verdict = HomVerdict::Inconclusive;
    HomMethod method = HomMethod::DirectFeasibility;
    std::optional<HomWitness> witness;           // present on yes
    std::optional<Eigen::VectorXd> certificate;  // dual ray on conic no
    double theta_product = 0.0;                  // theta(hom. product) when computed
    std::string detail;
};

// Decide whether X admits a (strong|weak) homomorphism to Y over the cone.
// CP runs an exhaustive classical search (both modes coincide).  DNN/SPLUS
// run direct conic feasibility cross-checked against the theta criterion
// "theta(X homomorphic-product Y) = |V(X)|"; disagreement or an answer in
// the tolerance gap yields Inconclusive.  Weak SPLUS is rejected: every
// graph pair would be related (see degenerate_weak_splus_witness).
HomDecision decide_hom(const Graph& x, const Graph& y, ConeTag cone, HomMode mode,
                       const SolverOptions& options = default_solver_options());

// Rank-one 0/1 lift of a classical homomorphism map: H = v v^T with
// v[(x,y)] = 1 iff y = map[x].  A strong witness over every cone.
HomWitness lift_classical(const std::vector<int>& map, const Graph& x, const Graph& y);

// H = Phi Phi^T for Phi = sum_x e_x (x) e_x: the strong witness X -> X.
HomWitness identity_witness(const Graph& x, ConeTag cone = ConeTag::CP);

// Witness for X -> Z from witnesses X -> Y and Y -> Z:
// H[(x,z)][(x',z')] = sum_{y,y'} H1[(x,y)][(x',y')] H2[(y,z)][(y',z')],
// realized as a contraction of a principal submatrix of kron(H1, H2).
HomWitness compose_witnesses(const HomWitness& h1, const HomWitness& h2);

// Zero the in-block off-diagonal entries of a weak DNN witness by adding,
// for each violating entry c at (xy, xy'), the PSD matrix c*B where B has
// +1 at both diagonals and -1 at the offending pair.  Block sums are
// unchanged and the result is a strong DNN witness.
HomWitness repair_weak_to_strong_dnn(const HomWitness& h, double tol = 1e-6);

// Witness Z -> (X categorical-product Y) from witnesses Z -> X and Z -> Y:
// H[(z,(x,y))][(z',(x',y'))] = H1[(z,x)][(z',x')] H2[(z,y)][(z',y')].
HomWitness categorical_meet_witness(const HomWitness& h1, const HomWitness& h2);

// Witness X+Y -> Z from witnesses X -> Z and Y -> Z: the block matrix
// [[H1, K], [K^T, H2]] with K = H1 J H2 / (|V(X)||V(Y)|).  Cone membership
// of the assembled matrix is re-verified numerically.
HomWitness disjoint_union_witness(const HomWitness& h1, const HomWitness& h2);

// A strong witness X -> Y scaled by 1/|V(X)| is Theta-feasible for the
// homomorphic product with objective value |V(X)|.
SymMatrix hom_to_theta_witness(const HomWitness& h);

// Conversely, a Theta solution for the homomorphic product whose value
// reaches |V(X)| within tol scales by |V(X)| into a strong witness.
HomWitness theta_to_hom_witness(const SymMatrix& m, const Graph& x, const Graph& y,
                                ConeTag cone, double tol = 1e-4);

// From a Theta solution M for the complement of X and a strong witness
// X -> Y, build a Theta solution for the complement of Y with the same
// objective value: N[y][y'] = sum_{x,x'} M[x][x'] H[(x,y)][(x',y')].
SymMatrix monotone_transform_theta(const SymMatrix& m, const HomWitness& h);

// From a BigTheta solution N for Y and a witness X -> Y (weak mode only
// over nonnegative cones), build a BigTheta solution for X of the same
// value: M[x][x'] = sum_{y,y'} H[(x,y)][(x',y')] N[y][y'], with the
// diagonal topped up to the constant value of N's diagonal.
SymMatrix monotone_transform_big_theta(const SymMatrix& n, const HomWitness& h);

inline constexpr int kDefaultExactAlphaVertexLimit = 48;
inline constexpr int kDefaultExactChiVertexLimit = 20;

// Lexicographically smallest maximum independent set, by branch-and-bound
// with a greedy colouring bound.
std::vector<int> max_independent_set(const Graph& g,
                                     int vertex_limit = kDefaultExactAlphaVertexLimit);

int alpha_exact(const Graph& g, int vertex_limit = kDefaultExactAlphaVertexLimit);
int omega_exact(const Graph& g, int vertex_limit = kDefaultExactAlphaVertexLimit);
int chi_exact(const Graph& g, int vertex_limit = kDefaultExactChiVertexLimit);

// Largest n such that the complete graph K_n maps to the complement of g
// over the cone.  Computed as floor(theta) with a guard band around
// integers, escalating to an incremental homomorphism search whenever the
// band is hit; the two routes must agree.
int conic_alpha(const Graph& g, ConeTag cone, HomMode mode,
                const SolverOptions& options = default_solver_options());

// True iff h is PSD within tol and every pair block sums to 1 within tol
// (checked through the contraction over pair blocks being all-ones).
bool lemma_gram_check(const SymMatrix& h, double tol = 1e-6);

// The matrix (1/2) J_n (x) N + gamma I_n (x) M over pair labels (n, 2),
// N = [[0,1],[1,0]], M = [[1,-1],[-1,1]].  For gamma >= max(1, n/4) it is
// PSD, satisfies the weak conditions (1) and (2) against EVERY graph on n
// vertices with Y = K2 - which is why weak mode over SPLUS is rejected.
// gamma < 0 selects max(1, n/4) automatically.
SymMatrix degenerate_weak_splus_witness(int n, double gamma = -1.0);

// From a weak witness X -> Y, embed H block-diagonally into a weak witness
// K_n -> complement(X homomorphic-product Y), n = |V(X)|.
HomWitness weak_alpha_embedding_witness(const HomWitness& h);

// True iff every one-party marginal sum_{y'} H[(x,y)][(x',y')] is constant
// over the other party's input x' (and symmetrically), within tol.
bool nonsignalling_check(const HomWitness& h, double tol = 1e-6);

}  // namespace conichom
