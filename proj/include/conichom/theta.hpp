#pragma once

#include <string>
#include <vector>

#include "conichom/conic_program.hpp"
#include "conichom/graph.hpp"
#include "conichom/symmetric_matrix.hpp"

namespace conichom {

// Matrix cones the library optimizes over, nested CP < DNN < SPLUS.
enum class ConeTag { CP, DNN, SPLUS };

std::string cone_name(ConeTag cone);

enum class ThetaKind { Theta, BigTheta };

// Result of evaluating one of the two graph parameters over a cone.
//   Theta:    sup <M,J>  s.t. M in cone, tr M = 1, M[x][x'] = 0 on edges.
//   BigTheta: inf t      s.t. N in cone, N[x][x] = t, N[x][x'] = 0 on edges,
//                             N - J PSD.
// `solution` is M resp. N.  `exact` marks the combinatorial CP routes
// (independence number resp. fractional chromatic number); conic routes fill
// `report` with the solver outcome instead.
struct ThetaResult {
    double value = 0.0;
    SymMatrix solution;
    ConeTag cone = ConeTag::SPLUS;
    ThetaKind kind = ThetaKind::Theta;
    bool exact = false;
    SolveReport report;
};

ThetaResult theta(const Graph& g, ConeTag cone,
                  const SolverOptions& options = default_solver_options());

ThetaResult big_theta(const Graph& g, ConeTag cone,
                      const SolverOptions& options = default_solver_options());

// Average of M over the automorphism group of g.  Preserves feasibility for
// either program and the objective value; for vertex-transitive g the result
// has constant diagonal (and constant row sums at the optimum).
SymMatrix symmetrize(const SymMatrix& m, const Graph& g);

// Scale a group-averaged Theta solution with constant diagonal and constant
// row sums into a BigTheta solution: N = (n^2/t) M with t = <M,J>.  The
// output value (its diagonal) is n/t.
SymMatrix theta_to_big_theta_scaling(const SymMatrix& m_bar, const Graph& g);

// Scale a BigTheta solution with constant diagonal t into a Theta-feasible
// matrix M = N/(t n); its objective <M,J> is at least n/t.
SymMatrix big_theta_to_theta_scaling(const SymMatrix& n, const Graph& g);

inline constexpr std::size_t kDefaultMaximalSetCap = 100000;

// All maximal independent sets of g (each sorted ascending), enumerated by
// branch-and-bound with pivoting.  Throws CapabilityError past the cap.
std::vector<std::vector<int>> maximal_independent_sets(
    const Graph& g, std::size_t cap = kDefaultMaximalSetCap);

}  // namespace conichom
