#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "conichom/conic_program.hpp"
#include "conichom/errors.hpp"
#include "conichom/graph.hpp"

using namespace conichom;

namespace {

// Independent oracle for the orthogonality-constrained trace-normalized
// program on a graph: its optimum on C5 is sqrt(5), on K_n it is 1, on the
// empty graph it is n (spectral bound -n*lmin/(lmax-lmin) for circulants).
ConicProgram max_sum_program(const Graph& g, bool entrywise_nonneg) {
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
                        p.constraint_orthant(c, slack, k, -1.0);
                        ++k;
                    }
        }
    }
    return p;
}

}  // namespace

TEST_CASE("linear programs on the orthant") {
    ConicProgram p;
    const int x = p.add_orthant_block(2);
    p.objective_orthant(x, 0, 1.0);
    p.objective_orthant(x, 1, 2.0);
    const int c = p.add_constraint(1.0);
    p.constraint_orthant(c, x, 0, 1.0);
    p.constraint_orthant(c, x, 1, 1.0);

    SUBCASE("minimize") {
        const SolveReport r = solve(p);
        REQUIRE(r.status == SolveStatus::Optimal);
        CHECK(r.primal_value == doctest::Approx(1.0).epsilon(1e-7));
        CHECK(r.solution.orthant[0] == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(r.solution.orthant[1] == doctest::Approx(0.0).scale(1).epsilon(1e-6));
    }
    SUBCASE("maximize") {
        p.set_sense(Sense::Maximize);
        const SolveReport r = solve(p);
        REQUIRE(r.status == SolveStatus::Optimal);
        CHECK(r.primal_value == doctest::Approx(2.0).epsilon(1e-7));
        CHECK(r.dual_value == doctest::Approx(2.0).epsilon(1e-7));
    }
}

TEST_CASE("minimal trace with a pinned corner") {
    ConicProgram p;
    const int z = p.add_psd_block(3);
    for (int i = 0; i < 3; ++i) p.objective_psd(z, i, i, 1.0);
    const int c = p.add_constraint(1.0);
    p.constraint_psd(c, z, 0, 0, 1.0);
    const SolveReport r = solve(p);
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(r.primal_value == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(r.solution.psd[0](0, 0) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.solution.psd[0](1, 1) < 1e-6);
}

TEST_CASE("graph programs hit their spectral values") {
    SUBCASE("empty graph") {
        const SolveReport r = solve(max_sum_program(empty_graph(5), false));
        REQUIRE(r.status == SolveStatus::Optimal);
        CHECK(r.primal_value == doctest::Approx(5.0).epsilon(1e-7));
    }
    SUBCASE("complete graph") {
        const SolveReport r = solve(max_sum_program(complete_graph(6), false));
        REQUIRE(r.status == SolveStatus::Optimal);
        CHECK(r.primal_value == doctest::Approx(1.0).epsilon(1e-7));
    }
    SUBCASE("five cycle") {
        const SolveReport r = solve(max_sum_program(cycle_graph(5), false));
        REQUIRE(r.status == SolveStatus::Optimal);
        CHECK(r.primal_value == doctest::Approx(std::sqrt(5.0)).epsilon(1e-7));
    }
    SUBCASE("five cycle with entrywise nonnegativity") {
        const SolveReport r = solve(max_sum_program(cycle_graph(5), true));
        REQUIRE(r.status == SolveStatus::Optimal);
        CHECK(r.primal_value == doctest::Approx(std::sqrt(5.0)).epsilon(1e-7));
        CHECK(r.solution.psd[0].min_entry() > -1e-8);
    }
    SUBCASE("petersen") {
        const SolveReport r = solve(max_sum_program(petersen_graph(), false));
        REQUIRE(r.status == SolveStatus::Optimal);
        CHECK(r.primal_value == doctest::Approx(4.0).epsilon(1e-7));
    }
}

TEST_CASE("weak duality identity holds along the trace") {
    SolverOptions opt;
    opt.collect_trace = true;
    const SolveReport r = solve(max_sum_program(cycle_graph(5), false), opt);
    REQUIRE(r.status == SolveStatus::Optimal);
    REQUIRE(r.trace.size() > 3);
    for (const auto& t : r.trace) {
        CHECK(t.xs > 0.0);
        // primal - dual = <X,S> + <Rd,X> - <rp,y> exactly, so the surplus
        // over the residual terms is the positive complementarity gap.
        const double lhs = t.primal_obj - t.dual_obj - t.rd_x + t.rp_y;
        CHECK(lhs == doctest::Approx(t.xs).epsilon(1e-9).scale(1.0 + t.xs));
    }
    // Final iterate: residuals are tiny, plain weak duality applies.
    const auto& last = r.trace.back();
    CHECK(last.dual_obj <= last.primal_obj + 1e-6 * (1.0 + std::abs(last.primal_obj)));
}

TEST_CASE("deterministic resolves") {
    const SolveReport a = solve(max_sum_program(cycle_graph(5), true));
    const SolveReport b = solve(max_sum_program(cycle_graph(5), true));
    CHECK(a.primal_value == b.primal_value);
    CHECK(a.iterations == b.iterations);
    CHECK(a.solution.psd[0].mat() == b.solution.psd[0].mat());
}

TEST_CASE("iteration limit reported") {
    SolverOptions opt;
    opt.max_iter = 2;
    const SolveReport r = solve(max_sum_program(cycle_graph(5), false), opt);
    CHECK(r.status == SolveStatus::IterationLimit);
    CHECK(r.iterations == 2);
}

TEST_CASE("psd dimension cap") {
    ConicProgram p;
    p.add_psd_block(10);
    const int c = p.add_constraint(1.0);
    p.constraint_psd(c, 0, 0, 0, 1.0);
    SolverOptions opt;
    opt.max_total_psd_dim = 9;
    CHECK_THROWS_AS(solve(p, opt), CapabilityError);

    setenv("CONICHOM_MAX_PSD_DIM", "7", 1);
    CHECK(default_solver_options().max_total_psd_dim == 7);
    unsetenv("CONICHOM_MAX_PSD_DIM");
    CHECK(default_solver_options().max_total_psd_dim == 400);
}

TEST_CASE("program validation") {
    ConicProgram p;
    CHECK_THROWS_AS(p.add_psd_block(0), std::invalid_argument);
    const int z = p.add_psd_block(2);
    const int u = p.add_orthant_block(1);
    CHECK_THROWS_AS(p.objective_psd(u, 0, 0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(p.objective_orthant(z, 0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(p.objective_psd(z, 0, 2, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(p.constraint_psd(0, z, 0, 0, 1.0), std::invalid_argument);
}

TEST_CASE("feasibility: bounded trace slice") {
    ConicProgram p;
    const int z = p.add_psd_block(4);
    const int c = p.add_constraint(1.0);
    for (int i = 0; i < 4; ++i) p.constraint_psd(c, z, i, i, 1.0);
    const FeasibilityReport r = feasibility(p);
    REQUIRE(r.status == FeasStatus::Feasible);
    CHECK(r.infeasibility <= 1e-8);
    CHECK(r.solution.psd[0].trace() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(is_psd(r.solution.psd[0], 1e-9));
}

TEST_CASE("feasibility: negative trace is certified infeasible") {
    ConicProgram p;
    const int z = p.add_psd_block(3);
    const int c = p.add_constraint(-1.0);
    for (int i = 0; i < 3; ++i) p.constraint_psd(c, z, i, i, 1.0);
    const FeasibilityReport r = feasibility(p);
    REQUIRE(r.status == FeasStatus::Infeasible);
    CHECK(r.certificate_violation >= 1e-7);
    CHECK(r.farkas_y[0] < 0.0);
}

TEST_CASE("feasibility: empty orthant sum is certified infeasible") {
    ConicProgram p;
    const int x = p.add_orthant_block(2);
    const int c = p.add_constraint(-1.0);
    p.constraint_orthant(c, x, 0, 1.0);
    p.constraint_orthant(c, x, 1, 1.0);
    const FeasibilityReport r = feasibility(p);
    REQUIRE(r.status == FeasStatus::Infeasible);
    CHECK(r.certificate_violation >= 1e-7);
}

TEST_CASE("feasibility: inconsistent equalities over the psd cone") {
    // Z00 = 1 and Z00 = 2 cannot both hold.
    ConicProgram p;
    const int z = p.add_psd_block(2);
    const int c1 = p.add_constraint(1.0);
    p.constraint_psd(c1, z, 0, 0, 1.0);
    const int c2 = p.add_constraint(2.0);
    p.constraint_psd(c2, z, 0, 0, 1.0);
    const FeasibilityReport r = feasibility(p);
    CHECK(r.status == FeasStatus::Infeasible);
}
