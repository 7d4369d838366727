// Acceptance gate: one pass/fail line per numbered criterion, nonzero exit on
// any failure.  Golden values are checked directly; the property criteria run
// the corresponding verification suites on the full default corpus.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "conichom/graph.hpp"
#include "conichom/theta.hpp"
#include "conichom/verify.hpp"

using namespace conichom;

namespace {

struct Criterion {
    int id = 0;
    bool pass = false;
    std::string text;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

Criterion golden_values() {
    const auto t0 = std::chrono::steady_clock::now();
    Criterion c{1, true, ""};

    const ThetaResult c5 = theta(cycle_graph(5), ConeTag::SPLUS);
    const double d5 = std::abs(c5.value - 2.2360680);
    c.pass = c.pass && d5 <= 1e-6;

    const ThetaResult pet = theta(petersen_graph(), ConeTag::SPLUS);
    const double dp = std::abs(pet.value - 4.0);
    c.pass = c.pass && dp <= 1e-5;

    const ThetaResult a5 = theta(cycle_graph(5), ConeTag::CP);
    c.pass = c.pass && a5.exact && a5.value == 2.0;

    // The fractional-cover route reports a float at LP tolerance; the target
    // value 5/2 itself comes from an exact enumeration oracle.
    const ThetaResult f5 = big_theta(cycle_graph(5), ConeTag::CP);
    const double df = std::abs(f5.value - 2.5);
    c.pass = c.pass && f5.exact && df <= 1e-9;

    const double wall = seconds_since(t0);
    c.pass = c.pass && wall < 10.0;
    c.text = "golden values: theta_splus(cycle:5)=" + num(c5.value) + " (dev " + num(d5) +
             " <= 1e-6), theta_splus(petersen)=" + num(pet.value) + " (dev " + num(dp) +
             " <= 1e-5), theta_cp(cycle:5)=" + num(a5.value) +
             " (exact 2), bigtheta_cp(cycle:5)=" + num(f5.value) + " (dev " + num(df) +
             " <= 1e-9) [" + num(wall) + "s < 10s]";
    return c;
}

std::string suite_summary(const SuiteResult& s) {
    std::string t = s.id + ": " + std::to_string(s.passed) + "/" +
                    std::to_string(s.instances) + " pass, worst residual " +
                    num(s.worst_residual) + ", " + num(s.wall_seconds) + "s";
    if (!s.failures.empty()) t += "; first failure: " + s.failures.front();
    if (s.inconclusive > 0) t += "; " + std::to_string(s.inconclusive) + " inconclusive";
    return t;
}

}  // namespace

int main() {
    std::vector<Criterion> report;
    report.push_back(golden_values());

    // The property criteria below each map onto a verification suite run on
    // the full default corpus.  One shared run keeps the theta and decision
    // caches warm, exactly as "verify all" does; suites execute in registry
    // order, so the duality timing below is measured from a cold cache.
    const std::vector<std::string> needed = {
        "theta-duality",  "cp-equivalence", "dnn-repair",
        "hom-theta",      "monotonicity",   "multiplicativity",
        "lattice",        "alpha-consistency", "weak-splus-degenerate",
        "cone-closure"};
    std::map<std::string, SuiteResult> by_id;
    std::string run_error;
    try {
        for (SuiteResult& s : run_suites(needed)) by_id[s.id] = std::move(s);
    } catch (const std::exception& e) {
        run_error = e.what();
    }

    auto suite_criterion = [&](int id, const std::string& suite, const std::string& what,
                               bool extra_ok = true, const std::string& extra = "") {
        Criterion c{id, false, ""};
        auto it = by_id.find(suite);
        if (it == by_id.end()) {
            c.text = what + ": suite did not run (" + run_error + ")";
        } else {
            c.pass = it->second.ok() && extra_ok;
            c.text = what + ": " + suite_summary(it->second);
            if (!extra.empty()) c.text += " [" + extra + "]";
        }
        report.push_back(c);
    };

    {
        auto it = by_id.find("theta-duality");
        const bool timed = it != by_id.end() && it->second.wall_seconds < 120.0;
        suite_criterion(2, "theta-duality",
                        "theta*bigtheta >= n with vertex-transitive equality", timed,
                        it != by_id.end() ? num(it->second.wall_seconds) + "s < 120s" : "");
    }
    suite_criterion(3, "hom-theta",
                    "decision routes agree: direct feasibility vs product-theta");
    {
        auto it = by_id.find("cp-equivalence");
        Criterion& c3 = report.back();
        if (it == by_id.end()) {
            c3.pass = false;
            c3.text += "; cp cross-check missing (" + run_error + ")";
        } else {
            c3.pass = c3.pass && it->second.ok();
            c3.text += "; exhaustive-search cross-check " + suite_summary(it->second);
        }
    }
    {
        auto it = by_id.find("dnn-repair");
        const bool tight = it != by_id.end() && it->second.worst_residual <= 1e-7;
        suite_criterion(4, "dnn-repair", "weak-to-strong repair residuals <= 1e-7", tight);
    }
    suite_criterion(5, "monotonicity",
                    "witness transforms stay feasible and certify both theta orderings");
    suite_criterion(6, "multiplicativity",
                    "disjunctive and lexicographic products multiply theta");
    suite_criterion(7, "lattice", "meet and disjoint-union witness constructions validate");
    suite_criterion(8, "alpha-consistency",
                    "independence-number routes agree across all three cones");
    suite_criterion(9, "weak-splus-degenerate",
                    "universal weak psd witness confirms the excluded mode");
    {
        auto it = by_id.find("cone-closure");
        const bool count_ok = it != by_id.end() && it->second.instances == 800;
        suite_criterion(10, "cone-closure",
                        "contraction/kronecker/submatrix/permutation closure, 200 seeds each",
                        count_ok);
    }

    int failures = 0;
    for (const Criterion& c : report) {
        if (!c.pass) ++failures;
        std::printf("criterion %2d: %s  %s\n", c.id, c.pass ? "PASS" : "FAIL", c.text.c_str());
    }
    std::printf("acceptance: %d/%d criteria passed\n", int(report.size()) - failures,
                int(report.size()));
    return failures == 0 ? 0 : 1;
}
