#include "verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "cycles.hpp"
#include "dmdp_analysis.hpp"
#include "extremal.hpp"
#include "mdp.hpp"
#include "pi.hpp"
#include "twostate.hpp"

namespace pibound {

namespace {

struct Outcome {
    bool pass = true;
    std::string observed;
    std::string bound;

    void fail(const std::string& why) {
        pass = false;
        if (!observed.empty()) observed += "; ";
        observed += why;
    }
    void require(bool cond, const std::string& why) {
        if (!cond) fail(why);
    }
};

// figure reference decimals, parsed as exact rationals
Rat dec(const std::string& s) {
    std::string digits;
    int scale = 0;
    bool frac = false;
    for (char c : s) {
        if (c == '.') {
            frac = true;
            continue;
        }
        digits += c;
        if (frac) ++scale;
    }
    Rat r(Int(digits, 10), int_pow(10, static_cast<unsigned long>(scale)));
    r.canonicalize();
    return r;
}

Outcome check_fig_arbitrary() {
    Outcome o;
    TwoStateParams p = gen_arbitrary(5);
    o.require(p.gamma == Rat(9, 10), "gamma != 9/10");
    for (int a = 1; a <= 5; ++a) {
        Rat want(a, 6);
        want.canonicalize();
        o.require(p.lam1[static_cast<size_t>(a - 1)] == want &&
                      p.lam2[static_cast<size_t>(a - 1)] == want,
                  "lambda_" + std::to_string(a) + " != a/6");
    }
    o.require(p.mu1[1] == Rat(-32, 3), "mu1_2 != -32/3");

    const Rat tol(1, 1000);
    const std::string mu1_ref[] = {"0", "-10.6667", "-710.741", "-26078.3", "-424201"};
    const std::string mu2_ref[] = {"0", "-1", "-93.4444", "-4678.83", "-119094"};
    for (int a = 0; a < 5; ++a) {
        o.require(rel_close(p.mu1[static_cast<size_t>(a)], dec(mu1_ref[a]), tol),
                  "mu1 table mismatch at action " + std::to_string(a + 1));
        o.require(rel_close(p.mu2[static_cast<size_t>(a)], dec(mu2_ref[a]), tol),
                  "mu2 table mismatch at action " + std::to_string(a + 1));
    }

    // scripted Hamiltonian walk in the published matrix order
    auto seq = arbitrary_sequence(5);
    const int matrix[5][5] = {{24, 23, 19, 13, 5},
                              {21, 22, 20, 14, 6},
                              {16, 17, 18, 15, 7},
                              {9, 10, 11, 12, 8},
                              {0, 1, 2, 3, 4}};
    o.require(seq.size() == 25, "sequence is not 25 policies");
    for (size_t t = 0; t < seq.size(); ++t) {
        auto [i, j] = seq[t];
        o.require(matrix[i - 1][j - 1] == static_cast<int>(t), "visitation order deviates");
    }
    auto traj = run_pi(p.to_mdp(), {4, 0}, SwitchingRule::scripted(to_policies(seq)));
    o.require(traj.length() == 25, "run did not visit 25 policies");
    o.observed = "25 policies, tables within 1e-3";
    o.bound = "figure values";
    return o;
}

Outcome check_fig_maxgain() {
    Outcome o;
    TwoStateParams p = gen_maxgain(5, Rat(1, 10));
    Mdp m = p.to_mdp();
    const Rat tol(1, 100000);
    o.require(rel_close(p.gamma, dec("0.989716"), tol), "gamma mismatch");
    const std::string lam_ref[] = {"1", "0.62548", "0.872923", "0.96675", "1"};
    const std::string mu_ref[] = {"0", "0.761905", "0.408163", "0.172768", "0.0514189"};
    for (int a = 0; a < 5; ++a) {
        o.require(rel_close(p.lam1[static_cast<size_t>(a)], dec(lam_ref[a]), tol),
                  "lambda table mismatch at action " + std::to_string(a + 1));
        o.require(rel_close(p.mu1[static_cast<size_t>(a)], dec(mu_ref[a]), tol),
                  "mu1 table mismatch at action " + std::to_string(a + 1));
        o.require(p.mu2[static_cast<size_t>(a)] == Rat(5) * p.mu1[static_cast<size_t>(a)],
                  "mu2 != 5 mu1");
    }
    o.require(p.lam1[0] == 1 && p.mu1[0] == 0, "action 1 is not the unit self-loop");

    // the published 9-policy walk, every switch checked as the exact
    // argmax of the gain, continued to optimality after the script
    auto seq = to_policies(maxgain_sequence(5));
    auto traj = run_pi(m, {0, 0}, SwitchingRule::scripted(seq, true, true));
    bool prefix_ok = traj.length() >= 9;
    for (size_t i = 0; i < 9 && prefix_ok; ++i) prefix_ok = traj.policies[i] == seq[i];
    o.require(prefix_ok, "walk deviates from the published 9-policy order");

    // stated criterion: the run visits exactly 9 policies and <5,5> is
    // optimal. Exact arithmetic refutes the optimality claim: state 1
    // still improves at <5,5>, so the run continues to <2,2>.
    auto residual_I = improvable_set(m, {4, 4});
    o.require(traj.length() == 9 && residual_I.empty(),
              "<5,5> is not optimal: rho(1,2)=" +
                  rat_to_decimal(gain(m, Policy{4, 4}, 0, 1), 4) + " > 0, run visits " +
                  std::to_string(traj.length()) + " policies and ends at <" +
                  std::to_string(traj.policies.back()[0] + 1) + "," +
                  std::to_string(traj.policies.back()[1] + 1) + ">");
    o.observed = "tables within 1e-5; 9-policy max-gain walk reproduced; " + o.observed;
    o.bound = "figure values";
    return o;
}

Outcome check_hamiltonian_lb() {
    Outcome o;
    for (int k = 2; k <= 6; ++k) {
        TwoStateParams p = gen_arbitrary(k);
        Mdp m = p.to_mdp();
        auto seq = arbitrary_sequence(k);
        o.require(static_cast<int>(seq.size()) == k * k,
                  "k=" + std::to_string(k) + ": sequence misses policies");
        auto traj = run_pi(m, {k - 1, 0}, SwitchingRule::scripted(to_policies(seq)));
        o.require(static_cast<int>(traj.length()) == k * k,
                  "k=" + std::to_string(k) + ": run length != k^2");
        o.require(improvable_set(m, traj.policies.back()).empty(),
                  "k=" + std::to_string(k) + ": final policy not optimal");
    }
    o.observed = "k=2..6 visit k^2 policies";
    o.bound = "k^2";
    return o;
}

Outcome check_extremal_counts() {
    Outcome o;
    for (int k = 2; k <= 4; ++k)
        for (int n = 3; n <= 9; ++n) {
            Int cnt = count_cycles(gen_gnk(n, k));
            o.require(cnt == cycles_gnk_closed(n, k),
                      "G_{n,k} closed form mismatch n=" + std::to_string(n) + " k=" + std::to_string(k));
            o.require(cnt == ceil_alpha_pow(k, n),
                      "ceil(alpha^n) mismatch n=" + std::to_string(n) + " k=" + std::to_string(k));
            o.require(count_cycles(gen_gpnk(n, k)) == cycles_gpnk_closed(n, k),
                      "G'_{n,k} closed form mismatch n=" + std::to_string(n) + " k=" + std::to_string(k));
        }
    for (int k = 2; k <= 8; ++k)
        for (int n = 3; n <= 20; ++n)
            o.require(cycles_gnk_closed(n, k) >= cycles_gpnk_closed(n, k),
                      "ordering violated n=" + std::to_string(n) + " k=" + std::to_string(k));
    o.observed = "n<=9,k<=4 enumerated; n<=20,k<=8 closed forms";
    o.bound = "exact equality / ordering";
    return o;
}

Outcome check_gexample() {
    Outcome o;
    const std::pair<int, int> cases[] = {{1, 2}, {1, 3}, {2, 2}};
    for (auto [l, k] : cases) {
        Int cnt = count_cycles(gen_gexample(l, k));
        o.require(cnt == cycles_gexample_closed(l, k),
                  "closed form mismatch l=" + std::to_string(l) + " k=" + std::to_string(k));
    }
    o.require(cycles_gexample_closed(1, 2) == 5, "C(l=1,k=2) != 5");
    o.observed = "three instances enumerated";
    o.bound = "closed form";
    return o;
}

Outcome check_brute_maxima() {
    Outcome o;
    o.require(brute_mk(3, 2) == 5, "M_2(3) != 5");
    for (int n = 0; n <= 4; ++n)
        o.require(le_mk_bound(brute_mk(n, 2), n, 2), "M_2 bound fails at n=" + std::to_string(n));
    for (int n = 0; n <= 3; ++n)
        o.require(le_mk_bound(brute_mk(n, 3), n, 3), "M_3 bound fails at n=" + std::to_string(n));

    auto fk_range = [&](int k, int n_max) {
        for (int n = 1; n <= n_max; ++n) {
            Int f = brute_fk(n, k);
            o.require(f >= ceil_alpha_pow(k, n),
                      "F lower bound fails n=" + std::to_string(n) + " k=" + std::to_string(k));
            o.require(le_fk_upper(f, n, k),
                      "F upper bound fails n=" + std::to_string(n) + " k=" + std::to_string(k));
        }
    };
    fk_range(2, 4);
    fk_range(3, 3);
    o.require(brute_fk(1, 2) == 2 && brute_fk(1, 3) == 3, "F_k(1) != k");
    o.require(brute_fk(2, 2) == 4, "F_2(2) != 4");

    // observed headroom of the constant 5 over the brute-forced range
    double max_ratio = 0;
    for (int k = 2; k <= 3; ++k)
        for (int n = 1; n <= (k == 2 ? 4 : 3); ++n) {
            double alpha = std::strtod(alpha_decimal(k, 20).c_str(), nullptr);
            double ratio = brute_fk(n, k).get_d() / std::pow(alpha, n);
            max_ratio = std::max(max_ratio, ratio);
        }
    std::ostringstream ratio_ss;
    ratio_ss.precision(4);
    ratio_ss << max_ratio;
    o.observed = "M_2(3)=5, F_2(2)=4, ranges n<=4/k=2 and n<=3/k=3; max F/alpha^n = " +
                 ratio_ss.str();
    o.bound = "(k+1)!^(n/(k+1)) and [ceil(alpha^n), 5 alpha^n]";
    return o;
}

Outcome check_dmdp_theorems(Profile profile) {
    Outcome o;
    const long total = profile == Profile::Full ? 500 : 60;
    long audits = 0;
    long idx = 0;
    for (long i = 0; i < total; ++i) {
        int n = 2 + static_cast<int>(i % 2);
        int k = 2 + static_cast<int>((i / 2) % 2);
        Dmdp d = random_dmdp(n, k, 7000 + static_cast<std::uint64_t>(i));
        Mdp m = d.to_mdp();
        DmdpGraph gm = to_graph(d);

        PiDag full = build_pidag(m, false);
        PiDag mg = build_pidag(m, true);
        Int bound1 = Int(static_cast<long>(k) * n) * n1(gm.graph, k);
        Int bound2 = Int(n + 1) * n2(gm.graph, k);
        o.require(Int(longest_path(full).first) <= bound1,
                  "kn*N1 violated on instance " + std::to_string(i));
        o.require(Int(longest_path(mg).first) <= bound2,
                  "(n+1)*N2 violated on instance " + std::to_string(i));

        Policy init(static_cast<size_t>(n), 0);
        struct RunSpec {
            SwitchingRule rule;
            AuditMode mode;
            bool howard;
        };
        const RunSpec runs[] = {
            {SwitchingRule::howard(), AuditMode::Arbitrary, false},
            {SwitchingRule::maxgain_howard(), AuditMode::MaxGain, true},
            {SwitchingRule::maxgain_simplex(), AuditMode::MaxGain, false},
            {SwitchingRule::random(9000 + static_cast<std::uint64_t>(i)), AuditMode::Arbitrary, false},
        };
        for (const auto& spec : runs) {
            PiTrajectory t = run_pi(m, init, spec.rule);
            AuditReport rep = audit_trajectory(d, t, spec.mode, spec.howard);
            o.require(rep.pass(), "audit failed on instance " + std::to_string(i));
            if (spec.mode == AuditMode::MaxGain) {
                AuditReport arb = audit_trajectory(d, t, AuditMode::Arbitrary);
                o.require(arb.pass(), "arbitrary-mode audit failed on instance " + std::to_string(i));
            }
            o.require(trajectory_in_dag(spec.mode == AuditMode::MaxGain ? mg : full, t),
                      "trajectory left the DAG on instance " + std::to_string(i));
            o.require(le_arbitrary_pi_bound(static_cast<long>(t.length()), n, k),
                      "corollary cap violated on instance " + std::to_string(i));
            ++audits;
        }
        ++idx;
    }
    o.observed = std::to_string(idx) + " instances, " + std::to_string(audits) + " audited runs";
    o.bound = "kn*N1 / (n+1)*N2";
    return o;
}

Outcome check_twostate_ub(Profile profile) {
    Outcome o;
    const long trials = profile == Profile::Full ? 10000 : 1000;
    auto arb2 = verify_arbitrary_ub(2, true, 50, 42);
    auto mg2 = verify_maxgain_ub(2, true, 50, 43);
    o.require(arb2.pass, "k=2 exhaustive arbitrary cap violated");
    o.require(mg2.pass, "k=2 exhaustive max-gain cap violated");
    std::string detail = "k=2 max " + std::to_string(arb2.max_path) + "/" + std::to_string(mg2.max_path);
    for (int k = 3; k <= 5; ++k) {
        auto arb = verify_arbitrary_ub(k, false, trials, 1000 + static_cast<std::uint64_t>(k));
        auto mg = verify_maxgain_ub(k, false, trials, 2000 + static_cast<std::uint64_t>(k));
        o.require(arb.pass, "k=" + std::to_string(k) + " arbitrary cap violated");
        o.require(mg.pass, "k=" + std::to_string(k) + " max-gain cap violated");
        detail += "; k=" + std::to_string(k) + " max " + std::to_string(arb.max_path) + "/" +
                  std::to_string(mg.max_path);
    }
    o.observed = detail;
    o.bound = "k^2/2+2k-1 and 7";
    return o;
}

Outcome check_exactness() {
    Outcome o;
    const long rounds = 1000;
    long improves = 0;
    for (long i = 0; i < rounds; ++i) {
        int n = 2 + static_cast<int>(i % 3);
        int k = 2 + static_cast<int>((i / 3) % 3);
        Mdp m = random_mdp(n, k, 100 + static_cast<std::uint64_t>(i));
        Policy p(static_cast<size_t>(n));
        for (int s = 0; s < n; ++s) p[static_cast<size_t>(s)] = static_cast<int>((i + s) % k);
        ValueFunction v = evaluate(m, p);
        for (int s = 0; s < n; ++s) {
            Rat rhs = m.R[static_cast<size_t>(s)][static_cast<size_t>(p[static_cast<size_t>(s)])];
            for (int t = 0; t < n; ++t)
                rhs += m.gamma *
                       m.T[static_cast<size_t>(s)][static_cast<size_t>(p[static_cast<size_t>(s)])]
                           [static_cast<size_t>(t)] *
                       v[static_cast<size_t>(t)];
            o.require(v[static_cast<size_t>(s)] == rhs, "Bellman residual nonzero");
        }
        // improve() self-checks fire on every call of this run
        auto I = improvable_set(m, p, v);
        if (!I.empty()) {
            improve(m, p, {I.front()});
            ++improves;
        }
    }
    // closed 2-state forms against the generic solver
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<int> act(1, 4);
    for (long i = 0; i < rounds; ++i) {
        int k = 2 + static_cast<int>(i % 3);
        TwoStateParams p;
        p.k = k;
        p.gamma = uniform_rational(rng, Rat(0), Rat(1), 1000);
        for (int a = 0; a < k; ++a) {
            p.lam1.push_back(uniform_rational(rng, Rat(0), Rat(1), 1000));
            p.lam2.push_back(uniform_rational(rng, Rat(0), Rat(1), 1000));
            p.mu1.push_back(uniform_rational(rng, Rat(-10), Rat(10), 1000));
            p.mu2.push_back(uniform_rational(rng, Rat(-10), Rat(10), 1000));
        }
        Mdp m = p.to_mdp();
        int ii = 1 + static_cast<int>(i % k);
        int jj = 1 + static_cast<int>((i / k) % k);
        Policy pol{ii - 1, jj - 1};
        ValueFunction v = evaluate(m, pol);
        o.require(closed_value(p, ii, jj, 1) == v[0] && closed_value(p, ii, jj, 2) == v[1],
                  "closed value form mismatch");
        int ap = 1 + act(rng) % k;
        o.require(closed_gain(p, ii, jj, 1, ap) == gain(m, v, pol, 0, ap - 1),
                  "closed gain form mismatch (state 1)");
        o.require(closed_gain(p, ii, jj, 2, ap) == gain(m, v, pol, 1, ap - 1),
                  "closed gain form mismatch (state 2)");
    }
    o.observed = std::to_string(rounds) + " solves, " + std::to_string(improves) +
                 " checked improvements, " + std::to_string(rounds) + " closed-form instances";
    o.bound = "exact equality";
    return o;
}

Outcome check_lemma_structure(Profile profile) {
    Outcome o;
    std::string detail;
    for (int n : profile == Profile::Full ? std::vector<int>{4, 5, 6} : std::vector<int>{4, 5}) {
        StructureScan scan = lemma_structure_scan(n);
        o.require(scan.pass, "structure lemma violated at n=" + std::to_string(n));
        detail += "n=" + std::to_string(n) + ": " + std::to_string(scan.admissible) + " graphs, " +
                  std::to_string(scan.equality_cases) + " extremal; ";
    }
    o.observed = detail;
    o.bound = "<= n not-in-contractible edges";
    return o;
}

}  // namespace

StructureScan lemma_structure_scan(int n) {
    StructureScan scan;
    if (n < 4) throw std::invalid_argument("structure scan needs n >= 4");

    // per-vertex ordered choice of two distinct non-self targets
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) pairs.push_back({a, b});

    std::vector<std::vector<std::pair<int, int>>> options(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v)
        for (auto [a, b] : pairs)
            if (a != v && b != v) options[static_cast<size_t>(v)].push_back({a, b});

    std::vector<size_t> pick(static_cast<size_t>(n), 0);
    bool all_ok = true;
    for (;;) {
        ++scan.candidates;
        std::vector<int> indeg(static_cast<size_t>(n), 0);
        for (int v = 0; v < n; ++v) {
            auto [a, b] = options[static_cast<size_t>(v)][pick[static_cast<size_t>(v)]];
            ++indeg[static_cast<size_t>(a)];
            ++indeg[static_cast<size_t>(b)];
        }
        bool regular = std::all_of(indeg.begin(), indeg.end(), [](int d) { return d == 2; });
        if (regular) {
            ++scan.two_regular;
            Digraph g(n);
            for (int v = 0; v < n; ++v) {
                auto [a, b] = options[static_cast<size_t>(v)][pick[static_cast<size_t>(v)]];
                g.set_mult(v, a, 1);
                g.set_mult(v, b, 1);
            }
            if (!find_forbidden_subgraph(g, Forbidden::H1) &&
                !find_forbidden_subgraph(g, Forbidden::H2)) {
                ++scan.admissible;
                int not_in_contractible = 0;
                for (const auto& [uv, m] : g.edges()) {
                    (void)m;
                    if (!is_in_contractible(g, uv.first, uv.second)) ++not_in_contractible;
                }
                if (not_in_contractible > n) all_ok = false;

                bool all_gm = true;
                for (const auto& comp : weak_components(g)) {
                    if (comp.size() < 4) {
                        all_gm = false;
                        break;
                    }
                    Digraph sub = induced_subgraph(g, comp);
                    if (!is_isomorphic(sub, gen_gn(static_cast<int>(comp.size())))) {
                        all_gm = false;
                        break;
                    }
                }
                if ((not_in_contractible == n) != all_gm) all_ok = false;
                if (not_in_contractible == n) ++scan.equality_cases;
            }
        }
        int pos = n - 1;
        while (pos >= 0) {
            if (++pick[static_cast<size_t>(pos)] < options[static_cast<size_t>(pos)].size()) break;
            pick[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    scan.pass = all_ok && scan.equality_cases > 0;
    return scan;
}

std::vector<CheckResult> run_suite(Profile profile) {
    std::vector<std::pair<std::string, std::function<Outcome()>>> checks = {
        {"fig-arbitrary-reproduction", [] { return check_fig_arbitrary(); }},
        {"fig-maxgain-reproduction", [] { return check_fig_maxgain(); }},
        {"hamiltonian-lower-bound", [] { return check_hamiltonian_lb(); }},
        {"extremal-cycle-counts", [] { return check_extremal_counts(); }},
        {"gexample-closed-form", [] { return check_gexample(); }},
        {"brute-force-maxima", [] { return check_brute_maxima(); }},
        {"dmdp-pidag-bounds", [profile] { return check_dmdp_theorems(profile); }},
        {"twostate-upper-bounds", [profile] { return check_twostate_ub(profile); }},
        {"exactness-core", [] { return check_exactness(); }},
        {"lemma-structure", [profile] { return check_lemma_structure(profile); }},
    };

    std::vector<CheckResult> results;
    for (auto& [name, fn] : checks) {
        CheckResult r;
        r.name = name;
        auto start = std::chrono::steady_clock::now();
        try {
            Outcome o = fn();
            r.pass = o.pass;
            r.observed = o.observed;
            r.bound = o.bound;
        } catch (const std::exception& e) {
            r.pass = false;
            r.observed = std::string("exception: ") + e.what();
        }
        r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                   .count();
        results.push_back(std::move(r));
    }
    return results;
}

bool suite_passed(const std::vector<CheckResult>& results) {
    return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.pass; });
}

std::string suite_to_json_string(const std::vector<CheckResult>& results, Profile profile) {
    nlohmann::json j;
    j["profile"] = profile == Profile::Full ? "full" : "quick";
    j["pass"] = suite_passed(results);
    j["checks"] = nlohmann::json::array();
    for (const auto& r : results)
        j["checks"].push_back({{"name", r.name},
                               {"status", r.pass ? "pass" : "fail"},
                               {"observed", r.observed},
                               {"bound", r.bound},
                               {"ms", r.ms}});
    return j.dump(2);
}

}  // namespace pibound
