#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "extremal.hpp"
#include "pi.hpp"
#include "twostate.hpp"

using namespace pibound;

namespace {

Mdp auso_example() {
    Mdp m;
    m.n = 3;
    m.k = 2;
    m.gamma = Rat(9, 10);
    m.T.assign(3, std::vector<std::vector<Rat>>(2, std::vector<Rat>(3, Rat(0))));
    m.R.assign(3, std::vector<Rat>(2));
    m.T[0][0][0] = 1;
    m.R[0][0] = 3;
    m.T[0][1][0] = Rat(1, 4);
    m.T[0][1][1] = Rat(1, 2);
    m.T[0][1][2] = Rat(1, 4);
    m.R[0][1] = Rat(11, 4);
    m.T[1][0][2] = Rat(1, 2);
    m.T[1][0][0] = Rat(1, 2);
    m.R[1][0] = 2;
    m.T[1][1][1] = 1;
    m.R[1][1] = 3;
    m.T[2][0][0] = Rat(1, 2);
    m.T[2][0][1] = Rat(1, 2);
    m.R[2][0] = 2;
    m.T[2][1][1] = 1;
    m.R[2][1] = 3;
    return m;
}

std::set<std::pair<std::string, std::string>> edge_labels(const PiDag& d) {
    auto label = [&](long c) {
        std::string s;
        for (int a : d.decode(c)) s += static_cast<char>('0' + a);
        return s;
    };
    std::set<std::pair<std::string, std::string>> out;
    for (long c = 0; c < d.n_policies; ++c)
        for (long w : d.succ[static_cast<size_t>(c)]) out.insert({label(c), label(w)});
    return out;
}

}  // namespace

TEST_CASE("run_pi terminates immediately at an optimum") {
    Mdp m = auso_example();
    PiTrajectory t = run_pi(m, {0, 1, 1}, SwitchingRule::howard());
    CHECK(t.length() == 1);
    CHECK(t.switches.empty());
}

TEST_CASE("howard switches every improvable state") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Mdp m = random_dmdp(3, 3, seed).to_mdp();
        PiTrajectory t = run_pi(m, {0, 0, 0}, SwitchingRule::maxgain_howard());
        for (size_t i = 0; i < t.switches.size(); ++i) {
            auto splus = s_plus(m, t.policies[i]);
            std::vector<int> switched;
            for (const auto& [s, a] : t.switches[i]) switched.push_back(s);
            CHECK(switched == splus);
        }
        CHECK(improvable_set(m, t.policies.back()).empty());
    }
}

TEST_CASE("highest-index rule switches only the top improvable state") {
    SwitchingRule rule{SwitchingRule::States::HighestIndex, SwitchingRule::Actions::LowestImproving,
                       {}, false, false, 0};
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Mdp m = random_dmdp(3, 2, seed + 400).to_mdp();
        PiTrajectory t = run_pi(m, {0, 0, 0}, rule);
        for (size_t i = 0; i < t.switches.size(); ++i) {
            REQUIRE(t.switches[i].size() == 1);
            CHECK(t.switches[i].front().first == s_plus(m, t.policies[i]).back());
        }
    }
}

TEST_CASE("scripted runs validate every hop") {
    Mdp m = auso_example();
    SUBCASE("legal script is replayed") {
        std::vector<Policy> script{{1, 0, 0}, {1, 1, 1}, {0, 1, 1}};
        PiTrajectory t = run_pi(m, script.front(), SwitchingRule::scripted(script));
        CHECK(t.length() == 3);
        CHECK(t.policies.back() == Policy{0, 1, 1});
    }
    SUBCASE("illegal switch rejected") {
        std::vector<Policy> script{{0, 1, 1}, {1, 1, 1}};  // start is already optimal
        CHECK_THROWS(run_pi(m, script.front(), SwitchingRule::scripted(script)));
    }
    SUBCASE("early termination rejected") {
        std::vector<Policy> script{{1, 0, 0}, {1, 1, 1}};  // not yet optimal at the end
        CHECK_THROWS_AS(run_pi(m, script.front(), SwitchingRule::scripted(script)),
                        std::runtime_error);
    }
}

TEST_CASE("pidag of the 3-state example") {
    Mdp m = auso_example();
    PiDag d = build_pidag(m, false);
    CHECK(d.n_policies == 8);
    CHECK(d.sink_codes().size() == 1);
    CHECK(d.decode(d.sink_codes().front()) == Policy{0, 1, 1});

    auto edges = edge_labels(d);
    // single-switch edges as drawn
    const std::pair<const char*, const char*> drawn[] = {
        {"000", "010"}, {"000", "001"}, {"001", "011"}, {"010", "011"},
        {"100", "000"}, {"100", "101"}, {"100", "110"}, {"101", "001"},
        {"101", "111"}, {"110", "010"}, {"110", "111"}, {"111", "011"},
        // multi-switch edges as drawn
        {"101", "011"}, {"110", "011"}, {"100", "001"}, {"100", "010"},
        {"100", "011"}, {"000", "011"}, {"100", "111"},
    };
    for (const auto& [a, b] : drawn) CHECK(edges.count({a, b}) == 1);
    CHECK(edges.size() == 19);
}

TEST_CASE("max-gain DAG is an edge subset of the full DAG") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Mdp m = random_dmdp(2, 3, seed).to_mdp();
        PiDag full = build_pidag(m, false);
        PiDag mg = build_pidag(m, true);
        auto fe = edge_labels(full);
        for (const auto& e : edge_labels(mg)) CHECK(fe.count(e) == 1);
    }
}

TEST_CASE("runs are paths in the DAG and respect the run-length cap") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        int n = 2 + static_cast<int>(seed % 2);
        int k = 2 + static_cast<int>(seed % 3);
        Mdp m = random_dmdp(n, k, seed + 90).to_mdp();
        PiDag full = build_pidag(m, false);
        PiDag mg = build_pidag(m, true);

        PiTrajectory h = run_pi(m, Policy(static_cast<size_t>(n), 0), SwitchingRule::howard());
        CHECK(trajectory_in_dag(full, h));
        PiTrajectory g = run_pi(m, Policy(static_cast<size_t>(n), 0), SwitchingRule::maxgain_simplex());
        CHECK(trajectory_in_dag(mg, g));
        PiTrajectory r = run_pi(m, Policy(static_cast<size_t>(n), 0), SwitchingRule::random(seed));
        CHECK(trajectory_in_dag(full, r));

        for (const PiTrajectory* t : {&h, &g, &r})
            CHECK(le_arbitrary_pi_bound(static_cast<long>(t->length()), n, k));
    }
}

TEST_CASE("longest path") {
    SUBCASE("flat instance has only trivial paths") {
        Dmdp d;
        d.n = 2;
        d.k = 2;
        d.gamma = Rat(1, 2);
        d.next = {{0, 1}, {1, 0}};
        d.R = {{Rat(1), Rat(1)}, {Rat(1), Rat(1)}};
        PiDag dag = build_pidag(d.to_mdp(), false);
        CHECK(dag.edge_count() == 0);
        CHECK(longest_path(dag).first == 1);
    }

    SUBCASE("adversarial instance has a Hamiltonian path") {
        Mdp m = gen_arbitrary(3).to_mdp();
        PiDag dag = build_pidag(m, false);
        auto [len, path] = longest_path(dag);
        CHECK(len == 9);
        CHECK(path.size() == 9);
        auto [len_rooted, path_rooted] = longest_path(dag, Policy{2, 0});
        CHECK(len_rooted == 9);
        CHECK(path_rooted.front() == Policy{2, 0});
    }

    SUBCASE("every 2-state 2-action deterministic instance stays under 5") {
        for (std::uint64_t seed = 0; seed < 120; ++seed) {
            Mdp m = random_dmdp(2, 2, seed + 7000).to_mdp();
            CHECK(longest_path(build_pidag(m, false)).first <= 5);
        }
    }
}

TEST_CASE("trajectory json round trip") {
    Mdp m = auso_example();
    PiTrajectory t = run_pi(m, {1, 0, 0}, SwitchingRule::maxgain_howard());
    PiTrajectory back = trajectory_from_json_string(trajectory_to_json_string(t));
    CHECK(back.policies == t.policies);
    CHECK(back.switches == t.switches);
    CHECK(back.values == t.values);
}
