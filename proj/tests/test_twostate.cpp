#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "twostate.hpp"

using namespace pibound;

TEST_CASE("canonical hamiltonian parameters") {
    TwoStateParams p = gen_arbitrary(5);
    CHECK(p.gamma == Rat(9, 10));
    for (int a = 1; a <= 5; ++a) {
        Rat l(a, 6);
        l.canonicalize();
        CHECK(p.lam1[static_cast<size_t>(a - 1)] == l);
        CHECK(p.lam2[static_cast<size_t>(a - 1)] == l);
    }
    CHECK(p.mu1[0] == 0);
    CHECK(p.mu2[0] == 0);
    CHECK(p.mu1[1] == Rat(-32, 3));
    CHECK(p.mu2[1] == -1);
    // rewards decay fast and stay strictly ordered
    for (int a = 1; a < 5; ++a) {
        CHECK(p.mu1[static_cast<size_t>(a)] < p.mu1[static_cast<size_t>(a - 1)]);
        CHECK(p.mu2[static_cast<size_t>(a)] < p.mu2[static_cast<size_t>(a - 1)]);
    }
}

TEST_CASE("visitation order") {
    CHECK(next_arbitrary(5, 5, 5) == std::pair<int, int>{1, 5});
    CHECK(next_arbitrary(5, 5, 1) == std::pair<int, int>{5, 2});
    CHECK(next_arbitrary(5, 1, 2) == std::pair<int, int>{1, 1});
    CHECK(next_arbitrary(5, 2, 5) == std::pair<int, int>{3, 5});
    CHECK_THROWS_AS(next_arbitrary(5, 1, 1), std::invalid_argument);

    for (int k = 2; k <= 8; ++k) {
        auto seq = arbitrary_sequence(k);
        CHECK(static_cast<int>(seq.size()) == k * k);
        CHECK(seq.front() == std::pair<int, int>{k, 1});
        CHECK(seq.back() == std::pair<int, int>{1, 1});
        std::set<std::pair<int, int>> seen(seq.begin(), seq.end());
        CHECK(seen.size() == seq.size());
    }

    auto mg = maxgain_sequence(4);
    CHECK(mg.size() == 7);
    CHECK(mg.front() == std::pair<int, int>{1, 1});
    CHECK(mg.back() == std::pair<int, int>{4, 4});
}

TEST_CASE("every scripted hop of the hamiltonian walk is improving") {
    for (int k = 2; k <= 8; ++k) {
        TwoStateParams p = gen_arbitrary(k);
        auto seq = arbitrary_sequence(k);
        for (size_t t = 0; t + 1 < seq.size(); ++t) {
            auto [i, j] = seq[t];
            auto [i2, j2] = seq[t + 1];
            if (i != i2) {
                CHECK(closed_gain(p, i, j, 1, i2) > 0);
            } else {
                CHECK(closed_gain(p, i, j, 2, j2) > 0);
            }
        }
        // <1,1> is the unique optimum
        Mdp m = p.to_mdp();
        CHECK(improvable_set(m, {0, 0}).empty());
        for (int i = 1; i <= k; ++i)
            for (int j = 1; j <= k; ++j)
                if (i != 1 || j != 1) CHECK_FALSE(improvable_set(m, {i - 1, j - 1}).empty());
    }
}

TEST_CASE("first hamiltonian step at k=5") {
    TwoStateParams p = gen_arbitrary(5);
    Mdp m = p.to_mdp();
    // at <5,1> the action 2 at state 2 improves, and switching reaches <5,2>
    CHECK(gain(m, Policy{4, 0}, 1, 1) > 0);
    Policy q = improve(m, {4, 0}, {{1, 1}});
    CHECK(q == Policy{4, 1});
    CHECK(compare(m, Policy{4, 0}, q) == PolicyOrder::Less);
}

TEST_CASE("canonical k=2 walk visits all four policies") {
    TwoStateParams p = gen_arbitrary(2);
    auto seq = arbitrary_sequence(2);
    REQUIRE(seq == std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {1, 2}, {1, 1}});
    PiTrajectory t = run_pi(p.to_mdp(), {1, 0}, SwitchingRule::scripted(to_policies(seq)));
    CHECK(t.length() == 4);
}

TEST_CASE("seeded feasible-range sampling still walks the full matrix") {
    for (int k : {2, 3, 4, 5})
        for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
            TwoStateParams p = gen_arbitrary_seeded(k, seed);
            CHECK(p.gamma > 0);
            CHECK(p.gamma < 1);
            for (int a = 1; a < k; ++a) {
                CHECK(p.lam1[static_cast<size_t>(a)] > p.lam1[static_cast<size_t>(a - 1)]);
                CHECK(p.lam2[static_cast<size_t>(a)] > p.lam2[static_cast<size_t>(a - 1)]);
            }
            auto seq = arbitrary_sequence(k);
            PiTrajectory t =
                run_pi(p.to_mdp(), {k - 1, 0}, SwitchingRule::scripted(to_policies(seq)));
            CHECK(static_cast<int>(t.length()) == k * k);
        }
}

TEST_CASE("max-gain construction") {
    TwoStateParams p = gen_maxgain(5, Rat(1, 10));
    CHECK(p.lam1[0] == 1);
    CHECK(p.mu1[0] == 0);
    CHECK(p.lam2 == p.lam1);
    for (int a = 0; a < 5; ++a) CHECK(p.mu2[static_cast<size_t>(a)] == Rat(5) * p.mu1[static_cast<size_t>(a)]);
    CHECK(p.gamma == 1 - Rat(1) / (Rat(5) * rat_pow(Rat(21, 10), 4)));
    CHECK(p.lam1[4] == 1);  // the last action is again a sure self-loop

    // the scripted switch is improving and the unique argmax among
    // improving actions, for several k and eps
    for (int k : {2, 3, 4, 5, 6, 7, 8})
        for (Rat eps : {Rat(1, 10), Rat(1), Rat(2)}) {
            TwoStateParams q = gen_maxgain(k, eps);
            Mdp m = q.to_mdp();
            auto seq = maxgain_sequence(k);
            for (size_t t = 0; t + 1 < seq.size(); ++t) {
                auto [i, j] = seq[t];
                auto [i2, j2] = seq[t + 1];
                int state = i2 != i ? 0 : 1;
                int switched_to = state == 0 ? i2 : j2;
                Policy cur{i - 1, j - 1};
                ValueFunction v = evaluate(m, cur);
                Rat g_star = gain(m, v, cur, state, switched_to - 1);
                CHECK(g_star > 0);
                for (int b = 1; b <= k; ++b) {
                    if (b == switched_to) continue;
                    Rat g = gain(m, v, cur, state, b - 1);
                    if (g > 0) CHECK(g < g_star);
                }
            }
            // the walk's last policy <k,k> is only optimal in the
            // degenerate k=2 case, where every action self-loops; for
            // k >= 3 state 1 can still improve by crossing towards the
            // richer state 2, so the gain-greedy walk overshoots the
            // true optimum <2,2>
            CHECK(improvable_set(m, {k - 1, k - 1}).empty() == (k == 2));
            CHECK(improvable_set(m, {1, 1}).empty());
        }
}

TEST_CASE("max-gain walk length") {
    for (int k : {3, 5}) {
        TwoStateParams p = gen_maxgain(k, k == 3 ? Rat(1) : Rat(1, 10));
        auto seq = to_policies(maxgain_sequence(k));
        PiTrajectory t = run_pi(p.to_mdp(), {0, 0}, SwitchingRule::scripted(seq, true, true));
        REQUIRE(t.length() >= seq.size());
        CHECK(seq.size() == static_cast<size_t>(2 * k - 1));
        for (size_t i = 0; i < seq.size(); ++i) CHECK(t.policies[i] == seq[i]);
        // past <k,k> the improvement run keeps going to the optimum
        CHECK(improvable_set(p.to_mdp(), t.policies.back()).empty());
        CHECK(t.policies.back() == Policy{1, 1});
    }
}

TEST_CASE("closed forms match the solver") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        std::mt19937_64 rng(seed);
        TwoStateParams p;
        p.k = 3;
        p.gamma = uniform_rational(rng, Rat(0), Rat(1), 100);
        for (int a = 0; a < 3; ++a) {
            p.lam1.push_back(uniform_rational(rng, Rat(0), Rat(1), 100));
            p.lam2.push_back(uniform_rational(rng, Rat(0), Rat(1), 100));
            p.mu1.push_back(uniform_rational(rng, Rat(-5), Rat(5), 100));
            p.mu2.push_back(uniform_rational(rng, Rat(-5), Rat(5), 100));
        }
        Mdp m = p.to_mdp();
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j) {
                Policy pol{i - 1, j - 1};
                ValueFunction v = evaluate(m, pol);
                CHECK(closed_value(p, i, j, 1) == v[0]);
                CHECK(closed_value(p, i, j, 2) == v[1]);
                for (int a = 1; a <= 3; ++a) {
                    CHECK(closed_gain(p, i, j, 1, a) == gain(m, v, pol, 0, a - 1));
                    CHECK(closed_gain(p, i, j, 2, a) == gain(m, v, pol, 1, a - 1));
                }
            }
    }
}

TEST_CASE("path-length caps on sampled 2-state instances") {
    auto arb = verify_arbitrary_ub(2, true, 10, 7);
    CHECK(arb.pass);
    CHECK(arb.instances == 16 * 10);
    CHECK(arb.max_path <= 5);

    auto mg = verify_maxgain_ub(2, true, 10, 8);
    CHECK(mg.pass);
    CHECK(mg.max_path <= 7);

    auto arb3 = verify_arbitrary_ub(3, false, 300, 9);
    CHECK(arb3.pass);
    CHECK(arb3.bound == "19/2");

    CHECK_THROWS_AS(verify_arbitrary_ub(4, true, 1, 1), std::invalid_argument);
}

TEST_CASE("degenerate instances") {
    SUBCASE("all rewards equal means nothing improves") {
        Dmdp d;
        d.n = 2;
        d.k = 3;
        d.gamma = Rat(1, 2);
        d.next = {{0, 1, 0}, {1, 0, 1}};
        d.R.assign(2, std::vector<Rat>(3, Rat(4)));
        PiDag dag = build_pidag(d.to_mdp(), false);
        CHECK(longest_path(dag).first == 1);
    }

    SUBCASE("all self-loops allow one max-gain switch per state") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            std::mt19937_64 rng(seed);
            Dmdp d;
            d.n = 2;
            d.k = 3;
            d.gamma = Rat(2, 3);
            d.next = {{0, 0, 0}, {1, 1, 1}};
            d.R.assign(2, std::vector<Rat>(3));
            for (int s = 0; s < 2; ++s)
                for (int a = 0; a < 3; ++a)
                    d.R[static_cast<size_t>(s)][static_cast<size_t>(a)] =
                        uniform_rational(rng, Rat(-3), Rat(3), 50);
            PiDag dag = build_pidag(d.to_mdp(), true);
            // each state jumps at most once, straight to its max reward
            CHECK(longest_path(dag).first <= 1 + d.n);
        }
    }
}
