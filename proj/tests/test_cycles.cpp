#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "cycles.hpp"
#include "extremal.hpp"

using namespace pibound;

namespace {

Digraph random_multigraph(int n, std::uint64_t seed, int max_mult = 3) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> m(0, max_mult);
    Digraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (m(rng) == 1) g.set_mult(u, v, 1 + m(rng) % max_mult);
    return g;
}

// Independent oracle: expand every edge instance and enumerate at the
// instance level, adding 1 per object (no multiplicity products).
struct InstanceOracle {
    const Digraph& g;
    std::vector<std::vector<std::pair<int, int>>> inst;  // u -> (v, instance id)

    explicit InstanceOracle(const Digraph& gg) : g(gg), inst(static_cast<size_t>(gg.n_vertices())) {
        for (int u = 0; u < g.n_vertices(); ++u)
            for (const auto& [v, m] : g.out(u))
                for (long i = 0; i < m; ++i) inst[static_cast<size_t>(u)].push_back({v, static_cast<int>(i)});
    }

    long cycles() const {
        long total = 0;
        std::vector<bool> used(static_cast<size_t>(g.n_vertices()), false);
        std::function<void(int, int)> walk = [&](int anchor, int at) {
            for (const auto& [v, i] : inst[static_cast<size_t>(at)]) {
                (void)i;
                if (v == anchor) {
                    ++total;
                    continue;
                }
                if (v <= anchor || used[static_cast<size_t>(v)]) continue;
                used[static_cast<size_t>(v)] = true;
                walk(anchor, v);
                used[static_cast<size_t>(v)] = false;
            }
        };
        for (int a = 0; a < g.n_vertices(); ++a) {
            used.assign(used.size(), false);
            used[static_cast<size_t>(a)] = true;
            // anchored walk counts loops at the anchor too (v == anchor)
            walk(a, a);
        }
        return total;
    }

    long rooted_path_cycles() const {
        long total = 0;
        std::vector<int> path;
        std::vector<bool> used(static_cast<size_t>(g.n_vertices()), false);
        std::function<void(int)> walk = [&](int at) {
            for (const auto& [v, i] : inst[static_cast<size_t>(at)]) {
                (void)i;
                // closing instance into any path vertex
                for (int x : path)
                    if (x == v) ++total;
                if (used[static_cast<size_t>(v)]) continue;
                used[static_cast<size_t>(v)] = true;
                path.push_back(v);
                walk(v);
                path.pop_back();
                used[static_cast<size_t>(v)] = false;
            }
        };
        for (int r = 0; r < g.n_vertices(); ++r) {
            used.assign(used.size(), false);
            used[static_cast<size_t>(r)] = true;
            path = {r};
            walk(r);
        }
        return total;
    }
};

}  // namespace

TEST_CASE("cycle counts on the named instances") {
    CHECK(count_cycles(forbidden_graph(Forbidden::H1)) == 1);
    CHECK(count_cycles(forbidden_graph(Forbidden::H2)) == 1);

    Digraph loop(1);
    loop.set_mult(0, 0, 3);
    CHECK(count_cycles(loop) == 3);

    CHECK(count_cycles(gen_gnk(5, 2)) == 12);
    CHECK(Int(12) == s_seq(2, 3) + s_seq(2, 5) + 1);
    CHECK(ceil_alpha_pow(2, 5) == 12);
}

TEST_CASE("path counts") {
    Digraph c2(2);
    c2.set_mult(0, 1, 1);
    c2.set_mult(1, 0, 1);
    CHECK(count_paths(c2) == 4);

    CHECK(count_paths(Digraph(3)) == 3);

    Digraph chain(3);
    chain.set_mult(0, 1, 1);
    chain.set_mult(1, 2, 1);
    CHECK(count_paths_between(chain, 0, 2) == 1);
    CHECK(count_paths_between(chain, 2, 0) == 0);
    CHECK(count_paths_between(chain, 1, 1) == 1);  // the single-vertex path
}

TEST_CASE("rooted path-cycle counts") {
    Digraph loop(1);
    loop.set_mult(0, 0, 1);
    CHECK(count_path_cycles(loop) == 1);

    Digraph c2(2);
    c2.set_mult(0, 1, 1);
    c2.set_mult(1, 0, 1);
    CHECK(count_path_cycles(c2) == 2);
    CHECK(count_path_cycles_subgraph(c2) == 1);

    // cross-check against the instance-level oracle
    CHECK(count_path_cycles(gen_gnk(3, 2)) == InstanceOracle(gen_gnk(3, 2)).rooted_path_cycles());
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Digraph g = random_multigraph(4, seed);
        InstanceOracle oracle(g);
        CHECK(count_cycles(g) == oracle.cycles());
        CHECK(count_path_cycles(g) == oracle.rooted_path_cycles());
        CHECK(count_path_cycles_subgraph(g) <= count_path_cycles(g));
    }
}

TEST_CASE("count decompositions") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Digraph g = random_multigraph(5, seed);
        Int all = count_cycles(g);

        for (int v = 0; v < g.n_vertices(); ++v) {
            std::vector<int> rest;
            for (int u = 0; u < g.n_vertices(); ++u)
                if (u != v) rest.push_back(u);
            CHECK(all == count_cycles(induced_subgraph(g, rest)) + count_cycles_through_vertex(g, v));
        }

        // per-vertex out-edge split of the through-vertex count
        for (int v = 0; v < g.n_vertices(); ++v) {
            Int split = 0;
            for (const auto& [w, m] : g.out(v)) {
                (void)m;
                split += count_cycles_through_edge(g, v, w);
            }
            CHECK(split == count_cycles_through_vertex(g, v));
        }

        CHECK(all <= count_path_cycles(g));
    }
}

TEST_CASE("edge-set counts") {
    Digraph g = gen_gnk(4, 3);
    Int through_all = count_cycles_through_edge_set(
        g, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {1, 3}, {2, 0}, {3, 1}});
    CHECK(through_all == count_cycles(g));
    CHECK(count_cycles_through_edge_set(g, {}) == 0);
    CHECK(count_cycles_through_edge_set(g, {{0, 1}}) == count_cycles_through_edge(g, 0, 1));
}

TEST_CASE("count cap guards") {
    CountOptions opt;
    opt.count_cap = 3;
    CHECK_THROWS_AS(count_cycles(gen_gnk(5, 2), opt), CapExceeded);
}

TEST_CASE("multi-edge reduction counts") {
    SUBCASE("unit loops after reducing full out-multiplicity") {
        Digraph g(3);
        for (int v = 0; v < 3; ++v) g.set_mult(v, v, 2);
        CHECK(n1(g, 2) == 3);
    }

    SUBCASE("no full-multiplicity edges means no reduction") {
        Digraph g = gen_gnk(4, 3);  // mults 2 and 1, k = 3
        CHECK(n1(g, 3) == count_path_cycles(g));
    }

    SUBCASE("reduction equals a hand-reduced graph") {
        for (std::uint64_t seed = 100; seed < 130; ++seed) {
            // build a random outdegree-2 multigraph on 3 vertices
            std::mt19937_64 rng(seed);
            std::uniform_int_distribution<int> pick(0, 2);
            Digraph g(3);
            for (int v = 0; v < 3; ++v) {
                int a = pick(rng), b = pick(rng);
                g.add_edge(v, a, 1);
                g.add_edge(v, b, 1);
            }
            Digraph reduced = g;
            for (const auto& [uv, m] : g.edges())
                if (m == 2) reduced.set_mult(uv.first, uv.second, 1);
            CHECK(n1(g, 2) == count_path_cycles(reduced));
            CHECK(n2(g, 2) == count_path_cycles(skeleton(g)));
        }
    }

    SUBCASE("simple graphs are fixed points") {
        Digraph g = gen_gn(5);
        CHECK(n2(g, 2) == count_path_cycles(g));
        CHECK(n1(g, 2) == count_path_cycles(g));
    }

    SUBCASE("skeleton of the circulant family is the circulant") {
        CHECK(n2(gen_gnk(5, 3), 3) == count_path_cycles(gen_gn(5)));
        CHECK(n2(gen_gpnk(6, 4), 4) == count_path_cycles(gen_gn(6)));
    }

    SUBCASE("outdegree precondition enforced") {
        CHECK_THROWS_AS(n1(gen_gn(4), 3), std::invalid_argument);
        CHECK_THROWS_AS(n2(gen_gn(4), 3), std::invalid_argument);
    }
}

TEST_CASE("path-cycle count bounds over whole classes") {
    // C'(g) <= n^2 k (k+1)!^((n-1)/(k+1)) on the no-multi-edge class
    for (int n = 1; n <= 4; ++n)
        for_each_in_class(GraphClass::simple(n, 2), [&](const Digraph& g) {
            CHECK(le_scaled_factorial_pow(count_path_cycles(g), Rat(n) * n * 2, n - 1, 2));
        });
    for (int n = 1; n <= 3; ++n)
        for_each_in_class(GraphClass::simple(n, 3), [&](const Digraph& g) {
            CHECK(le_scaled_factorial_pow(count_path_cycles(g), Rat(n) * n * 3, n - 1, 3));
        });

    // N1 and N2 caps over the unrestricted outdegree-k class
    for (int k = 2; k <= 3; ++k)
        for (int n = 1; n <= (k == 2 ? 4 : 3); ++n)
            for_each_in_class(GraphClass::outdegree_k(n, k), [&](const Digraph& g) {
                CHECK(le_n1_bound(n1(g, k), n, k));
                CHECK(le_n2_bound(n2(g, k), n, k));
            });
}
