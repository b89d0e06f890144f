#include "cycles.hpp"

#include <algorithm>

namespace pibound {

namespace {

struct CycleWalker {
    const Digraph& g;
    const std::function<void(const std::vector<int>&, const Int&)>& fn;
    std::vector<int> path;
    std::vector<bool> used;
    int anchor = 0;

    CycleWalker(const Digraph& gg, const std::function<void(const std::vector<int>&, const Int&)>& f)
        : g(gg), fn(f), used(static_cast<size_t>(gg.n_vertices()), false) {}

    void extend(int v, const Int& weight) {
        for (const auto& [w, m] : g.out(v)) {
            if (w == anchor && !path.empty()) {
                // closing edge; self-loops handled separately below
                if (path.size() >= 2 || w != v) fn(path, weight * m);
                continue;
            }
            if (w <= anchor || used[static_cast<size_t>(w)]) continue;
            used[static_cast<size_t>(w)] = true;
            path.push_back(w);
            extend(w, weight * m);
            path.pop_back();
            used[static_cast<size_t>(w)] = false;
        }
    }

    void run() {
        for (anchor = 0; anchor < g.n_vertices(); ++anchor) {
            long loop = g.mult(anchor, anchor);
            if (loop > 0) fn({anchor}, Int(loop));
            path = {anchor};
            used.assign(used.size(), false);
            used[static_cast<size_t>(anchor)] = true;
            extend(anchor, 1);
        }
    }
};

void add_capped(Int& acc, const Int& inc, const CountOptions& opt) {
    acc += inc;
    if (acc > opt.count_cap) throw CapExceeded("count cap exceeded");
}

void check_outdegree_k(const Digraph& g, int k) {
    for (int v = 0; v < g.n_vertices(); ++v)
        if (g.outdegree(v) != k) throw std::invalid_argument("graph is not outdegree-k");
}

}  // namespace

void for_each_simple_cycle(const Digraph& g,
                           const std::function<void(const std::vector<int>&, const Int&)>& fn) {
    CycleWalker walker(g, fn);
    walker.run();
}

void for_each_simple_path(const Digraph& g,
                          const std::function<void(const std::vector<int>&, const Int&)>& fn) {
    std::vector<int> path;
    std::vector<bool> used(static_cast<size_t>(g.n_vertices()), false);
    std::function<void(int, const Int&)> extend = [&](int v, const Int& weight) {
        fn(path, weight);
        for (const auto& [w, m] : g.out(v)) {
            if (w == v || used[static_cast<size_t>(w)]) continue;
            used[static_cast<size_t>(w)] = true;
            path.push_back(w);
            extend(w, weight * m);
            path.pop_back();
            used[static_cast<size_t>(w)] = false;
        }
    };
    for (int s = 0; s < g.n_vertices(); ++s) {
        path = {s};
        used.assign(used.size(), false);
        used[static_cast<size_t>(s)] = true;
        extend(s, 1);
    }
}

Int count_cycles(const Digraph& g, const CountOptions& opt) {
    Int total = 0;
    for_each_simple_cycle(g, [&](const std::vector<int>&, const Int& w) { add_capped(total, w, opt); });
    return total;
}

Int count_cycles_through_vertex(const Digraph& g, int v, const CountOptions& opt) {
    Int total = 0;
    for_each_simple_cycle(g, [&](const std::vector<int>& verts, const Int& w) {
        if (std::find(verts.begin(), verts.end(), v) != verts.end()) add_capped(total, w, opt);
    });
    return total;
}

Int count_cycles_through_edge(const Digraph& g, int u, int v, const CountOptions& opt) {
    std::set<std::pair<int, int>> es{{u, v}};
    return count_cycles_through_edge_set(g, es, opt);
}

Int count_cycles_through_edge_set(const Digraph& g, const std::set<std::pair<int, int>>& es,
                                  const CountOptions& opt) {
    Int total = 0;
    for_each_simple_cycle(g, [&](const std::vector<int>& verts, const Int& w) {
        size_t n = verts.size();
        for (size_t i = 0; i < n; ++i) {
            int a = verts[i];
            int b = verts[(i + 1) % n];
            if (n == 1) b = a;  // self-loop
            if (es.count({a, b})) {
                add_capped(total, w, opt);
                return;
            }
        }
    });
    return total;
}

Int count_paths(const Digraph& g, const CountOptions& opt) {
    Int total = 0;
    for_each_simple_path(g, [&](const std::vector<int>&, const Int& w) { add_capped(total, w, opt); });
    return total;
}

Int count_paths_between(const Digraph& g, int s, int t, const CountOptions& opt) {
    Int total = 0;
    for_each_simple_path(g, [&](const std::vector<int>& verts, const Int& w) {
        if (verts.front() == s && verts.back() == t) add_capped(total, w, opt);
    });
    return total;
}

void for_each_path_cycle(const Digraph& g,
                         const std::function<void(const std::vector<int>&, int, const Int&)>& fn) {
    for_each_simple_path(g, [&](const std::vector<int>& verts, const Int& w) {
        int last = verts.back();
        for (int m = 0; m < static_cast<int>(verts.size()); ++m) {
            long closing = g.mult(last, verts[static_cast<size_t>(m)]);
            if (closing > 0) fn(verts, m, w * closing);
        }
    });
}

Int count_path_cycles(const Digraph& g, const CountOptions& opt) {
    Int total = 0;
    for_each_path_cycle(g, [&](const std::vector<int>&, int, const Int& w) { add_capped(total, w, opt); });
    return total;
}

Int count_path_cycles_subgraph(const Digraph& g, const CountOptions& opt) {
    // A rooted path-cycle with a proper tail (m > 1) is determined by its
    // edge set; a pure cycle on c vertices appears under c distinct roots.
    Int total = count_path_cycles(g, opt);
    for_each_simple_cycle(g, [&](const std::vector<int>& verts, const Int& w) {
        total -= w * Int(static_cast<long>(verts.size() - 1));
    });
    return total;
}

Int n1(const Digraph& g, int k, const CountOptions& opt) {
    check_outdegree_k(g, k);
    Digraph reduced = g;
    for (const auto& [uv, m] : g.edges())
        if (m == k) reduced.set_mult(uv.first, uv.second, 1);
    return count_path_cycles(reduced, opt);
}

Int n2(const Digraph& g, int k, const CountOptions& opt) {
    check_outdegree_k(g, k);
    return count_path_cycles(skeleton(g), opt);
}

}  // namespace pibound
