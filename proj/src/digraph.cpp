#include "digraph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace pibound {

void Digraph::set_mult(int u, int v, long m) {
    check_vertex(u);
    check_vertex(v);
    if (m < 0) throw std::invalid_argument("negative multiplicity");
    auto& row = adj_[static_cast<size_t>(u)];
    if (m == 0)
        row.erase(v);
    else
        row[v] = m;
}

long Digraph::outdegree(int u) const {
    const auto& row = out(u);
    long d = 0;
    for (const auto& [v, m] : row) d += m;
    return d;
}

long Digraph::indegree(int v) const {
    check_vertex(v);
    long d = 0;
    for (int u = 0; u < n_vertices(); ++u) {
        auto it = adj_[static_cast<size_t>(u)].find(v);
        if (it != adj_[static_cast<size_t>(u)].end()) d += it->second;
    }
    return d;
}

std::vector<std::pair<std::pair<int, int>, long>> Digraph::edges() const {
    std::vector<std::pair<std::pair<int, int>, long>> out;
    for (int u = 0; u < n_vertices(); ++u)
        for (const auto& [v, m] : adj_[static_cast<size_t>(u)]) out.push_back({{u, v}, m});
    return out;
}

long Digraph::edge_instance_count() const {
    long total = 0;
    for (int u = 0; u < n_vertices(); ++u)
        for (const auto& [v, m] : adj_[static_cast<size_t>(u)]) total += m;
    return total;
}

bool Digraph::has_multi_edge() const {
    for (int u = 0; u < n_vertices(); ++u)
        for (const auto& [v, m] : adj_[static_cast<size_t>(u)])
            if (m >= 2) return true;
    return false;
}

bool Digraph::has_self_loop() const {
    for (int u = 0; u < n_vertices(); ++u)
        if (mult(u, u) > 0) return true;
    return false;
}

Digraph skeleton(const Digraph& g) {
    Digraph s(g.n_vertices());
    for (const auto& [uv, m] : g.edges()) s.set_mult(uv.first, uv.second, 1);
    return s;
}

Digraph induced_subgraph(const Digraph& g, const std::vector<int>& keep) {
    std::map<int, int> rank;
    for (int i = 0; i < static_cast<int>(keep.size()); ++i) rank[keep[static_cast<size_t>(i)]] = i;
    Digraph out(static_cast<int>(keep.size()));
    for (const auto& [uv, m] : g.edges()) {
        auto iu = rank.find(uv.first);
        auto iv = rank.find(uv.second);
        if (iu != rank.end() && iv != rank.end()) out.set_mult(iu->second, iv->second, m);
    }
    return out;
}

Digraph contract_edge(const Digraph& g, int u, int v) {
    if (u == v) throw std::invalid_argument("cannot contract a self-loop");
    if (g.mult(u, v) < 1) throw std::invalid_argument("cannot contract an absent edge");
    int a = std::min(u, v), b = std::max(u, v);
    auto remap = [&](int x) { return x > b ? x - 1 : x; };  // w sits at id a
    Digraph out(g.n_vertices() - 1);
    for (const auto& [uv, m] : g.edges()) {
        auto [x, y] = uv;
        bool xin = (x == u || x == v);
        bool yin = (y == u || y == v);
        if (xin && yin) {
            // loop on w iff the edge was (v,u), (u,u) or (v,v)
            if (!(x == u && y == v)) out.add_edge(a, a, m);
        } else if (xin) {
            out.add_edge(a, remap(y), m);
        } else if (yin) {
            out.add_edge(remap(x), a, m);
        } else {
            out.add_edge(remap(x), remap(y), m);
        }
    }
    return out;
}

static void check_contractibility_args(const Digraph& g, int u, int v) {
    if (g.has_multi_edge()) throw std::invalid_argument("contractibility requires multiplicities <= 1");
    if (u == v) throw std::invalid_argument("contractibility undefined for self-loops");
    if (g.mult(u, v) < 1) throw std::invalid_argument("edge not present");
}

bool is_in_contractible(const Digraph& g, int u, int v) {
    check_contractibility_args(g, u, v);
    for (int x = 0; x < g.n_vertices(); ++x) {
        if (x == u || x == v) continue;
        if (g.mult(x, u) > 0 && g.mult(x, v) > 0) return false;
    }
    return true;
}

bool is_out_contractible(const Digraph& g, int u, int v) {
    check_contractibility_args(g, u, v);
    for (int x = 0; x < g.n_vertices(); ++x) {
        if (x == u || x == v) continue;
        if (g.mult(u, x) > 0 && g.mult(v, x) > 0) return false;
    }
    return true;
}

bool is_contractible(const Digraph& g, int u, int v) {
    return is_in_contractible(g, u, v) && is_out_contractible(g, u, v);
}

bool class_contains(const GraphClass& c, const Digraph& g) {
    if (g.n_vertices() != c.n) return false;
    switch (c.kind) {
        case GraphClass::Kind::Simple:
            if (g.has_multi_edge()) return false;
            for (int u = 0; u < c.n; ++u)
                if (g.outdegree(u) > c.k) return false;
            return true;
        case GraphClass::Kind::Multi:
            for (int u = 0; u < c.n; ++u) {
                if (g.outdegree(u) != c.k) return false;
                for (const auto& [v, m] : g.out(u))
                    if (v != u && m > c.k - 1) return false;
            }
            return true;
        case GraphClass::Kind::OutdegreeK:
            for (int u = 0; u < c.n; ++u)
                if (g.outdegree(u) != c.k) return false;
            return true;
    }
    return false;
}

// Per-vertex out-neighbourhood options, each as a (target -> mult) map,
// listed in lexicographic order of the multiset (targets ascending).
static std::vector<std::vector<std::pair<int, long>>> vertex_options(const GraphClass& c, int u) {
    std::vector<std::vector<std::pair<int, long>>> options;
    std::vector<std::pair<int, long>> current;

    // choose targets in increasing order; `budget` edges left to place
    std::function<void(int, int)> rec = [&](int next_target, int budget) {
        if (c.kind == GraphClass::Kind::Simple) {
            options.push_back(current);  // any size <= k is allowed
        } else if (budget == 0) {
            options.push_back(current);
        }
        if (budget == 0 || next_target >= c.n) return;
        for (int v = next_target; v < c.n; ++v) {
            long max_m = budget;
            if (c.kind == GraphClass::Kind::Simple) max_m = 1;
            if (c.kind == GraphClass::Kind::Multi && v != u) max_m = std::min<long>(max_m, c.k - 1);
            for (long m = 1; m <= max_m; ++m) {
                current.push_back({v, m});
                rec(v + 1, budget - static_cast<int>(m));
                current.pop_back();
            }
        }
    };
    rec(0, c.k);
    return options;
}

Int class_size(const GraphClass& c) {
    if (c.n == 0) return 1;
    Int total = 1;
    for (int u = 0; u < c.n; ++u) total *= Int(static_cast<long>(vertex_options(c, u).size()));
    return total;
}

void for_each_in_class(const GraphClass& c, const std::function<void(const Digraph&)>& fn,
                       const Int& cap) {
    if (class_size(c) > cap) throw CapExceeded("class enumeration cap exceeded");
    if (c.n == 0) {
        fn(Digraph(0));
        return;
    }
    std::vector<std::vector<std::vector<std::pair<int, long>>>> opts;
    for (int u = 0; u < c.n; ++u) opts.push_back(vertex_options(c, u));

    std::vector<size_t> pick(static_cast<size_t>(c.n), 0);
    for (;;) {
        Digraph g(c.n);
        for (int u = 0; u < c.n; ++u)
            for (const auto& [v, m] : opts[static_cast<size_t>(u)][pick[static_cast<size_t>(u)]])
                g.set_mult(u, v, m);
        fn(g);
        int pos = c.n - 1;
        while (pos >= 0) {
            if (++pick[static_cast<size_t>(pos)] < opts[static_cast<size_t>(pos)].size()) break;
            pick[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
}

Digraph forbidden_graph(Forbidden h) {
    Digraph g(3);
    if (h == Forbidden::H1) {
        g.set_mult(1, 0, 1);
        g.set_mult(2, 0, 1);
    } else {
        g.set_mult(0, 1, 1);
        g.set_mult(0, 2, 1);
    }
    g.set_mult(1, 2, 1);
    g.set_mult(2, 1, 1);
    return g;
}

std::optional<std::array<int, 3>> find_forbidden_subgraph(const Digraph& g, Forbidden h) {
    Digraph s = skeleton(g);
    Digraph pat = forbidden_graph(h);
    int n = s.n_vertices();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                if (a == b || a == c || b == c) continue;
                std::array<int, 3> img{a, b, c};
                bool ok = true;
                for (const auto& [uv, m] : pat.edges()) {
                    (void)m;
                    if (s.mult(img[static_cast<size_t>(uv.first)],
                               img[static_cast<size_t>(uv.second)]) < 1) {
                        ok = false;
                        break;
                    }
                }
                if (ok) return img;
            }
    return std::nullopt;
}

std::vector<std::vector<int>> weak_components(const Digraph& g) {
    int n = g.n_vertices();
    std::vector<int> parent(static_cast<size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    };
    for (const auto& [uv, m] : g.edges()) {
        (void)m;
        parent[static_cast<size_t>(find(uv.first))] = find(uv.second);
    }
    std::map<int, std::vector<int>> groups;
    for (int v = 0; v < n; ++v) groups[find(v)].push_back(v);
    std::vector<std::vector<int>> out;
    for (auto& [root, vs] : groups) out.push_back(std::move(vs));
    return out;
}

bool is_isomorphic(const Digraph& g, const Digraph& h) {
    int n = g.n_vertices();
    if (h.n_vertices() != n) return false;
    if (g.edge_instance_count() != h.edge_instance_count()) return false;
    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int u = 0; u < n && ok; ++u)
            for (const auto& [v, m] : g.out(u)) {
                if (h.mult(perm[static_cast<size_t>(u)], perm[static_cast<size_t>(v)]) != m) {
                    ok = false;
                    break;
                }
            }
        // equal instance totals plus exact multiplicity match on every image
        // pair rules out extra edges in h
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

Digraph digraph_from_json_string(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    Digraph g(j.at("n").get<int>());
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 3) throw std::invalid_argument("edge must be [u, v, mult]");
        g.set_mult(e[0].get<int>(), e[1].get<int>(), e[2].get<long>());
    }
    return g;
}

std::string digraph_to_json_string(const Digraph& g) {
    nlohmann::json j;
    j["n"] = g.n_vertices();
    j["edges"] = nlohmann::json::array();
    for (const auto& [uv, m] : g.edges()) j["edges"].push_back({uv.first, uv.second, m});
    return j.dump();
}

std::string digraph_to_dot(const Digraph& g) {
    std::ostringstream os;
    os << "digraph g {\n";
    for (int v = 0; v < g.n_vertices(); ++v) os << "  " << v << ";\n";
    for (const auto& [uv, m] : g.edges())
        os << "  " << uv.first << " -> " << uv.second << " [label=\"" << m << "\"];\n";
    os << "}\n";
    return os.str();
}

}  // namespace pibound
