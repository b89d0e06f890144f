#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rat.hpp"

namespace pibound {

/// Directed multigraph on vertices 0..n-1. Self-loops allowed; parallel
/// edges are stored as a multiplicity per ordered pair. Entries with
/// multiplicity 0 are absent. Edge instances within a multi-edge are
/// identified as (u, v, index) with index in 0..mult-1.
class Digraph {
public:
    Digraph() = default;
    explicit Digraph(int n) : adj_(static_cast<size_t>(n)) {}

    int n_vertices() const { return static_cast<int>(adj_.size()); }

    long mult(int u, int v) const {
        check_vertex(u);
        check_vertex(v);
        auto it = adj_[static_cast<size_t>(u)].find(v);
        return it == adj_[static_cast<size_t>(u)].end() ? 0 : it->second;
    }

    void set_mult(int u, int v, long m);
    void add_edge(int u, int v, long m = 1) { set_mult(u, v, mult(u, v) + m); }

    long outdegree(int u) const;  // multiplicity-weighted
    long indegree(int v) const;

    /// Out-neighbourhood of u as an ordered (target -> multiplicity) map.
    const std::map<int, long>& out(int u) const {
        check_vertex(u);
        return adj_[static_cast<size_t>(u)];
    }

    /// All edges as ((u, v), mult), sorted by (u, v).
    std::vector<std::pair<std::pair<int, int>, long>> edges() const;
    long edge_instance_count() const;  // sum of multiplicities

    bool has_multi_edge() const;  // any multiplicity >= 2
    bool has_self_loop() const;

    bool operator==(const Digraph&) const = default;

private:
    void check_vertex(int v) const {
        if (v < 0 || v >= n_vertices()) throw std::out_of_range("vertex id out of range");
    }
    std::vector<std::map<int, long>> adj_;
};

/// Multiplicities reduced to 1; vertex set unchanged.
Digraph skeleton(const Digraph& g);

/// Induced subgraph on `keep` (given in increasing order); vertices are
/// renumbered by their rank in `keep`.
Digraph induced_subgraph(const Digraph& g, const std::vector<int>& keep);

/// Merge u and v into one vertex w, dropping all edges inside {u,v}
/// except that loops (v,u), (u,u), (v,v) fold into a loop on w.
/// Multiplicities of merged parallel incidences add. w takes the id
/// min(u,v); vertices above max(u,v) shift down by one.
/// Requires u != v and mult(u,v) >= 1.
Digraph contract_edge(const Digraph& g, int u, int v);

/// Contractibility tests on graphs without multi-edges.
/// (u,v) is in-contractible iff no third vertex sends edges to both u and v;
/// out-contractible iff no third vertex receives edges from both.
bool is_in_contractible(const Digraph& g, int u, int v);
bool is_out_contractible(const Digraph& g, int u, int v);
bool is_contractible(const Digraph& g, int u, int v);

struct GraphClass {
    enum class Kind {
        Simple,      // no multi-edges, outdegree at most k
        Multi,       // outdegree exactly k, mult between distinct vertices <= k-1
        OutdegreeK,  // outdegree exactly k
    };
    Kind kind;
    int n;
    int k;

    static GraphClass simple(int n, int k) { return {Kind::Simple, n, k}; }
    static GraphClass multi(int n, int k) { return {Kind::Multi, n, k}; }
    static GraphClass outdegree_k(int n, int k) { return {Kind::OutdegreeK, n, k}; }
};

bool class_contains(const GraphClass& c, const Digraph& g);

/// Number of members of the class (product of per-vertex choices).
Int class_size(const GraphClass& c);

/// Yields every member exactly once, iterating per-vertex out-multisets in
/// lexicographic order. Throws CapExceeded if class_size exceeds `cap`.
void for_each_in_class(const GraphClass& c, const std::function<void(const Digraph&)>& fn,
                       const Int& cap = Int(100000000));

/// The two 3-vertex obstructions used by the structure analysis: H1 has
/// edge set {(1,0),(2,0),(1,2),(2,1)}, H2 has {(0,1),(0,2),(1,2),(2,1)}.
enum class Forbidden { H1, H2 };
Digraph forbidden_graph(Forbidden h);

/// A vertex mapping (image of H's vertices 0,1,2) witnessing a subgraph of
/// skeleton(g) isomorphic to H, or nullopt.
std::optional<std::array<int, 3>> find_forbidden_subgraph(const Digraph& g, Forbidden h);

/// Weak connectivity (underlying undirected graph); components are sorted
/// vertex lists, ordered by smallest member.
std::vector<std::vector<int>> weak_components(const Digraph& g);

/// Brute-force isomorphism over vertex permutations; intended for n <= 8.
bool is_isomorphic(const Digraph& g, const Digraph& h);

// JSON: {"n": int, "edges": [[u, v, mult], ...]}
Digraph digraph_from_json_string(const std::string& text);
std::string digraph_to_json_string(const Digraph& g);
std::string digraph_to_dot(const Digraph& g);

}  // namespace pibound
