#pragma once

#include <functional>
#include <set>
#include <vector>

#include "digraph.hpp"
#include "rat.hpp"

namespace pibound {

/// Counting knobs. Counts are exact Int values; `count_cap` aborts a count
/// that would exceed it (guard against exponential blow-up).
struct CountOptions {
    Int count_cap = Int(1000000000);
};

/// Visits each vertex-simple directed cycle once (canonical rotation:
/// starts at its minimum vertex). `weight` is the product of the edge
/// multiplicities along the cycle, i.e. the number of distinct
/// edge-instance cycles with that vertex sequence. Length-1 cycles are
/// self-loops.
void for_each_simple_cycle(const Digraph& g,
                           const std::function<void(const std::vector<int>&, const Int&)>& fn);

/// Visits each vertex-simple directed path (any length >= 0, so every
/// single vertex is visited once) with its multiplicity weight.
void for_each_simple_path(const Digraph& g,
                          const std::function<void(const std::vector<int>&, const Int&)>& fn);

/// C(G): number of directed cycles, multiplicity-weighted.
Int count_cycles(const Digraph& g, const CountOptions& opt = {});
/// C(G, v): cycles passing through v.
Int count_cycles_through_vertex(const Digraph& g, int v, const CountOptions& opt = {});
/// C(G, e) for the multi-edge e = (u, v): cycles through any instance of e.
Int count_cycles_through_edge(const Digraph& g, int u, int v, const CountOptions& opt = {});
/// C(G, E): cycles through at least one edge of E (E given as vertex pairs).
Int count_cycles_through_edge_set(const Digraph& g, const std::set<std::pair<int, int>>& es,
                                  const CountOptions& opt = {});

/// C''(G): simple directed paths, multiplicity-weighted, single-vertex
/// paths included.
Int count_paths(const Digraph& g, const CountOptions& opt = {});
/// Simple s -> t paths; s == t yields 1 (the single-vertex path).
Int count_paths_between(const Digraph& g, int s, int t, const CountOptions& opt = {});

/// C'(G): rooted path-cycles. A rooted path-cycle is a simple path
/// v1..vn (n >= 1, root v1) together with a closing edge instance
/// vn -> vm for some 1 <= m <= n. Identity is (vertex sequence, edge
/// instances); distinct roots give distinct objects.
Int count_path_cycles(const Digraph& g, const CountOptions& opt = {});

/// Path-cycles counted as edge-instance subgraphs instead: rooted copies
/// of one pure cycle collapse to a single object.
Int count_path_cycles_subgraph(const Digraph& g, const CountOptions& opt = {});

/// Visits rooted path-cycles at the vertex-sequence level: (vertices,
/// close_index m as 0-based position, weight = product of instance choices).
void for_each_path_cycle(const Digraph& g,
                         const std::function<void(const std::vector<int>&, int, const Int&)>& fn);

/// N1(G) = C' of the graph with every multiplicity-k multi-edge reduced to
/// multiplicity 1. Requires every outdegree to equal k.
Int n1(const Digraph& g, int k, const CountOptions& opt = {});
/// N2(G) = C'(Skel(G)). Requires every outdegree to equal k.
Int n2(const Digraph& g, int k, const CountOptions& opt = {});

}  // namespace pibound
