#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "cycles.hpp"
#include "digraph.hpp"
#include "mdp.hpp"
#include "pi.hpp"

namespace pibound {

/// The multigraph of a DMDP: states as vertices, one edge instance per
/// state-action pair. The instance index of (s, a) within the multi-edge
/// (s, next(s,a)) is the rank of a among the actions sharing that target.
struct DmdpGraph {
    Digraph graph;
    std::map<std::pair<int, int>, std::vector<int>> edge_actions;  // (u,v) -> ascending actions

    /// ((u, v), instance index) for the edge of (s, a).
    std::pair<std::pair<int, int>, int> instance_of(const Dmdp& m, int s, int a) const;
};

DmdpGraph to_graph(const Dmdp& m);

/// Rooted path-cycle traced by a deterministic walk: states are pairwise
/// distinct with states[0] the root; actions[i] is taken at states[i];
/// the final action leads back to states[close_index].
struct StatePathCycle {
    std::vector<int> states;
    std::vector<int> actions;
    int close_index = 0;

    friend auto operator<=>(const StatePathCycle&, const StatePathCycle&) = default;
};

StatePathCycle trace_path_cycle(const Dmdp& m, const Policy& p, int start);

/// P^pi_s for every state s.
std::vector<StatePathCycle> representation(const Dmdp& m, const Policy& p);

/// Exact value of the root state: discounted prefix rewards plus the
/// geometric sum around the cycle.
Rat path_cycle_value(const Dmdp& m, const StatePathCycle& pc);

/// s is non-branching when all k actions lead to one next state.
bool non_branching(const Dmdp& m, int s);

/// Edge equivalences. Same-source edges are:
///  - equivalent for the arbitrary-selection analysis iff the source is
///    non-branching;
///  - equivalent for the max-gain analysis iff they share the target;
///  - quasi-equal iff they share the target and the reward.
bool edges_equiv_nonbranching(const Dmdp& m, int s1, int a1, int s2, int a2);
bool edges_equiv_same_target(const Dmdp& m, int s1, int a1, int s2, int a2);
bool edges_quasi_equal(const Dmdp& m, int s1, int a1, int s2, int a2);

/// Per same-source-same-target class, the members of maximal reward.
std::vector<std::pair<int, int>> e_max(const Dmdp& m);

/// Lifted equivalences on path-cycles (differ only in equivalent edges).
bool pc_equiv_nonbranching(const Dmdp& m, const StatePathCycle& a, const StatePathCycle& b);
bool pc_equiv_same_target(const Dmdp& m, const StatePathCycle& a, const StatePathCycle& b);

enum class AuditMode { Arbitrary, MaxGain };

struct AuditCheck {
    std::string name;
    bool pass = false;
    std::string observed;
    std::string bound;
};

/// Audit of a recorded improvement sequence: re-checks strict dominance,
/// builds the witness sequence of path-cycles (one new per policy after
/// the first, chosen at the lowest strictly-improved state), verifies
/// witness freshness, the per-class size bounds (kn arbitrary, n+1
/// max-gain) and the trajectory-length bounds kn*N1 / (n+1)*N2.
struct AuditReport {
    AuditMode mode = AuditMode::Arbitrary;
    int n = 0;
    int k = 0;
    size_t length = 0;
    Int n_value;  // N1 or N2 of the DMDP graph
    size_t max_class_size = 0;
    std::vector<AuditCheck> checks;
    std::vector<std::pair<size_t, StatePathCycle>> witnesses;  // (policy index, witness)

    bool pass() const;
};

AuditReport audit_trajectory(const Dmdp& m, const PiTrajectory& t, AuditMode mode,
                             bool check_howard_tight_bound = false);

std::string audit_report_to_json_string(const AuditReport& r);

}  // namespace pibound
