#include "dmdp_analysis.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "extremal.hpp"

namespace pibound {

std::pair<std::pair<int, int>, int> DmdpGraph::instance_of(const Dmdp& m, int s, int a) const {
    std::pair<int, int> key{s, m.next[static_cast<size_t>(s)][static_cast<size_t>(a)]};
    const auto& actions = edge_actions.at(key);
    auto it = std::find(actions.begin(), actions.end(), a);
    if (it == actions.end()) throw std::logic_error("action not registered on its edge");
    return {key, static_cast<int>(it - actions.begin())};
}

DmdpGraph to_graph(const Dmdp& m) {
    m.validate();
    DmdpGraph out;
    out.graph = Digraph(m.n);
    for (int s = 0; s < m.n; ++s)
        for (int a = 0; a < m.k; ++a) {
            int t = m.next[static_cast<size_t>(s)][static_cast<size_t>(a)];
            out.graph.add_edge(s, t, 1);
            out.edge_actions[{s, t}].push_back(a);
        }
    return out;
}

StatePathCycle trace_path_cycle(const Dmdp& m, const Policy& p, int start) {
    StatePathCycle pc;
    std::vector<int> pos(static_cast<size_t>(m.n), -1);
    int s = start;
    for (;;) {
        if (pos[static_cast<size_t>(s)] >= 0) {
            pc.close_index = pos[static_cast<size_t>(s)];
            break;
        }
        pos[static_cast<size_t>(s)] = static_cast<int>(pc.states.size());
        pc.states.push_back(s);
        pc.actions.push_back(p[static_cast<size_t>(s)]);
        s = m.next[static_cast<size_t>(s)][static_cast<size_t>(p[static_cast<size_t>(s)])];
    }
    return pc;
}

std::vector<StatePathCycle> representation(const Dmdp& m, const Policy& p) {
    std::vector<StatePathCycle> out;
    for (int s = 0; s < m.n; ++s) out.push_back(trace_path_cycle(m, p, s));
    return out;
}

Rat path_cycle_value(const Dmdp& m, const StatePathCycle& pc) {
    int len = static_cast<int>(pc.states.size());
    int tail = pc.close_index;  // edges before the cycle
    auto reward = [&](int i) {
        return m.R[static_cast<size_t>(pc.states[static_cast<size_t>(i)])]
                  [static_cast<size_t>(pc.actions[static_cast<size_t>(i)])];
    };
    Rat gpow = 1;
    Rat prefix = 0;
    for (int i = 0; i < tail; ++i) {
        prefix += gpow * reward(i);
        gpow *= m.gamma;
    }
    Rat cycle_sum = 0;
    Rat gcyc = 1;
    for (int i = tail; i < len; ++i) {
        cycle_sum += gcyc * reward(i);
        gcyc *= m.gamma;
    }
    // gpow = gamma^tail, gcyc = gamma^(cycle length)
    Rat v = prefix + gpow * cycle_sum / (1 - gcyc);
    v.canonicalize();
    return v;
}

bool non_branching(const Dmdp& m, int s) {
    int t = m.next[static_cast<size_t>(s)][0];
    for (int a = 1; a < m.k; ++a)
        if (m.next[static_cast<size_t>(s)][static_cast<size_t>(a)] != t) return false;
    return true;
}

bool edges_equiv_nonbranching(const Dmdp& m, int s1, int a1, int s2, int a2) {
    if (s1 != s2) return false;
    if (a1 == a2) return true;
    return non_branching(m, s1);
}

bool edges_equiv_same_target(const Dmdp& m, int s1, int a1, int s2, int a2) {
    if (s1 != s2) return false;
    return m.next[static_cast<size_t>(s1)][static_cast<size_t>(a1)] ==
           m.next[static_cast<size_t>(s2)][static_cast<size_t>(a2)];
}

bool edges_quasi_equal(const Dmdp& m, int s1, int a1, int s2, int a2) {
    return edges_equiv_same_target(m, s1, a1, s2, a2) &&
           m.R[static_cast<size_t>(s1)][static_cast<size_t>(a1)] ==
               m.R[static_cast<size_t>(s2)][static_cast<size_t>(a2)];
}

std::vector<std::pair<int, int>> e_max(const Dmdp& m) {
    std::vector<std::pair<int, int>> out;
    for (int s = 0; s < m.n; ++s) {
        // classes keyed by target
        std::map<int, Rat> best;
        for (int a = 0; a < m.k; ++a) {
            int t = m.next[static_cast<size_t>(s)][static_cast<size_t>(a)];
            const Rat& r = m.R[static_cast<size_t>(s)][static_cast<size_t>(a)];
            auto it = best.find(t);
            if (it == best.end() || r > it->second) best[t] = r;
        }
        for (int a = 0; a < m.k; ++a) {
            int t = m.next[static_cast<size_t>(s)][static_cast<size_t>(a)];
            if (m.R[static_cast<size_t>(s)][static_cast<size_t>(a)] == best[t]) out.push_back({s, a});
        }
    }
    return out;
}

namespace {

/// Both lifted equivalences force identical vertex traces; the relations
/// differ only in which action substitutions are allowed.
bool same_trace(const StatePathCycle& a, const StatePathCycle& b) {
    return a.states == b.states && a.close_index == b.close_index;
}

}  // namespace

bool pc_equiv_nonbranching(const Dmdp& m, const StatePathCycle& a, const StatePathCycle& b) {
    if (!same_trace(a, b)) return false;
    for (size_t i = 0; i < a.actions.size(); ++i)
        if (a.actions[i] != b.actions[i] && !non_branching(m, a.states[i])) return false;
    return true;
}

bool pc_equiv_same_target(const Dmdp& m, const StatePathCycle& a, const StatePathCycle& b) {
    // equal traces pin every edge's source and target, so any action
    // difference is automatically between same-target edges
    (void)m;
    return same_trace(a, b);
}

bool AuditReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const AuditCheck& c) { return c.pass; });
}

AuditReport audit_trajectory(const Dmdp& m, const PiTrajectory& t, AuditMode mode,
                             bool check_howard_tight_bound) {
    m.validate();
    if (t.policies.empty()) throw std::invalid_argument("empty trajectory");
    Mdp mm = m.to_mdp();

    AuditReport r;
    r.mode = mode;
    r.n = m.n;
    r.k = m.k;
    r.length = t.policies.size();

    std::vector<ValueFunction> values;
    for (const Policy& p : t.policies) values.push_back(evaluate(mm, p));

    // strict dominance along the sequence
    bool increasing = true;
    for (size_t i = 0; i + 1 < values.size(); ++i)
        if (compare_values(values[i], values[i + 1]) != PolicyOrder::Less) increasing = false;
    r.checks.push_back({"strictly-increasing", increasing, "", ""});

    // witness sequence: lowest strictly-improved state per step
    std::vector<std::set<StatePathCycle>> reps;
    for (const Policy& p : t.policies) {
        auto rep = representation(m, p);
        reps.emplace_back(rep.begin(), rep.end());
    }
    std::vector<StatePathCycle> witnesses;
    bool fresh = true;
    {
        StatePathCycle w0 = trace_path_cycle(m, t.policies[0], 0);
        witnesses.push_back(w0);
        r.witnesses.push_back({0, w0});
    }
    for (size_t i = 1; i < t.policies.size(); ++i) {
        int s_star = -1;
        for (int s = 0; s < m.n && s_star < 0; ++s)
            if (values[i][static_cast<size_t>(s)] > values[i - 1][static_cast<size_t>(s)]) s_star = s;
        if (s_star < 0) {
            fresh = false;
            break;
        }
        StatePathCycle w = trace_path_cycle(m, t.policies[i], s_star);
        for (size_t j = 0; j < i; ++j)
            if (reps[j].count(w)) fresh = false;
        witnesses.push_back(w);
        r.witnesses.push_back({i, w});
    }
    r.checks.push_back({"new-path-cycle-witnesses", fresh,
                        std::to_string(witnesses.size()) + " witnesses", ""});

    // class sizes under the mode's equivalence. Classes are keyed by the
    // vertex trace, plus the branching-state actions for the arbitrary mode.
    std::map<std::vector<int>, size_t> class_count;
    for (const StatePathCycle& w : witnesses) {
        std::vector<int> key = w.states;
        key.push_back(-1);
        key.push_back(w.close_index);
        if (mode == AuditMode::Arbitrary) {
            key.push_back(-2);
            for (size_t i = 0; i < w.states.size(); ++i)
                if (!non_branching(m, w.states[i])) key.push_back(w.actions[i]);
        }
        ++class_count[key];
    }
    size_t max_class = 0;
    for (const auto& [key, cnt] : class_count) max_class = std::max(max_class, cnt);
    r.max_class_size = max_class;

    size_t class_bound = mode == AuditMode::Arbitrary
                             ? static_cast<size_t>(m.k) * static_cast<size_t>(m.n)
                             : static_cast<size_t>(m.n) + 1;
    r.checks.push_back({mode == AuditMode::Arbitrary ? "class-size-at-most-kn"
                                                     : "class-size-at-most-n-plus-1",
                        max_class <= class_bound, std::to_string(max_class),
                        std::to_string(class_bound)});

    // length bound against N1 / N2
    DmdpGraph gm = to_graph(m);
    Int nv = mode == AuditMode::Arbitrary ? n1(gm.graph, m.k) : n2(gm.graph, m.k);
    r.n_value = nv;
    Int len_bound = Int(static_cast<long>(class_bound)) * nv;
    r.checks.push_back({mode == AuditMode::Arbitrary ? "length-at-most-kn-N1"
                                                     : "length-at-most-n-plus-1-N2",
                        Int(static_cast<long>(r.length)) <= len_bound,
                        std::to_string(r.length), len_bound.get_str()});

    if (check_howard_tight_bound) {
        // 1 + n^2 k (k+1)!^((n-1)/(k+1)) for runs that switch every
        // improvable state with max-gain selection
        bool ok = r.length == 0 ||
                  le_scaled_factorial_pow(Int(static_cast<long>(r.length) - 1),
                                          Rat(m.n) * m.n * m.k, m.n - 1, m.k);
        r.checks.push_back({"howard-tight-bound", ok, std::to_string(r.length), ""});

        // observational: repeated same-target classes beyond the first witness
        std::map<std::vector<int>, size_t> tgt_count;
        for (size_t i = 1; i < witnesses.size(); ++i) {
            std::vector<int> key = witnesses[i].states;
            key.push_back(-1);
            key.push_back(witnesses[i].close_index);
            ++tgt_count[key];
        }
        size_t repeats = 0;
        for (const auto& [key, cnt] : tgt_count)
            if (cnt > 1) repeats += cnt - 1;
        r.checks.push_back({"howard-no-equivalent-witnesses-observed", true,
                            std::to_string(repeats) + " repeats", "informational"});
    }
    return r;
}

std::string audit_report_to_json_string(const AuditReport& r) {
    nlohmann::json j;
    j["mode"] = r.mode == AuditMode::Arbitrary ? "arbitrary" : "maxgain";
    j["n"] = r.n;
    j["k"] = r.k;
    j["length"] = r.length;
    j["n_value"] = r.n_value.get_str();
    j["max_class_size"] = r.max_class_size;
    j["pass"] = r.pass();
    j["checks"] = nlohmann::json::array();
    for (const auto& c : r.checks)
        j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"observed", c.observed},
                               {"bound", c.bound}});
    j["witnesses"] = nlohmann::json::array();
    for (const auto& [idx, w] : r.witnesses)
        j["witnesses"].push_back({{"policy_index", idx},
                                  {"states", w.states},
                                  {"actions", w.actions},
                                  {"close_index", w.close_index}});
    return j.dump();
}

}  // namespace pibound
