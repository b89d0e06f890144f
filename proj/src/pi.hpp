#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mdp.hpp"

namespace pibound {

/// A switching rule picks the states to switch and the new action per
/// switched state. State selection is unrestricted in general; action
/// selection is either arbitrary (lowest improving index / seeded random)
/// or max-gain. Scripted rules replay a fixed policy sequence and abort
/// if any scripted step is not a legal improvement.
struct SwitchingRule {
    enum class States { All, HighestIndex, SingleBestGain, Scripted, RandomSubset };
    enum class Actions { LowestImproving, MaxGain, Random };

    States states = States::All;
    Actions actions = Actions::LowestImproving;
    std::vector<Policy> script;
    bool script_max_gain = false;  // scripted switches must also be exact max-gain picks
    bool script_fallback = false;  // continue all-states switching after the script ends
    std::uint64_t seed = 0;

    static SwitchingRule howard() {
        return {States::All, Actions::LowestImproving, {}, false, false, 0};
    }
    static SwitchingRule maxgain_howard() {
        return {States::All, Actions::MaxGain, {}, false, false, 0};
    }
    static SwitchingRule maxgain_simplex() {
        return {States::SingleBestGain, Actions::MaxGain, {}, false, false, 0};
    }
    /// Replays `seq`; a step that is not a legal improvement (or, with
    /// max_gain, not an exact argmax pick) aborts. Once the script ends, a
    /// remaining non-empty improvable set is an error unless `fallback`
    /// lets the run continue by switching every improvable state.
    static SwitchingRule scripted(std::vector<Policy> seq, bool max_gain = false,
                                  bool fallback = false) {
        return {States::Scripted, max_gain ? Actions::MaxGain : Actions::LowestImproving,
                std::move(seq), max_gain, fallback, 0};
    }
    static SwitchingRule random(std::uint64_t seed) {
        return {States::RandomSubset, Actions::Random, {}, false, false, seed};
    }
};

struct PiTrajectory {
    std::vector<Policy> policies;
    std::vector<ValueFunction> values;                       // per policy
    std::vector<std::vector<std::pair<int, int>>> switches;  // per step
    size_t length() const { return policies.size(); }
};

/// Runs policy iteration from `init` until the improvable set is empty.
/// Every step goes through improve() and is therefore checked exactly.
/// step_cap <= 0 means the trivial cap k^n; exceeding the cap throws
/// (termination is guaranteed, so this is a bug tripwire).
PiTrajectory run_pi(const Mdp& m, const Policy& init, const SwitchingRule& rule,
                    long step_cap = 0);

/// The policy improvement DAG: all k^n policies, an edge pi -> pi' for
/// every single policy-improvement step. With max_gain_only, edges are
/// kept only when every switched action attains the exact maximum gain at
/// its state (ties keep all argmax actions).
struct PiDag {
    int n = 0;
    int k = 0;
    bool max_gain_only = false;
    long n_policies = 0;
    std::vector<std::vector<long>> succ;  // by policy code, sorted

    long code(const Policy& p) const;
    Policy decode(long code) const;
    long edge_count() const;
    std::vector<long> sink_codes() const;
};

PiDag build_pidag(const Mdp& m, bool max_gain_only, long cap = 4096);

/// Maximum number of policies on a directed path (topological DP),
/// optionally restricted to paths starting at `from`. Returns the count
/// and one witness path.
std::pair<long, std::vector<Policy>> longest_path(const PiDag& d,
                                                  const std::optional<Policy>& from = std::nullopt);

/// Every consecutive trajectory pair must be an edge of the DAG.
bool trajectory_in_dag(const PiDag& d, const PiTrajectory& t);

// JSON: {"policies": [[a,...],...], "switches": [[[s,a],...],...],
//        "values": [["p/q",...],...]} (switches/values optional on input)
std::string trajectory_to_json_string(const PiTrajectory& t);
PiTrajectory trajectory_from_json_string(const std::string& text);

std::string pidag_to_dot(const PiDag& d);

}  // namespace pibound
