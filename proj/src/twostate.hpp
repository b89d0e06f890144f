#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mdp.hpp"
#include "pi.hpp"

namespace pibound {

/// Parameters of a 2-state k-action MDP in the self-loop form: action a
/// taken at state s stays with probability lam[s][a] and crosses over
/// otherwise, earning reward mu[s][a] either way. Actions are 1-based in
/// the <i, j> policy notation and 0-based in the produced Mdp.
struct TwoStateParams {
    int k = 0;
    Rat gamma;
    std::vector<Rat> lam1, lam2, mu1, mu2;  // index 0 holds action 1

    Mdp to_mdp() const;
};

/// Closed forms for the 2-state value and gain functions (i, j, aprime
/// 1-based; state is 1 or 2).
Rat closed_value(const TwoStateParams& p, int i, int j, int state);
Rat closed_gain(const TwoStateParams& p, int i, int j, int state, int aprime);

/// Instance on which a scripted PI variant walks a Hamiltonian path
/// through all k^2 policies. The canonical instance fixes gamma = 9/10,
/// lam^s_a = a/(k+1), zero rewards for action 1, and each later reward 1
/// below its feasibility threshold; the seeded variant samples from the
/// open feasible ranges instead.
TwoStateParams gen_arbitrary(int k);
TwoStateParams gen_arbitrary_seeded(int k, std::uint64_t seed);

/// Successor in the Hamiltonian visitation order ((i, j) 1-based,
/// defined for every policy except <1,1>).
std::pair<int, int> next_arbitrary(int k, int i, int j);

/// The full order <k,1>, ..., <1,1> (k^2 policies).
std::vector<std::pair<int, int>> arbitrary_sequence(int k);

/// Instance on which a max-gain PI variant evaluates 2k-1 policies:
/// gamma = 1 - 1/(k(2+eps)^(k-1)), self-loop probabilities increasing in
/// a, rewards decreasing, tuned so the one-step gain prefers the action
/// whose long-term value is worst.
TwoStateParams gen_maxgain(int k, const Rat& eps);

/// The order <1,1>, <2,1>, ..., <k,1>, <k,2>, ..., <k,k>.
std::vector<std::pair<int, int>> maxgain_sequence(int k);

/// 1-based <i, j> pairs to 0-based policies.
std::vector<Policy> to_policies(const std::vector<std::pair<int, int>>& seq);

struct TwoStateUbReport {
    int k = 0;
    bool max_gain = false;
    bool exhaustive = false;
    long instances = 0;
    long max_path = 0;      // policies on the longest observed PI-DAG path
    std::string bound;      // the proved cap, as a rational string
    bool pass = false;
    std::string worst_instance_json;
};

/// Longest-path caps for 2-state k-action DMDPs: k^2/2 + 2k - 1 for the
/// full PI-DAG and 7 for the max-gain-restricted DAG. Exhaustive mode
/// sweeps all 2^(2k) transition structures with `trials` sampled reward
/// vectors each (k <= 3); randomized mode samples `trials` instances.
TwoStateUbReport verify_arbitrary_ub(int k, bool exhaustive, long trials, std::uint64_t seed);
TwoStateUbReport verify_maxgain_ub(int k, bool exhaustive, long trials, std::uint64_t seed);

std::string twostate_report_to_json_string(const TwoStateUbReport& r);

}  // namespace pibound
