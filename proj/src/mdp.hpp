#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rat.hpp"

namespace pibound {

/// Finite MDP with exact rational transition rows and rewards. Every
/// transition row sums to exactly 1 and gamma < 1, so policy evaluation
/// has a unique exact solution.
struct Mdp {
    int n = 0;  // states
    int k = 0;  // actions, all available from every state
    std::vector<std::vector<std::vector<Rat>>> T;  // [s][a][s']
    std::vector<std::vector<Rat>> R;               // [s][a]
    Rat gamma;

    void validate() const;
};

/// Deterministic MDP: one next state per (s, a).
struct Dmdp {
    int n = 0;
    int k = 0;
    std::vector<std::vector<int>> next;  // [s][a]
    std::vector<std::vector<Rat>> R;
    Rat gamma;

    Mdp to_mdp() const;
    void validate() const;
};

using Policy = std::vector<int>;
using ValueFunction = std::vector<Rat>;

/// Exact solution of A x = b by fraction-free elimination (rows are
/// scaled to integers, Bareiss pivoting keeps everything integral until
/// the final back-substitution). Throws on singular systems.
std::vector<Rat> solve_linear(std::vector<std::vector<Rat>> A, std::vector<Rat> b);

/// The unique exact solution of V = R_pi + gamma T_pi V.
ValueFunction evaluate(const Mdp& m, const Policy& p);

Rat q_value(const Mdp& m, const ValueFunction& v, int s, int a);
Rat q_value(const Mdp& m, const Policy& p, int s, int a);
/// gain rho(s, a) = Q(s, a) - V(s)
Rat gain(const Mdp& m, const ValueFunction& v, const Policy& p, int s, int a);
Rat gain(const Mdp& m, const Policy& p, int s, int a);

/// All (s, a) with strictly positive gain, sorted.
std::vector<std::pair<int, int>> improvable_set(const Mdp& m, const Policy& p);
std::vector<std::pair<int, int>> improvable_set(const Mdp& m, const Policy& p,
                                                const ValueFunction& v);
std::vector<int> s_plus(const Mdp& m, const Policy& p);
std::vector<int> a_plus(const Mdp& m, const Policy& p, int s);

/// Policy improvement with the improvement set I (non-empty, at most one
/// action per state, every pair strictly improving). The returned policy
/// is checked exactly against the policy improvement guarantees; a
/// violation indicates a solver bug and throws std::logic_error.
Policy improve(const Mdp& m, const Policy& p, const std::vector<std::pair<int, int>>& I);

enum class PolicyOrder { Equal, Less, Greater, Incomparable };

PolicyOrder compare_values(const ValueFunction& a, const ValueFunction& b);
PolicyOrder compare(const Mdp& m, const Policy& p1, const Policy& p2);

// JSON: {"n":int, "k":int, "gamma":"p/q", "deterministic":bool,
//        "next":[[int,...],...] or "T":[[["p/q",...],...],...],
//        "R":[["p/q",...],...]}
struct MdpFile {
    Mdp mdp;
    std::optional<Dmdp> dmdp;  // present when the file was deterministic
};
MdpFile mdp_from_json_string(const std::string& text);
std::string mdp_to_json_string(const Mdp& m);
std::string dmdp_to_json_string(const Dmdp& m);

/// Seeded random instances (uniform integer-weight transition rows,
/// small random rational rewards, gamma drawn from a fixed menu).
Mdp random_mdp(int n, int k, std::uint64_t seed);
Dmdp random_dmdp(int n, int k, std::uint64_t seed, bool distinct_rewards = false);

}  // namespace pibound
