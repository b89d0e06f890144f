#include "twostate.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

namespace pibound {

namespace {

void check_k(int k) {
    if (k < 2) throw std::invalid_argument("two-state constructions need k >= 2");
}

Rat denom(const TwoStateParams& p, int i, int j) {
    // 1 + gamma (1 - lam1_i - lam2_j)
    return 1 + p.gamma * (1 - p.lam1[static_cast<size_t>(i - 1)] - p.lam2[static_cast<size_t>(j - 1)]);
}

}  // namespace

Mdp TwoStateParams::to_mdp() const {
    Mdp m;
    m.n = 2;
    m.k = k;
    m.gamma = gamma;
    m.T.assign(2, std::vector<std::vector<Rat>>(static_cast<size_t>(k), std::vector<Rat>(2, Rat(0))));
    m.R.assign(2, std::vector<Rat>(static_cast<size_t>(k)));
    for (int a = 0; a < k; ++a) {
        m.T[0][static_cast<size_t>(a)][0] = lam1[static_cast<size_t>(a)];
        m.T[0][static_cast<size_t>(a)][1] = 1 - lam1[static_cast<size_t>(a)];
        m.T[1][static_cast<size_t>(a)][1] = lam2[static_cast<size_t>(a)];
        m.T[1][static_cast<size_t>(a)][0] = 1 - lam2[static_cast<size_t>(a)];
        m.R[0][static_cast<size_t>(a)] = mu1[static_cast<size_t>(a)];
        m.R[1][static_cast<size_t>(a)] = mu2[static_cast<size_t>(a)];
    }
    m.validate();
    return m;
}

Rat closed_value(const TwoStateParams& p, int i, int j, int state) {
    const Rat& l1 = p.lam1[static_cast<size_t>(i - 1)];
    const Rat& l2 = p.lam2[static_cast<size_t>(j - 1)];
    const Rat& m1 = p.mu1[static_cast<size_t>(i - 1)];
    const Rat& m2 = p.mu2[static_cast<size_t>(j - 1)];
    Rat den = (1 - p.gamma) * denom(p, i, j);
    Rat num = state == 1 ? Rat(m1 * (1 - p.gamma * l2) + m2 * p.gamma * (1 - l1))
                         : Rat(m2 * (1 - p.gamma * l1) + m1 * p.gamma * (1 - l2));
    Rat v = num / den;
    v.canonicalize();
    return v;
}

Rat closed_gain(const TwoStateParams& p, int i, int j, int state, int aprime) {
    const Rat& m1 = p.mu1[static_cast<size_t>(i - 1)];
    const Rat& m2 = p.mu2[static_cast<size_t>(j - 1)];
    Rat den = denom(p, i, j);
    Rat g;
    if (state == 1) {
        const Rat& lp = p.lam1[static_cast<size_t>(aprime - 1)];
        const Rat& l = p.lam1[static_cast<size_t>(i - 1)];
        g = p.mu1[static_cast<size_t>(aprime - 1)] - m1 + p.gamma * (lp - l) * (m1 - m2) / den;
    } else {
        const Rat& lp = p.lam2[static_cast<size_t>(aprime - 1)];
        const Rat& l = p.lam2[static_cast<size_t>(j - 1)];
        g = p.mu2[static_cast<size_t>(aprime - 1)] - m2 - p.gamma * (lp - l) * (m1 - m2) / den;
    }
    g.canonicalize();
    return g;
}

namespace {

// Feasibility thresholds behind the Hamiltonian construction: mu2[a+1]
// goes first, then mu1[a+1] (whose bounds use the fresh mu2[a+1]). Each
// threshold is the exact rearrangement of the corresponding positive-gain
// requirement along the visitation order, so any value strictly below it
// keeps the walk legal, for independently chosen lam sequences too.
Rat mu2_threshold(const TwoStateParams& p, int a) {
    // gain at state 1 while the walk descends column a+1:
    // rho^<i,a+1>(1, i+1) > 0 for 1 <= i <= a-1
    Rat best;
    bool have = false;
    for (int i = 1; i <= a - 1; ++i) {
        Rat cand = p.mu1[static_cast<size_t>(i - 1)] +
                   (p.mu1[static_cast<size_t>(i)] - p.mu1[static_cast<size_t>(i - 1)]) *
                       (1 + p.gamma * (1 - p.lam1[static_cast<size_t>(i - 1)] -
                                       p.lam2[static_cast<size_t>(a)])) /
                       (p.gamma * (p.lam1[static_cast<size_t>(i)] - p.lam1[static_cast<size_t>(i - 1)]));
        if (!have || cand < best) {
            best = cand;
            have = true;
        }
    }
    // gain of returning state 2 to action 1: rho^<a,a+1>(2, 1) > 0
    Rat second = (p.mu2[0] * (1 + p.gamma * (1 - p.lam1[static_cast<size_t>(a - 1)] -
                                             p.lam2[static_cast<size_t>(a)])) +
                  p.gamma * (p.lam2[static_cast<size_t>(a)] - p.lam2[0]) *
                      p.mu1[static_cast<size_t>(a - 1)]) /
                 (1 + p.gamma * (1 - p.lam1[static_cast<size_t>(a - 1)] - p.lam2[0]));
    if (!have || second < best) best = second;
    return best;
}

Rat mu1_threshold(const TwoStateParams& p, int a) {
    // gain at state 2 while the walk crosses row a+1:
    // rho^<a+1,j>(2, j+1) > 0 for 1 <= j <= a
    Rat best;
    bool have = false;
    for (int j = 1; j <= a; ++j) {
        Rat cand = p.mu2[static_cast<size_t>(j - 1)] +
                   (p.mu2[static_cast<size_t>(j)] - p.mu2[static_cast<size_t>(j - 1)]) *
                       (1 + p.gamma * (1 - p.lam1[static_cast<size_t>(a)] -
                                       p.lam2[static_cast<size_t>(j - 1)])) /
                       (p.gamma * (p.lam2[static_cast<size_t>(j)] - p.lam2[static_cast<size_t>(j - 1)]));
        if (!have || cand < best) {
            best = cand;
            have = true;
        }
    }
    // gain of returning state 1 to action 1: rho^<a+1,a+1>(1, 1) > 0
    Rat second = (p.mu1[0] * (1 + p.gamma * (1 - p.lam1[static_cast<size_t>(a)] -
                                             p.lam2[static_cast<size_t>(a)])) +
                  p.gamma * (p.lam1[static_cast<size_t>(a)] - p.lam1[0]) *
                      p.mu2[static_cast<size_t>(a)]) /
                 (1 + p.gamma * (1 - p.lam1[0] - p.lam2[static_cast<size_t>(a)]));
    if (!have || second < best) best = second;
    return best;
}

}  // namespace

TwoStateParams gen_arbitrary(int k) {
    check_k(k);
    TwoStateParams p;
    p.k = k;
    p.gamma = Rat(9, 10);
    p.lam1.resize(static_cast<size_t>(k));
    p.lam2.resize(static_cast<size_t>(k));
    p.mu1.assign(static_cast<size_t>(k), Rat(0));
    p.mu2.assign(static_cast<size_t>(k), Rat(0));
    for (int a = 1; a <= k; ++a) {
        Rat l(a, k + 1);
        l.canonicalize();
        p.lam1[static_cast<size_t>(a - 1)] = l;
        p.lam2[static_cast<size_t>(a - 1)] = l;
    }
    for (int a = 1; a <= k - 1; ++a) {
        p.mu2[static_cast<size_t>(a)] = mu2_threshold(p, a) - 1;
        p.mu1[static_cast<size_t>(a)] = mu1_threshold(p, a) - 1;
        p.mu2[static_cast<size_t>(a)].canonicalize();
        p.mu1[static_cast<size_t>(a)].canonicalize();
    }
    return p;
}

TwoStateParams gen_arbitrary_seeded(int k, std::uint64_t seed) {
    check_k(k);
    std::mt19937_64 rng(seed);
    TwoStateParams p;
    p.k = k;
    p.gamma = uniform_rational(rng, Rat(0), Rat(1));
    p.lam1.resize(static_cast<size_t>(k));
    p.lam2.resize(static_cast<size_t>(k));
    p.mu1.assign(static_cast<size_t>(k), Rat(0));
    p.mu2.assign(static_cast<size_t>(k), Rat(0));
    p.lam1[0] = uniform_rational(rng, Rat(0), Rat(1));
    p.lam2[0] = uniform_rational(rng, Rat(0), Rat(1));
    p.mu1[0] = uniform_rational(rng, Rat(-2), Rat(2));
    p.mu2[0] = uniform_rational(rng, Rat(-2), Rat(2));
    for (int a = 1; a <= k - 1; ++a) {
        p.lam1[static_cast<size_t>(a)] = uniform_rational(rng, p.lam1[static_cast<size_t>(a - 1)], Rat(1));
        p.lam2[static_cast<size_t>(a)] = uniform_rational(rng, p.lam2[static_cast<size_t>(a - 1)], Rat(1));
        // the feasible range is open and unbounded below; sample a unit
        // window under the threshold
        Rat t2 = mu2_threshold(p, a);
        p.mu2[static_cast<size_t>(a)] = uniform_rational(rng, t2 - 1, t2);
        Rat t1 = mu1_threshold(p, a);
        p.mu1[static_cast<size_t>(a)] = uniform_rational(rng, t1 - 1, t1);
    }
    return p;
}

std::pair<int, int> next_arbitrary(int k, int i, int j) {
    check_k(k);
    if (i < 1 || i > k || j < 1 || j > k) throw std::invalid_argument("policy index out of range");
    if (i == 1 && j == 1) throw std::invalid_argument("<1,1> has no successor");
    if (i > j) return {i, j + 1};
    if (i == j) return {1, j};
    if (i < j - 1) return {i + 1, j};
    return {i, 1};  // i == j - 1
}

std::vector<std::pair<int, int>> arbitrary_sequence(int k) {
    check_k(k);
    std::vector<std::pair<int, int>> seq{{k, 1}};
    while (seq.back() != std::pair<int, int>{1, 1})
        seq.push_back(next_arbitrary(k, seq.back().first, seq.back().second));
    return seq;
}

TwoStateParams gen_maxgain(int k, const Rat& eps) {
    check_k(k);
    if (eps <= 0) throw std::invalid_argument("epsilon must be positive");
    TwoStateParams p;
    p.k = k;
    Rat base = 2 + eps;
    Rat scale = Rat(k) * rat_pow(base, static_cast<unsigned long>(k - 1));
    p.gamma = 1 - 1 / scale;
    p.gamma.canonicalize();
    p.lam1.resize(static_cast<size_t>(k));
    p.mu1.resize(static_cast<size_t>(k));
    for (int a = 1; a <= k; ++a) {
        if (a == 1) {
            p.lam1[0] = 1;
            p.mu1[0] = 0;
        } else {
            Rat pow_a = Rat(k) * rat_pow(base, static_cast<unsigned long>(a - 1));
            Rat l = (1 - Rat(k - a + 1) / pow_a) / p.gamma;
            l.canonicalize();
            p.lam1[static_cast<size_t>(a - 1)] = l;
            Rat mu = Rat(a) * Rat(k - a + 1) / pow_a;
            mu.canonicalize();
            p.mu1[static_cast<size_t>(a - 1)] = mu;
        }
    }
    p.lam2 = p.lam1;
    p.mu2.resize(static_cast<size_t>(k));
    for (int a = 0; a < k; ++a) p.mu2[static_cast<size_t>(a)] = Rat(k) * p.mu1[static_cast<size_t>(a)];
    return p;
}

std::vector<std::pair<int, int>> maxgain_sequence(int k) {
    check_k(k);
    std::vector<std::pair<int, int>> seq;
    for (int i = 1; i <= k; ++i) seq.push_back({i, 1});
    for (int j = 2; j <= k; ++j) seq.push_back({k, j});
    return seq;
}

std::vector<Policy> to_policies(const std::vector<std::pair<int, int>>& seq) {
    std::vector<Policy> out;
    for (const auto& [i, j] : seq) out.push_back({i - 1, j - 1});
    return out;
}

namespace {

Dmdp structure_to_dmdp(int k, long structure, const std::vector<Rat>& rewards, const Rat& gamma) {
    Dmdp d;
    d.n = 2;
    d.k = k;
    d.gamma = gamma;
    d.next.assign(2, std::vector<int>(static_cast<size_t>(k)));
    d.R.assign(2, std::vector<Rat>(static_cast<size_t>(k)));
    for (int s = 0; s < 2; ++s)
        for (int a = 0; a < k; ++a) {
            int bit = static_cast<int>((structure >> (s * k + a)) & 1);
            d.next[static_cast<size_t>(s)][static_cast<size_t>(a)] = bit ? 1 - s : s;
            d.R[static_cast<size_t>(s)][static_cast<size_t>(a)] =
                rewards[static_cast<size_t>(s * k + a)];
        }
    return d;
}

std::vector<Rat> sample_rewards(std::mt19937_64& rng, int count) {
    std::uniform_int_distribution<int> num(-80, 80);
    std::uniform_int_distribution<int> den(1, 6);
    std::set<Rat> seen;
    std::vector<Rat> out;
    while (static_cast<int>(out.size()) < count) {
        Rat r(num(rng), den(rng));
        r.canonicalize();
        if (seen.insert(r).second) out.push_back(r);
    }
    return out;
}

TwoStateUbReport verify_ub(int k, bool max_gain, bool exhaustive, long trials, std::uint64_t seed) {
    check_k(k);
    if (exhaustive && k > 3)
        throw std::invalid_argument("exhaustive structure sweep is limited to k <= 3");
    TwoStateUbReport rep;
    rep.k = k;
    rep.max_gain = max_gain;
    rep.exhaustive = exhaustive;
    Rat bound = max_gain ? Rat(7) : Rat(k) * k / 2 + 2 * k - 1;
    rep.bound = rat_to_string(bound);

    std::mt19937_64 rng(seed);
    const Rat gammas[] = {Rat(1, 2), Rat(3, 5), Rat(9, 10), Rat(99, 100)};
    std::uniform_int_distribution<size_t> gpick(0, 3);
    std::uniform_int_distribution<long> spick(0, (1L << (2 * k)) - 1);

    long worst = 0;
    bool ok = true;
    auto run_one = [&](const Dmdp& d) {
        PiDag dag = build_pidag(d.to_mdp(), max_gain);
        long len = longest_path(dag).first;
        if (len > worst) {
            worst = len;
            rep.worst_instance_json = dmdp_to_json_string(d);
        }
        if (Rat(len) > bound) ok = false;
        ++rep.instances;
    };

    if (exhaustive) {
        for (long structure = 0; structure < (1L << (2 * k)); ++structure)
            for (long t = 0; t < trials; ++t) {
                auto rewards = sample_rewards(rng, 2 * k);
                run_one(structure_to_dmdp(k, structure, rewards, gammas[gpick(rng)]));
            }
    } else {
        for (long t = 0; t < trials; ++t) {
            auto rewards = sample_rewards(rng, 2 * k);
            run_one(structure_to_dmdp(k, spick(rng), rewards, gammas[gpick(rng)]));
        }
    }
    rep.max_path = worst;
    rep.pass = ok;
    return rep;
}

}  // namespace

TwoStateUbReport verify_arbitrary_ub(int k, bool exhaustive, long trials, std::uint64_t seed) {
    return verify_ub(k, false, exhaustive, trials, seed);
}

TwoStateUbReport verify_maxgain_ub(int k, bool exhaustive, long trials, std::uint64_t seed) {
    return verify_ub(k, true, exhaustive, trials, seed);
}

std::string twostate_report_to_json_string(const TwoStateUbReport& r) {
    nlohmann::json j;
    j["k"] = r.k;
    j["kind"] = r.max_gain ? "maxgain" : "arbitrary";
    j["mode"] = r.exhaustive ? "exhaustive" : "random";
    j["instances"] = r.instances;
    j["max_path"] = r.max_path;
    j["bound"] = r.bound;
    j["pass"] = r.pass;
    if (!r.worst_instance_json.empty())
        j["worst_instance"] = nlohmann::json::parse(r.worst_instance_json);
    return j.dump();
}

}  // namespace pibound
