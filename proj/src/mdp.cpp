#include "mdp.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

namespace pibound {

void Mdp::validate() const {
    if (n < 2 || k < 2) throw std::invalid_argument("mdp needs n >= 2 and k >= 2");
    if (gamma < 0 || gamma >= 1) throw std::invalid_argument("gamma must lie in [0, 1)");
    if (static_cast<int>(T.size()) != n || static_cast<int>(R.size()) != n)
        throw std::invalid_argument("bad table shape");
    for (int s = 0; s < n; ++s) {
        if (static_cast<int>(T[s].size()) != k || static_cast<int>(R[s].size()) != k)
            throw std::invalid_argument("bad table shape");
        for (int a = 0; a < k; ++a) {
            if (static_cast<int>(T[s][a].size()) != n) throw std::invalid_argument("bad row shape");
            Rat row_sum = 0;
            for (const Rat& p : T[s][a]) {
                if (p < 0 || p > 1) throw std::invalid_argument("transition probability outside [0, 1]");
                row_sum += p;
            }
            if (row_sum != 1) throw std::invalid_argument("transition row does not sum to 1");
        }
    }
}

Mdp Dmdp::to_mdp() const {
    Mdp m;
    m.n = n;
    m.k = k;
    m.gamma = gamma;
    m.R = R;
    m.T.assign(static_cast<size_t>(n),
               std::vector<std::vector<Rat>>(static_cast<size_t>(k),
                                             std::vector<Rat>(static_cast<size_t>(n), Rat(0))));
    for (int s = 0; s < n; ++s)
        for (int a = 0; a < k; ++a) m.T[s][a][static_cast<size_t>(next[s][a])] = 1;
    return m;
}

void Dmdp::validate() const {
    if (n < 2 || k < 2) throw std::invalid_argument("dmdp needs n >= 2 and k >= 2");
    if (gamma < 0 || gamma >= 1) throw std::invalid_argument("gamma must lie in [0, 1)");
    if (static_cast<int>(next.size()) != n || static_cast<int>(R.size()) != n)
        throw std::invalid_argument("bad table shape");
    for (int s = 0; s < n; ++s) {
        if (static_cast<int>(next[s].size()) != k || static_cast<int>(R[s].size()) != k)
            throw std::invalid_argument("bad table shape");
        for (int a = 0; a < k; ++a)
            if (next[s][a] < 0 || next[s][a] >= n) throw std::invalid_argument("next state out of range");
    }
}

std::vector<Rat> solve_linear(std::vector<std::vector<Rat>> A, std::vector<Rat> b) {
    size_t n = A.size();
    if (b.size() != n) throw std::invalid_argument("shape mismatch");

    // scale each row to integers
    std::vector<std::vector<Int>> M(n, std::vector<Int>(n + 1));
    for (size_t i = 0; i < n; ++i) {
        if (A[i].size() != n) throw std::invalid_argument("shape mismatch");
        Int l = 1;
        for (const Rat& x : A[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), b[i].get_den().get_mpz_t());
        for (size_t j = 0; j < n; ++j) M[i][j] = A[i][j].get_num() * (l / A[i][j].get_den());
        M[i][n] = b[i].get_num() * (l / b[i].get_den());
    }

    // fraction-free forward elimination
    Int prev = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t pivot = c;
        while (pivot < n && M[pivot][c] == 0) ++pivot;
        if (pivot == n) throw std::runtime_error("singular linear system");
        std::swap(M[c], M[pivot]);
        for (size_t i = c + 1; i < n; ++i) {
            for (size_t j = c + 1; j <= n; ++j) {
                Int t = M[c][c] * M[i][j] - M[i][c] * M[c][j];
                mpz_divexact(M[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            M[i][c] = 0;
        }
        prev = M[c][c];
    }

    std::vector<Rat> x(n);
    for (size_t ii = n; ii-- > 0;) {
        Rat acc = Rat(M[ii][n]);
        for (size_t j = ii + 1; j < n; ++j) acc -= Rat(M[ii][j]) * x[j];
        x[ii] = acc / Rat(M[ii][ii]);
        x[ii].canonicalize();
    }
    return x;
}

static void check_policy(const Mdp& m, const Policy& p) {
    if (static_cast<int>(p.size()) != m.n) throw std::invalid_argument("policy has wrong length");
    for (int a : p)
        if (a < 0 || a >= m.k) throw std::invalid_argument("policy action out of range");
}

ValueFunction evaluate(const Mdp& m, const Policy& p) {
    check_policy(m, p);
    size_t n = static_cast<size_t>(m.n);
    std::vector<std::vector<Rat>> A(n, std::vector<Rat>(n, Rat(0)));
    std::vector<Rat> b(n);
    for (size_t s = 0; s < n; ++s) {
        int a = p[s];
        for (size_t t = 0; t < n; ++t) A[s][t] = -m.gamma * m.T[s][static_cast<size_t>(a)][t];
        A[s][s] += 1;
        b[s] = m.R[s][static_cast<size_t>(a)];
    }
    return solve_linear(std::move(A), std::move(b));
}

Rat q_value(const Mdp& m, const ValueFunction& v, int s, int a) {
    Rat q = m.R[static_cast<size_t>(s)][static_cast<size_t>(a)];
    for (int t = 0; t < m.n; ++t)
        q += m.gamma * m.T[static_cast<size_t>(s)][static_cast<size_t>(a)][static_cast<size_t>(t)] *
             v[static_cast<size_t>(t)];
    return q;
}

Rat q_value(const Mdp& m, const Policy& p, int s, int a) { return q_value(m, evaluate(m, p), s, a); }

Rat gain(const Mdp& m, const ValueFunction& v, const Policy&, int s, int a) {
    return q_value(m, v, s, a) - v[static_cast<size_t>(s)];
}

Rat gain(const Mdp& m, const Policy& p, int s, int a) {
    ValueFunction v = evaluate(m, p);
    return q_value(m, v, s, a) - v[static_cast<size_t>(s)];
}

std::vector<std::pair<int, int>> improvable_set(const Mdp& m, const Policy& p,
                                                const ValueFunction& v) {
    std::vector<std::pair<int, int>> out;
    for (int s = 0; s < m.n; ++s)
        for (int a = 0; a < m.k; ++a)
            if (gain(m, v, p, s, a) > 0) out.push_back({s, a});
    return out;
}

std::vector<std::pair<int, int>> improvable_set(const Mdp& m, const Policy& p) {
    return improvable_set(m, p, evaluate(m, p));
}

std::vector<int> s_plus(const Mdp& m, const Policy& p) {
    std::vector<int> out;
    for (const auto& [s, a] : improvable_set(m, p))
        if (out.empty() || out.back() != s) out.push_back(s);
    return out;
}

std::vector<int> a_plus(const Mdp& m, const Policy& p, int s) {
    std::vector<int> out;
    for (const auto& [ss, a] : improvable_set(m, p))
        if (ss == s) out.push_back(a);
    return out;
}

Policy improve(const Mdp& m, const Policy& p, const std::vector<std::pair<int, int>>& I) {
    check_policy(m, p);
    if (I.empty()) throw std::invalid_argument("improvement set must be non-empty");
    ValueFunction v = evaluate(m, p);
    std::set<int> switched;
    Policy out = p;
    for (const auto& [s, a] : I) {
        if (s < 0 || s >= m.n || a < 0 || a >= m.k) throw std::invalid_argument("bad state-action pair");
        if (!switched.insert(s).second)
            throw std::invalid_argument("improvement set selects two actions for one state");
        if (!(gain(m, v, p, s, a) > 0))
            throw std::invalid_argument("improvement set contains a non-improving pair");
        out[static_cast<size_t>(s)] = a;
    }
    // exact policy improvement guarantees
    ValueFunction v2 = evaluate(m, out);
    PolicyOrder ord = compare_values(v, v2);
    if (ord != PolicyOrder::Less) throw std::logic_error("policy improvement failed to dominate");
    for (int s : switched)
        if (!(v2[static_cast<size_t>(s)] > v[static_cast<size_t>(s)]))
            throw std::logic_error("switched state did not strictly improve");
    return out;
}

PolicyOrder compare_values(const ValueFunction& a, const ValueFunction& b) {
    bool le = true, ge = true, eq = true;
    for (size_t s = 0; s < a.size(); ++s) {
        int c = cmp(a[s], b[s]);
        if (c != 0) eq = false;
        if (c > 0) le = false;
        if (c < 0) ge = false;
    }
    if (eq) return PolicyOrder::Equal;
    if (le) return PolicyOrder::Less;
    if (ge) return PolicyOrder::Greater;
    return PolicyOrder::Incomparable;
}

PolicyOrder compare(const Mdp& m, const Policy& p1, const Policy& p2) {
    return compare_values(evaluate(m, p1), evaluate(m, p2));
}

MdpFile mdp_from_json_string(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    MdpFile out;
    int n = j.at("n").get<int>();
    int k = j.at("k").get<int>();
    Rat gamma = rat_from_string(j.at("gamma").get<std::string>());
    std::vector<std::vector<Rat>> R(static_cast<size_t>(n), std::vector<Rat>(static_cast<size_t>(k)));
    const auto& jr = j.at("R");
    for (int s = 0; s < n; ++s)
        for (int a = 0; a < k; ++a)
            R[static_cast<size_t>(s)][static_cast<size_t>(a)] =
                rat_from_string(jr.at(static_cast<size_t>(s)).at(static_cast<size_t>(a)).get<std::string>());

    if (j.value("deterministic", false)) {
        Dmdp d;
        d.n = n;
        d.k = k;
        d.gamma = gamma;
        d.R = R;
        d.next.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(k)));
        const auto& jn = j.at("next");
        for (int s = 0; s < n; ++s)
            for (int a = 0; a < k; ++a)
                d.next[static_cast<size_t>(s)][static_cast<size_t>(a)] =
                    jn.at(static_cast<size_t>(s)).at(static_cast<size_t>(a)).get<int>();
        d.validate();
        out.dmdp = d;
        out.mdp = d.to_mdp();
        return out;
    }

    Mdp m;
    m.n = n;
    m.k = k;
    m.gamma = gamma;
    m.R = R;
    m.T.assign(static_cast<size_t>(n),
               std::vector<std::vector<Rat>>(static_cast<size_t>(k),
                                             std::vector<Rat>(static_cast<size_t>(n))));
    const auto& jt = j.at("T");
    for (int s = 0; s < n; ++s)
        for (int a = 0; a < k; ++a)
            for (int t = 0; t < n; ++t)
                m.T[static_cast<size_t>(s)][static_cast<size_t>(a)][static_cast<size_t>(t)] =
                    rat_from_string(jt.at(static_cast<size_t>(s))
                                        .at(static_cast<size_t>(a))
                                        .at(static_cast<size_t>(t))
                                        .get<std::string>());
    m.validate();
    out.mdp = std::move(m);
    return out;
}

static nlohmann::json rewards_to_json(const std::vector<std::vector<Rat>>& R) {
    nlohmann::json jr = nlohmann::json::array();
    for (const auto& row : R) {
        nlohmann::json jrow = nlohmann::json::array();
        for (const Rat& r : row) jrow.push_back(rat_to_string(r));
        jr.push_back(jrow);
    }
    return jr;
}

std::string mdp_to_json_string(const Mdp& m) {
    nlohmann::json j;
    j["n"] = m.n;
    j["k"] = m.k;
    j["gamma"] = rat_to_string(m.gamma);
    j["deterministic"] = false;
    j["R"] = rewards_to_json(m.R);
    nlohmann::json jt = nlohmann::json::array();
    for (const auto& per_s : m.T) {
        nlohmann::json ja = nlohmann::json::array();
        for (const auto& row : per_s) {
            nlohmann::json jrow = nlohmann::json::array();
            for (const Rat& p : row) jrow.push_back(rat_to_string(p));
            ja.push_back(jrow);
        }
        jt.push_back(ja);
    }
    j["T"] = jt;
    return j.dump();
}

std::string dmdp_to_json_string(const Dmdp& m) {
    nlohmann::json j;
    j["n"] = m.n;
    j["k"] = m.k;
    j["gamma"] = rat_to_string(m.gamma);
    j["deterministic"] = true;
    j["R"] = rewards_to_json(m.R);
    j["next"] = m.next;
    return j.dump();
}

static const long kGammaMenu[][2] = {{1, 2}, {3, 5}, {7, 10}, {9, 10}};

Mdp random_mdp(int n, int k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> weight(0, 6);
    std::uniform_int_distribution<int> rew_num(-50, 50);
    std::uniform_int_distribution<int> rew_den(1, 10);
    std::uniform_int_distribution<size_t> gpick(0, 3);

    Mdp m;
    m.n = n;
    m.k = k;
    auto g = kGammaMenu[gpick(rng)];
    m.gamma = Rat(g[0], g[1]);
    m.T.assign(static_cast<size_t>(n),
               std::vector<std::vector<Rat>>(static_cast<size_t>(k),
                                             std::vector<Rat>(static_cast<size_t>(n), Rat(0))));
    m.R.assign(static_cast<size_t>(n), std::vector<Rat>(static_cast<size_t>(k)));
    for (int s = 0; s < n; ++s)
        for (int a = 0; a < k; ++a) {
            std::vector<long> w(static_cast<size_t>(n));
            long total = 0;
            for (long& x : w) total += (x = weight(rng));
            if (total == 0) {
                w[static_cast<size_t>(s)] = 1;
                total = 1;
            }
            for (int t = 0; t < n; ++t) {
                Rat p(w[static_cast<size_t>(t)], total);
                p.canonicalize();
                m.T[s][a][static_cast<size_t>(t)] = p;
            }
            Rat r(rew_num(rng), rew_den(rng));
            r.canonicalize();
            m.R[s][a] = r;
        }
    m.validate();
    return m;
}

Dmdp random_dmdp(int n, int k, std::uint64_t seed, bool distinct_rewards) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> state(0, n - 1);
    std::uniform_int_distribution<int> rew_num(-60, 60);
    std::uniform_int_distribution<int> rew_den(1, 8);
    std::uniform_int_distribution<size_t> gpick(0, 3);

    Dmdp d;
    d.n = n;
    d.k = k;
    auto g = kGammaMenu[gpick(rng)];
    d.gamma = Rat(g[0], g[1]);
    d.next.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(k)));
    d.R.assign(static_cast<size_t>(n), std::vector<Rat>(static_cast<size_t>(k)));
    std::set<Rat> seen;
    for (int s = 0; s < n; ++s)
        for (int a = 0; a < k; ++a) {
            d.next[s][a] = state(rng);
            Rat r;
            do {
                r = Rat(rew_num(rng), rew_den(rng));
                r.canonicalize();
            } while (distinct_rewards && !seen.insert(r).second);
            d.R[s][a] = r;
        }
    d.validate();
    return d;
}

}  // namespace pibound
