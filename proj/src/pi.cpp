#include "pi.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

namespace pibound {

namespace {

long checked_policy_count(int n, int k, long cap) {
    long total = 1;
    for (int i = 0; i < n; ++i) {
        if (total > cap / k) return cap + 1;  // saturate
        total *= k;
    }
    return total;
}

/// Improving actions per state, from precomputed gains.
std::vector<std::vector<int>> improving_by_state(const Mdp& m, const Policy& p,
                                                 const ValueFunction& v) {
    std::vector<std::vector<int>> out(static_cast<size_t>(m.n));
    for (int s = 0; s < m.n; ++s)
        for (int a = 0; a < m.k; ++a)
            if (gain(m, v, p, s, a) > 0) out[static_cast<size_t>(s)].push_back(a);
    return out;
}

/// Argmax-gain actions at s among the improving ones (all ties).
std::vector<int> max_gain_actions(const Mdp& m, const Policy& p, const ValueFunction& v, int s,
                                  const std::vector<int>& improving) {
    std::vector<int> best;
    Rat best_gain;
    for (int a : improving) {
        Rat g = gain(m, v, p, s, a);
        if (best.empty() || g > best_gain) {
            best = {a};
            best_gain = g;
        } else if (g == best_gain) {
            best.push_back(a);
        }
    }
    return best;
}

}  // namespace

PiTrajectory run_pi(const Mdp& m, const Policy& init, const SwitchingRule& rule, long step_cap) {
    m.validate();
    if (step_cap <= 0) step_cap = checked_policy_count(m.n, m.k, 1000000000L);

    if (rule.states == SwitchingRule::States::Scripted) {
        if (rule.script.empty()) throw std::invalid_argument("scripted rule needs a policy sequence");
        if (rule.script.front() != init)
            throw std::invalid_argument("scripted sequence must start at the initial policy");
    }

    std::mt19937_64 rng(rule.seed);
    PiTrajectory t;
    Policy p = init;
    ValueFunction v = evaluate(m, p);
    t.policies.push_back(p);
    t.values.push_back(v);

    size_t script_pos = 0;
    bool in_script = rule.states == SwitchingRule::States::Scripted;
    for (;;) {
        auto improving = improving_by_state(m, p, v);
        bool any = std::any_of(improving.begin(), improving.end(),
                               [](const auto& as) { return !as.empty(); });

        std::vector<std::pair<int, int>> I;
        if (in_script) {
            if (script_pos + 1 >= rule.script.size()) {
                if (!any) break;
                if (!rule.script_fallback)
                    throw std::runtime_error("scripted sequence ended at a non-optimal policy");
                in_script = false;  // finish the run by all-states switching
                continue;
            }
            const Policy& target = rule.script[script_pos + 1];
            if (static_cast<int>(target.size()) != m.n)
                throw std::invalid_argument("scripted policy has wrong length");
            for (int s = 0; s < m.n; ++s) {
                int a = target[static_cast<size_t>(s)];
                if (a == p[static_cast<size_t>(s)]) continue;
                const auto& opts = improving[static_cast<size_t>(s)];
                if (std::find(opts.begin(), opts.end(), a) == opts.end())
                    throw std::runtime_error("scripted switch is not a legal improvement");
                if (rule.script_max_gain) {
                    auto best = max_gain_actions(m, p, v, s, opts);
                    if (std::find(best.begin(), best.end(), a) == best.end())
                        throw std::runtime_error("scripted switch is not a max-gain action");
                }
                I.push_back({s, a});
            }
            if (I.empty()) throw std::runtime_error("scripted step repeats the current policy");
            ++script_pos;
        } else {
            if (!any) break;
            // state selection; a post-script fallback switches every state
            auto state_mode = rule.states == SwitchingRule::States::Scripted
                                  ? SwitchingRule::States::All
                                  : rule.states;
            std::vector<int> plus;
            for (int s = 0; s < m.n; ++s)
                if (!improving[static_cast<size_t>(s)].empty()) plus.push_back(s);

            std::vector<int> chosen;
            switch (state_mode) {
                case SwitchingRule::States::All:
                    chosen = plus;
                    break;
                case SwitchingRule::States::HighestIndex:
                    chosen = {plus.back()};
                    break;
                case SwitchingRule::States::SingleBestGain: {
                    int bs = -1, ba = -1;
                    Rat bg;
                    for (int s : plus)
                        for (int a : improving[static_cast<size_t>(s)]) {
                            Rat g = gain(m, v, p, s, a);
                            if (bs < 0 || g > bg) {
                                bs = s;
                                ba = a;
                                bg = g;
                            }
                        }
                    I.push_back({bs, ba});
                    break;
                }
                case SwitchingRule::States::RandomSubset: {
                    // uniform over the non-empty subsets of S+
                    std::uniform_int_distribution<int> coin(0, 1);
                    do {
                        chosen.clear();
                        for (int s : plus)
                            if (coin(rng)) chosen.push_back(s);
                    } while (chosen.empty());
                    break;
                }
                case SwitchingRule::States::Scripted:
                    break;  // handled above
            }
            // action selection
            for (int s : chosen) {
                const auto& opts = improving[static_cast<size_t>(s)];
                int a = -1;
                switch (rule.actions) {
                    case SwitchingRule::Actions::LowestImproving:
                        a = opts.front();
                        break;
                    case SwitchingRule::Actions::MaxGain:
                        a = max_gain_actions(m, p, v, s, opts).front();
                        break;
                    case SwitchingRule::Actions::Random:
                        a = opts[std::uniform_int_distribution<size_t>(0, opts.size() - 1)(rng)];
                        break;
                }
                I.push_back({s, a});
            }
        }

        p = improve(m, p, I);
        v = evaluate(m, p);
        t.policies.push_back(p);
        t.values.push_back(v);
        t.switches.push_back(I);
        if (static_cast<long>(t.policies.size()) > step_cap)
            throw std::logic_error("policy iteration exceeded its step cap");
    }
    return t;
}

long PiDag::code(const Policy& p) const {
    long c = 0;
    for (int s = n - 1; s >= 0; --s) c = c * k + p[static_cast<size_t>(s)];
    return c;
}

Policy PiDag::decode(long code) const {
    Policy p(static_cast<size_t>(n));
    for (int s = 0; s < n; ++s) {
        p[static_cast<size_t>(s)] = static_cast<int>(code % k);
        code /= k;
    }
    return p;
}

long PiDag::edge_count() const {
    long total = 0;
    for (const auto& ss : succ) total += static_cast<long>(ss.size());
    return total;
}

std::vector<long> PiDag::sink_codes() const {
    std::vector<long> out;
    for (long c = 0; c < n_policies; ++c)
        if (succ[static_cast<size_t>(c)].empty()) out.push_back(c);
    return out;
}

PiDag build_pidag(const Mdp& m, bool max_gain_only, long cap) {
    m.validate();
    PiDag d;
    d.n = m.n;
    d.k = m.k;
    d.max_gain_only = max_gain_only;
    d.n_policies = checked_policy_count(m.n, m.k, cap);
    if (d.n_policies > cap) throw CapExceeded("policy space exceeds the PI-DAG cap");
    d.succ.assign(static_cast<size_t>(d.n_policies), {});

    for (long c = 0; c < d.n_policies; ++c) {
        Policy p = d.decode(c);
        ValueFunction v = evaluate(m, p);
        auto improving = improving_by_state(m, p, v);

        // per-state candidate actions: keep current, or switch to an
        // improving action (argmax-restricted when building the max-gain DAG)
        std::vector<std::vector<int>> options(static_cast<size_t>(m.n));
        for (int s = 0; s < m.n; ++s) {
            options[static_cast<size_t>(s)].push_back(p[static_cast<size_t>(s)]);
            const auto& opts = improving[static_cast<size_t>(s)];
            if (opts.empty()) continue;
            if (max_gain_only)
                for (int a : max_gain_actions(m, p, v, s, opts))
                    options[static_cast<size_t>(s)].push_back(a);
            else
                for (int a : opts) options[static_cast<size_t>(s)].push_back(a);
        }

        std::vector<size_t> pick(static_cast<size_t>(m.n), 0);
        for (;;) {
            bool changed = false;
            Policy q = p;
            for (int s = 0; s < m.n; ++s) {
                int a = options[static_cast<size_t>(s)][pick[static_cast<size_t>(s)]];
                if (a != p[static_cast<size_t>(s)]) changed = true;
                q[static_cast<size_t>(s)] = a;
            }
            if (changed) d.succ[static_cast<size_t>(c)].push_back(d.code(q));
            int pos = m.n - 1;
            while (pos >= 0) {
                if (++pick[static_cast<size_t>(pos)] < options[static_cast<size_t>(pos)].size()) break;
                pick[static_cast<size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
        auto& ss = d.succ[static_cast<size_t>(c)];
        std::sort(ss.begin(), ss.end());
    }

    // acyclicity tripwire (guaranteed by the strict dominance order)
    std::vector<int> color(static_cast<size_t>(d.n_policies), 0);
    std::function<void(long)> dfs = [&](long u) {
        color[static_cast<size_t>(u)] = 1;
        for (long w : d.succ[static_cast<size_t>(u)]) {
            if (color[static_cast<size_t>(w)] == 1) throw std::logic_error("PI-DAG contains a cycle");
            if (color[static_cast<size_t>(w)] == 0) dfs(w);
        }
        color[static_cast<size_t>(u)] = 2;
    };
    for (long c = 0; c < d.n_policies; ++c)
        if (color[static_cast<size_t>(c)] == 0) dfs(c);
    return d;
}

std::pair<long, std::vector<Policy>> longest_path(const PiDag& d, const std::optional<Policy>& from) {
    std::vector<long> len(static_cast<size_t>(d.n_policies), 0);
    std::vector<long> next(static_cast<size_t>(d.n_policies), -1);
    std::function<long(long)> dp = [&](long u) -> long {
        long& l = len[static_cast<size_t>(u)];
        if (l != 0) return l;
        l = 1;
        for (long w : d.succ[static_cast<size_t>(u)]) {
            long cand = 1 + dp(w);
            if (cand > l) {
                l = cand;
                next[static_cast<size_t>(u)] = w;
            }
        }
        return l;
    };

    long best_code = -1;
    long best = 0;
    if (from) {
        best_code = d.code(*from);
        best = dp(best_code);
    } else {
        for (long c = 0; c < d.n_policies; ++c)
            if (dp(c) > best) {
                best = dp(c);
                best_code = c;
            }
    }
    std::vector<Policy> path;
    for (long c = best_code; c != -1; c = next[static_cast<size_t>(c)]) path.push_back(d.decode(c));
    return {best, path};
}

bool trajectory_in_dag(const PiDag& d, const PiTrajectory& t) {
    for (size_t i = 0; i + 1 < t.policies.size(); ++i) {
        long u = d.code(t.policies[i]);
        long w = d.code(t.policies[i + 1]);
        const auto& ss = d.succ[static_cast<size_t>(u)];
        if (!std::binary_search(ss.begin(), ss.end(), w)) return false;
    }
    return true;
}

std::string trajectory_to_json_string(const PiTrajectory& t) {
    nlohmann::json j;
    j["policies"] = t.policies;
    nlohmann::json jsw = nlohmann::json::array();
    for (const auto& step : t.switches) {
        nlohmann::json js = nlohmann::json::array();
        for (const auto& [s, a] : step) js.push_back({s, a});
        jsw.push_back(js);
    }
    j["switches"] = jsw;
    nlohmann::json jv = nlohmann::json::array();
    for (const auto& v : t.values) {
        nlohmann::json row = nlohmann::json::array();
        for (const Rat& x : v) row.push_back(rat_to_string(x));
        jv.push_back(row);
    }
    j["values"] = jv;
    return j.dump();
}

PiTrajectory trajectory_from_json_string(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    PiTrajectory t;
    for (const auto& jp : j.at("policies")) t.policies.push_back(jp.get<Policy>());
    if (j.contains("switches"))
        for (const auto& js : j["switches"]) {
            std::vector<std::pair<int, int>> step;
            for (const auto& e : js) step.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
            t.switches.push_back(step);
        }
    if (j.contains("values"))
        for (const auto& jv : j["values"]) {
            ValueFunction v;
            for (const auto& x : jv) v.push_back(rat_from_string(x.get<std::string>()));
            t.values.push_back(v);
        }
    return t;
}

std::string pidag_to_dot(const PiDag& d) {
    std::ostringstream os;
    os << "digraph pidag {\n";
    auto label = [&](long c) {
        Policy p = d.decode(c);
        std::string s;
        for (int a : p) s += std::to_string(a);
        return s;
    };
    for (long c = 0; c < d.n_policies; ++c) os << "  \"" << label(c) << "\";\n";
    for (long c = 0; c < d.n_policies; ++c)
        for (long w : d.succ[static_cast<size_t>(c)])
            os << "  \"" << label(c) << "\" -> \"" << label(w) << "\";\n";
    os << "}\n";
    return os.str();
}

}  // namespace pibound
