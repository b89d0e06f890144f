#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "cycles.hpp"
#include "digraph.hpp"
#include "dmdp_analysis.hpp"
#include "extremal.hpp"
#include "mdp.hpp"
#include "pi.hpp"
#include "twostate.hpp"
#include "verify.hpp"

using namespace pibound;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

SwitchingRule parse_rule(const std::string& spec) {
    if (spec == "howard") return SwitchingRule::howard();
    if (spec == "maxgain-howard") return SwitchingRule::maxgain_howard();
    if (spec == "maxgain-simplex") return SwitchingRule::maxgain_simplex();
    if (spec.rfind("scripted:", 0) == 0) {
        auto j = nlohmann::json::parse(slurp(spec.substr(9)));
        std::vector<Policy> script;
        for (const auto& jp : j) script.push_back(jp.get<Policy>());
        return SwitchingRule::scripted(std::move(script));
    }
    if (spec.rfind("random:", 0) == 0)
        return SwitchingRule::random(std::stoull(spec.substr(7)));
    throw CLI::ValidationError("--rule", "unknown rule: " + spec);
}

Policy parse_policy_csv(const std::string& csv) {
    Policy p;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) p.push_back(std::stoi(item));
    return p;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact policy-iteration and digraph-cycle toolkit"};
    app.require_subcommand(1);

    // gen-extremal
    auto* gen = app.add_subcommand("gen-extremal", "emit an extremal family member as graph JSON");
    std::string family, gen_dot;
    int gn = 0, gk = 2, gl = 1;
    gen->add_option("--family", family, "gn|gnk|gpnk|gexample")->required();
    gen->add_option("--n", gn, "vertex parameter");
    gen->add_option("--k", gk, "outdegree parameter");
    gen->add_option("--l", gl, "unit count for gexample");
    gen->add_option("--dot", gen_dot, "also write DOT (edge labels carry multiplicities)");
    gen->callback([&] {
        Digraph g;
        if (family == "gn") g = gen_gn(gn);
        else if (family == "gnk") g = gen_gnk(gn, gk);
        else if (family == "gpnk") g = gen_gpnk(gn, gk);
        else if (family == "gexample") g = gen_gexample(gl, gk);
        else throw CLI::ValidationError("--family", "unknown family: " + family);
        if (!gen_dot.empty()) spit(gen_dot, digraph_to_dot(g));
        std::cout << digraph_to_json_string(g) << "\n";
    });

    // count
    auto* cnt = app.add_subcommand("count", "exact cycle/path/path-cycle counts of a graph");
    std::string cnt_input, what;
    int cnt_k = 0;
    bool list_objects = false, dedup_subgraph = false;
    cnt->add_option("--input", cnt_input, "graph JSON file")->required();
    cnt->add_option("--what", what, "cycles|path-cycles|paths|n1|n2")->required();
    cnt->add_option("--k", cnt_k, "declared outdegree (n1/n2)");
    cnt->add_flag("--list", list_objects, "stream objects as JSON lines to stdout");
    cnt->add_flag("--dedup-subgraph", dedup_subgraph,
                  "count path-cycles as edge-instance subgraphs instead of rooted objects");
    cnt->callback([&] {
        Digraph g = digraph_from_json_string(slurp(cnt_input));
        if (list_objects) {
            if (what == "cycles") {
                for_each_simple_cycle(g, [](const std::vector<int>& vs, const Int& w) {
                    nlohmann::json j{{"vertices", vs}, {"weight", w.get_str()}};
                    std::cout << j.dump() << "\n";
                });
            } else if (what == "paths") {
                for_each_simple_path(g, [](const std::vector<int>& vs, const Int& w) {
                    nlohmann::json j{{"vertices", vs}, {"weight", w.get_str()}};
                    std::cout << j.dump() << "\n";
                });
            } else if (what == "path-cycles") {
                for_each_path_cycle(g, [](const std::vector<int>& vs, int m, const Int& w) {
                    nlohmann::json j{{"vertices", vs}, {"close_index", m}, {"weight", w.get_str()}};
                    std::cout << j.dump() << "\n";
                });
            } else {
                throw CLI::ValidationError("--list", "listing supports cycles|paths|path-cycles");
            }
            return;
        }
        Int v;
        if (what == "cycles") v = count_cycles(g);
        else if (what == "path-cycles")
            v = dedup_subgraph ? count_path_cycles_subgraph(g) : count_path_cycles(g);
        else if (what == "paths") v = count_paths(g);
        else if (what == "n1") v = n1(g, cnt_k);
        else if (what == "n2") v = n2(g, cnt_k);
        else throw CLI::ValidationError("--what", "unknown quantity: " + what);
        std::cout << v.get_str() << "\n";
    });

    // bounds
    auto* bnd = app.add_subcommand("bounds", "CSV of all bound values at (n, k)");
    int bn = 0, bk = 2, bdigits = 12;
    bnd->add_option("--n", bn)->required();
    bnd->add_option("--k", bk)->required();
    bnd->add_option("--digits", bdigits, "significant digits");
    bnd->callback([&] {
        std::cout << "name,n,k,value\n";
        for (Bound b : {Bound::MkBound, Bound::FkUpper, Bound::FkLower, Bound::StarBound,
                        Bound::N1Bound, Bound::N2Bound, Bound::ArbitraryPiBound,
                        Bound::MaxGainPiBound})
            std::cout << bound_name(b) << "," << bn << "," << bk << ","
                      << bound_eval(b, bn, bk, bdigits) << "\n";
    });

    // bruteforce
    auto* bf = app.add_subcommand("bruteforce", "exhaustive max cycle count over a graph class");
    std::string bf_class;
    int bf_n = 0, bf_k = 2;
    bf->add_option("--class", bf_class, "simple|multi")->required();
    bf->add_option("--n", bf_n)->required();
    bf->add_option("--k", bf_k)->required();
    bf->callback([&] {
        Int v = bf_class == "simple" ? brute_mk(bf_n, bf_k) : brute_fk(bf_n, bf_k);
        std::cout << v.get_str() << "\n";
    });

    // gen-adversarial
    auto* adv = app.add_subcommand("gen-adversarial", "2-state worst-case instance generators");
    std::string kind, eps_str = "1/10", adv_out;
    int adv_k = 2;
    std::uint64_t adv_seed = 0;
    adv->add_option("--kind", kind, "arbitrary|maxgain")->required();
    adv->add_option("--k", adv_k)->required();
    adv->add_option("--epsilon", eps_str, "rational epsilon for maxgain");
    auto* seed_opt =
        adv->add_option("--seed", adv_seed, "sample the feasible range instead of the canonical instance");
    adv->add_option("--out", adv_out, "output MDP JSON path (stdout if omitted)");
    adv->callback([&] {
        TwoStateParams p;
        if (kind == "arbitrary")
            p = seed_opt->count() > 0 ? gen_arbitrary_seeded(adv_k, adv_seed) : gen_arbitrary(adv_k);
        else if (kind == "maxgain")
            p = gen_maxgain(adv_k, rat_from_string(eps_str));
        else
            throw CLI::ValidationError("--kind", "unknown kind: " + kind);
        std::string text = mdp_to_json_string(p.to_mdp());
        if (adv_out.empty()) std::cout << text << "\n";
        else spit(adv_out, text);
    });

    // run-pi
    auto* rp = app.add_subcommand("run-pi", "run a policy-iteration variant and emit the trajectory");
    std::string rp_mdp, rp_rule = "howard", rp_init;
    rp->add_option("--mdp", rp_mdp, "MDP JSON file")->required();
    rp->add_option("--rule", rp_rule, "howard|maxgain-simplex|maxgain-howard|scripted:FILE|random:SEED");
    rp->add_option("--init", rp_init, "comma-separated initial policy (defaults to all zeros)");
    rp->callback([&] {
        MdpFile f = mdp_from_json_string(slurp(rp_mdp));
        SwitchingRule rule = parse_rule(rp_rule);
        Policy init = rp_init.empty() ? Policy(static_cast<size_t>(f.mdp.n), 0)
                                      : parse_policy_csv(rp_init);
        if (rule.states == SwitchingRule::States::Scripted && !rp_init.empty() &&
            rule.script.front() != init)
            throw CLI::ValidationError("--init", "scripted sequence starts elsewhere");
        if (rule.states == SwitchingRule::States::Scripted) init = rule.script.front();
        PiTrajectory t = run_pi(f.mdp, init, rule);
        std::cout << trajectory_to_json_string(t) << "\n";
        std::cerr << "policies visited: " << t.length() << "\n";
    });

    // pidag
    auto* pd = app.add_subcommand("pidag", "build the policy improvement DAG");
    std::string pd_mdp, pd_dot;
    bool pd_maxgain = false, pd_stats = false;
    long pd_cap = 4096;
    pd->add_option("--mdp", pd_mdp, "MDP JSON file")->required();
    pd->add_flag("--max-gain", pd_maxgain, "keep only exact max-gain switches");
    pd->add_option("--dot", pd_dot, "write DOT to this path");
    pd->add_flag("--stats", pd_stats, "print vertex/edge/longest-path statistics");
    pd->add_option("--cap", pd_cap, "policy count cap");
    pd->callback([&] {
        MdpFile f = mdp_from_json_string(slurp(pd_mdp));
        PiDag d = build_pidag(f.mdp, pd_maxgain, pd_cap);
        if (!pd_dot.empty()) spit(pd_dot, pidag_to_dot(d));
        if (pd_stats || pd_dot.empty()) {
            auto [len, path] = longest_path(d);
            nlohmann::json j;
            j["policies"] = d.n_policies;
            j["edges"] = d.edge_count();
            j["longest_path"] = len;
            nlohmann::json sinks = nlohmann::json::array();
            for (long c : d.sink_codes()) {
                std::string s;
                for (int a : d.decode(c)) s += std::to_string(a);
                sinks.push_back(s);
            }
            j["sinks"] = sinks;
            std::cout << j.dump() << "\n";
        }
    });

    // audit
    auto* au = app.add_subcommand("audit", "audit a recorded trajectory against the path-cycle bounds");
    std::string au_mdp, au_traj, au_mode = "arbitrary";
    bool au_howard = false;
    au->add_option("--mdp", au_mdp, "DMDP JSON file")->required();
    au->add_option("--trajectory", au_traj, "trajectory JSON file")->required();
    au->add_option("--mode", au_mode, "arbitrary|maxgain");
    au->add_flag("--howard-tight", au_howard, "additionally check the tightened all-states bound");
    au->callback([&] {
        MdpFile f = mdp_from_json_string(slurp(au_mdp));
        if (!f.dmdp) throw CLI::ValidationError("--mdp", "audit requires a deterministic MDP");
        PiTrajectory t = trajectory_from_json_string(slurp(au_traj));
        AuditMode mode = au_mode == "maxgain" ? AuditMode::MaxGain : AuditMode::Arbitrary;
        AuditReport r = audit_trajectory(*f.dmdp, t, mode, au_howard);
        std::cout << audit_report_to_json_string(r) << "\n";
        if (!r.pass()) throw CLI::RuntimeError(1);
    });

    // verify-2state
    auto* v2 = app.add_subcommand("verify-2state", "sweep 2-state DMDPs against the path-length caps");
    std::string v2_kind, v2_mode = "exhaustive";
    int v2_k = 2;
    v2->add_option("--kind", v2_kind, "arbitrary|maxgain")->required();
    v2->add_option("--k", v2_k)->required();
    v2->add_option("--mode", v2_mode, "exhaustive|random:N:SEED");
    v2->callback([&] {
        bool exhaustive = v2_mode == "exhaustive";
        long trials = 50;
        std::uint64_t seed = 1;
        if (!exhaustive) {
            if (v2_mode.rfind("random:", 0) != 0)
                throw CLI::ValidationError("--mode", "expected exhaustive or random:N:SEED");
            auto rest = v2_mode.substr(7);
            auto colon = rest.find(':');
            trials = std::stol(rest.substr(0, colon));
            seed = colon == std::string::npos ? 1 : std::stoull(rest.substr(colon + 1));
        }
        TwoStateUbReport r = v2_kind == "maxgain" ? verify_maxgain_ub(v2_k, exhaustive, trials, seed)
                                                  : verify_arbitrary_ub(v2_k, exhaustive, trials, seed);
        std::cout << twostate_report_to_json_string(r) << "\n";
        if (!r.pass) throw CLI::RuntimeError(1);
    });

    // verify-all
    auto* va = app.add_subcommand("verify-all", "run the full verification suite");
    std::string profile_str = "quick";
    va->add_option("--profile", profile_str, "quick|full");
    va->callback([&] {
        Profile profile = profile_str == "full" ? Profile::Full : Profile::Quick;
        auto results = run_suite(profile);
        std::cout << suite_to_json_string(results, profile) << "\n";
        for (const auto& r : results)
            std::cerr << (r.pass ? "PASS " : "FAIL ") << r.name << " (" << r.observed << ")\n";
        if (!suite_passed(results)) throw CLI::RuntimeError(1);
    });

    try {
        CLI11_PARSE(app, argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
