// mms3 — exact maximin-share allocation toolkit for three agents.
//
// Subcommands: shares, solve, verify, emit-milp, reduce, random.
// Exit codes: 0 success / claims hold, 1 usage or input error,
// 2 verification or contract failure, 3 enumeration budget exceeded.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <regex>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mms3/allocate.hpp"
#include "mms3/atomic.hpp"
#include "mms3/instance.hpp"
#include "mms3/io.hpp"
#include "mms3/milpgen.hpp"
#include "mms3/shares.hpp"
#include "mms3/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerifyFailed = 2;
constexpr int kExitBudget = 3;

std::optional<int> env_budget() {
    const char* env = std::getenv("MMS_BUDGET");
    if (!env || !*env)
        return std::nullopt;
    try {
        return std::stoi(env);
    } catch (const std::exception&) {
        throw mms3::ArgumentError("MMS_BUDGET must be an integer item count");
    }
}

int effective_budget(int cli_budget, int fallback) {
    if (cli_budget > 0)
        return cli_budget;
    if (auto env = env_budget())
        return *env;
    return fallback;
}

int agent_index(const mms3::Instance& inst, const std::string& name) {
    for (int i = 0; i < inst.agents(); ++i)
        if (inst.agent_name(i) == name)
            return i;
    try {
        size_t pos = 0;
        int idx = std::stoi(name, &pos);
        if (pos == name.size() && idx >= 0 && idx < inst.agents())
            return idx;
    } catch (const std::exception&) {
    }
    throw mms3::ArgumentError("unknown agent \"" + name + "\"");
}

std::string bundle_text(const mms3::Bundle& bundle) {
    std::string s = "{";
    for (size_t i = 0; i < bundle.size(); ++i)
        s += (i ? "," : "") + ("e" + std::to_string(bundle[i] + 1));
    return s + "}";
}

std::string allocation_text(const mms3::Allocation& alloc) {
    std::string s;
    for (size_t i = 0; i < alloc.bundles.size(); ++i)
        s += (i ? " | " : "") + bundle_text(alloc.bundles[i]);
    return s;
}

nlohmann::json allocation_json(const mms3::Allocation& alloc) {
    nlohmann::json bundles = nlohmann::json::array();
    for (const auto& b : alloc.bundles)
        bundles.push_back(b);
    return bundles;
}

struct SharesArgs {
    std::string in;
    bool json = false;
    int budget = 0;
};

int run_shares(const SharesArgs& args) {
    mms3::Instance inst = mms3::load_instance(args.in);
    int budget = effective_budget(args.budget, mms3::kDefaultShareBudget);
    mms3::ShareProfile profile = mms3::compute_profile(inst, budget);
    if (args.json) {
        nlohmann::json agents = nlohmann::json::array();
        for (int i = 0; i < inst.agents(); ++i) {
            const auto& s = profile.agents[i];
            agents.push_back({{"name", inst.agent_name(i)},
                              {"mms", s.mms.str()},
                              {"ps", s.ps.str()},
                              {"mmS", s.mmS.str()},
                              {"witness", allocation_json(s.witness)}});
        }
        std::cout << nlohmann::json{{"polarity", mms3::to_string(inst.polarity())},
                                    {"agents", agents}}
                         .dump(2)
                  << "\n";
        return kExitOk;
    }
    std::cout << "instance: " << inst.agents() << " agents, " << inst.items() << " items, "
              << mms3::to_string(inst.polarity()) << "\n";
    for (int i = 0; i < inst.agents(); ++i) {
        const auto& s = profile.agents[i];
        std::cout << "agent " << inst.agent_name(i) << ": MMS = " << s.mms << ", PS = " << s.ps
                  << ", mmS = " << s.mmS << ", witness = " << allocation_text(s.witness) << "\n";
    }
    return kExitOk;
}

struct SolveArgs {
    std::string in;
    std::string algo;
    std::string mode;
    std::string u;
    bool json = false;
    int budget = 0;
};

int run_solve(const SolveArgs& args) {
    mms3::Instance inst = mms3::load_instance(args.in);
    const bool goods = inst.polarity() == mms3::Polarity::Goods;
    int share_budget = effective_budget(args.budget, mms3::kDefaultShareBudget);
    int alloc_budget = effective_budget(args.budget, mms3::kDefaultAllocationBudget);
    mms3::ShareProfile profile = mms3::compute_profile(inst, share_budget);

    std::string mode = args.mode;
    if (args.algo == "ambitious")
        mode = "p+mm";
    if (mode.empty())
        mode = "pmm";
    if (mode != "pmm" && mode != "p+mm")
        throw mms3::ArgumentError("--mode must be pmm or p+mm");

    std::optional<int> u;
    if (!args.u.empty())
        u = agent_index(inst, args.u);

    mms3::AllocationResult result;
    if (args.algo == "exhaustive") {
        result = mms3::exhaustive_search(inst, profile, alloc_budget);
    } else if (args.algo == "atomic") {
        result = mms3::atomic_exhaustive_search(inst, profile, alloc_budget);
    } else if (args.algo == "coarse" || args.algo == "ambitious") {
        if (goods) {
            auto m = mode == "pmm" ? mms3::CoarseMode::PMM : mms3::CoarseMode::PPlusMM;
            result = u ? mms3::coarse_search(inst, profile, *u, m)
                       : mms3::coarse_search_best_u(inst, profile, m);
        } else {
            auto m = mode == "pmm" ? mms3::CoarseChoresMode::Pmm : mms3::CoarseChoresMode::PPlusmm;
            result = u ? mms3::coarse_search_chores(inst, profile, *u, m)
                       : mms3::coarse_search_chores_best_u(inst, profile, m);
        }
    } else if (args.algo == "partial") {
        result = u ? mms3::partial_search(inst, profile, *u)
                   : mms3::partial_search_best_u(inst, profile);
    } else {
        throw mms3::ArgumentError("--algo must be exhaustive, atomic, coarse, ambitious or partial");
    }

    if (args.json) {
        nlohmann::json ratios = nlohmann::json::array();
        for (const auto& r : result.per_agent_ratio)
            ratios.push_back(r.str());
        nlohmann::json out{{"algorithm", args.algo},
                           {"mode", mms3::to_string(result.mode)},
                           {"rho", result.rho.str()},
                           {"per_agent_ratio", ratios},
                           {"allocation", allocation_json(result.allocation)},
                           {"p_constraint_met", result.p_constraint_met}};
        if (result.u_agent)
            out["u_agent"] = inst.agent_name(*result.u_agent);
        if (!result.note.empty())
            out["note"] = result.note;
        std::cout << out.dump(2) << "\n";
        return kExitOk;
    }
    std::cout << "algorithm: " << args.algo << " (mode " << mms3::to_string(result.mode);
    if (result.u_agent)
        std::cout << ", U = " << inst.agent_name(*result.u_agent);
    std::cout << ")\n";
    std::cout << "rho = " << result.rho << "\n";
    for (int i = 0; i < inst.agents(); ++i) {
        bool is_u = result.u_agent && *result.u_agent == i;
        const auto& s = profile.agents[i];
        std::cout << "agent " << inst.agent_name(i) << ": bundle = "
                  << bundle_text(result.allocation.bundles[i])
                  << ", value = " << mms3::bundle_value(inst, i, result.allocation.bundles[i])
                  << ", benchmark " << (is_u ? "PS" : (goods ? "MMS" : "mmS")) << " = "
                  << (is_u ? s.ps : (goods ? s.mms : s.mmS))
                  << ", ratio = " << result.per_agent_ratio[i] << "\n";
    }
    if (result.u_agent)
        std::cout << "U constraint (" << (goods ? "full PS" : "within PS")
                  << "): " << (result.p_constraint_met ? "met" : "not met") << "\n";
    if (!result.note.empty())
        std::cout << "note: " << result.note << "\n";
    return kExitOk;
}

struct VerifyArgs {
    std::string which = "all";
    bool json = false;
};

int run_verify(const VerifyArgs& args) {
    std::vector<mms3::VerifyReport> reports;
    if (args.which == "all") {
        reports = mms3::verify_all();
    } else if (args.which == "goods-11-12") {
        reports.push_back(mms3::verify_goods_1112());
    } else if (args.which == "chores-19-18") {
        reports.push_back(mms3::verify_chores_1918());
    } else if (args.which == "partial-9-10") {
        reports.push_back(mms3::verify_partial_910());
    } else {
        throw mms3::ArgumentError("--case must be goods-11-12, chores-19-18, partial-9-10 or all");
    }
    bool all_passed = true;
    if (args.json) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& r : reports) {
            out.push_back(r.json());
            all_passed = all_passed && r.passed;
        }
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& r : reports) {
            std::cout << r.text();
            all_passed = all_passed && r.passed;
        }
    }
    return all_passed ? kExitOk : kExitVerifyFailed;
}

struct EmitArgs {
    std::string model;
    std::string out;
    std::string labels = "appendix-a";
    std::string gamma;
    std::string epsilon;
    std::string solve_cmd;
    int n = 3;
    int b = 4;
};

int run_emit(const EmitArgs& args) {
    mms3::EmitterConfig config;
    if (args.model == "9g")
        config = mms3::EmitterConfig::goods();
    else if (args.model == "9c")
        config = mms3::EmitterConfig::chores();
    else if (args.model == "9p")
        config = mms3::EmitterConfig::partial();
    else if (args.model == "general")
        config = mms3::EmitterConfig::general(args.n);
    else
        throw mms3::ArgumentError("--model must be 9g, 9c, 9p or general");
    if (!args.gamma.empty())
        config.gamma = mms3::Rational::parse(args.gamma);
    if (!args.epsilon.empty())
        config.epsilon = mms3::Rational::parse(args.epsilon);
    config.label_scheme = args.labels == "generator-b" ? mms3::LabelScheme::GeneratorB
                                                       : mms3::LabelScheme::AppendixA;

    mms3::MilpModel model;
    if (args.model == "9g")
        model = mms3::gen_milp9g(config);
    else if (args.model == "9c")
        model = mms3::gen_milp9c(config);
    else if (args.model == "9p")
        model = mms3::gen_milp9p(config);
    else
        model = mms3::gen_general_milp(args.n, args.b, config);

    std::string text = mms3::emit_mathprog(model, config);
    std::ofstream out(args.out);
    if (!out)
        throw mms3::ArgumentError("cannot write model file: " + args.out);
    out << text;
    out.close();
    std::cout << "wrote " << model.name << " to " << args.out << " (" << model.real_vars.size()
              << " real variables, " << model.binary_vars.size() << " binaries, "
              << model.constraints.size() << " constraints, " << model.covering_count()
              << " covering)\n";

    if (!args.solve_cmd.empty()) {
        // User-supplied solver hook: "{}" in the command is replaced by the
        // model path; the objective value is scraped from its output.
        std::string cmd = args.solve_cmd;
        auto pos = cmd.find("{}");
        if (pos != std::string::npos)
            cmd.replace(pos, 2, args.out);
        else
            cmd += " " + args.out;
        cmd += " 2>&1";
        FILE* pipe = popen(cmd.c_str(), "r");
        if (!pipe)
            throw mms3::ArgumentError("cannot run solver command: " + cmd);
        std::string output;
        char buf[4096];
        while (size_t got = fread(buf, 1, sizeof buf, pipe))
            output.append(buf, got);
        int status = pclose(pipe);
        std::cout << output;
        if (status != 0) {
            std::cerr << "solver command failed with status " << status << "\n";
            return kExitVerifyFailed;
        }
        std::regex number("[-+]?[0-9]+(\\.[0-9]+)?([eE][-+]?[0-9]+)?");
        std::optional<std::string> objective;
        std::istringstream lines(output);
        std::string line;
        while (std::getline(lines, line)) {
            if (line.find("mip =") == std::string::npos &&
                line.find("Objective") == std::string::npos &&
                line.find("objective") == std::string::npos)
                continue;
            for (std::sregex_iterator it(line.begin(), line.end(), number), end; it != end; ++it)
                objective = it->str();
        }
        if (!objective) {
            std::cerr << "could not find an objective value in the solver output\n";
            return kExitVerifyFailed;
        }
        std::cout << "solver objective: " << *objective << "\n";
    }
    return kExitOk;
}

struct ReduceArgs {
    std::string in;
    std::string out;
    int budget = 0;
};

int run_reduce(const ReduceArgs& args) {
    mms3::Instance inst = mms3::load_instance(args.in);
    int budget = effective_budget(args.budget, mms3::kDefaultShareBudget);
    mms3::ShareProfile profile = mms3::compute_profile(inst, budget);
    mms3::AtomicStructure structure = mms3::build_atomic(inst, profile);
    mms3::Instance reduced = mms3::reduce_to_items(inst, structure);
    mms3::save_instance(reduced, args.out);
    std::cout << "reduced " << inst.items() << " items to " << reduced.items()
              << " atomic items; wrote " << args.out << "\n";
    return kExitOk;
}

struct RandomArgs {
    unsigned long long seed = 0;
    int m = 6;
    int n = 3;
    long long max_value = 20;
    std::string polarity = "goods";
    std::string out;
};

int run_random(const RandomArgs& args) {
    if (args.m < 0 || args.n < 1 || args.max_value < 0)
        throw mms3::ArgumentError("random: need m >= 0, n >= 1, max-value >= 0");
    mms3::Polarity polarity;
    if (args.polarity == "goods")
        polarity = mms3::Polarity::Goods;
    else if (args.polarity == "chores")
        polarity = mms3::Polarity::Chores;
    else
        throw mms3::ArgumentError("--polarity must be goods or chores");
    // mt19937_64 output is fully specified, and the modulo reduction keeps
    // the generated corpus identical across platforms.
    std::mt19937_64 rng(args.seed);
    std::vector<std::vector<mms3::Rational>> values(args.n);
    for (auto& row : values) {
        for (int j = 0; j < args.m; ++j)
            row.push_back(mms3::Rational(static_cast<long long>(
                rng() % static_cast<unsigned long long>(args.max_value + 1))));
    }
    mms3::Instance inst(polarity, std::move(values));
    mms3::save_instance(inst, args.out);
    std::cout << "wrote " << args.out << " (seed " << args.seed << ", " << args.n << " agents, "
              << args.m << " items, values 0.." << args.max_value << ", " << args.polarity
              << ")\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact maximin-share allocation toolkit for three agents"};
    app.require_subcommand(1);
    int threads = 1;
    app.add_option("--threads", threads,
                   "cap on worker threads (the current implementation is sequential)");

    SharesArgs shares_args;
    auto* shares = app.add_subcommand("shares", "compute MMS, PS and mmS with witnesses");
    shares->add_option("--in", shares_args.in, "instance file")->required();
    shares->add_flag("--json", shares_args.json, "machine-readable output");
    shares->add_option("--budget", shares_args.budget, "enumeration budget (max items)");

    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "run an allocation algorithm");
    solve->add_option("--in", solve_args.in, "instance file")->required();
    solve->add_option("--algo", solve_args.algo, "exhaustive|atomic|coarse|ambitious|partial")
        ->required();
    solve->add_option("--mode", solve_args.mode, "pmm|p+mm (coarse only)");
    solve->add_option("--u", solve_args.u, "designated PS agent (name or index)");
    solve->add_flag("--json", solve_args.json, "machine-readable output");
    solve->add_option("--budget", solve_args.budget, "enumeration budget (max items)");

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "certify the built-in negative examples");
    verify->add_option("--case", verify_args.which, "goods-11-12|chores-19-18|partial-9-10|all");
    verify->add_flag("--json", verify_args.json, "machine-readable output");

    EmitArgs emit_args;
    auto* emit = app.add_subcommand("emit-milp", "write a certificate MILP as MathProg text");
    emit->add_option("--model", emit_args.model, "9g|9c|9p|general")->required();
    emit->add_option("--out", emit_args.out, "output path")->required();
    emit->add_option("--labels", emit_args.labels, "appendix-a|generator-b");
    emit->add_option("--gamma", emit_args.gamma, "override the big-gamma constant");
    emit->add_option("--epsilon", emit_args.epsilon, "override the slack constant");
    emit->add_option("--n", emit_args.n, "agents (general model)");
    emit->add_option("--b", emit_args.b, "atomic bundles (general model)");
    emit->add_option("--solve-cmd", emit_args.solve_cmd,
                     "external solver command; {} is replaced by the model path");

    ReduceArgs reduce_args;
    auto* reduce = app.add_subcommand("reduce", "replace atomic bundles by single items");
    reduce->add_option("--in", reduce_args.in, "instance file")->required();
    reduce->add_option("--out", reduce_args.out, "output path")->required();
    reduce->add_option("--budget", reduce_args.budget, "enumeration budget (max items)");

    RandomArgs random_args;
    auto* random = app.add_subcommand("random", "write a reproducible random instance");
    random->add_option("--seed", random_args.seed, "PRNG seed")->required();
    random->add_option("--m", random_args.m, "item count")->required();
    random->add_option("--n", random_args.n, "agent count (default 3)");
    random->add_option("--max-value", random_args.max_value, "values drawn uniformly from 0..V");
    random->add_option("--polarity", random_args.polarity, "goods|chores");
    random->add_option("--out", random_args.out, "output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*shares)
            return run_shares(shares_args);
        if (*solve)
            return run_solve(solve_args);
        if (*verify)
            return run_verify(verify_args);
        if (*emit)
            return run_emit(emit_args);
        if (*reduce)
            return run_reduce(reduce_args);
        if (*random)
            return run_random(random_args);
    } catch (const mms3::ResourceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const mms3::ContractError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFailed;
    } catch (const mms3::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
