#include "gdlog/analysis.hpp"
#include "gdlog/engine.hpp"
#include "gdlog/parser.hpp"
#include "gdlog/ppdl.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace {

using namespace gdlog;

struct UserError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UserError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output_path);
    if (!out) throw UserError("cannot write " + output_path);
    out << text;
}

Program load_program(const std::string& path) {
    Program p = parse_program(slurp(path), path);
    auto diags = validate_program(p);
    if (!diags.empty()) {
        std::ostringstream os;
        for (const auto& d : diags) {
            os << path;
            if (d.rule_index >= 0) os << " (rule " << d.rule_index << ")";
            os << ": " << to_string(d.code) << ": " << d.message << "\n";
        }
        throw UserError(os.str());
    }
    return p;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("GDLOG_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw UserError("GDLOG_SEED is not a valid unsigned integer");
        }
    }
    return 0;
}

struct CommonOpts {
    std::string program_path;
    std::string facts_path;
    std::string mode = "parallel";
    std::string policy = "rule-index";
    std::string format = "text";
    std::string output;
    std::size_t budget = 10000;
    std::size_t max_depth = 10000;
    bool keep_aux = false;
};

ChaseMode parse_mode(const std::string& mode) {
    if (mode == "sequential") return ChaseMode::Sequential;
    if (mode == "parallel") return ChaseMode::Parallel;
    throw UserError("unknown mode " + mode + " (sequential or parallel)");
}

PolicyKind parse_policy(const std::string& name) {
    if (auto p = policy_from_name(name)) return *p;
    throw UserError("unknown policy " + name +
                    " (rule-index, reverse-rule-index or grounding-first)");
}

bool is_pdb(const std::string& path) {
    return path.size() >= 4 && path.substr(path.size() - 4) == ".pdb";
}

/// Means of every real-valued final attribute, grouped by the value prefix;
/// the run summary printed to stderr.
void print_summary(const ExistentialProgram& prog, const EmpiricalDistribution& dist) {
    // (relation, prefix) -> (sum, count)
    std::map<std::pair<std::string, std::vector<Value>>, std::pair<double, std::size_t>>
        cells;
    for (const auto& [world, count] : dist.counts) {
        for (const auto& [rel, tuples] : world.relations()) {
            auto it = prog.schema.find(rel);
            if (it == prog.schema.end() || it->second.kind != RelationKind::Intensional ||
                it->second.domains.empty() || it->second.domains.back() != DomainTag::Real)
                continue;
            for (const auto& t : tuples) {
                if (!t.back().is_numeric()) continue;
                std::vector<Value> prefix(t.begin(), t.end() - 1);
                auto& cell = cells[{rel, std::move(prefix)}];
                cell.first += t.back().to_double() * static_cast<double>(count);
                cell.second += count;
            }
        }
    }
    for (const auto& [key, cell] : cells) {
        Fact f{key.first, key.second};
        std::cerr << "mean " << f.str() << " " << cell.first / static_cast<double>(cell.second)
                  << " over " << cell.second << " runs\n";
    }
}

int dispatch(int argc, char** argv) {
    CLI::App app{"Generative Datalog engine"};
    app.require_subcommand(1);

    CommonOpts opt;
    std::uint64_t seed = default_seed();
    std::size_t samples = 10000;
    unsigned jobs = 1;
    bool trace = false;
    std::string dist_path, cstr_path;

    auto add_io = [&](CLI::App* cmd, bool with_facts) {
        cmd->add_option("program", opt.program_path, "program file")->required();
        if (with_facts)
            cmd->add_option("facts", opt.facts_path, "input facts (.facts) or .pdb file");
        cmd->add_option("--format", opt.format, "text or json");
        cmd->add_option("-o,--output", opt.output, "output file (default stdout)");
    };
    auto add_chase = [&](CLI::App* cmd) {
        cmd->add_option("--mode", opt.mode, "sequential or parallel");
        cmd->add_option("--policy", opt.policy, "sequential selection policy");
        cmd->add_flag("--keep-aux", opt.keep_aux, "keep auxiliary sampler relations");
    };

    CLI::App* translate = app.add_subcommand("translate", "print the existential version");
    add_io(translate, false);

    CLI::App* check = app.add_subcommand("check", "weak-acyclicity termination check");
    check->add_option("program", opt.program_path, "program file")->required();

    CLI::App* enumerate = app.add_subcommand("enumerate", "exact world distribution");
    add_io(enumerate, true);
    add_chase(enumerate);
    enumerate->add_option("--max-depth", opt.max_depth, "depth bound for exact paths");

    CLI::App* run = app.add_subcommand("run", "Monte Carlo world distribution");
    add_io(run, true);
    add_chase(run);
    run->add_option("--samples", samples, "number of runs");
    run->add_option("--budget", opt.budget, "chase step budget per run");
    run->add_option("--seed", seed, "master seed");
    run->add_option("--jobs", jobs, "worker threads (output independent of this)");
    run->add_flag("--trace", trace, "stream per-step chase records to stderr");

    CLI::App* condition = app.add_subcommand("condition", "condition a saved distribution");
    condition->add_option("distribution", dist_path, "saved distribution file")->required();
    condition->add_option("constraint", cstr_path, "constraint (.cstr) file")->required();
    condition->add_option("--format", opt.format, "text or json");
    condition->add_option("-o,--output", opt.output, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    const bool json = opt.format == "json";
    if (!json && opt.format != "text") throw UserError("unknown format " + opt.format);

    if (translate->parsed()) {
        emit(existential_str(to_existential(load_program(opt.program_path))), opt.output);
        return 0;
    }

    if (check->parsed()) {
        auto report = analyze_weak_acyclicity(to_existential(load_program(opt.program_path)));
        if (report.weakly_acyclic) {
            std::cout << "weakly-acyclic\n";
        } else {
            std::cout << "not weakly acyclic; cycle:";
            for (const auto& p : report.witness_cycle) std::cout << " " << p.str();
            std::cout << "\n";
        }
        return 0;
    }

    if (condition->parsed()) {
        ParsedDistribution dist = parse_distribution(slurp(dist_path), dist_path);
        Constraint cstr = parse_constraint(slurp(cstr_path), cstr_path);
        if (auto problems = check_constraint(cstr); !problems.empty())
            throw UserError(cstr_path + ": " + problems.front());
        std::visit(
            [&](const auto& d) { emit(serialize(gdlog::condition(d, cstr), json), opt.output); },
            dist);
        return 0;
    }

    // enumerate / run
    Program program = load_program(opt.program_path);
    ExistentialProgram prog = to_existential(program);
    const ChaseMode mode = parse_mode(opt.mode);
    const PolicyKind policy = parse_policy(opt.policy);

    Instance d0;
    InputPdb pdb;
    const bool from_pdb = !opt.facts_path.empty() && is_pdb(opt.facts_path);
    if (!opt.facts_path.empty()) {
        if (from_pdb)
            pdb = parse_pdb(slurp(opt.facts_path), opt.facts_path);
        else
            d0 = parse_facts(slurp(opt.facts_path), opt.facts_path);
    }

    if (enumerate->parsed()) {
        ExactOptions eo{mode, policy, opt.max_depth};
        WorldDistribution dist =
            from_pdb ? exact_enumerate(prog, pdb, eo) : exact_enumerate(prog, d0, eo);
        if (!opt.keep_aux) dist = project_worlds(dist, prog.original_relations);
        emit(serialize(dist, json), opt.output);
        return 0;
    }

    McOptions mo{mode, policy, opt.budget, seed, samples, jobs};
    EmpiricalDistribution dist;
    if (trace && !from_pdb) {
        // traced runs are executed inline so records stay in run order
        dist.runs = mo.runs;
        dist.seed = mo.seed;
        for (std::size_t r = 0; r < mo.runs; ++r) {
            Rng rng(mo.seed, r);
            std::vector<TraceRecord> records;
            ChaseOutcome out = run_chase(prog, d0, mode, policy, mo.budget, rng, &records);
            for (const auto& rec : records) std::cerr << "run=" << r << " " << rec.str() << "\n";
            if (out.terminated)
                ++dist.counts[std::move(out.instance)];
            else
                ++dist.bottom_count;
        }
    } else {
        dist = from_pdb ? monte_carlo(prog, pdb, mo) : monte_carlo(prog, d0, mo);
    }
    print_summary(prog, dist);
    if (!opt.keep_aux) dist = project_empirical(dist, prog.original_relations);
    emit(serialize(dist, json), opt.output);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const UserError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "engine error: " << e.what() << "\n";
        return 2;
    }
}
