#include "gdlog/engine.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

namespace gdlog {

Rat WorldDistribution::total() const {
    Rat sum = bottom;
    for (const auto& [w, p] : worlds) sum += p;
    return sum;
}

Rat WorldDistribution::mass_of(const Instance& world) const {
    auto it = worlds.find(world);
    return it == worlds.end() ? Rat(0) : it->second;
}

double EmpiricalDistribution::freq_of(const Instance& world) const {
    auto it = counts.find(world);
    if (it == counts.end() || runs == 0) return 0.0;
    return static_cast<double>(it->second) / static_cast<double>(runs);
}

Rat InputPdb::bottom() const {
    Rat sum = 0;
    for (const auto& [w, inst] : worlds) sum += w;
    return 1 - sum;
}

namespace {

/// Exact outcome/probability pairs for one sampler firing.
std::vector<std::pair<Value, Rat>> exact_support(const ExistentialRule& rule,
                                                 const std::vector<Value>& grounding) {
    const Distribution* dist = find_distribution(rule.dist_name);
    std::vector<Value> params = grounding_params(rule, grounding);
    for (const Value& p : params)
        if (p.is_real()) throw InexactParameter(rule.dist_name);
    dist->validate_params(params);
    if (dist->support_kind() != SupportKind::FiniteDiscrete)
        throw NotFinitelyEnumerable(rule.dist_name);
    return dist->support(params);
}

void enum_seq(const ExistentialProgram& prog, const Instance& d, std::size_t depth,
              const Rat& weight, const ExactOptions& opts, WorldDistribution& out) {
    auto pairs = applicable_pairs(prog, d);
    if (pairs.empty()) {
        out.worlds[d] += weight;
        return;
    }
    if (depth >= opts.max_depth) {
        out.bottom += weight;
        return;
    }
    const ApplicablePair& pair = select_pair(opts.policy, pairs);
    const ExistentialRule& rule = prog.rules[static_cast<std::size_t>(pair.rule_index)];
    if (!rule.samples()) {
        enum_seq(prog, extend_seq(d, rule, pair.grounding, std::nullopt), depth + 1, weight,
                 opts, out);
        return;
    }
    for (const auto& [outcome, p] : exact_support(rule, pair.grounding))
        enum_seq(prog, extend_seq(d, rule, pair.grounding, outcome), depth + 1, weight * p,
                 opts, out);
}

void enum_par(const ExistentialProgram& prog, const Instance& d, std::size_t depth,
              const Rat& weight, const ExactOptions& opts, WorldDistribution& out) {
    auto pairs = applicable_pairs(prog, d);
    if (pairs.empty()) {
        out.worlds[d] += weight;
        return;
    }
    if (depth >= opts.max_depth) {
        out.bottom += weight;
        return;
    }
    // product over the independent outcome choices of every applicable pair
    std::vector<FiringTriple> triples;
    triples.reserve(pairs.size());
    std::function<void(std::size_t, const Rat&)> product = [&](std::size_t i, const Rat& w) {
        if (i == pairs.size()) {
            enum_par(prog, extend_par(d, triples), depth + 1, w, opts, out);
            return;
        }
        const ExistentialRule& rule =
            prog.rules[static_cast<std::size_t>(pairs[i].rule_index)];
        if (!rule.samples()) {
            triples.push_back(FiringTriple{&rule, pairs[i].grounding, std::nullopt});
            product(i + 1, w);
            triples.pop_back();
            return;
        }
        for (const auto& [outcome, p] : exact_support(rule, pairs[i].grounding)) {
            triples.push_back(FiringTriple{&rule, pairs[i].grounding, outcome});
            product(i + 1, w * p);
            triples.pop_back();
        }
    };
    product(0, weight);
}

}  // namespace

WorldDistribution exact_enumerate(const ExistentialProgram& prog, const Instance& d0,
                                  const ExactOptions& opts) {
    WorldDistribution out;
    if (opts.mode == ChaseMode::Sequential)
        enum_seq(prog, d0, 0, Rat(1), opts, out);
    else
        enum_par(prog, d0, 0, Rat(1), opts, out);
    return out;
}

WorldDistribution exact_enumerate(const ExistentialProgram& prog, const InputPdb& input,
                                  const ExactOptions& opts) {
    WorldDistribution out;
    out.bottom = input.bottom();
    for (const auto& [w, d0] : input.worlds) {
        if (w == 0) continue;
        if (opts.mode == ChaseMode::Sequential)
            enum_seq(prog, d0, 0, w, opts, out);
        else
            enum_par(prog, d0, 0, w, opts, out);
    }
    return out;
}

namespace {

struct RunResult {
    bool terminated = false;
    Instance instance;
};

EmpiricalDistribution aggregate_runs(const ExistentialProgram& prog, const McOptions& opts,
                                     const std::function<RunResult(std::size_t, Rng&)>& one) {
    std::vector<RunResult> results(opts.runs);
    const unsigned jobs = std::max(1u, opts.jobs);
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&](unsigned t) {
        for (std::size_t r = t; r < opts.runs; r += jobs) {
            try {
                Rng rng(opts.seed, r);
                results[r] = one(r, rng);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> threads;
        for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker, t);
        for (auto& th : threads) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    EmpiricalDistribution out;
    out.runs = opts.runs;
    out.seed = opts.seed;
    for (RunResult& r : results) {
        if (r.terminated)
            ++out.counts[std::move(r.instance)];
        else
            ++out.bottom_count;
    }
    (void)prog;
    return out;
}

}  // namespace

EmpiricalDistribution monte_carlo(const ExistentialProgram& prog, const Instance& d0,
                                  const McOptions& opts) {
    return aggregate_runs(prog, opts, [&](std::size_t, Rng& rng) {
        ChaseOutcome outcome =
            run_chase(prog, d0, opts.mode, opts.policy, opts.budget, rng);
        return RunResult{outcome.terminated, std::move(outcome.instance)};
    });
}

EmpiricalDistribution monte_carlo(const ExistentialProgram& prog, const InputPdb& input,
                                  const McOptions& opts) {
    std::vector<double> cumulative;
    double acc = 0.0;
    for (const auto& [w, inst] : input.worlds) {
        acc += w.convert_to<double>();
        cumulative.push_back(acc);
    }
    return aggregate_runs(prog, opts, [&](std::size_t, Rng& rng) {
        // the first draw of each run selects the input world
        const double u = rng.next_unit();
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        if (it == cumulative.end()) return RunResult{false, Instance{}};
        const auto& d0 = input.worlds[static_cast<std::size_t>(it - cumulative.begin())].second;
        ChaseOutcome outcome =
            run_chase(prog, d0, opts.mode, opts.policy, opts.budget, rng);
        return RunResult{outcome.terminated, std::move(outcome.instance)};
    });
}

WorldDistribution project_worlds(const WorldDistribution& dist,
                                 const std::set<std::string>& keep) {
    WorldDistribution out;
    out.bottom = dist.bottom;
    for (const auto& [w, p] : dist.worlds) out.worlds[project_instance(w, keep)] += p;
    return out;
}

EmpiricalDistribution project_empirical(const EmpiricalDistribution& dist,
                                        const std::set<std::string>& keep) {
    EmpiricalDistribution out;
    out.bottom_count = dist.bottom_count;
    out.runs = dist.runs;
    out.seed = dist.seed;
    for (const auto& [w, c] : dist.counts) out.counts[project_instance(w, keep)] += c;
    return out;
}

Rat total_variation(const WorldDistribution& a, const WorldDistribution& b) {
    Rat sum = abs(a.bottom - b.bottom);
    for (const auto& [w, p] : a.worlds) sum += abs(p - b.mass_of(w));
    for (const auto& [w, p] : b.worlds)
        if (!a.worlds.count(w)) sum += p;
    return sum / 2;
}

double total_variation(const WorldDistribution& a, const EmpiricalDistribution& b) {
    double sum = std::abs(a.bottom.convert_to<double>() -
                          (b.runs ? static_cast<double>(b.bottom_count) / b.runs : 0.0));
    for (const auto& [w, p] : a.worlds)
        sum += std::abs(p.convert_to<double>() - b.freq_of(w));
    for (const auto& [w, c] : b.counts)
        if (!a.worlds.count(w))
            sum += static_cast<double>(c) / static_cast<double>(b.runs);
    return sum / 2.0;
}

namespace {

std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

void append_world_block(std::ostream& os, const std::string& weight, const Instance& world) {
    os << "world " << weight << " {\n";
    for (const Fact& f : world.facts()) os << "  " << f.str() << "\n";
    os << "}\n";
}

std::vector<std::string> fact_lines(const Instance& world) {
    std::vector<std::string> out;
    for (const Fact& f : world.facts()) out.push_back(f.str());
    return out;
}

}  // namespace

std::string serialize(const WorldDistribution& dist, bool json) {
    if (json) {
        nlohmann::json j;
        j["format"] = "gdlog-distribution";
        j["version"] = 1;
        j["mode"] = "exact";
        j["bottom"] = rat_str(dist.bottom);
        j["worlds"] = nlohmann::json::array();
        for (const auto& [w, p] : dist.worlds)
            j["worlds"].push_back({{"probability", rat_str(p)}, {"facts", fact_lines(w)}});
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "gdlog_distribution v1\n";
    os << "mode exact\n";
    os << "bottom " << rat_str(dist.bottom) << "\n";
    for (const auto& [w, p] : dist.worlds) append_world_block(os, rat_str(p), w);
    return os.str();
}

std::string serialize(const EmpiricalDistribution& dist, bool json) {
    if (json) {
        nlohmann::json j;
        j["format"] = "gdlog-distribution";
        j["version"] = 1;
        j["mode"] = "empirical";
        j["seed"] = dist.seed;
        j["runs"] = dist.runs;
        j["bottom"] = dist.bottom_count;
        j["worlds"] = nlohmann::json::array();
        for (const auto& [w, c] : dist.counts)
            j["worlds"].push_back({{"count", c},
                                   {"frequency", dist.freq_of(w)},
                                   {"facts", fact_lines(w)}});
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "gdlog_distribution v1\n";
    os << "mode empirical\n";
    os << "seed " << dist.seed << "\n";
    os << "runs " << dist.runs << "\n";
    os << "bottom " << dist.bottom_count << "\n";
    for (const auto& [w, c] : dist.counts) append_world_block(os, std::to_string(c), w);
    return os.str();
}

}  // namespace gdlog
