// Copyright 2026 The netqos Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "netqos/scenario.hpp"

#include <cmath>
#include <map>
#include <ostream>
#include <random>

#include "netqos/error.hpp"
#include "netqos/parallel.hpp"

namespace netqos {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream)
{
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

class WorkflowGenerator {
public:
    WorkflowGenerator(std::uint64_t seed, const WorkflowGenParams& params) : rng_(seed), params_(params)
    {
        const double total =
            params.seqWeight + params.andWeight + params.xorWeight + params.orWeight + params.loopWeight;
        if (!(params.seqWeight >= 0 && params.andWeight >= 0 && params.xorWeight >= 0 && params.orWeight >= 0 &&
              params.loopWeight >= 0) ||
            !(total > 0))
            throw ParameterError("pattern weights must be non-negative with a positive sum");
        if (params.maxBranches < 2)
            throw ParameterError("patterns need at least two branches");
        if (params.maxLoopCount < 1)
            throw ParameterError("loop count must be positive");
    }

    WorkflowExpr build(int lo, int hi, bool insideLoop)
    {
        const int n = hi - lo;
        if (params_.sequentialOnly) {
            std::vector<WorkflowExpr> tasks;
            for (int t = lo; t < hi; ++t)
                tasks.push_back(leaf(t));
            return WorkflowExpr::seq(std::move(tasks));
        }
        const double loopWeight = insideLoop ? 0.0 : params_.loopWeight;
        if (n == 1) {
            std::bernoulli_distribution wrap(loopWeight / (loopWeight + params_.seqWeight + 1e-300));
            if (loopWeight > 0 && wrap(rng_))
                return WorkflowExpr::loop({leaf(lo)}, loop_count());
            return leaf(lo);
        }
        std::discrete_distribution<int> pattern(
            {params_.seqWeight, params_.andWeight, params_.xorWeight, params_.orWeight, loopWeight});
        const int p = pattern(rng_);
        if (p == 4)
            return WorkflowExpr::loop({build(lo, hi, true)}, loop_count());

        std::uniform_int_distribution<int> branches(2, std::min(params_.maxBranches, n));
        const int parts = branches(rng_);
        // parts - 1 distinct cut points in (lo, hi).
        std::vector<int> cuts(static_cast<std::size_t>(n - 1));
        for (int i = 0; i < n - 1; ++i)
            cuts[static_cast<std::size_t>(i)] = lo + 1 + i;
        std::shuffle(cuts.begin(), cuts.end(), rng_);
        cuts.resize(static_cast<std::size_t>(parts - 1));
        std::sort(cuts.begin(), cuts.end());
        cuts.push_back(hi);

        std::vector<WorkflowExpr> children;
        int from = lo;
        for (int cut : cuts) {
            children.push_back(build(from, cut, insideLoop));
            from = cut;
        }
        switch (p) {
        case 0: return WorkflowExpr::seq(std::move(children));
        case 1: return WorkflowExpr::all(std::move(children));
        case 2: return WorkflowExpr::exclusive(std::move(children));
        default: return WorkflowExpr::inclusive(std::move(children));
        }
    }

private:
    static WorkflowExpr leaf(int t) { return WorkflowExpr::service("T" + std::to_string(t + 1)); }

    int loop_count()
    {
        std::uniform_int_distribution<int> count(std::min(2, params_.maxLoopCount), params_.maxLoopCount);
        return count(rng_);
    }

    std::mt19937_64 rng_;
    WorkflowGenParams params_;
};

void collect_tasks(const WorkflowExpr& wf, std::vector<std::string>& out)
{
    if (wf.kind == WorkflowExpr::Kind::Service) {
        if (std::find(out.begin(), out.end(), wf.task) == out.end())
            out.push_back(wf.task);
        return;
    }
    for (const auto& c : wf.children)
        collect_tasks(c, out);
}

double uniform(std::mt19937_64& rng, double lo, double hi)
{
    if (hi <= lo)
        return lo;
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

} // namespace

WorkflowExpr generate_workflow(std::size_t size, std::uint64_t seed, const WorkflowGenParams& params)
{
    if (size == 0)
        throw ParameterError("workflow size must be at least 1");
    WorkflowGenerator gen(seed, params);
    auto wf = gen.build(0, static_cast<int>(size), false);
    validate(wf);
    return wf;
}

std::vector<ServiceOffer> generate_offers(const WorkflowExpr& wf, const NetworkModel& net, std::uint64_t seed,
                                          const OfferGenParams& params)
{
    if (net.size() == 0)
        throw ParameterError("offers need a non-empty network");
    if (params.minCandidates < 1 || params.maxCandidates < params.minCandidates)
        throw ParameterError("candidate range must satisfy 1 <= min <= max");
    std::vector<std::string> tasks;
    collect_tasks(wf, tasks);

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> count(params.minCandidates, params.maxCandidates);
    std::uniform_int_distribution<std::uint32_t> where(0, static_cast<std::uint32_t>(net.size() - 1));
    std::vector<ServiceOffer> offers;
    for (const auto& task : tasks) {
        const auto out = PiecewiseLinear::linear(uniform(rng, params.minOutRatio, params.maxOutRatio),
                                                 uniform(rng, 0, params.maxOutBaseMB));
        const auto n = count(rng);
        for (std::size_t c = 0; c < n; ++c) {
            ServiceOffer o;
            o.id = task + "." + std::to_string(c + 1);
            o.task = task;
            o.location = LocationId{where(rng)};
            o.sla.execTime =
                PiecewiseLinear::linear(uniform(rng, 0, params.maxMsPerMB), uniform(rng, params.minExecMs, params.maxExecMs));
            o.sla.outputSize = out;
            o.sla.cost = uniform(rng, params.minCost, params.maxCost);
            o.sla.availability = uniform(rng, params.minAvailability, params.maxAvailability);
            offers.push_back(std::move(o));
        }
    }
    return offers;
}

Problem generate_problem(const InstanceParams& params, std::uint64_t seed)
{
    auto net = std::make_shared<const NetworkModel>(generate_network(params.locations, derive_seed(seed, 1), params.network));
    auto wf = generate_workflow(params.workflowSize, derive_seed(seed, 2), params.workflow);
    auto offers = generate_offers(wf, *net, derive_seed(seed, 3), params.offers);
    std::mt19937_64 rng(derive_seed(seed, 4));
    const LocationId master{std::uniform_int_distribution<std::uint32_t>(0, static_cast<std::uint32_t>(net->size() - 1))(rng)};
    const auto slaves = choose_control_nodes(*net, params.slaves, derive_seed(seed, 5));
    ProblemOptions options;
    options.inputMB = params.inputMB;
    options.logical = params.logical;
    options.utility = params.utility;
    return make_problem(wf, std::move(net), std::move(offers), master, slaves, options);
}

ExperimentConfig default_experiment_config()
{
    ExperimentConfig cfg;
    cfg.instance.workflow.sequentialOnly = true;
    return cfg;
}

void validate(const ExperimentConfig& cfg)
{
    if (cfg.trials == 0)
        throw ParameterError("experiments need at least one trial");
    if (cfg.instance.locations == 0)
        throw ParameterError("experiments need at least one location");
    for (auto k : cfg.controlCounts) {
        if (k > cfg.instance.locations)
            throw ParameterError("control count " + std::to_string(k) + " exceeds the number of locations");
    }
    if (cfg.sizeExperimentControls > cfg.instance.locations)
        throw ParameterError("size experiment control count exceeds the number of locations");
    for (auto s : cfg.sizes) {
        if (s == 0)
            throw ParameterError("workflow sizes must be positive");
    }
    for (const auto& a : cfg.algorithms) {
        if (a != "brute" && a != "dijkstra" && a != "ga" && a != "netga-like")
            throw ConfigurationError("unknown algorithm '" + a + "'");
    }
    validate(cfg.ga);
}

Solution run_algorithm(const std::string& algo, const Problem& problem, const GaConfig& ga)
{
    if (algo == "brute")
        return brute_force(problem);
    if (algo == "dijkstra")
        return dijkstra_sequential(problem);
    if (algo == "ga")
        return ga_standard(problem, ga);
    if (algo == "netga-like" || algo == "netga")
        return ga_network_aware(problem, ga);
    throw ConfigurationError("unknown algorithm '" + algo + "'");
}

namespace {

struct Cell {
    std::string algo;
    std::size_t x;
    std::optional<double> latency;  // empty when the algorithm does not apply
};

std::vector<ExperimentRow> reduce(const std::vector<std::vector<Cell>>& perTrial)
{
    std::vector<ExperimentRow> rows;
    std::map<std::pair<std::string, std::size_t>, std::size_t> index;
    for (const auto& trial : perTrial) {
        for (const auto& cell : trial) {
            auto key = std::make_pair(cell.algo, cell.x);
            auto it = index.find(key);
            if (it == index.end()) {
                it = index.emplace(key, rows.size()).first;
                rows.push_back(ExperimentRow{cell.algo, cell.x, 0, 0, 0, {}});
            }
            if (cell.latency)
                rows[it->second].samples.push_back(*cell.latency);
        }
    }
    std::vector<ExperimentRow> out;
    for (auto& row : rows) {
        row.trials = row.samples.size();
        if (row.trials == 0)
            continue;
        double sum = 0;
        for (double s : row.samples)
            sum += s;
        row.meanLatency = sum / static_cast<double>(row.trials);
        double sq = 0;
        for (double s : row.samples)
            sq += (s - row.meanLatency) * (s - row.meanLatency);
        row.stdev = row.trials > 1 ? std::sqrt(sq / static_cast<double>(row.trials - 1)) : 0.0;
        out.push_back(std::move(row));
    }
    return out;
}

std::optional<double> latency_of(const std::string& algo, const Problem& problem, const GaConfig& ga)
{
    try {
        return run_algorithm(algo, problem, ga).qos.latency;
    } catch (const UnsupportedStructure&) {
        return std::nullopt;
    }
}

void run_point(const ExperimentConfig& cfg, Problem& problem, std::uint64_t trialSeed, std::size_t x,
               std::vector<Cell>& cells)
{
    GaConfig ga = cfg.ga;
    ga.seed = derive_seed(trialSeed, 100 + x);
    ga.threads = 1;
    for (const auto& algo : cfg.algorithms)
        cells.push_back({algo, x, latency_of(algo, problem, ga)});
}

void run_unlimited(const ExperimentConfig& cfg, const Problem& problem, std::uint64_t trialSeed,
                   std::vector<Cell>& cells)
{
    if (!cfg.unlimitedVariants)
        return;
    const auto unlimited = unlimited_control_variant(problem);
    const auto x = problem.net().size();
    GaConfig ga = cfg.ga;
    ga.seed = derive_seed(trialSeed, 99);
    ga.threads = 1;
    for (const auto& algo : cfg.algorithms)
        cells.push_back({algo + "[o]", x, latency_of(algo, unlimited, ga)});
}

} // namespace

std::vector<ExperimentRow> experiment_latency_vs_controls(const ExperimentConfig& cfg)
{
    validate(cfg);
    std::vector<std::vector<Cell>> perTrial(cfg.trials);
    parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
        const auto trialSeed = derive_seed(cfg.seed, t);
        auto params = cfg.instance;
        params.slaves = 0;
        auto problem = generate_problem(params, trialSeed);
        auto& cells = perTrial[t];
        for (auto k : cfg.controlCounts) {
            const auto slaves = choose_control_nodes(problem.net(), k, derive_seed(trialSeed, 5));
            problem.set_controls(problem.master, slaves);
            run_point(cfg, problem, trialSeed, k, cells);
        }
        run_unlimited(cfg, problem, trialSeed, cells);
    });
    return reduce(perTrial);
}

std::vector<ExperimentRow> experiment_latency_vs_size(const ExperimentConfig& cfg)
{
    validate(cfg);
    std::vector<std::vector<Cell>> perTrial(cfg.trials);
    parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
        const auto trialSeed = derive_seed(cfg.seed, t);
        auto& cells = perTrial[t];
        for (auto size : cfg.sizes) {
            auto params = cfg.instance;
            params.workflowSize = size;
            params.slaves = cfg.sizeExperimentControls;
            const auto sizeSeed = derive_seed(trialSeed, 1000 + size);
            auto problem = generate_problem(params, sizeSeed);
            run_point(cfg, problem, sizeSeed, size, cells);
            if (cfg.unlimitedVariants) {
                const auto unlimited = unlimited_control_variant(problem);
                GaConfig ga = cfg.ga;
                ga.seed = derive_seed(sizeSeed, 99);
                ga.threads = 1;
                for (const auto& algo : cfg.algorithms)
                    cells.push_back({algo + "[o]", size, latency_of(algo, unlimited, ga)});
            }
        }
    });
    return reduce(perTrial);
}

namespace {

std::string number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

} // namespace

void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows, const std::string& xName)
{
    out << "algo," << xName << ",meanLatency,stdev\n";
    for (const auto& r : rows)
        out << r.algo << ',' << r.x << ',' << number(r.meanLatency) << ',' << number(r.stdev) << '\n';
}

void write_gnuplot(std::ostream& out, const std::vector<ExperimentRow>& rows, const std::string& xName)
{
    std::vector<std::string> order;
    for (const auto& r : rows) {
        if (std::find(order.begin(), order.end(), r.algo) == order.end())
            order.push_back(r.algo);
    }
    bool firstBlock = true;
    for (const auto& algo : order) {
        if (!firstBlock)
            out << "\n\n";
        firstBlock = false;
        out << "# " << algo << "\n# " << xName << " meanLatency stdev\n";
        for (const auto& r : rows) {
            if (r.algo == algo)
                out << r.x << ' ' << number(r.meanLatency) << ' ' << number(r.stdev) << '\n';
        }
    }
}

} // namespace netqos
