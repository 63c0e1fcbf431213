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

#include "netqos/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <unordered_map>
#include <utility>

#include "netqos/error.hpp"
#include "netqos/parallel.hpp"
#include "netqos/qos_engine.hpp"

namespace netqos {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void decode_into(const SearchSpace& space, const Problem& problem, std::span<const std::uint32_t> genes, Assignment& a)
{
    a.service.assign(genes.begin(), genes.begin() + static_cast<std::ptrdiff_t>(space.taskGenes));
    a.control.assign(problem.graph.size(), problem.master);
    for (std::size_t i = 0; i < space.controlled.size(); ++i)
        a.control[space.controlled[i].value] = problem.controls[genes[space.taskGenes + i]];
}

Solution finish(const Problem& problem, Assignment a, std::uint64_t evaluations)
{
    Solution s;
    s.qos = compute_qos(problem, a);
    s.utility = utility(s.qos, problem.utility, problem.bounds);
    s.assignment = std::move(a);
    s.evaluations = evaluations;
    return s;
}

} // namespace

Assignment SearchSpace::decode(const Problem& problem, std::span<const std::uint32_t> genes) const
{
    if (genes.size() != radices.size())
        throw ConfigurationError("genome length does not match the search space");
    Assignment a;
    decode_into(*this, problem, genes, a);
    return a;
}

std::vector<std::uint32_t> SearchSpace::encode(const Problem& problem, const Assignment& a) const
{
    validate_assignment(problem, a);
    std::unordered_map<LocationId, std::uint32_t> controlIndex;
    for (std::uint32_t i = 0; i < problem.controls.size(); ++i)
        controlIndex.emplace(problem.controls[i], i);
    std::vector<std::uint32_t> genes(a.service.begin(), a.service.end());
    for (auto v : controlled)
        genes.push_back(controlIndex.at(a.control[v.value]));
    return genes;
}

std::uint64_t SearchSpace::cardinality() const
{
    std::uint64_t total = 1;
    for (auto r : radices) {
        if (r != 0 && total > std::numeric_limits<std::uint64_t>::max() / r)
            return std::numeric_limits<std::uint64_t>::max();
        total *= r;
    }
    return total;
}

SearchSpace search_space(const Problem& problem)
{
    SearchSpace space;
    const auto& g = problem.graph;
    space.taskGenes = g.tasks().size();
    for (std::uint32_t t = 0; t < space.taskGenes; ++t)
        space.radices.push_back(static_cast<std::uint32_t>(problem.catalog.candidate_count(t)));
    for (std::uint32_t v = 0; v < g.size(); ++v) {
        if (NodeRef{v} == g.source() || NodeRef{v} == g.sink())
            continue;
        space.controlled.push_back(NodeRef{v});
        space.radices.push_back(static_cast<std::uint32_t>(problem.controls.size()));
    }
    return space;
}

Solution brute_force(const Problem& problem, const BruteForceOptions& options)
{
    const auto space = search_space(problem);
    const auto total = space.cardinality();
    if (total > options.cap)
        throw SearchSpaceTooLarge("brute force would evaluate " + std::to_string(total) +
                                  " assignments, above the cap of " + std::to_string(options.cap));

    std::vector<std::uint32_t> genes(space.size(), 0);
    Assignment current;
    Assignment best;
    double bestUtility = -kInf;
    std::uint64_t evaluations = 0;
    while (true) {
        decode_into(space, problem, genes, current);
        const double u = evaluate_utility(problem, current);
        ++evaluations;
        if (u > bestUtility) {
            bestUtility = u;
            best = current;
        }
        // Odometer increment, last gene fastest: lexicographic order.
        std::size_t i = genes.size();
        while (i > 0 && ++genes[i - 1] == space.radices[i - 1]) {
            genes[i - 1] = 0;
            --i;
        }
        if (i == 0)
            break;
    }
    return finish(problem, std::move(best), evaluations);
}

Solution dijkstra_sequential(const Problem& problem)
{
    const auto objective = problem.utility.sole_objective();
    if (!objective || (*objective != Attribute::Runtime && *objective != Attribute::Latency))
        throw UnsupportedStructure("dijkstra needs a single runtime or latency objective without constraints");
    const bool withExec = *objective == Attribute::Runtime;
    const auto& g = problem.graph;
    const auto& net = problem.net();

    std::vector<NodeRef> chain;
    for (NodeRef v = g.source();;) {
        const auto& vertex = g.vertex(v);
        if (vertex.incoming.size() > 1 || vertex.outgoing.size() > 1)
            throw UnsupportedStructure("dijkstra only supports sequential workflows");
        chain.push_back(v);
        if (vertex.outgoing.empty())
            break;
        v = vertex.outgoing.front();
    }
    if (chain.size() != g.size())
        throw UnsupportedStructure("dijkstra only supports sequential workflows");
    std::vector<char> taskSeen(g.tasks().size(), 0);
    for (auto v : chain) {
        const auto& vertex = g.vertex(v);
        if (vertex.isService && std::exchange(taskSeen[vertex.task], 1))
            throw UnsupportedStructure("dijkstra needs every task to occur once in the sequence");
    }

    // Per position: candidates (location, exec) and control choices.
    struct Option {
        std::uint32_t candidate;
        bool atControl;
        LocationId location;
        double execMs;
    };
    const std::size_t L = chain.size();
    std::vector<std::vector<Option>> options(L);
    std::vector<std::vector<LocationId>> controls(L);
    std::vector<double> outMB(L);
    double input = problem.inputMB;
    for (std::size_t i = 0; i < L; ++i) {
        const auto& vertex = g.vertex(chain[i]);
        const bool endpoint = i == 0 || i + 1 == L;
        controls[i] = endpoint ? std::vector<LocationId>{problem.master} : problem.controls;
        if (vertex.isService) {
            const auto count = problem.catalog.candidate_count(vertex.task);
            const double out = problem.catalog.candidate(vertex.task, 0).sla.outputSize(input);
            for (std::uint32_t c = 0; c < count; ++c) {
                const auto& offer = problem.catalog.candidate(vertex.task, c);
                const double o = offer.sla.outputSize(input);
                if (std::abs(o - out) > 1e-12 * std::max(1.0, std::abs(out)))
                    throw UnsupportedStructure("dijkstra needs assignment-independent data sizes; task '" +
                                               g.tasks()[vertex.task] + "' candidates differ in output size");
                options[i].push_back({c, false, offer.location, offer.sla.execTime(input)});
            }
            outMB[i] = out;
        } else {
            options[i].push_back({0, true, LocationId{}, endpoint ? 0.0 : problem.logical.execMs});
            outMB[i] = input;
        }
        input = outMB[i];
    }

    // Vertex blocks: N(i) = options x controls, then H(i) and G(i) relays.
    enum class Type : std::uint8_t { Node, Held, Forwarded };
    struct Block {
        std::uint32_t start;
        Type type;
        std::uint32_t pos;
    };
    std::vector<Block> blocks;
    std::uint32_t total = 0;
    for (std::uint32_t i = 0; i < L; ++i) {
        blocks.push_back({total, Type::Node, i});
        total += static_cast<std::uint32_t>(options[i].size() * controls[i].size());
        if (i + 1 < L) {
            blocks.push_back({total, Type::Held, i});
            total += static_cast<std::uint32_t>(controls[i].size());
            blocks.push_back({total, Type::Forwarded, i});
            total += static_cast<std::uint32_t>(controls[i + 1].size());
        }
    }
    const auto nodeVertex = [&](std::uint32_t i, std::size_t opt, std::size_t k) {
        return blocks[3 * i].start + static_cast<std::uint32_t>(opt * controls[i].size() + k);
    };
    const auto optionLocation = [&](std::uint32_t i, std::size_t opt, std::size_t k) {
        const auto& o = options[i][opt];
        return o.atControl ? controls[i][k] : o.location;
    };
    const std::uint32_t target = nodeVertex(static_cast<std::uint32_t>(L - 1), 0, 0);

    std::vector<double> dist(total, kInf);
    std::vector<std::uint32_t> pred(total, std::numeric_limits<std::uint32_t>::max());
    using Entry = std::pair<double, std::uint32_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    std::uint64_t relaxations = 0;
    const auto relax = [&](std::uint32_t from, std::uint32_t to, double weight) {
        ++relaxations;
        const double d = dist[from] + weight;
        if (d < dist[to]) {
            dist[to] = d;
            pred[to] = from;
            heap.emplace(d, to);
        }
    };

    dist[nodeVertex(0, 0, 0)] = 0;
    heap.emplace(0.0, nodeVertex(0, 0, 0));
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u])
            continue;
        if (u == target)
            break;
        const auto& block = *std::prev(std::upper_bound(blocks.begin(), blocks.end(), u,
                                                        [](std::uint32_t x, const Block& b) { return x < b.start; }));
        const auto i = block.pos;
        const auto local = u - block.start;
        switch (block.type) {
        case Type::Node: {
            const auto opt = local / controls[i].size();
            const auto k = local % controls[i].size();
            const double exec = withExec ? options[i][opt].execMs : 0.0;
            const double leg = net.link(optionLocation(i, opt, k), controls[i][k]).time_ms(outMB[i]);
            relax(u, blocks[3 * i + 1].start + static_cast<std::uint32_t>(k), exec + leg);
            break;
        }
        case Type::Held: {
            const auto from = controls[i][local];
            for (std::size_t k = 0; k < controls[i + 1].size(); ++k)
                relax(u, blocks[3 * i + 2].start + static_cast<std::uint32_t>(k),
                      net.link(from, controls[i + 1][k]).time_ms(outMB[i]));
            break;
        }
        case Type::Forwarded: {
            const auto k = local;
            const auto at = controls[i + 1][k];
            for (std::size_t opt = 0; opt < options[i + 1].size(); ++opt)
                relax(u, nodeVertex(i + 1, opt, k), net.link(at, optionLocation(i + 1, opt, k)).time_ms(outMB[i]));
            break;
        }
        }
    }
    if (dist[target] == kInf)
        throw UnsupportedStructure("no path through the layered graph");

    Assignment a = centralized_assignment(problem);
    for (auto u = target; u != std::numeric_limits<std::uint32_t>::max(); u = pred[u]) {
        const auto& block = *std::prev(std::upper_bound(blocks.begin(), blocks.end(), u,
                                                        [](std::uint32_t x, const Block& b) { return x < b.start; }));
        if (block.type != Type::Node)
            continue;
        const auto i = block.pos;
        const auto local = u - block.start;
        const auto opt = local / controls[i].size();
        const auto k = local % controls[i].size();
        const auto& vertex = g.vertex(chain[i]);
        if (vertex.isService)
            a.service[vertex.task] = options[i][opt].candidate;
        a.control[chain[i].value] = controls[i][k];
    }
    return finish(problem, std::move(a), relaxations);
}

void validate(const GaConfig& cfg)
{
    if (cfg.populationSize < 2)
        throw ParameterError("GA population must hold at least two individuals");
    if (cfg.tournamentSize < 1)
        throw ParameterError("GA tournament size must be positive");
    if (cfg.elitism >= cfg.populationSize)
        throw ParameterError("GA elitism must be smaller than the population");
    if (!(cfg.crossoverRate >= 0 && cfg.crossoverRate <= 1))
        throw ParameterError("GA crossover rate must lie in [0, 1]");
    if (cfg.mutationRate > 1)
        throw ParameterError("GA mutation rate must not exceed 1");
}

namespace {

using Genome = std::vector<std::uint32_t>;

class GeneticSearch {
public:
    GeneticSearch(const Problem& problem, const GaConfig& cfg, bool networkAware)
        : problem_(problem), cfg_(cfg), networkAware_(networkAware), space_(search_space(problem)), rng_(cfg.seed)
    {
        validate(cfg);
        mutationRate_ = cfg.mutationRate < 0 ? (space_.size() ? 1.0 / static_cast<double>(space_.size()) : 0.0)
                                             : cfg.mutationRate;
        if (networkAware_)
            prepare_locality();
    }

    GaResult run()
    {
        std::vector<Genome> population(cfg_.populationSize);
        for (auto& genome : population)
            genome = initial_genome();
        std::vector<double> fitness = evaluate(population);

        GaResult result;
        Genome best = population.front();
        double bestFitness = -kInf;
        const auto track = [&] {
            for (std::size_t i = 0; i < population.size(); ++i) {
                if (fitness[i] > bestFitness) {
                    bestFitness = fitness[i];
                    best = population[i];
                }
            }
            result.trace.push_back(bestFitness);
        };
        track();

        for (std::size_t gen = 0; gen < cfg_.generations; ++gen) {
            std::vector<std::size_t> rank(population.size());
            std::iota(rank.begin(), rank.end(), 0);
            std::stable_sort(rank.begin(), rank.end(), [&](auto a, auto b) { return fitness[a] > fitness[b]; });

            std::vector<Genome> next;
            next.reserve(population.size());
            for (std::size_t e = 0; e < cfg_.elitism; ++e)
                next.push_back(population[rank[e]]);
            const std::size_t elites = next.size();
            while (next.size() < population.size()) {
                Genome a = population[tournament(fitness)];
                Genome b = population[tournament(fitness)];
                if (space_.size() >= 2 && unit_(rng_) < cfg_.crossoverRate) {
                    std::uniform_int_distribution<std::size_t> cut(1, space_.size() - 1);
                    const auto at = cut(rng_);
                    std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(at), a.end(),
                                     b.begin() + static_cast<std::ptrdiff_t>(at));
                }
                mutate(a);
                mutate(b);
                next.push_back(std::move(a));
                if (next.size() < population.size())
                    next.push_back(std::move(b));
            }
            std::vector<double> nextFitness(next.size());
            for (std::size_t e = 0; e < elites; ++e)
                nextFitness[e] = fitness[rank[e]];
            const auto fresh = evaluate(std::span<const Genome>(next).subspan(elites));
            std::copy(fresh.begin(), fresh.end(), nextFitness.begin() + static_cast<std::ptrdiff_t>(elites));
            population = std::move(next);
            fitness = std::move(nextFitness);
            track();
        }

        static_cast<Solution&>(result) = finish(problem_, space_.decode(problem_, best), evaluations_);
        return result;
    }

private:
    std::vector<double> evaluate(std::span<const Genome> genomes)
    {
        std::vector<double> out(genomes.size());
        parallel_for(genomes.size(), cfg_.threads, [&](std::size_t i) {
            Assignment a;
            decode_into(space_, problem_, genomes[i], a);
            out[i] = evaluate_utility(problem_, a);
        });
        evaluations_ += genomes.size();
        return out;
    }

    std::size_t tournament(const std::vector<double>& fitness)
    {
        std::uniform_int_distribution<std::size_t> pick(0, fitness.size() - 1);
        std::size_t winner = pick(rng_);
        for (std::size_t i = 1; i < cfg_.tournamentSize; ++i) {
            const auto challenger = pick(rng_);
            if (fitness[challenger] > fitness[winner])
                winner = challenger;
        }
        return winner;
    }

    std::uint32_t uniform_gene(std::size_t gene)
    {
        std::uniform_int_distribution<std::uint32_t> pick(0, space_.radices[gene] - 1);
        return pick(rng_);
    }

    Genome initial_genome()
    {
        Genome genome(space_.size());
        if (!networkAware_) {
            for (std::size_t i = 0; i < genome.size(); ++i)
                genome[i] = uniform_gene(i);
            return genome;
        }
        for (auto task : taskOrder_)
            genome[task] = biased_candidate(genome, task);
        for (std::size_t i = 0; i < space_.controlled.size(); ++i)
            genome[space_.taskGenes + i] = nearest_control(anchor_location(genome, space_.controlled[i]));
        return genome;
    }

    void mutate(Genome& genome)
    {
        for (std::size_t i = 0; i < genome.size(); ++i) {
            if (unit_(rng_) >= mutationRate_)
                continue;
            if (!networkAware_) {
                genome[i] = uniform_gene(i);
                continue;
            }
            if (i < space_.taskGenes) {
                const auto task = static_cast<std::uint32_t>(i);
                genome[task] = biased_candidate(genome, task);
                const auto where = problem_.catalog.candidate(task, genome[task]).location;
                for (auto slot : controlSlotsOfTask_[task])
                    genome[space_.taskGenes + slot] = nearest_control(where);
            } else if (unit_(rng_) < 0.5) {
                genome[i] = nearest_control(anchor_location(genome, space_.controlled[i - space_.taskGenes]));
            } else {
                genome[i] = uniform_gene(i);
            }
        }
    }

    // Network-aware helpers.

    void prepare_locality()
    {
        const auto& g = problem_.graph;
        const auto order = g.topological_order();
        const auto maxIn = max_input_sizes(problem_);
        taskAnchor_.assign(g.tasks().size(), NodeRef{});
        taskSize_.assign(g.tasks().size(), 0);
        controlSlotsOfTask_.assign(g.tasks().size(), {});
        std::vector<char> seen(g.tasks().size(), 0);
        for (auto v : order) {
            const auto& vertex = g.vertex(v);
            if (vertex.isService && !std::exchange(seen[vertex.task], 1)) {
                taskAnchor_[vertex.task] = v;
                taskSize_[vertex.task] = maxIn[v.value];
                taskOrder_.push_back(vertex.task);
            }
        }
        for (std::size_t i = 0; i < space_.controlled.size(); ++i) {
            const auto& vertex = g.vertex(space_.controlled[i]);
            if (vertex.isService)
                controlSlotsOfTask_[vertex.task].push_back(i);
        }
    }

    // Location of the closest upstream service node, or the master.
    LocationId upstream_location(const Genome& genome, NodeRef v) const
    {
        const auto& g = problem_.graph;
        for (;;) {
            const auto& vertex = g.vertex(v);
            if (vertex.incoming.empty())
                return problem_.master;
            v = vertex.incoming.front();
            const auto& up = g.vertex(v);
            if (up.isService)
                return problem_.catalog.candidate(up.task, genome[up.task]).location;
        }
    }

    LocationId anchor_location(const Genome& genome, NodeRef v) const
    {
        const auto& vertex = problem_.graph.vertex(v);
        if (vertex.isService)
            return problem_.catalog.candidate(vertex.task, genome[vertex.task]).location;
        return upstream_location(genome, v);
    }

    std::uint32_t biased_candidate(const Genome& genome, std::uint32_t task)
    {
        const auto& net = problem_.net();
        const auto from = problem_.controls[nearest_control(upstream_location(genome, taskAnchor_[task]))];
        const auto count = problem_.catalog.candidate_count(task);
        std::vector<double> weights(count);
        for (std::uint32_t c = 0; c < count; ++c) {
            // Routed through the candidate's nearest control node.
            const auto where = problem_.catalog.candidate(task, c).location;
            const auto via = problem_.controls[nearest_control(where)];
            const double t = net.link(from, via).time_ms(taskSize_[task]) + net.link(via, where).time_ms(taskSize_[task]);
            weights[c] = 1.0 / ((1.0 + t) * (1.0 + t));
        }
        std::discrete_distribution<std::uint32_t> pick(weights.begin(), weights.end());
        return pick(rng_);
    }

    std::uint32_t nearest_control(LocationId where)
    {
        auto it = nearestCache_.find(where);
        if (it != nearestCache_.end())
            return it->second;
        const auto& controls = problem_.controls;
        std::uint32_t best = 0;
        double bestDelay = kInf;
        for (std::uint32_t k = 0; k < controls.size(); ++k) {
            const double d = problem_.net().link(where, controls[k]).delayMs;
            if (d < bestDelay) {
                bestDelay = d;
                best = k;
            }
        }
        nearestCache_.emplace(where, best);
        return best;
    }

    const Problem& problem_;
    GaConfig cfg_;
    bool networkAware_;
    SearchSpace space_;
    std::mt19937_64 rng_;
    std::uniform_real_distribution<double> unit_{0.0, 1.0};
    double mutationRate_{0};
    std::uint64_t evaluations_{0};

    std::vector<NodeRef> taskAnchor_;
    std::vector<double> taskSize_;
    std::vector<std::uint32_t> taskOrder_;
    std::vector<std::vector<std::size_t>> controlSlotsOfTask_;
    std::unordered_map<LocationId, std::uint32_t> nearestCache_;
};

} // namespace

GaResult ga_standard(const Problem& problem, const GaConfig& cfg) { return GeneticSearch(problem, cfg, false).run(); }

GaResult ga_network_aware(const Problem& problem, const GaConfig& cfg) { return GeneticSearch(problem, cfg, true).run(); }

Problem unlimited_control_variant(const Problem& problem)
{
    Problem out = problem;
    const auto all = problem.net().all_ids();
    out.set_controls(problem.master, all);
    return out;
}

} // namespace netqos
