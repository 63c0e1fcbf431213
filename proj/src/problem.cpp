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

#include "netqos/problem.hpp"

#include <algorithm>

#include "netqos/error.hpp"

namespace netqos {

OfferCatalog::OfferCatalog(std::vector<ServiceOffer> offers, const ExecGraph& graph)
    : offers_(std::move(offers)), byTask_(graph.tasks().size())
{
    for (std::uint32_t i = 0; i < offers_.size(); ++i) {
        const auto& offer = offers_[i];
        validate(offer.sla);
        const auto task = graph.task_index(offer.task);
        if (!task)
            throw ConfigurationError("offer '" + offer.id + "' implements unknown task '" + offer.task + "'");
        byTask_[*task].push_back(i);
    }
    for (std::uint32_t t = 0; t < byTask_.size(); ++t) {
        if (byTask_[t].empty())
            throw ConfigurationError("task '" + graph.tasks()[t] + "' has no service offer");
    }
}

std::uint32_t OfferCatalog::candidate_index(std::uint32_t task, const std::string& offerId) const
{
    const auto& list = byTask_.at(task);
    for (std::uint32_t i = 0; i < list.size(); ++i) {
        if (offers_[list[i]].id == offerId)
            return i;
    }
    throw LookupError("offer '" + offerId + "' is not a candidate of its task");
}

void Problem::set_controls(LocationId masterLocation, std::span<const LocationId> slaves)
{
    const auto& model = net();
    model.location(masterLocation);
    master = masterLocation;
    controls.assign(1, masterLocation);
    controlMask_.assign(model.size(), 0);
    controlMask_[masterLocation.value] = 1;
    for (auto s : slaves) {
        model.location(s);
        if (controlMask_[s.value])
            continue;
        controlMask_[s.value] = 1;
        controls.push_back(s);
    }
}

LocationId Problem::node_location(NodeRef v, const Assignment& a) const
{
    const auto& vertex = graph.vertex(v);
    if (vertex.isService)
        return catalog.candidate(vertex.task, a.service[vertex.task]).location;
    return a.control[v.value];
}

const ServiceOffer& Problem::offer(NodeRef v, const Assignment& a) const
{
    const auto& vertex = graph.vertex(v);
    if (!vertex.isService)
        throw ConfigurationError("logical node '" + vertex.name + "' has no service offer");
    return catalog.candidate(vertex.task, a.service[vertex.task]);
}

Problem make_problem(const WorkflowExpr& workflow, std::shared_ptr<const NetworkModel> network,
                     std::vector<ServiceOffer> offers, LocationId master, std::span<const LocationId> slaves,
                     const ProblemOptions& options)
{
    if (!network)
        throw ConfigurationError("problem needs a network");
    if (!(options.inputMB >= 0))
        throw ParameterError("workflow input size must be non-negative");
    if (!(options.logical.execMs >= 0))
        throw ParameterError("logical node execution time must be non-negative");
    validate(options.utility);

    Problem p;
    p.workflow = is_normalized(workflow) ? workflow : normalize(workflow);
    p.graph = build_graph(p.workflow);
    p.network = std::move(network);
    for (const auto& offer : offers)
        p.network->location(offer.location);
    p.catalog = OfferCatalog(std::move(offers), p.graph);
    p.set_controls(master, slaves);
    p.inputMB = options.inputMB;
    p.logical = options.logical;
    p.utility = options.utility;
    p.bounds = conservative_bounds(p);
    return p;
}

void validate_assignment(const Problem& problem, const Assignment& a)
{
    const auto& g = problem.graph;
    if (a.service.size() != g.tasks().size())
        throw ConfigurationError("assignment covers " + std::to_string(a.service.size()) + " of " +
                                 std::to_string(g.tasks().size()) + " tasks");
    if (a.control.size() != g.size())
        throw ConfigurationError("assignment covers " + std::to_string(a.control.size()) + " of " +
                                 std::to_string(g.size()) + " workflow nodes");
    for (std::uint32_t t = 0; t < a.service.size(); ++t) {
        if (a.service[t] >= problem.catalog.candidate_count(t))
            throw ConfigurationError("task '" + g.tasks()[t] + "' assigned a non-existent candidate");
    }
    for (std::uint32_t v = 0; v < a.control.size(); ++v) {
        if (!problem.is_control(a.control[v]))
            throw ConfigurationError("node '" + g.vertices()[v].name + "' is controlled by an undeployed location");
    }
    if (a.control[g.source().value] != problem.master || a.control[g.sink().value] != problem.master)
        throw ConfigurationError("start and end nodes must be controlled by the master");
}

Assignment centralized_assignment(const Problem& problem)
{
    Assignment a;
    a.service.assign(problem.graph.tasks().size(), 0);
    a.control.assign(problem.graph.size(), problem.master);
    return a;
}

std::vector<double> max_input_sizes(const Problem& problem)
{
    const auto& g = problem.graph;
    std::vector<double> maxIn(g.size(), 0);
    maxIn[g.source().value] = problem.inputMB;
    for (auto v : g.topological_order()) {
        const auto& vertex = g.vertex(v);
        double out = maxIn[v.value];
        if (vertex.isService) {
            out = 0;
            for (std::uint32_t c = 0; c < problem.catalog.candidate_count(vertex.task); ++c)
                out = std::max(out, problem.catalog.candidate(vertex.task, c).sla.outputSize.max_over(maxIn[v.value]));
        }
        for (auto w : vertex.outgoing)
            maxIn[w.value] += out;
    }
    return maxIn;
}

QosBounds conservative_bounds(const Problem& problem)
{
    const auto& g = problem.graph;
    const auto& net = problem.net();
    const auto maxIn = max_input_sizes(problem);
    double execSum = 0;
    double netSum = 0;
    double costSum = 0;
    for (std::uint32_t v = 0; v < g.size(); ++v) {
        const auto& vertex = g.vertices()[v];
        double maxOut = maxIn[v];
        if (vertex.isService) {
            double maxExec = 0;
            double maxCost = 0;
            maxOut = 0;
            for (std::uint32_t c = 0; c < problem.catalog.candidate_count(vertex.task); ++c) {
                const auto& sla = problem.catalog.candidate(vertex.task, c).sla;
                maxExec = std::max(maxExec, sla.execTime.max_over(maxIn[v]));
                maxOut = std::max(maxOut, sla.outputSize.max_over(maxIn[v]));
                maxCost = std::max(maxCost, sla.cost);
            }
            execSum += maxExec;
            costSum += maxCost;
        } else if (vertex.logic != LogicalKind::Start && vertex.logic != LogicalKind::End) {
            execSum += problem.logical.execMs;
        }
        const double leg = net.max_delay_bound() + LinkQos{0, net.min_rate()}.transfer_ms(maxOut);
        netSum += 3 * leg * static_cast<double>(vertex.outgoing.size());
    }
    QosBounds b;
    b.lo = {0, 0, 0, 0};
    b.hi = {execSum + netSum, costSum, 1, netSum};
    return b;
}

} // namespace netqos
