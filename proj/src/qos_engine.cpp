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

#include "netqos/qos_engine.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <random>

#include "netqos/error.hpp"

namespace netqos {

namespace {

// Ready set with either ascending-index or seeded random extraction.
class ReadySet {
public:
    explicit ReadySet(const std::optional<std::uint64_t>& seed)
    {
        if (seed)
            rng_.emplace(*seed);
    }

    void push(std::uint32_t v)
    {
        if (rng_)
            pool_.push_back(v);
        else
            heap_.push(v);
    }

    bool empty() const { return rng_ ? pool_.empty() : heap_.empty(); }

    std::uint32_t pop()
    {
        if (!rng_) {
            const auto v = heap_.top();
            heap_.pop();
            return v;
        }
        std::uniform_int_distribution<std::size_t> pick(0, pool_.size() - 1);
        const auto i = pick(*rng_);
        const auto v = pool_[i];
        pool_[i] = pool_.back();
        pool_.pop_back();
        return v;
    }

private:
    std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> heap_;
    std::vector<std::uint32_t> pool_;
    std::optional<std::mt19937_64> rng_;
};

double exec_time(const Problem& problem, const ExecVertex& vertex, const ServiceOffer* offer, double inputMB)
{
    if (offer)
        return offer->sla.execTime(inputMB);
    if (vertex.logic == LogicalKind::Start || vertex.logic == LogicalKind::End)
        return 0;
    return problem.logical.execMs;
}

AggregatedQos atomic_qos(const WorkflowExpr& wf, const ExecGraph& graph, std::span<const QosVector> perNode)
{
    const auto ref = graph.find(wf.name);
    if (ref.value >= perNode.size())
        throw ConfigurationError("no QoS evaluated for node '" + wf.name + "'");
    const auto& q = perNode[ref.value];
    return AggregatedQos{q.cost, q.availability, q.latency};
}

} // namespace

EdgeLegs edge_legs(const Problem& problem, const Assignment& a, NodeRef v, NodeRef w)
{
    const auto& net = problem.net();
    const auto cv = a.control[v.value];
    const auto cw = a.control[w.value];
    return EdgeLegs{net.link(problem.node_location(v, a), cv), net.link(cv, cw),
                    net.link(cw, problem.node_location(w, a))};
}

SimulationResult simulate_execution(const Problem& problem, const Assignment& a, const SimulationOptions& options)
{
    validate_assignment(problem, a);
    const auto& g = problem.graph;
    const auto n = g.size();

    SimulationResult result;
    result.nodes.assign(n, NodeTiming{});
    result.visitOrder.reserve(n);
    std::vector<std::size_t> reqIn(n);
    std::vector<char> released(n, 0);

    ReadySet ready(options.shuffleSeed);
    for (std::uint32_t v = 0; v < n; ++v) {
        reqIn[v] = g.vertices()[v].incoming.size();
        if (reqIn[v] == 0)
            ready.push(v);
    }
    result.nodes[g.source().value].inputMB = problem.inputMB;

    while (!ready.empty()) {
        const NodeRef v{ready.pop()};
        result.visitOrder.push_back(v);
        const auto& vertex = g.vertex(v);
        auto& tv = result.nodes[v.value];
        // Summed in incoming-edge order.
        if (!vertex.incoming.empty()) {
            tv.inputMB = 0;
            for (auto u : vertex.incoming)
                tv.inputMB += result.nodes[u.value].resultMB;
        }

        const ServiceOffer* offer = vertex.isService ? &problem.offer(v, a) : nullptr;
        tv.execMs = exec_time(problem, vertex, offer, tv.inputMB);
        tv.resultMB = offer ? offer->sla.outputSize(tv.inputMB) : tv.inputMB;
        tv.execEnd = tv.execStart + tv.execMs;

        for (auto w : vertex.outgoing) {
            const auto legs = edge_legs(problem, a, v, w);
            const double trans = legs.transfer_ms(tv.resultMB);
            const double delay = legs.delay_ms();
            const double end = tv.execEnd + trans + delay;
            const double net = trans + delay;
            auto& tw = result.nodes[w.value];
            const double pathNet = tv.pathNetMs + net;
            // Among equally late predecessors keep the (pathNet, net) maximum
            // (ties broken lexicographically).
            if (!released[w.value] || end > tw.execStart) {
                tw.execStart = end;
                tw.pathNetMs = pathNet;
                tw.incomingNetMs = net;
                released[w.value] = 1;
            } else if (end == tw.execStart &&
                       (pathNet > tw.pathNetMs || (pathNet == tw.pathNetMs && net > tw.incomingNetMs))) {
                tw.pathNetMs = pathNet;
                tw.incomingNetMs = net;
            }
            if (--reqIn[w.value] == 0)
                ready.push(w.value);
        }
    }
    if (result.visitOrder.size() != n)
        throw CycleError("simulation left nodes unvisited; the execution graph has a cycle");

    const auto& sink = result.nodes[g.sink().value];
    result.runtime = sink.execEnd;
    result.latency = sink.pathNetMs;
    return result;
}

AggregatedQos aggregate_hierarchical(const WorkflowExpr& wf, const ExecGraph& graph, std::span<const QosVector> perNode)
{
    using Kind = WorkflowExpr::Kind;
    if (wf.atomic())
        return atomic_qos(wf, graph, perNode);
    if (wf.children.empty())
        throw StructuralError("workflow pattern without children");

    std::vector<AggregatedQos> parts;
    parts.reserve(wf.children.size());
    for (const auto& child : wf.children)
        parts.push_back(aggregate_hierarchical(child, graph, perNode));

    AggregatedQos out;
    switch (wf.kind) {
    case Kind::Seq:
    case Kind::Loop:
        for (const auto& p : parts) {
            out.cost += p.cost;
            out.availability *= p.availability;
            out.latency += p.latency;
        }
        if (wf.kind == Kind::Loop) {
            out.cost *= wf.count;
            out.availability = std::pow(out.availability, wf.count);
            out.latency *= wf.count;
        }
        return out;
    case Kind::And:
        for (const auto& p : parts) {
            out.cost += p.cost;
            out.availability *= p.availability;
            out.latency = std::max(out.latency, p.latency);
        }
        return out;
    case Kind::Xor:
    case Kind::Or:
        out = parts.front();
        for (const auto& p : parts) {
            out.cost = std::max(out.cost, p.cost);
            out.availability = std::min(out.availability, p.availability);
            out.latency = std::max(out.latency, p.latency);
        }
        return out;
    default:
        break;
    }
    throw StructuralError("unexpected workflow node kind");
}

std::vector<QosVector> per_node_qos(const Problem& problem, const Assignment& a, const SimulationResult& sim)
{
    const auto& g = problem.graph;
    std::vector<QosVector> out(g.size());
    for (std::uint32_t v = 0; v < g.size(); ++v) {
        auto& q = out[v];
        q.runtime = sim.nodes[v].execMs;
        q.latency = sim.nodes[v].incomingNetMs;
        if (g.vertices()[v].isService) {
            const auto& offer = problem.offer(NodeRef{v}, a);
            q.cost = offer.sla.cost;
            q.availability = offer.sla.availability;
        }
    }
    return out;
}

QosVector compute_qos(const Problem& problem, const Assignment& a)
{
    const auto sim = simulate_execution(problem, a);
    const auto perNode = per_node_qos(problem, a, sim);
    const auto agg = aggregate_hierarchical(problem.workflow, problem.graph, perNode);
    return QosVector{sim.runtime, agg.cost, agg.availability, sim.latency};
}

double evaluate_utility(const Problem& problem, const Assignment& a)
{
    return utility(compute_qos(problem, a), problem.utility, problem.bounds);
}

} // namespace netqos
