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

#include "netqos/fixtures.hpp"

#include <memory>

#include "netqos/error.hpp"

namespace netqos::fixtures {

namespace {

ServiceOffer offer(const std::string& id, const std::string& task, LocationId at, PiecewiseLinear exec,
                   PiecewiseLinear out, double cost)
{
    ServiceOffer o;
    o.id = id;
    o.task = task;
    o.location = at;
    o.sla.execTime = std::move(exec);
    o.sla.outputSize = std::move(out);
    o.sla.cost = cost;
    return o;
}

} // namespace

Problem france_japan(bool zeroNetwork)
{
    std::vector<NetworkLocation> sites{{"France", 0, 0},     {"Paris", 0.1, 0}, {"Lyon", 0, 0.2},
                                       {"Marseille", 0.1, 0.25}, {"Japan", 75, 0}, {"USA", 30, 30}};
    auto net = zeroNetwork ? std::make_shared<const NetworkModel>(sites, 0.0, std::vector<double>{kUnlimitedRate})
                           : std::make_shared<const NetworkModel>(sites, 1.0, std::vector<double>{12.5});
    const auto at = [&](const char* name) { return net->find(name); };
    const auto out = PiecewiseLinear::constant(0.001);
    using PL = PiecewiseLinear;
    std::vector<ServiceOffer> offers{
        offer("X1", "X", at("Paris"), PL::constant(100), out, 3),
        offer("X2", "X", at("Japan"), PL::constant(80), out, 2),
        offer("A1", "A", at("Lyon"), PL::constant(200), out, 3),
        offer("A2", "A", at("Japan"), PL::constant(175), out, 2),
        offer("B1", "B", at("Marseille"), PL::constant(180), out, 3),
        offer("B2", "B", at("USA"), PL::constant(190), out, 3),
        offer("B3", "B", at("Japan"), PL::constant(160), out, 2),
    };
    const auto wf = WorkflowExpr::seq(
        {WorkflowExpr::service("X"), WorkflowExpr::all({WorkflowExpr::service("A"), WorkflowExpr::service("B")})});
    ProblemOptions options;
    options.inputMB = 0.001;
    options.utility.weights = {0.999, 0.001, 0, 0};
    const auto master = at("France");
    return make_problem(wf, std::move(net), std::move(offers), master, {}, options);
}

Problem audio(double inputMB)
{
    auto net = std::make_shared<const NetworkModel>(
        std::vector<NetworkLocation>{{"Studio", 0, 0}, {"M1", 3, 4}, {"M2", 4, 3}}, 1.0, std::vector<double>{12.5});
    std::vector<ServiceOffer> offers{
        offer("M1", "Encode", net->find("M1"), PiecewiseLinear::linear(10), PiecewiseLinear::linear(0.5), 1),
        offer("M2", "Encode", net->find("M2"), PiecewiseLinear::linear(12, 3600), PiecewiseLinear::linear(0.25), 1),
    };
    ProblemOptions options;
    options.inputMB = inputMB;
    const auto master = net->find("Studio");
    return make_problem(WorkflowExpr::service("Encode"), std::move(net), std::move(offers), master, {}, options);
}

Problem diamond()
{
    auto net = std::make_shared<const NetworkModel>(
        std::vector<NetworkLocation>{{"F", 0, 0}, {"Q", 1, 0}, {"P", 20, 0}, {"J", 21, 0}}, 1.0,
        std::vector<double>{kUnlimitedRate});
    std::vector<ServiceOffer> offers{
        offer("A@P", "A", net->find("P"), PiecewiseLinear::constant(100), PiecewiseLinear::constant(0), 1),
        offer("B@Q", "B", net->find("Q"), PiecewiseLinear::constant(100), PiecewiseLinear::constant(0), 1),
    };
    const std::vector<LocationId> slaves{net->find("Q"), net->find("P"), net->find("J")};
    const auto master = net->find("F");
    return make_problem(WorkflowExpr::all({WorkflowExpr::service("A"), WorkflowExpr::service("B")}), std::move(net),
                        std::move(offers), master, slaves);
}

Assignment diamond_assignment(const Problem& problem)
{
    auto a = centralized_assignment(problem);
    const auto& g = problem.graph;
    const auto& net = problem.net();
    for (const auto& v : g.vertices()) {
        const auto ref = g.find(v.name);
        if (v.logic == LogicalKind::Join)
            a.control[ref.value] = net.find("J");
    }
    a.control[g.find("A").value] = net.find("P");
    a.control[g.find("B").value] = net.find("Q");
    return a;
}

Assignment pick_services(const Problem& problem, const std::vector<std::string>& offerIds)
{
    auto a = centralized_assignment(problem);
    for (const auto& id : offerIds) {
        bool found = false;
        for (std::uint32_t t = 0; t < problem.graph.tasks().size() && !found; ++t) {
            for (std::uint32_t c = 0; c < problem.catalog.candidate_count(t); ++c) {
                if (problem.catalog.candidate(t, c).id == id) {
                    a.service[t] = c;
                    found = true;
                    break;
                }
            }
        }
        if (!found)
            throw LookupError("unknown offer '" + id + "'");
    }
    return a;
}

} // namespace netqos::fixtures
