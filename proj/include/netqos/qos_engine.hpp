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

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "netqos/problem.hpp"

namespace netqos {

struct NodeTiming {
    double execStart{0};
    double execEnd{0};
    double inputMB{0};
    double resultMB{0};
    double execMs{0};
    double incomingNetMs{0};  // network time of the edge that released the node
    double pathNetMs{0};      // network time accumulated along the critical path
};

struct SimulationOptions {
    // Visit ready nodes in a seeded random order instead of ascending index.
    std::optional<std::uint64_t> shuffleSeed;
};

struct SimulationResult {
    std::vector<NodeTiming> nodes;  // indexed by NodeRef
    std::vector<NodeRef> visitOrder;
    double runtime{0};
    double latency{0};
};

// The three network legs a result takes from v to its successor w:
// v -> cv, cv -> cw, cw -> w.
struct EdgeLegs {
    LinkQos toControl;
    LinkQos betweenControls;
    LinkQos fromControl;

    double delay_ms() const { return toControl.delayMs + betweenControls.delayMs + fromControl.delayMs; }
    double transfer_ms(double sizeMB) const
    {
        return toControl.transfer_ms(sizeMB) + betweenControls.transfer_ms(sizeMB) + fromControl.transfer_ms(sizeMB);
    }
    double time_ms(double sizeMB) const { return transfer_ms(sizeMB) + delay_ms(); }
};

EdgeLegs edge_legs(const Problem& problem, const Assignment& a, NodeRef v, NodeRef w);

/// Phase 1. Processes ready nodes (all predecessors visited) Kahn-style;
/// each visit evaluates the node's SLA at its input size and pushes the
/// successors' start times past the three-leg network time of the result.
/// Runtime is the end node's finish time.
SimulationResult simulate_execution(const Problem& problem, const Assignment& a, const SimulationOptions& options = {});

struct AggregatedQos {
    double cost{0};
    double availability{1};
    double latency{0};
};

/// Phase 2. Seq sums cost and latency and multiplies availability; AND sums
/// cost, multiplies availability and takes the latency maximum; XOR and OR
/// keep the worst branch for every attribute. Loops still present in the
/// tree count as `count` sequential repetitions of their body.
AggregatedQos aggregate_hierarchical(const WorkflowExpr& wf, const ExecGraph& graph, std::span<const QosVector> perNode);

// QoS of each node after phase 1: exec time as runtime, SLA cost and
// availability (neutral for logical nodes), incoming network time as latency.
std::vector<QosVector> per_node_qos(const Problem& problem, const Assignment& a, const SimulationResult& sim);

/// Two-phase QoS: runtime and latency come from the simulation, cost and
/// availability from hierarchical aggregation.
QosVector compute_qos(const Problem& problem, const Assignment& a);

// utility(compute_qos(...)) under the problem's utility spec and bounds.
double evaluate_utility(const Problem& problem, const Assignment& a);

} // namespace netqos
