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
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "netqos/ids.hpp"
#include "netqos/network.hpp"
#include "netqos/sla.hpp"
#include "netqos/workflow.hpp"

namespace netqos {

// Cost profile shared by fork/join/decision/merge and user logic nodes.
// Start and end nodes never cost anything. Logical nodes pass their
// accumulated input through as their result.
struct LogicalProfile {
    double execMs{0};
};

/// Offers grouped by the task they implement. Candidate indices are
/// positions within a task's list, in file order.
class OfferCatalog {
public:
    OfferCatalog() = default;
    // Throws ConfigurationError when an offer names a task the graph does not
    // contain, or when some task has no offer.
    OfferCatalog(std::vector<ServiceOffer> offers, const ExecGraph& graph);

    const std::vector<ServiceOffer>& offers() const { return offers_; }
    std::size_t task_count() const { return byTask_.size(); }
    std::size_t candidate_count(std::uint32_t task) const { return byTask_.at(task).size(); }
    const ServiceOffer& candidate(std::uint32_t task, std::uint32_t index) const
    {
        return offers_[byTask_.at(task).at(index)];
    }
    // Candidate index of an offer id within its task; throws LookupError.
    std::uint32_t candidate_index(std::uint32_t task, const std::string& offerId) const;

private:
    std::vector<ServiceOffer> offers_;
    std::vector<std::vector<std::uint32_t>> byTask_;
};

/// The unit optimizers search over: one candidate per task and one control
/// node per graph vertex.
struct Assignment {
    std::vector<std::uint32_t> service;  // per task, candidate index
    std::vector<LocationId> control;     // per vertex

    friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Everything needed to evaluate an assignment: the normalized workflow and
/// its graph, the network, the offers, the control-node plan and the
/// user's utility.
struct Problem {
    WorkflowExpr workflow;  // normalized
    ExecGraph graph;
    std::shared_ptr<const NetworkModel> network;
    OfferCatalog catalog;
    LocationId master;
    std::vector<LocationId> controls;  // master first, then deployed slaves
    double inputMB{0};
    LogicalProfile logical;
    UtilitySpec utility;
    QosBounds bounds;

    const NetworkModel& net() const { return *network; }
    std::size_t slave_count() const { return controls.size() - 1; }
    bool is_control(LocationId id) const { return id.value < controlMask_.size() && controlMask_[id.value]; }

    // Replaces the deployed slaves; duplicates and the master are dropped.
    void set_controls(LocationId masterLocation, std::span<const LocationId> slaves);

    // Location the node runs at: the offer's location for service nodes, the
    // control node for logical ones.
    LocationId node_location(NodeRef v, const Assignment& a) const;
    const ServiceOffer& offer(NodeRef v, const Assignment& a) const;

private:
    std::vector<char> controlMask_;
};

struct ProblemOptions {
    double inputMB{0};
    LogicalProfile logical;
    UtilitySpec utility{UtilitySpec::single(Attribute::Runtime)};
};

Problem make_problem(const WorkflowExpr& workflow, std::shared_ptr<const NetworkModel> network,
                     std::vector<ServiceOffer> offers, LocationId master, std::span<const LocationId> slaves,
                     const ProblemOptions& options = {});

// Throws ConfigurationError when the assignment is incomplete, references unknown
// candidates, uses an undeployed control node or moves start/end off the master.
void validate_assignment(const Problem& problem, const Assignment& a);

// First candidate everywhere, every node controlled by the master.
Assignment centralized_assignment(const Problem& problem);

/// Largest input each vertex can receive over all assignments.
std::vector<double> max_input_sizes(const Problem& problem);

/// Normalization bounds every reachable QoS vector is guaranteed to lie in:
/// runtime and latency in [0, sum of worst node and edge times], cost in
/// [0, sum of the most expensive candidates], availability in [0, 1].
QosBounds conservative_bounds(const Problem& problem);

} // namespace netqos
