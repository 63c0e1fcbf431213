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

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netqos/problem.hpp"

namespace netqos {

// A neighbour of a package's node together with the control node that
// handles it.
struct PackagePeer {
    NodeRef node;
    LocationId control;
};

/// Everything a control node learns about one workflow node. Slaves see
/// nothing else of the workflow.
struct WorkPackage {
    NodeRef node;
    std::string name;
    LocationId control;
    std::optional<ServiceOffer> service;  // empty for logical nodes
    LogicalKind logic{LogicalKind::Decision};
    double logicalExecMs{0};
    std::vector<PackagePeer> predecessors;
    std::vector<PackagePeer> successors;
    bool returnToMaster{false};
    std::optional<double> workflowInputMB;  // start node only
};

using PackagePlan = std::map<LocationId, std::vector<WorkPackage>>;

WorkPackage make_package(const Problem& problem, const Assignment& a, NodeRef v);

// One package per graph vertex, grouped by the control node it is sent to.
PackagePlan plan_and_distribute(const Problem& problem, const Assignment& a);

std::size_t package_count(const PackagePlan& plan);

// Service `node` fails at max(atMs, its execution start) if that is before
// the execution would have finished. Each fault fires at most once; listing
// a node twice fails two consecutive attempts.
struct Fault {
    std::string node;
    double atMs{0};
};

enum class EventKind {
    PackageDelivered,
    InputArrived,    // result reached the receiving control node
    InputDelivered,  // control node uploaded it to the service location
    ExecStarted,
    ExecFinished,
    ResultSent,
    FailureReported,
    Rescheduled,
    WorkflowCompleted,
    Unrecoverable,
};

std::string_view to_string(EventKind kind);

// A result's route from v to w: locations v, cv, cw, w and the three legs.
struct Transmission {
    NodeRef from;
    NodeRef to;
    double sizeMB{0};
    std::array<LocationId, 4> hops{};
    std::array<LinkQos, 3> legs{};
};

struct SimEvent {
    double time{0};
    std::uint64_t seq{0};
    EventKind kind{EventKind::PackageDelivered};
    NodeRef node;
    LocationId at;  // control node observing the event
    NodeRef peer;   // sending node for input events
    double sizeMB{0};
    std::string offer;  // service involved, if any
    std::optional<Transmission> transmission;
    std::string detail;
};

enum class Outcome { Completed, Unrecoverable };

struct ProtocolResult {
    std::vector<SimEvent> events;  // in processing order
    Outcome outcome{Outcome::Completed};
    std::optional<double> makespan;       // time the master holds the final result
    Assignment finalAssignment;           // after rescheduling
    std::vector<double> execStart;        // per vertex, of the attempt that succeeded
    std::vector<double> execEnd;
    std::vector<std::uint32_t> attempts;  // executions started per vertex
};

/// Greedy re-selection of one task: the candidate with the highest utility
/// when every other pick stays fixed, skipping `excluded` candidate
/// indices. Empty when no candidate remains.
std::optional<Assignment> reschedule(const Problem& problem, const Assignment& a, std::uint32_t task,
                                     const std::vector<std::uint32_t>& excluded);

/// Event-driven run of the master/slave execution policy. All packages are
/// in place at t = 0. A node runs once its control node holds its package
/// and has uploaded every predecessor result to the service. Results travel
/// service -> own control node -> successor's control node, which buffers
/// them. Failures are reported to the master, which reschedules the task and
/// sends a fresh package; buffered inputs are then re-uploaded to the new
/// service. Throws ProtocolError when a node starves.
ProtocolResult run_protocol(const Problem& problem, const Assignment& a, const PackagePlan& plan,
                            const std::vector<Fault>& faults = {});

} // namespace netqos
