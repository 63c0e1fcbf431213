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
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "netqos/ids.hpp"

namespace netqos {

enum class LogicalKind { Start, End, Fork, Join, Decision, Merge, LoopHead };

std::string_view to_string(LogicalKind kind);
LogicalKind logical_kind_from_string(std::string_view name);

/// A node of a hierarchical workflow: an atomic service or logical node, or
/// a pattern (Seq, AND, XOR, OR, Loop) over an ordered list of children.
///
/// Atomic nodes carry a name that is unique within the workflow. For service
/// nodes it starts out as the task id; unrolled loop copies get a `#k`
/// suffix while keeping `task` pointing at the original task.
struct WorkflowExpr {
    enum class Kind { Service, Logical, Seq, And, Xor, Or, Loop };

    Kind kind{Kind::Service};
    std::string name;  // atomic nodes only
    std::string task;  // service nodes only
    LogicalKind logic{LogicalKind::Decision};
    int count{1};      // loops only
    std::vector<WorkflowExpr> children;

    static WorkflowExpr service(std::string task);
    static WorkflowExpr logical(std::string name, LogicalKind kind);
    static WorkflowExpr seq(std::vector<WorkflowExpr> children);
    static WorkflowExpr all(std::vector<WorkflowExpr> children);
    static WorkflowExpr exclusive(std::vector<WorkflowExpr> children);
    static WorkflowExpr inclusive(std::vector<WorkflowExpr> children);
    static WorkflowExpr loop(std::vector<WorkflowExpr> children, int count);

    bool atomic() const { return kind == Kind::Service || kind == Kind::Logical; }
    bool parallel() const { return kind == Kind::And || kind == Kind::Xor || kind == Kind::Or; }

    friend bool operator==(const WorkflowExpr&, const WorkflowExpr&) = default;
};

// Throws StructuralError on empty patterns, non-positive loop counts,
// unnamed atomic nodes or duplicated task ids / atomic names.
void validate(const WorkflowExpr& wf);

std::size_t count_service_nodes(const WorkflowExpr& wf);
std::size_t count_atomic_nodes(const WorkflowExpr& wf);

// Names of the atomic nodes executed first / last within wf. Parallel
// patterns contribute the union over all branches.
std::set<std::string> first(const WorkflowExpr& wf);
std::set<std::string> last(const WorkflowExpr& wf);

/// Returns Seq(start, wf', end). wf' wraps every AND in fork/join and every
/// XOR/OR in decision/merge logical nodes, unrolls loops `count` times and
/// flattens nested sequences. Start and end are pinned to the master by the
/// callers that build problems over the result.
WorkflowExpr normalize(const WorkflowExpr& wf);

bool is_normalized(const WorkflowExpr& wf);

struct ExecVertex {
    std::string name;
    bool isService{false};
    LogicalKind logic{LogicalKind::Decision};
    std::uint32_t task{0};  // index into ExecGraph::tasks, service nodes only
    std::vector<NodeRef> incoming;
    std::vector<NodeRef> outgoing;
};

/// Directed graph of atomic nodes. Vertices are numbered in the depth-first
/// order mapToGraph discovers them; the start node is vertex 0.
/// Timing state lives in SimulationResult; the graph itself is immutable and
/// shareable across concurrent simulations.
class ExecGraph {
public:
    const std::vector<ExecVertex>& vertices() const { return vertices_; }
    const ExecVertex& vertex(NodeRef ref) const { return vertices_.at(ref.value); }
    std::size_t size() const { return vertices_.size(); }
    std::size_t edge_count() const;

    const std::vector<std::string>& tasks() const { return tasks_; }
    std::optional<std::uint32_t> task_index(const std::string& task) const;

    NodeRef find(const std::string& name) const;  // throws LookupError
    bool contains(const std::string& name) const { return index_.count(name) != 0; }

    NodeRef source() const { return source_; }
    NodeRef sink() const { return sink_; }

    // Kahn topological order with ascending-index tie-breaking.
    std::vector<NodeRef> topological_order() const;

    NodeRef add_vertex(const WorkflowExpr& atomic);
    void add_edge(NodeRef from, NodeRef to);

    // Checks acyclicity and the single source/sink invariant and caches them.
    // Throws CycleError / StructuralError.
    void finalize();

private:
    std::vector<ExecVertex> vertices_;
    std::vector<std::string> tasks_;
    std::unordered_map<std::string, NodeRef> index_;
    std::unordered_map<std::string, std::uint32_t> taskIndex_;
    NodeRef source_{};
    NodeRef sink_{};
};

// Adds edges (f -> n) for entry nodes n of wf and (n -> l) for its exit
// nodes, recursing through the pattern structure.
void map_to_graph(const std::set<std::string>& fs, const WorkflowExpr& wf, const std::set<std::string>& ls,
                  ExecGraph& g);

// map_to_graph({}, wf, {}, g) on a normalized workflow followed by finalize().
ExecGraph build_graph(const WorkflowExpr& normalized);

} // namespace netqos
