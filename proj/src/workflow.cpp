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

#include "netqos/workflow.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <span>
#include <unordered_set>

#include "netqos/error.hpp"

namespace netqos {

namespace {

using Kind = WorkflowExpr::Kind;

WorkflowExpr pattern(Kind kind, std::vector<WorkflowExpr> children)
{
    WorkflowExpr wf;
    wf.kind = kind;
    wf.children = std::move(children);
    return wf;
}

void collect_names(const WorkflowExpr& wf, std::unordered_set<std::string>& seen)
{
    if (wf.atomic()) {
        if (wf.name.empty())
            throw StructuralError("atomic workflow node without a name");
        if (wf.kind == Kind::Service && wf.task.empty())
            throw StructuralError("service node '" + wf.name + "' has no task id");
        if (!seen.insert(wf.name).second)
            throw StructuralError("duplicate workflow node '" + wf.name + "'");
        return;
    }
    if (wf.children.empty())
        throw StructuralError("workflow pattern without children");
    if (wf.kind == Kind::Loop && wf.count < 1)
        throw StructuralError("loop count must be at least 1");
    for (const auto& child : wf.children)
        collect_names(child, seen);
}

std::set<std::string> first_of(std::span<const WorkflowExpr> seq);
std::set<std::string> last_of(std::span<const WorkflowExpr> seq);

std::set<std::string> first_impl(const WorkflowExpr& wf)
{
    if (wf.atomic())
        return {wf.name};
    if (wf.children.empty())
        throw StructuralError("workflow pattern without children");
    if (wf.kind == Kind::Seq || wf.kind == Kind::Loop)
        return first_of(wf.children);
    std::set<std::string> out;
    for (const auto& child : wf.children)
        out.merge(first_impl(child));
    return out;
}

std::set<std::string> last_impl(const WorkflowExpr& wf)
{
    if (wf.atomic())
        return {wf.name};
    if (wf.children.empty())
        throw StructuralError("workflow pattern without children");
    if (wf.kind == Kind::Seq || wf.kind == Kind::Loop)
        return last_of(wf.children);
    std::set<std::string> out;
    for (const auto& child : wf.children)
        out.merge(last_impl(child));
    return out;
}

std::set<std::string> first_of(std::span<const WorkflowExpr> seq) { return first_impl(seq.front()); }
std::set<std::string> last_of(std::span<const WorkflowExpr> seq) { return last_impl(seq.back()); }

void add_suffix(WorkflowExpr& wf, const std::string& suffix)
{
    if (wf.atomic()) {
        wf.name += suffix;
        return;
    }
    for (auto& child : wf.children)
        add_suffix(child, suffix);
}

class Normalizer {
public:
    // Appends the normalized form of wf to out, splicing sequences.
    void emit(const WorkflowExpr& wf, std::vector<WorkflowExpr>& out)
    {
        switch (wf.kind) {
        case Kind::Service:
        case Kind::Logical:
            out.push_back(wf);
            return;
        case Kind::Seq:
            for (const auto& child : wf.children)
                emit(child, out);
            return;
        case Kind::Loop: {
            std::vector<WorkflowExpr> body;
            for (const auto& child : wf.children)
                emit(child, body);
            if (wf.count == 1) {
                std::move(body.begin(), body.end(), std::back_inserter(out));
                return;
            }
            for (int i = 1; i <= wf.count; ++i) {
                for (auto copy : body) {
                    add_suffix(copy, "#" + std::to_string(i));
                    out.push_back(std::move(copy));
                }
            }
            return;
        }
        case Kind::And:
        case Kind::Xor:
        case Kind::Or: {
            const int id = ++counter_;
            const bool isAnd = wf.kind == Kind::And;
            const LogicalKind open = isAnd ? LogicalKind::Fork : LogicalKind::Decision;
            const LogicalKind close = isAnd ? LogicalKind::Join : LogicalKind::Merge;
            WorkflowExpr branches;
            branches.kind = wf.kind;
            for (const auto& child : wf.children) {
                std::vector<WorkflowExpr> flat;
                emit(child, flat);
                branches.children.push_back(flat.size() == 1 ? std::move(flat.front()) : WorkflowExpr::seq(std::move(flat)));
            }
            out.push_back(WorkflowExpr::logical(std::string(to_string(open)) + std::to_string(id), open));
            out.push_back(std::move(branches));
            out.push_back(WorkflowExpr::logical(std::string(to_string(close)) + std::to_string(id), close));
            return;
        }
        }
    }

private:
    int counter_{0};
};

void map_seq(const std::set<std::string>& fs, std::span<const WorkflowExpr> seq, const std::set<std::string>& ls,
             ExecGraph& g);

NodeRef ensure_vertex(const WorkflowExpr& atomic, ExecGraph& g)
{
    if (g.contains(atomic.name))
        return g.find(atomic.name);
    return g.add_vertex(atomic);
}

void map_impl(const std::set<std::string>& fs, const WorkflowExpr& wf, const std::set<std::string>& ls, ExecGraph& g)
{
    if (wf.atomic()) {
        const NodeRef self = ensure_vertex(wf, g);
        for (const auto& f : fs)
            g.add_edge(g.find(f), self);
        for (const auto& l : ls)
            g.add_edge(self, g.find(l));
        return;
    }
    if (wf.children.empty())
        throw StructuralError("workflow pattern without children");
    if (wf.kind == Kind::Seq || wf.kind == Kind::Loop) {
        map_seq(fs, wf.children, ls, g);
        return;
    }
    for (const auto& child : wf.children)
        map_impl(fs, child, ls, g);
}

void register_atomic(const WorkflowExpr& wf, ExecGraph& g)
{
    if (wf.atomic()) {
        ensure_vertex(wf, g);
        return;
    }
    for (const auto& child : wf.children)
        register_atomic(child, g);
}

void map_seq(const std::set<std::string>& fs, std::span<const WorkflowExpr> seq, const std::set<std::string>& ls,
             ExecGraph& g)
{
    if (seq.size() == 1) {
        map_impl(fs, seq.front(), ls, g);
        return;
    }
    const auto& head = seq.front();
    const auto tail = seq.subspan(1);
    map_impl(fs, head, first_of(tail), g);
    map_seq(last_impl(head), tail, ls, g);
}

} // namespace

std::string_view to_string(LogicalKind kind)
{
    switch (kind) {
    case LogicalKind::Start: return "start";
    case LogicalKind::End: return "end";
    case LogicalKind::Fork: return "fork";
    case LogicalKind::Join: return "join";
    case LogicalKind::Decision: return "decision";
    case LogicalKind::Merge: return "merge";
    case LogicalKind::LoopHead: return "loop-head";
    }
    return "?";
}

LogicalKind logical_kind_from_string(std::string_view name)
{
    for (auto kind : {LogicalKind::Start, LogicalKind::End, LogicalKind::Fork, LogicalKind::Join, LogicalKind::Decision,
                      LogicalKind::Merge, LogicalKind::LoopHead}) {
        if (to_string(kind) == name)
            return kind;
    }
    throw StructuralError("unknown logical node kind '" + std::string(name) + "'");
}

WorkflowExpr WorkflowExpr::service(std::string task)
{
    WorkflowExpr wf;
    wf.kind = Kind::Service;
    wf.name = task;
    wf.task = std::move(task);
    return wf;
}

WorkflowExpr WorkflowExpr::logical(std::string name, LogicalKind kind)
{
    WorkflowExpr wf;
    wf.kind = Kind::Logical;
    wf.name = std::move(name);
    wf.logic = kind;
    return wf;
}

WorkflowExpr WorkflowExpr::seq(std::vector<WorkflowExpr> children) { return pattern(Kind::Seq, std::move(children)); }
WorkflowExpr WorkflowExpr::all(std::vector<WorkflowExpr> children) { return pattern(Kind::And, std::move(children)); }
WorkflowExpr WorkflowExpr::exclusive(std::vector<WorkflowExpr> children) { return pattern(Kind::Xor, std::move(children)); }
WorkflowExpr WorkflowExpr::inclusive(std::vector<WorkflowExpr> children) { return pattern(Kind::Or, std::move(children)); }

WorkflowExpr WorkflowExpr::loop(std::vector<WorkflowExpr> children, int count)
{
    auto wf = pattern(Kind::Loop, std::move(children));
    wf.count = count;
    return wf;
}

void validate(const WorkflowExpr& wf)
{
    std::unordered_set<std::string> seen;
    collect_names(wf, seen);
}

std::size_t count_service_nodes(const WorkflowExpr& wf)
{
    if (wf.atomic())
        return wf.kind == Kind::Service ? 1 : 0;
    std::size_t n = 0;
    for (const auto& child : wf.children)
        n += count_service_nodes(child);
    return n;
}

std::size_t count_atomic_nodes(const WorkflowExpr& wf)
{
    if (wf.atomic())
        return 1;
    std::size_t n = 0;
    for (const auto& child : wf.children)
        n += count_atomic_nodes(child);
    return n;
}

std::set<std::string> first(const WorkflowExpr& wf) { return first_impl(wf); }
std::set<std::string> last(const WorkflowExpr& wf) { return last_impl(wf); }

WorkflowExpr normalize(const WorkflowExpr& wf)
{
    validate(wf);
    std::vector<WorkflowExpr> body;
    body.push_back(WorkflowExpr::logical("start", LogicalKind::Start));
    Normalizer{}.emit(wf, body);
    body.push_back(WorkflowExpr::logical("end", LogicalKind::End));
    auto out = WorkflowExpr::seq(std::move(body));
    validate(out);
    return out;
}

bool is_normalized(const WorkflowExpr& wf)
{
    if (wf.kind != Kind::Seq || wf.children.size() < 2)
        return false;
    const auto& head = wf.children.front();
    const auto& tail = wf.children.back();
    if (head.kind != Kind::Logical || head.logic != LogicalKind::Start)
        return false;
    if (tail.kind != Kind::Logical || tail.logic != LogicalKind::End)
        return false;
    std::function<bool(const WorkflowExpr&)> noLoops = [&](const WorkflowExpr& node) {
        if (node.kind == Kind::Loop)
            return false;
        return std::all_of(node.children.begin(), node.children.end(), noLoops);
    };
    return noLoops(wf);
}

std::size_t ExecGraph::edge_count() const
{
    std::size_t n = 0;
    for (const auto& v : vertices_)
        n += v.outgoing.size();
    return n;
}

std::optional<std::uint32_t> ExecGraph::task_index(const std::string& task) const
{
    auto it = taskIndex_.find(task);
    if (it == taskIndex_.end())
        return std::nullopt;
    return it->second;
}

NodeRef ExecGraph::find(const std::string& name) const
{
    auto it = index_.find(name);
    if (it == index_.end())
        throw LookupError("unknown workflow node '" + name + "'");
    return it->second;
}

NodeRef ExecGraph::add_vertex(const WorkflowExpr& atomic)
{
    if (!atomic.atomic())
        throw StructuralError("only atomic nodes become graph vertices");
    if (contains(atomic.name))
        throw StructuralError("duplicate graph vertex '" + atomic.name + "'");
    ExecVertex v;
    v.name = atomic.name;
    v.isService = atomic.kind == Kind::Service;
    v.logic = atomic.logic;
    if (v.isService) {
        auto [it, inserted] = taskIndex_.try_emplace(atomic.task, static_cast<std::uint32_t>(tasks_.size()));
        if (inserted)
            tasks_.push_back(atomic.task);
        v.task = it->second;
    }
    const NodeRef ref{static_cast<std::uint32_t>(vertices_.size())};
    index_.emplace(v.name, ref);
    vertices_.push_back(std::move(v));
    return ref;
}

void ExecGraph::add_edge(NodeRef from, NodeRef to)
{
    auto& out = vertices_.at(from.value).outgoing;
    if (std::find(out.begin(), out.end(), to) != out.end())
        return;
    out.push_back(to);
    vertices_.at(to.value).incoming.push_back(from);
}

std::vector<NodeRef> ExecGraph::topological_order() const
{
    std::vector<std::size_t> reqIn(vertices_.size());
    std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> ready;
    for (std::uint32_t i = 0; i < vertices_.size(); ++i) {
        reqIn[i] = vertices_[i].incoming.size();
        if (reqIn[i] == 0)
            ready.push(i);
    }
    std::vector<NodeRef> order;
    order.reserve(vertices_.size());
    while (!ready.empty()) {
        const auto v = ready.top();
        ready.pop();
        order.push_back(NodeRef{v});
        for (auto w : vertices_[v].outgoing) {
            if (--reqIn[w.value] == 0)
                ready.push(w.value);
        }
    }
    if (order.size() != vertices_.size())
        throw CycleError("execution graph contains a cycle");
    return order;
}

void ExecGraph::finalize()
{
    if (vertices_.empty())
        throw StructuralError("empty execution graph");
    topological_order();
    std::vector<NodeRef> sources;
    std::vector<NodeRef> sinks;
    for (std::uint32_t i = 0; i < vertices_.size(); ++i) {
        if (vertices_[i].incoming.empty())
            sources.push_back(NodeRef{i});
        if (vertices_[i].outgoing.empty())
            sinks.push_back(NodeRef{i});
    }
    if (sources.size() != 1 || sinks.size() != 1)
        throw StructuralError("execution graph needs exactly one source and one sink, found " +
                              std::to_string(sources.size()) + " and " + std::to_string(sinks.size()));
    source_ = sources.front();
    sink_ = sinks.front();
}

void map_to_graph(const std::set<std::string>& fs, const WorkflowExpr& wf, const std::set<std::string>& ls,
                  ExecGraph& g)
{
    // Successor sets may name nodes that the depth-first walk reaches later,
    // so every atomic node is registered before edges are added.
    register_atomic(wf, g);
    map_impl(fs, wf, ls, g);
}

ExecGraph build_graph(const WorkflowExpr& normalized)
{
    if (!is_normalized(normalized))
        throw StructuralError("build_graph expects a normalized workflow");
    validate(normalized);
    ExecGraph g;
    map_to_graph({}, normalized, {}, g);
    g.finalize();
    return g;
}

} // namespace netqos
