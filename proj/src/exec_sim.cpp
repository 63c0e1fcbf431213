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

#include "netqos/exec_sim.hpp"

#include <algorithm>
#include <queue>

#include "netqos/error.hpp"
#include "netqos/qos_engine.hpp"

namespace netqos {

std::string_view to_string(EventKind kind)
{
    switch (kind) {
    case EventKind::PackageDelivered: return "packageDelivered";
    case EventKind::InputArrived: return "inputArrived";
    case EventKind::InputDelivered: return "inputDelivered";
    case EventKind::ExecStarted: return "execStarted";
    case EventKind::ExecFinished: return "execFinished";
    case EventKind::ResultSent: return "resultSent";
    case EventKind::FailureReported: return "failureReported";
    case EventKind::Rescheduled: return "rescheduled";
    case EventKind::WorkflowCompleted: return "workflowCompleted";
    case EventKind::Unrecoverable: return "unrecoverable";
    }
    return "unknown";
}

WorkPackage make_package(const Problem& problem, const Assignment& a, NodeRef v)
{
    const auto& g = problem.graph;
    const auto& vertex = g.vertex(v);
    WorkPackage p;
    p.node = v;
    p.name = vertex.name;
    p.control = a.control[v.value];
    p.logic = vertex.logic;
    if (vertex.isService)
        p.service = problem.offer(v, a);
    else if (vertex.logic != LogicalKind::Start && vertex.logic != LogicalKind::End)
        p.logicalExecMs = problem.logical.execMs;
    for (auto u : vertex.incoming)
        p.predecessors.push_back({u, a.control[u.value]});
    for (auto w : vertex.outgoing)
        p.successors.push_back({w, a.control[w.value]});
    p.returnToMaster = v == g.sink();
    if (v == g.source())
        p.workflowInputMB = problem.inputMB;
    return p;
}

PackagePlan plan_and_distribute(const Problem& problem, const Assignment& a)
{
    validate_assignment(problem, a);
    PackagePlan plan;
    for (std::uint32_t v = 0; v < problem.graph.size(); ++v) {
        auto p = make_package(problem, a, NodeRef{v});
        plan[p.control].push_back(std::move(p));
    }
    return plan;
}

std::size_t package_count(const PackagePlan& plan)
{
    std::size_t n = 0;
    for (const auto& [at, packages] : plan)
        n += packages.size();
    return n;
}

std::optional<Assignment> reschedule(const Problem& problem, const Assignment& a, std::uint32_t task,
                                     const std::vector<std::uint32_t>& excluded)
{
    std::optional<Assignment> best;
    double bestUtility = 0;
    Assignment trial = a;
    for (std::uint32_t c = 0; c < problem.catalog.candidate_count(task); ++c) {
        if (std::find(excluded.begin(), excluded.end(), c) != excluded.end())
            continue;
        trial.service[task] = c;
        const double u = evaluate_utility(problem, trial);
        if (!best || u > bestUtility) {
            best = trial;
            bestUtility = u;
        }
    }
    return best;
}

namespace {

struct Queued {
    SimEvent event;
    std::uint32_t version{0};
    std::optional<WorkPackage> package;

    bool operator>(const Queued& o) const
    {
        return event.time != o.event.time ? event.time > o.event.time : event.seq > o.event.seq;
    }
};

struct NodeState {
    std::optional<WorkPackage> package;  // held by the control node
    std::uint32_t version{0};
    std::vector<Transmission> buffered;  // results received at the control node
    std::size_t delivered{0};
    double inputMB{0};
    bool started{false};
    bool finished{false};
};

SimEvent make_event(double time, EventKind kind, NodeRef node, LocationId at)
{
    SimEvent e;
    e.time = time;
    e.kind = kind;
    e.node = node;
    e.at = at;
    return e;
}

class Protocol {
public:
    Protocol(const Problem& problem, const Assignment& a, const std::vector<Fault>& faults)
        : problem_(problem), net_(problem.net()), state_(problem.graph.size())
    {
        result_.finalAssignment = a;
        result_.execStart.assign(problem.graph.size(), 0);
        result_.execEnd.assign(problem.graph.size(), 0);
        result_.attempts.assign(problem.graph.size(), 0);
        excluded_.resize(problem.graph.tasks().size());
        for (const auto& f : faults) {
            const auto v = problem.graph.find(f.node);
            if (!problem.graph.vertex(v).isService)
                throw ConfigurationError("fault targets logical node '" + f.node + "'");
            if (!(f.atMs >= 0))
                throw ParameterError("fault time must be non-negative");
            faults_.push_back({v, f.atMs, false});
        }
    }

    ProtocolResult run(const PackagePlan& plan)
    {
        for (const auto& [at, packages] : plan) {
            for (const auto& p : packages) {
                if (p.control != at)
                    throw ProtocolError("package for '" + p.name + "' was routed to the wrong control node");
                if (p.node.value >= state_.size())
                    throw ProtocolError("package for unknown node '" + p.name + "'");
                push(make_event(0, EventKind::PackageDelivered, p.node, at), 0, p);
            }
        }
        while (!queue_.empty() && !stopped_) {
            auto q = queue_.top();
            queue_.pop();
            dispatch(std::move(q));
        }
        if (!stopped_)
            throw ProtocolError(starvation_message());
        return std::move(result_);
    }

private:
    struct PendingFault {
        NodeRef node;
        double atMs;
        bool used;
    };

    LocationId service_location(const WorkPackage& p) const { return p.service ? p.service->location : p.control; }

    void push(SimEvent e, std::uint32_t version, std::optional<WorkPackage> package = {})
    {
        e.seq = seq_++;
        queue_.push(Queued{std::move(e), version, std::move(package)});
    }

    void record(SimEvent e)
    {
        e.seq = result_.events.size();
        result_.events.push_back(std::move(e));
    }

    void dispatch(Queued q)
    {
        auto& e = q.event;
        auto& s = state_[e.node.value];
        switch (e.kind) {
        case EventKind::PackageDelivered:
            s.package = std::move(q.package);
            s.version = q.version;
            s.delivered = 0;
            s.inputMB = 0;
            if (s.package->service)
                e.offer = s.package->service->id;
            record(e);
            if (s.package->predecessors.empty()) {
                s.inputMB = s.package->workflowInputMB.value_or(0);
                auto started = make_event(e.time, EventKind::ExecStarted, e.node, s.package->control);
                started.sizeMB = s.inputMB;
                push(std::move(started), s.version);
            }
            for (const auto& tx : s.buffered)
                upload(e.time, e.node, tx);
            break;
        case EventKind::InputArrived:
            record(e);
            s.buffered.push_back(*e.transmission);
            if (s.package)
                upload(e.time, e.node, *e.transmission);
            break;
        case EventKind::InputDelivered:
            if (q.version != s.version || !s.package)
                break;
            record(e);
            s.inputMB += e.sizeMB;
            if (++s.delivered == s.package->predecessors.size()) {
                auto started = make_event(e.time, EventKind::ExecStarted, e.node, e.at);
                started.sizeMB = s.inputMB;
                push(std::move(started), s.version);
            }
            break;
        case EventKind::ExecStarted:
            if (q.version == s.version)
                start(e, s);
            break;
        case EventKind::ExecFinished:
            if (q.version == s.version)
                finish(e, s);
            break;
        case EventKind::FailureReported:
            record(e);
            recover(e);
            break;
        default:
            record(e);
            break;
        }
    }

    // The control node forwards a buffered result to the service (third leg).
    void upload(double now, NodeRef node, Transmission tx)
    {
        const auto& s = state_[node.value];
        const auto where = service_location(*s.package);
        tx.hops[3] = where;
        tx.legs[2] = net_.link(s.package->control, where);
        auto e = make_event(now + tx.legs[2].time_ms(tx.sizeMB), EventKind::InputDelivered, node, s.package->control);
        e.peer = tx.from;
        e.sizeMB = tx.sizeMB;
        e.transmission = tx;
        push(std::move(e), s.version);
    }

    void start(SimEvent& e, NodeState& s)
    {
        const auto& p = *s.package;
        s.started = true;
        ++result_.attempts[e.node.value];
        result_.execStart[e.node.value] = e.time;
        if (p.service)
            e.offer = p.service->id;
        record(e);
        const double execMs = p.service ? p.service->sla.execTime(s.inputMB) : p.logicalExecMs;
        const double end = e.time + execMs;
        const auto where = service_location(p);
        if (p.service) {
            auto f = std::find_if(faults_.begin(), faults_.end(),
                                  [&](const PendingFault& pf) { return !pf.used && pf.node == e.node; });
            if (f != faults_.end()) {
                const double failAt = std::max(f->atMs, e.time);
                if (failAt == e.time || failAt < end) {
                    f->used = true;
                    const double noticed = failAt + net_.link(where, p.control).delayMs;
                    auto report = make_event(noticed + net_.link(p.control, problem_.master).delayMs,
                                             EventKind::FailureReported, e.node, problem_.master);
                    report.offer = p.service->id;
                    report.sizeMB = s.inputMB;
                    report.detail = "offer " + p.service->id + " failed at " + std::to_string(failAt) +
                                    " ms; slave " + net_.name(p.control) + " holds " +
                                    std::to_string(s.buffered.size()) + " buffered input(s)";
                    push(std::move(report), s.version);
                    return;
                }
            }
        }
        auto finished = make_event(end, EventKind::ExecFinished, e.node, p.control);
        finished.sizeMB = s.inputMB;
        push(std::move(finished), s.version);
    }

    void finish(SimEvent& e, NodeState& s)
    {
        const auto& p = *s.package;
        s.finished = true;
        result_.execEnd[e.node.value] = e.time;
        const double resultMB = p.service ? p.service->sla.outputSize(e.sizeMB) : e.sizeMB;
        if (p.service)
            e.offer = p.service->id;
        e.sizeMB = resultMB;
        record(e);
        const auto from = service_location(p);
        if (p.returnToMaster) {
            auto done = make_event(e.time + net_.link(from, problem_.master).time_ms(resultMB),
                                   EventKind::WorkflowCompleted, e.node, problem_.master);
            done.sizeMB = resultMB;
            result_.makespan = done.time;
            result_.outcome = Outcome::Completed;
            record(std::move(done));
            stopped_ = true;
            return;
        }
        for (const auto& succ : p.successors) {
            Transmission tx;
            tx.from = e.node;
            tx.to = succ.node;
            tx.sizeMB = resultMB;
            tx.hops = {from, p.control, succ.control, LocationId{}};
            tx.legs[0] = net_.link(from, p.control);
            tx.legs[1] = net_.link(p.control, succ.control);
            auto sent = make_event(e.time, EventKind::ResultSent, e.node, p.control);
            sent.peer = succ.node;
            sent.sizeMB = resultMB;
            sent.offer = e.offer;
            sent.transmission = tx;
            record(sent);
            auto arrived = make_event(e.time + tx.legs[0].time_ms(resultMB) + tx.legs[1].time_ms(resultMB),
                                      EventKind::InputArrived, succ.node, succ.control);
            arrived.peer = e.node;
            arrived.sizeMB = resultMB;
            arrived.transmission = tx;
            push(std::move(arrived), 0);
        }
    }

    void recover(const SimEvent& e)
    {
        const auto& g = problem_.graph;
        const auto task = g.vertex(e.node).task;
        auto& assignment = result_.finalAssignment;
        excluded_[task].push_back(assignment.service[task]);
        auto alt = reschedule(problem_, assignment, task, excluded_[task]);
        if (!alt) {
            auto u = make_event(e.time, EventKind::Unrecoverable, e.node, problem_.master);
            u.detail = "no alternative offer for task '" + g.tasks()[task] + "'";
            record(std::move(u));
            result_.outcome = Outcome::Unrecoverable;
            stopped_ = true;
            return;
        }
        assignment = std::move(*alt);
        auto r = make_event(e.time, EventKind::Rescheduled, e.node, problem_.master);
        r.offer = problem_.catalog.candidate(task, assignment.service[task]).id;
        record(std::move(r));
        state_[e.node.value].started = false;
        for (std::uint32_t v = 0; v < g.size(); ++v) {
            auto& s = state_[v];
            const auto& vertex = g.vertices()[v];
            if (!vertex.isService || vertex.task != task || s.started)
                continue;
            s.package.reset();
            s.version = ++versions_;
            const auto control = assignment.control[v];
            push(make_event(e.time + net_.link(problem_.master, control).delayMs, EventKind::PackageDelivered,
                            NodeRef{v}, control),
                 s.version, make_package(problem_, assignment, NodeRef{v}));
        }
    }

    std::string starvation_message() const
    {
        const auto& g = problem_.graph;
        for (auto v : g.topological_order()) {
            const auto& s = state_[v.value];
            if (s.finished)
                continue;
            const auto& vertex = g.vertex(v);
            if (!s.package)
                return "node '" + vertex.name + "' starved: no work package reached a control node";
            return "node '" + vertex.name + "' starved: received " + std::to_string(s.delivered) + " of " +
                   std::to_string(s.package->predecessors.size()) + " inputs";
        }
        return "protocol stopped before the workflow completed";
    }

    const Problem& problem_;
    const NetworkModel& net_;
    std::vector<NodeState> state_;
    std::vector<PendingFault> faults_;
    std::vector<std::vector<std::uint32_t>> excluded_;
    std::priority_queue<Queued, std::vector<Queued>, std::greater<>> queue_;
    std::uint64_t seq_{0};
    std::uint32_t versions_{0};
    bool stopped_{false};
    ProtocolResult result_;
};

} // namespace

ProtocolResult run_protocol(const Problem& problem, const Assignment& a, const PackagePlan& plan,
                            const std::vector<Fault>& faults)
{
    validate_assignment(problem, a);
    return Protocol(problem, a, faults).run(plan);
}

} // namespace netqos
