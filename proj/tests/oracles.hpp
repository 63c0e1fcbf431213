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

// Reference computations for the tests, independent of the library's
// simulation and aggregation code.

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "netqos/problem.hpp"

namespace oracle {

using namespace netqos;

// Runtime of a raw (unnormalized) tree when the network is free: Seq and
// unrolled loops add up, parallel patterns take the slowest branch plus the
// opening and closing logical node.
inline double hierarchical_runtime(const WorkflowExpr& wf, const std::function<double(const std::string&)>& execOfTask,
                                   double logicalMs)
{
    using Kind = WorkflowExpr::Kind;
    switch (wf.kind) {
    case Kind::Service:
        return execOfTask(wf.task);
    case Kind::Logical:
        return logicalMs;
    case Kind::Seq: {
        double sum = 0;
        for (const auto& c : wf.children)
            sum += hierarchical_runtime(c, execOfTask, logicalMs);
        return sum;
    }
    case Kind::Loop: {
        double body = 0;
        for (const auto& c : wf.children)
            body += hierarchical_runtime(c, execOfTask, logicalMs);
        return body * wf.count;
    }
    default: {
        double worst = 0;
        for (const auto& c : wf.children)
            worst = std::max(worst, hierarchical_runtime(c, execOfTask, logicalMs));
        return worst + 2 * logicalMs;
    }
    }
}

// Delay plus transfer of one link, straight from the model's coordinates and
// rate classes.
inline double link_time(const NetworkModel& net, LocationId a, LocationId b, double sizeMB)
{
    const auto q = net.link(a, b);
    double t = q.delayMs;
    if (sizeMB > 0 && q.rateMBps != kUnlimitedRate)
        t += sizeMB / q.rateMBps * 1000.0;
    return t;
}

struct PathTimes {
    std::vector<double> input;   // per vertex
    std::vector<double> output;  // per vertex
    std::vector<double> exec;    // per vertex
    double runtime{0};
    double latency{0};  // network share of the slowest path
};

// Longest source-to-sink path by memoized recursion over predecessors.
inline PathTimes longest_path(const Problem& p, const Assignment& a)
{
    const auto& g = p.graph;
    const auto n = g.size();
    PathTimes t;
    t.input.assign(n, -1);
    t.output.assign(n, 0);
    t.exec.assign(n, 0);
    std::vector<double> finish(n, -1);
    std::vector<double> netShare(n, 0);
    const auto location = [&](NodeRef v) {
        const auto& vx = g.vertex(v);
        return vx.isService ? p.catalog.candidate(vx.task, a.service[vx.task]).location : a.control[v.value];
    };
    std::function<void(NodeRef)> solve = [&](NodeRef v) {
        if (finish[v.value] >= 0)
            return;
        const auto& vx = g.vertex(v);
        double in = vx.incoming.empty() ? p.inputMB : 0;
        double start = 0;
        double share = 0;
        for (auto u : vx.incoming) {
            solve(u);
            in += t.output[u.value];
            const double size = t.output[u.value];
            const double hop = link_time(p.net(), location(u), a.control[u.value], size) +
                               link_time(p.net(), a.control[u.value], a.control[v.value], size) +
                               link_time(p.net(), a.control[v.value], location(v), size);
            const double arrive = finish[u.value] + hop;
            if (arrive > start || (arrive == start && netShare[u.value] + hop > share)) {
                start = std::max(start, arrive);
                share = netShare[u.value] + hop;
            }
        }
        t.input[v.value] = in;
        if (vx.isService) {
            const auto& sla = p.catalog.candidate(vx.task, a.service[vx.task]).sla;
            t.exec[v.value] = sla.execTime(in);
            t.output[v.value] = sla.outputSize(in);
        } else {
            const bool endpoint = vx.logic == LogicalKind::Start || vx.logic == LogicalKind::End;
            t.exec[v.value] = endpoint ? 0 : p.logical.execMs;
            t.output[v.value] = in;
        }
        finish[v.value] = start + t.exec[v.value];
        netShare[v.value] = share;
    };
    solve(g.sink());
    t.runtime = finish[g.sink().value];
    t.latency = netShare[g.sink().value];
    return t;
}

// Every source-to-sink path as a list of vertices.
inline std::vector<std::vector<NodeRef>> all_paths(const ExecGraph& g)
{
    std::vector<std::vector<NodeRef>> out;
    std::vector<NodeRef> path{g.source()};
    std::function<void()> walk = [&] {
        const auto& vx = g.vertex(path.back());
        if (vx.outgoing.empty()) {
            out.push_back(path);
            return;
        }
        for (auto w : vx.outgoing) {
            path.push_back(w);
            walk();
            path.pop_back();
        }
    };
    walk();
    return out;
}

} // namespace oracle
