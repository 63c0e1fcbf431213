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

#include <doctest.h>

#include <algorithm>
#include <set>

#include "netqos/error.hpp"
#include "netqos/scenario.hpp"
#include "netqos/workflow.hpp"

using namespace netqos;
using W = WorkflowExpr;

namespace {

std::set<std::string> names(const ExecGraph& g, const std::vector<NodeRef>& refs)
{
    std::set<std::string> out;
    for (auto r : refs)
        out.insert(g.vertex(r).name);
    return out;
}

bool has_edge(const ExecGraph& g, const std::string& a, const std::string& b)
{
    const auto& out = g.vertex(g.find(a)).outgoing;
    return std::find(out.begin(), out.end(), g.find(b)) != out.end();
}

std::set<std::pair<std::string, std::string>> edges(const ExecGraph& g)
{
    std::set<std::pair<std::string, std::string>> out;
    for (const auto& v : g.vertices())
        for (auto w : v.outgoing)
            out.emplace(v.name, g.vertex(w).name);
    return out;
}

} // namespace

TEST_CASE("first and last of atomic and sequential workflows")
{
    CHECK(first(W::service("S")) == std::set<std::string>{"S"});
    const auto seq = W::seq({W::service("a"), W::service("b"), W::service("c")});
    CHECK(first(seq) == std::set<std::string>{"a"});
    CHECK(last(seq) == std::set<std::string>{"c"});
    CHECK(last(W::service("S")) == std::set<std::string>{"S"});
}

TEST_CASE("first and last take the union over parallel branches")
{
    const auto andWf = W::all({W::seq({W::service("a"), W::service("b")}), W::service("c")});
    CHECK(first(andWf) == std::set<std::string>{"a", "c"});
    CHECK(last(andWf) == std::set<std::string>{"b", "c"});
    const auto orWf = W::inclusive({W::service("a"), W::seq({W::service("b"), W::service("c")})});
    CHECK(last(orWf) == std::set<std::string>{"a", "c"});
    CHECK(first(orWf) == std::set<std::string>{"a", "b"});
}

TEST_CASE("structural errors")
{
    CHECK_THROWS_AS(validate(W::seq({})), StructuralError);
    CHECK_THROWS_AS(first(W::all({})), StructuralError);
    CHECK_THROWS_AS(validate(W::loop({W::service("a")}, 0)), StructuralError);
    CHECK_THROWS_AS(validate(W::seq({W::service("a"), W::service("a")})), StructuralError);
    CHECK_THROWS_AS(normalize(W::seq({W::service("a"), W::all({W::service("a")})})), StructuralError);
    CHECK_THROWS_AS(logical_kind_from_string("spoon"), StructuralError);
}

TEST_CASE("normalize wraps parallel patterns and adds start and end")
{
    const auto n = normalize(W::seq({W::service("X"), W::all({W::service("A"), W::service("B")})}));
    REQUIRE(n.kind == W::Kind::Seq);
    REQUIRE(n.children.size() == 6);
    CHECK(n.children[0].logic == LogicalKind::Start);
    CHECK(n.children[1].name == "X");
    CHECK(n.children[2].logic == LogicalKind::Fork);
    CHECK(n.children[3].kind == W::Kind::And);
    CHECK(n.children[4].logic == LogicalKind::Join);
    CHECK(n.children[5].logic == LogicalKind::End);
    CHECK(is_normalized(n));
    CHECK_FALSE(is_normalized(W::service("X")));

    const auto single = normalize(W::service("S"));
    CHECK(single.children.size() == 3);

    const auto x = normalize(W::exclusive({W::service("a"), W::service("b")}));
    CHECK(x.children[1].logic == LogicalKind::Decision);
    CHECK(x.children[3].logic == LogicalKind::Merge);
}

TEST_CASE("loops are unrolled into suffixed copies")
{
    const auto n = normalize(W::loop({W::seq({W::service("a"), W::service("b")})}, 3));
    std::vector<std::string> order;
    for (const auto& c : n.children)
        order.push_back(c.name);
    CHECK(order == std::vector<std::string>{"start", "a#1", "b#1", "a#2", "b#2", "a#3", "b#3", "end"});
    CHECK(n.children[3].task == "a");

    const auto once = normalize(W::loop({W::service("a")}, 1));
    CHECK(once.children[1].name == "a");

    const auto g = build_graph(n);
    CHECK(g.tasks().size() == 2);
    CHECK(g.size() == 8);
}

TEST_CASE("mapToGraph builds the fork/join graph")
{
    const auto g = build_graph(normalize(W::seq({W::service("X"), W::all({W::service("A"), W::service("B")})})));
    const std::set<std::pair<std::string, std::string>> expected{
        {"start", "X"}, {"X", "fork1"}, {"fork1", "A"}, {"fork1", "B"}, {"A", "join1"}, {"B", "join1"}, {"join1", "end"}};
    CHECK(edges(g) == expected);
    CHECK(g.vertex(g.source()).name == "start");
    CHECK(g.source().value == 0);
    CHECK(g.vertex(g.sink()).name == "end");
}

TEST_CASE("sequential patterns bridge join to the next fork")
{
    const auto g = build_graph(normalize(W::seq({W::all({W::service("a"), W::service("b")}),
                                                 W::all({W::service("c"), W::service("d")})})));
    CHECK(has_edge(g, "join1", "fork2"));
    CHECK(has_edge(g, "a", "join1"));
    CHECK(has_edge(g, "b", "join1"));
    CHECK(has_edge(g, "fork2", "c"));
    CHECK(has_edge(g, "fork2", "d"));
    CHECK(g.edge_count() == 11);

    const auto chain = build_graph(normalize(W::seq({W::service("a")})));
    CHECK(edges(chain) == std::set<std::pair<std::string, std::string>>{{"start", "a"}, {"a", "end"}});
}

TEST_CASE("graph construction rejects cycles and stray sources")
{
    ExecGraph g;
    const auto a = g.add_vertex(W::logical("a", LogicalKind::Start));
    const auto b = g.add_vertex(W::service("b"));
    const auto c = g.add_vertex(W::logical("c", LogicalKind::End));
    g.add_edge(a, b);
    g.add_edge(b, c);
    g.add_edge(c, b);
    CHECK_THROWS_AS(g.finalize(), StructuralError);

    ExecGraph twoSources;
    const auto s1 = twoSources.add_vertex(W::service("s1"));
    const auto s2 = twoSources.add_vertex(W::service("s2"));
    const auto t = twoSources.add_vertex(W::service("t"));
    twoSources.add_edge(s1, t);
    twoSources.add_edge(s2, t);
    CHECK_THROWS_AS(twoSources.finalize(), StructuralError);
    CHECK_THROWS_AS(twoSources.find("nope"), LookupError);
}

TEST_CASE("graph invariants hold on random workflows")
{
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        const auto wf = generate_workflow(1 + seed % 25, seed);
        const auto n = normalize(wf);
        const auto g = build_graph(n);
        CAPTURE(seed);
        CHECK(g.size() == count_atomic_nodes(n));
        CHECK(g.topological_order().size() == g.size());
        std::size_t sources = 0, sinks = 0;
        for (const auto& v : g.vertices()) {
            sources += v.incoming.empty();
            sinks += v.outgoing.empty();
        }
        CHECK(sources == 1);
        CHECK(sinks == 1);

        // Inner body of Seq(start, ..., end).
        std::vector<W> inner(n.children.begin() + 1, n.children.end() - 1);
        const auto body = inner.size() == 1 ? inner.front() : W::seq(inner);
        CHECK(first(body) == names(g, g.vertex(g.source()).outgoing));
        CHECK(last(body) == names(g, g.vertex(g.sink()).incoming));
    }
}

TEST_CASE("unrolled loops contain count copies of every body node")
{
    const auto wf = W::seq({W::service("x"), W::loop({W::all({W::service("a"), W::service("b")})}, 4)});
    const auto g = build_graph(normalize(wf));
    for (const char* base : {"a", "b", "fork1", "join1"}) {
        std::size_t copies = 0;
        for (const auto& v : g.vertices())
            copies += v.name.rfind(std::string(base) + "#", 0) == 0;
        CHECK(copies == 4);
    }
    CHECK(count_service_nodes(wf) == 3);
}
