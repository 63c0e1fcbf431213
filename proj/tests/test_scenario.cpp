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

#include <set>
#include <sstream>

#include "netqos/error.hpp"
#include "netqos/fixtures.hpp"
#include "netqos/io.hpp"
#include "netqos/scenario.hpp"

using namespace netqos;
using io::Json;

namespace {

ExperimentConfig tiny_experiment()
{
    auto cfg = default_experiment_config();
    cfg.trials = 3;
    cfg.instance.locations = 50;
    cfg.instance.workflowSize = 4;
    cfg.controlCounts = {0, 2, 8};
    cfg.sizes = {2, 4};
    cfg.sizeExperimentControls = 8;
    cfg.ga.generations = 20;
    cfg.ga.populationSize = 20;
    return cfg;
}

std::string csv_of(const std::vector<ExperimentRow>& rows, const std::string& x)
{
    std::ostringstream out;
    write_csv(out, rows, x);
    return out.str();
}

} // namespace

TEST_CASE("derived seeds differ per stream and are stable")
{
    CHECK(derive_seed(1, 1) == derive_seed(1, 1));
    CHECK(derive_seed(1, 1) != derive_seed(1, 2));
    CHECK(derive_seed(1, 1) != derive_seed(2, 1));
}

TEST_CASE("workflow generator is deterministic and uses every task once")
{
    for (std::size_t size : {1u, 10u, 80u}) {
        const auto a = generate_workflow(size, 42);
        CHECK(io::to_json(a) == io::to_json(generate_workflow(size, 42)));
        CHECK(count_service_nodes(a) == size);
        validate(a);
        const auto seq = generate_workflow(size, 42, {.sequentialOnly = true});
        REQUIRE(seq.kind == WorkflowExpr::Kind::Seq);
        CHECK(seq.children.size() == size);
        for (const auto& c : seq.children)
            CHECK(c.kind == WorkflowExpr::Kind::Service);
    }
    CHECK_THROWS_AS(generate_workflow(0, 1), ParameterError);

    std::set<WorkflowExpr::Kind> kinds;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto wf = generate_workflow(12, seed);
        std::function<void(const WorkflowExpr&)> walk = [&](const WorkflowExpr& e) {
            kinds.insert(e.kind);
            for (const auto& c : e.children)
                walk(c);
        };
        walk(wf);
    }
    CHECK(kinds.count(WorkflowExpr::Kind::And));
    CHECK(kinds.count(WorkflowExpr::Kind::Xor));
    CHECK(kinds.count(WorkflowExpr::Kind::Or));
    CHECK(kinds.count(WorkflowExpr::Kind::Loop));
}

TEST_CASE("offers reference existing tasks and locations")
{
    const auto net = generate_network(100, 3);
    const auto wf = generate_workflow(20, 3);
    const auto offers = generate_offers(wf, net, 3);
    std::map<std::string, std::size_t> perTask;
    std::set<std::string> ids;
    for (const auto& o : offers) {
        ++perTask[o.task];
        CHECK(o.location.value < net.size());
        CHECK(ids.insert(o.id).second);
        CHECK(o.sla.cost >= 1);
        CHECK(o.sla.availability <= 1);
    }
    CHECK(perTask.size() == 20);
    for (const auto& [task, n] : perTask) {
        CHECK(n >= 2);
        CHECK(n <= 5);
    }
    OfferGenParams bad;
    bad.minCandidates = 0;
    CHECK_THROWS_AS(generate_offers(wf, net, 1, bad), ParameterError);
}

TEST_CASE("problem generation is reproducible and nests control sets")
{
    InstanceParams params;
    params.locations = 200;
    params.slaves = 8;
    const auto a = generate_problem(params, 5);
    const auto b = generate_problem(params, 5);
    CHECK(a.controls == b.controls);
    CHECK(io::offers_to_json(a.catalog.offers(), a.net()) == io::offers_to_json(b.catalog.offers(), b.net()));
    params.slaves = 4;
    const auto c = generate_problem(params, 5);
    for (auto id : c.controls)
        CHECK(std::find(a.controls.begin(), a.controls.end(), id) != a.controls.end());
    CHECK(c.master == a.master);
}

TEST_CASE("json round trips are byte identical")
{
    const auto net = generate_network(30, 8);
    const auto netText = io::dump(io::to_json(net));
    CHECK(io::dump(io::to_json(io::network_from_json(Json::parse(netText)))) == netText);

    const auto wf = generate_workflow(15, 8);
    const auto wfText = io::dump(io::to_json(wf));
    CHECK(io::dump(io::to_json(io::workflow_from_json(Json::parse(wfText)))) == wfText);

    const auto offers = generate_offers(wf, net, 8);
    const auto offerText = io::dump(io::offers_to_json(offers, net));
    CHECK(io::dump(io::offers_to_json(io::offers_from_json(Json::parse(offerText), net), net)) == offerText);

    const auto p = fixtures::france_japan();
    const auto a = fixtures::pick_services(p, {"X2", "A1", "B3"});
    CHECK(io::resolve(p, io::assignment_doc_from_json(io::to_json(io::to_doc(p, a)))) == a);
}

TEST_CASE("unlimited rates serialize as null")
{
    NetworkParams params;
    params.linkRates = {kUnlimitedRate};
    const auto j = io::to_json(generate_network(3, 1, params));
    CHECK(j["linkClasses"][0]["rateMBps"].is_null());
    CHECK(io::network_from_json(j).link(LocationId{0}, LocationId{1}).rateMBps == kUnlimitedRate);
}

TEST_CASE("malformed documents raise configuration errors")
{
    CHECK_THROWS_AS(io::workflow_from_json(Json::parse(R"({"type":"spoon"})")), ConfigurationError);
    CHECK_THROWS_AS(io::network_from_json(Json::parse(R"({"locations":3})")), ConfigurationError);
    CHECK_THROWS_AS(io::utility_from_json(Json::parse(R"({"weights":{"speed":1}})")), ConfigurationError);
    CHECK_THROWS_AS(io::read_json_file("/nonexistent/file.json"), ConfigurationError);
    CHECK_THROWS_AS(io::experiment_config_from_json(Json::parse(R"({"trials":"many"})")), ConfigurationError);
    CHECK_THROWS_AS(io::faults_from_json(Json::parse(R"([{"atMs":3}])")), ConfigurationError);
}

TEST_CASE("experiment validation")
{
    auto cfg = tiny_experiment();
    validate(cfg);
    cfg.trials = 0;
    CHECK_THROWS_AS(validate(cfg), ParameterError);
    cfg = tiny_experiment();
    cfg.controlCounts = {51};
    CHECK_THROWS_AS(validate(cfg), ParameterError);
    cfg = tiny_experiment();
    cfg.algorithms = {"simulated-annealing"};
    CHECK_THROWS_AS(validate(cfg), ConfigurationError);
}

TEST_CASE("experiments are deterministic and independent of the thread count")
{
    auto cfg = tiny_experiment();
    const auto rows = experiment_latency_vs_controls(cfg);
    const auto text = csv_of(rows, "k");
    CHECK(text == csv_of(experiment_latency_vs_controls(cfg), "k"));
    cfg.threads = 3;
    CHECK(text == csv_of(experiment_latency_vs_controls(cfg), "k"));
    CHECK(text.rfind("algo,k,meanLatency,stdev\n", 0) == 0);

    // Three algorithms over three k values plus their [o] rows.
    CHECK(rows.size() == 3 * 3 + 3);
    for (const auto& r : rows) {
        CHECK(r.trials == 3);
        CHECK(r.samples.size() == 3);
        if (r.algo.find("[o]") != std::string::npos)
            CHECK(r.x == 50);
    }

    const auto sizeRows = experiment_latency_vs_size(tiny_experiment());
    CHECK(csv_of(sizeRows, "size") == csv_of(experiment_latency_vs_size(tiny_experiment()), "size"));

    std::ostringstream plot;
    write_gnuplot(plot, rows, "k");
    CHECK(plot.str().find("dijkstra") != std::string::npos);
}

TEST_CASE("dijkstra rows never exceed the GA rows on sequences")
{
    const auto rows = experiment_latency_vs_controls(tiny_experiment());
    std::map<std::pair<std::string, std::size_t>, double> mean;
    for (const auto& r : rows)
        mean[{r.algo, r.x}] = r.meanLatency;
    for (std::size_t k : {0u, 2u, 8u}) {
        CHECK(mean[{"dijkstra", k}] <= mean[{"ga", k}] + 1e-9);
        CHECK(mean[{"dijkstra", k}] <= mean[{"netga-like", k}] + 1e-9);
    }
}
