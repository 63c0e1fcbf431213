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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include <unistd.h>

#include "netqos/error.hpp"
#include "netqos/exec_sim.hpp"
#include "netqos/fixtures.hpp"
#include "netqos/io.hpp"
#include "netqos/optimizers.hpp"
#include "netqos/qos_engine.hpp"
#include "netqos/scenario.hpp"
#include "oracles.hpp"

using namespace netqos;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
    bool pass{true};
    std::ostringstream note;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            note << " [failed: " << what << "]";
        }
    }
};

int failures = 0;

void report(int id, const char* title, const std::function<void(Verdict&)>& body, double budgetSeconds)
{
    Verdict v;
    const auto start = Clock::now();
    try {
        body(v);
    } catch (const std::exception& e) {
        v.pass = false;
        v.note << " [exception: " << e.what() << "]";
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    v.require(seconds < budgetSeconds, "time budget " + std::to_string(budgetSeconds) + " s");
    std::printf("%s criterion %d: %s (%.2f s)%s\n", v.pass ? "PASS" : "FAIL", id, title, seconds, v.note.str().c_str());
    std::fflush(stdout);
    failures += !v.pass;
}

Assignment random_assignment(const Problem& p, std::uint64_t seed)
{
    const auto space = search_space(p);
    std::mt19937_64 rng(seed);
    std::vector<std::uint32_t> genes;
    for (auto r : space.radices)
        genes.push_back(static_cast<std::uint32_t>(rng() % r));
    return space.decode(p, genes);
}

std::vector<std::string> picked(const Problem& p, const Assignment& a)
{
    std::vector<std::string> out;
    for (std::uint32_t t = 0; t < a.service.size(); ++t)
        out.push_back(p.catalog.candidate(t, a.service[t]).id);
    return out;
}

void france_japan_flip(Verdict& v)
{
    const auto blindProblem = fixtures::france_japan(true);
    const auto blind = brute_force(blindProblem);
    v.require(picked(blindProblem, blind.assignment) == std::vector<std::string>{"X2", "A2", "B3"},
              "network-blind pick");
    v.require(blind.qos.runtime == 255, "network-blind runtime 255");

    const auto france = fixtures::france_japan();
    const auto aware = brute_force(france);
    v.require(picked(france, aware.assignment) == std::vector<std::string>{"X1", "A1", "B1"}, "network-aware pick");
    v.require(aware.qos.runtime > 300 && aware.qos.runtime < 301, "network-aware runtime 300 + local legs");

    const double remote = compute_qos(france, fixtures::pick_services(france, {"X2", "A2", "B3"})).runtime;
    v.require(remote > 555, "(X2,A2,B3) from France above 555 ms");
    v.note << " blind=" << blind.qos.runtime << " aware=" << aware.qos.runtime << " remote=" << remote;
}

void audio_crossover(Verdict& v)
{
    const auto total = [](double mb, const char* offer) {
        const auto p = fixtures::audio(mb);
        return compute_qos(p, fixtures::pick_services(p, {offer})).runtime;
    };
    for (int x = 10; x <= 400; x += 10) {
        const double m1 = total(x, "M1"), m2 = total(x, "M2");
        if (x < 200)
            v.require(m1 < m2, "M1 < M2 at " + std::to_string(x) + " MB");
        else if (x == 200)
            v.require(std::abs(m1 - m2) <= 1e-9, "M1 == M2 at 200 MB");
        else
            v.require(m1 > m2, "M1 > M2 at " + std::to_string(x) + " MB");
    }
    v.note << " at 200 MB: " << total(200, "M1") << " vs " << total(200, "M2") << " ms";
}

void two_phase(Verdict& v)
{
    NetworkParams free;
    free.delayPerUnit = 0;
    free.linkRates = {kUnlimitedRate};
    int mismatches = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        auto net = std::make_shared<const NetworkModel>(generate_network(50, seed, free));
        const auto wf = generate_workflow(1 + seed % 20, derive_seed(seed, 1));
        OfferGenParams op;
        op.maxMsPerMB = 0;
        auto offers = generate_offers(wf, *net, derive_seed(seed, 2), op);
        for (auto& o : offers)
            o.sla.execTime = PiecewiseLinear::constant(std::round(o.sla.execTime(0)));
        ProblemOptions opts;
        opts.inputMB = 1;
        opts.logical.execMs = static_cast<double>(seed % 3);
        const auto p = make_problem(wf, net, offers, LocationId{0}, choose_control_nodes(*net, 4, seed), opts);
        const auto a = random_assignment(p, seed);
        const auto execOf = [&](const std::string& task) {
            const auto t = *p.graph.task_index(task);
            return p.catalog.candidate(t, a.service[t]).sla.execTime(0);
        };
        mismatches += compute_qos(p, a).runtime != oracle::hierarchical_runtime(wf, execOf, opts.logical.execMs);
    }
    v.require(mismatches == 0, std::to_string(mismatches) + " of 200 differ");
    v.note << " 200 workflows, " << mismatches << " mismatches";
}

void diamond(Verdict& v)
{
    const auto p = fixtures::diamond();
    const auto a = fixtures::diamond_assignment(p);
    const auto sim = simulate_execution(p, a);
    const auto& g = p.graph;
    const auto fork = g.find("fork1"), join = g.find("join1"), A = g.find("A"), B = g.find("B");
    // Block aggregation: slowest entry + slowest body + slowest exit of AND.
    const double in = std::max(edge_legs(p, a, fork, A).time_ms(0), edge_legs(p, a, fork, B).time_ms(0));
    const double body = std::max(sim.nodes[A.value].execMs, sim.nodes[B.value].execMs);
    const double out = std::max(edge_legs(p, a, A, join).time_ms(0), edge_legs(p, a, B, join).time_ms(0));
    const double naive = sim.nodes[fork.value].execEnd + in + body + out + (sim.runtime - sim.nodes[join.value].execStart);
    v.require(naive > sim.runtime, "naive aggregate exceeds simulation");
    v.note << " naive=" << naive << " simulated=" << sim.runtime;
}

void architecture(Verdict& v)
{
    int checked = 0, mismatches = 0;
    double worst = 0;
    for (std::uint64_t seed = 0; checked < 100; ++seed) {
        InstanceParams params;
        params.locations = 80;
        params.workflowSize = 1 + seed % 8;
        params.slaves = seed % 8;
        params.inputMB = 0.4;
        params.offers.maxOutBaseMB = 0.3;
        params.logical.execMs = static_cast<double>(seed % 2);
        const auto p = generate_problem(params, seed);
        if (p.graph.size() > 20)
            continue;
        ++checked;
        const auto a = random_assignment(p, derive_seed(seed, 77));
        const auto r = run_protocol(p, a, plan_and_distribute(p, a));
        const double runtime = compute_qos(p, a).runtime;
        if (r.outcome != Outcome::Completed || !r.makespan) {
            ++mismatches;
            continue;
        }
        const double diff = std::abs(*r.makespan - runtime);
        worst = std::max(worst, diff);
        mismatches += diff > 1e-9;
    }
    v.require(mismatches == 0, std::to_string(mismatches) + " of 100 differ");
    v.note << " 100 instances, max |makespan - runtime| = " << worst << " ms";
}

void oracle_equivalence(Verdict& v)
{
    int mismatches = 0;
    std::uint64_t evaluations = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        InstanceParams params;
        params.locations = 100;
        params.workflowSize = 1 + seed % 5;
        params.workflow.sequentialOnly = true;
        params.offers.minCandidates = 1;
        params.offers.maxCandidates = 6;
        params.slaves = seed % 4;
        params.inputMB = 0.5;
        params.offers.maxOutBaseMB = 0.5;
        const auto p = generate_problem(params, derive_seed(seed, 6));
        const auto exact = brute_force(p);
        const auto fast = dijkstra_sequential(p);
        evaluations += exact.evaluations;
        mismatches += std::abs(fast.qos.latency - exact.qos.latency) > 1e-9 * std::max(1.0, exact.qos.latency);
    }
    v.require(mismatches == 0, std::to_string(mismatches) + " of 100 differ");
    v.note << " 100 instances, " << evaluations << " brute-force evaluations";
}

ExperimentConfig sweep_config()
{
    auto cfg = default_experiment_config();
    cfg.seed = 2024;
    cfg.trials = 20;
    cfg.instance.locations = 1000;
    cfg.instance.workflowSize = 10;
    cfg.controlCounts = {0, 8, 64, 256};
    cfg.algorithms = {"dijkstra"};
    cfg.unlimitedVariants = true;
    return cfg;
}

std::map<std::pair<std::string, std::size_t>, double> means(const std::vector<ExperimentRow>& rows)
{
    std::map<std::pair<std::string, std::size_t>, double> m;
    for (const auto& r : rows)
        m[{r.algo, r.x}] = r.meanLatency;
    return m;
}

void scaling(Verdict& v)
{
    const auto cfg = sweep_config();
    auto m = means(experiment_latency_vs_controls(cfg));
    const double k0 = m[{"dijkstra", 0}], k8 = m[{"dijkstra", 8}], k64 = m[{"dijkstra", 64}];
    const double k256 = m[{"dijkstra", 256}], o = m[{"dijkstra[o]", cfg.instance.locations}];
    v.require(k0 > k8 && k8 > k64, "strictly decreasing over k = 0, 8, 64");
    v.require(k256 <= 1.05 * o, "k = 256 within 5% of [o]");
    v.note << " mean latency k0=" << k0 << " k8=" << k8 << " k64=" << k64 << " k256=" << k256 << " [o]=" << o
           << " ratio=" << k256 / o;
}

void ga_quality(Verdict& v)
{
    int hitsStandard = 0, hitsAware = 0, n = 0;
    for (std::uint64_t seed = 0; n < 100; ++seed) {
        InstanceParams params;
        params.locations = 60;
        params.workflowSize = 1 + seed % 4;
        params.workflow.sequentialOnly = seed % 2 == 0;
        params.offers.maxCandidates = 4;
        params.slaves = seed % 3;
        params.inputMB = 0.5;
        params.offers.maxOutBaseMB = 0.5;
        const auto p = generate_problem(params, derive_seed(seed, 8));
        if (search_space(p).cardinality() > 200000)
            continue;
        ++n;
        const double best = brute_force(p).utility;
        GaConfig cfg;
        cfg.seed = derive_seed(seed, 9);
        hitsStandard += ga_standard(p, cfg).utility >= best - 1e-12;
        hitsAware += ga_network_aware(p, cfg).utility >= best - 1e-12;
    }
    v.require(hitsStandard >= 95, "gaStandard optimum rate");
    v.require(hitsAware >= 95, "gaNetworkAware optimum rate");
    v.note << " optimum reached: ga " << hitsStandard << "/100, netga-like " << hitsAware << "/100;";

    auto cfg = sweep_config();
    cfg.algorithms = {"ga", "netga-like"};
    cfg.unlimitedVariants = false;
    auto m = means(experiment_latency_vs_controls(cfg));
    for (auto k : cfg.controlCounts) {
        const double ga = m[{"ga", k}], aware = m[{"netga-like", k}];
        v.require(aware <= ga, "netga-like <= ga at k = " + std::to_string(k));
        v.note << " k" << k << ": " << aware << " vs " << ga;
    }
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void determinism(Verdict& v)
{
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / ("netqos-acceptance-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const std::string cli = NETQOS_CLI;
    const auto path = [&](const std::string& name) { return (dir / name).string(); };

    {
        std::ofstream cfg(path("experiment.json"));
        cfg << R"({"trials": 2, "locations": 60, "workflowSize": 4, "controlCounts": [0, 4],
                   "sizes": [2, 4], "sizeExperimentControls": 4,
                   "ga": {"generations": 15, "populationSize": 16}})";
        std::ofstream faults(path("faults.json"));
        faults << R"([{"node": "T1", "atMs": 0}])";
    }

    const std::vector<std::pair<std::string, std::string>> steps{
        {"net", "gen-net --locations 60 --seed 3"},
        {"wf", "gen-wf --size 6 --seed 3"},
        {"offers", "gen-offers --workflow " + path("wf.1") + " --network " + path("net.1") + " --seed 3"},
        {"solve", "solve --workflow " + path("wf.1") + " --network " + path("net.1") + " --slas " + path("offers.1") +
                      " --algo netga --controls 5 --seed 3 --generations 30 --objective latency"},
        {"assignment", ""},
        {"simulate", "simulate --workflow " + path("wf.1") + " --network " + path("net.1") + " --slas " +
                         path("offers.1") + " --assignment " + path("assignment.1")},
        {"execute", "execute --workflow " + path("wf.1") + " --network " + path("net.1") + " --slas " +
                        path("offers.1") + " --assignment " + path("assignment.1") + " --faults " +
                        path("faults.json")},
        {"controls", "experiment --config " + path("experiment.json") + " --kind controls --seed 5"},
        {"size", "experiment --config " + path("experiment.json") + " --kind size --seed 5"},
    };
    for (const auto& [name, args] : steps) {
        if (name == "assignment") {
            const auto report = io::read_json_file(path("solve.1"));
            io::write_text_file(path("assignment.1"), io::dump(report.at("assignment")));
            continue;
        }
        for (int run : {1, 2}) {
            const std::string out = path(name + "." + std::to_string(run));
            const std::string cmd = "\"" + cli + "\" " + args + " --out " + out;
            const int rc = std::system(cmd.c_str());
            v.require(rc == 0, name + " exit status");
        }
        const auto a = slurp(path(name + ".1")), b = slurp(path(name + ".2"));
        v.require(!a.empty() && a == b, name + " output identical");
    }
    v.note << " " << steps.size() - 1 << " commands run twice";
    fs::remove_all(dir);
}

} // namespace

int main()
{
    report(1, "France/Japan selection flip", france_japan_flip, 1);
    report(2, "audio encoder crossover", audio_crossover, 1);
    report(3, "two-phase consistency on a free network", two_phase, 10);
    report(4, "block aggregation overestimates the diamond", diamond, 1);
    report(5, "protocol makespan equals estimated runtime", architecture, 30);
    report(6, "dijkstra equals brute force", oracle_equivalence, 60);
    report(7, "control-node scaling trend", scaling, 600);
    report(8, "GA quality floor", ga_quality, 600);
    report(9, "CLI determinism", determinism, 120);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
