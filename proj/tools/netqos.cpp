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

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "netqos/error.hpp"
#include "netqos/io.hpp"

using namespace netqos;

namespace {

struct ProblemFiles {
    std::string workflow;
    std::string network;
    std::string slas;
    double inputMB{0};
    double logicalMs{0};
    std::string objective{"runtime"};
    std::string utilityFile;
};

void add_problem_options(CLI::App* cmd, ProblemFiles& f)
{
    cmd->add_option("--workflow", f.workflow, "Workflow JSON")->required();
    cmd->add_option("--network", f.network, "Network JSON")->required();
    cmd->add_option("--slas", f.slas, "Service offers JSON")->required();
    cmd->add_option("--input-mb", f.inputMB, "Workflow input size in MB");
    cmd->add_option("--logical-ms", f.logicalMs, "Execution time of fork/join/decision/merge nodes");
    cmd->add_option("--objective", f.objective, "runtime|cost|availability|latency");
    cmd->add_option("--utility", f.utilityFile, "Utility JSON (weights and constraints)");
}

Problem load_problem(const ProblemFiles& f, const std::string& master, const std::vector<std::string>& slaves)
{
    auto net = std::make_shared<const NetworkModel>(io::network_from_json(io::read_json_file(f.network)));
    const auto wf = io::workflow_from_json(io::read_json_file(f.workflow));
    auto offers = io::offers_from_json(io::read_json_file(f.slas), *net);
    ProblemOptions options;
    options.inputMB = f.inputMB;
    options.logical.execMs = f.logicalMs;
    options.utility = f.utilityFile.empty() ? UtilitySpec::single(attribute_from_string(f.objective))
                                            : io::utility_from_json(io::read_json_file(f.utilityFile));
    const auto resolve = [&](const std::string& name) {
        if (!net->contains(name))
            throw ConfigurationError("unknown location '" + name + "'");
        return net->find(name);
    };
    const auto masterId = master.empty() ? LocationId{0} : resolve(master);
    std::vector<LocationId> slaveIds;
    for (const auto& s : slaves)
        slaveIds.push_back(resolve(s));
    return make_problem(wf, std::move(net), std::move(offers), masterId, slaveIds, options);
}

void emit(const std::string& out, const std::string& text)
{
    if (out.empty() || out == "-")
        std::cout << text;
    else
        io::write_text_file(out, text);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Network-aware QoS estimation and service selection"};
    app.require_subcommand(1);
    std::string out;
    std::uint64_t seed = 1;

    // gen-net
    auto* genNet = app.add_subcommand("gen-net", "Generate a random network");
    std::size_t locations = 1000;
    std::string netConfig;
    genNet->add_option("--locations", locations, "Number of locations");
    genNet->add_option("--seed", seed);
    genNet->add_option("--config", netConfig, "Network generator parameters (JSON)");
    genNet->add_option("--out", out);

    // gen-wf
    auto* genWf = app.add_subcommand("gen-wf", "Generate a random workflow");
    std::size_t size = 10;
    bool sequential = false;
    std::string wfConfig;
    genWf->add_option("--size", size, "Number of tasks");
    genWf->add_option("--seed", seed);
    genWf->add_flag("--sequential", sequential, "Only generate pure sequences");
    genWf->add_option("--config", wfConfig, "Workflow generator parameters (JSON)");
    genWf->add_option("--out", out);

    // gen-offers
    auto* genOffers = app.add_subcommand("gen-offers", "Generate service offers for a workflow");
    std::string wfFile, netFile, offerConfig;
    genOffers->add_option("--workflow", wfFile)->required();
    genOffers->add_option("--network", netFile)->required();
    genOffers->add_option("--seed", seed);
    genOffers->add_option("--config", offerConfig, "Offer generator parameters (JSON)");
    genOffers->add_option("--out", out);

    // solve
    auto* solve = app.add_subcommand("solve", "Select services and control nodes");
    ProblemFiles solveFiles;
    add_problem_options(solve, solveFiles);
    std::string algo = "ga", master;
    std::vector<std::string> slaves;
    std::size_t controls = 0, generations = 200, population = 100, threads = 1;
    bool unlimited = false, timing = false;
    solve->add_option("--algo", algo, "brute|dijkstra|ga|netga")
        ->check(CLI::IsMember({"brute", "dijkstra", "ga", "netga", "netga-like"}));
    solve->add_option("--master", master, "Master location (default: first location)");
    solve->add_option("--slaves", slaves, "Deployed slave control nodes")->delimiter(',');
    solve->add_option("--controls", controls, "Deploy this many random slaves (uses --seed)");
    solve->add_flag("--unlimited-controls", unlimited, "Allow a control node at every location");
    solve->add_option("--seed", seed);
    solve->add_option("--generations", generations);
    solve->add_option("--population", population);
    solve->add_option("--threads", threads, "Fitness evaluation threads");
    solve->add_flag("--timing", timing, "Include wall-clock time in the report");
    solve->add_option("--out", out);

    // simulate / execute
    auto* simulate = app.add_subcommand("simulate", "Estimate the QoS of an assignment");
    ProblemFiles simFiles;
    std::string assignmentFile;
    add_problem_options(simulate, simFiles);
    simulate->add_option("--assignment", assignmentFile)->required();
    simulate->add_option("--out", out);

    auto* execute = app.add_subcommand("execute", "Run the master/slave execution protocol");
    ProblemFiles execFiles;
    std::string faultsFile;
    add_problem_options(execute, execFiles);
    execute->add_option("--assignment", assignmentFile)->required();
    execute->add_option("--faults", faultsFile, "Fault plan JSON");
    execute->add_option("--out", out);

    // experiment
    auto* experiment = app.add_subcommand("experiment", "Run a latency experiment");
    std::string expConfig, kind = "controls", gnuplot;
    std::optional<std::uint64_t> expSeed;
    std::optional<std::size_t> expThreads;
    experiment->add_option("--config", expConfig, "Experiment configuration (JSON)");
    experiment->add_option("--kind", kind, "controls|size")->check(CLI::IsMember({"controls", "size"}));
    experiment->add_option("--seed", expSeed);
    experiment->add_option("--threads", expThreads);
    experiment->add_option("--gnuplot", gnuplot, "Also write a gnuplot data file");
    experiment->add_option("--out", out, "CSV output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*genNet) {
            NetworkParams params;
            if (!netConfig.empty())
                params = io::network_params_from_json(io::read_json_file(netConfig));
            emit(out, io::dump(io::to_json(generate_network(locations, seed, params))));
        } else if (*genWf) {
            WorkflowGenParams params;
            if (!wfConfig.empty())
                params = io::workflow_params_from_json(io::read_json_file(wfConfig));
            params.sequentialOnly = params.sequentialOnly || sequential;
            emit(out, io::dump(io::to_json(generate_workflow(size, seed, params))));
        } else if (*genOffers) {
            OfferGenParams params;
            if (!offerConfig.empty())
                params = io::offer_params_from_json(io::read_json_file(offerConfig));
            const auto net = io::network_from_json(io::read_json_file(netFile));
            const auto wf = io::workflow_from_json(io::read_json_file(wfFile));
            emit(out, io::dump(io::offers_to_json(generate_offers(wf, net, seed, params), net)));
        } else if (*solve) {
            auto problem = load_problem(solveFiles, master, slaves);
            if (controls > 0) {
                const auto chosen = choose_control_nodes(problem.net(), controls, seed);
                problem.set_controls(problem.master, chosen);
            }
            if (unlimited)
                problem = unlimited_control_variant(problem);
            GaConfig ga;
            ga.seed = seed;
            ga.generations = generations;
            ga.populationSize = population;
            ga.threads = threads;
            const auto started = std::chrono::steady_clock::now();
            const auto solution = run_algorithm(algo == "netga" ? "netga-like" : algo, problem, ga);
            const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started);
            auto report = io::solution_report(algo == "netga" ? "netga-like" : algo, problem, solution);
            if (timing)
                report["wallMs"] = elapsed.count();
            emit(out, io::dump(report));
        } else if (*simulate || *execute) {
            const auto& files = *simulate ? simFiles : execFiles;
            const auto doc = io::assignment_doc_from_json(io::read_json_file(assignmentFile));
            const auto problem = load_problem(files, doc.master, doc.slaves);
            const auto a = io::resolve(problem, doc);
            if (*simulate) {
                const auto sim = simulate_execution(problem, a);
                emit(out, io::dump(io::simulation_report(problem, sim, compute_qos(problem, a))));
            } else {
                std::vector<Fault> faults;
                if (!faultsFile.empty())
                    faults = io::faults_from_json(io::read_json_file(faultsFile));
                const auto result = run_protocol(problem, a, plan_and_distribute(problem, a), faults);
                emit(out, io::dump(io::trace_report(problem, result)));
            }
        } else if (*experiment) {
            auto cfg = default_experiment_config();
            if (!expConfig.empty())
                cfg = io::experiment_config_from_json(io::read_json_file(expConfig), cfg);
            if (expSeed)
                cfg.seed = *expSeed;
            if (expThreads)
                cfg.threads = *expThreads;
            const bool bySize = kind == "size";
            const auto rows = bySize ? experiment_latency_vs_size(cfg) : experiment_latency_vs_controls(cfg);
            const std::string xName = bySize ? "size" : "k";
            std::ostringstream csv;
            write_csv(csv, rows, xName);
            emit(out, csv.str());
            if (!gnuplot.empty()) {
                std::ostringstream data;
                write_gnuplot(data, rows, xName);
                io::write_text_file(gnuplot, data.str());
            }
        }
    } catch (const ConfigurationError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const ParameterError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const LookupError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const StructuralError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
