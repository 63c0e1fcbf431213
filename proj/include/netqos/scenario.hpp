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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "netqos/optimizers.hpp"

namespace netqos {

// splitmix64 of (seed, stream); independent seeds for trials and generators.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

struct WorkflowGenParams {
    // Relative weights of the pattern drawn for a group of two or more tasks.
    double seqWeight{0.5};
    double andWeight{0.2};
    double xorWeight{0.1};
    double orWeight{0.1};
    double loopWeight{0.1};
    int maxBranches{3};
    int maxLoopCount{3};
    bool sequentialOnly{false};
};

/// Random tree over tasks T1..Tsize: a group of tasks is split into
/// consecutive parts joined by a weighted-random pattern, recursively.
/// Loops never nest. Throws ParameterError for size 0.
WorkflowExpr generate_workflow(std::size_t size, std::uint64_t seed, const WorkflowGenParams& params = {});

struct OfferGenParams {
    std::size_t minCandidates{2};
    std::size_t maxCandidates{5};
    double minExecMs{10};
    double maxExecMs{200};
    double maxMsPerMB{20};
    // Per task output = ratio * input + baseMB, shared by all its candidates.
    double minOutRatio{0.5};
    double maxOutRatio{1.0};
    double maxOutBaseMB{0.002};
    double minCost{1};
    double maxCost{10};
    double minAvailability{0.9};
    double maxAvailability{1.0};
};

/// Per task a random number of offers at uniformly drawn locations. All
/// offers of one task share the output-size function, so data sizes do
/// not depend on the selection.
std::vector<ServiceOffer> generate_offers(const WorkflowExpr& wf, const NetworkModel& net, std::uint64_t seed,
                                          const OfferGenParams& params = {});

struct InstanceParams {
    std::size_t locations{1000};
    NetworkParams network;
    std::size_t workflowSize{10};
    WorkflowGenParams workflow;
    OfferGenParams offers;
    std::size_t slaves{0};
    double inputMB{0.001};
    LogicalProfile logical;
    UtilitySpec utility{UtilitySpec::single(Attribute::Latency)};
};

/// Network, workflow, offers, master and `slaves` control nodes drawn from
/// one seed. The slave set is a prefix of a seeded permutation, so
/// instances that differ only in `slaves` have nested control sets.
Problem generate_problem(const InstanceParams& params, std::uint64_t seed);

struct ExperimentConfig {
    std::uint64_t seed{1};
    std::size_t trials{20};
    std::size_t threads{1};
    InstanceParams instance;
    std::vector<std::string> algorithms{"dijkstra", "ga", "netga-like"};
    bool unlimitedVariants{true};
    GaConfig ga;
    std::vector<std::size_t> controlCounts{0, 1, 2, 4, 8, 16, 32, 64, 128, 256};
    std::vector<std::size_t> sizes{10, 20, 40, 80};
    std::size_t sizeExperimentControls{256};
};

// Pure sequences by default; "dijkstra" is exact on them.
ExperimentConfig default_experiment_config();

void validate(const ExperimentConfig& cfg);

struct ExperimentRow {
    std::string algo;     // "[o]" suffix for the unlimited-control variants
    std::size_t x{0};     // control nodes or workflow size
    double meanLatency{0};
    double stdev{0};      // sample standard deviation over trials
    std::size_t trials{0};
    std::vector<double> samples;  // per-trial best latency, trial order
};

// Best latency found by `algo` ("brute", "dijkstra", "ga", "netga-like").
Solution run_algorithm(const std::string& algo, const Problem& problem, const GaConfig& ga);

/// Latency against control-node count. Each trial fixes network, workflow,
/// offers and a control-node permutation; k takes the first k entries.
/// "[o]" rows report x = number of locations.
std::vector<ExperimentRow> experiment_latency_vs_controls(const ExperimentConfig& cfg);

/// Latency against workflow size at sizeExperimentControls control nodes.
std::vector<ExperimentRow> experiment_latency_vs_size(const ExperimentConfig& cfg);

// CSV with header "algo,<xName>,meanLatency,stdev".
void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows, const std::string& xName);

// One gnuplot data block per algorithm, separated by two blank lines.
void write_gnuplot(std::ostream& out, const std::vector<ExperimentRow>& rows, const std::string& xName);

} // namespace netqos
