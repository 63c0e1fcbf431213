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
#include <span>
#include <string>
#include <vector>

#include "netqos/problem.hpp"

namespace netqos {

/// Mixed-radix encoding of an assignment: one gene per task (candidate
/// index) followed by one gene per vertex other than start and end
/// (index into Problem::controls).
struct SearchSpace {
    std::vector<std::uint32_t> radices;
    std::vector<NodeRef> controlled;  // vertices behind the control genes
    std::size_t taskGenes{0};

    std::size_t size() const { return radices.size(); }
    Assignment decode(const Problem& problem, std::span<const std::uint32_t> genes) const;
    std::vector<std::uint32_t> encode(const Problem& problem, const Assignment& a) const;
    // Number of assignments, saturating at UINT64_MAX.
    std::uint64_t cardinality() const;
};

SearchSpace search_space(const Problem& problem);

struct Solution {
    Assignment assignment;
    QosVector qos;
    double utility{0};
    std::uint64_t evaluations{0};
};

struct BruteForceOptions {
    std::uint64_t cap{10'000'000};
};

/// Exhaustive enumeration in lexicographic gene order; the first
/// utility-maximal assignment wins. Throws SearchSpaceTooLarge above the cap.
Solution brute_force(const Problem& problem, const BruteForceOptions& options = {});

/// Exact shortest path for pure sequences under a single runtime or latency
/// objective. The layered graph has, per sequence position, one vertex per
/// (candidate, control node) pair plus relay vertices for "result held at
/// control node k", so each hop decomposes into its three legs.
///
/// Preconditions (UnsupportedStructure otherwise): the graph is a chain,
/// every task occurs once, all candidates of a task produce the same output
/// size for the chain's input, and the utility puts all weight on runtime
/// or latency with no constraints.
Solution dijkstra_sequential(const Problem& problem);

struct GaConfig {
    std::size_t populationSize{100};
    std::size_t generations{200};
    double crossoverRate{0.9};
    double mutationRate{-1};  // negative: 1 / genome length
    std::size_t tournamentSize{2};
    std::size_t elitism{1};
    std::uint64_t seed{1};
    std::size_t threads{1};
};

void validate(const GaConfig& cfg);

struct GaResult : Solution {
    std::vector<double> trace;  // best-so-far utility after each generation (index 0 = initial population)
};

/// Standard GA: uniform initialization, tournament selection, one-point
/// crossover, per-gene uniform mutation, elitism.
GaResult ga_standard(const Problem& problem, const GaConfig& cfg);

/// Network-aware stand-in for NetGA ("NetGA-like"). Same loop as
/// ga_standard with locality-biased operators:
///  - service genes are drawn with weight 1 / (1 + t)^2, t being the network
///    time from the nearest already-placed upstream service (or the master)
///    to the candidate;
///  - control genes start at the deployed control node nearest to the node's
///    location and mutate back to it half of the time;
///  - a mutated service gene drags the control genes of its nodes to the
///    control node nearest to the new location.
/// Without network cost the service bias is uniform.
GaResult ga_network_aware(const Problem& problem, const GaConfig& cfg);

/// The "[o]" variant: a control node may be deployed at every location.
Problem unlimited_control_variant(const Problem& problem);

} // namespace netqos
