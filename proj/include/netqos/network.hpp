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
#include <limits>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "netqos/ids.hpp"

namespace netqos {

inline constexpr double kUnlimitedRate = std::numeric_limits<double>::infinity();

struct NetworkLocation {
    std::string id;
    double x{0};
    double y{0};

    friend bool operator==(const NetworkLocation&, const NetworkLocation&) = default;
};

// One-way QoS of a link. Sizes are in MB, rates in MB/s, times in ms.
struct LinkQos {
    double delayMs{0};
    double rateMBps{kUnlimitedRate};

    double transfer_ms(double sizeMB) const
    {
        if (sizeMB == 0 || rateMBps == kUnlimitedRate)
            return 0;
        return sizeMB / rateMBps * 1000.0;
    }
    double time_ms(double sizeMB) const { return delayMs + transfer_ms(sizeMB); }
};

/// Immutable set of locations on a plane. Delay between two distinct
/// locations is `delayPerUnit` times their Euclidean distance; the transfer
/// rate of a pair is one of the link classes, picked by hashing the
/// unordered pair with `linkSeed`. A location talking to itself costs
/// nothing.
class NetworkModel {
public:
    NetworkModel() = default;
    NetworkModel(std::vector<NetworkLocation> locations, double delayPerUnit, std::vector<double> linkRates,
                 std::uint64_t linkSeed = 0);

    std::size_t size() const { return locations_.size(); }
    const std::vector<NetworkLocation>& locations() const { return locations_; }
    const NetworkLocation& location(LocationId id) const;
    const std::string& name(LocationId id) const { return location(id).id; }
    LocationId find(const std::string& name) const;  // throws LookupError
    bool contains(const std::string& name) const { return index_.count(name) != 0; }

    double delay_per_unit() const { return delayPerUnit_; }
    const std::vector<double>& link_rates() const { return linkRates_; }
    std::uint64_t link_seed() const { return linkSeed_; }

    // Symmetric link QoS; throws LookupError for ids outside the model.
    LinkQos link(LocationId a, LocationId b) const;

    // Upper bound on any pairwise delay (bounding-box diagonal).
    double max_delay_bound() const { return maxDelay_; }
    double min_rate() const { return minRate_; }

    // Candidate with the smallest delay from `from`; first one wins ties.
    LocationId nearest(LocationId from, std::span<const LocationId> candidates) const;

    std::vector<LocationId> all_ids() const;

private:
    std::vector<NetworkLocation> locations_;
    std::unordered_map<std::string, LocationId> index_;
    double delayPerUnit_{1};
    std::vector<double> linkRates_{kUnlimitedRate};
    std::uint64_t linkSeed_{0};
    double maxDelay_{0};
    double minRate_{kUnlimitedRate};
};

// Same as getNetworkQoS in the QoS computation.
inline LinkQos network_qos(const NetworkModel& net, LocationId a, LocationId b) { return net.link(a, b); }

struct NetworkParams {
    enum class Distribution { Uniform, Clustered };

    Distribution distribution{Distribution::Clustered};
    double width{1.0};
    double height{1.0};
    int clusters{40};
    double clusterSpread{0.002};
    // ~150 ms one-way across the unit square diagonal.
    double delayPerUnit{106.0};
    std::vector<double> linkRates{12.5, 125.0, 1250.0};
};

NetworkModel generate_network(std::size_t n, std::uint64_t seed, const NetworkParams& params = {});

// Prefix of a seeded permutation of all locations. For one seed the k-set
// is contained in every larger k'-set; k = 0 is the centralized case.
std::vector<LocationId> choose_control_nodes(const NetworkModel& model, std::size_t k, std::uint64_t seed);

} // namespace netqos
