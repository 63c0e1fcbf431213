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

#include "netqos/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "netqos/error.hpp"

namespace netqos {

namespace {

std::uint64_t mix(std::uint64_t x)
{
    // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

NetworkModel::NetworkModel(std::vector<NetworkLocation> locations, double delayPerUnit, std::vector<double> linkRates,
                           std::uint64_t linkSeed)
    : locations_(std::move(locations)), delayPerUnit_(delayPerUnit), linkRates_(std::move(linkRates)),
      linkSeed_(linkSeed)
{
    if (delayPerUnit_ < 0 || !std::isfinite(delayPerUnit_))
        throw ParameterError("delayPerUnit must be finite and non-negative");
    if (linkRates_.empty())
        throw ParameterError("network needs at least one link class");
    for (double rate : linkRates_) {
        if (!(rate > 0))
            throw ParameterError("link transfer rates must be positive");
    }
    minRate_ = *std::min_element(linkRates_.begin(), linkRates_.end());

    index_.reserve(locations_.size());
    double minX = 0, maxX = 0, minY = 0, maxY = 0;
    for (std::uint32_t i = 0; i < locations_.size(); ++i) {
        const auto& loc = locations_[i];
        if (!std::isfinite(loc.x) || !std::isfinite(loc.y))
            throw ParameterError("location '" + loc.id + "' has non-finite coordinates");
        if (!index_.emplace(loc.id, LocationId{i}).second)
            throw ParameterError("duplicate location id '" + loc.id + "'");
        if (i == 0) {
            minX = maxX = loc.x;
            minY = maxY = loc.y;
        }
        minX = std::min(minX, loc.x);
        maxX = std::max(maxX, loc.x);
        minY = std::min(minY, loc.y);
        maxY = std::max(maxY, loc.y);
    }
    maxDelay_ = delayPerUnit_ * std::hypot(maxX - minX, maxY - minY);
}

const NetworkLocation& NetworkModel::location(LocationId id) const
{
    if (id.value >= locations_.size())
        throw LookupError("location index " + std::to_string(id.value) + " out of range");
    return locations_[id.value];
}

LocationId NetworkModel::find(const std::string& name) const
{
    auto it = index_.find(name);
    if (it == index_.end())
        throw LookupError("unknown location '" + name + "'");
    return it->second;
}

LinkQos NetworkModel::link(LocationId a, LocationId b) const
{
    const auto& la = location(a);
    const auto& lb = location(b);
    if (a == b)
        return LinkQos{0, kUnlimitedRate};
    const auto lo = std::min(a.value, b.value);
    const auto hi = std::max(a.value, b.value);
    const auto h = mix(linkSeed_ ^ mix((static_cast<std::uint64_t>(lo) << 32) | hi));
    return LinkQos{delayPerUnit_ * std::hypot(la.x - lb.x, la.y - lb.y), linkRates_[h % linkRates_.size()]};
}

LocationId NetworkModel::nearest(LocationId from, std::span<const LocationId> candidates) const
{
    if (candidates.empty())
        throw ParameterError("nearest() needs at least one candidate");
    LocationId best = candidates.front();
    double bestDelay = link(from, best).delayMs;
    for (auto c : candidates.subspan(1)) {
        const double d = link(from, c).delayMs;
        if (d < bestDelay) {
            best = c;
            bestDelay = d;
        }
    }
    return best;
}

std::vector<LocationId> NetworkModel::all_ids() const
{
    std::vector<LocationId> ids(locations_.size());
    for (std::uint32_t i = 0; i < ids.size(); ++i)
        ids[i] = LocationId{i};
    return ids;
}

NetworkModel generate_network(std::size_t n, std::uint64_t seed, const NetworkParams& params)
{
    if (n == 0)
        throw ParameterError("network needs at least one location");
    if (params.width <= 0 || params.height <= 0)
        throw ParameterError("network area must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(0.0, params.width);
    std::uniform_real_distribution<double> uy(0.0, params.height);

    std::vector<NetworkLocation> locations;
    locations.reserve(n);
    if (params.distribution == NetworkParams::Distribution::Uniform) {
        for (std::size_t i = 0; i < n; ++i)
            locations.push_back({"L" + std::to_string(i), ux(rng), uy(rng)});
    } else {
        if (params.clusters < 1)
            throw ParameterError("clustered networks need at least one cluster");
        std::vector<std::pair<double, double>> centers;
        for (int c = 0; c < params.clusters; ++c)
            centers.emplace_back(ux(rng), uy(rng));
        std::uniform_int_distribution<std::size_t> pick(0, centers.size() - 1);
        std::normal_distribution<double> spread(0.0, params.clusterSpread);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& [cx, cy] = centers[pick(rng)];
            const double x = cx + spread(rng);
            const double y = cy + spread(rng);
            locations.push_back({"L" + std::to_string(i), x, y});
        }
    }
    return NetworkModel(std::move(locations), params.delayPerUnit, params.linkRates, mix(seed));
}

std::vector<LocationId> choose_control_nodes(const NetworkModel& model, std::size_t k, std::uint64_t seed)
{
    if (k > model.size())
        throw ParameterError("cannot choose " + std::to_string(k) + " control nodes from " +
                             std::to_string(model.size()) + " locations");
    auto ids = model.all_ids();
    std::mt19937_64 rng(seed);
    std::shuffle(ids.begin(), ids.end(), rng);
    ids.resize(k);
    return ids;
}

} // namespace netqos
