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

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>

namespace netqos {

// Index of a location inside a NetworkModel.
struct LocationId {
    std::uint32_t value{std::numeric_limits<std::uint32_t>::max()};

    constexpr bool valid() const { return value != std::numeric_limits<std::uint32_t>::max(); }
    friend constexpr auto operator<=>(LocationId, LocationId) = default;
};

// Index of a vertex inside an ExecGraph.
struct NodeRef {
    std::uint32_t value{std::numeric_limits<std::uint32_t>::max()};

    friend constexpr auto operator<=>(NodeRef, NodeRef) = default;
};

} // namespace netqos

template <>
struct std::hash<netqos::LocationId> {
    std::size_t operator()(netqos::LocationId id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};

template <>
struct std::hash<netqos::NodeRef> {
    std::size_t operator()(netqos::NodeRef id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};
