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

#include <array>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netqos/ids.hpp"

namespace netqos {

/// Piecewise-linear function on [0, inf). Segment i covers
/// (upto[i-1], upto[i]] (the first one starts at 0) and evaluates to
/// intercept + slope * x there, so discontinuous (conditional) profiles are
/// expressible. The last segment always extends to infinity.
class PiecewiseLinear {
public:
    struct Segment {
        double uptoMB{std::numeric_limits<double>::infinity()};
        double slope{0};
        double intercept{0};

        friend bool operator==(const Segment&, const Segment&) = default;
    };

    PiecewiseLinear() : segments_{Segment{}} {}
    explicit PiecewiseLinear(std::vector<Segment> segments);

    static PiecewiseLinear constant(double value) { return PiecewiseLinear({Segment{kOpenEnd, 0, value}}); }
    static PiecewiseLinear linear(double slope, double intercept = 0)
    {
        return PiecewiseLinear({Segment{kOpenEnd, slope, intercept}});
    }

    double operator()(double x) const;

    // Supremum over [0, hi]; used for conservative bounds.
    double max_over(double hi) const;

    const std::vector<Segment>& segments() const { return segments_; }

    friend bool operator==(const PiecewiseLinear&, const PiecewiseLinear&) = default;

    static constexpr double kOpenEnd = std::numeric_limits<double>::infinity();

private:
    std::vector<Segment> segments_;
};

struct SlaProfile {
    PiecewiseLinear execTime;    // input MB -> ms
    PiecewiseLinear outputSize;  // input MB -> MB
    double cost{0};
    double availability{1};

    friend bool operator==(const SlaProfile&, const SlaProfile&) = default;
};

// Throws ParameterError when cost is negative or availability leaves [0, 1].
void validate(const SlaProfile& sla);

struct ServiceOffer {
    std::string id;
    std::string task;
    LocationId location;
    SlaProfile sla;
};

struct OfferQos {
    double execMs{0};
    double outputMB{0};
    double cost{0};
    double availability{1};
};

OfferQos evaluate_qos(const ServiceOffer& offer, double inputMB);

enum class Attribute { Runtime = 0, Cost = 1, Availability = 2, Latency = 3 };
inline constexpr std::array<Attribute, 4> kAttributes{Attribute::Runtime, Attribute::Cost, Attribute::Availability,
                                                      Attribute::Latency};

std::string_view to_string(Attribute a);
Attribute attribute_from_string(std::string_view name);

struct QosVector {
    double runtime{0};       // ms
    double cost{0};
    double availability{1};
    double latency{0};       // ms, network share of the runtime

    double operator[](Attribute a) const;
    double& operator[](Attribute a);

    friend bool operator==(const QosVector&, const QosVector&) = default;
};

enum class Direction { Minimize, Maximize };

struct Constraint {
    std::optional<double> lower;
    std::optional<double> upper;
};

/// Weighted-sum utility over min-max normalized attributes. Weights are
/// non-negative and sum to one.
struct UtilitySpec {
    std::array<double, 4> weights{1, 0, 0, 0};
    std::array<Direction, 4> directions{Direction::Minimize, Direction::Minimize, Direction::Maximize,
                                        Direction::Minimize};
    std::array<Constraint, 4> constraints{};

    double weight(Attribute a) const { return weights[static_cast<int>(a)]; }
    Direction direction(Attribute a) const { return directions[static_cast<int>(a)]; }
    const Constraint& constraint(Attribute a) const { return constraints[static_cast<int>(a)]; }

    // Weight 1 on a single attribute, no constraints.
    static UtilitySpec single(Attribute a);

    // The attribute carrying all the weight when there are no constraints.
    std::optional<Attribute> sole_objective() const;
};

void validate(const UtilitySpec& spec);

struct QosBounds {
    std::array<double, 4> lo{0, 0, 0, 0};
    std::array<double, 4> hi{0, 0, 1, 0};

    double low(Attribute a) const { return lo[static_cast<int>(a)]; }
    double high(Attribute a) const { return hi[static_cast<int>(a)]; }

    // Per-attribute min/max over a candidate set.
    static QosBounds over(const std::vector<QosVector>& candidates);
};

// Amount by which q misses the hard constraints (0 when feasible).
double constraint_violation(const QosVector& q, const UtilitySpec& spec);

/// 1 is best. Feasible vectors score in [0, 1]; infeasible ones score
/// -(violation magnitude), so every feasible vector outranks every
/// infeasible one. Attributes with degenerate bounds contribute their full
/// weight for every candidate.
double utility(const QosVector& q, const UtilitySpec& spec, const QosBounds& bounds);

} // namespace netqos
