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

#include "netqos/sla.hpp"

#include <algorithm>
#include <cmath>

#include "netqos/error.hpp"

namespace netqos {

PiecewiseLinear::PiecewiseLinear(std::vector<Segment> segments) : segments_(std::move(segments))
{
    if (segments_.empty())
        throw ParameterError("piecewise-linear function needs at least one segment");
    double from = 0;
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        const auto& s = segments_[i];
        const bool lastSegment = i + 1 == segments_.size();
        if (!std::isfinite(s.slope) || !std::isfinite(s.intercept))
            throw ParameterError("piecewise-linear segment with non-finite coefficients");
        if (lastSegment != std::isinf(s.uptoMB))
            throw ParameterError("only the last piecewise-linear segment may (and must) extend to infinity");
        if (!lastSegment && !(s.uptoMB > from))
            throw ParameterError("piecewise-linear breakpoints must be increasing and positive");
        if (s.intercept + s.slope * from < 0)
            throw ParameterError("piecewise-linear function is negative on its domain");
        if (lastSegment ? s.slope < 0 : s.intercept + s.slope * s.uptoMB < 0)
            throw ParameterError("piecewise-linear function is negative on its domain");
        from = s.uptoMB;
    }
}

double PiecewiseLinear::operator()(double x) const
{
    for (const auto& s : segments_) {
        if (x <= s.uptoMB)
            return s.intercept + s.slope * x;
    }
    const auto& s = segments_.back();
    return s.intercept + s.slope * x;
}

double PiecewiseLinear::max_over(double hi) const
{
    double best = 0;
    double from = 0;
    for (const auto& s : segments_) {
        if (from > hi)
            break;
        const double to = std::min(s.uptoMB, hi);
        best = std::max({best, s.intercept + s.slope * from, s.intercept + s.slope * to});
        from = s.uptoMB;
    }
    return best;
}

void validate(const SlaProfile& sla)
{
    if (!(sla.cost >= 0))
        throw ParameterError("SLA cost must be non-negative");
    if (!(sla.availability >= 0 && sla.availability <= 1))
        throw ParameterError("SLA availability must lie in [0, 1]");
}

OfferQos evaluate_qos(const ServiceOffer& offer, double inputMB)
{
    return OfferQos{offer.sla.execTime(inputMB), offer.sla.outputSize(inputMB), offer.sla.cost,
                    offer.sla.availability};
}

std::string_view to_string(Attribute a)
{
    switch (a) {
    case Attribute::Runtime: return "runtime";
    case Attribute::Cost: return "cost";
    case Attribute::Availability: return "availability";
    case Attribute::Latency: return "latency";
    }
    return "?";
}

Attribute attribute_from_string(std::string_view name)
{
    for (auto a : kAttributes) {
        if (to_string(a) == name)
            return a;
    }
    throw ConfigurationError("unknown QoS attribute '" + std::string(name) + "'");
}

double QosVector::operator[](Attribute a) const
{
    switch (a) {
    case Attribute::Runtime: return runtime;
    case Attribute::Cost: return cost;
    case Attribute::Availability: return availability;
    case Attribute::Latency: return latency;
    }
    return 0;
}

double& QosVector::operator[](Attribute a)
{
    switch (a) {
    case Attribute::Runtime: return runtime;
    case Attribute::Cost: return cost;
    case Attribute::Availability: return availability;
    case Attribute::Latency: break;
    }
    return latency;
}

UtilitySpec UtilitySpec::single(Attribute a)
{
    UtilitySpec spec;
    spec.weights = {0, 0, 0, 0};
    spec.weights[static_cast<int>(a)] = 1;
    return spec;
}

std::optional<Attribute> UtilitySpec::sole_objective() const
{
    for (const auto& c : constraints) {
        if (c.lower || c.upper)
            return std::nullopt;
    }
    for (auto a : kAttributes) {
        if (weight(a) == 1)
            return a;
    }
    return std::nullopt;
}

void validate(const UtilitySpec& spec)
{
    double sum = 0;
    for (double w : spec.weights) {
        if (!(w >= 0))
            throw ParameterError("utility weights must be non-negative");
        sum += w;
    }
    if (std::abs(sum - 1) > 1e-9)
        throw ParameterError("utility weights must sum to 1");
}

QosBounds QosBounds::over(const std::vector<QosVector>& candidates)
{
    QosBounds b;
    if (candidates.empty())
        return b;
    for (auto a : kAttributes) {
        const int i = static_cast<int>(a);
        b.lo[i] = b.hi[i] = candidates.front()[a];
        for (const auto& q : candidates) {
            b.lo[i] = std::min(b.lo[i], q[a]);
            b.hi[i] = std::max(b.hi[i], q[a]);
        }
    }
    return b;
}

double constraint_violation(const QosVector& q, const UtilitySpec& spec)
{
    double violation = 0;
    for (auto a : kAttributes) {
        const auto& c = spec.constraint(a);
        if (c.lower && q[a] < *c.lower)
            violation += *c.lower - q[a];
        if (c.upper && q[a] > *c.upper)
            violation += q[a] - *c.upper;
    }
    return violation;
}

double utility(const QosVector& q, const UtilitySpec& spec, const QosBounds& bounds)
{
    const double violation = constraint_violation(q, spec);
    if (violation > 0)
        return -violation;
    double score = 0;
    for (auto a : kAttributes) {
        const double w = spec.weight(a);
        if (w == 0)
            continue;
        const double lo = bounds.low(a);
        const double hi = bounds.high(a);
        double normalized = 1;
        if (hi > lo) {
            normalized = spec.direction(a) == Direction::Minimize ? (hi - q[a]) / (hi - lo) : (q[a] - lo) / (hi - lo);
            normalized = std::clamp(normalized, 0.0, 1.0);
        }
        score += w * normalized;
    }
    return score;
}

} // namespace netqos
