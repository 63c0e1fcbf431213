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

#include <algorithm>
#include <random>

#include "netqos/error.hpp"
#include "netqos/fixtures.hpp"
#include "netqos/qos_engine.hpp"
#include "netqos/sla.hpp"

using namespace netqos;

namespace {

std::size_t argmax(const std::vector<QosVector>& qs, const UtilitySpec& spec)
{
    const auto bounds = QosBounds::over(qs);
    std::size_t best = 0;
    for (std::size_t i = 1; i < qs.size(); ++i)
        if (utility(qs[i], spec, bounds) > utility(qs[best], spec, bounds))
            best = i;
    return best;
}

// Upload + execution + download of `offer` over a 12.5 MB/s link with 5 ms
// one-way delay, computed by hand from the SLA.
double audio_total(const ServiceOffer& offer, double x)
{
    const double upload = 5 + x / 12.5 * 1000;
    const double download = 5 + offer.sla.outputSize(x) / 12.5 * 1000;
    return upload + offer.sla.execTime(x) + download;
}

} // namespace

TEST_CASE("piecewise-linear evaluation")
{
    const PiecewiseLinear f({{10, 2, 0}, {20, 0, 50}, {PiecewiseLinear::kOpenEnd, 1, 0}});
    CHECK(f(0) == 0);
    CHECK(f(10) == 20);
    CHECK(f(10.5) == 50);
    CHECK(f(20) == 50);
    CHECK(f(30) == 30);
    CHECK(f.max_over(25) == 50);
    CHECK(PiecewiseLinear::constant(7)(123) == 7);
    CHECK(PiecewiseLinear::linear(0.5)(0) == 0);
}

TEST_CASE("piecewise-linear validation")
{
    CHECK_THROWS_AS(PiecewiseLinear(std::vector<PiecewiseLinear::Segment>{}), ParameterError);
    CHECK_THROWS_AS(PiecewiseLinear({{10, 1, 0}}), ParameterError);
    CHECK_THROWS_AS(PiecewiseLinear({{PiecewiseLinear::kOpenEnd, -1, 5}}), ParameterError);
    CHECK_THROWS_AS(PiecewiseLinear({{10, 1, 0}, {5, 1, 0}, {PiecewiseLinear::kOpenEnd, 1, 0}}), ParameterError);
    CHECK_THROWS_AS(PiecewiseLinear({{PiecewiseLinear::kOpenEnd, 0, -1}}), ParameterError);
    SlaProfile bad;
    bad.availability = 1.5;
    CHECK_THROWS_AS(validate(bad), ParameterError);
    bad.availability = 1;
    bad.cost = -1;
    CHECK_THROWS_AS(validate(bad), ParameterError);
}

TEST_CASE("evaluateQoS on the audio encoders")
{
    const auto p = fixtures::audio(100);
    const auto& m1 = p.catalog.candidate(0, 0);
    const auto q = evaluate_qos(m1, 100);
    CHECK(q.outputMB == 50);
    CHECK(q.execMs == 1000);
    CHECK(evaluate_qos(m1, 0).outputMB == 0);
    // 100 MB upload over 100 Mbit/s takes 8 s.
    CHECK(p.net().link(p.master, m1.location).transfer_ms(100) == doctest::Approx(8000));
    CHECK(evaluate_qos(m1, 42).execMs == evaluate_qos(m1, 42).execMs);
}

TEST_CASE("audio encoders cross over exactly once, at 200 MB")
{
    const auto p = fixtures::audio(1);
    const auto& m1 = p.catalog.candidate(0, 0);
    const auto& m2 = p.catalog.candidate(0, 1);
    int crossings = 0;
    for (int x = 1; x <= 400; ++x) {
        const double d1 = audio_total(m1, x);
        const double d2 = audio_total(m2, x);
        if (x < 200)
            CHECK(d1 < d2);
        else if (x > 200)
            CHECK(d1 > d2);
        else
            CHECK(d1 == doctest::Approx(d2).epsilon(1e-12));
        if (x > 1 && ((audio_total(m1, x - 1) < audio_total(m2, x - 1)) != (d1 < d2)))
            ++crossings;
    }
    CHECK(crossings == 1);
}

TEST_CASE("utility endpoints and symmetry")
{
    const auto spec = UtilitySpec::single(Attribute::Runtime);
    const std::vector<QosVector> qs{{100, 0, 1, 0}, {200, 0, 1, 0}};
    const auto b = QosBounds::over(qs);
    CHECK(utility(qs[0], spec, b) == 1.0);
    CHECK(utility(qs[1], spec, b) == 0.0);

    UtilitySpec equal;
    equal.weights = {0.25, 0.25, 0.25, 0.25};
    const QosVector q{120, 3, 0.9, 10};
    CHECK(utility(q, equal, b) == utility(q, equal, b));

    // Degenerate bounds contribute the full weight.
    CHECK(utility(QosVector{5, 0, 1, 0}, UtilitySpec::single(Attribute::Cost), b) == 1.0);
}

TEST_CASE("constraint violations rank below every feasible candidate")
{
    auto spec = UtilitySpec::single(Attribute::Runtime);
    spec.constraints[static_cast<int>(Attribute::Runtime)].upper = 250;
    const std::vector<QosVector> qs{{100, 0, 1, 0}, {240, 0, 1, 0}, {300, 0, 1, 0}};
    const auto b = QosBounds::over(qs);
    const double u300 = utility(qs[2], spec, b);
    CHECK(u300 < 0);
    CHECK(u300 == -50);
    CHECK(utility(qs[0], spec, b) > utility(qs[1], spec, b));
    CHECK(utility(qs[1], spec, b) > u300);
    CHECK(argmax(qs, spec) == 0);
    CHECK(constraint_violation(qs[2], spec) == 50);
}

TEST_CASE("utility is monotone in every attribute")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 500; ++trial) {
        UtilitySpec spec;
        double sum = 0;
        for (auto& w : spec.weights)
            sum += (w = u(rng));
        for (auto& w : spec.weights)
            w /= sum;
        QosBounds b;
        b.lo = {0, 0, 0, 0};
        b.hi = {1000, 10, 1, 500};
        QosVector q{u(rng) * 1000, u(rng) * 10, u(rng), u(rng) * 500};
        const double base = utility(q, spec, b);
        for (auto a : kAttributes) {
            QosVector better = q;
            if (spec.direction(a) == Direction::Minimize)
                better[a] *= 0.5;
            else
                better[a] = std::min(1.0, better[a] + 0.1);
            CHECK(utility(better, spec, b) >= base - 1e-12);
        }
    }
}

TEST_CASE("argmax is invariant under positive affine rescaling")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0, 1);
    UtilitySpec spec;
    spec.weights = {0.4, 0.3, 0.2, 0.1};
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<QosVector> qs;
        for (int i = 0; i < 6; ++i)
            qs.push_back({u(rng) * 900 + 100, u(rng) * 10, u(rng), u(rng) * 300});
        const auto before = argmax(qs, spec);
        const auto a = kAttributes[static_cast<std::size_t>(trial % 4)];
        const double scale = 0.1 + u(rng) * 10;
        const double shift = u(rng) * 50;
        for (auto& q : qs)
            q[a] = q[a] * scale + shift;
        CHECK(argmax(qs, spec) == before);
    }
}

TEST_CASE("utility spec validation and attribute names")
{
    UtilitySpec spec;
    spec.weights = {0.5, 0.6, 0, 0};
    CHECK_THROWS_AS(validate(spec), ParameterError);
    spec.weights = {-0.5, 1.5, 0, 0};
    CHECK_THROWS_AS(validate(spec), ParameterError);
    CHECK(attribute_from_string("latency") == Attribute::Latency);
    CHECK_THROWS_AS(attribute_from_string("speed"), ConfigurationError);
    CHECK(UtilitySpec::single(Attribute::Latency).sole_objective() == Attribute::Latency);
    spec = UtilitySpec::single(Attribute::Runtime);
    spec.constraints[0].upper = 3;
    CHECK_FALSE(spec.sole_objective().has_value());
}
