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

#include <string>
#include <vector>

#include "netqos/problem.hpp"

namespace netqos::fixtures {

/// Three-task deployment: Seq(X, AND(A, B)) with the user in France.
///
///   offer  location   exec ms
///   X1     Paris      100
///   X2     Japan       80
///   A1     Lyon       200
///   A2     Japan      175
///   B1     Marseille  180
///   B2     USA        190
///   B3     Japan      160
///
/// Japan is 75 ms one-way from France; the French sites are within 0.3 ms.
/// Japanese offers are slightly cheaper; the utility weighs runtime 0.999
/// and cost 0.001 so cost only separates runtime ties. With
/// `zeroNetwork` all delays vanish and rates are unlimited.
Problem france_japan(bool zeroNetwork = false);

/// Audio encoding at a studio: a single task with two encoders 5 ms away
/// over a 12.5 MB/s link. M1 runs 10 ms/MB and halves the data, M2 runs
/// 3600 ms + 12 ms/MB and quarters it. Runs with `inputMB` of raw audio.
Problem audio(double inputMB);

/// Seq(AND(A, B)) on a line: fork controlled at F (0), B at Q (1), A at
/// P (20), join controlled at J (21). Each branch crosses one long and one
/// short hop, both branches execute 100 ms and carry no data.
Problem diamond();
Assignment diamond_assignment(const Problem& problem);

// Services picked by offer id (one per task, any order); every node is
// controlled by the master. Throws LookupError for unknown ids.
Assignment pick_services(const Problem& problem, const std::vector<std::string>& offerIds);

} // namespace netqos::fixtures
