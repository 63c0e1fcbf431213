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

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "netqos/exec_sim.hpp"
#include "netqos/qos_engine.hpp"
#include "netqos/scenario.hpp"

namespace netqos::io {

using Json = nlohmann::json;

// All readers throw ConfigurationError on malformed documents.

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
// Two-space indented dump followed by a newline.
std::string dump(const Json& j);

/// {"type":"seq"|"and"|"xor"|"or"|"loop"|"service"|"logic", "task", "name",
///  "kind", "count", "children"}
Json to_json(const WorkflowExpr& wf);
WorkflowExpr workflow_from_json(const Json& j);

/// {"locations":[{"id","x","y"}], "linkClasses":[{"rateMBps"}],
///  "delayPerUnit", "linkSeed"}; a null rate is unlimited.
Json to_json(const NetworkModel& net);
NetworkModel network_from_json(const Json& j);
NetworkParams network_params_from_json(const Json& j, NetworkParams base = {});

/// Array of {"service","task","location","exec":[{"uptoMB","msPerMB","msBase"}],
/// "out":[{"uptoMB","ratio","baseMB"}],"cost","availability"}. A segment
/// without "uptoMB" extends to infinity.
Json offers_to_json(const std::vector<ServiceOffer>& offers, const NetworkModel& net);
std::vector<ServiceOffer> offers_from_json(const Json& j, const NetworkModel& net);

WorkflowGenParams workflow_params_from_json(const Json& j, WorkflowGenParams base = {});
OfferGenParams offer_params_from_json(const Json& j, OfferGenParams base = {});

/// {"weights":{attr:w}, "constraints":{attr:{"lower","upper"}}}
UtilitySpec utility_from_json(const Json& j);

// Assignment document as written in files: names instead of indices.
struct AssignmentDoc {
    std::string master;
    std::vector<std::string> slaves;
    std::map<std::string, std::string> services;  // task -> offer id
    std::map<std::string, std::string> controls;  // node -> location; missing nodes use the master
};

AssignmentDoc assignment_doc_from_json(const Json& j);
Json to_json(const AssignmentDoc& doc);
AssignmentDoc to_doc(const Problem& problem, const Assignment& a);
Assignment resolve(const Problem& problem, const AssignmentDoc& doc);

std::vector<Fault> faults_from_json(const Json& j);

Json to_json(const QosVector& q);
Json simulation_report(const Problem& problem, const SimulationResult& sim, const QosVector& qos);
Json solution_report(const std::string& algo, const Problem& problem, const Solution& s);
Json trace_report(const Problem& problem, const ProtocolResult& result);

ExperimentConfig experiment_config_from_json(const Json& j, ExperimentConfig base = default_experiment_config());

} // namespace netqos::io
