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

#include "netqos/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "netqos/error.hpp"

namespace netqos::io {

namespace {

const Json& require(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw ConfigurationError(std::string("missing field '") + key + "'");
    return j.at(key);
}

template <typename T>
T get(const Json& j, const char* key)
{
    try {
        return require(j, key).get<T>();
    } catch (const Json::exception& e) {
        throw ConfigurationError(std::string("field '") + key + "': " + e.what());
    }
}

template <typename T>
T get_or(const Json& j, const char* key, T fallback)
{
    if (!j.is_object() || !j.contains(key) || j.at(key).is_null())
        return fallback;
    return get<T>(j, key);
}

template <typename T>
void read_into(const Json& j, const char* key, T& target)
{
    target = get_or<T>(j, key, target);
}

Json segments_to_json(const PiecewiseLinear& f, const char* slopeKey, const char* interceptKey)
{
    Json out = Json::array();
    for (const auto& s : f.segments()) {
        Json seg;
        if (std::isfinite(s.uptoMB))
            seg["uptoMB"] = s.uptoMB;
        seg[slopeKey] = s.slope;
        seg[interceptKey] = s.intercept;
        out.push_back(std::move(seg));
    }
    return out;
}

PiecewiseLinear segments_from_json(const Json& j, const char* slopeKey, const char* interceptKey)
{
    if (!j.is_array() || j.empty())
        throw ConfigurationError("piecewise function needs a non-empty segment array");
    std::vector<PiecewiseLinear::Segment> segments;
    for (const auto& seg : j) {
        PiecewiseLinear::Segment s;
        s.uptoMB = get_or<double>(seg, "uptoMB", PiecewiseLinear::kOpenEnd);
        s.slope = get_or<double>(seg, slopeKey, 0.0);
        s.intercept = get_or<double>(seg, interceptKey, 0.0);
        segments.push_back(s);
    }
    try {
        return PiecewiseLinear(std::move(segments));
    } catch (const Error& e) {
        throw ConfigurationError(e.what());
    }
}

const char* kind_name(WorkflowExpr::Kind k)
{
    using Kind = WorkflowExpr::Kind;
    switch (k) {
    case Kind::Service: return "service";
    case Kind::Logical: return "logic";
    case Kind::Seq: return "seq";
    case Kind::And: return "and";
    case Kind::Xor: return "xor";
    case Kind::Or: return "or";
    case Kind::Loop: return "loop";
    }
    return "?";
}

std::string location_name(const NetworkModel& net, LocationId id) { return net.name(id); }

Json transmission_json(const NetworkModel& net, const ExecGraph& g, const Transmission& tx)
{
    Json legs = Json::array();
    for (std::size_t i = 0; i < 3; ++i) {
        if (!tx.hops[i].valid() || !tx.hops[i + 1].valid())
            continue;
        Json leg{{"from", net.name(tx.hops[i])}, {"to", net.name(tx.hops[i + 1])}, {"delayMs", tx.legs[i].delayMs}};
        leg["transferMs"] = tx.legs[i].transfer_ms(tx.sizeMB);
        legs.push_back(std::move(leg));
    }
    return Json{{"from", g.vertex(tx.from).name}, {"to", g.vertex(tx.to).name}, {"sizeMB", tx.sizeMB}, {"legs", legs}};
}

} // namespace

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigurationError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw ConfigurationError("'" + path + "' is not valid JSON: " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigurationError("cannot write '" + path + "'");
    out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json to_json(const WorkflowExpr& wf)
{
    using Kind = WorkflowExpr::Kind;
    Json j{{"type", kind_name(wf.kind)}};
    switch (wf.kind) {
    case Kind::Service:
        j["task"] = wf.task;
        if (wf.name != wf.task)
            j["name"] = wf.name;
        return j;
    case Kind::Logical:
        j["name"] = wf.name;
        j["kind"] = std::string(to_string(wf.logic));
        return j;
    case Kind::Loop:
        j["count"] = wf.count;
        break;
    default:
        break;
    }
    Json children = Json::array();
    for (const auto& c : wf.children)
        children.push_back(to_json(c));
    j["children"] = std::move(children);
    return j;
}

WorkflowExpr workflow_from_json(const Json& j)
{
    const auto type = get<std::string>(j, "type");
    if (type == "service") {
        auto wf = WorkflowExpr::service(get<std::string>(j, "task"));
        wf.name = get_or<std::string>(j, "name", wf.task);
        return wf;
    }
    if (type == "logic")
        return WorkflowExpr::logical(get<std::string>(j, "name"), logical_kind_from_string(get<std::string>(j, "kind")));
    std::vector<WorkflowExpr> children;
    const auto& list = require(j, "children");
    if (!list.is_array())
        throw ConfigurationError("'children' must be an array");
    for (const auto& c : list)
        children.push_back(workflow_from_json(c));
    if (type == "seq")
        return WorkflowExpr::seq(std::move(children));
    if (type == "and")
        return WorkflowExpr::all(std::move(children));
    if (type == "xor")
        return WorkflowExpr::exclusive(std::move(children));
    if (type == "or")
        return WorkflowExpr::inclusive(std::move(children));
    if (type == "loop")
        return WorkflowExpr::loop(std::move(children), get<int>(j, "count"));
    throw ConfigurationError("unknown workflow node type '" + type + "'");
}

Json to_json(const NetworkModel& net)
{
    Json locations = Json::array();
    for (const auto& l : net.locations())
        locations.push_back(Json{{"id", l.id}, {"x", l.x}, {"y", l.y}});
    Json classes = Json::array();
    for (double r : net.link_rates())
        classes.push_back(Json{{"rateMBps", std::isfinite(r) ? Json(r) : Json(nullptr)}});
    return Json{{"locations", locations},
                {"linkClasses", classes},
                {"delayPerUnit", net.delay_per_unit()},
                {"linkSeed", net.link_seed()}};
}

NetworkModel network_from_json(const Json& j)
{
    std::vector<NetworkLocation> locations;
    const auto& list = require(j, "locations");
    if (!list.is_array())
        throw ConfigurationError("'locations' must be an array");
    for (const auto& l : list)
        locations.push_back({get<std::string>(l, "id"), get<double>(l, "x"), get<double>(l, "y")});
    std::vector<double> rates;
    if (j.contains("linkClasses")) {
        for (const auto& c : j.at("linkClasses"))
            rates.push_back(get_or<double>(c, "rateMBps", kUnlimitedRate));
    } else {
        rates.push_back(kUnlimitedRate);
    }
    try {
        return NetworkModel(std::move(locations), get_or<double>(j, "delayPerUnit", 1.0), std::move(rates),
                            get_or<std::uint64_t>(j, "linkSeed", 0));
    } catch (const ParameterError& e) {
        throw ConfigurationError(e.what());
    }
}

NetworkParams network_params_from_json(const Json& j, NetworkParams base)
{
    if (j.contains("distribution")) {
        const auto d = get<std::string>(j, "distribution");
        if (d == "uniform")
            base.distribution = NetworkParams::Distribution::Uniform;
        else if (d == "clustered")
            base.distribution = NetworkParams::Distribution::Clustered;
        else
            throw ConfigurationError("unknown location distribution '" + d + "'");
    }
    read_into(j, "width", base.width);
    read_into(j, "height", base.height);
    read_into(j, "clusters", base.clusters);
    read_into(j, "clusterSpread", base.clusterSpread);
    read_into(j, "delayPerUnit", base.delayPerUnit);
    if (j.contains("linkRates")) {
        base.linkRates.clear();
        for (const auto& r : j.at("linkRates"))
            base.linkRates.push_back(r.is_null() ? kUnlimitedRate : r.get<double>());
    }
    return base;
}

Json offers_to_json(const std::vector<ServiceOffer>& offers, const NetworkModel& net)
{
    Json out = Json::array();
    for (const auto& o : offers) {
        out.push_back(Json{{"service", o.id},
                           {"task", o.task},
                           {"location", location_name(net, o.location)},
                           {"exec", segments_to_json(o.sla.execTime, "msPerMB", "msBase")},
                           {"out", segments_to_json(o.sla.outputSize, "ratio", "baseMB")},
                           {"cost", o.sla.cost},
                           {"availability", o.sla.availability}});
    }
    return out;
}

std::vector<ServiceOffer> offers_from_json(const Json& j, const NetworkModel& net)
{
    const Json& list = j.is_object() ? require(j, "offers") : j;
    if (!list.is_array())
        throw ConfigurationError("SLA document must be an array of offers");
    std::vector<ServiceOffer> offers;
    for (const auto& o : list) {
        ServiceOffer offer;
        offer.id = get<std::string>(o, "service");
        offer.task = get<std::string>(o, "task");
        const auto where = get<std::string>(o, "location");
        if (!net.contains(where))
            throw ConfigurationError("offer '" + offer.id + "' is deployed at unknown location '" + where + "'");
        offer.location = net.find(where);
        offer.sla.execTime = segments_from_json(require(o, "exec"), "msPerMB", "msBase");
        offer.sla.outputSize = segments_from_json(require(o, "out"), "ratio", "baseMB");
        offer.sla.cost = get_or<double>(o, "cost", 0.0);
        offer.sla.availability = get_or<double>(o, "availability", 1.0);
        try {
            validate(offer.sla);
        } catch (const ParameterError& e) {
            throw ConfigurationError("offer '" + offer.id + "': " + e.what());
        }
        offers.push_back(std::move(offer));
    }
    return offers;
}

WorkflowGenParams workflow_params_from_json(const Json& j, WorkflowGenParams base)
{
    read_into(j, "seqWeight", base.seqWeight);
    read_into(j, "andWeight", base.andWeight);
    read_into(j, "xorWeight", base.xorWeight);
    read_into(j, "orWeight", base.orWeight);
    read_into(j, "loopWeight", base.loopWeight);
    read_into(j, "maxBranches", base.maxBranches);
    read_into(j, "maxLoopCount", base.maxLoopCount);
    read_into(j, "sequentialOnly", base.sequentialOnly);
    return base;
}

OfferGenParams offer_params_from_json(const Json& j, OfferGenParams base)
{
    read_into(j, "minCandidates", base.minCandidates);
    read_into(j, "maxCandidates", base.maxCandidates);
    read_into(j, "minExecMs", base.minExecMs);
    read_into(j, "maxExecMs", base.maxExecMs);
    read_into(j, "maxMsPerMB", base.maxMsPerMB);
    read_into(j, "minOutRatio", base.minOutRatio);
    read_into(j, "maxOutRatio", base.maxOutRatio);
    read_into(j, "maxOutBaseMB", base.maxOutBaseMB);
    read_into(j, "minCost", base.minCost);
    read_into(j, "maxCost", base.maxCost);
    read_into(j, "minAvailability", base.minAvailability);
    read_into(j, "maxAvailability", base.maxAvailability);
    return base;
}

UtilitySpec utility_from_json(const Json& j)
{
    UtilitySpec spec;
    if (j.contains("weights")) {
        spec.weights = {0, 0, 0, 0};
        for (const auto& [name, w] : j.at("weights").items())
            spec.weights[static_cast<int>(attribute_from_string(name))] = w.get<double>();
    }
    if (j.contains("constraints")) {
        for (const auto& [name, c] : j.at("constraints").items()) {
            auto& target = spec.constraints[static_cast<int>(attribute_from_string(name))];
            if (c.contains("lower"))
                target.lower = c.at("lower").get<double>();
            if (c.contains("upper"))
                target.upper = c.at("upper").get<double>();
        }
    }
    try {
        validate(spec);
    } catch (const ParameterError& e) {
        throw ConfigurationError(e.what());
    }
    return spec;
}

AssignmentDoc assignment_doc_from_json(const Json& j)
{
    AssignmentDoc doc;
    doc.master = get<std::string>(j, "master");
    doc.slaves = get_or<std::vector<std::string>>(j, "slaves", {});
    doc.services = get_or<std::map<std::string, std::string>>(j, "services", {});
    doc.controls = get_or<std::map<std::string, std::string>>(j, "controls", {});
    return doc;
}

Json to_json(const AssignmentDoc& doc)
{
    return Json{{"master", doc.master}, {"slaves", doc.slaves}, {"services", doc.services}, {"controls", doc.controls}};
}

AssignmentDoc to_doc(const Problem& problem, const Assignment& a)
{
    const auto& net = problem.net();
    const auto& g = problem.graph;
    AssignmentDoc doc;
    doc.master = net.name(problem.master);
    for (std::size_t i = 1; i < problem.controls.size(); ++i)
        doc.slaves.push_back(net.name(problem.controls[i]));
    for (std::uint32_t t = 0; t < g.tasks().size(); ++t)
        doc.services[g.tasks()[t]] = problem.catalog.candidate(t, a.service[t]).id;
    for (std::uint32_t v = 0; v < g.size(); ++v)
        doc.controls[g.vertices()[v].name] = net.name(a.control[v]);
    return doc;
}

Assignment resolve(const Problem& problem, const AssignmentDoc& doc)
{
    const auto& g = problem.graph;
    const auto& net = problem.net();
    auto a = centralized_assignment(problem);
    std::vector<char> seen(g.tasks().size(), 0);
    for (const auto& [task, offer] : doc.services) {
        const auto t = g.task_index(task);
        if (!t)
            throw ConfigurationError("assignment names unknown task '" + task + "'");
        try {
            a.service[*t] = problem.catalog.candidate_index(*t, offer);
        } catch (const LookupError& e) {
            throw ConfigurationError("task '" + task + "': " + e.what());
        }
        seen[*t] = 1;
    }
    for (std::uint32_t t = 0; t < seen.size(); ++t) {
        if (!seen[t])
            throw ConfigurationError("assignment has no service for task '" + g.tasks()[t] + "'");
    }
    for (const auto& [node, where] : doc.controls) {
        if (!g.contains(node))
            throw ConfigurationError("assignment names unknown node '" + node + "'");
        if (!net.contains(where))
            throw ConfigurationError("assignment names unknown location '" + where + "'");
        a.control[g.find(node).value] = net.find(where);
    }
    validate_assignment(problem, a);
    return a;
}

std::vector<Fault> faults_from_json(const Json& j)
{
    const Json& list = j.is_object() ? require(j, "faults") : j;
    if (!list.is_array())
        throw ConfigurationError("fault plan must be an array");
    std::vector<Fault> faults;
    for (const auto& f : list)
        faults.push_back({get<std::string>(f, "node"), get_or<double>(f, "atMs", 0.0)});
    return faults;
}

Json to_json(const QosVector& q)
{
    return Json{{"runtime", q.runtime}, {"cost", q.cost}, {"availability", q.availability}, {"latency", q.latency}};
}

Json simulation_report(const Problem& problem, const SimulationResult& sim, const QosVector& qos)
{
    Json perNode = Json::object();
    const auto& g = problem.graph;
    for (std::uint32_t v = 0; v < g.size(); ++v) {
        const auto& t = sim.nodes[v];
        perNode[g.vertices()[v].name] =
            Json{{"start", t.execStart}, {"end", t.execEnd}, {"inputMB", t.inputMB}, {"resultMB", t.resultMB}};
    }
    return Json{{"perNode", perNode}, {"qos", to_json(qos)}};
}

Json solution_report(const std::string& algo, const Problem& problem, const Solution& s)
{
    return Json{{"algo", algo},
                {"assignment", to_json(to_doc(problem, s.assignment))},
                {"qos", to_json(s.qos)},
                {"utility", s.utility},
                {"evaluations", s.evaluations}};
}

Json trace_report(const Problem& problem, const ProtocolResult& result)
{
    const auto& g = problem.graph;
    const auto& net = problem.net();
    Json events = Json::array();
    for (const auto& e : result.events) {
        Json j{{"seq", e.seq}, {"time", e.time}, {"kind", std::string(to_string(e.kind))}, {"node", g.vertex(e.node).name}};
        if (e.at.valid())
            j["at"] = net.name(e.at);
        if (e.peer.value < g.size())
            j["peer"] = g.vertex(e.peer).name;
        j["sizeMB"] = e.sizeMB;
        if (!e.offer.empty())
            j["offer"] = e.offer;
        if (e.transmission)
            j["transmission"] = transmission_json(net, g, *e.transmission);
        if (!e.detail.empty())
            j["detail"] = e.detail;
        events.push_back(std::move(j));
    }
    Json out{{"outcome", result.outcome == Outcome::Completed ? "completed" : "unrecoverable"},
             {"makespan", result.makespan ? Json(*result.makespan) : Json(nullptr)},
             {"assignment", to_json(to_doc(problem, result.finalAssignment))},
             {"events", events}};
    return out;
}

ExperimentConfig experiment_config_from_json(const Json& j, ExperimentConfig cfg)
{
    try {
        read_into(j, "seed", cfg.seed);
        read_into(j, "trials", cfg.trials);
        read_into(j, "threads", cfg.threads);
        read_into(j, "algorithms", cfg.algorithms);
        read_into(j, "unlimitedVariants", cfg.unlimitedVariants);
        read_into(j, "controlCounts", cfg.controlCounts);
        read_into(j, "sizes", cfg.sizes);
        read_into(j, "sizeExperimentControls", cfg.sizeExperimentControls);
        auto& inst = cfg.instance;
        read_into(j, "locations", inst.locations);
        read_into(j, "workflowSize", inst.workflowSize);
        read_into(j, "inputMB", inst.inputMB);
        read_into(j, "logicalExecMs", inst.logical.execMs);
        if (j.contains("network"))
            inst.network = network_params_from_json(j.at("network"), inst.network);
        if (j.contains("workflow"))
            inst.workflow = workflow_params_from_json(j.at("workflow"), inst.workflow);
        if (j.contains("offers"))
            inst.offers = offer_params_from_json(j.at("offers"), inst.offers);
        if (j.contains("utility"))
            inst.utility = utility_from_json(j.at("utility"));
        if (j.contains("ga")) {
            const auto& g = j.at("ga");
            read_into(g, "populationSize", cfg.ga.populationSize);
            read_into(g, "generations", cfg.ga.generations);
            read_into(g, "crossoverRate", cfg.ga.crossoverRate);
            read_into(g, "mutationRate", cfg.ga.mutationRate);
            read_into(g, "tournamentSize", cfg.ga.tournamentSize);
            read_into(g, "elitism", cfg.ga.elitism);
        }
    } catch (const Json::exception& e) {
        throw ConfigurationError(std::string("experiment config: ") + e.what());
    }
    return cfg;
}

} // namespace netqos::io
