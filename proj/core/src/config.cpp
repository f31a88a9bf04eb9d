// SPDX-License-Identifier: Apache-2.0
//
// doa-lab: uniform linear array snapshot synthesis and subspace DOA estimation
// Copyright (C) 2026 doa-lab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "doalab/config.hpp"

#include <initializer_list>
#include <string>
#include <vector>

#include "json.hpp"

#include "doalab/errors.hpp"

namespace doalab {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& key, const std::string& constraint) {
    throw ConfigError(key + ": " + constraint);
}

void reject_unknown_keys(const Json& obj, const std::string& path,
                         std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed) {
            if (key == a) {
                known = true;
                break;
            }
        }
        if (!known) {
            std::string names;
            for (const char* a : allowed) {
                if (!names.empty()) names += ", ";
                names += a;
            }
            fail(path.empty() ? key : path + "." + key, "unknown key (allowed: " + names + ")");
        }
    }
}

const Json* find(const Json& obj, const char* key) {
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

double as_double(const Json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "must be a number");
    return j.get<double>();
}

int as_int(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "must be an integer");
    return j.get<int>();
}

std::uint64_t as_u64(const Json& j, const std::string& path) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
        fail(path, "must be a non-negative integer");
    }
    return j.get<std::uint64_t>();
}

bool as_bool(const Json& j, const std::string& path) {
    if (!j.is_boolean()) fail(path, "must be a boolean");
    return j.get<bool>();
}

std::string as_string(const Json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "must be a string");
    return j.get<std::string>();
}

RealVector as_real_vector(const Json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "must be an array of numbers");
    RealVector v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        v[static_cast<Eigen::Index>(i)] = as_double(j[i], path + "[" + std::to_string(i) + "]");
    }
    return v;
}

ArrayGeometry parse_geometry(const Json* j) {
    if (!j) return ArrayGeometry::half_wavelength(8, 3.5e9);
    if (!j->is_object()) fail("geometry", "must be an object");
    reject_unknown_keys(*j, "geometry", {"num_elements", "spacing_m", "carrier_freq_hz"});
    int n = 8;
    double freq = 3.5e9;
    if (const Json* f = find(*j, "num_elements")) n = as_int(*f, "geometry.num_elements");
    if (const Json* f = find(*j, "carrier_freq_hz")) freq = as_double(*f, "geometry.carrier_freq_hz");
    double spacing = 0.0;
    if (const Json* f = find(*j, "spacing_m")) {
        spacing = as_double(*f, "geometry.spacing_m");
    } else {
        if (!(freq > 0.0)) fail("geometry.carrier_freq_hz", "must be > 0");
        spacing = wavelength(freq) / 2.0;
    }
    if (n < 2) fail("geometry.num_elements", "must be >= 2");
    if (!(spacing > 0.0)) fail("geometry.spacing_m", "must be > 0");
    if (!(freq > 0.0)) fail("geometry.carrier_freq_hz", "must be > 0");
    return ArrayGeometry(n, spacing, freq);
}

std::vector<SourceSpec> parse_sources(const Json* j) {
    if (!j || !j->is_array() || j->empty()) {
        fail("sources", "must be a nonempty array of source objects");
    }
    std::vector<SourceSpec> sources;
    sources.reserve(j->size());
    for (std::size_t i = 0; i < j->size(); ++i) {
        const std::string path = "sources[" + std::to_string(i) + "]";
        const Json& src = (*j)[i];
        if (!src.is_object()) fail(path, "must be an object");
        reject_unknown_keys(src, path,
                            {"aoa_deg", "power_db", "coherence_group", "path_gain_db",
                             "path_phase_deg"});
        SourceSpec spec;
        const Json* aoa = find(src, "aoa_deg");
        if (!aoa) fail(path + ".aoa_deg", "is required");
        spec.aoa_deg = as_double(*aoa, path + ".aoa_deg");
        if (const Json* f = find(src, "power_db")) spec.power_db = as_double(*f, path + ".power_db");
        if (const Json* f = find(src, "coherence_group")) {
            spec.coherence_group = as_int(*f, path + ".coherence_group");
        }
        if (const Json* f = find(src, "path_gain_db")) {
            spec.path_gain_db = as_double(*f, path + ".path_gain_db");
        }
        if (const Json* f = find(src, "path_phase_deg")) {
            spec.path_phase_deg = as_double(*f, path + ".path_phase_deg");
        }
        sources.push_back(spec);
    }
    return sources;
}

ReceiverModel parse_receiver(const Json* j) {
    if (!j) return ReceiverModel::ideal();
    if (!j->is_object()) fail("receiver", "must be an object");
    reject_unknown_keys(*j, "receiver",
                        {"kind", "static_gain_db", "static_phase_deg", "lo_phase_jitter_rad",
                         "lo_gain_jitter_db"});
    ReceiverModel model;
    if (const Json* f = find(*j, "kind")) {
        const std::string kind = as_string(*f, "receiver.kind");
        if (kind == "ideal") {
            model.kind = ReceiverKind::ideal;
        } else if (kind == "six_port") {
            model.kind = ReceiverKind::six_port;
        } else if (kind == "five_port") {
            model.kind = ReceiverKind::five_port;
        } else {
            fail("receiver.kind", "must be one of ideal, six_port, five_port");
        }
    }
    if (const Json* f = find(*j, "static_gain_db")) {
        model.static_gain_db = as_real_vector(*f, "receiver.static_gain_db");
    }
    if (const Json* f = find(*j, "static_phase_deg")) {
        model.static_phase_deg = as_real_vector(*f, "receiver.static_phase_deg");
    }
    if (const Json* f = find(*j, "lo_phase_jitter_rad")) {
        model.lo_phase_jitter_rad = as_double(*f, "receiver.lo_phase_jitter_rad");
    }
    if (const Json* f = find(*j, "lo_gain_jitter_db")) {
        model.lo_gain_jitter_db = as_double(*f, "receiver.lo_gain_jitter_db");
    }
    return model;
}

SmoothingConfig parse_smoothing(const Json* j) {
    SmoothingConfig smoothing;
    if (!j) return smoothing;
    if (!j->is_object()) fail("smoothing", "must be an object");
    reject_unknown_keys(*j, "smoothing", {"kind", "subarray_size"});
    if (const Json* f = find(*j, "kind")) {
        const std::string kind = as_string(*f, "smoothing.kind");
        if (kind == "none") {
            smoothing.kind = SmoothingKind::none;
        } else if (kind == "forward") {
            smoothing.kind = SmoothingKind::forward;
        } else if (kind == "forward_backward") {
            smoothing.kind = SmoothingKind::forward_backward;
        } else {
            fail("smoothing.kind", "must be one of none, forward, forward_backward");
        }
    }
    if (const Json* f = find(*j, "subarray_size")) {
        smoothing.subarray_size = as_int(*f, "smoothing.subarray_size");
    }
    return smoothing;
}

std::vector<Algorithm> parse_algorithms(const Json* j) {
    if (!j) return {Algorithm::music, Algorithm::esprit};
    if (!j->is_array() || j->empty()) fail("algorithms", "must be a nonempty array");
    std::vector<Algorithm> algorithms;
    for (std::size_t i = 0; i < j->size(); ++i) {
        const std::string path = "algorithms[" + std::to_string(i) + "]";
        const std::string name = as_string((*j)[i], path);
        if (name == "music") {
            algorithms.push_back(Algorithm::music);
        } else if (name == "esprit") {
            algorithms.push_back(Algorithm::esprit);
        } else {
            fail(path, "must be one of music, esprit");
        }
    }
    return algorithms;
}

SourceCountMethod parse_source_count(const Json* j, int num_sources) {
    if (!j) return SourceCountMethod::known(num_sources);
    if (!j->is_object()) fail("source_count", "must be an object");
    reject_unknown_keys(*j, "source_count", {"method", "known_count", "threshold_ratio"});
    SourceCountMethod method = SourceCountMethod::known(num_sources);
    if (const Json* f = find(*j, "method")) {
        const std::string name = as_string(*f, "source_count.method");
        if (name == "known") {
            method.method = OrderMethod::known;
        } else if (name == "threshold") {
            method.method = OrderMethod::threshold;
        } else if (name == "mdl") {
            method.method = OrderMethod::mdl;
        } else if (name == "aic") {
            method.method = OrderMethod::aic;
        } else {
            fail("source_count.method", "must be one of known, threshold, mdl, aic");
        }
    }
    if (const Json* f = find(*j, "known_count")) {
        method.known_count = as_int(*f, "source_count.known_count");
    }
    if (const Json* f = find(*j, "threshold_ratio")) {
        method.threshold_ratio = as_double(*f, "source_count.threshold_ratio");
    }
    return method;
}

OutputControls parse_output(const Json* j) {
    OutputControls output;
    if (!j) return output;
    if (!j->is_object()) fail("output", "must be an object");
    reject_unknown_keys(*j, "output", {"out_dir", "write_json", "write_csv", "dump_spectrum"});
    if (const Json* f = find(*j, "out_dir")) output.out_dir = as_string(*f, "output.out_dir");
    if (const Json* f = find(*j, "write_json")) output.write_json = as_bool(*f, "output.write_json");
    if (const Json* f = find(*j, "write_csv")) output.write_csv = as_bool(*f, "output.write_csv");
    if (const Json* f = find(*j, "dump_spectrum")) {
        output.dump_spectrum = as_bool(*f, "output.dump_spectrum");
    }
    return output;
}

const char* to_key(ReceiverKind kind) {
    switch (kind) {
        case ReceiverKind::ideal: return "ideal";
        case ReceiverKind::six_port: return "six_port";
        case ReceiverKind::five_port: return "five_port";
    }
    return "ideal";
}

const char* to_key(SmoothingKind kind) {
    switch (kind) {
        case SmoothingKind::none: return "none";
        case SmoothingKind::forward: return "forward";
        case SmoothingKind::forward_backward: return "forward_backward";
    }
    return "none";
}

const char* to_key(OrderMethod method) {
    switch (method) {
        case OrderMethod::known: return "known";
        case OrderMethod::threshold: return "threshold";
        case OrderMethod::mdl: return "mdl";
        case OrderMethod::aic: return "aic";
    }
    return "known";
}

Json real_vector_to_json(const RealVector& v) {
    Json arr = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        arr.push_back(v[i]);
    }
    return arr;
}

}  // namespace

ParsedConfig parse_config(const std::string& json_text) {
    Json doc;
    try {
        doc = Json::parse(json_text);
    } catch (const Json::parse_error& e) {
        throw ConfigError(std::string("config is not well-formed JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("config: top level must be a JSON object");
    }
    reject_unknown_keys(doc, "",
                        {"name", "geometry", "sources", "receiver", "num_snapshots",
                         "noise_power_db", "smoothing", "algorithms", "source_count", "trials",
                         "base_seed", "match_tolerance_deg", "provenance", "output"});

    ParsedConfig parsed;
    Scenario& s = parsed.scenario;

    const Json* name = find(doc, "name");
    if (!name) fail("name", "is required");
    s.name = as_string(*name, "name");
    if (s.name.empty()) fail("name", "must be nonempty");

    s.geometry = parse_geometry(find(doc, "geometry"));
    s.sources = parse_sources(find(doc, "sources"));
    s.receiver = parse_receiver(find(doc, "receiver"));
    if (const Json* f = find(doc, "num_snapshots")) {
        s.num_snapshots = as_int(*f, "num_snapshots");
    }
    if (const Json* f = find(doc, "noise_power_db"); f && !f->is_null()) {
        s.noise_power_db = as_double(*f, "noise_power_db");
    }
    s.smoothing = parse_smoothing(find(doc, "smoothing"));
    s.algorithms = parse_algorithms(find(doc, "algorithms"));
    s.source_count =
        parse_source_count(find(doc, "source_count"), static_cast<int>(s.sources.size()));
    if (const Json* f = find(doc, "trials")) s.trials = as_int(*f, "trials");
    if (const Json* f = find(doc, "base_seed")) s.base_seed = as_u64(*f, "base_seed");
    if (const Json* f = find(doc, "match_tolerance_deg")) {
        s.match_tolerance_deg = as_double(*f, "match_tolerance_deg");
    }
    if (const Json* f = find(doc, "provenance")) s.provenance = as_string(*f, "provenance");
    parsed.output = parse_output(find(doc, "output"));

    validate(s);
    return parsed;
}

std::string scenario_to_json(const Scenario& scenario) {
    Json doc;
    doc["name"] = scenario.name;
    doc["geometry"] = {{"num_elements", scenario.geometry.num_elements},
                       {"spacing_m", scenario.geometry.spacing_m},
                       {"carrier_freq_hz", scenario.geometry.carrier_freq_hz}};
    Json sources = Json::array();
    for (const SourceSpec& src : scenario.sources) {
        Json j;
        j["aoa_deg"] = src.aoa_deg;
        j["power_db"] = src.power_db;
        if (src.coherence_group) j["coherence_group"] = *src.coherence_group;
        j["path_gain_db"] = src.path_gain_db;
        j["path_phase_deg"] = src.path_phase_deg;
        sources.push_back(std::move(j));
    }
    doc["sources"] = std::move(sources);
    doc["receiver"] = {{"kind", to_key(scenario.receiver.kind)},
                       {"static_gain_db", real_vector_to_json(scenario.receiver.static_gain_db)},
                       {"static_phase_deg",
                        real_vector_to_json(scenario.receiver.static_phase_deg)},
                       {"lo_phase_jitter_rad", scenario.receiver.lo_phase_jitter_rad},
                       {"lo_gain_jitter_db", scenario.receiver.lo_gain_jitter_db}};
    doc["num_snapshots"] = scenario.num_snapshots;
    if (scenario.noise_power_db) {
        doc["noise_power_db"] = *scenario.noise_power_db;
    } else {
        doc["noise_power_db"] = nullptr;
    }
    doc["smoothing"] = {{"kind", to_key(scenario.smoothing.kind)},
                        {"subarray_size", scenario.smoothing.subarray_size}};
    Json algorithms = Json::array();
    for (Algorithm a : scenario.algorithms) {
        algorithms.push_back(to_string(a));
    }
    doc["algorithms"] = std::move(algorithms);
    doc["source_count"] = {{"method", to_key(scenario.source_count.method)},
                           {"known_count", scenario.source_count.known_count},
                           {"threshold_ratio", scenario.source_count.threshold_ratio}};
    doc["trials"] = scenario.trials;
    doc["base_seed"] = scenario.base_seed;
    doc["match_tolerance_deg"] = scenario.match_tolerance_deg;
    doc["provenance"] = scenario.provenance;
    return doc.dump(2) + "\n";
}

}  // namespace doalab
