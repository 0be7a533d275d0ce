// Copyright 2026 The nrqae Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nrqae/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace nrqae {

using nlohmann::json;

namespace {

template <typename T>
T get_or(const json &j, const char *key, T fallback) {
    if (!j.contains(key) || j.at(key).is_null()) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &e) {
        throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
    }
}

void reject_unknown(const json &j, std::initializer_list<const char *> known, const std::string &where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char *k : known) ok = ok || it.key() == k;
        if (!ok) throw ConfigError("unknown key '" + it.key() + "' in " + where);
    }
}

std::vector<Complex> vector_from_json(const json &j, const char *key) {
    std::vector<Complex> out;
    if (!j.at(key).is_array()) throw ConfigError(std::string("'") + key + "' must be an array");
    for (const auto &e : j.at(key)) {
        if (e.is_number()) {
            out.emplace_back(e.get<double>(), 0.0);
        } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
            out.emplace_back(e[0].get<double>(), e[1].get<double>());
        } else {
            throw ConfigError(std::string("'") + key + "' entries must be numbers or [re, im] pairs");
        }
    }
    return out;
}

json vector_to_json(const std::vector<Complex> &v) {
    json arr = json::array();
    for (const auto &z : v) arr.push_back(json::array({z.real(), z.imag()}));
    return arr;
}

ProblemSpec problem_from_json(const json &j) {
    if (!j.is_object()) throw ConfigError("'problem' must be an object");
    reject_unknown(j, {"mode", "qubits", "psi_angle", "phi_angle", "psi", "phi", "channel_phase", "amplitude",
                       "observable"},
                   "problem");
    ProblemSpec p;
    try {
        p.mode = mode_from_string(get_or<std::string>(j, "mode", "amplitude"));
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    p.qubits = get_or<std::size_t>(j, "qubits", 1);
    p.observable = get_or<std::string>(j, "observable", std::string(p.qubits > 0 ? p.qubits - 1 : 0, 'I') + "Z");

    const bool angles = j.contains("psi_angle") || j.contains("phi_angle");
    const bool vectors = j.contains("psi") || j.contains("phi");
    const bool phase = j.contains("channel_phase");
    const bool amp = j.contains("amplitude");
    if (angles + vectors + phase + amp > 1) {
        throw ConfigError("problem: give exactly one of angles, vectors, channel_phase, amplitude");
    }
    if (vectors) {
        p.form = ProblemForm::Vectors;
        if (!j.contains("psi")) throw ConfigError("problem: 'psi' vector missing");
        p.psi = vector_from_json(j, "psi");
        if (j.contains("phi")) p.phi = vector_from_json(j, "phi");
        if (p.mode == Mode::Amplitude && p.phi.empty()) throw ConfigError("problem: 'phi' vector missing");
    } else if (phase) {
        p.form = ProblemForm::ChannelPhase;
        p.channel_phase = get_or<double>(j, "channel_phase", 0);
    } else if (amp) {
        p.form = ProblemForm::Amplitude;
        p.amplitude = get_or<double>(j, "amplitude", 0);
    } else {
        p.form = ProblemForm::Angles;
        p.psi_angle = get_or<double>(j, "psi_angle", 0);
        p.phi_angle = get_or<double>(j, "phi_angle", 0);
    }
    return p;
}

json problem_to_json(const ProblemSpec &p) {
    json j;
    j["mode"] = to_string(p.mode);
    j["qubits"] = p.qubits;
    switch (p.form) {
        case ProblemForm::Angles:
            j["psi_angle"] = p.psi_angle;
            j["phi_angle"] = p.phi_angle;
            break;
        case ProblemForm::Vectors:
            j["psi"] = vector_to_json(p.psi);
            if (!p.phi.empty()) j["phi"] = vector_to_json(p.phi);
            break;
        case ProblemForm::ChannelPhase:
            j["channel_phase"] = p.channel_phase;
            break;
        case ProblemForm::Amplitude:
            j["amplitude"] = p.amplitude;
            break;
    }
    j["observable"] = p.observable;
    return j;
}

NoiseSpec noise_from_json(const json &j) {
    if (!j.is_object()) throw ConfigError("'noise' must be an object");
    reject_unknown(j, {"kind", "scale", "gamma", "pauli", "depolarizing_p", "delta_t", "target_fidelity", "sigma",
                       "seed"},
                   "noise");
    NoiseSpec n;
    try {
        n = NoiseSpec::of_kind(noise_kind_from_string(get_or<std::string>(j, "kind", "none")));
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    n.scale = get_or(j, "scale", n.scale);
    n.gamma = get_or(j, "gamma", n.gamma);
    if (j.contains("pauli")) {
        const json &w = j.at("pauli");
        if (!w.is_object()) throw ConfigError("'noise.pauli' must be an object");
        reject_unknown(w, {"i", "x", "y", "z"}, "noise.pauli");
        n.pauli.i = get_or(w, "i", n.pauli.i);
        n.pauli.x = get_or(w, "x", n.pauli.x);
        n.pauli.y = get_or(w, "y", n.pauli.y);
        n.pauli.z = get_or(w, "z", n.pauli.z);
    }
    n.depolarizing_p = get_or(j, "depolarizing_p", n.depolarizing_p);
    n.delta_t = get_or(j, "delta_t", n.delta_t);
    n.target_fidelity = get_or(j, "target_fidelity", n.target_fidelity);
    n.sigma = get_or(j, "sigma", n.sigma);
    if (j.contains("seed") && !j.at("seed").is_null()) n.seed = get_or<std::uint64_t>(j, "seed", 0);
    return n;
}

json noise_to_json(const NoiseSpec &n) {
    json j;
    j["kind"] = to_string(n.kind);
    j["scale"] = n.scale;
    j["gamma"] = n.gamma;
    j["pauli"] = {{"i", n.pauli.i}, {"x", n.pauli.x}, {"y", n.pauli.y}, {"z", n.pauli.z}};
    j["depolarizing_p"] = n.depolarizing_p;
    j["delta_t"] = n.delta_t;
    j["target_fidelity"] = n.target_fidelity;
    j["sigma"] = n.sigma;
    j["seed"] = n.seed ? json(*n.seed) : json(nullptr);
    return j;
}

ComplexVector to_eigen(const std::vector<Complex> &v) {
    ComplexVector out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t k = 0; k < v.size(); k++) out(static_cast<Eigen::Index>(k)) = v[k];
    return out;
}

}  // namespace

std::string to_string(ProblemForm form) {
    switch (form) {
        case ProblemForm::Angles: return "angles";
        case ProblemForm::Vectors: return "vectors";
        case ProblemForm::ChannelPhase: return "channel_phase";
        case ProblemForm::Amplitude: return "amplitude";
    }
    return "?";
}

EstimationProblem ProblemSpec::build() const {
    if (qubits < 1 || qubits > 3) throw ConfigError("problem.qubits must be 1, 2 or 3");
    try {
        if (mode == Mode::Observable) {
            if (observable.size() != qubits) {
                throw ConfigError("observable '" + observable + "' does not match qubit count");
            }
            ComplexVector state;
            if (form == ProblemForm::Angles) {
                state = angle_state(qubits, psi_angle);
            } else if (form == ProblemForm::Vectors) {
                state = to_eigen(psi);
                if (state.norm() == 0) throw ConfigError("problem.psi is the zero vector");
                state.normalize();
            } else {
                throw ConfigError("observable mode takes psi_angle or psi");
            }
            return EstimationProblem::observable(state, pauli_string(observable));
        }
        switch (form) {
            case ProblemForm::Angles:
                return EstimationProblem::amplitude(angle_state(qubits, psi_angle), angle_state(qubits, phi_angle));
            case ProblemForm::Vectors: {
                ComplexVector a = to_eigen(psi), b = to_eigen(phi);
                if (a.norm() == 0 || b.norm() == 0) throw ConfigError("problem vectors must be nonzero");
                return EstimationProblem::amplitude(a.normalized(), b.normalized());
            }
            case ProblemForm::ChannelPhase:
                if (!(channel_phase >= 0 && channel_phase <= 2 * std::numbers::pi)) {
                    throw ConfigError("problem.channel_phase must lie in [0, 2 pi]");
                }
                return problem_with_channel_phase(qubits, channel_phase);
            case ProblemForm::Amplitude:
                if (!(amplitude >= 0 && amplitude <= 1)) throw ConfigError("problem.amplitude must lie in [0, 1]");
                return problem_with_channel_phase(qubits, 2 * std::acos(2 * amplitude - 1));
        }
    } catch (const ConfigError &) {
        throw;
    } catch (const std::exception &e) {
        throw ConfigError(std::string("problem: ") + e.what());
    }
    throw ConfigError("problem: unknown form");
}

ExperimentConfig parse_config(const std::string &json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    reject_unknown(j, {"version", "problem", "noise", "shots", "iterations", "trials", "seed", "additive_error",
                       "retry", "s_grid", "t_depth", "iqae", "plan", "out"},
                   "config");
    ExperimentConfig c;
    c.version = get_or<int>(j, "version", -1);
    if (c.version != kConfigVersion) {
        throw ConfigError("unsupported config version " + std::to_string(c.version) + " (expected " +
                          std::to_string(kConfigVersion) + ")");
    }
    if (j.contains("problem")) c.problem = problem_from_json(j.at("problem"));
    if (j.contains("noise")) c.noise = noise_from_json(j.at("noise"));
    if (j.contains("shots") && !j.at("shots").is_null()) c.shots = get_or<std::uint64_t>(j, "shots", 0);
    c.iterations = get_or(j, "iterations", c.iterations);
    c.trials = get_or(j, "trials", c.trials);
    c.seed = get_or(j, "seed", c.seed);
    c.additive_error = get_or(j, "additive_error", c.additive_error);
    c.retry = get_or(j, "retry", c.retry);
    c.s_grid = get_or(j, "s_grid", c.s_grid);
    c.t_depth = get_or(j, "t_depth", c.t_depth);
    if (j.contains("iqae")) {
        const json &q = j.at("iqae");
        if (!q.is_object()) throw ConfigError("'iqae' must be an object");
        reject_unknown(q, {"target_eps", "alpha", "max_rounds"}, "iqae");
        c.iqae.target_eps = get_or(q, "target_eps", c.iqae.target_eps);
        c.iqae.alpha = get_or(q, "alpha", c.iqae.alpha);
        c.iqae.max_rounds = get_or(q, "max_rounds", c.iqae.max_rounds);
    }
    if (j.contains("plan")) {
        const json &p = j.at("plan");
        if (!p.is_object()) throw ConfigError("'plan' must be an object");
        reject_unknown(p, {"eps", "delta"}, "plan");
        c.plan_eps = get_or(p, "eps", c.plan_eps);
        c.plan_delta = get_or(p, "delta", c.plan_delta);
    }
    c.out = get_or<std::string>(j, "out", "");
    return c;
}

std::string dump_config(const ExperimentConfig &c) {
    json j;
    j["version"] = c.version;
    j["problem"] = problem_to_json(c.problem);
    j["noise"] = noise_to_json(c.noise);
    j["shots"] = c.shots ? json(*c.shots) : json(nullptr);
    j["iterations"] = c.iterations;
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    j["additive_error"] = c.additive_error;
    j["retry"] = c.retry;
    j["s_grid"] = c.s_grid;
    j["t_depth"] = c.t_depth;
    j["iqae"] = {{"target_eps", c.iqae.target_eps}, {"alpha", c.iqae.alpha}, {"max_rounds", c.iqae.max_rounds}};
    j["plan"] = {{"eps", c.plan_eps}, {"delta", c.plan_delta}};
    j["out"] = c.out;
    return j.dump(2) + "\n";
}

ExperimentConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void validate(const ExperimentConfig &c) {
    if (c.version != kConfigVersion) throw ConfigError("unsupported config version");
    if (c.shots && *c.shots == 0) throw ConfigError("shots must be positive (omit for exact mode)");
    if (c.iterations > 12) throw ConfigError("iterations above 12 (depth 4096) are not supported");
    if (c.trials == 0) throw ConfigError("trials must be at least 1");
    if (!(c.additive_error >= 0 && c.additive_error < 1)) throw ConfigError("additive_error must lie in [0, 1)");
    if (c.t_depth == 0) throw ConfigError("t_depth must be at least 1");
    for (double s : c.s_grid) {
        if (!(s > 0 && s <= 1)) throw ConfigError("s_grid entries must lie in (0, 1]");
    }
    if (!(c.iqae.target_eps > 0 && c.iqae.target_eps < 1)) throw ConfigError("iqae.target_eps must lie in (0, 1)");
    if (!(c.iqae.alpha > 0 && c.iqae.alpha < 1)) throw ConfigError("iqae.alpha must lie in (0, 1)");
    try {
        c.noise.validate();
    } catch (const std::exception &e) {
        throw ConfigError(std::string("noise: ") + e.what());
    }
    (void)c.problem.build();
}

}  // namespace nrqae
