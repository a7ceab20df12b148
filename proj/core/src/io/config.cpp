#include "vinesense/io/config.hpp"

#include <initializer_list>
#include <set>

#include <json.hpp>

#include "vinesense/errors.hpp"
#include "vinesense/io/csv.hpp"
#include "vinesense/rng.hpp"

namespace vinesense::io {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& scope,
                    std::initializer_list<const char*> known) {
    std::set<std::string> allowed(known.begin(), known.end());
    for (const auto& item : obj.items()) {
        if (allowed.find(item.key()) == allowed.end()) {
            throw ConfigError("unknown key '" + (scope.empty() ? item.key() : scope + "." + item.key()) +
                              "'");
        }
    }
}

json expect_object(const json& parent, const std::string& scope, const char* key) {
    const json& v = parent.at(key);
    if (!v.is_object()) {
        throw ConfigError("'" + scope + key + "' must be an object");
    }
    return v;
}

double get_number(const json& obj, const std::string& scope, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) {
        throw ConfigError("'" + scope + key + "' must be a number");
    }
    return v.get<double>();
}

long long get_integer(const json& obj, const std::string& scope, const char* key,
                      long long fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) {
        throw ConfigError("'" + scope + key + "' must be an integer");
    }
    return v.get<long long>();
}

bool get_bool(const json& obj, const std::string& scope, const char* key, bool fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_boolean()) {
        throw ConfigError("'" + scope + key + "' must be a boolean");
    }
    return v.get<bool>();
}

std::string get_string(const json& obj, const std::string& scope, const char* key,
                       const std::string& fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_string()) {
        throw ConfigError("'" + scope + key + "' must be a string");
    }
    return v.get<std::string>();
}

std::vector<double> get_number_list(const json& obj, const std::string& scope, const char* key,
                                    std::vector<double> fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_array() || v.empty()) {
        throw ConfigError("'" + scope + key + "' must be a non-empty array of numbers");
    }
    std::vector<double> out;
    for (const json& e : v) {
        if (!e.is_number()) {
            throw ConfigError("'" + scope + key + "' must contain only numbers");
        }
        out.push_back(e.get<double>());
    }
    return out;
}

std::vector<int> get_int_list(const json& obj, const std::string& scope, const char* key,
                              std::vector<int> fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_array() || v.empty()) {
        throw ConfigError("'" + scope + key + "' must be a non-empty array of integers");
    }
    std::vector<int> out;
    for (const json& e : v) {
        if (!e.is_number_integer()) {
            throw ConfigError("'" + scope + key + "' must contain only integers");
        }
        out.push_back(e.get<int>());
    }
    return out;
}

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

void load_ages(const json& obj, const std::string& scope, double& mean_s, double& jitter_s) {
    mean_s = get_number(obj, scope, "offset_age_mean_s", mean_s);
    jitter_s = get_number(obj, scope, "offset_age_jitter_s", jitter_s);
    require(mean_s >= 0.0, "'" + scope + "offset_age_mean_s' must be >= 0");
    require(jitter_s >= 0.0, "'" + scope + "offset_age_jitter_s' must be >= 0");
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("config root must be a JSON object");
    }
    reject_unknown(doc, "",
                   {"master_seed", "arc_samples", "geometry", "drift", "drift_experiment",
                    "passive", "active", "length", "spacing"});

    RunConfig cfg;
    long long seed = get_integer(doc, "", "master_seed",
                                 static_cast<long long>(cfg.master_seed));
    require(seed >= 0, "'master_seed' must be >= 0");
    cfg.master_seed = static_cast<std::uint64_t>(seed);
    cfg.arc_samples = static_cast<int>(get_integer(doc, "", "arc_samples", cfg.arc_samples));
    require(cfg.arc_samples >= 0, "'arc_samples' must be >= 0 (0 = automatic)");

    if (doc.contains("geometry")) {
        json g = expect_object(doc, "", "geometry");
        reject_unknown(g, "geometry", {"spacing_cm", "diameter_cm", "num_imus"});
        cfg.geometry.spacing_s_cm = get_number(g, "geometry.", "spacing_cm", cfg.geometry.spacing_s_cm);
        cfg.geometry.diameter_d_cm =
            get_number(g, "geometry.", "diameter_cm", cfg.geometry.diameter_d_cm);
        cfg.geometry.num_imus =
            static_cast<int>(get_integer(g, "geometry.", "num_imus", cfg.geometry.num_imus));
        require(cfg.geometry.spacing_s_cm > 0.0, "'geometry.spacing_cm' must be > 0");
        require(cfg.geometry.diameter_d_cm > 0.0, "'geometry.diameter_cm' must be > 0");
        require(cfg.geometry.num_imus >= 2, "'geometry.num_imus' must be >= 2");
    }

    if (doc.contains("drift")) {
        json d = expect_object(doc, "", "drift");
        reject_unknown(d, "drift",
                       {"mean_rate_deg_min", "rate_spread_deg_min", "noise_std_deg", "random_walk"});
        cfg.drift.mean_rate_deg_min =
            get_number(d, "drift.", "mean_rate_deg_min", cfg.drift.mean_rate_deg_min);
        cfg.drift.rate_spread_deg_min =
            get_number(d, "drift.", "rate_spread_deg_min", cfg.drift.rate_spread_deg_min);
        cfg.drift.noise_std_deg = get_number(d, "drift.", "noise_std_deg", cfg.drift.noise_std_deg);
        cfg.drift.random_walk = get_bool(d, "drift.", "random_walk", cfg.drift.random_walk);
        require(cfg.drift.mean_rate_deg_min >= 0.0, "'drift.mean_rate_deg_min' must be >= 0");
        require(cfg.drift.rate_spread_deg_min >= 0.0, "'drift.rate_spread_deg_min' must be >= 0");
        require(cfg.drift.noise_std_deg >= 0.0, "'drift.noise_std_deg' must be >= 0");
    }

    if (doc.contains("drift_experiment")) {
        json d = expect_object(doc, "", "drift_experiment");
        reject_unknown(d, "drift_experiment", {"n_sensors", "duration_s", "sample_every_s"});
        cfg.drift_experiment.n_sensors = static_cast<int>(
            get_integer(d, "drift_experiment.", "n_sensors", cfg.drift_experiment.n_sensors));
        cfg.drift_experiment.duration_s =
            get_number(d, "drift_experiment.", "duration_s", cfg.drift_experiment.duration_s);
        cfg.drift_experiment.sample_every_s = get_number(d, "drift_experiment.", "sample_every_s",
                                                         cfg.drift_experiment.sample_every_s);
        require(cfg.drift_experiment.n_sensors >= 1, "'drift_experiment.n_sensors' must be >= 1");
        require(cfg.drift_experiment.duration_s > 0.0, "'drift_experiment.duration_s' must be > 0");
        require(cfg.drift_experiment.sample_every_s > 0.0,
                "'drift_experiment.sample_every_s' must be > 0");
    }

    if (doc.contains("passive")) {
        json p = expect_object(doc, "", "passive");
        reject_unknown(p, "passive",
                       {"angles_deg", "trials_per_angle", "pre_length_cm", "bend_radius_cm",
                        "total_length_cm", "offset_age_mean_s", "offset_age_jitter_s"});
        cfg.passive.angles_deg = get_number_list(p, "passive.", "angles_deg", cfg.passive.angles_deg);
        for (double a : cfg.passive.angles_deg) {
            require(a >= 0.0 && a <= 90.0, "'passive.angles_deg' entries must be in [0, 90]");
        }
        cfg.passive.trials_per_angle = static_cast<int>(
            get_integer(p, "passive.", "trials_per_angle", cfg.passive.trials_per_angle));
        require(cfg.passive.trials_per_angle >= 1, "'passive.trials_per_angle' must be >= 1");
        cfg.passive.pre_length_cm =
            get_number(p, "passive.", "pre_length_cm", cfg.passive.pre_length_cm);
        require(cfg.passive.pre_length_cm >= 0.0, "'passive.pre_length_cm' must be >= 0");
        cfg.passive.bend_radius_cm =
            get_number(p, "passive.", "bend_radius_cm", cfg.passive.bend_radius_cm);
        require(cfg.passive.bend_radius_cm > 0.0, "'passive.bend_radius_cm' must be > 0");
        cfg.passive.total_length_cm =
            get_number(p, "passive.", "total_length_cm", cfg.passive.total_length_cm);
        require(cfg.passive.total_length_cm > 0.0, "'passive.total_length_cm' must be > 0");
        load_ages(p, "passive.", cfg.passive.offset_age_mean_s, cfg.passive.offset_age_jitter_s);
    }

    if (doc.contains("active")) {
        json a = expect_object(doc, "", "active");
        reject_unknown(a, "active",
                       {"kappas_per_cm", "trials_per_kappa", "shape", "radius_scale",
                        "total_length_cm", "offset_age_mean_s", "offset_age_jitter_s"});
        cfg.active.kappas_per_cm =
            get_number_list(a, "active.", "kappas_per_cm", cfg.active.kappas_per_cm);
        for (double k : cfg.active.kappas_per_cm) {
            require(k >= 0.0 && k <= 0.15, "'active.kappas_per_cm' entries must be in [0, 0.15]");
        }
        cfg.active.trials_per_kappa = static_cast<int>(
            get_integer(a, "active.", "trials_per_kappa", cfg.active.trials_per_kappa));
        require(cfg.active.trials_per_kappa >= 1, "'active.trials_per_kappa' must be >= 1");
        std::string mode = get_string(a, "active.", "shape",
                                      cfg.active.arc_ground_truth ? "arc" : "hinge_mismatch");
        if (mode == "arc") {
            cfg.active.arc_ground_truth = true;
        } else if (mode == "hinge_mismatch") {
            cfg.active.arc_ground_truth = false;
        } else {
            throw ConfigError("'active.shape' must be 'hinge_mismatch' or 'arc', got '" + mode +
                              "'");
        }
        cfg.active.radius_scale = get_number(a, "active.", "radius_scale", cfg.active.radius_scale);
        require(cfg.active.radius_scale > 0.0, "'active.radius_scale' must be > 0");
        cfg.active.total_length_cm =
            get_number(a, "active.", "total_length_cm", cfg.active.total_length_cm);
        require(cfg.active.total_length_cm > 0.0, "'active.total_length_cm' must be > 0");
        load_ages(a, "active.", cfg.active.offset_age_mean_s, cfg.active.offset_age_jitter_s);
    }

    if (doc.contains("length")) {
        json l = expect_object(doc, "", "length");
        reject_unknown(l, "length",
                       {"lengths_cm", "trials_per_length", "kappa_per_cm", "offset_age_mean_s",
                        "offset_age_jitter_s"});
        cfg.length.lengths_cm = get_number_list(l, "length.", "lengths_cm", cfg.length.lengths_cm);
        for (double v : cfg.length.lengths_cm) {
            require(v > 0.0, "'length.lengths_cm' entries must be > 0");
        }
        cfg.length.trials_per_length = static_cast<int>(
            get_integer(l, "length.", "trials_per_length", cfg.length.trials_per_length));
        require(cfg.length.trials_per_length >= 1, "'length.trials_per_length' must be >= 1");
        cfg.length.kappa_per_cm = get_number(l, "length.", "kappa_per_cm", cfg.length.kappa_per_cm);
        require(cfg.length.kappa_per_cm >= 0.0, "'length.kappa_per_cm' must be >= 0");
        load_ages(l, "length.", cfg.length.offset_age_mean_s, cfg.length.offset_age_jitter_s);
    }

    if (doc.contains("spacing")) {
        json s = expect_object(doc, "", "spacing");
        reject_unknown(s, "spacing",
                       {"multiples", "base_trials", "bend_angle_deg", "pre_length_cm",
                        "total_length_cm", "offset_age_mean_s", "offset_age_jitter_s"});
        cfg.spacing.multiples = get_int_list(s, "spacing.", "multiples", cfg.spacing.multiples);
        for (int k : cfg.spacing.multiples) {
            require(k >= 1, "'spacing.multiples' entries must be >= 1");
        }
        cfg.spacing.base_trials = static_cast<int>(
            get_integer(s, "spacing.", "base_trials", cfg.spacing.base_trials));
        require(cfg.spacing.base_trials >= 1, "'spacing.base_trials' must be >= 1");
        cfg.spacing.bend_angle_deg =
            get_number(s, "spacing.", "bend_angle_deg", cfg.spacing.bend_angle_deg);
        require(cfg.spacing.bend_angle_deg >= 0.0 && cfg.spacing.bend_angle_deg <= 90.0,
                "'spacing.bend_angle_deg' must be in [0, 90]");
        cfg.spacing.pre_length_cm =
            get_number(s, "spacing.", "pre_length_cm", cfg.spacing.pre_length_cm);
        require(cfg.spacing.pre_length_cm >= 0.0, "'spacing.pre_length_cm' must be >= 0");
        cfg.spacing.total_length_cm =
            get_number(s, "spacing.", "total_length_cm", cfg.spacing.total_length_cm);
        require(cfg.spacing.total_length_cm > 0.0, "'spacing.total_length_cm' must be > 0");
        load_ages(s, "spacing.", cfg.spacing.offset_age_mean_s, cfg.spacing.offset_age_jitter_s);
    }

    return cfg;
}

RunConfig load_config(const std::string& path) {
    return parse_config(read_file(path));
}

DriftModel seeded_drift_model(const RunConfig& cfg) {
    DriftModel model = cfg.drift;
    model.seed = derive_stream(cfg.master_seed, "drift-model", 0);
    return model;
}

SweepSetup to_sweep_setup(const RunConfig& cfg) {
    SweepSetup setup;
    setup.geometry = cfg.geometry;
    setup.drift = seeded_drift_model(cfg);
    setup.master_seed = cfg.master_seed;
    setup.arc_samples = cfg.arc_samples;
    return setup;
}

}  // namespace vinesense::io
