#include "gesturequad/gesture_config.hpp"

#include "gesturequad/error.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace gq {

using nlohmann::ordered_json;

AngleInterval AngleInterval::around(double center_deg, double half_width_deg) {
    if (half_width_deg >= 180.0) {
        return {0.0, std::nextafter(360.0, 0.0), false};
    }
    const double lo = normalize_degrees(center_deg - half_width_deg);
    const double hi = normalize_degrees(center_deg + half_width_deg);
    return {lo, hi, lo > hi};
}

bool AngleInterval::contains(double deg) const {
    if (wrap) {
        return deg >= lo || deg <= hi;
    }
    return deg >= lo && deg <= hi;
}

namespace {

[[noreturn]] void invalid(const std::string& msg) {
    throw Error(ErrorCode::InvalidConfig, msg);
}

bool in_circle(double d) { return std::isfinite(d) && d >= 0.0 && d < 360.0; }

}  // namespace

void validate(const GestureConfig& config) {
    if (!(config.vis_threshold >= 0.0 && config.vis_threshold <= 1.0)) {
        invalid("vis_threshold must lie in [0,1]");
    }
    std::set<int> priorities;
    std::set<GestureName> names;
    for (const auto& def : config.body_poses) {
        const auto label = std::string(to_string(def.name));
        if (vocabulary_of(def.name) != GestureKind::Body) {
            invalid("pose '" + label + "' is not a body gesture");
        }
        if (!names.insert(def.name).second) {
            invalid("pose '" + label + "' defined twice");
        }
        if (def.constraints.empty()) {
            invalid("pose '" + label + "' has no constraints");
        }
        if (!priorities.insert(def.priority).second) {
            invalid("pose '" + label + "' reuses priority " + std::to_string(def.priority));
        }
        for (const auto& [angle, iv] : def.constraints) {
            const auto where = label + "." + std::string(to_string(angle));
            if (!in_circle(iv.lo) || !in_circle(iv.hi)) {
                invalid(where + ": bounds must lie in [0,360)");
            }
            if (!iv.wrap && iv.lo > iv.hi) {
                invalid(where + ": non-wrapping interval needs lo <= hi");
            }
            if (iv.wrap && iv.lo <= iv.hi) {
                invalid(where + ": wrapping interval needs lo > hi");
            }
        }
    }
    for (auto g : kBodyGestures) {
        if (!names.contains(g)) {
            invalid("missing body pose '" + std::string(to_string(g)) + "'");
        }
    }
    if (!(config.hand.fist_sector_deg > 0.0 && config.hand.fist_sector_deg <= 45.0)) {
        invalid("hand.fist_sector_deg must lie in (0,45]");
    }
    if (!(config.hand.hysteresis >= 0.0 && config.hand.hysteresis < 0.5)) {
        invalid("hand.hysteresis must lie in [0,0.5)");
    }
    if (config.pipeline.stability_frames < 1) {
        invalid("pipeline.stability_frames must be >= 1");
    }
    if (config.pipeline.cooldown_ms < 0) {
        invalid("pipeline.cooldown_ms must be >= 0");
    }
}

namespace {

ordered_json to_json(const GestureConfig& c) {
    ordered_json poses = ordered_json::array();
    for (const auto& def : c.body_poses) {
        ordered_json cons = ordered_json::object();
        // Emit in canonical angle order, not map order.
        for (auto a : kAllJointAngles) {
            auto it = def.constraints.find(a);
            if (it == def.constraints.end()) {
                continue;
            }
            cons[std::string(to_string(a))] = {
                {"lo", it->second.lo}, {"hi", it->second.hi}, {"wrap", it->second.wrap}};
        }
        poses.push_back({{"name", to_string(def.name)},
                         {"priority", def.priority},
                         {"constraints", std::move(cons)}});
    }
    return {
        {"version", 1},
        {"vis_threshold", c.vis_threshold},
        {"body_poses", std::move(poses)},
        {"hand", {{"fist_sector_deg", c.hand.fist_sector_deg}, {"hysteresis", c.hand.hysteresis}}},
        {"pipeline",
         {{"stability_frames", c.pipeline.stability_frames}, {"cooldown_ms", c.pipeline.cooldown_ms}}},
    };
}

template <typename T>
T field(const ordered_json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) {
        invalid(where + ": missing '" + key + "'");
    }
    try {
        return obj.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        invalid(where + ": bad type for '" + key + "'");
    }
}

}  // namespace

std::string to_json_text(const GestureConfig& config) {
    return to_json(config).dump(2) + "\n";
}

GestureConfig config_from_json_text(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        invalid(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        invalid("config root must be an object");
    }
    if (j.value("version", 1) != 1) {
        invalid("unsupported config version");
    }
    GestureConfig c;
    c.vis_threshold = j.value("vis_threshold", kDefaultVisibilityThreshold);
    for (const auto& p : field<ordered_json>(j, "body_poses", "config")) {
        BodyPoseDefinition def;
        const auto name = field<std::string>(p, "name", "body_poses[]");
        const auto parsed = parse_gesture_name(name);
        if (!parsed) {
            invalid("unknown pose name '" + name + "'");
        }
        def.name = *parsed;
        def.priority = field<int>(p, "priority", name);
        const auto constraints = field<ordered_json>(p, "constraints", name);
        for (const auto& [key, iv] : constraints.items()) {
            const auto angle = parse_joint_angle(key);
            if (!angle) {
                invalid(name + ": unknown angle '" + key + "'");
            }
            AngleInterval interval;
            interval.lo = field<double>(iv, "lo", name + "." + key);
            interval.hi = field<double>(iv, "hi", name + "." + key);
            interval.wrap = iv.is_object() && iv.contains("wrap") ? iv.at("wrap").get<bool>()
                                                                  : interval.lo > interval.hi;
            def.constraints[*angle] = interval;
        }
        c.body_poses.push_back(std::move(def));
    }
    if (j.contains("hand")) {
        const auto& h = j.at("hand");
        c.hand.fist_sector_deg = h.value("fist_sector_deg", c.hand.fist_sector_deg);
        c.hand.hysteresis = h.value("hysteresis", c.hand.hysteresis);
    }
    if (j.contains("pipeline")) {
        const auto& p = j.at("pipeline");
        c.pipeline.stability_frames = p.value("stability_frames", c.pipeline.stability_frames);
        c.pipeline.cooldown_ms = p.value("cooldown_ms", c.pipeline.cooldown_ms);
    }
    validate(c);
    return c;
}

GestureConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open config '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return config_from_json_text(ss.str());
}

void save_config(const GestureConfig& config, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot write config '" + path.string() + "'");
    }
    out << to_json_text(config);
    if (!out) {
        throw Error(ErrorCode::Io, "write failed for '" + path.string() + "'");
    }
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string config_hash(const GestureConfig& config) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(to_json_text(config))));
    return buf;
}

}  // namespace gq
