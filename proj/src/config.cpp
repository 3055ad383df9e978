#include "namemine/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "namemine/error.hpp"

namespace namemine {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void bad(std::string_view key, const std::string& why) {
    throw SchemaError("config key '" + std::string(key) + "': " + why);
}

std::size_t as_count(std::string_view key, const Json& v) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        bad(key, "expected a non-negative integer");
    }
    return v.get<std::size_t>();
}

double as_real(std::string_view key, const Json& v) {
    if (!v.is_number()) bad(key, "expected a number");
    return v.get<double>();
}

std::string as_string(std::string_view key, const Json& v) {
    if (!v.is_string()) bad(key, "expected a string");
    return v.get<std::string>();
}

std::vector<std::string> as_strings(std::string_view key, const Json& v) {
    if (!v.is_array()) bad(key, "expected an array of strings");
    std::vector<std::string> out;
    for (const auto& item : v) out.push_back(as_string(key, item));
    return out;
}

template <typename T, typename Parse>
std::vector<T> as_enum_list(std::string_view key, const Json& v, Parse parse) {
    std::vector<T> out;
    std::set<std::string> seen;
    for (const auto& name : as_strings(key, v)) {
        auto value = parse(name);
        if (!value) bad(key, "unknown value '" + name + "'");
        if (!seen.insert(name).second) bad(key, "duplicate value '" + name + "'");
        out.push_back(*value);
    }
    return out;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    if (path.empty() || path.is_absolute() || base.empty()) return path;
    return base / path;
}

struct KeyHandler {
    std::string_view key;
    std::function<void(Config&, const Json&, const std::filesystem::path&)> apply;
    std::function<Json(const Config&)> dump;
};

template <typename E>
Json names_of(const std::vector<E>& values) {
    Json out = Json::array();
    for (auto v : values) out.push_back(std::string(to_string(v)));
    return out;
}

const std::vector<KeyHandler>& handlers() {
    using P = const std::filesystem::path&;
    static const std::vector<KeyHandler> table = {
        {"workspace", [](Config& c, const Json& v, P b) { c.workspace = resolve(b, as_string("workspace", v)); },
         [](const Config& c) { return Json(c.workspace.string()); }},
        {"repos",
         [](Config& c, const Json& v, P b) {
             c.repos.clear();
             for (const auto& r : as_strings("repos", v)) c.repos.push_back(resolve(b, r));
         },
         [](const Config& c) {
             Json out = Json::array();
             for (const auto& r : c.repos) out.push_back(r.string());
             return out;
         }},
        {"branch", [](Config& c, const Json& v, P) { c.branch = as_string("branch", v); },
         [](const Config& c) { return Json(c.branch); }},
        {"output_dir", [](Config& c, const Json& v, P b) { c.output_dir = resolve(b, as_string("output_dir", v)); },
         [](const Config& c) { return Json(c.output_dir.string()); }},
        {"jobs", [](Config& c, const Json& v, P) { c.jobs = as_count("jobs", v); },
         [](const Config& c) { return Json(c.jobs); }},
        {"snapshot_ratio", [](Config& c, const Json& v, P) { c.split.snapshot_ratio = as_real("snapshot_ratio", v); },
         [](const Config& c) { return Json(c.split.snapshot_ratio); }},
        {"min_test_samples",
         [](Config& c, const Json& v, P) { c.split.min_test_samples = as_count("min_test_samples", v); },
         [](const Config& c) { return Json(c.split.min_test_samples); }},
        {"large_project_threshold",
         [](Config& c, const Json& v, P) {
             c.split.large_project_threshold = as_count("large_project_threshold", v);
         },
         [](const Config& c) { return Json(c.split.large_project_threshold); }},
        {"rename_threshold", [](Config& c, const Json& v, P) { c.rename_threshold = as_real("rename_threshold", v); },
         [](const Config& c) { return Json(c.rename_threshold); }},
        {"max_path_length",
         [](Config& c, const Json& v, P) { c.paths.max_path_length = as_count("max_path_length", v); },
         [](const Config& c) { return Json(c.paths.max_path_length); }},
        {"max_path_width", [](Config& c, const Json& v, P) { c.paths.max_path_width = as_count("max_path_width", v); },
         [](const Config& c) { return Json(c.paths.max_path_width); }},
        {"max_contexts", [](Config& c, const Json& v, P) { c.paths.max_contexts = as_count("max_contexts", v); },
         [](const Config& c) { return Json(c.paths.max_contexts); }},
        {"path_sampling_seed",
         [](Config& c, const Json& v, P) { c.paths.sampling_seed = as_count("path_sampling_seed", v); },
         [](const Config& c) { return Json(c.paths.sampling_seed); }},
        {"chrf_order",
         [](Config& c, const Json& v, P) { c.chrf.char_order = static_cast<int>(as_count("chrf_order", v)); },
         [](const Config& c) { return Json(c.chrf.char_order); }},
        {"chrf_beta", [](Config& c, const Json& v, P) { c.chrf.beta = as_real("chrf_beta", v); },
         [](const Config& c) { return Json(c.chrf.beta); }},
        {"bootstrap_resamples",
         [](Config& c, const Json& v, P) { c.bootstrap.n_resamples = as_count("bootstrap_resamples", v); },
         [](const Config& c) { return Json(c.bootstrap.n_resamples); }},
        {"significance_level",
         [](Config& c, const Json& v, P) { c.bootstrap.significance_level = as_real("significance_level", v); },
         [](const Config& c) { return Json(c.bootstrap.significance_level); }},
        {"bootstrap_seed", [](Config& c, const Json& v, P) { c.bootstrap.seed = as_count("bootstrap_seed", v); },
         [](const Config& c) { return Json(c.bootstrap.seed); }},
        {"metrics",
         [](Config& c, const Json& v, P) { c.metrics = as_enum_list<Metric>("metrics", v, parse_metric); },
         [](const Config& c) { return names_of(c.metrics); }},
        {"representations",
         [](Config& c, const Json& v, P) {
             c.representations = as_enum_list<Representation>("representations", v, parse_representation);
         },
         [](const Config& c) { return names_of(c.representations); }},
        {"baselines",
         [](Config& c, const Json& v, P) { c.baselines = as_enum_list<BaselineKind>("baselines", v, parse_baseline); },
         [](const Config& c) { return names_of(c.baselines); }},
        {"emit_representations",
         [](Config& c, const Json& v, P) {
             if (!v.is_boolean()) bad("emit_representations", "expected true or false");
             c.emit_representations = v.get<bool>();
         },
         [](const Config& c) { return Json(c.emit_representations); }},
    };
    return table;
}

const KeyHandler& handler_for(std::string_view key) {
    for (const auto& h : handlers()) {
        if (h.key == key) return h;
    }
    throw SchemaError("unknown config key '" + std::string(key) + "'");
}

}  // namespace

const std::vector<std::string_view>& config_keys() {
    static const std::vector<std::string_view> keys = [] {
        std::vector<std::string_view> out;
        for (const auto& h : handlers()) out.push_back(h.key);
        return out;
    }();
    return keys;
}

void Config::validate() const {
    try {
        split.validate();
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
    auto require = [](bool ok, const char* message) {
        if (!ok) throw SchemaError(message);
    };
    require(rename_threshold > 0.0 && rename_threshold <= 1.0, "rename_threshold must lie in (0, 1]");
    require(paths.max_path_length >= 1, "max_path_length must be positive");
    require(paths.max_contexts >= 1, "max_contexts must be positive");
    require(chrf.char_order >= 1, "chrf_order must be positive");
    require(chrf.beta > 0.0, "chrf_beta must be positive");
    require(bootstrap.n_resamples >= 1, "bootstrap_resamples must be positive");
    require(bootstrap.significance_level >= 0.5 && bootstrap.significance_level < 1.0,
            "significance_level must lie in [0.5, 1)");
    require(!metrics.empty(), "metrics must not be empty");
    require(!baselines.empty(), "baselines must not be empty");
}

std::vector<std::pair<std::string, std::filesystem::path>> Config::projects() const {
    std::map<std::string, std::filesystem::path> found;
    auto add = [&](const std::filesystem::path& repo) {
        const std::string name = repo.filename().empty() ? repo.parent_path().filename().string()
                                                         : repo.filename().string();
        if (!found.emplace(name, repo).second) throw SchemaError("duplicate project name '" + name + "'");
    };
    if (!workspace.empty()) {
        std::error_code ec;
        std::vector<std::filesystem::path> dirs;
        for (const auto& entry : std::filesystem::directory_iterator(workspace, ec)) {
            if (entry.is_directory() && !entry.path().filename().string().starts_with(".")) {
                dirs.push_back(entry.path());
            }
        }
        if (ec) throw SchemaError("cannot read workspace " + workspace.string() + ": " + ec.message());
        for (const auto& d : dirs) add(d);
    }
    for (const auto& r : repos) add(r);
    return {found.begin(), found.end()};
}

void apply_config_value(Config& config, std::string_view key, std::string_view json_value) {
    const auto& h = handler_for(key);
    Json value;
    try {
        value = Json::parse(json_value);
    } catch (const Json::parse_error& e) {
        bad(key, std::string("invalid JSON value: ") + e.what());
    }
    h.apply(config, value, {});
}

Config parse_config(std::string_view json_text, const std::filesystem::path& base_dir) {
    Json doc;
    try {
        doc = Json::parse(json_text);
    } catch (const Json::parse_error& e) {
        throw SchemaError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw SchemaError("config must be a JSON object");
    Config config;
    for (const auto& [key, value] : doc.items()) handler_for(key).apply(config, value, base_dir);
    config.validate();
    return config;
}

Config load_config(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw SchemaError("cannot read config " + file.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), file.parent_path());
}

std::string config_to_json(const Config& config) {
    Json out = Json::object();
    for (const auto& h : handlers()) out[std::string(h.key)] = h.dump(config);
    return out.dump(2);
}

}  // namespace namemine
