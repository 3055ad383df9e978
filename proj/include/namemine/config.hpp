#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "namemine/baselines.hpp"
#include "namemine/dataset.hpp"
#include "namemine/evaluation.hpp"
#include "namemine/representations.hpp"

namespace namemine {

struct Config {
    std::filesystem::path workspace;           // every subdirectory is a project repository
    std::vector<std::filesystem::path> repos;  // extra repositories
    std::string branch = "HEAD";
    std::filesystem::path output_dir = "out";
    std::size_t jobs = 0;  // 0: one per hardware thread

    SplitSpec split;
    double rename_threshold = 0.8;
    PathExtractionParams paths;
    ChrfParams chrf;
    BootstrapParams bootstrap;  // metric is taken from `metrics`
    std::vector<Metric> metrics{Metric::f1, Metric::chrf};
    std::vector<Representation> representations{Representation::tokens, Representation::ast,
                                                Representation::path_contexts};
    std::vector<BaselineKind> baselines{BaselineKind::most_frequent, BaselineKind::nearest_neighbor};
    bool emit_representations = false;

    /// Throws SchemaError when a value is out of range.
    void validate() const;

    /// Project name -> repository path, sorted by name. Throws SchemaError on
    /// duplicate project names.
    [[nodiscard]] std::vector<std::pair<std::string, std::filesystem::path>> projects() const;
};

/// Keys accepted in a configuration document, in documentation order.
const std::vector<std::string_view>& config_keys();

/// Applies one key of a JSON document (as text) to `config`. Throws SchemaError
/// for unknown keys, wrong types, and out-of-range values.
void apply_config_value(Config& config, std::string_view key, std::string_view json_value);

/// Flat JSON object; unknown keys are rejected. Relative paths resolve against
/// the file's directory. Throws SchemaError.
Config load_config(const std::filesystem::path& file);
Config parse_config(std::string_view json_text, const std::filesystem::path& base_dir = {});

/// The effective configuration as a JSON object with every key.
std::string config_to_json(const Config& config);

}  // namespace namemine
