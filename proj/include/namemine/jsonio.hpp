#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "namemine/dataset.hpp"
#include "namemine/evaluation.hpp"
#include "namemine/miner.hpp"
#include "namemine/representations.hpp"

namespace namemine::jsonio {

using Json = nlohmann::ordered_json;

/// Parses each nonempty line; SchemaError names the file and line.
std::vector<Json> read_jsonl(const std::filesystem::path& file);
Json read_json(const std::filesystem::path& file);

/// Writes through a temporary file and renames, creating parent directories.
void write_text(const std::filesystem::path& file, const std::string& text);
void write_jsonl(const std::filesystem::path& file, const std::vector<Json>& lines);
void write_json(const std::filesystem::path& file, const Json& value);

Json diagnostics(const std::vector<Diagnostic>& warnings);

Json event_to_json(const MethodCreationEvent& event);
MethodCreationEvent event_from_json(const Json& j);

/// Snapshot manifest line: a training-side method with its history id.
Json snapshot_method_to_json(const std::string& id, std::size_t created_order_index,
                             const MethodSnapshot& snapshot);
struct ManifestEntry {
    std::string id;
    std::size_t created_order_index = 0;
    MethodSnapshot snapshot;
};
ManifestEntry snapshot_method_from_json(const Json& j);

struct RecordExtras {
    const std::vector<Representation>* representations = nullptr;  // emitted when set
    PathExtractionParams paths;
};

Json record_to_json(const DatasetRecord& record, const RecordExtras& extras = {});
DatasetRecord record_from_json(const Json& j);

Json path_contexts_to_json(const std::vector<PathContext>& contexts);

Json prediction_to_json(const PredictionRecord& p);
PredictionRecord prediction_from_json(const Json& j);

Json sample_score_to_json(const std::string& project, const std::string& model, const SampleScore& s);
struct LabeledScore {
    std::string project;
    std::string model;
    SampleScore score;
};
LabeledScore sample_score_from_json(const Json& j);

Json dedup_report_to_json(const DedupReport& report);
Json bootstrap_to_json(const std::string& project, const BootstrapComparison& c);
Json comparison_to_json(const std::vector<PairComparison>& pairs);

}  // namespace namemine::jsonio
