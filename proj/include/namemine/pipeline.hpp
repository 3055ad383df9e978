#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "namemine/config.hpp"
#include "namemine/dataset.hpp"
#include "namemine/evaluation.hpp"
#include "namemine/jsonio.hpp"

namespace namemine {

/// Artifact locations under <output_dir>/<project>/.
struct ProjectPaths {
    std::filesystem::path dir;

    [[nodiscard]] std::filesystem::path events() const { return dir / "events.jsonl"; }
    [[nodiscard]] std::filesystem::path snapshot() const { return dir / "snapshot.jsonl"; }
    [[nodiscard]] std::filesystem::path mine_report() const { return dir / "mine_report.json"; }
    [[nodiscard]] std::filesystem::path split(const std::string& part) const { return dir / (part + ".jsonl"); }
    [[nodiscard]] std::filesystem::path report() const { return dir / "report.json"; }
    [[nodiscard]] std::filesystem::path predictions(const std::string& model) const {
        return dir / "predictions" / (model + ".jsonl");
    }
    [[nodiscard]] std::filesystem::path scores(const std::string& model) const {
        return dir / "scores" / (model + ".jsonl");
    }
    [[nodiscard]] std::filesystem::path aggregate(const std::string& model) const {
        return dir / "scores" / (model + ".aggregate.json");
    }
};

ProjectPaths project_paths(const Config& config, const std::string& project);

struct MineSummary {
    std::size_t commits = 0;
    std::size_t events = 0;
    std::string snapshot_sha;  // empty without events
    std::size_t snapshot_methods = 0;
};

/// Mines `repo`, picks the snapshot commit, and writes events, the snapshot
/// manifest, and mine_report.json. Throws RepositoryError, with kind `empty`
/// for a repository without commits.
MineSummary mine_project(const Config& config, const std::string& project, const std::filesystem::path& repo);

struct DatasetBuild {
    DatasetSplit split;
    std::size_t events = 0;
    std::size_t post_snapshot_events = 0;
    FilterCounts train_filter;
    FilterCounts validation_filter;
    FilterCounts test_filter;
};

/// Split, filter, mask, and dedup, in memory.
DatasetBuild build_dataset(const std::string& project, const std::vector<MethodCreationEvent>& events,
                           const std::vector<jsonio::ManifestEntry>& snapshot, std::int64_t snapshot_time,
                           const Config& config);

/// Reads the mine artifacts, builds the dataset, writes the three partitions
/// (unless rejected) and report.json.
DatasetBuild split_project(const Config& config, const std::string& project);

jsonio::Json dataset_report(const DatasetBuild& build);

std::vector<DatasetRecord> read_records(const std::filesystem::path& file);

/// Fits on train.jsonl and predicts every record of `part`.
std::vector<PredictionRecord> predict_records(BaselineKind kind, const std::vector<DatasetRecord>& train,
                                              const std::vector<DatasetRecord>& targets,
                                              Execution execution = Execution::parallel);

std::filesystem::path predict_project(const Config& config, const std::string& project, BaselineKind kind,
                                      const std::string& part = "test");

struct EvaluationResult {
    DatasetScores scores;
    std::filesystem::path scores_file;
    std::filesystem::path aggregate_file;
};

/// Scores a predictions file against a partition. Throws SchemaError.
EvaluationResult evaluate_project(const Config& config, const std::string& project, const std::string& model,
                                  const std::filesystem::path& predictions, const std::string& part = "test");

/// Groups per-sample score files by (project, model) and aligns by method id.
ScoreTable load_score_table(const std::vector<std::filesystem::path>& files);

/// All metrics of the config, pairs in (metric, model_a, model_b) order.
std::vector<PairComparison> compare_scores(const ScoreTable& table, const Config& config,
                                           Execution execution = Execution::parallel);

struct ProjectOutcome {
    std::string project;
    int exit_code = 0;  // per-project: 0, 2, 3, or 4
    std::string message;
};

/// mine -> split -> predict -> evaluate for every project, then compare.
/// Projects run concurrently up to config.jobs.
std::vector<ProjectOutcome> run_pipeline(const Config& config);

}  // namespace namemine
