#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "namemine/analysis.hpp"
#include "namemine/miner.hpp"

namespace namemine {

inline constexpr std::string_view kUnknownSubtoken = "<UNK>";

/// Drops <UNK>, then repeated sub-tokens (first occurrence kept).
SubTokenSequence clean_prediction(const SubTokenSequence& tokens);

/// Drops repeated sub-tokens only.
SubTokenSequence clean_reference(const SubTokenSequence& tokens);

struct PrecisionRecall {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

/// Set precision/recall over cleaned (duplicate-free) sequences.
PrecisionRecall subtoken_f1(const SubTokenSequence& pred, const SubTokenSequence& ref);

struct ChrfParams {
    int char_order = 6;
    double beta = 2.0;
};

/// Character n-gram F-beta over the space-joined sequences, in [0, 1].
/// N-grams are taken over UTF-8 code points, spaces included. Precision and
/// recall are averaged over the orders both sides have n-grams for.
double chrf(const SubTokenSequence& pred, const SubTokenSequence& ref, const ChrfParams& params = {});

/// Same, on raw strings.
double chrf_strings(std::string_view hypothesis, std::string_view reference, const ChrfParams& params = {});

struct PredictionRecord {
    std::string method_id;
    SubTokenSequence predicted_subtokens;
};

struct ReferenceRecord {
    std::string method_id;
    SubTokenSequence name_subtokens;
};

struct SampleScore {
    std::string method_id;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double chrf = 0.0;
    bool missing = false;  // no prediction given; all metrics 0

    bool operator==(const SampleScore&) const = default;
};

SampleScore score_sample(const std::string& method_id, const SubTokenSequence& predicted,
                         const SubTokenSequence& reference, const ChrfParams& params = {});

struct AggregateScore {
    std::size_t n_samples = 0;
    std::size_t n_missing = 0;
    double mean_f1 = 0.0;
    double mean_chrf = 0.0;
};

struct DatasetScores {
    std::vector<SampleScore> samples;  // reference order
    AggregateScore aggregate;
    std::vector<std::string> missing_ids;
    std::vector<std::string> empty_reference_ids;  // scored 0
};

/// Throws SchemaError naming unknown or duplicated prediction ids.
DatasetScores score_dataset(const std::vector<PredictionRecord>& predictions,
                            const std::vector<ReferenceRecord>& references, const ChrfParams& params = {});

enum class Metric { f1, chrf };

std::string_view to_string(Metric metric);
std::optional<Metric> parse_metric(std::string_view name);
double metric_value(const SampleScore& score, Metric metric);

struct BootstrapParams {
    Metric metric = Metric::f1;
    std::size_t n_resamples = 10000;
    std::uint64_t seed = 0;
    double significance_level = 0.95;
};

struct BootstrapComparison {
    std::string model_a;
    std::string model_b;
    Metric metric = Metric::f1;
    std::size_t n_resamples = 0;
    std::uint64_t seed = 0;
    std::size_t wins_a = 0;
    std::size_t wins_b = 0;
    std::size_t ties = 0;
    double win_prob_a = 0.5;
    double win_prob_b = 0.5;
    bool significant = false;
    std::optional<std::string> winner;
};

/// Resample r draws its indices from derive_stream(seed, r), so the result
/// does not depend on the execution mode. Throws std::invalid_argument on
/// empty or misaligned inputs.
BootstrapComparison paired_bootstrap(const std::vector<SampleScore>& scores_a,
                                     const std::vector<SampleScore>& scores_b, const BootstrapParams& params,
                                     Execution execution = Execution::parallel, std::string model_a = "A",
                                     std::string model_b = "B");

struct MatrixCell {
    std::size_t wins_a = 0;
    std::size_t wins_b = 0;
    std::size_t ties = 0;
};

struct PairComparison {
    std::string model_a;
    std::string model_b;
    Metric metric = Metric::f1;
    std::vector<std::pair<std::string, BootstrapComparison>> per_project;
    MatrixCell cell;
};

/// project -> model -> aligned sample scores.
using ScoreTable = std::map<std::string, std::map<std::string, std::vector<SampleScore>>>;

/// Every ordered model pair (self pairs included) over the projects that
/// have scores for both models.
std::vector<PairComparison> comparison_matrix(const ScoreTable& table, const BootstrapParams& params,
                                              Execution execution = Execution::parallel);

}  // namespace namemine
