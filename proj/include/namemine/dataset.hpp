#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "namemine/analysis.hpp"
#include "namemine/error.hpp"
#include "namemine/miner.hpp"

namespace namemine {

struct SplitSpec {
    double snapshot_ratio = 0.8;
    std::size_t min_test_samples = 20;
    std::size_t large_project_threshold = 100;

    /// Throws std::invalid_argument when out of range.
    void validate() const;
};

enum class SizeClass { large, small, rejected };

std::string_view to_string(SizeClass size_class);

struct ChronologicalSplit {
    std::optional<std::string> rejection;
    std::size_t snapshot_rank = 0;  // 1-based rank of the event that fixes the snapshot
    std::string snapshot_sha;
    std::size_t snapshot_order_index = 0;
    std::vector<MethodCreationEvent> validation;
    std::vector<MethodCreationEvent> test;
};

/// Snapshot = commit of the ceil(ratio * N)-th event. Later events are cut
/// into validation and test at the commit boundary nearest the midpoint,
/// ties going to the larger validation set.
ChronologicalSplit chronological_split(std::vector<MethodCreationEvent> events, const SplitSpec& spec);

/// Parses a mined snapshot's body text back into a method.
ParsedMethod parse_snapshot(const MethodSnapshot& snapshot);

struct DatasetRecord {
    std::string id;
    std::string project;
    std::string split;
    std::string commit_sha;
    std::int64_t author_time = 0;
    std::string file_path;
    std::string class_name;
    std::string name;
    SubTokenSequence name_subtokens;
    std::string masked_source;

    // Not serialized.
    std::size_t order_index = 0;  // creation commit
    std::uint32_t start_line = 0;
    std::string body_hash;        // of the unmasked method, comments and whitespace removed
    java::SyntaxNode masked_tree;
};

struct Provenance {
    std::string id;
    std::string project;
    std::string split;
    std::string commit_sha;
    std::int64_t author_time = 0;
    std::size_t order_index = 0;
};

struct PreparedRecord {
    std::optional<DatasetRecord> record;
    std::optional<RejectionReason> rejected;
};

/// Comment stripping, filtering, and masking for one method.
PreparedRecord prepare_record(const ParsedMethod& method, Provenance provenance);

/// A snapshot method with the id of its history.
struct SnapshotMethod {
    std::string id;
    ParsedMethod method;
    std::size_t created_order_index = 0;
};

struct FilterCounts {
    std::map<std::string, std::size_t> rejected;  // by reason
    std::size_t kept = 0;
};

/// One record per kept method, ordered by (path, name, start line, id).
std::vector<DatasetRecord> build_training(const std::vector<SnapshotMethod>& snapshot,
                                          const std::string& project, const std::string& snapshot_sha,
                                          std::int64_t snapshot_time, FilterCounts* counts = nullptr);

struct DedupReport {
    std::vector<std::string> removed;  // record ids, in removal order
};

struct DatasetSplit {
    std::string project;
    std::string snapshot_sha;
    std::size_t snapshot_order_index = 0;
    std::vector<DatasetRecord> train;
    std::vector<DatasetRecord> validation;
    std::vector<DatasetRecord> test;
    SizeClass size_class = SizeClass::rejected;
    std::optional<std::string> rejection_reason;
    DedupReport textual;
    std::vector<std::pair<std::string, DedupReport>> per_representation;
    std::vector<Diagnostic> warnings;
};

/// Drops validation/test records whose body hash equals a training record's.
DedupReport dedup_textual(DatasetSplit& split);

/// Fingerprint of a record, or nullopt when the representation cannot be built.
using FingerprintFn = std::function<std::optional<std::string>(const DatasetRecord&)>;

/// Drops validation/test records sharing (name, fingerprint) with a training
/// record. Records without a fingerprint are kept and reported as warnings.
DedupReport dedup_representation(DatasetSplit& split, const std::string& representation,
                                 const FingerprintFn& fingerprint);

SizeClass validate_project(const DatasetSplit& split, const SplitSpec& spec);

}  // namespace namemine
