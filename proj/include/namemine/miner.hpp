#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "namemine/analysis.hpp"
#include "namemine/error.hpp"
#include "namemine/git_repo.hpp"
#include "namemine/method.hpp"

namespace namemine {

enum class Execution { serial, parallel };

enum class LinkKind { method_rename, method_move, class_move_or_rename, file_rename };

std::string_view to_string(LinkKind kind);

struct RefactoringLink {
    LinkKind kind = LinkKind::method_rename;
    MethodKey from_key;
    MethodKey to_key;
    double similarity = 0.0;

    bool operator==(const RefactoringLink&) const = default;
};

/// A snapshot plus the name-independent views refactoring detection compares.
struct TrackedMethod {
    MethodSnapshot snapshot;
    std::string shape_hash;           // body hash with the method's own name masked
    std::vector<std::string> tokens;  // sorted token multiset of the masked text
};

TrackedMethod track_method(const ParsedMethod& method);

struct MethodDiff {
    std::vector<TrackedMethod> added;
    std::vector<TrackedMethod> deleted;
    std::vector<std::pair<TrackedMethod, TrackedMethod>> modified;  // (parent, child)
};

/// Key-wise comparison; every output is sorted by key.
MethodDiff diff_methods(std::vector<TrackedMethod> parent, std::vector<TrackedMethod> child);

/// Multiset Jaccard |a ∩ b| / |a ∪ b| over sorted token lists; 1 for two empty lists.
double token_jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b);

struct FileRename {
    std::string old_path;
    std::string new_path;
};

/// Greedy one-to-one matching of deleted to added methods. Exact shape-hash
/// matches go first, then same-signature pairs across renamed files, then any
/// pair; the last two need token_jaccard >= rename_threshold.
std::vector<RefactoringLink> detect_refactorings(const std::vector<TrackedMethod>& added,
                                                 const std::vector<TrackedMethod>& deleted,
                                                 const std::vector<FileRename>& file_renames,
                                                 double rename_threshold);

struct CommitChanges {
    MethodDiff diff;
    std::vector<RefactoringLink> links;
};

struct MethodHistory {
    std::string history_id;
    std::vector<MethodSnapshot> snapshots;
    std::vector<std::size_t> order_indices;  // parallel to snapshots
    std::vector<RefactoringLink> links;
    std::int64_t created_at = 0;  // author time of the creating commit
    std::optional<std::size_t> deleted_at;
};

/// Forward chaining over commits in order. Throws ConsistencyError when the
/// links of one commit are not a partial matching of its diff.
std::vector<MethodHistory> link_histories(const std::vector<CommitRecord>& commits,
                                          const std::vector<CommitChanges>& changes);

struct MethodCreationEvent {
    std::string history_id;
    MethodSnapshot snapshot;
    std::string commit_sha;
    std::int64_t author_time = 0;
    std::size_t order_index = 0;
};

/// One event per history, sorted by (order_index, file path, method name, key).
std::vector<MethodCreationEvent> extract_creations(const std::vector<MethodHistory>& histories);

struct SnapshotResult {
    std::vector<ParsedMethod> methods;  // by path, then declaration order
    std::vector<Diagnostic> warnings;
};

bool is_java_source(std::string_view path);

/// Every method of every Java file in the commit's tree. Files that fail to
/// parse are skipped with a warning.
SnapshotResult take_snapshot(const GitRepository& repo, const std::string& commit,
                             Execution execution = Execution::parallel);

struct MineOptions {
    double rename_threshold = 0.8;
    Execution execution = Execution::parallel;
};

struct MiningResult {
    std::vector<CommitRecord> commits;
    std::vector<CommitChanges> changes;
    std::vector<MethodHistory> histories;
    std::vector<MethodCreationEvent> events;
    std::vector<Diagnostic> warnings;
};

MiningResult mine_repository(const GitRepository& repo, const std::string& branch,
                             const MineOptions& options = {});

}  // namespace namemine
