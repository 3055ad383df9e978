#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "namemine/process.hpp"

namespace namemine {

enum class ChangeKind { added, deleted, modified, renamed };

std::string_view to_string(ChangeKind kind);

/// One file-level change relative to the first parent. Blob ids are empty
/// on the side where the file does not exist.
struct FileChange {
    ChangeKind kind = ChangeKind::modified;
    std::string path;      // new path; the removed path for deletions
    std::string old_path;  // equal to path unless renamed
    std::string old_blob;
    std::string new_blob;

    bool operator==(const FileChange&) const = default;
};

struct CommitRecord {
    std::string sha;
    std::vector<std::string> parent_shas;
    std::int64_t author_time = 0;
    std::size_t order_index = 0;
    std::vector<FileChange> changed_files;
};

struct TreeEntry {
    std::string path;
    std::string blob;
};

/// Read-only access to a local repository through the git executable.
class GitRepository {
public:
    /// Throws RepositoryError(not_found) unless `root` is a work tree or bare
    /// repository in its own right (parent directories are not searched).
    explicit GitRepository(std::filesystem::path root);

    [[nodiscard]] const std::filesystem::path& root() const noexcept { return root_; }

    /// First-parent linearization of `branch` from root to tip with renames
    /// detected. An empty repository yields an empty list.
    [[nodiscard]] std::vector<CommitRecord> walk_history(const std::string& branch) const;

    /// Commit id that `rev` resolves to; throws branch_not_found.
    [[nodiscard]] std::string resolve(const std::string& rev) const;

    /// Every blob in the commit's tree, sorted by path.
    [[nodiscard]] std::vector<TreeEntry> list_tree(const std::string& commit) const;

    /// Contents of the given blobs, in request order, read in one batch.
    [[nodiscard]] std::vector<std::string> read_blobs(const std::vector<std::string>& blob_ids) const;

private:
    ProcessResult git(const std::vector<std::string>& args, std::string_view input = {}) const;
    std::vector<FileChange> diff_against_parent(const std::string& sha,
                                                const std::string* parent) const;

    std::filesystem::path root_;
};

std::vector<CommitRecord> walk_history(const std::filesystem::path& repo_path,
                                       const std::string& branch);

}  // namespace namemine
