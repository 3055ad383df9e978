#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace namemine::testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(std::string_view prefix = "namemine");
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    [[nodiscard]] const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

/// A Git repository with reproducible commits: fixed identity, and author
/// and committer dates one hour apart from a fixed epoch. The same sequence
/// of edits always yields the same commit ids.
class FixtureRepo {
public:
    static constexpr std::int64_t kEpoch = 1577836800;  // 2020-01-01T00:00:00Z

    /// `git init` in `dir` (created if missing) on `branch`.
    explicit FixtureRepo(std::filesystem::path dir, std::string branch = "main");

    void write(const std::string& path, std::string_view content);
    void remove(const std::string& path);
    void move(const std::string& from, const std::string& to);

    /// Stages everything and commits; returns the commit id.
    std::string commit(const std::string& message);

    /// Any other git command (checkout, merge, ...), dated like the next
    /// commit. Commits made this way advance the clock too when `commits` is set.
    std::string run(const std::vector<std::string>& args, bool commits = false);

    [[nodiscard]] const std::filesystem::path& root() const { return root_; }
    [[nodiscard]] const std::string& branch() const { return branch_; }
    [[nodiscard]] std::size_t commit_count() const { return commits_; }

private:
    std::string git(const std::vector<std::string>& args, std::int64_t time = kEpoch) const;

    std::filesystem::path root_;
    std::string branch_;
    std::size_t commits_ = 0;
};

}  // namespace namemine::testing
