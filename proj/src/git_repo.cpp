#include "namemine/git_repo.hpp"

#include <algorithm>
#include <charconv>
#include <exception>

#include "namemine/error.hpp"

namespace namemine {

namespace {

constexpr std::string_view kNullOid = "0000000000000000000000000000000000000000";

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find(sep, start);
        if (end == std::string_view::npos) end = text.size();
        parts.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return parts;
}

std::string trimmed(std::string_view s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
    return std::string(s);
}

std::string blob_or_empty(std::string_view oid) {
    return oid == kNullOid ? std::string() : std::string(oid);
}

}  // namespace

std::string_view to_string(ChangeKind kind) {
    switch (kind) {
        case ChangeKind::added: return "added";
        case ChangeKind::deleted: return "deleted";
        case ChangeKind::modified: return "modified";
        case ChangeKind::renamed: return "renamed";
    }
    return "unknown";
}

GitRepository::GitRepository(std::filesystem::path root) {
    std::error_code ec;
    root_ = std::filesystem::absolute(root, ec);
    if (ec || !std::filesystem::is_directory(root_)) {
        throw RepositoryError(RepositoryError::Kind::not_found,
                              "repository not found: " + root.string());
    }
    auto probe = git({"rev-parse", "--git-dir"});
    if (probe.exit_code != 0) {
        throw RepositoryError(RepositoryError::Kind::not_found,
                              "not a git repository: " + root_.string());
    }
}

ProcessResult GitRepository::git(const std::vector<std::string>& args, std::string_view input) const {
    std::vector<std::string> argv{"git", "-c", "safe.directory=*", "-c", "core.quotepath=off",
                                  "-C", root_.string()};
    argv.insert(argv.end(), args.begin(), args.end());
    // The ceiling keeps git from resolving a parent repository when root_ is
    // a plain directory inside one.
    return run_process(argv,
                       {{"GIT_CEILING_DIRECTORIES", root_.parent_path().string()},
                        {"LC_ALL", "C"},
                        {"GIT_CONFIG_NOSYSTEM", "1"},
                        {"GIT_TERMINAL_PROMPT", "0"}},
                       input);
}

std::string GitRepository::resolve(const std::string& rev) const {
    auto r = git({"rev-parse", "--verify", "--quiet", "--end-of-options", rev + "^{commit}"});
    if (r.exit_code != 0) {
        throw RepositoryError(RepositoryError::Kind::branch_not_found,
                              "branch not found: " + rev + " in " + root_.string());
    }
    return trimmed(r.out);
}

std::vector<CommitRecord> GitRepository::walk_history(const std::string& branch) const {
    auto head = git({"rev-parse", "--verify", "--quiet", "--end-of-options", branch + "^{commit}"});
    if (head.exit_code != 0) {
        auto any = git({"rev-list", "-n", "1", "--all"});
        if (any.exit_code == 0 && trimmed(any.out).empty()) return {};
        throw RepositoryError(RepositoryError::Kind::branch_not_found,
                              "branch not found: " + branch + " in " + root_.string());
    }
    const std::string tip = trimmed(head.out);

    auto log = git({"log", "--first-parent", "--reverse", "--format=%H%x09%P%x09%at", tip});
    if (log.exit_code != 0) {
        throw RepositoryError(RepositoryError::Kind::command_failed, "git log failed: " + log.err);
    }

    std::vector<CommitRecord> commits;
    for (auto line : split(log.out, '\n')) {
        if (line.empty()) continue;
        auto fields = split(line, '\t');
        if (fields.size() < 3) {
            throw RepositoryError(RepositoryError::Kind::command_failed,
                                  "unexpected git log line: " + std::string(line));
        }
        CommitRecord c;
        c.sha = std::string(fields[0]);
        for (auto p : split(fields[1], ' ')) {
            if (!p.empty()) c.parent_shas.emplace_back(p);
        }
        std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(), c.author_time);
        c.order_index = commits.size();
        commits.push_back(std::move(c));
    }

    // One git process per commit; spawning dominates, so fan out.
    std::vector<std::exception_ptr> failures(commits.size());
    const auto n = static_cast<std::ptrdiff_t>(commits.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        auto& c = commits[static_cast<std::size_t>(i)];
        try {
            // First parent of a first-parent walk is the previous commit.
            const std::string* parent = c.parent_shas.empty() ? nullptr : &c.parent_shas.front();
            c.changed_files = diff_against_parent(c.sha, parent);
        } catch (...) {
            failures[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& f : failures) {
        if (f) std::rethrow_exception(f);
    }
    return commits;
}

std::vector<FileChange> GitRepository::diff_against_parent(const std::string& sha,
                                                           const std::string* parent) const {
    std::vector<std::string> args{"diff-tree", "-r", "-M", "--raw", "-z", "--no-commit-id"};
    if (parent) {
        args.push_back(*parent);
    } else {
        args.push_back("--root");
    }
    args.push_back(sha);
    auto r = git(args);
    if (r.exit_code != 0) {
        throw RepositoryError(RepositoryError::Kind::unreadable_object,
                              "cannot diff commit " + sha + ": " + trimmed(r.err));
    }

    std::vector<FileChange> changes;
    auto fields = split(r.out, '\0');
    for (std::size_t i = 0; i < fields.size();) {
        std::string_view meta = fields[i++];
        if (meta.empty()) continue;
        if (meta.front() != ':') {
            throw RepositoryError(RepositoryError::Kind::command_failed,
                                  "unexpected diff-tree output for " + sha);
        }
        // ":old_mode new_mode old_oid new_oid status"
        auto parts = split(meta.substr(1), ' ');
        if (parts.size() < 5 || i >= fields.size()) {
            throw RepositoryError(RepositoryError::Kind::command_failed,
                                  "truncated diff-tree output for " + sha);
        }
        const char status = parts[4].front();
        FileChange change;
        change.old_blob = blob_or_empty(parts[2]);
        change.new_blob = blob_or_empty(parts[3]);
        if (status == 'R' || status == 'C') {
            if (i + 1 >= fields.size()) {
                throw RepositoryError(RepositoryError::Kind::command_failed,
                                      "truncated rename entry for " + sha);
            }
            change.old_path = std::string(fields[i++]);
            change.path = std::string(fields[i++]);
            change.kind = status == 'R' ? ChangeKind::renamed : ChangeKind::added;
            if (status == 'C') {
                change.old_path = change.path;
                change.old_blob.clear();
            }
        } else {
            change.path = std::string(fields[i++]);
            change.old_path = change.path;
            switch (status) {
                case 'A': change.kind = ChangeKind::added; break;
                case 'D': change.kind = ChangeKind::deleted; break;
                default: change.kind = ChangeKind::modified; break;
            }
        }
        // Gitlinks (submodules) are not blobs.
        if (parts[0] == "160000" || parts[1] == "160000") continue;
        changes.push_back(std::move(change));
    }
    std::sort(changes.begin(), changes.end(),
              [](const FileChange& a, const FileChange& b) { return a.path < b.path; });
    return changes;
}

std::vector<TreeEntry> GitRepository::list_tree(const std::string& commit) const {
    auto r = git({"ls-tree", "-r", "-z", "--full-tree", commit});
    if (r.exit_code != 0) {
        throw RepositoryError(RepositoryError::Kind::unreadable_object,
                              "cannot list tree of " + commit + ": " + trimmed(r.err));
    }
    std::vector<TreeEntry> entries;
    for (auto record : split(r.out, '\0')) {
        // "mode type oid\tpath"
        const auto tab = record.find('\t');
        if (tab == std::string_view::npos) continue;
        auto parts = split(record.substr(0, tab), ' ');
        if (parts.size() != 3 || parts[1] != "blob") continue;
        entries.push_back({std::string(record.substr(tab + 1)), std::string(parts[2])});
    }
    std::sort(entries.begin(), entries.end(),
              [](const TreeEntry& a, const TreeEntry& b) { return a.path < b.path; });
    return entries;
}

std::vector<std::string> GitRepository::read_blobs(const std::vector<std::string>& blob_ids) const {
    if (blob_ids.empty()) return {};
    std::string request;
    for (const auto& id : blob_ids) {
        request += id;
        request += '\n';
    }
    auto r = git({"cat-file", "--batch"}, request);
    if (r.exit_code != 0) {
        throw RepositoryError(RepositoryError::Kind::command_failed,
                              "git cat-file failed: " + trimmed(r.err));
    }

    std::vector<std::string> blobs;
    blobs.reserve(blob_ids.size());
    std::size_t pos = 0;
    for (const auto& id : blob_ids) {
        const auto eol = r.out.find('\n', pos);
        if (eol == std::string::npos) {
            throw RepositoryError(RepositoryError::Kind::unreadable_object, "unreadable object " + id);
        }
        auto header = split(std::string_view(r.out).substr(pos, eol - pos), ' ');
        if (header.size() != 3) {
            throw RepositoryError(RepositoryError::Kind::unreadable_object, "unreadable object " + id);
        }
        std::size_t size = 0;
        std::from_chars(header[2].data(), header[2].data() + header[2].size(), size);
        if (eol + 1 + size > r.out.size()) {
            throw RepositoryError(RepositoryError::Kind::unreadable_object, "truncated object " + id);
        }
        blobs.push_back(r.out.substr(eol + 1, size));
        pos = eol + 1 + size + 1;
    }
    return blobs;
}

std::vector<CommitRecord> walk_history(const std::filesystem::path& repo_path,
                                       const std::string& branch) {
    return GitRepository(repo_path).walk_history(branch);
}

}  // namespace namemine
