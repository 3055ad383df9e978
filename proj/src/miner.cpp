#include "namemine/miner.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <set>
#include <tuple>

#include "namemine/hash.hpp"
#include "namemine/java/lexer.hpp"

namespace namemine {

namespace {

struct Candidate {
    double similarity;
    std::size_t deleted;
    std::size_t added;
};

LinkKind classify(const MethodKey& from, const MethodKey& to) {
    const bool same_signature = from.method_name == to.method_name && from.param_types == to.param_types;
    if (same_signature) {
        return from.class_name == to.class_name ? LinkKind::file_rename : LinkKind::class_move_or_rename;
    }
    if (from.file_path == to.file_path && from.class_name == to.class_name) return LinkKind::method_rename;
    return LinkKind::method_move;
}

// Takes candidates in (similarity desc, from_key, to_key) order while both
// ends are still free.
void greedy_take(std::vector<Candidate> candidates, const std::vector<TrackedMethod>& deleted,
                 const std::vector<TrackedMethod>& added, std::vector<bool>& deleted_used,
                 std::vector<bool>& added_used, std::vector<RefactoringLink>& links) {
    std::sort(candidates.begin(), candidates.end(), [&](const Candidate& a, const Candidate& b) {
        if (a.similarity != b.similarity) return a.similarity > b.similarity;
        const auto& ad = deleted[a.deleted].snapshot.key;
        const auto& bd = deleted[b.deleted].snapshot.key;
        if (ad != bd) return ad < bd;
        return added[a.added].snapshot.key < added[b.added].snapshot.key;
    });
    for (const auto& c : candidates) {
        if (deleted_used[c.deleted] || added_used[c.added]) continue;
        deleted_used[c.deleted] = true;
        added_used[c.added] = true;
        const auto& from = deleted[c.deleted].snapshot.key;
        const auto& to = added[c.added].snapshot.key;
        links.push_back({classify(from, to), from, to, c.similarity});
    }
}

std::string history_id_for(const std::string& commit_sha, const MethodKey& key) {
    return sha256_hex(commit_sha + "\n" + key.to_string()).substr(0, 16);
}

struct ParsedFile {
    std::vector<TrackedMethod> methods;
    std::vector<Diagnostic> warnings;
};

ParsedFile parse_tracked(const std::string& text, const std::string& path) {
    ParsedFile out;
    auto parsed = parse_methods(text, path);
    out.warnings = std::move(parsed.warnings);
    if (parsed.fatal) {
        out.warnings.push_back({path, 0, "skipped unparseable file"});
        return out;
    }
    out.methods.reserve(parsed.methods.size());
    for (const auto& m : parsed.methods) out.methods.push_back(track_method(m));
    return out;
}

template <typename F>
void for_each_index(std::size_t n, Execution execution, F&& body) {
    std::vector<std::exception_ptr> failures(n);
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic) if (execution == Execution::parallel)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            failures[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& f : failures) {
        if (f) std::rethrow_exception(f);
    }
}

}  // namespace

std::string_view to_string(LinkKind kind) {
    switch (kind) {
        case LinkKind::method_rename: return "method_rename";
        case LinkKind::method_move: return "method_move";
        case LinkKind::class_move_or_rename: return "class_move_or_rename";
        case LinkKind::file_rename: return "file_rename";
    }
    return "unknown";
}

TrackedMethod track_method(const ParsedMethod& method) {
    TrackedMethod t;
    t.snapshot = method.snapshot;
    const std::string masked = mask_recursion_text(method);
    t.shape_hash = body_hash(masked);
    try {
        for (const auto& tok : java::lex(masked).tokens) t.tokens.emplace_back(tok.text);
    } catch (const java::ParseError&) {
        t.tokens.clear();
    }
    std::sort(t.tokens.begin(), t.tokens.end());
    return t;
}

MethodDiff diff_methods(std::vector<TrackedMethod> parent, std::vector<TrackedMethod> child) {
    auto by_key = [](const TrackedMethod& a, const TrackedMethod& b) {
        return a.snapshot.key < b.snapshot.key;
    };
    std::sort(parent.begin(), parent.end(), by_key);
    std::sort(child.begin(), child.end(), by_key);

    MethodDiff diff;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < parent.size() || j < child.size()) {
        if (j == child.size() || (i < parent.size() && parent[i].snapshot.key < child[j].snapshot.key)) {
            diff.deleted.push_back(std::move(parent[i++]));
        } else if (i == parent.size() || child[j].snapshot.key < parent[i].snapshot.key) {
            diff.added.push_back(std::move(child[j++]));
        } else {
            if (parent[i].snapshot.body_hash != child[j].snapshot.body_hash) {
                diff.modified.emplace_back(std::move(parent[i]), std::move(child[j]));
            }
            ++i;
            ++j;
        }
    }
    return diff;
}

double token_jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a.empty() && b.empty()) return 1.0;
    std::size_t common = 0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() && j < b.size()) {
        const int c = a[i].compare(b[j]);
        if (c == 0) {
            ++common;
            ++i;
            ++j;
        } else if (c < 0) {
            ++i;
        } else {
            ++j;
        }
    }
    return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

std::vector<RefactoringLink> detect_refactorings(const std::vector<TrackedMethod>& added,
                                                 const std::vector<TrackedMethod>& deleted,
                                                 const std::vector<FileRename>& file_renames,
                                                 double rename_threshold) {
    std::vector<RefactoringLink> links;
    if (added.empty() || deleted.empty()) return links;
    std::vector<bool> deleted_used(deleted.size(), false);
    std::vector<bool> added_used(added.size(), false);

    std::vector<Candidate> exact;
    for (std::size_t d = 0; d < deleted.size(); ++d) {
        for (std::size_t a = 0; a < added.size(); ++a) {
            if (deleted[d].shape_hash == added[a].shape_hash) exact.push_back({1.0, d, a});
        }
    }
    greedy_take(std::move(exact), deleted, added, deleted_used, added_used, links);

    std::set<std::pair<std::string, std::string>> renamed;
    for (const auto& r : file_renames) renamed.emplace(r.old_path, r.new_path);

    std::vector<Candidate> structural;
    std::vector<Candidate> fuzzy;
    for (std::size_t d = 0; d < deleted.size(); ++d) {
        if (deleted_used[d]) continue;
        for (std::size_t a = 0; a < added.size(); ++a) {
            if (added_used[a]) continue;
            const double sim = token_jaccard(deleted[d].tokens, added[a].tokens);
            if (sim < rename_threshold) continue;
            const auto& from = deleted[d].snapshot.key;
            const auto& to = added[a].snapshot.key;
            const bool follows_file = renamed.contains({from.file_path, to.file_path}) &&
                                      from.method_name == to.method_name &&
                                      from.param_types == to.param_types &&
                                      from.class_simple_name() == to.class_simple_name();
            (follows_file ? structural : fuzzy).push_back({sim, d, a});
        }
    }
    greedy_take(std::move(structural), deleted, added, deleted_used, added_used, links);
    greedy_take(std::move(fuzzy), deleted, added, deleted_used, added_used, links);
    return links;
}

std::vector<MethodHistory> link_histories(const std::vector<CommitRecord>& commits,
                                          const std::vector<CommitChanges>& changes) {
    if (commits.size() != changes.size()) {
        throw ConsistencyError("link_histories: one change set per commit required");
    }
    std::vector<MethodHistory> histories;
    std::map<MethodKey, std::size_t> live;

    for (std::size_t i = 0; i < commits.size(); ++i) {
        const auto& commit = commits[i];
        const auto& diff = changes[i].diff;
        const auto& links = changes[i].links;
        auto fail = [&](const std::string& why) {
            throw ConsistencyError("commit " + commit.sha + ": " + why);
        };

        std::map<MethodKey, const TrackedMethod*> added_by_key;
        for (const auto& a : diff.added) added_by_key.emplace(a.snapshot.key, &a);
        std::set<MethodKey> deleted_keys;
        for (const auto& d : diff.deleted) deleted_keys.insert(d.snapshot.key);

        std::map<MethodKey, const RefactoringLink*> by_from;
        std::set<MethodKey> link_targets;
        for (const auto& link : links) {
            if (!deleted_keys.contains(link.from_key)) fail("link source not deleted: " + link.from_key.to_string());
            if (!added_by_key.contains(link.to_key)) fail("link target not added: " + link.to_key.to_string());
            if (!by_from.emplace(link.from_key, &link).second) fail("two links from " + link.from_key.to_string());
            if (!link_targets.insert(link.to_key).second) fail("two incoming links to " + link.to_key.to_string());
        }

        for (const auto& [before, after] : diff.modified) {
            auto it = live.find(after.snapshot.key);
            if (it == live.end()) fail("modified method without history: " + after.snapshot.key.to_string());
            histories[it->second].snapshots.push_back(after.snapshot);
            histories[it->second].order_indices.push_back(i);
        }

        // Removals first so a link may reuse a key freed in the same commit.
        std::vector<std::pair<const RefactoringLink*, std::size_t>> moving;
        for (const auto& d : diff.deleted) {
            auto it = live.find(d.snapshot.key);
            if (it == live.end()) fail("deleted method without history: " + d.snapshot.key.to_string());
            const std::size_t h = it->second;
            live.erase(it);
            if (auto link = by_from.find(d.snapshot.key); link != by_from.end()) {
                moving.emplace_back(link->second, h);
            } else {
                histories[h].deleted_at = i;
            }
        }
        for (const auto& [link, h] : moving) {
            const TrackedMethod* target = added_by_key.at(link->to_key);
            if (!live.emplace(link->to_key, h).second) fail("link target already live: " + link->to_key.to_string());
            histories[h].snapshots.push_back(target->snapshot);
            histories[h].order_indices.push_back(i);
            histories[h].links.push_back(*link);
        }
        for (const auto& a : diff.added) {
            if (link_targets.contains(a.snapshot.key)) continue;
            if (live.contains(a.snapshot.key)) fail("added method already live: " + a.snapshot.key.to_string());
            MethodHistory h;
            h.history_id = history_id_for(commit.sha, a.snapshot.key);
            h.snapshots.push_back(a.snapshot);
            h.order_indices.push_back(i);
            h.created_at = commit.author_time;
            live.emplace(a.snapshot.key, histories.size());
            histories.push_back(std::move(h));
        }
    }
    return histories;
}

std::vector<MethodCreationEvent> extract_creations(const std::vector<MethodHistory>& histories) {
    std::vector<MethodCreationEvent> events;
    events.reserve(histories.size());
    for (const auto& h : histories) {
        if (h.snapshots.empty()) continue;
        const auto& first = h.snapshots.front();
        events.push_back({h.history_id, first, first.commit_sha, h.created_at, h.order_indices.front()});
    }
    std::sort(events.begin(), events.end(), [](const MethodCreationEvent& a, const MethodCreationEvent& b) {
        const auto& ka = a.snapshot.key;
        const auto& kb = b.snapshot.key;
        return std::tie(a.order_index, ka.file_path, ka.method_name, ka) <
               std::tie(b.order_index, kb.file_path, kb.method_name, kb);
    });
    return events;
}

bool is_java_source(std::string_view path) { return path.ends_with(".java"); }

SnapshotResult take_snapshot(const GitRepository& repo, const std::string& commit, Execution execution) {
    const std::string sha = repo.resolve(commit);
    std::vector<TreeEntry> files;
    for (auto& e : repo.list_tree(sha)) {
        if (is_java_source(e.path)) files.push_back(std::move(e));
    }
    std::vector<std::string> ids;
    ids.reserve(files.size());
    for (const auto& f : files) ids.push_back(f.blob);
    const auto contents = repo.read_blobs(ids);

    std::vector<FileParseResult> parsed(files.size());
    for_each_index(files.size(), execution,
                   [&](std::size_t i) { parsed[i] = parse_methods(contents[i], files[i].path); });

    SnapshotResult result;
    for (std::size_t i = 0; i < files.size(); ++i) {
        auto& p = parsed[i];
        for (auto& w : p.warnings) result.warnings.push_back(std::move(w));
        if (p.fatal) {
            result.warnings.push_back({files[i].path, 0, "skipped unparseable file"});
            continue;
        }
        for (auto& m : p.methods) {
            m.snapshot.commit_sha = sha;
            result.methods.push_back(std::move(m));
        }
    }
    return result;
}

MiningResult mine_repository(const GitRepository& repo, const std::string& branch,
                             const MineOptions& options) {
    MiningResult result;
    result.commits = repo.walk_history(branch);
    const auto& commits = result.commits;

    // Each (path, blob) is parsed once, however many commits touch it.
    std::map<std::pair<std::string, std::string>, std::size_t> file_index;
    std::vector<std::pair<std::string, std::string>> files;
    auto note = [&](const std::string& path, const std::string& blob) {
        if (blob.empty() || !is_java_source(path)) return;
        if (file_index.emplace(std::pair{path, blob}, files.size()).second) files.emplace_back(path, blob);
    };
    for (const auto& c : commits) {
        for (const auto& f : c.changed_files) {
            if (f.kind != ChangeKind::added) note(f.old_path, f.old_blob);
            if (f.kind != ChangeKind::deleted) note(f.path, f.new_blob);
        }
    }
    std::vector<std::string> ids;
    ids.reserve(files.size());
    for (const auto& f : files) ids.push_back(f.second);
    const auto contents = repo.read_blobs(ids);

    std::vector<ParsedFile> parsed(files.size());
    for_each_index(files.size(), options.execution,
                   [&](std::size_t i) { parsed[i] = parse_tracked(contents[i], files[i].first); });

    auto methods_of = [&](const std::string& path, const std::string& blob, const std::string& sha,
                          std::vector<TrackedMethod>& out) {
        if (blob.empty() || !is_java_source(path)) return;
        for (auto m : parsed[file_index.at({path, blob})].methods) {
            m.snapshot.commit_sha = sha;
            out.push_back(std::move(m));
        }
    };

    result.changes.resize(commits.size());
    for_each_index(commits.size(), options.execution, [&](std::size_t i) {
        const auto& c = commits[i];
        const std::string parent_sha = c.parent_shas.empty() ? std::string() : c.parent_shas.front();
        std::vector<TrackedMethod> before;
        std::vector<TrackedMethod> after;
        std::vector<FileRename> renames;
        for (const auto& f : c.changed_files) {
            if (f.kind != ChangeKind::added) methods_of(f.old_path, f.old_blob, parent_sha, before);
            if (f.kind != ChangeKind::deleted) methods_of(f.path, f.new_blob, c.sha, after);
            if (f.kind == ChangeKind::renamed) renames.push_back({f.old_path, f.path});
        }
        auto& out = result.changes[i];
        out.diff = diff_methods(std::move(before), std::move(after));
        out.links = detect_refactorings(out.diff.added, out.diff.deleted, renames, options.rename_threshold);
    });

    result.histories = link_histories(commits, result.changes);
    result.events = extract_creations(result.histories);

    // Warnings for each file version the first time a commit introduces it.
    std::set<std::size_t> reported;
    for (const auto& c : commits) {
        for (const auto& f : c.changed_files) {
            if (f.kind == ChangeKind::deleted || !is_java_source(f.path)) continue;
            const std::size_t idx = file_index.at({f.path, f.new_blob});
            if (!reported.insert(idx).second) continue;
            for (auto w : parsed[idx].warnings) {
                w.message += " (commit " + c.sha + ")";
                result.warnings.push_back(std::move(w));
            }
        }
    }
    return result;
}

}  // namespace namemine
