#include "namemine/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <tuple>

namespace namemine {

namespace {

bool event_less(const MethodCreationEvent& a, const MethodCreationEvent& b) {
    const auto& ka = a.snapshot.key;
    const auto& kb = b.snapshot.key;
    return std::tie(a.order_index, ka.file_path, ka.method_name, ka) <
           std::tie(b.order_index, kb.file_path, kb.method_name, kb);
}

void remove_ids(std::vector<DatasetRecord>& records, const std::set<std::string>& ids) {
    std::erase_if(records, [&](const DatasetRecord& r) { return ids.contains(r.id); });
}

}  // namespace

void SplitSpec::validate() const {
    if (!(snapshot_ratio > 0.0 && snapshot_ratio < 1.0)) {
        throw std::invalid_argument("snapshot_ratio must lie in (0, 1)");
    }
    if (min_test_samples < 1) throw std::invalid_argument("min_test_samples must be at least 1");
    if (large_project_threshold < min_test_samples) {
        throw std::invalid_argument("large_project_threshold must be at least min_test_samples");
    }
}

std::string_view to_string(SizeClass size_class) {
    switch (size_class) {
        case SizeClass::large: return "large";
        case SizeClass::small: return "small";
        case SizeClass::rejected: return "rejected";
    }
    return "unknown";
}

ChronologicalSplit chronological_split(std::vector<MethodCreationEvent> events, const SplitSpec& spec) {
    spec.validate();
    ChronologicalSplit out;
    if (events.empty()) {
        out.rejection = "no method creation events";
        return out;
    }
    std::sort(events.begin(), events.end(), event_less);

    const std::size_t n = events.size();
    // ceil(ratio * n) in exact arithmetic for the common decimal ratios:
    // nudge down by a relative epsilon so 0.8 * 10 does not become 9.
    const double scaled = spec.snapshot_ratio * static_cast<double>(n);
    auto rank = static_cast<std::size_t>(std::ceil(scaled - 1e-9 * std::max(1.0, scaled)));
    rank = std::clamp<std::size_t>(rank, 1, n);

    const auto& pivot = events[rank - 1];
    out.snapshot_rank = rank;
    out.snapshot_sha = pivot.commit_sha;
    out.snapshot_order_index = pivot.order_index;

    auto first_post = std::find_if(events.begin(), events.end(), [&](const MethodCreationEvent& e) {
        return e.order_index > out.snapshot_order_index;
    });
    std::vector<MethodCreationEvent> post(std::make_move_iterator(first_post),
                                          std::make_move_iterator(events.end()));
    if (post.empty()) {
        out.rejection = "no methods created after the snapshot commit (incomplete history)";
        return out;
    }

    // Candidate cut points are commit boundaries; pick the one closest to the
    // middle so the halves differ by at most the straddling commit's events.
    const std::size_t total = post.size();
    std::size_t best = 0;
    std::size_t best_gap = total;  // |2 * cut - total| at cut = 0
    for (std::size_t i = 1; i <= total; ++i) {
        if (i < total && post[i].order_index == post[i - 1].order_index) continue;
        const std::size_t twice = 2 * i;
        const std::size_t gap = twice > total ? twice - total : total - twice;
        if (gap <= best_gap) {
            best_gap = gap;
            best = i;
        }
    }
    out.validation.assign(std::make_move_iterator(post.begin()),
                          std::make_move_iterator(post.begin() + static_cast<std::ptrdiff_t>(best)));
    out.test.assign(std::make_move_iterator(post.begin() + static_cast<std::ptrdiff_t>(best)),
                    std::make_move_iterator(post.end()));
    return out;
}

ParsedMethod parse_snapshot(const MethodSnapshot& snapshot) {
    ParsedMethod like;
    like.snapshot = snapshot;
    ParsedMethod parsed = reparse_method(like, snapshot.body_text);
    parsed.snapshot.body_hash = snapshot.body_hash;
    return parsed;
}

PreparedRecord prepare_record(const ParsedMethod& method, Provenance provenance) {
    PreparedRecord out;
    ParsedMethod stripped = strip_comments(method);
    const auto decision = keep_method(stripped);
    if (!decision.keep) {
        out.rejected = decision.reason;
        return out;
    }
    ParsedMethod masked = mask_recursion(stripped);

    DatasetRecord r;
    r.id = std::move(provenance.id);
    r.project = std::move(provenance.project);
    r.split = std::move(provenance.split);
    r.commit_sha = std::move(provenance.commit_sha);
    r.author_time = provenance.author_time;
    r.order_index = provenance.order_index;
    r.file_path = method.snapshot.key.file_path;
    r.class_name = method.snapshot.key.class_name;
    r.name = method.snapshot.key.method_name;
    r.name_subtokens = split_subtokens(r.name);
    r.masked_source = std::move(masked.snapshot.body_text);
    r.start_line = method.snapshot.start_line;
    r.body_hash = method.snapshot.body_hash;
    r.masked_tree = std::move(masked.syntax_tree);
    out.record = std::move(r);
    return out;
}

std::vector<DatasetRecord> build_training(const std::vector<SnapshotMethod>& snapshot,
                                          const std::string& project, const std::string& snapshot_sha,
                                          std::int64_t snapshot_time, FilterCounts* counts) {
    std::vector<DatasetRecord> records;
    for (const auto& s : snapshot) {
        auto prepared = prepare_record(
            s.method, {s.id, project, "train", snapshot_sha, snapshot_time, s.created_order_index});
        if (prepared.record) {
            records.push_back(std::move(*prepared.record));
            if (counts) ++counts->kept;
        } else if (counts) {
            ++counts->rejected[std::string(to_string(*prepared.rejected))];
        }
    }
    std::sort(records.begin(), records.end(), [](const DatasetRecord& a, const DatasetRecord& b) {
        return std::tie(a.file_path, a.name, a.start_line, a.id) <
               std::tie(b.file_path, b.name, b.start_line, b.id);
    });
    return records;
}

DedupReport dedup_textual(DatasetSplit& split) {
    std::set<std::string> train_hashes;
    for (const auto& r : split.train) train_hashes.insert(r.body_hash);

    DedupReport report;
    std::set<std::string> removed;
    for (auto* part : {&split.validation, &split.test}) {
        for (const auto& r : *part) {
            if (train_hashes.contains(r.body_hash)) {
                report.removed.push_back(r.id);
                removed.insert(r.id);
            }
        }
        remove_ids(*part, removed);
    }
    return report;
}

DedupReport dedup_representation(DatasetSplit& split, const std::string& representation,
                                 const FingerprintFn& fingerprint) {
    std::set<std::pair<std::string, std::string>> train_pairs;
    for (const auto& r : split.train) {
        if (auto fp = fingerprint(r)) train_pairs.emplace(r.name, std::move(*fp));
    }

    DedupReport report;
    std::set<std::string> removed;
    for (auto* part : {&split.validation, &split.test}) {
        for (const auto& r : *part) {
            auto fp = fingerprint(r);
            if (!fp) {
                split.warnings.push_back(
                    {r.file_path, static_cast<int>(r.start_line),
                     "no " + representation + " representation for " + r.id + "; kept"});
                continue;
            }
            if (train_pairs.contains({r.name, *fp})) {
                report.removed.push_back(r.id);
                removed.insert(r.id);
            }
        }
        remove_ids(*part, removed);
    }
    return report;
}

SizeClass validate_project(const DatasetSplit& split, const SplitSpec& spec) {
    if (split.test.size() < spec.min_test_samples) return SizeClass::rejected;
    if (split.test.size() >= spec.large_project_threshold) return SizeClass::large;
    return SizeClass::small;
}

}  // namespace namemine
