#include "namemine/pipeline.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <set>

#include <omp.h>

#include "namemine/baselines.hpp"
#include "namemine/error.hpp"
#include "namemine/git_repo.hpp"
#include "namemine/hash.hpp"
#include "namemine/java/lexer.hpp"
#include "namemine/miner.hpp"

namespace namemine {

namespace {

using jsonio::Json;

constexpr const char* kParts[] = {"train", "validation", "test"};

Json filter_json(const FilterCounts& counts) {
    Json rejected = Json::object();
    for (const auto& [reason, n] : counts.rejected) rejected[reason] = n;
    return {{"kept", counts.kept}, {"rejected", std::move(rejected)}};
}

// History id of every method alive at commit `at`, keyed by its key there.
std::map<MethodKey, std::pair<std::string, std::size_t>> live_ids(const std::vector<MethodHistory>& histories,
                                                                  std::size_t at) {
    std::map<MethodKey, std::pair<std::string, std::size_t>> out;
    for (const auto& h : histories) {
        if (h.order_indices.empty() || h.order_indices.front() > at) continue;
        if (h.deleted_at && *h.deleted_at <= at) continue;
        std::size_t k = 0;
        while (k + 1 < h.order_indices.size() && h.order_indices[k + 1] <= at) ++k;
        out.emplace(h.snapshots[k].key, std::pair{h.history_id, h.order_indices.front()});
    }
    return out;
}

}  // namespace

ProjectPaths project_paths(const Config& config, const std::string& project) {
    return {config.output_dir / project};
}

MineSummary mine_project(const Config& config, const std::string& project, const std::filesystem::path& repo_path) {
    GitRepository repo(repo_path);
    MineOptions options{config.rename_threshold, Execution::parallel};
    MiningResult mined = mine_repository(repo, config.branch, options);
    if (mined.commits.empty()) {
        throw RepositoryError(RepositoryError::Kind::empty, "repository has no commits: " + repo_path.string());
    }

    MineSummary summary;
    summary.commits = mined.commits.size();
    summary.events = mined.events.size();

    std::vector<Json> event_lines;
    event_lines.reserve(mined.events.size());
    for (const auto& e : mined.events) event_lines.push_back(jsonio::event_to_json(e));

    std::vector<Json> manifest;
    std::vector<Diagnostic> warnings = mined.warnings;
    Json report = {{"project", project}, {"branch", config.branch}, {"commits", mined.commits.size()},
                   {"events", mined.events.size()}};
    if (!mined.events.empty()) {
        const auto cut = chronological_split(mined.events, config.split);
        const auto& snapshot_commit = mined.commits[cut.snapshot_order_index];
        summary.snapshot_sha = cut.snapshot_sha;

        auto snap = take_snapshot(repo, cut.snapshot_sha);
        warnings.insert(warnings.end(), snap.warnings.begin(), snap.warnings.end());
        const auto ids = live_ids(mined.histories, cut.snapshot_order_index);
        for (const auto& m : snap.methods) {
            auto it = ids.find(m.snapshot.key);
            std::string id;
            std::size_t created = cut.snapshot_order_index;
            if (it != ids.end()) {
                id = it->second.first;
                created = it->second.second;
            } else {
                id = sha256_hex("snapshot\n" + m.snapshot.key.to_string()).substr(0, 16);
                warnings.push_back({m.snapshot.key.file_path, static_cast<int>(m.snapshot.start_line),
                                    "snapshot method without a history: " + m.snapshot.key.to_string()});
            }
            manifest.push_back(jsonio::snapshot_method_to_json(id, created, m.snapshot));
        }
        summary.snapshot_methods = manifest.size();
        report["snapshot_sha"] = cut.snapshot_sha;
        report["snapshot_order_index"] = cut.snapshot_order_index;
        report["snapshot_author_time"] = snapshot_commit.author_time;
        report["snapshot_rank"] = cut.snapshot_rank;
    } else {
        report["snapshot_sha"] = nullptr;
    }
    report["snapshot_methods"] = manifest.size();
    report["warnings"] = jsonio::diagnostics(warnings);

    const auto paths = project_paths(config, project);
    jsonio::write_jsonl(paths.events(), event_lines);
    jsonio::write_jsonl(paths.snapshot(), manifest);
    jsonio::write_json(paths.mine_report(), report);
    return summary;
}

DatasetBuild build_dataset(const std::string& project, const std::vector<MethodCreationEvent>& events,
                           const std::vector<jsonio::ManifestEntry>& snapshot, std::int64_t snapshot_time,
                           const Config& config) {
    DatasetBuild build;
    auto& split = build.split;
    split.project = project;
    build.events = events.size();

    auto cut = chronological_split(events, config.split);
    if (cut.rejection) {
        split.size_class = SizeClass::rejected;
        split.rejection_reason = cut.rejection;
        return build;
    }
    split.snapshot_sha = cut.snapshot_sha;
    split.snapshot_order_index = cut.snapshot_order_index;
    build.post_snapshot_events = cut.validation.size() + cut.test.size();

    auto unparseable = [&](const MethodSnapshot& s, const std::string& why, FilterCounts& counts) {
        split.warnings.push_back({s.key.file_path, static_cast<int>(s.start_line),
                                  "cannot reparse " + s.key.to_string() + ": " + why});
        ++counts.rejected["unparseable"];
    };

    std::vector<SnapshotMethod> methods;
    for (const auto& entry : snapshot) {
        try {
            methods.push_back({entry.id, parse_snapshot(entry.snapshot), entry.created_order_index});
        } catch (const java::ParseError& e) {
            unparseable(entry.snapshot, e.what(), build.train_filter);
        }
    }
    split.train = build_training(methods, project, split.snapshot_sha, snapshot_time, &build.train_filter);

    auto prepare_part = [&](const std::vector<MethodCreationEvent>& part_events, const char* part,
                            std::vector<DatasetRecord>& out, FilterCounts& counts) {
        for (const auto& e : part_events) {
            ParsedMethod parsed;
            try {
                parsed = parse_snapshot(e.snapshot);
            } catch (const java::ParseError& err) {
                unparseable(e.snapshot, err.what(), counts);
                continue;
            }
            auto prepared =
                prepare_record(parsed, {e.history_id, project, part, e.commit_sha, e.author_time, e.order_index});
            if (prepared.record) {
                out.push_back(std::move(*prepared.record));
                ++counts.kept;
            } else {
                ++counts.rejected[std::string(to_string(*prepared.rejected))];
            }
        }
    };
    prepare_part(cut.validation, "validation", split.validation, build.validation_filter);
    prepare_part(cut.test, "test", split.test, build.test_filter);

    split.textual = dedup_textual(split);
    for (auto rep : config.representations) {
        auto report = dedup_representation(split, std::string(to_string(rep)), fingerprint_function(rep, config.paths));
        split.per_representation.emplace_back(std::string(to_string(rep)), std::move(report));
    }

    split.size_class = validate_project(split, config.split);
    if (split.size_class == SizeClass::rejected) {
        split.rejection_reason = "fewer than " + std::to_string(config.split.min_test_samples) +
                                 " test samples after filtering and deduplication";
    }
    return build;
}

Json dataset_report(const DatasetBuild& build) {
    const auto& s = build.split;
    Json per_rep = Json::object();
    for (const auto& [name, report] : s.per_representation) per_rep[name] = jsonio::dedup_report_to_json(report);
    return {{"project", s.project},
            {"snapshot_sha", s.snapshot_sha.empty() ? Json(nullptr) : Json(s.snapshot_sha)},
            {"counts",
             {{"events", build.events},
              {"post_snapshot_events", build.post_snapshot_events},
              {"train", s.train.size()},
              {"validation", s.validation.size()},
              {"test", s.test.size()},
              {"filtered",
               {{"train", filter_json(build.train_filter)},
                {"validation", filter_json(build.validation_filter)},
                {"test", filter_json(build.test_filter)}}}}},
            {"size_class", std::string(to_string(s.size_class))},
            {"rejection_reason", s.rejection_reason ? Json(*s.rejection_reason) : Json(nullptr)},
            {"dedup", {{"textual", jsonio::dedup_report_to_json(s.textual)}, {"per_representation", std::move(per_rep)}}},
            {"warnings", jsonio::diagnostics(s.warnings)}};
}

DatasetBuild split_project(const Config& config, const std::string& project) {
    const auto paths = project_paths(config, project);
    std::vector<MethodCreationEvent> events;
    for (const auto& j : jsonio::read_jsonl(paths.events())) events.push_back(jsonio::event_from_json(j));
    std::vector<jsonio::ManifestEntry> manifest;
    for (const auto& j : jsonio::read_jsonl(paths.snapshot())) manifest.push_back(jsonio::snapshot_method_from_json(j));
    const Json mine_report = jsonio::read_json(paths.mine_report());
    std::int64_t snapshot_time = 0;
    if (auto it = mine_report.find("snapshot_author_time"); it != mine_report.end() && it->is_number_integer()) {
        snapshot_time = it->get<std::int64_t>();
    }

    DatasetBuild build = build_dataset(project, events, manifest, snapshot_time, config);
    const auto& split = build.split;
    jsonio::RecordExtras extras;
    if (config.emit_representations) extras.representations = &config.representations;
    extras.paths = config.paths;
    const std::vector<DatasetRecord>* parts[] = {&split.train, &split.validation, &split.test};
    for (std::size_t i = 0; i < 3; ++i) {
        const auto file = paths.split(kParts[i]);
        if (split.size_class == SizeClass::rejected) {
            std::filesystem::remove(file);
            continue;
        }
        std::vector<Json> lines;
        lines.reserve(parts[i]->size());
        for (const auto& r : *parts[i]) lines.push_back(jsonio::record_to_json(r, extras));
        jsonio::write_jsonl(file, lines);
    }
    jsonio::write_json(paths.report(), dataset_report(build));
    return build;
}

std::vector<DatasetRecord> read_records(const std::filesystem::path& file) {
    std::vector<DatasetRecord> out;
    for (const auto& j : jsonio::read_jsonl(file)) out.push_back(jsonio::record_from_json(j));
    return out;
}

std::vector<PredictionRecord> predict_records(BaselineKind kind, const std::vector<DatasetRecord>& train,
                                              const std::vector<DatasetRecord>& targets, Execution execution) {
    std::vector<TrainingExample> corpus;
    corpus.reserve(train.size());
    for (const auto& r : train) corpus.push_back(training_example(r));
    const BaselineModel model = BaselineModel::fit(kind, std::move(corpus));

    std::vector<PredictionRecord> out(targets.size());
    const auto n = static_cast<std::ptrdiff_t>(targets.size());
#pragma omp parallel for schedule(dynamic, 8) if (execution == Execution::parallel)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto& r = targets[static_cast<std::size_t>(i)];
        TokenSequence tokens;
        try {
            tokens = tokenize(r.masked_source);
        } catch (const java::ParseError&) {
            tokens.clear();
        }
        out[static_cast<std::size_t>(i)] = {r.id, model.predict(tokens)};
    }
    return out;
}

std::filesystem::path predict_project(const Config& config, const std::string& project, BaselineKind kind,
                                      const std::string& part) {
    const auto paths = project_paths(config, project);
    const auto train = read_records(paths.split("train"));
    if (train.empty()) throw SchemaError(project + ": training partition is empty");
    const auto targets = read_records(paths.split(part));
    std::vector<Json> lines;
    for (const auto& p : predict_records(kind, train, targets)) lines.push_back(jsonio::prediction_to_json(p));
    const auto file = paths.predictions(std::string(to_string(kind)));
    jsonio::write_jsonl(file, lines);
    return file;
}

EvaluationResult evaluate_project(const Config& config, const std::string& project, const std::string& model,
                                  const std::filesystem::path& predictions, const std::string& part) {
    const auto paths = project_paths(config, project);
    std::vector<PredictionRecord> preds;
    for (const auto& j : jsonio::read_jsonl(predictions)) preds.push_back(jsonio::prediction_from_json(j));
    std::vector<ReferenceRecord> refs;
    for (const auto& r : read_records(paths.split(part))) refs.push_back({r.id, r.name_subtokens});

    EvaluationResult result;
    result.scores = score_dataset(preds, refs, config.chrf);

    Json size_class = nullptr;
    if (std::filesystem::exists(paths.report())) {
        const Json report = jsonio::read_json(paths.report());
        if (auto it = report.find("size_class"); it != report.end()) size_class = *it;
    }

    std::vector<Json> lines;
    for (const auto& s : result.scores.samples) lines.push_back(jsonio::sample_score_to_json(project, model, s));
    const auto& agg = result.scores.aggregate;
    Json aggregate = {{"project", project},
                      {"model", model},
                      {"split", part},
                      {"n_samples", agg.n_samples},
                      {"n_missing", agg.n_missing},
                      {"mean_f1", agg.mean_f1},
                      {"mean_chrf", agg.mean_chrf},
                      {"size_class", size_class},
                      {"missing_ids", result.scores.missing_ids},
                      {"empty_reference_ids", result.scores.empty_reference_ids}};
    const std::string stem = part == "test" ? model : model + "." + part;
    result.scores_file = paths.scores(stem);
    result.aggregate_file = paths.aggregate(stem);
    jsonio::write_jsonl(result.scores_file, lines);
    jsonio::write_json(result.aggregate_file, aggregate);
    return result;
}

ScoreTable load_score_table(const std::vector<std::filesystem::path>& files) {
    ScoreTable table;
    std::map<std::pair<std::string, std::string>, std::set<std::string>> seen;
    for (const auto& file : files) {
        for (const auto& j : jsonio::read_jsonl(file)) {
            auto s = jsonio::sample_score_from_json(j);
            if (!seen[{s.project, s.model}].insert(s.score.method_id).second) {
                throw SchemaError(file.string() + ": duplicate score for " + s.project + "/" + s.model + "/" +
                                  s.score.method_id);
            }
            table[s.project][s.model].push_back(std::move(s.score));
        }
    }
    for (auto& [project, by_model] : table) {
        std::vector<std::string> reference_ids;
        for (auto& [model, scores] : by_model) {
            std::sort(scores.begin(), scores.end(),
                      [](const SampleScore& a, const SampleScore& b) { return a.method_id < b.method_id; });
            std::vector<std::string> ids;
            for (const auto& s : scores) ids.push_back(s.method_id);
            if (reference_ids.empty()) {
                reference_ids = std::move(ids);
            } else if (ids != reference_ids) {
                throw SchemaError("score files for project " + project + " cover different method ids");
            }
        }
    }
    return table;
}

std::vector<PairComparison> compare_scores(const ScoreTable& table, const Config& config, Execution execution) {
    std::vector<PairComparison> out;
    for (auto metric : config.metrics) {
        BootstrapParams params = config.bootstrap;
        params.metric = metric;
        auto pairs = comparison_matrix(table, params, execution);
        out.insert(out.end(), std::make_move_iterator(pairs.begin()), std::make_move_iterator(pairs.end()));
    }
    return out;
}

std::vector<ProjectOutcome> run_pipeline(const Config& config) {
    const auto projects = config.projects();
    std::vector<ProjectOutcome> outcomes(projects.size());
    std::vector<std::vector<std::filesystem::path>> score_files(projects.size());
    const int threads = config.jobs > 0 ? static_cast<int>(config.jobs) : omp_get_max_threads();
    const auto n = static_cast<std::ptrdiff_t>(projects.size());

#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        const auto& [project, repo] = projects[k];
        auto& outcome = outcomes[k];
        outcome.project = project;
        try {
            mine_project(config, project, repo);
            const auto build = split_project(config, project);
            if (build.split.size_class == SizeClass::rejected) {
                outcome.exit_code = 3;
                outcome.message = build.split.rejection_reason.value_or("rejected");
                continue;
            }
            for (auto kind : config.baselines) {
                const std::string model(to_string(kind));
                const auto predictions = predict_project(config, project, kind);
                score_files[k].push_back(evaluate_project(config, project, model, predictions).scores_file);
            }
            outcome.message = std::string(to_string(build.split.size_class));
        } catch (const RepositoryError& e) {
            outcome.exit_code = 2;
            outcome.message = e.what();
        } catch (const SchemaError& e) {
            outcome.exit_code = 4;
            outcome.message = e.what();
        } catch (const std::exception& e) {
            outcome.exit_code = 1;
            outcome.message = e.what();
        }
    }

    std::vector<std::filesystem::path> files;
    for (const auto& group : score_files) files.insert(files.end(), group.begin(), group.end());
    const auto pairs = compare_scores(load_score_table(files), config);
    jsonio::write_json(config.output_dir / "comparison.json", jsonio::comparison_to_json(pairs));

    Json summary = Json::array();
    for (const auto& o : outcomes) {
        summary.push_back({{"project", o.project}, {"exit_code", o.exit_code}, {"message", o.message}});
    }
    jsonio::write_json(config.output_dir / "summary.json", Json{{"projects", std::move(summary)}});
    return outcomes;
}

}  // namespace namemine
