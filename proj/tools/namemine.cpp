// namemine: mine -> split -> predict -> evaluate -> compare.
//
// Exit codes: 0 success, 2 repository error, 3 project rejected,
// 4 input or configuration schema error, 1 anything else.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "namemine/config.hpp"
#include "namemine/error.hpp"
#include "namemine/jsonio.hpp"
#include "namemine/pipeline.hpp"

namespace fs = std::filesystem;
using namespace namemine;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kRepoError = 2;
constexpr int kRejected = 3;
constexpr int kSchemaError = 4;

const std::set<std::string> kStringKeys = {"workspace", "branch", "output_dir"};
const std::set<std::string> kListKeys = {"repos", "metrics", "representations", "baselines"};

// Flag text -> JSON text for apply_config_value.
std::string flag_json(const std::string& key, const std::string& value) {
    using jsonio::Json;
    if (kStringKeys.count(key)) return Json(value).dump();
    if (kListKeys.count(key)) {
        Json list = Json::array();
        std::size_t start = 0;
        while (start <= value.size()) {
            auto comma = value.find(',', start);
            if (comma == std::string::npos) comma = value.size();
            if (comma > start) list.push_back(value.substr(start, comma - start));
            start = comma + 1;
        }
        return list.dump();
    }
    return value;
}

// Worse outcomes win; a rejection never hides a failure.
int combine(int a, int b) {
    auto rank = [](int code) {
        switch (code) {
            case kOk: return 0;
            case kRejected: return 1;
            case kSchemaError: return 2;
            case kRepoError: return 3;
            default: return 4;
        }
    };
    return rank(b) > rank(a) ? b : a;
}

struct Selection {
    std::vector<std::string> names;
};

std::vector<std::pair<std::string, fs::path>> selected(const Config& config, const Selection& sel) {
    auto all = config.projects();
    if (sel.names.empty()) {
        if (all.empty()) throw SchemaError("no projects configured (set workspace or repos)");
        return all;
    }
    std::vector<std::pair<std::string, fs::path>> out;
    for (const auto& name : sel.names) {
        auto it = std::find_if(all.begin(), all.end(), [&](const auto& p) { return p.first == name; });
        if (it == all.end()) {
            // Split, predict, and evaluate only need the output directory.
            out.emplace_back(name, fs::path());
        } else {
            out.push_back(*it);
        }
    }
    return out;
}

template <typename F>
int guarded(const std::string& project, F&& body) {
    try {
        return body();
    } catch (const RepositoryError& e) {
        std::cerr << project << ": repository error: " << e.what() << "\n";
        return kRepoError;
    } catch (const SchemaError& e) {
        std::cerr << project << ": schema error: " << e.what() << "\n";
        return kSchemaError;
    } catch (const std::exception& e) {
        std::cerr << project << ": " << e.what() << "\n";
        return kFailure;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chronological method-name datasets from Git history, with baseline scoring"};
    app.require_subcommand(1);
    app.fallthrough();

    fs::path config_file;
    app.add_option("-c,--config", config_file, "JSON configuration file")->check(CLI::ExistingFile);
    std::map<std::string, std::string> overrides;
    std::vector<std::string> key_names;
    for (auto key : config_keys()) key_names.emplace_back(key);
    for (const auto& key : key_names) {
        app.add_option_function<std::string>(
               "--" + key, [&overrides, key](const std::string& v) { overrides[key] = v; },
               "Overrides config key '" + key + "'")
            ->group("Config overrides");
    }

    Selection sel;
    auto* mine = app.add_subcommand("mine", "Extract creation events and the snapshot manifest");
    auto* split = app.add_subcommand("split", "Build train/validation/test partitions and report.json");
    auto* predict = app.add_subcommand("predict", "Run a baseline on a partition");
    auto* evaluate = app.add_subcommand("evaluate", "Score a predictions file");
    auto* compare = app.add_subcommand("compare", "Paired bootstrap over per-sample score files");
    auto* run = app.add_subcommand("run", "Every stage for every project, then compare");
    auto* show = app.add_subcommand("config", "Print the effective configuration");
    for (auto* sub : {mine, split, predict, evaluate}) {
        sub->add_option("-p,--project", sel.names, "Project name (default: all)");
    }

    std::string baseline = "nearest_neighbor";
    std::string part = "test";
    predict->add_option("-b,--baseline", baseline, "most_frequent or nearest_neighbor");
    predict->add_option("-s,--split", part, "Partition to predict")->check(CLI::IsMember({"train", "validation", "test"}));

    fs::path predictions_file;
    std::string model;
    evaluate->add_option("--predictions", predictions_file, "Predictions JSONL")->required()->check(CLI::ExistingFile);
    evaluate->add_option("-m,--model", model, "Model label (default: file stem)");
    evaluate->add_option("-s,--split", part, "Reference partition")->check(CLI::IsMember({"train", "validation", "test"}));

    std::vector<fs::path> score_files;
    fs::path comparison_out;
    compare->add_option("scores", score_files, "Per-sample score JSONL files")->required()->check(CLI::ExistingFile);
    compare->add_option("-o,--output", comparison_out, "Output file (default: <output_dir>/comparison.json)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kSchemaError;
    }

    Config config;
    try {
        if (!config_file.empty()) config = load_config(config_file);
        for (const auto& [key, value] : overrides) apply_config_value(config, key, flag_json(key, value));
        config.validate();
    } catch (const SchemaError& e) {
        std::cerr << "config: " << e.what() << "\n";
        return kSchemaError;
    }

    if (show->parsed()) {
        std::cout << config_to_json(config) << "\n";
        return kOk;
    }

    if (run->parsed()) {
        return guarded("run", [&] {
            int code = kOk;
            for (const auto& o : run_pipeline(config)) {
                std::cerr << o.project << ": " << (o.exit_code == kOk ? "ok" : "exit " + std::to_string(o.exit_code))
                          << " (" << o.message << ")\n";
                // A rejected project is a normal outcome of a full run.
                if (o.exit_code != kRejected) code = combine(code, o.exit_code);
            }
            return code;
        });
    }

    if (compare->parsed()) {
        return guarded("compare", [&] {
            const auto pairs = compare_scores(load_score_table(score_files), config);
            const auto out = comparison_out.empty() ? config.output_dir / "comparison.json" : comparison_out;
            jsonio::write_json(out, jsonio::comparison_to_json(pairs));
            std::cout << out.string() << "\n";
            return kOk;
        });
    }

    std::vector<std::pair<std::string, fs::path>> projects;
    try {
        projects = selected(config, sel);
    } catch (const SchemaError& e) {
        std::cerr << e.what() << "\n";
        return kSchemaError;
    }

    int code = kOk;
    for (const auto& [project, repo] : projects) {
        code = combine(code, guarded(project, [&, &project = project, &repo = repo] {
            if (mine->parsed()) {
                if (repo.empty()) throw SchemaError("unknown project '" + project + "'");
                const auto s = mine_project(config, project, repo);
                std::cout << project << ": " << s.commits << " commits, " << s.events << " creation events, "
                          << s.snapshot_methods << " snapshot methods\n";
                return kOk;
            }
            if (split->parsed()) {
                const auto build = split_project(config, project);
                const auto& d = build.split;
                if (d.size_class == SizeClass::rejected) {
                    std::cout << project << ": rejected: " << d.rejection_reason.value_or("") << "\n";
                    return kRejected;
                }
                std::cout << project << ": " << d.train.size() << "/" << d.validation.size() << "/" << d.test.size()
                          << " (" << to_string(d.size_class) << ")\n";
                return kOk;
            }
            if (predict->parsed()) {
                const auto kind = parse_baseline(baseline);
                if (!kind) throw SchemaError("unknown baseline '" + baseline + "'");
                std::cout << predict_project(config, project, *kind, part).string() << "\n";
                return kOk;
            }
            const std::string label = model.empty() ? predictions_file.stem().string() : model;
            const auto result = evaluate_project(config, project, label, predictions_file, part);
            const auto& agg = result.scores.aggregate;
            std::cout << project << ": n=" << agg.n_samples << " missing=" << agg.n_missing << " f1=" << agg.mean_f1
                      << " chrf=" << agg.mean_chrf << "\n";
            return kOk;
        }));
    }
    return code;
}
