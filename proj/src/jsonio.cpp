#include "namemine/jsonio.hpp"

#include <fstream>
#include <sstream>

#include "namemine/error.hpp"
#include "namemine/java/lexer.hpp"

namespace namemine::jsonio {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) throw SchemaError("expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(std::string("missing field '") + key + "'");
    return *it;
}

std::string str(const Json& j, const char* key) {
    const auto& v = field(j, key);
    if (!v.is_string()) throw SchemaError(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

std::vector<std::string> strs(const Json& j, const char* key) {
    const auto& v = field(j, key);
    if (!v.is_array()) throw SchemaError(std::string("field '") + key + "' must be an array of strings");
    std::vector<std::string> out;
    for (const auto& item : v) {
        if (!item.is_string()) throw SchemaError(std::string("field '") + key + "' must be an array of strings");
        out.push_back(item.get<std::string>());
    }
    return out;
}

template <typename T>
T integer(const Json& j, const char* key) {
    const auto& v = field(j, key);
    if (!v.is_number_integer()) throw SchemaError(std::string("field '") + key + "' must be an integer");
    return v.get<T>();
}

double real(const Json& j, const char* key) {
    const auto& v = field(j, key);
    if (!v.is_number()) throw SchemaError(std::string("field '") + key + "' must be a number");
    return v.get<double>();
}

bool boolean(const Json& j, const char* key) {
    const auto& v = field(j, key);
    if (!v.is_boolean()) throw SchemaError(std::string("field '") + key + "' must be a boolean");
    return v.get<bool>();
}

std::string read_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw SchemaError("cannot read " + file.string());
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

Json key_fields(Json j, const MethodSnapshot& s) {
    j["file_path"] = s.key.file_path;
    j["class_name"] = s.key.class_name;
    j["method_name"] = s.key.method_name;
    j["param_types"] = s.key.param_types;
    j["body"] = s.body_text;
    j["start_line"] = s.start_line;
    j["end_line"] = s.end_line;
    return j;
}

MethodSnapshot snapshot_from(const Json& j, std::string commit_sha) {
    MethodSnapshot s;
    s.key = {str(j, "file_path"), str(j, "class_name"), str(j, "method_name"), strs(j, "param_types")};
    s.body_text = str(j, "body");
    s.body_hash = body_hash(s.body_text);
    s.commit_sha = std::move(commit_sha);
    s.start_line = integer<std::uint32_t>(j, "start_line");
    s.end_line = integer<std::uint32_t>(j, "end_line");
    return s;
}

}  // namespace

std::vector<Json> read_jsonl(const std::filesystem::path& file) {
    const std::string text = read_file(file);
    std::vector<Json> out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        ++line_no;
        std::string_view line(text.data() + pos, eol - pos);
        pos = eol + 1;
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
        try {
            out.push_back(Json::parse(line));
        } catch (const Json::parse_error& e) {
            throw SchemaError(file.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

Json read_json(const std::filesystem::path& file) {
    try {
        return Json::parse(read_file(file));
    } catch (const Json::parse_error& e) {
        throw SchemaError(file.string() + ": " + e.what());
    }
}

void write_text(const std::filesystem::path& file, const std::string& text) {
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
    auto tmp = file;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << text;
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, file);
}

void write_jsonl(const std::filesystem::path& file, const std::vector<Json>& lines) {
    std::string text;
    for (const auto& line : lines) {
        text += line.dump();
        text += '\n';
    }
    write_text(file, text);
}

void write_json(const std::filesystem::path& file, const Json& value) { write_text(file, value.dump(2) + "\n"); }

Json diagnostics(const std::vector<Diagnostic>& warnings) {
    Json out = Json::array();
    for (const auto& w : warnings) out.push_back(Json{{"path", w.path}, {"line", w.line}, {"message", w.message}});
    return out;
}

Json event_to_json(const MethodCreationEvent& event) {
    Json j = {{"history_id", event.history_id},
              {"commit_sha", event.commit_sha},
              {"author_time", event.author_time},
              {"order_index", event.order_index}};
    return key_fields(std::move(j), event.snapshot);
}

MethodCreationEvent event_from_json(const Json& j) {
    MethodCreationEvent e;
    e.history_id = str(j, "history_id");
    e.commit_sha = str(j, "commit_sha");
    e.author_time = integer<std::int64_t>(j, "author_time");
    e.order_index = integer<std::size_t>(j, "order_index");
    e.snapshot = snapshot_from(j, e.commit_sha);
    return e;
}

Json snapshot_method_to_json(const std::string& id, std::size_t created_order_index,
                             const MethodSnapshot& snapshot) {
    Json j = {{"id", id}, {"created_order_index", created_order_index}, {"commit_sha", snapshot.commit_sha}};
    return key_fields(std::move(j), snapshot);
}

ManifestEntry snapshot_method_from_json(const Json& j) {
    ManifestEntry e;
    e.id = str(j, "id");
    e.created_order_index = integer<std::size_t>(j, "created_order_index");
    e.snapshot = snapshot_from(j, str(j, "commit_sha"));
    return e;
}

Json path_contexts_to_json(const std::vector<PathContext>& contexts) {
    Json out = Json::array();
    for (const auto& c : contexts) out.push_back(Json::array({c.left, path_string(c.path), c.right}));
    return out;
}

Json record_to_json(const DatasetRecord& r, const RecordExtras& extras) {
    Json j = {{"id", r.id},
              {"project", r.project},
              {"split", r.split},
              {"commit_sha", r.commit_sha},
              {"author_time", r.author_time},
              {"file_path", r.file_path},
              {"class_name", r.class_name},
              {"name", r.name},
              {"name_subtokens", r.name_subtokens},
              {"masked_source", r.masked_source}};
    if (extras.representations) {
        for (auto rep : *extras.representations) {
            switch (rep) {
                case Representation::tokens:
                    try {
                        j["tokens"] = tokenize(r.masked_source);
                    } catch (const java::ParseError&) {
                        j["tokens"] = nullptr;
                    }
                    break;
                case Representation::ast:
                    j["ast"] = canonical_ast(serialize_ast(r.masked_tree));
                    break;
                case Representation::path_contexts:
                    j["path_contexts"] = path_contexts_to_json(extract_path_contexts(r.masked_tree, extras.paths));
                    break;
            }
        }
    }
    return j;
}

DatasetRecord record_from_json(const Json& j) {
    DatasetRecord r;
    r.id = str(j, "id");
    r.project = str(j, "project");
    r.split = str(j, "split");
    r.commit_sha = str(j, "commit_sha");
    r.author_time = integer<std::int64_t>(j, "author_time");
    r.file_path = str(j, "file_path");
    r.class_name = str(j, "class_name");
    r.name = str(j, "name");
    r.name_subtokens = strs(j, "name_subtokens");
    r.masked_source = str(j, "masked_source");
    return r;
}

Json prediction_to_json(const PredictionRecord& p) {
    return {{"method_id", p.method_id}, {"predicted_subtokens", p.predicted_subtokens}};
}

PredictionRecord prediction_from_json(const Json& j) {
    return {str(j, "method_id"), strs(j, "predicted_subtokens")};
}

Json sample_score_to_json(const std::string& project, const std::string& model, const SampleScore& s) {
    return {{"project", project}, {"model", model},     {"method_id", s.method_id}, {"precision", s.precision},
            {"recall", s.recall}, {"f1", s.f1},         {"chrf", s.chrf},           {"missing", s.missing}};
}

LabeledScore sample_score_from_json(const Json& j) {
    LabeledScore out;
    out.project = str(j, "project");
    out.model = str(j, "model");
    out.score.method_id = str(j, "method_id");
    out.score.precision = real(j, "precision");
    out.score.recall = real(j, "recall");
    out.score.f1 = real(j, "f1");
    out.score.chrf = real(j, "chrf");
    out.score.missing = boolean(j, "missing");
    return out;
}

Json dedup_report_to_json(const DedupReport& report) {
    return {{"count", report.removed.size()}, {"ids", report.removed}};
}

Json bootstrap_to_json(const std::string& project, const BootstrapComparison& c) {
    return {{"project", project},
            {"n_resamples", c.n_resamples},
            {"seed", c.seed},
            {"wins_a", c.wins_a},
            {"wins_b", c.wins_b},
            {"ties", c.ties},
            {"win_prob_a", c.win_prob_a},
            {"win_prob_b", c.win_prob_b},
            {"significant", c.significant},
            {"winner", c.winner ? Json(*c.winner) : Json(nullptr)}};
}

Json comparison_to_json(const std::vector<PairComparison>& pairs) {
    Json list = Json::array();
    for (const auto& p : pairs) {
        Json per_project = Json::array();
        for (const auto& [project, result] : p.per_project) per_project.push_back(bootstrap_to_json(project, result));
        list.push_back({{"model_a", p.model_a},
                        {"model_b", p.model_b},
                        {"metric", std::string(to_string(p.metric))},
                        {"per_project", std::move(per_project)},
                        {"matrix_cell", {{"wins_a", p.cell.wins_a}, {"wins_b", p.cell.wins_b}, {"ties", p.cell.ties}}}});
    }
    return Json{{"pairs", std::move(list)}};
}

}  // namespace namemine::jsonio
