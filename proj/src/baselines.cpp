#include "namemine/baselines.hpp"

#include <algorithm>
#include <stdexcept>

#include "namemine/java/lexer.hpp"

namespace namemine {

std::string_view to_string(BaselineKind kind) {
    return kind == BaselineKind::most_frequent ? "most_frequent" : "nearest_neighbor";
}

std::optional<BaselineKind> parse_baseline(std::string_view name) {
    if (name == "most_frequent") return BaselineKind::most_frequent;
    if (name == "nearest_neighbor") return BaselineKind::nearest_neighbor;
    return std::nullopt;
}

TrainingExample training_example(const DatasetRecord& record) {
    TrainingExample e{record.id, record.name_subtokens, {}};
    try {
        e.tokens = tokenize(record.masked_source);
    } catch (const java::ParseError&) {
        e.tokens.clear();
    }
    return e;
}

double support_jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
    if (a.empty() && b.empty()) return 1.0;
    std::size_t common = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            ++common;
            ++ia;
            ++ib;
        }
    }
    return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

BaselineModel BaselineModel::fit(BaselineKind kind, std::vector<TrainingExample> corpus) {
    if (corpus.empty()) throw std::invalid_argument("cannot fit a baseline on an empty training set");
    BaselineModel model;
    model.kind_ = kind;
    model.corpus_ = std::move(corpus);

    std::map<SubTokenSequence, std::size_t> frequency;
    for (const auto& e : model.corpus_) ++frequency[e.name_subtokens];
    // Map order is lexicographic, so the first maximum wins ties.
    std::size_t best = 0;
    for (const auto& [name, count] : frequency) {
        if (count > best) {
            best = count;
            model.most_frequent_ = name;
        }
    }

    if (kind == BaselineKind::nearest_neighbor) {
        for (std::size_t i = 0; i < model.corpus_.size(); ++i) {
            const auto& e = model.corpus_[i];
            model.entries_.push_back({e.id, {e.tokens.begin(), e.tokens.end()}, i});
        }
        std::sort(model.entries_.begin(), model.entries_.end(),
                  [](const Entry& a, const Entry& b) { return a.id < b.id; });
    }
    return model;
}

SubTokenSequence BaselineModel::predict(const TokenSequence& tokens) const {
    if (kind_ == BaselineKind::most_frequent) return most_frequent_;
    const std::set<std::string> query(tokens.begin(), tokens.end());
    const Entry* best = nullptr;
    double best_score = -1.0;
    for (const auto& e : entries_) {
        const double s = support_jaccard(query, e.support);
        if (s > best_score) {
            best_score = s;
            best = &e;
        }
    }
    return corpus_[best->example].name_subtokens;
}

}  // namespace namemine
