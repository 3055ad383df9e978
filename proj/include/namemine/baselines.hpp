#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "namemine/analysis.hpp"
#include "namemine/dataset.hpp"
#include "namemine/representations.hpp"

namespace namemine {

enum class BaselineKind { most_frequent, nearest_neighbor };

std::string_view to_string(BaselineKind kind);
std::optional<BaselineKind> parse_baseline(std::string_view name);

/// Training-side view a baseline is fitted on.
struct TrainingExample {
    std::string id;
    SubTokenSequence name_subtokens;
    TokenSequence tokens;
};

TrainingExample training_example(const DatasetRecord& record);

class BaselineModel {
public:
    /// Throws std::invalid_argument on an empty corpus.
    static BaselineModel fit(BaselineKind kind, std::vector<TrainingExample> corpus);

    [[nodiscard]] BaselineKind kind() const noexcept { return kind_; }

    /// `tokens` of the record to name; ignored by most_frequent.
    [[nodiscard]] SubTokenSequence predict(const TokenSequence& tokens) const;

private:
    struct Entry {
        std::string id;
        std::set<std::string> support;
        std::size_t example = 0;  // index into corpus_
    };

    BaselineKind kind_ = BaselineKind::most_frequent;
    std::vector<TrainingExample> corpus_;
    std::vector<Entry> entries_;  // sorted by id
    SubTokenSequence most_frequent_;
};

/// Jaccard of the two token supports; 1 for two empty inputs.
double support_jaccard(const std::set<std::string>& a, const std::set<std::string>& b);

}  // namespace namemine
