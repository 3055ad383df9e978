#include <gtest/gtest.h>

#include <random>

#include "namemine/baselines.hpp"
#include "support.hpp"

namespace namemine {
namespace {

TrainingExample example(std::string id, SubTokenSequence name, TokenSequence tokens) {
    return {std::move(id), std::move(name), std::move(tokens)};
}

TEST(Baselines, ParseAndPrintNames) {
    EXPECT_EQ(parse_baseline("most_frequent"), BaselineKind::most_frequent);
    EXPECT_EQ(parse_baseline("nearest_neighbor"), BaselineKind::nearest_neighbor);
    EXPECT_FALSE(parse_baseline("code2vec"));
    EXPECT_EQ(to_string(BaselineKind::nearest_neighbor), "nearest_neighbor");
}

TEST(Baselines, EmptyCorpusThrows) {
    EXPECT_THROW(BaselineModel::fit(BaselineKind::most_frequent, {}), std::invalid_argument);
}

TEST(MostFrequent, CountsWholeNames) {
    const auto m = BaselineModel::fit(BaselineKind::most_frequent, {example("1", {"get", "x"}, {}),
                                                                    example("2", {"size"}, {}),
                                                                    example("3", {"get", "x"}, {})});
    EXPECT_EQ(m.predict({"anything"}), (SubTokenSequence{"get", "x"}));
}

TEST(MostFrequent, TiesGoToLexicographicallySmallest) {
    const auto m = BaselineModel::fit(BaselineKind::most_frequent, {example("1", {"to", "string"}, {}),
                                                                    example("2", {"size"}, {}),
                                                                    example("3", {"get", "name"}, {}),
                                                                    example("4", {"size"}, {}),
                                                                    example("5", {"get", "name"}, {})});
    EXPECT_EQ(m.predict({}), (SubTokenSequence{"get", "name"}));
}

TEST(SupportJaccard, SmallCases) {
    EXPECT_EQ(support_jaccard({}, {}), 1.0);
    EXPECT_EQ(support_jaccard({"a"}, {}), 0.0);
    EXPECT_EQ(support_jaccard({"a", "b"}, {"b", "c"}), 1.0 / 3.0);
    EXPECT_EQ(support_jaccard({"a", "b"}, {"a", "b"}), 1.0);
}

// Exact rational Jaccard, compared by cross-multiplication.
struct Ratio {
    std::size_t num;
    std::size_t den;
};

Ratio exact_jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
    if (a.empty() && b.empty()) return {1, 1};
    std::size_t common = 0;
    for (const auto& x : a) common += b.count(x);
    return {common, a.size() + b.size() - common};
}

TEST(NearestNeighbor, MatchesExhaustiveArgmax) {
    const std::vector<std::string> vocab = {"int", "return", "x", "y", "list", "size", "get", "+", "(", ")", "0"};
    std::mt19937 gen(99);
    for (int trial = 0; trial < 300; ++trial) {
        std::uniform_int_distribution<int> count(1, 12);
        std::uniform_int_distribution<std::size_t> word(0, vocab.size() - 1);
        auto random_tokens = [&] {
            TokenSequence t;
            for (int i = count(gen) - 1; i > 0; --i) t.push_back(vocab[word(gen)]);
            return t;
        };
        std::vector<TrainingExample> corpus;
        const int n = count(gen);
        for (int i = 0; i < n; ++i) {
            // Ids deliberately out of order to exercise the tie rule.
            corpus.push_back(example("id" + std::to_string((i * 7) % 13), {"name" + std::to_string(i)}, random_tokens()));
        }
        const auto query = random_tokens();
        const std::set<std::string> q(query.begin(), query.end());

        const TrainingExample* best = nullptr;
        Ratio best_r{0, 1};
        for (const auto& e : corpus) {
            const auto r = exact_jaccard(q, {e.tokens.begin(), e.tokens.end()});
            const auto lhs = r.num * best_r.den;
            const auto rhs = best_r.num * r.den;
            if (!best || lhs > rhs || (lhs == rhs && e.id < best->id)) {
                best = &e;
                best_r = r;
            }
        }
        const auto model = BaselineModel::fit(BaselineKind::nearest_neighbor, corpus);
        EXPECT_EQ(model.predict(query), best->name_subtokens) << "trial " << trial;
    }
}

TEST(NearestNeighbor, UsesMaskedTokens) {
    DatasetRecord r;
    r.id = "h1";
    r.name_subtokens = {"add"};
    r.masked_source = "int METHODNAMESTUB(int a, int b) {\n    return a + b;\n}";
    const auto e = training_example(r);
    EXPECT_EQ(e.id, "h1");
    EXPECT_NE(std::find(e.tokens.begin(), e.tokens.end(), kMethodNameStub), e.tokens.end());
    EXPECT_EQ(std::find(e.tokens.begin(), e.tokens.end(), "add"), e.tokens.end());
}

}  // namespace
}  // namespace namemine
