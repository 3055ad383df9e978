#include <gtest/gtest.h>

#include <omp.h>

#include "namemine/error.hpp"
#include "namemine/pipeline.hpp"
#include "namemine/testing/fixtures.hpp"
#include "namemine/testing/workspace.hpp"
#include "support.hpp"

namespace namemine {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;

std::map<std::string, std::string> tree_contents(const fs::path& root) {
    std::map<std::string, std::string> out;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (entry.is_regular_file()) out[fs::relative(entry.path(), root).string()] = test::read_file(entry.path());
    }
    return out;
}

class PipelineTest : public ::testing::Test {
protected:
    static void SetUpTestSuite() {
        dir_ = new TempDir("pipeline");
        testing::make_workspace(dir_->path() / "ws");
    }
    static void TearDownTestSuite() {
        delete dir_;
        dir_ = nullptr;
    }

    static Config config(const std::string& out, std::size_t jobs) {
        Config c;
        c.workspace = dir_->path() / "ws";
        c.output_dir = dir_->path() / out;
        c.jobs = jobs;
        c.bootstrap.n_resamples = 2000;
        return c;
    }

    static TempDir* dir_;
};

TempDir* PipelineTest::dir_ = nullptr;

TEST_F(PipelineTest, OutcomesPerProject) {
    const auto outcomes = run_pipeline(config("outcomes", 0));
    ASSERT_EQ(outcomes.size(), 3u);
    EXPECT_EQ(outcomes[0].project, "alpha");
    EXPECT_EQ(outcomes[0].exit_code, 0);
    EXPECT_EQ(outcomes[1].exit_code, 0);
    EXPECT_EQ(outcomes[2].project, "gamma");
    EXPECT_EQ(outcomes[2].exit_code, 3);
    const auto summary = jsonio::read_json(dir_->path() / "outcomes" / "summary.json");
    EXPECT_EQ(summary.at("projects").size(), 3u);
    EXPECT_FALSE(fs::exists(dir_->path() / "outcomes" / "gamma" / "test.jsonl"));
}

TEST_F(PipelineTest, ArtifactsIndependentOfJobsAndThreads) {
    run_pipeline(config("jobs1", 1));
    run_pipeline(config("jobs3", 3));
    const int threads = omp_get_max_threads();
    omp_set_num_threads(1);
    run_pipeline(config("serial", 1));
    omp_set_num_threads(threads);
    const auto reference = tree_contents(dir_->path() / "jobs1");
    EXPECT_EQ(reference, tree_contents(dir_->path() / "jobs3"));
    EXPECT_EQ(reference, tree_contents(dir_->path() / "serial"));
    run_pipeline(config("jobs1", 1));
    EXPECT_EQ(reference, tree_contents(dir_->path() / "jobs1"));
}

TEST_F(PipelineTest, NearestNeighborBeatsMostFrequent) {
    run_pipeline(config("compare", 0));
    const auto doc = jsonio::read_json(dir_->path() / "compare" / "comparison.json");
    std::size_t checked = 0;
    for (const auto& pair : doc.at("pairs")) {
        if (pair.at("model_a") != "nearest_neighbor" || pair.at("model_b") != "most_frequent") continue;
        EXPECT_EQ(pair.at("matrix_cell").at("wins_a"), 2);
        for (const auto& p : pair.at("per_project")) {
            EXPECT_TRUE(p.at("significant").get<bool>());
            EXPECT_EQ(p.at("winner"), "nearest_neighbor");
        }
        ++checked;
    }
    EXPECT_EQ(checked, 2u);
}

TEST(Pipeline, EmptyRepositoryIsARepositoryError) {
    TempDir dir("pipeline");
    testing::FixtureRepo repo(dir.path() / "empty");
    Config c;
    c.output_dir = dir.path() / "out";
    try {
        mine_project(c, "empty", repo.root());
        FAIL() << "expected RepositoryError";
    } catch (const RepositoryError& e) {
        EXPECT_EQ(e.kind(), RepositoryError::Kind::empty);
    }
}

TEST(Pipeline, ScoreTableRejectsDuplicatesAndMisalignment) {
    TempDir dir("pipeline");
    const auto score = [](const std::string& model, const std::string& id) {
        SampleScore s;
        s.method_id = id;
        return jsonio::sample_score_to_json("p", model, s);
    };
    jsonio::write_jsonl(dir.path() / "a.jsonl", {score("a", "1"), score("a", "2")});
    jsonio::write_jsonl(dir.path() / "b.jsonl", {score("b", "2"), score("b", "1")});
    jsonio::write_jsonl(dir.path() / "c.jsonl", {score("c", "1")});
    jsonio::write_jsonl(dir.path() / "d.jsonl", {score("d", "1"), score("d", "1")});

    const auto table = load_score_table({dir.path() / "a.jsonl", dir.path() / "b.jsonl"});
    EXPECT_EQ(table.at("p").at("b").front().method_id, "1");
    EXPECT_THROW(load_score_table({dir.path() / "a.jsonl", dir.path() / "c.jsonl"}), SchemaError);
    EXPECT_THROW(load_score_table({dir.path() / "d.jsonl"}), SchemaError);
}

TEST(Pipeline, PredictionsCoverEveryTarget) {
    std::vector<DatasetRecord> train(3);
    for (std::size_t i = 0; i < train.size(); ++i) {
        train[i].id = "t" + std::to_string(i);
        train[i].name_subtokens = {"name", std::to_string(i)};
        train[i].masked_source = "int METHODNAMESTUB() {\n    return " + std::to_string(i) + ";\n}";
    }
    auto targets = train;
    targets[1].masked_source = "not java {";
    const auto serial = predict_records(BaselineKind::nearest_neighbor, train, targets, Execution::serial);
    const auto parallel = predict_records(BaselineKind::nearest_neighbor, train, targets, Execution::parallel);
    ASSERT_EQ(serial.size(), 3u);
    EXPECT_EQ(serial[0].predicted_subtokens, train[0].name_subtokens);
    EXPECT_EQ(serial[2].predicted_subtokens, train[2].name_subtokens);
    for (std::size_t i = 0; i < serial.size(); ++i) {
        EXPECT_EQ(serial[i].method_id, parallel[i].method_id);
        EXPECT_EQ(serial[i].predicted_subtokens, parallel[i].predicted_subtokens);
    }
}

}  // namespace
}  // namespace namemine
