#include <gtest/gtest.h>

#include "namemine/error.hpp"
#include "namemine/git_repo.hpp"
#include "namemine/testing/fixtures.hpp"

namespace namemine {
namespace {

using testing::FixtureRepo;
using testing::TempDir;

class GitRepoTest : public ::testing::Test {
protected:
    TempDir dir_{"git-repo-test"};
};

TEST_F(GitRepoTest, LinearHistoryWithChangeKinds) {
    FixtureRepo fx(dir_.path() / "r");
    fx.write("a.txt", "alpha\n");
    fx.write("b.txt", "one\ntwo\nthree\nfour\nfive\n");
    const auto c0 = fx.commit("init");
    fx.write("a.txt", "alpha2\n");
    fx.move("b.txt", "dir/c.txt");
    const auto c1 = fx.commit("edit and rename");
    fx.remove("a.txt");
    const auto c2 = fx.commit("delete");

    const auto commits = GitRepository(fx.root()).walk_history("main");
    ASSERT_EQ(commits.size(), 3u);
    EXPECT_EQ(commits[0].sha, c0);
    EXPECT_TRUE(commits[0].parent_shas.empty());
    EXPECT_EQ(commits[1].parent_shas, std::vector<std::string>{c0});
    EXPECT_EQ(commits[2].sha, c2);
    for (std::size_t i = 0; i < commits.size(); ++i) {
        EXPECT_EQ(commits[i].order_index, i);
        EXPECT_EQ(commits[i].author_time, FixtureRepo::kEpoch + 3600 * static_cast<std::int64_t>(i));
    }

    ASSERT_EQ(commits[0].changed_files.size(), 2u);
    EXPECT_EQ(commits[0].changed_files[0].kind, ChangeKind::added);
    EXPECT_TRUE(commits[0].changed_files[0].old_blob.empty());

    const auto& c1_files = commits[1].changed_files;
    ASSERT_EQ(c1_files.size(), 2u);
    EXPECT_EQ(c1_files[0].kind, ChangeKind::modified);
    EXPECT_EQ(c1_files[0].path, "a.txt");
    EXPECT_NE(c1_files[0].old_blob, c1_files[0].new_blob);
    EXPECT_EQ(c1_files[1].kind, ChangeKind::renamed);
    EXPECT_EQ(c1_files[1].old_path, "b.txt");
    EXPECT_EQ(c1_files[1].path, "dir/c.txt");
    EXPECT_EQ(c1_files[1].old_blob, c1_files[1].new_blob);

    ASSERT_EQ(commits[2].changed_files.size(), 1u);
    EXPECT_EQ(commits[2].changed_files[0].kind, ChangeKind::deleted);
    EXPECT_EQ(commits[2].changed_files[0].path, "a.txt");
    EXPECT_TRUE(commits[2].changed_files[0].new_blob.empty());
    (void)c1;
}

TEST_F(GitRepoTest, FirstParentLinearizationSkipsSideBranch) {
    FixtureRepo fx(dir_.path() / "r");
    fx.write("a.txt", "a\n");
    fx.commit("init");
    fx.run({"checkout", "-q", "-b", "side"});
    fx.write("side.txt", "s\n");
    const auto side = fx.commit("side work");
    fx.run({"checkout", "-q", "main"});
    fx.write("main.txt", "m\n");
    fx.commit("main work");
    fx.run({"merge", "-q", "--no-ff", "-m", "merge side", "side"}, true);

    const auto commits = GitRepository(fx.root()).walk_history("main");
    ASSERT_EQ(commits.size(), 3u);
    for (const auto& c : commits) EXPECT_NE(c.sha, side);
    EXPECT_EQ(commits[2].parent_shas.size(), 2u);
    // The merge is diffed against its first parent only.
    ASSERT_EQ(commits[2].changed_files.size(), 1u);
    EXPECT_EQ(commits[2].changed_files[0].path, "side.txt");
    EXPECT_EQ(GitRepository(fx.root()).walk_history("side").size(), 2u);
}

TEST_F(GitRepoTest, TreeAndBlobs) {
    FixtureRepo fx(dir_.path() / "r");
    fx.write("z.txt", "zed\n");
    fx.write("a/b.txt", "bee\n");
    const auto c0 = fx.commit("init");
    GitRepository repo(fx.root());
    const auto tree = repo.list_tree(c0);
    ASSERT_EQ(tree.size(), 2u);
    EXPECT_EQ(tree[0].path, "a/b.txt");
    EXPECT_EQ(tree[1].path, "z.txt");
    const auto blobs = repo.read_blobs({tree[1].blob, tree[0].blob, tree[1].blob});
    EXPECT_EQ(blobs, (std::vector<std::string>{"zed\n", "bee\n", "zed\n"}));
    EXPECT_EQ(repo.resolve("main"), c0);
    EXPECT_EQ(repo.resolve("HEAD"), c0);
}

TEST_F(GitRepoTest, Errors) {
    std::filesystem::create_directories(dir_.path() / "plain");
    try {
        GitRepository repo(dir_.path() / "plain");
        FAIL() << "expected RepositoryError";
    } catch (const RepositoryError& e) {
        EXPECT_EQ(e.kind(), RepositoryError::Kind::not_found);
    }

    FixtureRepo fx(dir_.path() / "r");
    GitRepository empty(fx.root());
    EXPECT_TRUE(empty.walk_history("main").empty());
    EXPECT_TRUE(empty.walk_history("HEAD").empty());

    fx.write("a.txt", "a\n");
    fx.commit("init");
    try {
        (void)GitRepository(fx.root()).walk_history("nope");
        FAIL() << "expected RepositoryError";
    } catch (const RepositoryError& e) {
        EXPECT_EQ(e.kind(), RepositoryError::Kind::branch_not_found);
    }
}

TEST_F(GitRepoTest, SubdirectoryOfRepositoryIsNotARepository) {
    FixtureRepo fx(dir_.path() / "r");
    fx.write("sub/a.txt", "a\n");
    fx.commit("init");
    EXPECT_THROW(GitRepository(fx.root() / "sub"), RepositoryError);
}

TEST_F(GitRepoTest, FixtureCommitIdsAreReproducible) {
    auto build = [](const std::filesystem::path& root) {
        FixtureRepo fx(root);
        fx.write("a.txt", "a\n");
        fx.commit("one");
        fx.write("a.txt", "b\n");
        return fx.commit("two");
    };
    EXPECT_EQ(build(dir_.path() / "x"), build(dir_.path() / "y"));
}

}  // namespace
}  // namespace namemine
