#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "namemine/miner.hpp"
#include "namemine/testing/fixtures.hpp"
#include "oracles.hpp"

namespace namemine {
namespace {

using testing::FixtureRepo;
using testing::TempDir;

TrackedMethod tracked(MethodKey key, std::string shape, std::vector<std::string> tokens) {
    TrackedMethod t;
    t.snapshot.key = std::move(key);
    t.shape_hash = std::move(shape);
    std::sort(tokens.begin(), tokens.end());
    t.tokens = std::move(tokens);
    return t;
}

// Independent reference: repeatedly take the best remaining pair, ranking
// exact shape matches before same-signature pairs across a renamed file,
// before any other pair above the threshold.
std::vector<RefactoringLink> brute_force_links(const std::vector<TrackedMethod>& added,
                                               const std::vector<TrackedMethod>& deleted,
                                               const std::vector<FileRename>& renames, double threshold) {
    auto jaccard = [](const std::vector<std::string>& a, const std::vector<std::string>& b) {
        std::map<std::string, int> ca;
        std::map<std::string, int> cb;
        for (const auto& t : a) ++ca[t];
        for (const auto& t : b) ++cb[t];
        std::set<std::string> all;
        for (const auto& [t, _] : ca) all.insert(t);
        for (const auto& [t, _] : cb) all.insert(t);
        if (all.empty()) return 1.0;
        double inter = 0;
        double uni = 0;
        for (const auto& t : all) {
            inter += std::min(ca[t], cb[t]);
            uni += std::max(ca[t], cb[t]);
        }
        return inter / uni;
    };
    auto kind_of = [](const MethodKey& f, const MethodKey& t) {
        if (f.method_name == t.method_name && f.param_types == t.param_types) {
            return f.class_name == t.class_name ? LinkKind::file_rename : LinkKind::class_move_or_rename;
        }
        return f.file_path == t.file_path && f.class_name == t.class_name ? LinkKind::method_rename
                                                                          : LinkKind::method_move;
    };
    std::vector<bool> used_d(deleted.size());
    std::vector<bool> used_a(added.size());
    std::vector<RefactoringLink> out;
    for (;;) {
        std::optional<std::tuple<int, double, MethodKey, MethodKey, std::size_t, std::size_t>> best;
        for (std::size_t d = 0; d < deleted.size(); ++d) {
            for (std::size_t a = 0; a < added.size(); ++a) {
                if (used_d[d] || used_a[a]) continue;
                const auto& f = deleted[d].snapshot.key;
                const auto& t = added[a].snapshot.key;
                int stage;
                double sim;
                if (deleted[d].shape_hash == added[a].shape_hash) {
                    stage = 0;
                    sim = 1.0;
                } else {
                    sim = jaccard(deleted[d].tokens, added[a].tokens);
                    if (sim < threshold) continue;
                    bool renamed = false;
                    for (const auto& r : renames) renamed |= r.old_path == f.file_path && r.new_path == t.file_path;
                    const bool follows = renamed && f.method_name == t.method_name && f.param_types == t.param_types &&
                                         f.class_simple_name() == t.class_simple_name();
                    stage = follows ? 1 : 2;
                }
                auto cand = std::make_tuple(stage, -sim, f, t, d, a);
                if (!best || cand < *best) best = cand;
            }
        }
        if (!best) break;
        const auto& [stage, neg_sim, f, t, d, a] = *best;
        used_d[d] = used_a[a] = true;
        out.push_back({kind_of(f, t), f, t, -neg_sim});
    }
    return out;
}

TEST(DetectRefactorings, AgreesWithBruteForceMatching) {
    SplitMix64 rng(99);
    const std::vector<std::string> files = {"a/A.java", "b/A.java", "B.java"};
    const std::vector<std::string> classes = {"p.A", "q.A", "p.B"};
    const std::vector<std::string> names = {"f", "g", "h"};
    const std::vector<std::vector<std::string>> params = {{}, {"int"}};
    const std::vector<std::string> vocab = {"x", "y", "return", "+", "1"};
    for (int trial = 0; trial < 400; ++trial) {
        auto side = [&](std::size_t n) {
            std::vector<TrackedMethod> out;
            std::set<MethodKey> seen;
            while (out.size() < n) {
                MethodKey key{files[rng.bounded(3)], classes[rng.bounded(3)], names[rng.bounded(3)],
                              params[rng.bounded(2)]};
                if (!seen.insert(key).second) continue;
                std::vector<std::string> toks;
                for (auto k = 2 + rng.bounded(5); k > 0; --k) toks.push_back(vocab[rng.bounded(vocab.size())]);
                out.push_back(tracked(key, "s" + std::to_string(rng.bounded(5)), toks));
            }
            return out;
        };
        const auto added = side(rng.bounded(6));
        const auto deleted = side(rng.bounded(6));
        std::vector<FileRename> renames;
        if (rng.bounded(2)) renames.push_back({files[0], files[1]});
        if (rng.bounded(2)) renames.push_back({files[2], files[0]});
        const double threshold = 0.3 + 0.1 * static_cast<double>(rng.bounded(7));
        EXPECT_EQ(detect_refactorings(added, deleted, renames, threshold),
                  brute_force_links(added, deleted, renames, threshold))
            << "trial " << trial;
    }
}

TEST(DetectRefactorings, ExactBeforeFuzzyAndOneToOne) {
    const MethodKey old_f{"A.java", "p.A", "f", {}};
    const MethodKey new_g{"A.java", "p.A", "g", {}};
    const MethodKey new_h{"A.java", "p.A", "h", {}};
    const auto links = detect_refactorings({tracked(new_g, "s2", {"a", "b"}), tracked(new_h, "s1", {"a", "b", "c"})},
                                           {tracked(old_f, "s1", {"a", "b"})}, {}, 0.5);
    ASSERT_EQ(links.size(), 1u);
    EXPECT_EQ(links[0].to_key, new_h);
    EXPECT_EQ(links[0].similarity, 1.0);
    EXPECT_EQ(links[0].kind, LinkKind::method_rename);
}

TEST(DetectRefactorings, BelowThresholdIsNotLinked) {
    const auto links = detect_refactorings({tracked({"A.java", "p.A", "g", {}}, "s2", {"a", "b"})},
                                           {tracked({"A.java", "p.A", "f", {}}, "s1", {"c", "d"})}, {}, 0.8);
    EXPECT_TRUE(links.empty());
}

TEST(TokenJaccard, MultisetSemantics) {
    EXPECT_DOUBLE_EQ(token_jaccard({"a", "a", "b"}, {"a", "b"}), 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(token_jaccard({}, {}), 1.0);
    EXPECT_DOUBLE_EQ(token_jaccard({"a"}, {}), 0.0);
}

TEST(TrackMethod, ShapeIgnoresOwnName) {
    const auto a = track_method(test::parse_one("int f(int n) { return n < 1 ? 0 : f(n - 1); }"));
    const auto b = track_method(test::parse_one("int g(int n) { return n < 1 ? 0 : g(n - 1); }"));
    const auto c = track_method(test::parse_one("int g(int n) { return n < 1 ? 1 : g(n - 1); }"));
    EXPECT_EQ(a.shape_hash, b.shape_hash);
    EXPECT_NE(a.shape_hash, c.shape_hash);
    EXPECT_TRUE(std::is_sorted(a.tokens.begin(), a.tokens.end()));
}

TEST(LinkHistories, RejectsLinksThatAreNotAMatching) {
    const MethodKey f{"A.java", "p.A", "f", {}};
    const MethodKey g{"A.java", "p.A", "g", {}};
    const MethodKey h{"A.java", "p.A", "h", {}};
    std::vector<CommitRecord> commits(2);
    commits[0].sha = "c0";
    commits[1].sha = "c1";
    commits[1].order_index = 1;
    std::vector<CommitChanges> changes(2);
    changes[0].diff.added = {tracked(f, "s", {})};
    changes[1].diff.deleted = {tracked(f, "s", {})};
    changes[1].diff.added = {tracked(g, "s", {}), tracked(h, "s", {})};
    changes[1].links = {{LinkKind::method_rename, f, g, 1.0}, {LinkKind::method_rename, f, h, 1.0}};
    EXPECT_THROW(link_histories(commits, changes), ConsistencyError);

    changes[1].links.pop_back();
    const auto histories = link_histories(commits, changes);
    ASSERT_EQ(histories.size(), 2u);
    EXPECT_EQ(histories[0].snapshots.size(), 2u);
    EXPECT_EQ(histories[0].links.size(), 1u);
    EXPECT_EQ(extract_creations(histories).size(), 2u);
}

// ---- mining fixtures -------------------------------------------------------

using test::JavaClass;
using test::State;
using test::creation_multiset;
using test::mine_states;

TEST(MineRepository, LinkKindsAcrossRefactorings) {
    TempDir dir("miner-kinds");
    State s0 = {{"p", "A", "src", {{"alpha", 1}, {"beta", 2}, {"gamma", 3}}}, {"p", "B", "src", {{"delta", 4}}}};
    State s1 = s0;
    s1[0].methods[0].first = "alphaRenamed";        // method_rename
    s1[1].methods.emplace_back("betaMoved", 2);    // moves to B under a new name: method_move
    s1[0].methods.erase(s1[0].methods.begin() + 1);
    State s2 = s1;
    s2[1].dir = "src/moved";                        // file_rename
    State s3 = s2;
    s3[0].name = "A2";                              // class_move_or_rename
    const auto r = mine_states(dir.path(), {s0, s1, s2, s3});

    std::vector<LinkKind> kinds;
    for (const auto& c : r.changes) {
        for (const auto& l : c.links) kinds.push_back(l.kind);
    }
    std::sort(kinds.begin(), kinds.end());
    std::vector<LinkKind> expected = {LinkKind::method_rename, LinkKind::method_move, LinkKind::class_move_or_rename,
                                      LinkKind::class_move_or_rename, LinkKind::file_rename, LinkKind::file_rename};
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(kinds, expected);
    EXPECT_EQ(r.events.size(), 4u);
    for (const auto& e : r.events) EXPECT_EQ(e.order_index, 0u);
    for (const auto& h : r.histories) EXPECT_EQ(h.snapshots.size(), h.order_indices.size());
}

TEST(MineRepository, ModifiedAndDeletedMethodsKeepOneEvent) {
    TempDir dir("miner-mod");
    State s0 = {{"p", "A", "src", {{"a", 1}, {"b", 2}}}};
    State s1 = s0;
    s1[0].methods[0].second = 10;
    State s2 = s1;
    s2[0].methods.pop_back();
    const auto r = mine_states(dir.path(), {s0, s1, s2});
    ASSERT_EQ(r.events.size(), 2u);
    ASSERT_EQ(r.histories.size(), 2u);
    std::size_t deleted = 0;
    for (const auto& h : r.histories) {
        if (h.deleted_at) {
            EXPECT_EQ(*h.deleted_at, 2u);
            ++deleted;
        } else {
            EXPECT_EQ(h.snapshots.size(), 2u);
        }
    }
    EXPECT_EQ(deleted, 1u);
}

TEST(MineRepository, UnparseableFileIsSkippedWithWarning) {
    TempDir dir("miner-bad");
    FixtureRepo repo(dir.path());
    repo.write("src/Good.java", "class Good { int f() { return 1; } }\n");
    repo.write("src/Bad.java", "class Bad { int f() { return \"open; } }\n");
    repo.commit("init");
    const auto r = mine_repository(GitRepository(dir.path()), "main");
    ASSERT_EQ(r.events.size(), 1u);
    EXPECT_EQ(r.events[0].snapshot.key.file_path, "src/Good.java");
    ASSERT_FALSE(r.warnings.empty());
    EXPECT_EQ(r.warnings[0].path, "src/Bad.java");
}

TEST(MineRepository, SerialAndParallelAgree) {
    TempDir dir("miner-exec");
    State s0 = {{"p", "A", "src", {{"a", 1}, {"b", 2}}}, {"p", "B", "src", {{"c", 3}}}};
    State s1 = s0;
    s1[0].methods[1].first = "bee";
    s1[1].methods.push_back({"d", 5});
    const auto serial_dir = dir.path() / "r";
    const auto parallel = mine_states(serial_dir, {s0, s1});
    const auto serial = mine_repository(GitRepository(serial_dir), "main", {0.8, Execution::serial});
    ASSERT_EQ(parallel.events.size(), serial.events.size());
    for (std::size_t i = 0; i < serial.events.size(); ++i) {
        EXPECT_EQ(parallel.events[i].history_id, serial.events[i].history_id);
        EXPECT_EQ(parallel.events[i].snapshot.body_text, serial.events[i].snapshot.body_text);
    }
}

// Squashing a commit that only renames or moves methods must not change
// which methods are created.
TEST(MineRepository, RenameOnlyCommitIsInvisibleToCreations) {
    SplitMix64 rng(4242);
    for (int trial = 0; trial < 12; ++trial) {
        TempDir dir("miner-squash");
        const auto c = test::rename_squash_case(rng);
        const auto a = mine_states(dir.path() / "full", c.full);
        const auto b = mine_states(dir.path() / "squashed", c.squashed);
        EXPECT_EQ(creation_multiset(a), creation_multiset(b)) << "trial " << trial;
        EXPECT_EQ(a.events.size(), c.methods) << "trial " << trial;
    }
}
}  // namespace
}  // namespace namemine
