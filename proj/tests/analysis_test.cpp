#include <gtest/gtest.h>

#include <algorithm>
#include <utility>

#include "namemine/analysis.hpp"
#include "support.hpp"

namespace namemine {
namespace {

using test::parse_members;
using test::parse_one;

// Hand-split identifiers covering camel, acronym, snake, digit, and non-ASCII cases.
const std::vector<std::pair<std::string, SubTokenSequence>> kSplitOracle = {
    {"getApple", {"get", "apple"}},
    {"getGetGetGetOrange", {"get", "get", "get", "get", "orange"}},
    {"countLines", {"count", "lines"}},
    {"linesCount", {"lines", "count"}},
    {"HTMLParser", {"html", "parser"}},
    {"parseHTML", {"parse", "html"}},
    {"snake_case_name", {"snake", "case", "name"}},
    {"__init__", {"init"}},
    {"XMLHttpRequest", {"xml", "http", "request"}},
    {"toString", {"to", "string"}},
    {"getX", {"get", "x"}},
    {"a", {"a"}},
    {"ABC", {"abc"}},
    {"md5Hash", {"md", "5", "hash"}},
    {"utf8ToUtf16", {"utf", "8", "to", "utf", "16"}},
    {"SCREAMING_CASE", {"screaming", "case"}},
    {"IOError", {"io", "error"}},
    {"mixed_Case_withCamel", {"mixed", "case", "with", "camel"}},
    {"$value", {"value"}},
    {"getHTTPResponseCode", {"get", "http", "response", "code"}},
    {"größeBerechnen", {"größe", "berechnen"}},
};

TEST(SplitSubtokens, MatchesHandSplitOracle) {
    for (const auto& [identifier, expected] : kSplitOracle) {
        EXPECT_EQ(split_subtokens(identifier), expected) << identifier;
    }
}

TEST(SplitSubtokens, DigitsStayAttachedWhenNotSplitting) {
    EXPECT_EQ(split_subtokens("md5Hash", {.split_digits = false}), (SubTokenSequence{"md5", "hash"}));
}

TEST(SplitSubtokens, EmptyAndSeparatorOnly) {
    EXPECT_TRUE(split_subtokens("").empty());
    EXPECT_TRUE(split_subtokens("___").empty());
}

TEST(SplitSubtokens, OutputIsLowercaseAndNonEmpty) {
    SplitMix64 rng(7);
    const std::string alphabet = "aZb_Y9$cX";
    for (int i = 0; i < 500; ++i) {
        std::string id;
        for (auto n = rng.bounded(12); n > 0; --n) id += alphabet[rng.bounded(alphabet.size())];
        for (const auto& sub : split_subtokens(id)) {
            EXPECT_FALSE(sub.empty()) << id;
            EXPECT_TRUE(std::none_of(sub.begin(), sub.end(), [](char c) { return c >= 'A' && c <= 'Z'; })) << id;
        }
    }
}

TEST(BodyHash, IgnoresCommentsAndWhitespace) {
    const std::string a = "int f() {\n  return 1; // one\n}";
    const std::string b = "int f(){return 1;/* two */}";
    EXPECT_EQ(body_hash(a), body_hash(b));
    EXPECT_NE(body_hash(a), body_hash("int f() { return 2; }"));
    EXPECT_EQ(normalize_body(a), "intf(){return1;}");
    EXPECT_EQ(body_hash(a).size(), 64u);
}

TEST(BodyHash, KeepsCommentMarkersInsideStrings) {
    EXPECT_EQ(normalize_body("String s() { return \"// not a comment\"; }"),
              "Strings(){return\"//notacomment\";}");
}

TEST(StripComments, RemovesAllCommentKinds) {
    const std::string text =
        "/** Doc. */\n"
        "int f(int x) {\n"
        "    // line\n"
        "    int y = x; /* block */\n"
        "    return y;\n"
        "}";
    EXPECT_EQ(strip_comment_text(text), "int f(int x) {\n    int y = x;\n    return y;\n}");
}

TEST(ParseMethods, KeysAndLines) {
    const std::string file =
        "package com.example;\n"
        "\n"
        "public class Outer {\n"
        "    void a(int x, String[] y) {\n"
        "        x++;\n"
        "    }\n"
        "    static class Inner {\n"
        "        <T> java.util.List<T> b(java.util.Map<String, T> m) { return null; }\n"
        "    }\n"
        "}\n";
    const auto result = parse_methods(file, "src/com/example/Outer.java");
    ASSERT_EQ(result.methods.size(), 2u);
    const auto& a = result.methods[0].snapshot;
    EXPECT_EQ(a.key.class_name, "com.example.Outer");
    EXPECT_EQ(a.key.method_name, "a");
    EXPECT_EQ(a.key.param_types, (std::vector<std::string>{"int", "String[]"}));
    EXPECT_EQ(a.start_line, 4u);
    EXPECT_EQ(a.end_line, 6u);
    EXPECT_EQ(a.body_text, "void a(int x, String[] y) {\n        x++;\n    }");
    const auto& b = result.methods[1].snapshot;
    EXPECT_EQ(b.key.class_name, "com.example.Outer.Inner");
    EXPECT_EQ(b.key.class_simple_name(), "Inner");
    EXPECT_EQ(b.key.param_types, (std::vector<std::string>{"java.util.Map<String,T>"}));
    EXPECT_EQ(b.start_line, 8u);
}

TEST(ParseMethods, DuplicateKeyKeepsFirstWithWarning) {
    const auto result = parse_methods("class A { void f() { } void f() { return; } }", "A.java");
    ASSERT_EQ(result.methods.size(), 1u);
    EXPECT_EQ(result.warnings.size(), 1u);
}

TEST(ParseMethods, AnonymousAndLocalClassMethodsStayInside) {
    const auto methods = parse_members(
        "Runnable r() {\n"
        "    class Local { void hidden() { } }\n"
        "    return new Runnable() { public void run() { } };\n"
        "}");
    ASSERT_EQ(methods.size(), 1u);
    EXPECT_EQ(methods[0].snapshot.key.method_name, "r");
}

TEST(KeepMethod, FilterRules) {
    const auto methods = parse_members(
        "Sample() { }\n"
        "abstract int area();\n"
        "@Override public String toString() { return \"s\"; }\n"
        "void nothing() { }\n"
        "int twice(int x) { return 2 * x; }\n");
    ASSERT_EQ(methods.size(), 5u);
    EXPECT_EQ(keep_method(methods[0]).reason, RejectionReason::constructor);
    EXPECT_EQ(keep_method(methods[1]).reason, RejectionReason::abstract_method);
    EXPECT_EQ(keep_method(methods[2]).reason, RejectionReason::overridden);
    EXPECT_EQ(keep_method(methods[3]).reason, RejectionReason::empty);
    EXPECT_TRUE(keep_method(methods[4]).keep);
    EXPECT_FALSE(keep_method(methods[4]).reason.has_value());
}

TEST(KeepMethod, InterfaceMethodWithoutBodyIsAbstract) {
    auto result = parse_methods("interface Shape { double area(); default double twice() { return 2 * area(); } }",
                                "Shape.java");
    ASSERT_EQ(result.methods.size(), 2u);
    EXPECT_EQ(keep_method(result.methods[0]).reason, RejectionReason::abstract_method);
    EXPECT_TRUE(keep_method(result.methods[1]).keep);
}

TEST(KeepMethod, CommentOnlyBodyIsEmpty) {
    const auto m = parse_one("void todo() {\n    // later\n}");
    EXPECT_EQ(keep_method(strip_comments(m)).reason, RejectionReason::empty);
}

TEST(MaskRecursion, MasksDeclarationAndSelfCalls) {
    const auto m = parse_one(
        "long fact(long n) {\n"
        "    if (n < 2) return 1;\n"
        "    return n * fact(n - 1) + this.fact(0) + Sample.fact(0) + com.example.Sample.fact(0);\n"
        "}");
    const auto masked = mask_recursion(m);
    const auto& text = masked.snapshot.body_text;
    EXPECT_EQ(text,
              "long METHODNAMESTUB(long n) {\n"
              "    if (n < 2) return 1;\n"
              "    return n * METHODNAMESTUB(n - 1) + this.METHODNAMESTUB(0) + Sample.METHODNAMESTUB(0) + "
              "com.example.Sample.METHODNAMESTUB(0);\n"
              "}");
    EXPECT_EQ(text.find("fact"), std::string::npos);
    EXPECT_EQ(mask_recursion_text(m), text);
}

TEST(MaskRecursion, LeavesOtherReceiversAndFieldsAlone) {
    const auto m = parse_one("int size(java.util.List<Integer> other) {\n    return other.size() + size;\n}");
    EXPECT_EQ(mask_recursion(m).snapshot.body_text,
              "int METHODNAMESTUB(java.util.List<Integer> other) {\n    return other.size() + size;\n}");
}

TEST(MaskRecursion, TreeMatchesText) {
    const auto m = parse_one("int f(int x) { return x > 0 ? f(x - 1) : 0; }");
    const auto masked = mask_recursion(m);
    std::size_t stubs = 0;
    java::visit_preorder(masked.syntax_tree, [&](const java::SyntaxNode& n) {
        if (n.token == kMethodNameStub) ++stubs;
        EXPECT_NE(n.token, std::optional<std::string>("f"));
        return true;
    });
    EXPECT_EQ(stubs, 2u);
}

}  // namespace
}  // namespace namemine
