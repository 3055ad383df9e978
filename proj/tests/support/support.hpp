#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <gtest/gtest.h>

#include "namemine/analysis.hpp"
#include "namemine/dataset.hpp"
#include "namemine/hash.hpp"
#include "namemine/miner.hpp"
#include "namemine/rng.hpp"

namespace namemine::test {

inline std::filesystem::path data_file(std::string_view name) {
    return std::filesystem::path(NAMEMINE_TEST_DATA) / name;
}

inline std::string read_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

/// Wraps members into `class <simple name of class_name>` and parses them.
inline std::vector<ParsedMethod> parse_members(std::string_view members,
                                               const std::string& class_name = "com.example.Sample",
                                               const std::string& path = "src/Sample.java") {
    const auto dot = class_name.rfind('.');
    std::string text;
    if (dot != std::string::npos) text += "package " + class_name.substr(0, dot) + ";\n\n";
    text += "class " + class_name.substr(dot == std::string::npos ? 0 : dot + 1) + " {\n";
    text += members;
    text += "\n}\n";
    auto result = parse_methods(text, path);
    EXPECT_FALSE(result.fatal);
    return std::move(result.methods);
}

inline ParsedMethod parse_one(std::string_view method, const std::string& class_name = "com.example.Sample") {
    auto methods = parse_members(method, class_name);
    EXPECT_EQ(methods.size(), 1u);
    return methods.empty() ? ParsedMethod{} : methods.front();
}

/// Synthetic creation event; the body is a trivial method named `name`.
inline MethodCreationEvent make_event(std::size_t order_index, const std::string& name,
                                      const std::string& file = "src/A.java") {
    MethodCreationEvent e;
    e.order_index = order_index;
    e.commit_sha = sha256_hex("commit " + std::to_string(order_index)).substr(0, 40);
    e.author_time = 1577836800 + static_cast<std::int64_t>(order_index) * 60;
    e.snapshot.key = {file, "com.example.A", name, {}};
    e.snapshot.body_text = "int " + name + "() {\n    return " + std::to_string(order_index) + ";\n}";
    e.snapshot.body_hash = body_hash(e.snapshot.body_text);
    e.snapshot.commit_sha = e.commit_sha;
    e.snapshot.start_line = 1;
    e.snapshot.end_line = 3;
    e.history_id = sha256_hex(e.commit_sha + "\n" + e.snapshot.key.to_string()).substr(0, 16);
    return e;
}

/// `commits` commits with 0..max_per_commit events each (at least one overall).
inline std::vector<MethodCreationEvent> random_history(SplitMix64& rng, std::size_t commits,
                                                       std::size_t max_per_commit = 4) {
    std::vector<MethodCreationEvent> events;
    std::size_t serial = 0;
    for (std::size_t c = 0; c < commits; ++c) {
        const auto n = rng.bounded(max_per_commit + 1);
        for (std::uint64_t k = 0; k < n; ++k) events.push_back(make_event(c, "m" + std::to_string(serial++)));
    }
    if (events.empty()) events.push_back(make_event(rng.bounded(commits), "only"));
    return events;
}

}  // namespace namemine::test
