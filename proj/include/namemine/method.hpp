#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace namemine {

/// Identity of a method inside one commit's tree.
struct MethodKey {
    std::string file_path;
    std::string class_name;  // package-qualified
    std::string method_name;
    std::vector<std::string> param_types;

    auto operator<=>(const MethodKey&) const = default;
    bool operator==(const MethodKey&) const = default;

    /// "path:Class#name(T1,T2)", for diagnostics and stable ids.
    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] std::string class_simple_name() const;
};

struct MethodSnapshot {
    MethodKey key;
    std::string body_text;  // declaration source including signature
    std::string body_hash;  // see body_hash()
    std::string commit_sha;
    std::uint32_t start_line = 0;
    std::uint32_t end_line = 0;
};

/// Comments removed, then every whitespace character removed.
std::string normalize_body(std::string_view text);

/// SHA-256 hex of normalize_body(text).
std::string body_hash(std::string_view text);

}  // namespace namemine
