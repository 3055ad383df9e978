#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "namemine/error.hpp"
#include "namemine/java/syntax.hpp"
#include "namemine/method.hpp"

namespace namemine {

struct ParsedMethod {
    MethodSnapshot snapshot;
    java::SyntaxNode syntax_tree;  // spans relative to snapshot.body_text
    std::set<std::string> modifiers;
    std::set<std::string> annotations;
    bool is_constructor = false;
    bool has_body = false;
};

struct FileParseResult {
    std::vector<ParsedMethod> methods;
    std::vector<Diagnostic> warnings;
    /// Parsing stopped outside a member; see java::CompilationUnitResult.
    bool fatal = false;
};

/// All method and constructor declarations of `file_text`. Duplicate keys
/// within the file keep the first declaration and add a warning.
FileParseResult parse_methods(std::string_view file_text, const std::string& file_path);

/// Re-parses `text` as the declaration of `like`'s method; key, commit, and
/// start line are carried over. Throws java::ParseError.
ParsedMethod reparse_method(const ParsedMethod& like, std::string text);

/// Removes line, block, and doc comments from Java source text. Lines left
/// blank by the removal are dropped; other lines keep their layout.
std::string strip_comment_text(std::string_view text);

ParsedMethod strip_comments(const ParsedMethod& method);

inline constexpr std::string_view kMethodNameStub = "METHODNAMESTUB";

/// Replaces the declaration name and the callee of every self-call (bare,
/// this-qualified, or qualified by the declaring class) with `stub`.
ParsedMethod mask_recursion(const ParsedMethod& method, std::string_view stub = kMethodNameStub);

/// The body text mask_recursion would produce, without reparsing it.
std::string mask_recursion_text(const ParsedMethod& method, std::string_view stub = kMethodNameStub);

enum class RejectionReason { constructor, abstract_method, overridden, empty };

std::string_view to_string(RejectionReason reason);

struct KeepDecision {
    bool keep = true;
    std::optional<RejectionReason> reason;
};

KeepDecision keep_method(const ParsedMethod& method);

using SubTokenSequence = std::vector<std::string>;

struct SplitOptions {
    bool split_digits = true;
};

/// camelCase / snake_case splitting into lowercase sub-tokens. Any character
/// other than an ASCII letter, digit, or non-ASCII byte separates tokens.
SubTokenSequence split_subtokens(std::string_view identifier, SplitOptions options = {});

}  // namespace namemine
