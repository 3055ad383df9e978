#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "namemine/analysis.hpp"
#include "namemine/dataset.hpp"
#include "namemine/java/syntax.hpp"
#include "namemine/miner.hpp"

namespace namemine {

using TokenSequence = std::vector<std::string>;

/// Lexer tokens of method source, comments dropped. Throws java::ParseError.
TokenSequence tokenize(std::string_view source);

struct AstEntry {
    std::string type;
    std::optional<std::string> token;
    std::size_t child_count = 0;

    bool operator==(const AstEntry&) const = default;
};

using SerializedAst = std::vector<AstEntry>;

/// Preorder with child counts.
SerializedAst serialize_ast(const java::SyntaxNode& root);

/// Inverse of serialize_ast; throws std::invalid_argument on malformed input.
java::SyntaxNode reconstruct_ast(const SerializedAst& ast);

/// Space-separated `type/children` entries, leaves as `type/0=len:token`.
std::string canonical_ast(const SerializedAst& ast);
SerializedAst parse_canonical_ast(std::string_view text);

enum class Direction { up, down };

struct PathStep {
    std::string node_type;
    Direction direction = Direction::up;

    bool operator==(const PathStep&) const = default;
};

struct PathContext {
    std::size_t left_leaf = 0;  // leaf indices in left-to-right order
    std::size_t right_leaf = 0;
    SubTokenSequence left;
    std::vector<PathStep> path;  // left leaf up to below the ancestor, then ancestor down to right leaf
    SubTokenSequence right;

    bool operator==(const PathContext&) const = default;
};

/// "(A)^(B)^(LCA)_(C)_(D)".
std::string path_string(const std::vector<PathStep>& path);

struct PathExtractionParams {
    std::size_t max_path_length = 9;  // nodes on the path, both leaves included
    std::size_t max_path_width = 2;   // right_leaf - left_leaf
    std::size_t max_contexts = 200;
    std::uint64_t sampling_seed = 0;

    static PathExtractionParams unbounded() {
        constexpr auto inf = std::numeric_limits<std::size_t>::max();
        return {inf, inf, inf, 0};
    }
};

/// Leaves are the token-carrying nodes. Contexts come out sorted by leaf pair;
/// over the cap, a seeded uniform sample without replacement is kept.
std::vector<PathContext> extract_path_contexts(const java::SyntaxNode& root,
                                               const PathExtractionParams& params);

std::vector<std::vector<PathContext>> extract_path_contexts_batch(
    const std::vector<const java::SyntaxNode*>& roots, const PathExtractionParams& params,
    Execution execution = Execution::parallel);

std::string canonical_tokens(const TokenSequence& tokens);
std::string canonical_path_contexts(const std::vector<PathContext>& contexts);

enum class Representation { tokens, ast, path_contexts };

std::string_view to_string(Representation representation);
std::optional<Representation> parse_representation(std::string_view name);

/// SHA-256 hex over the representation name and its canonical string.
std::string representation_fingerprint(Representation representation, std::string_view canonical);

/// Canonical string of a record under `representation`, or nullopt when it
/// cannot be extracted.
std::optional<std::string> canonical_representation(Representation representation,
                                                    const DatasetRecord& record,
                                                    const PathExtractionParams& params);

FingerprintFn fingerprint_function(Representation representation, const PathExtractionParams& params);

}  // namespace namemine
