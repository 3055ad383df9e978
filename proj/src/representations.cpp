#include "namemine/representations.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <stdexcept>

#include "namemine/hash.hpp"
#include "namemine/java/lexer.hpp"
#include "namemine/rng.hpp"

namespace namemine {

namespace {

// Flat view of a tree: preorder node arrays with parent links.
struct FlatTree {
    std::vector<const java::SyntaxNode*> nodes;
    std::vector<std::size_t> parent;
    std::vector<std::size_t> depth;
    std::vector<std::size_t> leaves;  // node indices of token-carrying nodes

    explicit FlatTree(const java::SyntaxNode& root) { add(root, 0, 0); }

private:
    void add(const java::SyntaxNode& node, std::size_t parent_index, std::size_t d) {
        const std::size_t self = nodes.size();
        nodes.push_back(&node);
        parent.push_back(parent_index);
        depth.push_back(d);
        if (node.is_leaf()) leaves.push_back(self);
        for (const auto& child : node.children) add(child, self, d + 1);
    }
};

void append_counted(std::string& out, std::string_view s) {
    out += std::to_string(s.size());
    out += ':';
    out += s;
}

std::size_t read_number(std::string_view text, std::size_t& pos) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
    if (ec != std::errc() || ptr == text.data() + pos) {
        throw std::invalid_argument("malformed canonical AST: number expected");
    }
    pos = static_cast<std::size_t>(ptr - text.data());
    return value;
}

void join_subtokens(std::string& out, const SubTokenSequence& tokens) {
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out += '|';
        out += tokens[i];
    }
}

}  // namespace

TokenSequence tokenize(std::string_view source) {
    TokenSequence out;
    for (const auto& t : java::lex(source).tokens) out.emplace_back(t.text);
    return out;
}

SerializedAst serialize_ast(const java::SyntaxNode& root) {
    SerializedAst out;
    java::visit_preorder(root, [&](const java::SyntaxNode& n) {
        out.push_back({n.type, n.token, n.children.size()});
        return true;
    });
    return out;
}

java::SyntaxNode reconstruct_ast(const SerializedAst& ast) {
    if (ast.empty()) throw std::invalid_argument("empty serialized AST");
    std::size_t pos = 0;
    auto build = [&](auto&& self) -> java::SyntaxNode {
        if (pos >= ast.size()) throw std::invalid_argument("serialized AST ends early");
        const AstEntry& e = ast[pos++];
        java::SyntaxNode node;
        node.type = e.type;
        node.token = e.token;
        node.children.reserve(e.child_count);
        for (std::size_t i = 0; i < e.child_count; ++i) node.children.push_back(self(self));
        return node;
    };
    java::SyntaxNode root = build(build);
    if (pos != ast.size()) throw std::invalid_argument("trailing entries in serialized AST");
    return root;
}

std::string canonical_ast(const SerializedAst& ast) {
    std::string out;
    for (std::size_t i = 0; i < ast.size(); ++i) {
        if (i) out += ' ';
        out += ast[i].type;
        out += '/';
        out += std::to_string(ast[i].child_count);
        if (ast[i].token) {
            out += '=';
            append_counted(out, *ast[i].token);
        }
    }
    return out;
}

SerializedAst parse_canonical_ast(std::string_view text) {
    SerializedAst out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto slash = text.find('/', pos);
        if (slash == std::string_view::npos) throw std::invalid_argument("malformed canonical AST");
        AstEntry e;
        e.type = std::string(text.substr(pos, slash - pos));
        pos = slash + 1;
        e.child_count = read_number(text, pos);
        if (pos < text.size() && text[pos] == '=') {
            ++pos;
            const std::size_t len = read_number(text, pos);
            if (pos >= text.size() || text[pos] != ':' || pos + 1 + len > text.size()) {
                throw std::invalid_argument("malformed canonical AST token");
            }
            e.token = std::string(text.substr(pos + 1, len));
            pos += 1 + len;
        }
        out.push_back(std::move(e));
        if (pos < text.size()) {
            if (text[pos] != ' ') throw std::invalid_argument("malformed canonical AST separator");
            ++pos;
        }
    }
    return out;
}

std::string path_string(const std::vector<PathStep>& path) {
    std::string out;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i) out += path[i].direction == Direction::up || path[i - 1].direction == Direction::up ? '^' : '_';
        out += '(';
        out += path[i].node_type;
        out += ')';
    }
    return out;
}

std::vector<PathContext> extract_path_contexts(const java::SyntaxNode& root,
                                               const PathExtractionParams& params) {
    const FlatTree tree(root);
    const auto& leaves = tree.leaves;

    struct Pair {
        std::size_t i;
        std::size_t j;
        std::size_t lca;
    };
    std::vector<Pair> pairs;
    for (std::size_t i = 0; i < leaves.size(); ++i) {
        const std::size_t last = params.max_path_width >= leaves.size() - i
                                     ? leaves.size() - 1
                                     : i + params.max_path_width;
        for (std::size_t j = i + 1; j <= last; ++j) {
            std::size_t a = leaves[i];
            std::size_t b = leaves[j];
            std::size_t length = 1;
            while (tree.depth[a] > tree.depth[b]) a = tree.parent[a], ++length;
            while (tree.depth[b] > tree.depth[a]) b = tree.parent[b], ++length;
            while (a != b) a = tree.parent[a], b = tree.parent[b], length += 2;
            if (length <= params.max_path_length) pairs.push_back({i, j, a});
        }
    }

    if (pairs.size() > params.max_contexts) {
        std::vector<std::size_t> pick(pairs.size());
        std::iota(pick.begin(), pick.end(), 0);
        SplitMix64 rng(params.sampling_seed);
        for (std::size_t t = 0; t < params.max_contexts; ++t) {
            const auto r = t + static_cast<std::size_t>(rng.bounded(pick.size() - t));
            std::swap(pick[t], pick[r]);
        }
        pick.resize(params.max_contexts);
        std::sort(pick.begin(), pick.end());
        std::vector<Pair> kept;
        kept.reserve(pick.size());
        for (auto p : pick) kept.push_back(pairs[p]);
        pairs = std::move(kept);
    }

    std::vector<PathContext> contexts;
    contexts.reserve(pairs.size());
    for (const auto& p : pairs) {
        PathContext c;
        c.left_leaf = p.i;
        c.right_leaf = p.j;
        c.left = split_subtokens(*tree.nodes[leaves[p.i]]->token);
        c.right = split_subtokens(*tree.nodes[leaves[p.j]]->token);
        for (std::size_t n = leaves[p.i]; n != p.lca; n = tree.parent[n]) {
            c.path.push_back({tree.nodes[n]->type, Direction::up});
        }
        std::vector<PathStep> down;
        for (std::size_t n = leaves[p.j]; n != p.lca; n = tree.parent[n]) {
            down.push_back({tree.nodes[n]->type, Direction::down});
        }
        c.path.push_back({tree.nodes[p.lca]->type, Direction::down});
        c.path.insert(c.path.end(), down.rbegin(), down.rend());
        contexts.push_back(std::move(c));
    }
    return contexts;
}

std::vector<std::vector<PathContext>> extract_path_contexts_batch(
    const std::vector<const java::SyntaxNode*>& roots, const PathExtractionParams& params,
    Execution execution) {
    std::vector<std::vector<PathContext>> out(roots.size());
    const auto n = static_cast<std::ptrdiff_t>(roots.size());
#pragma omp parallel for schedule(dynamic, 4) if (execution == Execution::parallel)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        out[k] = extract_path_contexts(*roots[k], params);
    }
    return out;
}

std::string canonical_tokens(const TokenSequence& tokens) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out += ' ';
        append_counted(out, tokens[i]);
    }
    return out;
}

std::string canonical_path_contexts(const std::vector<PathContext>& contexts) {
    std::string out;
    for (std::size_t i = 0; i < contexts.size(); ++i) {
        if (i) out += '\n';
        join_subtokens(out, contexts[i].left);
        out += ',';
        out += path_string(contexts[i].path);
        out += ',';
        join_subtokens(out, contexts[i].right);
    }
    return out;
}

std::string_view to_string(Representation representation) {
    switch (representation) {
        case Representation::tokens: return "tokens";
        case Representation::ast: return "ast";
        case Representation::path_contexts: return "path_contexts";
    }
    return "unknown";
}

std::optional<Representation> parse_representation(std::string_view name) {
    for (auto r : {Representation::tokens, Representation::ast, Representation::path_contexts}) {
        if (to_string(r) == name) return r;
    }
    return std::nullopt;
}

std::string representation_fingerprint(Representation representation, std::string_view canonical) {
    std::string bytes(to_string(representation));
    bytes += '\n';
    bytes += canonical;
    return sha256_hex(bytes);
}

std::optional<std::string> canonical_representation(Representation representation,
                                                    const DatasetRecord& record,
                                                    const PathExtractionParams& params) {
    switch (representation) {
        case Representation::tokens:
            try {
                return canonical_tokens(tokenize(record.masked_source));
            } catch (const java::ParseError&) {
                return std::nullopt;
            }
        case Representation::ast:
            if (record.masked_tree.type.empty()) return std::nullopt;
            return canonical_ast(serialize_ast(record.masked_tree));
        case Representation::path_contexts:
            if (record.masked_tree.type.empty()) return std::nullopt;
            return canonical_path_contexts(extract_path_contexts(record.masked_tree, params));
    }
    return std::nullopt;
}

FingerprintFn fingerprint_function(Representation representation, const PathExtractionParams& params) {
    return [representation, params](const DatasetRecord& record) -> std::optional<std::string> {
        auto canonical = canonical_representation(representation, record, params);
        if (!canonical) return std::nullopt;
        return representation_fingerprint(representation, *canonical);
    };
}

}  // namespace namemine
