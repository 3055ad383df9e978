#include "namemine/analysis.hpp"

#include <algorithm>
#include <map>

#include "namemine/java/lexer.hpp"
#include "namemine/java/parser.hpp"

namespace namemine {

namespace {

ParsedMethod from_declaration(java::MethodDeclaration decl, std::string body_text,
                              const std::string& file_path) {
    ParsedMethod m;
    m.snapshot.key = MethodKey{file_path, std::move(decl.class_name), std::move(decl.name),
                               std::move(decl.param_types)};
    m.snapshot.body_hash = body_hash(body_text);
    m.snapshot.body_text = std::move(body_text);
    m.snapshot.start_line = decl.start_line;
    m.snapshot.end_line = decl.end_line;
    m.syntax_tree = std::move(decl.tree);
    m.modifiers = std::move(decl.modifiers);
    m.annotations = std::move(decl.annotations);
    m.is_constructor = decl.is_constructor;
    m.has_body = decl.has_body;
    return m;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }

constexpr char kCommentMark = '\x01';

const java::SyntaxNode* first_child_of_type(const java::SyntaxNode& node, std::string_view type) {
    for (const auto& child : node.children) {
        if (child.type == type) return &child;
    }
    return nullptr;
}

/// Dotted form of a NameExpr / FieldAccessExpr chain, empty otherwise.
std::string dotted_name(const java::SyntaxNode& node) {
    if (node.type == "NameExpr") return *node.token;
    if (node.type == "FieldAccessExpr" && node.children.size() == 2) {
        std::string scope = dotted_name(node.children[0]);
        if (scope.empty()) return {};
        return scope + "." + *node.children[1].token;
    }
    return {};
}

bool is_own_class_scope(const java::SyntaxNode& scope, const MethodKey& key) {
    if (scope.type == "ThisExpr") return true;
    if (scope.type == "QualifiedThisExpr") {
        return is_own_class_scope(scope.children.front(), key);
    }
    const std::string name = dotted_name(scope);
    if (name.empty()) return false;
    const std::string& qualified = key.class_name;
    if (name == qualified) return true;
    return qualified.size() > name.size() && qualified.ends_with(name) &&
           qualified[qualified.size() - name.size() - 1] == '.';
}

void collect_self_calls(const java::SyntaxNode& node, const MethodKey& key,
                        std::vector<const java::SyntaxNode*>& callees) {
    if (node.type == "MethodCallExpr") {
        const java::SyntaxNode* callee = first_child_of_type(node, "SimpleName");
        if (callee != nullptr && *callee->token == key.method_name) {
            const bool bare = &node.children.front() == callee;
            if (bare || is_own_class_scope(node.children.front(), key)) callees.push_back(callee);
        }
    }
    for (const auto& child : node.children) collect_self_calls(child, key, callees);
}

}  // namespace

FileParseResult parse_methods(std::string_view file_text, const std::string& file_path) {
    auto unit = java::parse_compilation_unit(file_text);
    FileParseResult result;
    result.fatal = unit.fatal;
    for (auto& w : unit.warnings) {
        w.path = file_path;
        result.warnings.push_back(std::move(w));
    }
    std::set<MethodKey> seen;
    for (auto& decl : unit.methods) {
        std::string text(file_text.substr(decl.begin, decl.end - decl.begin));
        java::rebase_spans(decl.tree, decl.begin);
        const int line = static_cast<int>(decl.start_line);
        ParsedMethod m = from_declaration(std::move(decl), std::move(text), file_path);
        if (!seen.insert(m.snapshot.key).second) {
            result.warnings.push_back(
                {file_path, line, "duplicate declaration of " + m.snapshot.key.to_string()});
            continue;
        }
        result.methods.push_back(std::move(m));
    }
    return result;
}

ParsedMethod reparse_method(const ParsedMethod& like, std::string text) {
    auto decl = java::parse_method_declaration(text, like.snapshot.key.class_name);
    ParsedMethod m = from_declaration(std::move(decl), std::move(text), like.snapshot.key.file_path);
    m.snapshot.key = like.snapshot.key;
    m.snapshot.commit_sha = like.snapshot.commit_sha;
    m.snapshot.start_line = like.snapshot.start_line;
    m.snapshot.end_line = like.snapshot.end_line;
    return m;
}

std::string strip_comment_text(std::string_view text) {
    java::LexResult lexed;
    try {
        lexed = java::lex(text, {.split_angles = false, .keep_comments = true});
    } catch (const java::ParseError&) {
        return std::string(text);
    }
    if (lexed.comments.empty()) return std::string(text);

    std::string marked;
    marked.reserve(text.size());
    std::size_t cursor = 0;
    for (const auto& comment : lexed.comments) {
        marked.append(text.substr(cursor, comment.offset - cursor));
        marked.push_back(kCommentMark);
        cursor = comment.end();
    }
    marked.append(text.substr(cursor));

    std::string out;
    out.reserve(marked.size());
    std::size_t line_start = 0;
    while (line_start <= marked.size()) {
        std::size_t line_end = marked.find('\n', line_start);
        const bool last = line_end == std::string::npos;
        if (last) line_end = marked.size();
        std::string_view line(marked.data() + line_start, line_end - line_start);

        if (line.find(kCommentMark) == std::string_view::npos) {
            out.append(line);
            if (!last) out.push_back('\n');
        } else {
            std::string cleaned;
            for (std::size_t i = 0; i < line.size(); ++i) {
                if (line[i] != kCommentMark) {
                    cleaned.push_back(line[i]);
                    continue;
                }
                // Keep tokens apart when the comment was their only separator.
                const bool code_before = !cleaned.empty() && !is_space(cleaned.back());
                const bool code_after = i + 1 < line.size() && line[i + 1] != kCommentMark &&
                                        !is_space(line[i + 1]);
                if (code_before && code_after) cleaned.push_back(' ');
            }
            while (!cleaned.empty() && is_space(cleaned.back())) cleaned.pop_back();
            const bool blank = std::all_of(cleaned.begin(), cleaned.end(), is_space);
            if (!blank) {
                out.append(cleaned);
                if (!last) out.push_back('\n');
            } else if (last && !out.empty() && out.back() == '\n') {
                out.pop_back();
            }
        }
        if (last) break;
        line_start = line_end + 1;
    }
    // A removed leading doc comment leaves the declaration's indentation.
    const auto first = out.find_first_not_of(" \t\r\f\v\n");
    out.erase(0, first == std::string::npos ? out.size() : first);
    return out;
}

ParsedMethod strip_comments(const ParsedMethod& method) {
    std::string text = strip_comment_text(method.snapshot.body_text);
    if (text == method.snapshot.body_text) return method;
    return reparse_method(method, std::move(text));
}

std::string mask_recursion_text(const ParsedMethod& method, std::string_view stub) {
    const MethodKey& key = method.snapshot.key;
    std::vector<const java::SyntaxNode*> targets;
    if (const auto* decl_name = first_child_of_type(method.syntax_tree, "SimpleName")) {
        if (*decl_name->token != stub) targets.push_back(decl_name);
    }
    for (const auto& child : method.syntax_tree.children) {
        if (child.type == "BlockStmt") collect_self_calls(child, key, targets);
    }
    std::sort(targets.begin(), targets.end(),
              [](const auto* a, const auto* b) { return a->begin > b->begin; });
    std::string text = method.snapshot.body_text;
    for (const auto* t : targets) text.replace(t->begin, t->end - t->begin, stub);
    return text;
}

ParsedMethod mask_recursion(const ParsedMethod& method, std::string_view stub) {
    std::string text = mask_recursion_text(method, stub);
    if (text == method.snapshot.body_text) return method;
    return reparse_method(method, std::move(text));
}

std::string_view to_string(RejectionReason reason) {
    switch (reason) {
        case RejectionReason::constructor: return "constructor";
        case RejectionReason::abstract_method: return "abstract";
        case RejectionReason::overridden: return "overridden";
        case RejectionReason::empty: return "empty";
    }
    return "unknown";
}

KeepDecision keep_method(const ParsedMethod& method) {
    if (method.is_constructor) return {false, RejectionReason::constructor};
    if (!method.has_body || method.modifiers.contains("abstract")) {
        return {false, RejectionReason::abstract_method};
    }
    if (method.annotations.contains("Override")) return {false, RejectionReason::overridden};
    const auto& children = method.syntax_tree.children;
    const auto body = std::find_if(children.rbegin(), children.rend(),
                                   [](const auto& c) { return c.type == "BlockStmt"; });
    if (body == children.rend() || body->children.empty()) return {false, RejectionReason::empty};
    return {true, std::nullopt};
}

SubTokenSequence split_subtokens(std::string_view identifier, SplitOptions options) {
    enum class Cls { sep, lower, upper, digit };
    auto classify = [&](unsigned char c) {
        if (c >= 'a' && c <= 'z') return Cls::lower;
        if (c >= 'A' && c <= 'Z') return Cls::upper;
        if (c >= '0' && c <= '9') return options.split_digits ? Cls::digit : Cls::lower;
        if (c >= 0x80) return Cls::lower;
        return Cls::sep;
    };

    SubTokenSequence tokens;
    std::string current;
    auto flush = [&] {
        if (!current.empty()) tokens.push_back(std::move(current));
        current.clear();
    };
    for (std::size_t i = 0; i < identifier.size(); ++i) {
        const auto c = static_cast<unsigned char>(identifier[i]);
        const Cls cls = classify(c);
        if (cls == Cls::sep) {
            flush();
            continue;
        }
        if (!current.empty()) {
            const Cls prev = classify(static_cast<unsigned char>(identifier[i - 1]));
            const Cls following = i + 1 < identifier.size()
                                      ? classify(static_cast<unsigned char>(identifier[i + 1]))
                                      : Cls::sep;
            const bool lower_to_upper = prev == Cls::lower && cls == Cls::upper;
            const bool digit_edge = (prev == Cls::digit) != (cls == Cls::digit);
            const bool acronym_end = prev == Cls::upper && cls == Cls::upper && following == Cls::lower;
            if (lower_to_upper || digit_edge || acronym_end) flush();
        }
        current.push_back(cls == Cls::upper ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c));
    }
    flush();
    return tokens;
}

}  // namespace namemine
