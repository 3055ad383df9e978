#include "namemine/java/parser.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <utility>

namespace namemine::java {

std::vector<const SyntaxNode*> collect_leaves(const SyntaxNode& root) {
    std::vector<const SyntaxNode*> leaves;
    visit_preorder(root, [&](const SyntaxNode& n) {
        if (n.is_leaf()) leaves.push_back(&n);
        return true;
    });
    return leaves;
}

std::size_t count_nodes(const SyntaxNode& root) {
    std::size_t n = 0;
    visit_preorder(root, [&](const SyntaxNode&) {
        ++n;
        return true;
    });
    return n;
}

void rebase_spans(SyntaxNode& root, std::uint32_t delta) {
    root.begin -= delta;
    root.end -= delta;
    for (auto& child : root.children) rebase_spans(child, delta);
}

std::vector<std::string> token_texts(std::string_view text) {
    std::vector<std::string> out;
    for (const auto& t : lex(text).tokens) out.emplace_back(t.text);
    return out;
}

namespace {

constexpr std::array<std::string_view, 8> kPrimitiveTypes = {
    "boolean", "byte", "char", "short", "int", "long", "float", "double"};

constexpr std::array<std::string_view, 12> kModifierKeywords = {
    "public", "protected", "private", "static",       "abstract",  "final",
    "native", "transient", "volatile", "synchronized", "strictfp", "default"};

bool is_primitive(const Token& t) {
    return t.kind == TokenKind::keyword &&
           std::find(kPrimitiveTypes.begin(), kPrimitiveTypes.end(), t.text) != kPrimitiveTypes.end();
}

bool is_literal(const Token& t) {
    switch (t.kind) {
        case TokenKind::integer_literal:
        case TokenKind::long_literal:
        case TokenKind::floating_literal:
        case TokenKind::char_literal:
        case TokenKind::string_literal:
        case TokenKind::text_block:
        case TokenKind::boolean_literal:
        case TokenKind::null_literal:
            return true;
        default:
            return false;
    }
}

std::string literal_node_type(TokenKind kind) {
    switch (kind) {
        case TokenKind::integer_literal: return "IntegerLiteralExpr";
        case TokenKind::long_literal: return "LongLiteralExpr";
        case TokenKind::floating_literal: return "DoubleLiteralExpr";
        case TokenKind::char_literal: return "CharLiteralExpr";
        case TokenKind::string_literal: return "StringLiteralExpr";
        case TokenKind::text_block: return "TextBlockLiteralExpr";
        case TokenKind::boolean_literal: return "BooleanLiteralExpr";
        default: return "NullLiteralExpr";
    }
}

struct BinaryOp {
    std::string_view symbol;
    std::string_view name;
    int precedence;
};

// Higher binds tighter.
constexpr std::array<BinaryOp, 19> kBinaryOps = {{
    {"||", "or", 1},
    {"&&", "and", 2},
    {"|", "binOr", 3},
    {"^", "xor", 4},
    {"&", "binAnd", 5},
    {"==", "equals", 6},
    {"!=", "notEquals", 6},
    {"<", "less", 7},
    {">", "greater", 7},
    {"<=", "lessEquals", 7},
    {">=", "greaterEquals", 7},
    {"<<", "leftShift", 8},
    {">>", "signedRightShift", 8},
    {">>>", "unsignedRightShift", 8},
    {"+", "plus", 9},
    {"-", "minus", 9},
    {"*", "multiply", 10},
    {"/", "divide", 10},
    {"%", "remainder", 10},
}};
constexpr int kInstanceofPrecedence = 7;

constexpr std::array<std::pair<std::string_view, std::string_view>, 12> kAssignOps = {{
    {"=", "assign"},
    {"+=", "plus"},
    {"-=", "minus"},
    {"*=", "multiply"},
    {"/=", "divide"},
    {"%=", "remainder"},
    {"&=", "binAnd"},
    {"|=", "binOr"},
    {"^=", "xor"},
    {"<<=", "leftShift"},
    {">>=", "signedRightShift"},
    {">>>=", "unsignedRightShift"},
}};

// `standalone` accepts any member form; used when reparsing a lone method.
enum class TypeKind { class_, interface_, enum_, record_, annotation_, standalone };

/// Where member declarations go: named types collect MethodDeclarations,
/// anonymous and local classes only build tree nodes.
struct MemberSink {
    std::vector<MethodDeclaration>* methods = nullptr;
    std::vector<Diagnostic>* warnings = nullptr;
};

struct ParsedModifiers {
    std::vector<SyntaxNode> nodes;  // Annotation / Modifier, source order
    std::set<std::string> modifiers;
    std::set<std::string> annotations;
};

class Parser {
public:
    Parser(std::string_view source, LexResult lexed)
        : src_(source), toks_(std::move(lexed.tokens)), comments_(std::move(lexed.comments)) {
        eof_.kind = TokenKind::punct;
        eof_.text = std::string_view{};
        eof_.offset = static_cast<std::uint32_t>(src_.size());
        eof_.line = toks_.empty() ? 1 : toks_.back().line;
    }

    CompilationUnitResult parse_unit() {
        CompilationUnitResult result;
        MemberSink sink{&result.methods, &result.warnings};
        try {
            std::string package;
            skip_annotations_before_package();
            if (at("package")) {
                next();
                package = parse_qualified_name();
                expect(";");
            }
            while (at("import")) {
                while (!at_eof() && !at(";")) next();
                expect(";");
            }
            while (!at_eof()) {
                if (at(";")) {
                    next();
                    continue;
                }
                auto mods = parse_modifiers();
                auto kind = peek_type_kind();
                if (!kind) fail("expected a type declaration");
                parse_type_declaration(*kind, package, std::move(mods), sink);
            }
        } catch (const ParseError& e) {
            result.fatal = true;
            result.warnings.push_back({"", static_cast<int>(e.line()), e.what()});
        }
        return result;
    }

    MethodDeclaration parse_single_method(std::string class_name) {
        std::vector<MethodDeclaration> methods;
        MemberSink sink{&methods, nullptr};
        const std::size_t start = pos_;
        auto mods = parse_modifiers();
        parse_member_after_modifiers(class_name, TypeKind::standalone, std::move(mods), start, sink);
        if (!at_eof()) fail("trailing tokens after method declaration");
        if (methods.size() != 1) fail("text is not a single method declaration");
        return std::move(methods.front());
    }

private:
    // ---------------------------------------------------------------- tokens

    const Token& peek(std::size_t ahead = 0) const {
        return pos_ + ahead < toks_.size() ? toks_[pos_ + ahead] : eof_;
    }
    bool at_eof() const { return pos_ >= toks_.size(); }
    bool at(std::string_view s, std::size_t ahead = 0) const { return peek(ahead).is(s); }
    bool at_ident(std::size_t ahead = 0) const {
        return peek(ahead).kind == TokenKind::identifier;
    }
    bool at_ident_text(std::string_view s, std::size_t ahead = 0) const {
        return at_ident(ahead) && peek(ahead).text == s;
    }
    const Token& next() {
        const Token& t = peek();
        if (!at_eof()) ++pos_;
        return t;
    }
    [[noreturn]] void fail(const std::string& message) const {
        const Token& t = peek();
        std::string where = at_eof() ? "end of input" : "'" + std::string(t.text) + "'";
        throw ParseError(t.line, t.offset, message + " at " + where);
    }
    const Token& expect(std::string_view s) {
        if (!at(s)) fail("expected '" + std::string(s) + "'");
        return next();
    }
    const Token& expect_ident() {
        if (!at_ident()) fail("expected identifier");
        return next();
    }
    // Adjacent tokens with no gap, used to rejoin split '>' characters.
    bool adjacent(std::size_t ahead) const {
        return pos_ + ahead < toks_.size() && peek(ahead - 1).end() == peek(ahead).offset;
    }

    SyntaxNode leaf(std::string type, const Token& t) const {
        return make_leaf(std::move(type), std::string(t.text), t.offset, t.end());
    }
    SyntaxNode node(std::string type, std::size_t first_token) const {
        SyntaxNode n;
        n.type = std::move(type);
        n.begin = first_token < toks_.size() ? toks_[first_token].offset : eof_.offset;
        n.end = pos_ > 0 ? toks_[pos_ - 1].end() : n.begin;
        return n;
    }
    void close(SyntaxNode& n) const { n.end = pos_ > 0 ? toks_[pos_ - 1].end() : n.begin; }

    void skip_balanced(std::string_view open, std::string_view close_tok) {
        expect(open);
        int depth = 1;
        while (depth > 0) {
            if (at_eof()) fail("unbalanced '" + std::string(open) + "'");
            if (at(open)) ++depth;
            else if (at(close_tok)) --depth;
            next();
        }
    }

    std::string parse_qualified_name() {
        std::string name(expect_ident().text);
        while (at(".") && at_ident(1)) {
            next();
            name += ".";
            name += next().text;
        }
        return name;
    }

    // ------------------------------------------------------------ modifiers

    void skip_annotations_before_package() {
        const std::size_t save = pos_;
        while (at("@") && !at("interface", 1)) parse_annotation();
        if (!at("package")) pos_ = save;
    }

    SyntaxNode parse_annotation() {
        const std::size_t start = pos_;
        expect("@");
        const Token* last = &expect_ident();
        while (at(".") && at_ident(1)) {
            next();
            last = &next();
        }
        if (at("(")) skip_balanced("(", ")");
        SyntaxNode n = node("Annotation", start);
        n.children.push_back(leaf("Name", *last));
        return n;
    }

    bool at_modifier() const {
        const Token& t = peek();
        if (t.kind == TokenKind::keyword &&
            std::find(kModifierKeywords.begin(), kModifierKeywords.end(), t.text) !=
                kModifierKeywords.end()) {
            // "default:" in a switch and "default value" in annotation
            // members never reach here; interface default methods do.
            return !(t.text == "synchronized" && at("(", 1));
        }
        if (at_ident_text("sealed") && (peek(1).kind == TokenKind::keyword || at_ident(1))) return true;
        if (at_ident_text("non") && at("-", 1) && at_ident_text("sealed", 2)) return true;
        return false;
    }

    ParsedModifiers parse_modifiers() {
        ParsedModifiers mods;
        while (true) {
            if (at("@") && !at("interface", 1)) {
                auto ann = parse_annotation();
                mods.annotations.insert(*ann.children.front().token);
                mods.nodes.push_back(std::move(ann));
            } else if (at_modifier()) {
                if (at_ident_text("non")) {
                    const Token& first = next();
                    next();
                    const Token& last = next();
                    mods.modifiers.insert("non-sealed");
                    mods.nodes.push_back(make_leaf("Modifier", "non-sealed", first.offset, last.end()));
                } else {
                    const Token& t = next();
                    mods.modifiers.emplace(t.text);
                    mods.nodes.push_back(leaf("Modifier", t));
                }
            } else {
                return mods;
            }
        }
    }

    // ---------------------------------------------------------------- types

    std::optional<TypeKind> peek_type_kind() const {
        if (at("class")) return TypeKind::class_;
        if (at("interface")) return TypeKind::interface_;
        if (at("enum")) return TypeKind::enum_;
        if (at("@") && at("interface", 1)) return TypeKind::annotation_;
        if (at_ident_text("record") && at_ident(1) && (at("(", 2) || at("<", 2))) {
            return TypeKind::record_;
        }
        return std::nullopt;
    }

    /// Parses "class Name ... { body }" after its modifiers. With a sink,
    /// methods are collected; the returned node is the tree form either way.
    SyntaxNode parse_type_declaration(TypeKind kind, const std::string& outer, ParsedModifiers mods,
                                      const MemberSink& sink) {
        const std::size_t start = pos_;
        if (kind == TypeKind::annotation_) {
            next();
            next();
        } else {
            next();
        }
        const Token& name_tok = expect_ident();
        std::string qualified = outer.empty() ? std::string(name_tok.text)
                                              : outer + "." + std::string(name_tok.text);
        while (!at("{")) {
            if (at_eof() || at(";") || at("}")) fail("malformed type declaration header");
            if (at("(")) {
                skip_balanced("(", ")");
                continue;
            }
            next();
        }
        SyntaxNode decl = node("ClassOrInterfaceDeclaration", start);
        decl.children = std::move(mods.nodes);
        decl.children.push_back(leaf("SimpleName", name_tok));
        decl.children.push_back(parse_class_body(qualified, kind, sink));
        close(decl);
        return decl;
    }

    SyntaxNode parse_class_body(const std::string& qualified, TypeKind kind, const MemberSink& sink) {
        const std::size_t start = pos_;
        expect("{");
        SyntaxNode body = node("ClassBody", start);
        if (kind == TypeKind::enum_) skip_enum_constants();
        while (!at("}")) {
            if (at_eof()) fail("unexpected end of input in class body");
            if (at(";")) {
                next();
                continue;
            }
            const std::size_t member_start = pos_;
            if (sink.warnings == nullptr) {
                auto mods = parse_modifiers();
                auto member = parse_member_after_modifiers(qualified, kind, std::move(mods),
                                                           member_start, sink);
                if (member) body.children.push_back(std::move(*member));
                continue;
            }
            try {
                auto mods = parse_modifiers();
                parse_member_after_modifiers(qualified, kind, std::move(mods), member_start, sink);
            } catch (const ParseError& e) {
                sink.warnings->push_back({"", static_cast<int>(e.line()),
                                          std::string("skipped member: ") + e.what()});
                pos_ = member_start;
                skip_member();
            }
        }
        expect("}");
        close(body);
        return body;
    }

    void skip_enum_constants() {
        while (true) {
            if (at(";")) {
                next();
                return;
            }
            if (at("}")) return;
            while (at("@")) parse_annotation();
            expect_ident();
            if (at("(")) skip_balanced("(", ")");
            if (at("{")) skip_balanced("{", "}");
            if (at(",")) {
                next();
            } else if (!at(";") && !at("}")) {
                fail("malformed enum constant");
            }
        }
    }

    /// Recovery: consume one member by structure, not by meaning.
    void skip_member() {
        while (!at_eof()) {
            if (at("{")) {
                skip_balanced("{", "}");
                return;
            }
            if (at(";")) {
                next();
                return;
            }
            if (at("}")) return;
            next();
        }
    }

    std::optional<SyntaxNode> parse_member_after_modifiers(const std::string& qualified,
                                                           TypeKind kind, ParsedModifiers mods,
                                                           std::size_t member_start,
                                                           const MemberSink& sink) {
        if (auto nested = peek_type_kind()) {
            MemberSink nested_sink = sink;
            return parse_type_declaration(*nested, qualified, std::move(mods), nested_sink);
        }
        if (at("{")) {
            SyntaxNode init = node("InitializerDeclaration", member_start);
            init.children = std::move(mods.nodes);
            init.children.push_back(parse_block());
            close(init);
            return init;
        }

        std::optional<SyntaxNode> type_params;
        if (at("<")) type_params = parse_type_parameters();

        const bool is_constructor = at_ident() && (at("(", 1) || ((kind == TypeKind::record_ || kind == TypeKind::standalone) && at("{", 1)));
        std::optional<SyntaxNode> return_type;
        if (!is_constructor) return_type = parse_type();
        const Token& name_tok = expect_ident();

        if (!is_constructor && !at("(")) {
            // Field: "Type name [= init] {, name [= init]};"
            SyntaxNode field = node("FieldDeclaration", member_start);
            field.children = std::move(mods.nodes);
            field.children.push_back(std::move(*return_type));
            pos_ -= 1;
            while (true) {
                field.children.push_back(parse_variable_declarator());
                if (!at(",")) break;
                next();
            }
            expect(";");
            close(field);
            return field;
        }

        MethodDeclaration decl;
        decl.class_name = qualified;
        decl.name = std::string(name_tok.text);
        decl.is_constructor = is_constructor;
        decl.modifiers = mods.modifiers;
        decl.annotations = mods.annotations;

        SyntaxNode tree = node(is_constructor ? "ConstructorDeclaration" : "MethodDeclaration",
                               member_start);
        tree.children = std::move(mods.nodes);
        if (type_params) tree.children.push_back(std::move(*type_params));
        if (return_type) tree.children.push_back(std::move(*return_type));
        tree.children.push_back(leaf("SimpleName", name_tok));

        if (at("(")) {
            parse_parameters(tree.children, decl.param_types);
        }
        while (at("[") && at("]", 1)) {
            // Legacy "int foo()[]" return dimensions.
            next();
            next();
        }
        if (at("throws")) {
            const std::size_t throws_start = pos_;
            next();
            SyntaxNode throws = node("ThrowsClause", throws_start);
            throws.children.push_back(parse_type());
            while (at(",")) {
                next();
                throws.children.push_back(parse_type());
            }
            close(throws);
            tree.children.push_back(std::move(throws));
        }
        if (at("default") && (kind == TypeKind::annotation_ || kind == TypeKind::standalone)) {
            next();
            while (!at(";")) {
                if (at_eof()) fail("unterminated annotation default");
                if (at("{")) skip_balanced("{", "}");
                else if (at("(")) skip_balanced("(", ")");
                else next();
            }
        }
        if (at("{")) {
            tree.children.push_back(parse_block());
            decl.has_body = true;
        } else {
            expect(";");
        }
        close(tree);

        if (sink.methods != nullptr) {
            decl.begin = declaration_begin(member_start);
            decl.end = toks_[pos_ - 1].end();
            decl.start_line = line_of(decl.begin);
            decl.end_line = toks_[pos_ - 1].line;
            decl.tree = tree;
            sink.methods->push_back(std::move(decl));
        }
        return tree;
    }

    std::uint32_t declaration_begin(std::size_t first_token) const {
        const std::uint32_t first = toks_[first_token].offset;
        auto it = std::lower_bound(comments_.begin(), comments_.end(), first,
                                   [](const Token& c, std::uint32_t off) { return c.offset < off; });
        if (it == comments_.begin()) return first;
        const Token& doc = *std::prev(it);
        if (doc.kind != TokenKind::doc_comment) return first;
        if (first_token > 0 && toks_[first_token - 1].offset > doc.offset) return first;
        for (std::uint32_t i = doc.end(); i < first; ++i) {
            const char c = src_[i];
            if (c != ' ' && c != '\t' && c != '\n' && c != '\r' && c != '\f') return first;
        }
        return doc.offset;
    }

    std::uint32_t line_of(std::uint32_t offset) const {
        return 1 + static_cast<std::uint32_t>(
                       std::count(src_.begin(), src_.begin() + offset, '\n'));
    }

    SyntaxNode parse_type_parameters() {
        const std::size_t start = pos_;
        expect("<");
        SyntaxNode params = node("TypeParameters", start);
        while (true) {
            const std::size_t param_start = pos_;
            while (at("@")) parse_annotation();
            SyntaxNode param = node("TypeParameter", param_start);
            param.children.push_back(leaf("SimpleName", expect_ident()));
            if (at("extends")) {
                next();
                param.children.push_back(parse_type());
                while (at("&")) {
                    next();
                    param.children.push_back(parse_type());
                }
            }
            close(param);
            params.children.push_back(std::move(param));
            if (!at(",")) break;
            next();
        }
        expect(">");
        close(params);
        return params;
    }

    void parse_parameters(std::vector<SyntaxNode>& out, std::vector<std::string>& type_strings) {
        expect("(");
        if (at(")")) {
            next();
            return;
        }
        while (true) {
            const std::size_t start = pos_;
            auto mods = parse_modifiers();
            const std::size_t type_start = pos_;
            SyntaxNode type = parse_type();
            std::string type_text = join_tokens(type_start, pos_);
            bool variadic = false;
            if (at("...")) {
                next();
                variadic = true;
                type_text += "...";
            }
            SyntaxNode param = node(variadic ? "VariadicParameter" : "Parameter", start);
            param.children = std::move(mods.nodes);
            param.children.push_back(std::move(type));
            if (at("this")) {
                param.children.push_back(leaf("SimpleName", next()));
            } else {
                param.children.push_back(leaf("SimpleName", expect_ident()));
            }
            while (at("[") && at("]", 1)) {
                next();
                next();
                type_text += "[]";
            }
            close(param);
            out.push_back(std::move(param));
            type_strings.push_back(std::move(type_text));
            if (!at(",")) break;
            next();
        }
        expect(")");
    }

    std::string join_tokens(std::size_t from, std::size_t to) const {
        std::string text;
        for (std::size_t i = from; i < to; ++i) {
            if (toks_[i].is("@")) {
                // Type annotations are not part of the signature.
                std::size_t j = i + 1;
                while (j < to && (toks_[j].kind == TokenKind::identifier || toks_[j].is("."))) ++j;
                i = j - 1;
                continue;
            }
            const bool wordish = toks_[i].kind != TokenKind::punct;
            if (wordish && i > from && toks_[i - 1].kind != TokenKind::punct) text += ' ';
            else if (wordish && !text.empty() && text.back() == '?') text += ' ';
            text += toks_[i].text;
        }
        return text;
    }

    SyntaxNode parse_type() {
        const std::size_t start = pos_;
        while (at("@")) parse_annotation();
        SyntaxNode type;
        if (is_primitive(peek())) {
            type = leaf("PrimitiveType", next());
        } else if (at("void")) {
            type = leaf("VoidType", next());
        } else {
            type = parse_class_type();
        }
        return parse_dims(std::move(type), start);
    }

    SyntaxNode parse_dims(SyntaxNode type, std::size_t start) {
        while (at("[") && at("]", 1)) {
            next();
            next();
            SyntaxNode array = node("ArrayType", start);
            array.children.push_back(std::move(type));
            type = std::move(array);
        }
        return type;
    }

    SyntaxNode parse_class_type() {
        const std::size_t start = pos_;
        std::vector<SyntaxNode> segments;
        while (true) {
            const std::size_t seg_start = pos_;
            while (at("@")) parse_annotation();
            SyntaxNode segment = leaf("ClassType", expect_ident());
            if (at("<")) {
                SyntaxNode generic = node("GenericType", seg_start);
                generic.children.push_back(std::move(segment));
                parse_type_arguments(generic.children);
                close(generic);
                segment = std::move(generic);
            }
            segments.push_back(std::move(segment));
            if (at(".") && (at_ident(1) || at("@", 1))) {
                next();
                continue;
            }
            break;
        }
        if (segments.size() == 1) return std::move(segments.front());
        SyntaxNode qualified = node("QualifiedType", start);
        qualified.children = std::move(segments);
        return qualified;
    }

    void parse_type_arguments(std::vector<SyntaxNode>& out) {
        expect("<");
        if (at(">")) {
            next();
            return;
        }
        while (true) {
            const std::size_t start = pos_;
            while (at("@")) parse_annotation();
            if (at("?")) {
                const Token& q = next();
                if (at("extends") || at("super")) {
                    const bool upper = at("extends");
                    next();
                    SyntaxNode wildcard = node(upper ? "WildcardType:extends" : "WildcardType:super", start);
                    wildcard.children.push_back(parse_type());
                    close(wildcard);
                    out.push_back(std::move(wildcard));
                } else {
                    out.push_back(leaf("WildcardType", q));
                }
            } else {
                out.push_back(parse_type());
            }
            if (!at(",")) break;
            next();
        }
        expect(">");
    }

    // ----------------------------------------------------------- statements

    SyntaxNode parse_block() {
        const std::size_t start = pos_;
        expect("{");
        SyntaxNode block = node("BlockStmt", start);
        while (!at("}")) {
            if (at_eof()) fail("unexpected end of input in block");
            block.children.push_back(parse_block_statement());
        }
        expect("}");
        close(block);
        return block;
    }

    bool looks_like_local_type_declaration() {
        const std::size_t save = pos_;
        parse_modifiers();
        const bool yes = peek_type_kind().has_value();
        pos_ = save;
        return yes;
    }

    SyntaxNode parse_block_statement() {
        const std::size_t start = pos_;
        if (looks_like_local_type_declaration()) {
            auto mods = parse_modifiers();
            auto kind = *peek_type_kind();
            SyntaxNode stmt = node("LocalClassDeclarationStmt", start);
            stmt.children.push_back(parse_type_declaration(kind, "", std::move(mods), MemberSink{}));
            close(stmt);
            return stmt;
        }
        if (auto decl = try_local_variable_declaration()) {
            expect(";");
            SyntaxNode stmt = node("ExpressionStmt", start);
            stmt.children.push_back(std::move(*decl));
            close(stmt);
            return stmt;
        }
        return parse_statement();
    }

    /// "final Type a = x, b[] = {..}" without the trailing ';'. Restores the
    /// position and returns nothing when the tokens are not a declaration.
    std::optional<SyntaxNode> try_local_variable_declaration() {
        const std::size_t start = pos_;
        if (at_ident_text("yield") && is_yield_statement()) return std::nullopt;
        try {
            auto mods = parse_modifiers();
            if (!(is_primitive(peek()) || at_ident() || at("@"))) {
                pos_ = start;
                return std::nullopt;
            }
            SyntaxNode type = parse_type();
            if (!at_ident() ||
                !(at("=", 1) || at(";", 1) || at(",", 1) || at("[", 1) || at(":", 1) || at(")", 1))) {
                pos_ = start;
                return std::nullopt;
            }
            SyntaxNode decl = node("VariableDeclarationExpr", start);
            decl.children = std::move(mods.nodes);
            decl.children.push_back(std::move(type));
            while (true) {
                decl.children.push_back(parse_variable_declarator());
                if (!at(",")) break;
                next();
            }
            close(decl);
            return decl;
        } catch (const ParseError&) {
            pos_ = start;
            return std::nullopt;
        }
    }

    SyntaxNode parse_variable_declarator() {
        const std::size_t start = pos_;
        SyntaxNode declarator = node("VariableDeclarator", start);
        declarator.children.push_back(leaf("SimpleName", expect_ident()));
        while (at("[") && at("]", 1)) {
            const Token& open = next();
            const Token& shut = next();
            declarator.children.push_back(make_leaf("ArrayBracketPair", "[]", open.offset, shut.end()));
        }
        if (at("=")) {
            next();
            declarator.children.push_back(at("{") ? parse_array_initializer() : parse_expression());
        }
        close(declarator);
        return declarator;
    }

    bool is_yield_statement() const {
        const Token& t = peek(1);
        if (t.kind != TokenKind::punct) return true;
        static constexpr std::array<std::string_view, 18> kNotYield = {
            "=", "(", ".", "[", "++", "--", ";", ":", "->", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<="};
        if (std::find(kNotYield.begin(), kNotYield.end(), t.text) != kNotYield.end()) return false;
        // "yield -x;" and "yield (x);" are yields; the rest are expressions.
        return true;
    }

    SyntaxNode parse_statement() {
        const std::size_t start = pos_;
        const Token& t = peek();
        if (at("{")) return parse_block();
        if (at(";")) {
            next();
            return node("EmptyStmt", start);
        }
        if (at("if")) {
            next();
            SyntaxNode stmt = node("IfStmt", start);
            stmt.children.push_back(parse_parenthesized());
            stmt.children.push_back(parse_statement());
            if (at("else")) {
                next();
                stmt.children.push_back(parse_statement());
            }
            close(stmt);
            return stmt;
        }
        if (at("while")) {
            next();
            SyntaxNode stmt = node("WhileStmt", start);
            stmt.children.push_back(parse_parenthesized());
            stmt.children.push_back(parse_statement());
            close(stmt);
            return stmt;
        }
        if (at("do")) {
            next();
            SyntaxNode stmt = node("DoStmt", start);
            stmt.children.push_back(parse_statement());
            expect("while");
            stmt.children.push_back(parse_parenthesized());
            expect(";");
            close(stmt);
            return stmt;
        }
        if (at("for")) return parse_for();
        if (at("try")) return parse_try();
        if (at("switch")) {
            SyntaxNode sw = parse_switch("SwitchStmt");
            return sw;
        }
        if (at("return") || at("throw")) {
            const bool is_return = at("return");
            next();
            SyntaxNode stmt = node(is_return ? "ReturnStmt" : "ThrowStmt", start);
            if (!at(";")) stmt.children.push_back(parse_expression());
            expect(";");
            close(stmt);
            return stmt;
        }
        if (at("break") || at("continue")) {
            const bool is_break = at("break");
            next();
            SyntaxNode stmt = node(is_break ? "BreakStmt" : "ContinueStmt", start);
            if (at_ident()) stmt.children.push_back(leaf("SimpleName", next()));
            expect(";");
            close(stmt);
            return stmt;
        }
        if (at("synchronized")) {
            next();
            SyntaxNode stmt = node("SynchronizedStmt", start);
            stmt.children.push_back(parse_parenthesized());
            stmt.children.push_back(parse_block());
            close(stmt);
            return stmt;
        }
        if (at("assert")) {
            next();
            SyntaxNode stmt = node("AssertStmt", start);
            stmt.children.push_back(parse_expression());
            if (at(":")) {
                next();
                stmt.children.push_back(parse_expression());
            }
            expect(";");
            close(stmt);
            return stmt;
        }
        if (at_ident_text("yield") && is_yield_statement()) {
            next();
            SyntaxNode stmt = node("YieldStmt", start);
            stmt.children.push_back(parse_expression());
            expect(";");
            close(stmt);
            return stmt;
        }
        if (t.kind == TokenKind::identifier && at(":", 1)) {
            SyntaxNode stmt = node("LabeledStmt", start);
            stmt.children.push_back(leaf("SimpleName", next()));
            next();
            stmt.children.push_back(parse_statement());
            close(stmt);
            return stmt;
        }
        if ((at("this") || at("super")) && at("(", 1)) {
            SyntaxNode stmt = node("ExplicitConstructorInvocationStmt", start);
            const Token& kw = next();
            stmt.children.push_back(leaf(kw.text == "this" ? "ThisExpr" : "SuperExpr", kw));
            parse_arguments(stmt.children);
            expect(";");
            close(stmt);
            return stmt;
        }
        SyntaxNode stmt = node("ExpressionStmt", start);
        stmt.children.push_back(parse_expression());
        expect(";");
        close(stmt);
        return stmt;
    }

    SyntaxNode parse_parenthesized() {
        expect("(");
        SyntaxNode e = parse_expression();
        expect(")");
        return e;
    }

    SyntaxNode parse_for() {
        const std::size_t start = pos_;
        expect("for");
        expect("(");
        if (auto decl = try_local_variable_declaration()) {
            if (at(":")) {
                next();
                SyntaxNode stmt = node("ForEachStmt", start);
                stmt.children.push_back(std::move(*decl));
                stmt.children.push_back(parse_expression());
                expect(")");
                stmt.children.push_back(parse_statement());
                close(stmt);
                return stmt;
            }
            SyntaxNode stmt = node("ForStmt", start);
            stmt.children.push_back(std::move(*decl));
            return parse_for_rest(std::move(stmt));
        }
        SyntaxNode stmt = node("ForStmt", start);
        if (!at(";")) {
            const std::size_t init_start = pos_;
            SyntaxNode init = node("ForInit", init_start);
            init.children.push_back(parse_expression());
            while (at(",")) {
                next();
                init.children.push_back(parse_expression());
            }
            close(init);
            stmt.children.push_back(std::move(init));
        }
        return parse_for_rest(std::move(stmt));
    }

    SyntaxNode parse_for_rest(SyntaxNode stmt) {
        expect(";");
        if (!at(";")) {
            const std::size_t cond_start = pos_;
            SyntaxNode cond = node("ForCompare", cond_start);
            cond.children.push_back(parse_expression());
            close(cond);
            stmt.children.push_back(std::move(cond));
        }
        expect(";");
        if (!at(")")) {
            const std::size_t update_start = pos_;
            SyntaxNode update = node("ForUpdate", update_start);
            update.children.push_back(parse_expression());
            while (at(",")) {
                next();
                update.children.push_back(parse_expression());
            }
            close(update);
            stmt.children.push_back(std::move(update));
        }
        expect(")");
        stmt.children.push_back(parse_statement());
        close(stmt);
        return stmt;
    }

    SyntaxNode parse_try() {
        const std::size_t start = pos_;
        expect("try");
        SyntaxNode stmt = node("TryStmt", start);
        if (at("(")) {
            const std::size_t res_start = pos_;
            next();
            SyntaxNode resources = node("TryResources", res_start);
            while (!at(")")) {
                if (auto decl = try_local_variable_declaration()) {
                    resources.children.push_back(std::move(*decl));
                } else {
                    resources.children.push_back(parse_expression());
                }
                if (at(";")) next();
                else if (!at(")")) fail("expected ';' or ')' in try resources");
            }
            expect(")");
            close(resources);
            stmt.children.push_back(std::move(resources));
        }
        stmt.children.push_back(parse_block());
        while (at("catch")) {
            const std::size_t catch_start = pos_;
            next();
            expect("(");
            SyntaxNode clause = node("CatchClause", catch_start);
            const std::size_t param_start = pos_;
            auto mods = parse_modifiers();
            SyntaxNode param = node("Parameter", param_start);
            param.children = std::move(mods.nodes);
            SyntaxNode type = parse_type();
            if (at("|")) {
                SyntaxNode union_type = node("UnionType", param_start);
                union_type.children.push_back(std::move(type));
                while (at("|")) {
                    next();
                    union_type.children.push_back(parse_type());
                }
                close(union_type);
                type = std::move(union_type);
            }
            param.children.push_back(std::move(type));
            param.children.push_back(leaf("SimpleName", expect_ident()));
            close(param);
            expect(")");
            clause.children.push_back(std::move(param));
            clause.children.push_back(parse_block());
            close(clause);
            stmt.children.push_back(std::move(clause));
        }
        if (at("finally")) {
            next();
            stmt.children.push_back(parse_block());
        }
        const bool has_resources = stmt.children.front().type == "TryResources";
        if (!has_resources && stmt.children.size() == 1) fail("try without catch or finally");
        close(stmt);
        return stmt;
    }

    SyntaxNode parse_switch(std::string type) {
        const std::size_t start = pos_;
        expect("switch");
        SyntaxNode sw = node(std::move(type), start);
        sw.children.push_back(parse_parenthesized());
        expect("{");
        while (!at("}")) {
            if (at_eof()) fail("unexpected end of input in switch");
            const std::size_t entry_start = pos_;
            SyntaxNode entry;
            if (at("default")) {
                next();
                entry = node("SwitchDefault", entry_start);
            } else {
                expect("case");
                entry = node("SwitchEntry", entry_start);
                while (true) {
                    if (at("default")) {
                        entry.children.push_back(leaf("DefaultLabel", next()));
                    } else {
                        entry.children.push_back(parse_conditional());
                    }
                    if (!at(",")) break;
                    next();
                }
            }
            if (at("->")) {
                next();
                if (at("{")) {
                    entry.children.push_back(parse_block());
                } else if (at("throw")) {
                    entry.children.push_back(parse_statement());
                } else {
                    const std::size_t expr_start = pos_;
                    SyntaxNode stmt = node("ExpressionStmt", expr_start);
                    stmt.children.push_back(parse_expression());
                    expect(";");
                    close(stmt);
                    entry.children.push_back(std::move(stmt));
                }
            } else {
                expect(":");
                while (!at("case") && !at("default") && !at("}")) {
                    if (at_eof()) fail("unexpected end of input in switch");
                    entry.children.push_back(parse_block_statement());
                }
                // "default" may also start a statement-level label only via
                // "default:" which the loop above stops on.
            }
            close(entry);
            sw.children.push_back(std::move(entry));
        }
        expect("}");
        close(sw);
        return sw;
    }

    // ---------------------------------------------------------- expressions

    SyntaxNode parse_expression() { return parse_assignment(); }

    /// Assignment operator at the cursor, rejoining split '>' tokens.
    /// Returns (operator name, token count) or nothing.
    std::optional<std::pair<std::string_view, std::size_t>> peek_assignment_op() const {
        if (at(">") && adjacent(1)) {
            if (at(">=", 1)) return std::pair{std::string_view("signedRightShift"), std::size_t{2}};
            if (at(">", 1) && adjacent(2) && at(">=", 2)) {
                return std::pair{std::string_view("unsignedRightShift"), std::size_t{3}};
            }
            return std::nullopt;
        }
        if (peek().kind != TokenKind::punct) return std::nullopt;
        for (const auto& [symbol, name] : kAssignOps) {
            if (peek().text == symbol) return std::pair{name, std::size_t{1}};
        }
        return std::nullopt;
    }

    std::optional<std::pair<const BinaryOp*, std::size_t>> peek_binary_op() const {
        if (peek().kind != TokenKind::punct) return std::nullopt;
        std::string_view symbol = peek().text;
        std::size_t count = 1;
        if (symbol == ">" && adjacent(1) && at(">", 1)) {
            if (adjacent(2) && at(">", 2)) {
                if (adjacent(3) && at(">=", 3)) return std::nullopt;
                symbol = ">>>";
                count = 3;
            } else if (adjacent(2) && at(">=", 2)) {
                return std::nullopt;
            } else {
                symbol = ">>";
                count = 2;
            }
        } else if (symbol == ">" && adjacent(1) && at(">=", 1)) {
            return std::nullopt;
        }
        for (const auto& op : kBinaryOps) {
            if (op.symbol == symbol) return std::pair{&op, count};
        }
        return std::nullopt;
    }

    bool lambda_ahead() const {
        if (at_ident() && at("->", 1)) return true;
        if (!at("(")) return false;
        int depth = 0;
        for (std::size_t i = pos_; i < toks_.size(); ++i) {
            if (toks_[i].is("(")) ++depth;
            else if (toks_[i].is(")")) {
                if (--depth == 0) return i + 1 < toks_.size() && toks_[i + 1].is("->");
            }
        }
        return false;
    }

    SyntaxNode parse_lambda() {
        const std::size_t start = pos_;
        SyntaxNode lambda = node("LambdaExpr", start);
        if (at_ident()) {
            SyntaxNode param = node("Parameter", pos_);
            param.children.push_back(leaf("SimpleName", next()));
            close(param);
            lambda.children.push_back(std::move(param));
        } else {
            expect("(");
            while (!at(")")) {
                const std::size_t param_start = pos_;
                SyntaxNode param = node("Parameter", param_start);
                if (at_ident() && (at(",", 1) || at(")", 1))) {
                    param.children.push_back(leaf("SimpleName", next()));
                } else {
                    auto mods = parse_modifiers();
                    param.children = std::move(mods.nodes);
                    param.children.push_back(parse_type());
                    if (at("...")) next();
                    param.children.push_back(leaf("SimpleName", expect_ident()));
                }
                close(param);
                lambda.children.push_back(std::move(param));
                if (at(",")) next();
                else if (!at(")")) fail("malformed lambda parameters");
            }
            expect(")");
        }
        expect("->");
        lambda.children.push_back(at("{") ? parse_block() : parse_expression());
        close(lambda);
        return lambda;
    }

    SyntaxNode parse_assignment() {
        if (lambda_ahead()) return parse_lambda();
        const std::size_t start = pos_;
        SyntaxNode target = parse_conditional();
        if (auto op = peek_assignment_op()) {
            pos_ += op->second;
            SyntaxNode assign = node("AssignExpr:" + std::string(op->first), start);
            assign.children.push_back(std::move(target));
            assign.children.push_back(at("{") ? parse_array_initializer() : parse_assignment());
            close(assign);
            return assign;
        }
        return target;
    }

    SyntaxNode parse_conditional() {
        const std::size_t start = pos_;
        SyntaxNode condition = parse_binary(1);
        if (!at("?")) return condition;
        next();
        SyntaxNode cond = node("ConditionalExpr", start);
        cond.children.push_back(std::move(condition));
        cond.children.push_back(parse_expression());
        expect(":");
        cond.children.push_back(lambda_ahead() ? parse_lambda() : parse_conditional());
        close(cond);
        return cond;
    }

    SyntaxNode parse_binary(int min_precedence) {
        const std::size_t start = pos_;
        SyntaxNode left = parse_unary();
        while (true) {
            if (at("instanceof") && kInstanceofPrecedence >= min_precedence) {
                next();
                SyntaxNode inst = node("InstanceOfExpr", start);
                inst.children.push_back(std::move(left));
                if (at("final")) next();
                inst.children.push_back(parse_type());
                if (at_ident()) inst.children.push_back(leaf("SimpleName", next()));
                close(inst);
                left = std::move(inst);
                continue;
            }
            auto op = peek_binary_op();
            if (!op || op->first->precedence < min_precedence) return left;
            pos_ += op->second;
            SyntaxNode right = parse_binary(op->first->precedence + 1);
            SyntaxNode bin = node("BinaryExpr:" + std::string(op->first->name), start);
            bin.children.push_back(std::move(left));
            bin.children.push_back(std::move(right));
            close(bin);
            left = std::move(bin);
        }
    }

    bool starts_cast_operand(const Token& t) const {
        if (t.kind == TokenKind::identifier || is_literal(t)) return true;
        if (t.kind == TokenKind::keyword) {
            return t.text == "this" || t.text == "super" || t.text == "new" || t.text == "switch" ||
                   is_primitive(t);
        }
        return t.is("(") || t.is("!") || t.is("~");
    }

    std::optional<SyntaxNode> try_cast() {
        const std::size_t start = pos_;
        try {
            expect("(");
            SyntaxNode type = parse_type();
            while (at("&")) {
                next();
                parse_type();
            }
            if (!at(")")) {
                pos_ = start;
                return std::nullopt;
            }
            next();
            const SyntaxNode* base = &type;
            while (base->type == "ArrayType") base = &base->children.front();
            const bool primitive = base->type == "PrimitiveType";
            if (primitive || starts_cast_operand(peek())) {
                SyntaxNode cast = node("CastExpr", start);
                cast.children.push_back(std::move(type));
                cast.children.push_back(lambda_ahead() ? parse_lambda() : parse_unary());
                close(cast);
                return cast;
            }
        } catch (const ParseError&) {
        }
        pos_ = start;
        return std::nullopt;
    }

    SyntaxNode parse_unary() {
        const std::size_t start = pos_;
        static constexpr std::array<std::pair<std::string_view, std::string_view>, 6> kPrefix = {{
            {"+", "plus"},
            {"-", "minus"},
            {"++", "preIncrement"},
            {"--", "preDecrement"},
            {"!", "logicalComplement"},
            {"~", "bitwiseComplement"},
        }};
        if (peek().kind == TokenKind::punct) {
            for (const auto& [symbol, name] : kPrefix) {
                if (peek().text == symbol) {
                    next();
                    SyntaxNode unary = node("UnaryExpr:" + std::string(name), start);
                    unary.children.push_back(parse_unary());
                    close(unary);
                    return unary;
                }
            }
        }
        if (at("(") && !lambda_ahead()) {
            if (auto cast = try_cast()) return std::move(*cast);
        }
        SyntaxNode expr = parse_postfix_chain();
        while (at("++") || at("--")) {
            const bool inc = at("++");
            next();
            SyntaxNode post = node(inc ? "UnaryExpr:postIncrement" : "UnaryExpr:postDecrement", start);
            post.children.push_back(std::move(expr));
            close(post);
            expr = std::move(post);
        }
        return expr;
    }

    void parse_arguments(std::vector<SyntaxNode>& out) {
        expect("(");
        if (at(")")) {
            next();
            return;
        }
        while (true) {
            out.push_back(parse_expression());
            if (!at(",")) break;
            next();
        }
        expect(")");
    }

    SyntaxNode parse_array_initializer() {
        const std::size_t start = pos_;
        expect("{");
        SyntaxNode init = node("ArrayInitializerExpr", start);
        while (!at("}")) {
            init.children.push_back(at("{") ? parse_array_initializer() : parse_expression());
            if (at(",")) next();
            else if (!at("}")) fail("expected ',' or '}' in array initializer");
        }
        expect("}");
        close(init);
        return init;
    }

    SyntaxNode parse_creation(std::optional<SyntaxNode> scope, std::size_t start) {
        expect("new");
        std::vector<SyntaxNode> type_args;
        if (at("<")) parse_type_arguments(type_args);
        SyntaxNode type = is_primitive(peek()) ? leaf("PrimitiveType", next()) : parse_class_type();
        if (at("[")) {
            SyntaxNode array = node("ArrayCreationExpr", start);
            array.children.push_back(std::move(type));
            while (at("[")) {
                const std::size_t level_start = pos_;
                next();
                SyntaxNode level = node("ArrayCreationLevel", level_start);
                if (!at("]")) level.children.push_back(parse_expression());
                expect("]");
                close(level);
                array.children.push_back(std::move(level));
            }
            if (at("{")) array.children.push_back(parse_array_initializer());
            close(array);
            return array;
        }
        SyntaxNode creation = node("ObjectCreationExpr", start);
        if (scope) creation.children.push_back(std::move(*scope));
        for (auto& a : type_args) creation.children.push_back(std::move(a));
        creation.children.push_back(std::move(type));
        parse_arguments(creation.children);
        if (at("{")) {
            creation.children.push_back(parse_class_body("", TypeKind::class_, MemberSink{}));
        }
        close(creation);
        return creation;
    }

    SyntaxNode parse_primary() {
        const std::size_t start = pos_;
        const Token& t = peek();
        if (is_literal(t)) return leaf(literal_node_type(t.kind), next());
        if (at("this")) return leaf("ThisExpr", next());
        if (at("super")) return leaf("SuperExpr", next());
        if (at("new")) return parse_creation(std::nullopt, start);
        if (at("switch")) return parse_switch("SwitchExpr");
        if (at("(")) {
            if (lambda_ahead()) return parse_lambda();
            next();
            SyntaxNode enclosed = node("EnclosedExpr", start);
            enclosed.children.push_back(parse_expression());
            expect(")");
            close(enclosed);
            return enclosed;
        }
        if (is_primitive(t) || at("void")) {
            SyntaxNode type = parse_type();
            if (at("::")) return parse_method_reference(std::move(type), start);
            expect(".");
            expect("class");
            SyntaxNode cls = node("ClassExpr", start);
            cls.children.push_back(std::move(type));
            close(cls);
            return cls;
        }
        if (at_ident()) {
            if (at("->", 1)) return parse_lambda();
            const Token& name = next();
            if (at("(")) {
                SyntaxNode call = node("MethodCallExpr", start);
                call.children.push_back(leaf("SimpleName", name));
                parse_arguments(call.children);
                close(call);
                return call;
            }
            return leaf("NameExpr", name);
        }
        fail("unexpected token in expression");
    }

    SyntaxNode parse_method_reference(SyntaxNode scope, std::size_t start) {
        expect("::");
        SyntaxNode ref = node("MethodReferenceExpr", start);
        ref.children.push_back(std::move(scope));
        if (at("<")) {
            std::vector<SyntaxNode> ignored;
            parse_type_arguments(ignored);
        }
        if (at("new")) ref.children.push_back(leaf("NewKeyword", next()));
        else ref.children.push_back(leaf("SimpleName", expect_ident()));
        close(ref);
        return ref;
    }

    SyntaxNode parse_postfix_chain() {
        const std::size_t start = pos_;
        SyntaxNode expr = parse_primary();
        while (true) {
            if (at(".")) {
                next();
                if (at("<")) {
                    SyntaxNode call = node("MethodCallExpr", start);
                    call.children.push_back(std::move(expr));
                    const std::size_t targs_start = pos_;
                    SyntaxNode targs = node("TypeArguments", targs_start);
                    parse_type_arguments(targs.children);
                    close(targs);
                    call.children.push_back(std::move(targs));
                    call.children.push_back(leaf("SimpleName", expect_ident()));
                    parse_arguments(call.children);
                    close(call);
                    expr = std::move(call);
                } else if (at("new")) {
                    expr = parse_creation(std::move(expr), start);
                } else if (at("this") || at("super")) {
                    const bool is_this = at("this");
                    next();
                    SyntaxNode qualified = node(is_this ? "QualifiedThisExpr" : "QualifiedSuperExpr", start);
                    qualified.children.push_back(std::move(expr));
                    close(qualified);
                    expr = std::move(qualified);
                } else if (at("class")) {
                    next();
                    SyntaxNode cls = node("ClassExpr", start);
                    cls.children.push_back(std::move(expr));
                    close(cls);
                    expr = std::move(cls);
                } else {
                    const Token& name = expect_ident();
                    if (at("(")) {
                        SyntaxNode call = node("MethodCallExpr", start);
                        call.children.push_back(std::move(expr));
                        call.children.push_back(leaf("SimpleName", name));
                        parse_arguments(call.children);
                        close(call);
                        expr = std::move(call);
                    } else {
                        SyntaxNode field = node("FieldAccessExpr", start);
                        field.children.push_back(std::move(expr));
                        field.children.push_back(leaf("SimpleName", name));
                        close(field);
                        expr = std::move(field);
                    }
                }
            } else if (at("[")) {
                if (at("]", 1)) {
                    // Array type in expression position: "String[].class", "int[]::new".
                    SyntaxNode type = parse_dims(std::move(expr), start);
                    if (at("::")) return parse_method_reference(std::move(type), start);
                    expect(".");
                    expect("class");
                    SyntaxNode cls = node("ClassExpr", start);
                    cls.children.push_back(std::move(type));
                    close(cls);
                    expr = std::move(cls);
                    continue;
                }
                next();
                SyntaxNode access = node("ArrayAccessExpr", start);
                access.children.push_back(std::move(expr));
                access.children.push_back(parse_expression());
                expect("]");
                close(access);
                expr = std::move(access);
            } else if (at("::")) {
                expr = parse_method_reference(std::move(expr), start);
            } else {
                return expr;
            }
        }
    }

    std::string_view src_;
    std::vector<Token> toks_;
    std::vector<Token> comments_;
    std::size_t pos_ = 0;
    Token eof_{};
};

}  // namespace

CompilationUnitResult parse_compilation_unit(std::string_view source) {
    LexResult lexed;
    try {
        lexed = lex(source, LexOptions{.split_angles = true, .keep_comments = true});
    } catch (const ParseError& e) {
        CompilationUnitResult result;
        result.fatal = true;
        result.warnings.push_back({"", static_cast<int>(e.line()), e.what()});
        return result;
    }
    return Parser(source, std::move(lexed)).parse_unit();
}

MethodDeclaration parse_method_declaration(std::string_view text, std::string class_name) {
    auto lexed = lex(text, LexOptions{.split_angles = true, .keep_comments = true});
    if (lexed.tokens.empty()) throw ParseError(1, 0, "empty method text");
    return Parser(text, std::move(lexed)).parse_single_method(std::move(class_name));
}

}  // namespace namemine::java
