#include "namemine/java/lexer.hpp"

#include <algorithm>
#include <array>

namespace namemine::java {

namespace {

constexpr std::array<std::string_view, 50> kKeywords = {
    "abstract",  "assert",       "boolean",   "break",      "byte",     "case",
    "catch",     "char",         "class",     "const",      "continue", "default",
    "do",        "double",       "else",      "enum",       "extends",  "final",
    "finally",   "float",        "for",       "goto",       "if",       "implements",
    "import",    "instanceof",   "int",       "interface",  "long",     "native",
    "new",       "package",      "private",   "protected",  "public",   "return",
    "short",     "static",       "strictfp",  "super",      "switch",   "synchronized",
    "this",      "throw",        "throws",    "transient",  "try",      "void",
    "volatile",  "while",
};

// Longest first so the scan below is maximal munch.
constexpr std::array<std::string_view, 25> kMultiCharPuncts = {
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "++", "--", "&&", "||", "==", "!=",
    "<=",   ">=",  "+=",  "-=",  "*=",  "/=", "&=", "|=", "^=", "%=", "<<", ">>",
};

constexpr std::string_view kSingleCharPuncts = "(){}[];,.@=><!~?:+-*/&|^%";

bool is_ident_start(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' || c >= 0x80;
}

bool is_ident_part(unsigned char c) {
    return is_ident_start(c) || (c >= '0' && c <= '9');
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_hex_digit(char c) {
    return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

class Lexer {
public:
    Lexer(std::string_view source, LexOptions options) : src_(source), options_(options) {}

    LexResult run() {
        LexResult result;
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == '\n') {
                ++line_;
                ++pos_;
                continue;
            }
            if (c == ' ' || c == '\t' || c == '\r' || c == '\f') {
                ++pos_;
                continue;
            }
            const std::size_t start = pos_;
            const std::uint32_t start_line = line_;
            TokenKind kind = scan(c);
            Token token{kind, src_.substr(start, pos_ - start), static_cast<std::uint32_t>(start),
                        start_line};
            if (token.is_comment()) {
                if (options_.keep_comments) result.comments.push_back(token);
            } else {
                result.tokens.push_back(token);
            }
        }
        return result;
    }

private:
    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(line_, static_cast<std::uint32_t>(pos_), message);
    }

    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    void advance_counting_lines(std::size_t n) {
        for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i, ++pos_) {
            if (src_[pos_] == '\n') ++line_;
        }
    }

    TokenKind scan(char c) {
        if (c == '/' && peek(1) == '/') {
            while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
            return TokenKind::line_comment;
        }
        if (c == '/' && peek(1) == '*') {
            const bool doc = peek(2) == '*' && peek(3) != '/';
            const auto close = src_.find("*/", pos_ + 2);
            if (close == std::string_view::npos) fail("unterminated block comment");
            advance_counting_lines(close + 2 - pos_);
            return doc ? TokenKind::doc_comment : TokenKind::block_comment;
        }
        if (c == '"') return scan_string();
        if (c == '\'') return scan_char();
        if (is_digit(c) || (c == '.' && is_digit(peek(1)))) return scan_number();
        if (is_ident_start(static_cast<unsigned char>(c))) return scan_word();
        return scan_punct();
    }

    TokenKind scan_word() {
        while (pos_ < src_.size() && is_ident_part(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        return TokenKind::identifier;  // classified by the caller of lex()
    }

    TokenKind scan_string() {
        if (peek(1) == '"' && peek(2) == '"') {
            pos_ += 3;
            while (true) {
                if (pos_ >= src_.size()) fail("unterminated text block");
                if (src_[pos_] == '\\') {
                    advance_counting_lines(2);
                    continue;
                }
                if (src_.compare(pos_, 3, "\"\"\"") == 0) {
                    pos_ += 3;
                    return TokenKind::text_block;
                }
                advance_counting_lines(1);
            }
        }
        ++pos_;
        while (true) {
            if (pos_ >= src_.size() || src_[pos_] == '\n') fail("unterminated string literal");
            if (src_[pos_] == '\\') {
                pos_ += 2;
                continue;
            }
            if (src_[pos_] == '"') {
                ++pos_;
                return TokenKind::string_literal;
            }
            ++pos_;
        }
    }

    TokenKind scan_char() {
        ++pos_;
        while (true) {
            if (pos_ >= src_.size() || src_[pos_] == '\n') fail("unterminated character literal");
            if (src_[pos_] == '\\') {
                pos_ += 2;
                continue;
            }
            if (src_[pos_] == '\'') {
                ++pos_;
                return TokenKind::char_literal;
            }
            ++pos_;
        }
    }

    TokenKind scan_number() {
        bool floating = false;
        if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
            pos_ += 2;
            while (is_hex_digit(peek()) || peek() == '_') ++pos_;
            if (peek() == '.') {
                floating = true;
                ++pos_;
                while (is_hex_digit(peek()) || peek() == '_') ++pos_;
            }
            if (peek() == 'p' || peek() == 'P') {
                floating = true;
                ++pos_;
                if (peek() == '+' || peek() == '-') ++pos_;
                while (is_digit(peek()) || peek() == '_') ++pos_;
            }
        } else if (peek() == '0' && (peek(1) == 'b' || peek(1) == 'B')) {
            pos_ += 2;
            while (peek() == '0' || peek() == '1' || peek() == '_') ++pos_;
        } else {
            while (is_digit(peek()) || peek() == '_') ++pos_;
            if (peek() == '.' && (is_digit(peek(1)) || !is_ident_start(static_cast<unsigned char>(peek(1))))) {
                // "1." and "1.5" are literals; "1.foo" cannot occur in valid Java.
                if (peek(1) != '.') {
                    floating = true;
                    ++pos_;
                    while (is_digit(peek()) || peek() == '_') ++pos_;
                }
            }
            if (peek() == 'e' || peek() == 'E') {
                floating = true;
                ++pos_;
                if (peek() == '+' || peek() == '-') ++pos_;
                if (!is_digit(peek())) fail("malformed exponent");
                while (is_digit(peek()) || peek() == '_') ++pos_;
            }
        }
        const char suffix = peek();
        if (suffix == 'l' || suffix == 'L') {
            ++pos_;
            return TokenKind::long_literal;
        }
        if (suffix == 'f' || suffix == 'F' || suffix == 'd' || suffix == 'D') {
            ++pos_;
            return TokenKind::floating_literal;
        }
        if (is_ident_part(static_cast<unsigned char>(peek()))) fail("malformed numeric literal");
        return floating ? TokenKind::floating_literal : TokenKind::integer_literal;
    }

    TokenKind scan_punct() {
        const std::string_view rest = src_.substr(pos_);
        if (options_.split_angles && rest.starts_with(">>")) {
            ++pos_;
            return TokenKind::punct;
        }
        for (auto p : kMultiCharPuncts) {
            if (rest.starts_with(p)) {
                pos_ += p.size();
                return TokenKind::punct;
            }
        }
        if (kSingleCharPuncts.find(src_[pos_]) != std::string_view::npos) {
            ++pos_;
            return TokenKind::punct;
        }
        fail(std::string("unexpected character '") + src_[pos_] + "'");
    }

    std::string_view src_;
    LexOptions options_;
    std::size_t pos_ = 0;
    std::uint32_t line_ = 1;
};

}  // namespace

bool is_java_keyword(std::string_view word) noexcept {
    return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

LexResult lex(std::string_view source, LexOptions options) {
    LexResult result = Lexer(source, options).run();
    for (auto& token : result.tokens) {
        if (token.kind != TokenKind::identifier) continue;
        if (token.text == "true" || token.text == "false") {
            token.kind = TokenKind::boolean_literal;
        } else if (token.text == "null") {
            token.kind = TokenKind::null_literal;
        } else if (is_java_keyword(token.text)) {
            token.kind = TokenKind::keyword;
        }
    }
    return result;
}

}  // namespace namemine::java
