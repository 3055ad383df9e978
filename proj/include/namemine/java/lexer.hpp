#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace namemine::java {

enum class TokenKind {
    identifier,
    keyword,
    integer_literal,
    long_literal,
    floating_literal,
    char_literal,
    string_literal,
    text_block,
    boolean_literal,
    null_literal,
    punct,
    line_comment,
    block_comment,
    doc_comment,
};

struct Token {
    TokenKind kind;
    std::string_view text;  // view into the lexed source
    std::uint32_t offset = 0;
    std::uint32_t line = 1;

    [[nodiscard]] std::uint32_t end() const noexcept {
        return offset + static_cast<std::uint32_t>(text.size());
    }
    [[nodiscard]] bool is(std::string_view s) const noexcept {
        return (kind == TokenKind::punct || kind == TokenKind::keyword) && text == s;
    }
    [[nodiscard]] bool is_comment() const noexcept {
        return kind == TokenKind::line_comment || kind == TokenKind::block_comment ||
               kind == TokenKind::doc_comment;
    }
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::uint32_t line, std::uint32_t offset, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message),
          line_(line), offset_(offset) {}

    [[nodiscard]] std::uint32_t line() const noexcept { return line_; }
    [[nodiscard]] std::uint32_t offset() const noexcept { return offset_; }

private:
    std::uint32_t line_;
    std::uint32_t offset_;
};

struct LexOptions {
    /// Emit ">>" and ">>>" as separate ">" tokens so generic closers can be
    /// consumed one at a time; the expression parser rejoins adjacent ones.
    bool split_angles = false;
    bool keep_comments = false;
};

struct LexResult {
    std::vector<Token> tokens;    // code tokens only
    std::vector<Token> comments;  // populated when keep_comments is set
};

/// Tokenizes Java source. Throws ParseError on unterminated literals,
/// unterminated block comments, or characters outside the language.
LexResult lex(std::string_view source, LexOptions options = {});

bool is_java_keyword(std::string_view word) noexcept;

}  // namespace namemine::java
