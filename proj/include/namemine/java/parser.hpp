#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "namemine/error.hpp"
#include "namemine/java/lexer.hpp"
#include "namemine/java/syntax.hpp"

namespace namemine::java {

/// One method or constructor declaration found in a compilation unit.
struct MethodDeclaration {
    std::string class_name;  // package-qualified, nested classes joined by '.'
    std::string name;
    std::vector<std::string> param_types;
    std::set<std::string> modifiers;
    std::set<std::string> annotations;  // simple names, e.g. "Override"
    bool is_constructor = false;
    bool has_body = false;

    /// Byte range of the declaration in the file. Starts at a directly
    /// preceding doc comment when there is one.
    std::uint32_t begin = 0;
    std::uint32_t end = 0;
    std::uint32_t start_line = 1;
    std::uint32_t end_line = 1;

    /// Spans are offsets into the parsed text.
    SyntaxNode tree;
};

struct CompilationUnitResult {
    std::vector<MethodDeclaration> methods;
    std::vector<Diagnostic> warnings;  // path left empty; the caller knows it
    /// The file could not be parsed past some point outside any member body
    /// (lexical error, broken type header). `methods` holds what came before.
    bool fatal = false;
};

/// Extracts all method and constructor declarations of named (top-level and
/// member) types. Members whose declaration fails to parse are skipped with a
/// warning; methods of anonymous and local classes stay inside their
/// enclosing method's tree.
CompilationUnitResult parse_compilation_unit(std::string_view source);

/// Parses `text` as exactly one method or constructor declaration (leading
/// comments allowed). Throws ParseError otherwise.
MethodDeclaration parse_method_declaration(std::string_view text, std::string class_name);

/// Token texts of a source fragment with comments dropped (maximal munch).
std::vector<std::string> token_texts(std::string_view text);

}  // namespace namemine::java
