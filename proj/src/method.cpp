#include "namemine/method.hpp"

#include "namemine/hash.hpp"
#include "namemine/java/lexer.hpp"

namespace namemine {

std::string MethodKey::to_string() const {
    std::string s = file_path + ":" + class_name + "#" + method_name + "(";
    for (std::size_t i = 0; i < param_types.size(); ++i) {
        if (i) s += ",";
        s += param_types[i];
    }
    return s + ")";
}

std::string MethodKey::class_simple_name() const {
    const auto dot = class_name.rfind('.');
    return dot == std::string::npos ? class_name : class_name.substr(dot + 1);
}

std::string normalize_body(std::string_view text) {
    std::string code;
    try {
        auto lexed = java::lex(text, {.split_angles = false, .keep_comments = true});
        std::size_t cursor = 0;
        for (const auto& comment : lexed.comments) {
            code.append(text.substr(cursor, comment.offset - cursor));
            cursor = comment.end();
        }
        code.append(text.substr(cursor));
    } catch (const java::ParseError&) {
        code.assign(text);
    }
    std::string normalized;
    normalized.reserve(code.size());
    for (char c : code) {
        if (c != ' ' && c != '\t' && c != '\n' && c != '\r' && c != '\f' && c != '\v') {
            normalized.push_back(c);
        }
    }
    return normalized;
}

std::string body_hash(std::string_view text) { return sha256_hex(normalize_body(text)); }

}  // namespace namemine
