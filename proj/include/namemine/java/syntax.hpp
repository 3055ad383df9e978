#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace namemine::java {

/// AST node. Leaves carry the source token; interior nodes carry only a
/// type. Byte spans are relative to the text the node was parsed from and
/// take no part in equality.
struct SyntaxNode {
    std::string type;
    std::optional<std::string> token;
    std::vector<SyntaxNode> children;
    std::uint32_t begin = 0;
    std::uint32_t end = 0;

    [[nodiscard]] bool is_leaf() const noexcept { return token.has_value(); }

    friend bool operator==(const SyntaxNode& a, const SyntaxNode& b) {
        return a.type == b.type && a.token == b.token && a.children == b.children;
    }
};

inline SyntaxNode make_leaf(std::string type, std::string token, std::uint32_t begin,
                            std::uint32_t end) {
    SyntaxNode node;
    node.type = std::move(type);
    node.token = std::move(token);
    node.begin = begin;
    node.end = end;
    return node;
}

/// Preorder visit. Returning false from the visitor skips the node's subtree.
inline void visit_preorder(const SyntaxNode& node,
                           const std::function<bool(const SyntaxNode&)>& visitor) {
    if (!visitor(node)) return;
    for (const auto& child : node.children) visit_preorder(child, visitor);
}

/// Leaves in left-to-right order.
std::vector<const SyntaxNode*> collect_leaves(const SyntaxNode& root);

std::size_t count_nodes(const SyntaxNode& root);

/// Shifts every span by -delta (spans must be >= delta).
void rebase_spans(SyntaxNode& root, std::uint32_t delta);

}  // namespace namemine::java
