#pragma once

// Separable permutations: block decomposition, separating trees, and the
// rank generating functions of [id, p] and [p, w0] computed from the tree.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bruhat/errors.hpp"
#include "bruhat/permutation.hpp"
#include "bruhat/qpoly.hpp"

namespace bruhat {

inline bool is_separable(const Permutation& p) {
    static const Permutation p2413{2, 4, 1, 3};
    static const Permutation p3142{3, 1, 4, 2};
    return avoids(p, p2413) && avoids(p, p3142);
}

enum class BlockKind {
    low_high,  // prefix is {1..m}, suffix is {m+1..n}
    high_low,  // prefix is {n-m+1..n}, suffix is {1..n-m}
};

struct BlockSplit {
    std::size_t m = 0;  // prefix length, 1 <= m < n
    BlockKind kind = BlockKind::low_high;

    friend bool operator==(const BlockSplit&, const BlockSplit&) = default;
};

// Which block boundary to use when several exist.
enum class SplitRule { smallest, largest };

namespace detail {

// Prefix-block detection on word[first, last) whose values form the range
// [lo, lo + (last - first) - 1]. The kind comes from the block's content.
template <typename Word>
std::optional<BlockSplit> find_split(const Word& word, std::size_t first, std::size_t last, SplitRule rule) {
    const std::size_t len = last - first;
    int lo = word[first];
    for (std::size_t i = first; i < last; ++i) lo = std::min<int>(lo, word[i]);
    const int hi = lo + static_cast<int>(len) - 1;

    std::optional<BlockSplit> found;
    int run_min = word[first];
    int run_max = word[first];
    for (std::size_t m = 1; m < len; ++m) {
        run_min = std::min<int>(run_min, word[first + m - 1]);
        run_max = std::max<int>(run_max, word[first + m - 1]);
        std::optional<BlockKind> kind;
        if (run_min == lo && run_max == lo + static_cast<int>(m) - 1) kind = BlockKind::low_high;
        if (run_max == hi && run_min == hi - static_cast<int>(m) + 1) kind = BlockKind::high_low;
        if (!kind) continue;
        found = BlockSplit{m, *kind};
        if (rule == SplitRule::smallest) break;
    }
    return found;
}

}  // namespace detail

// A decomposition p = p_A p_B into a low-high or high-low pair of blocks.
// Always present for separable p with n >= 2; may be absent otherwise.
inline std::optional<BlockSplit> block_split(const Permutation& p, SplitRule rule = SplitRule::smallest) {
    if (p.size() < 2) throw Error("block_split needs a permutation of size at least 2");
    return detail::find_split(p, 0, p.size(), rule);
}

// Standardized prefix (first m letters) and suffix.
inline Permutation block_prefix(const Permutation& p, std::size_t m) {
    const auto w = p.to_vector();
    return standardize(std::vector<int>(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(m)));
}

inline Permutation block_suffix(const Permutation& p, std::size_t m) {
    const auto w = p.to_vector();
    return standardize(std::vector<int>(w.begin() + static_cast<std::ptrdiff_t>(m), w.end()));
}

// ---------------------------------------------------------------------------
// Separating tree

enum class NodeSign { leaf, positive, negative };

struct TreeNode {
    NodeSign sign = NodeSign::leaf;
    int value = 0;            // leaves only
    int left = -1;            // child indices into the node arena
    int right = -1;
    std::size_t leaf_count = 1;
    int lo = 0;               // the subrange covered by the leaves
    int hi = 0;

    bool is_leaf() const noexcept { return sign == NodeSign::leaf; }
};

class SeparatingTree {
public:
    SeparatingTree(std::vector<TreeNode> nodes, int root) : nodes_(std::move(nodes)), root_(root) {}

    const TreeNode& root() const { return nodes_[static_cast<std::size_t>(root_)]; }
    int root_index() const noexcept { return root_; }
    const TreeNode& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
    const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
    std::size_t size() const { return root().leaf_count; }

    std::vector<int> leaves() const {
        std::vector<int> out;
        collect_leaves(root_, out);
        return out;
    }

    std::size_t count(NodeSign s) const {
        std::size_t c = 0;
        for (const auto& nd : nodes_) c += nd.sign == s;
        return c;
    }

    // Non-root internal nodes of the given sign whose parent has a different
    // sign; S-(p) for negative and S+(p) for positive.
    std::vector<int> sign_run_heads(NodeSign s) const {
        std::vector<int> out;
        collect_heads(root_, NodeSign::leaf, s, out);
        return out;
    }

private:
    void collect_leaves(int i, std::vector<int>& out) const {
        const TreeNode& nd = node(i);
        if (nd.is_leaf()) {
            out.push_back(nd.value);
            return;
        }
        collect_leaves(nd.left, out);
        collect_leaves(nd.right, out);
    }

    void collect_heads(int i, NodeSign parent, NodeSign s, std::vector<int>& out) const {
        const TreeNode& nd = node(i);
        if (nd.is_leaf()) return;
        if (i != root_ && nd.sign == s && parent != s) out.push_back(i);
        collect_heads(nd.left, nd.sign, s, out);
        collect_heads(nd.right, nd.sign, s, out);
    }

    std::vector<TreeNode> nodes_;
    int root_;
};

// Recursive block decomposition. n = 1 gives a single leaf.
inline SeparatingTree separating_tree(const Permutation& p, SplitRule rule = SplitRule::smallest) {
    std::vector<TreeNode> nodes;
    const auto word = p.word();
    auto build = [&](auto&& self, std::size_t first, std::size_t last) -> int {
        TreeNode nd;
        nd.leaf_count = last - first;
        nd.lo = word[first];
        nd.hi = word[first];
        for (std::size_t i = first; i < last; ++i) {
            nd.lo = std::min<int>(nd.lo, word[i]);
            nd.hi = std::max<int>(nd.hi, word[i]);
        }
        if (last - first == 1) {
            nd.value = word[first];
            nodes.push_back(nd);
            return static_cast<int>(nodes.size() - 1);
        }
        const auto split = detail::find_split(word, first, last, rule);
        if (!split) throw NotSeparable(p.to_string());
        nd.sign = split->kind == BlockKind::low_high ? NodeSign::positive : NodeSign::negative;
        nd.left = self(self, first, first + split->m);
        nd.right = self(self, first + split->m, last);
        nodes.push_back(nd);
        return static_cast<int>(nodes.size() - 1);
    };
    const int root = build(build, 0, p.size());
    return SeparatingTree(std::move(nodes), root);
}

// ---------------------------------------------------------------------------
// Generating functions

namespace detail {

// Product over the tree: q-binomial factors on nodes of the given sign.
inline IntPoly tree_recursion(const SeparatingTree& t, int i, NodeSign binomial_sign) {
    const TreeNode& nd = t.node(i);
    if (nd.is_leaf()) return IntPoly{1};
    IntPoly value = tree_recursion(t, nd.left, binomial_sign) * tree_recursion(t, nd.right, binomial_sign);
    if (nd.sign == binomial_sign) value *= q_binomial(nd.leaf_count, t.node(nd.left).leaf_count);
    return value;
}

inline IntPoly factorial_product(const SeparatingTree& t, const std::vector<int>& heads) {
    IntPoly out{1};
    for (int i : heads) out *= q_factorial(t.node(i).leaf_count);
    return out;
}

}  // namespace detail

// F([id, p]): positive node -> product of children, negative node ->
// q-binomial(N, N_left) times that product.
inline IntPoly gf_below_recursive(const Permutation& p) {
    const SeparatingTree t = separating_tree(p);
    return detail::tree_recursion(t, t.root_index(), NodeSign::negative);
}

// F([p, w0]): the dual recursion, q-binomial on positive nodes.
inline IntPoly gf_above_recursive(const Permutation& p) {
    const SeparatingTree t = separating_tree(p);
    return detail::tree_recursion(t, t.root_index(), NodeSign::positive);
}

// Closed form: prod_{S-}[N]! / prod_{S+}[N]!, times [n]! when the root is
// negative. Divisions are exact; a remainder means a bug and throws.
inline IntPoly gf_below_closed(const SeparatingTree& t) {
    if (t.root().is_leaf()) return IntPoly{1};
    IntPoly num = detail::factorial_product(t, t.sign_run_heads(NodeSign::negative));
    if (t.root().sign == NodeSign::negative) num *= q_factorial(t.size());
    return exact_div(num, detail::factorial_product(t, t.sign_run_heads(NodeSign::positive)));
}

// prod_{S+}[N]! / prod_{S-}[N]!, times [n]! when the root is positive.
inline IntPoly gf_above_closed(const SeparatingTree& t) {
    if (t.root().is_leaf()) return IntPoly{1};
    IntPoly num = detail::factorial_product(t, t.sign_run_heads(NodeSign::positive));
    if (t.root().sign == NodeSign::positive) num *= q_factorial(t.size());
    return exact_div(num, detail::factorial_product(t, t.sign_run_heads(NodeSign::negative)));
}

inline bool avoids_231(const Permutation& p) {
    static const Permutation p231{2, 3, 1};
    return avoids(p, p231);
}

// For 231-avoiding p: prod_i [c_i], where c_i is the distance from a_i to the
// first larger letter on its right (a_{n+1} = infinity).
inline IntPoly gf_below_231(const Permutation& p) {
    if (!avoids_231(p)) throw Not231Avoiding(p.to_string());
    const std::size_t n = p.size();
    IntPoly out{1};
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = i + 1;
        while (j < n && p[j] < p[i]) ++j;
        out *= q_int(j - i);
    }
    return out;
}

// [n]! / F([id, p]).
inline IntPoly gf_above_from_complement(const Permutation& p) {
    return exact_div(q_factorial(p.size()), gf_below_recursive(p));
}

// ---------------------------------------------------------------------------
// Export

inline std::string tree_dot(const SeparatingTree& t) {
    std::ostringstream out;
    out << "graph separating_tree {\n";
    out << "  ordering=out;\n";
    out << "  node [shape=plaintext];\n";
    for (std::size_t i = 0; i < t.nodes().size(); ++i) {
        const TreeNode& nd = t.nodes()[i];
        out << "  n" << i << " [label=\"";
        switch (nd.sign) {
            case NodeSign::leaf: out << nd.value; break;
            case NodeSign::positive: out << "Positive Node"; break;
            case NodeSign::negative: out << "Negative Node"; break;
        }
        out << "\"];\n";
    }
    for (std::size_t i = 0; i < t.nodes().size(); ++i) {
        const TreeNode& nd = t.nodes()[i];
        if (nd.is_leaf()) continue;
        out << "  n" << i << " -- n" << nd.left << ";\n";
        out << "  n" << i << " -- n" << nd.right << ";\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace bruhat
