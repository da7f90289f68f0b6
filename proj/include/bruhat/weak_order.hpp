#pragma once

// Brute-force machinery over the weak order on S_n: interval enumeration,
// rank generating functions by counting, saturated chains, reduced words,
// Hasse diagrams, and a packed comparability matrix for whole-group scans.

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <map>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "bruhat/errors.hpp"
#include "bruhat/permutation.hpp"
#include "bruhat/qpoly.hpp"

namespace bruhat {

inline constexpr std::size_t kMaxIntervalSize = 10;

// [bottom, top] grouped by rank offset; each rank is sorted lexicographically.
struct Interval {
    Permutation bottom;
    Permutation top;
    std::vector<std::vector<Permutation>> ranks;

    std::size_t size() const {
        std::size_t s = 0;
        for (const auto& r : ranks) s += r.size();
        return s;
    }

    std::vector<Permutation> elements() const {
        std::vector<Permutation> out;
        for (const auto& r : ranks) out.insert(out.end(), r.begin(), r.end());
        return out;
    }

    bool contains(const Permutation& w) const {
        const std::size_t lb = length(bottom);
        const std::size_t lw = length(w);
        if (lw < lb || lw - lb >= ranks.size()) return false;
        const auto& r = ranks[lw - lb];
        return std::binary_search(r.begin(), r.end(), w);
    }
};

// {w : bottom <= w <= top}, by breadth-first search up from bottom.
inline Interval interval(const Permutation& bottom, const Permutation& top, bool force = false) {
    if (bottom.size() != top.size()) throw SizeMismatch(bottom.size(), top.size());
    if (bottom.size() > kMaxIntervalSize && !force) {
        throw GuardExceeded("interval enumeration in S_" + std::to_string(bottom.size()) +
                            " exceeds the n <= " + std::to_string(kMaxIntervalSize) + " guard; pass --force to override");
    }
    if (!leq_weak(bottom, top)) throw IncomparableEndpoints(bottom.to_string(), top.to_string());

    Interval iv{bottom, top, {}};
    const std::size_t height = length(top) - length(bottom);
    iv.ranks.resize(height + 1);
    iv.ranks[0].push_back(bottom);
    for (std::size_t r = 0; r < height; ++r) {
        std::unordered_set<Permutation, PermutationHash> next;
        for (const auto& w : iv.ranks[r])
            for (const auto& c : upper_covers(w))
                if (!next.contains(c) && leq_weak(c, top)) next.insert(c);
        iv.ranks[r + 1].assign(next.begin(), next.end());
        std::sort(iv.ranks[r + 1].begin(), iv.ranks[r + 1].end());
    }
    return iv;
}

inline Interval lower_interval(const Permutation& p, bool force = false) {
    return interval(Permutation::identity(p.size()), p, force);
}

inline Interval upper_interval(const Permutation& p, bool force = false) {
    return interval(p, Permutation::longest(p.size()), force);
}

inline IntPoly rank_gf(const Interval& iv) {
    std::vector<std::size_t> counts;
    for (const auto& r : iv.ranks) counts.push_back(r.size());
    return IntPoly::from_counts(counts);
}

// Number of saturated chains u = w_0 < w_1 < ... < w_k = v.
inline BigInt saturated_chains(const Permutation& u, const Permutation& v, bool force = false) {
    const Interval iv = interval(u, v, force);
    std::unordered_map<Permutation, BigInt, PermutationHash> paths;
    paths[u] = 1;
    for (std::size_t r = 0; r + 1 < iv.ranks.size(); ++r) {
        for (const auto& w : iv.ranks[r]) {
            const BigInt& here = paths[w];
            for (const auto& c : upper_covers(w))
                if (iv.contains(c)) paths[c] += here;
        }
    }
    return paths[v];
}

// Every saturated chain from u to v, each listed bottom to top, in
// lexicographic order of the chain.
inline std::vector<std::vector<Permutation>> list_saturated_chains(const Permutation& u, const Permutation& v,
                                                                   bool force = false) {
    const Interval iv = interval(u, v, force);
    std::vector<std::vector<Permutation>> out;
    std::vector<Permutation> chain{u};
    auto dfs = [&](auto&& self, const Permutation& w) -> void {
        if (w == v) {
            out.push_back(chain);
            return;
        }
        for (const auto& c : upper_covers(w)) {
            if (!iv.contains(c)) continue;
            chain.push_back(c);
            self(self, c);
            chain.pop_back();
        }
    };
    dfs(dfs, u);
    return out;
}

// All (i_1, ..., i_l) with s_{i_1} ... s_{i_l} = p and l = length(p),
// in lexicographic order.
inline std::vector<std::vector<int>> reduced_words(const Permutation& p) {
    std::map<Permutation, std::vector<std::vector<int>>> memo;
    auto words = [&](auto&& self, const Permutation& w) -> const std::vector<std::vector<int>>& {
        if (auto it = memo.find(w); it != memo.end()) return it->second;
        std::vector<std::vector<int>> out;
        const auto des = descent_set(w);
        if (des.empty()) {
            out.push_back({});
        } else {
            for (std::size_t i : des) {
                for (auto word : self(self, w.times_simple(i))) {
                    word.push_back(static_cast<int>(i));
                    out.push_back(std::move(word));
                }
            }
            std::sort(out.begin(), out.end());
        }
        return memo.emplace(w, std::move(out)).first->second;
    };
    return words(words, p);
}

// The permutation s_{i_1} ... s_{i_l}.
inline Permutation word_product(std::size_t n, const std::vector<int>& word) {
    Permutation p = Permutation::identity(n);
    for (int i : word) p = p.times_simple(static_cast<std::size_t>(i));
    return p;
}

// ---------------------------------------------------------------------------
// Packed comparability matrix

// Value-pair inversion set: bit for (a, b), a < b, is set when b precedes a.
// u <= v in weak order exactly when inversion_bits(u) is a subset of
// inversion_bits(v).
struct InversionBits {
    std::array<std::uint64_t, 2> words{};

    bool subset_of(const InversionBits& o) const noexcept {
        return (words[0] & ~o.words[0]) == 0 && (words[1] & ~o.words[1]) == 0;
    }
};

inline InversionBits inversion_bits(const Permutation& p) noexcept {
    InversionBits bits;
    const std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const int later = p[j];
            const int earlier = p[i];
            if (earlier > later) {
                const auto b = static_cast<std::size_t>(earlier);
                const auto a = static_cast<std::size_t>(later);
                const std::size_t idx = (b - 1) * (b - 2) / 2 + (a - 1);
                bits.words[idx / 64] |= std::uint64_t{1} << (idx % 64);
            }
        }
    }
    return bits;
}

inline constexpr std::size_t kMaxComparabilitySize = 8;

// M[u][v] = (u <= v) over S_n indexed by lexicographic rank.
class ComparabilityMatrix {
public:
    explicit ComparabilityMatrix(std::size_t n, bool force = false) : n_(n) {
        if (n == 0) throw InvalidPermutation("permutation size must be at least 1");
        if (n > kMaxComparabilitySize && !force) {
            throw GuardExceeded("comparability matrix for S_" + std::to_string(n) + " exceeds the n <= " +
                                std::to_string(kMaxComparabilitySize) + " memory guard; pass --force to override");
        }
        count_ = factorial(n);
        stride_ = (count_ + 63) / 64;
        bits_.assign(count_ * stride_, 0);

        std::vector<InversionBits> inv;
        inv.reserve(count_);
        for_each_permutation(n, [&](const Permutation& p) { inv.push_back(inversion_bits(p)); });

        for (std::size_t u = 0; u < count_; ++u) {
            std::uint64_t* row = bits_.data() + u * stride_;
            const InversionBits iu = inv[u];
            for (std::size_t v = 0; v < count_; ++v)
                if (iu.subset_of(inv[v])) row[v / 64] |= std::uint64_t{1} << (v % 64);
        }
    }

    std::size_t n() const noexcept { return n_; }
    std::size_t count() const noexcept { return count_; }

    bool operator()(std::size_t u, std::size_t v) const noexcept {
        return (bits_[u * stride_ + v / 64] >> (v % 64)) & 1u;
    }

    bool leq(const Permutation& u, const Permutation& v) const {
        return (*this)(static_cast<std::size_t>(lex_rank(u)), static_cast<std::size_t>(lex_rank(v)));
    }

    std::size_t row_count(std::size_t u) const noexcept {
        std::size_t c = 0;
        for (std::size_t k = 0; k < stride_; ++k) c += static_cast<std::size_t>(__builtin_popcountll(bits_[u * stride_ + k]));
        return c;
    }

    std::size_t column_count(std::size_t v) const noexcept {
        std::size_t c = 0;
        for (std::size_t u = 0; u < count_; ++u) c += (*this)(u, v);
        return c;
    }

    std::size_t true_count() const noexcept {
        std::size_t c = 0;
        for (auto w : bits_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }

private:
    std::size_t n_;
    std::size_t count_ = 0;
    std::size_t stride_ = 0;
    std::vector<std::uint64_t> bits_;
};

inline ComparabilityMatrix comparability_matrix(std::size_t n, bool force = false) { return ComparabilityMatrix(n, force); }

// ---------------------------------------------------------------------------
// Export

// Hasse diagram as a DOT digraph: nodes labeled by word, one rank per length,
// edges point from each element to its upper covers.
inline std::string hasse_dot(const Interval& iv) {
    std::ostringstream out;
    out << "digraph weak_order {\n";
    out << "  rankdir=BT;\n";
    out << "  node [shape=plaintext];\n";
    for (std::size_t r = 0; r < iv.ranks.size(); ++r) {
        out << "  { rank=same;";
        for (const auto& w : iv.ranks[r]) out << " \"" << w.to_string() << "\";";
        out << " }\n";
    }
    for (std::size_t r = 0; r + 1 < iv.ranks.size(); ++r) {
        for (const auto& w : iv.ranks[r]) {
            for (const auto& c : upper_covers(w))
                if (iv.contains(c)) out << "  \"" << w.to_string() << "\" -> \"" << c.to_string() << "\";\n";
        }
    }
    out << "}\n";
    return out.str();
}

// Cover edges (lower, upper) inside the interval, sorted.
inline std::vector<std::pair<Permutation, Permutation>> cover_edges(const Interval& iv) {
    std::vector<std::pair<Permutation, Permutation>> out;
    for (const auto& rank : iv.ranks)
        for (const auto& w : rank)
            for (const auto& c : upper_covers(w))
                if (iv.contains(c)) out.emplace_back(w, c);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace bruhat
