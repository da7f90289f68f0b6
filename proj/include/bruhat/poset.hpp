#pragma once

// Finite posets on a contiguous label range {offset+1, ..., offset+n}, with
// the combinators and linear-extension statistics needed for inversion
// posets of permutations.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bruhat/errors.hpp"
#include "bruhat/permutation.hpp"
#include "bruhat/qpoly.hpp"

namespace bruhat {

inline constexpr std::size_t kMaxPosetSize = 16;
inline constexpr std::size_t kMaxExtensionPosetSize = 10;
inline constexpr std::size_t kMaxOrderPolynomialSize = 8;

class Poset {
public:
    using mask = std::uint32_t;

    Poset() = default;

    // Antichain on {offset+1, ..., offset+n}.
    explicit Poset(std::size_t n, std::size_t offset = 0) : n_(n), offset_(offset), below_(n, 0) {
        if (n > kMaxPosetSize) throw GuardExceeded("posets are limited to " + std::to_string(kMaxPosetSize) + " elements");
    }

    static Poset antichain(std::size_t n, std::size_t offset = 0) { return Poset(n, offset); }

    static Poset chain(std::size_t n, std::size_t offset = 0) {
        Poset p(n, offset);
        for (std::size_t i = 1; i < n; ++i) p.below_[i] = (mask{1} << i) - 1;
        return p;
    }

    // Strict relations given as (smaller, larger) label pairs; the transitive
    // closure is taken. Throws if the relations contain a cycle.
    static Poset from_relations(std::size_t n, const std::vector<std::pair<int, int>>& less, std::size_t offset = 0) {
        Poset p(n, offset);
        for (auto [a, b] : less) {
            const std::size_t ia = p.index_of(a);
            const std::size_t ib = p.index_of(b);
            p.below_[ib] |= mask{1} << ia;
        }
        p.close();
        return p;
    }

    std::size_t size() const noexcept { return n_; }
    std::size_t offset() const noexcept { return offset_; }
    int min_label() const noexcept { return static_cast<int>(offset_ + 1); }
    int max_label() const noexcept { return static_cast<int>(offset_ + n_); }

    // Strict order on labels.
    bool less(int a, int b) const { return (below_[index_of(b)] >> index_of(a)) & 1u; }

    // Strict predecessors of the element at 0-based index i, as an index mask.
    mask below_mask(std::size_t i) const noexcept { return below_[i]; }

    // Hasse diagram as (lower, upper) label pairs, sorted.
    std::vector<std::pair<int, int>> covers() const {
        std::vector<std::pair<int, int>> out;
        for (std::size_t b = 0; b < n_; ++b) {
            for (std::size_t a = 0; a < n_; ++a) {
                if (!((below_[b] >> a) & 1u)) continue;
                // a < b is a cover unless some c sits strictly between.
                const bool covered = (below_[b] & upper_set(a)) == 0;
                if (covered) out.emplace_back(label_of(a), label_of(b));
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    // Every strict relation as (lower, upper) label pairs, sorted.
    std::vector<std::pair<int, int>> relations() const {
        std::vector<std::pair<int, int>> out;
        for (std::size_t b = 0; b < n_; ++b)
            for (std::size_t a = 0; a < n_; ++a)
                if ((below_[b] >> a) & 1u) out.emplace_back(label_of(a), label_of(b));
        std::sort(out.begin(), out.end());
        return out;
    }

    Poset relabeled(std::size_t new_offset) const {
        Poset p = *this;
        p.offset_ = new_offset;
        return p;
    }

    friend bool operator==(const Poset&, const Poset&) = default;

private:
    friend Poset disjoint_union(const Poset&, const Poset&);
    friend Poset ordinal_sum(const Poset&, const Poset&);

    std::size_t index_of(int label) const {
        if (label < min_label() || label > max_label()) {
            throw Error("label " + std::to_string(label) + " is outside the ground set {" + std::to_string(min_label()) +
                        ".." + std::to_string(max_label()) + "}");
        }
        return static_cast<std::size_t>(label) - offset_ - 1;
    }

    int label_of(std::size_t i) const noexcept { return static_cast<int>(offset_ + i + 1); }

    mask upper_set(std::size_t a) const noexcept {
        mask m = 0;
        for (std::size_t c = 0; c < n_; ++c)
            if ((below_[c] >> a) & 1u) m |= mask{1} << c;
        return m;
    }

    void close() {
        // Warshall on the predecessor masks.
        for (std::size_t k = 0; k < n_; ++k)
            for (std::size_t i = 0; i < n_; ++i)
                if ((below_[i] >> k) & 1u) below_[i] |= below_[k];
        for (std::size_t i = 0; i < n_; ++i)
            if ((below_[i] >> i) & 1u) throw Error("relations contain a cycle");
    }

    std::size_t n_ = 0;
    std::size_t offset_ = 0;
    std::vector<mask> below_;
};

// a_i < a_j whenever i < j and a_i < a_j.
inline Poset inversion_poset(const Permutation& p) {
    Poset out(p.size());
    std::vector<std::pair<int, int>> rel;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] < p[j]) rel.emplace_back(p[i], p[j]);
    return Poset::from_relations(p.size(), rel);
}

namespace detail {

// The two ground ranges must be disjoint and together form one contiguous
// range. Returns (offset of union, whether p holds the lower labels).
inline std::pair<std::size_t, bool> merge_ranges(const Poset& p, const Poset& q) {
    if (p.size() == 0) return {q.offset(), true};
    if (q.size() == 0) return {p.offset(), true};
    if (p.offset() + p.size() == q.offset()) return {p.offset(), true};
    if (q.offset() + q.size() == p.offset()) return {q.offset(), false};
    throw Error("ground sets must be disjoint adjacent label ranges (got {" + std::to_string(p.min_label()) + ".." +
                std::to_string(p.max_label()) + "} and {" + std::to_string(q.min_label()) + ".." +
                std::to_string(q.max_label()) + "})");
}

}  // namespace detail

inline Poset disjoint_union(const Poset& p, const Poset& q) {
    const auto [offset, p_low] = detail::merge_ranges(p, q);
    Poset out(p.size() + q.size(), offset);
    const Poset& lo = p_low ? p : q;
    const Poset& hi = p_low ? q : p;
    for (std::size_t i = 0; i < lo.size(); ++i) out.below_[i] = lo.below_[i];
    for (std::size_t i = 0; i < hi.size(); ++i) out.below_[lo.size() + i] = hi.below_[i] << lo.size();
    return out;
}

// Every element of p lies below every element of q.
inline Poset ordinal_sum(const Poset& p, const Poset& q) {
    Poset out = disjoint_union(p, q);
    const auto [offset, p_low] = detail::merge_ranges(p, q);
    const std::size_t p_start = p_low ? 0 : q.size();
    const std::size_t q_start = p_low ? p.size() : 0;
    const Poset::mask p_mask = ((Poset::mask{1} << p.size()) - 1) << p_start;
    for (std::size_t i = 0; i < q.size(); ++i) out.below_[q_start + i] |= p_mask;
    return out;
}

// ---------------------------------------------------------------------------
// Linear extensions

namespace detail {

inline void check_extension_guard(const Poset& p, bool force) {
    if (p.size() > kMaxExtensionPosetSize && !force) {
        throw GuardExceeded("linear-extension enumeration on " + std::to_string(p.size()) + " elements exceeds the " +
                            std::to_string(kMaxExtensionPosetSize) + "-element guard; pass --force to override");
    }
}

}  // namespace detail

// All linear extensions in lexicographic order, written over the standardized
// labels 1..n (label - offset).
inline std::vector<Permutation> linear_extensions(const Poset& p, bool force = false) {
    detail::check_extension_guard(p, force);
    const std::size_t n = p.size();
    std::vector<Permutation> out;
    if (n == 0) return out;
    std::vector<int> word;
    word.reserve(n);
    auto extend = [&](auto&& self, Poset::mask placed) -> void {
        if (word.size() == n) {
            out.emplace_back(word);
            return;
        }
        for (std::size_t x = 0; x < n; ++x) {
            if ((placed >> x) & 1u) continue;
            if ((p.below_mask(x) & ~placed) != 0) continue;
            word.push_back(static_cast<int>(x + 1));
            self(self, placed | (Poset::mask{1} << x));
            word.pop_back();
        }
    };
    extend(extend, 0);
    return out;
}

// Sum of q^{inversions} over the linear extensions, by dynamic programming
// over order ideals: appending x to an ideal I adds one inversion per element
// of I with a larger label.
inline IntPoly le_gf(const Poset& p, bool force = false) {
    detail::check_extension_guard(p, force);
    const std::size_t n = p.size();
    const std::size_t max_deg = max_length(n);
    const std::size_t states = std::size_t{1} << n;
    std::vector<std::vector<std::uint64_t>> f(states);
    f[0].assign(max_deg + 1, 0);
    f[0][0] = 1;
    for (std::size_t ideal = 0; ideal < states; ++ideal) {
        if (f[ideal].empty()) continue;
        for (std::size_t x = 0; x < n; ++x) {
            const auto bit = Poset::mask{1} << x;
            if ((ideal & bit) || (p.below_mask(x) & ~ideal) != 0) continue;
            const auto larger = static_cast<Poset::mask>(ideal) & ~((bit << 1) - 1);
            const auto shift = static_cast<std::size_t>(std::popcount(larger));
            auto& dst = f[ideal | bit];
            if (dst.empty()) dst.assign(max_deg + 1, 0);
            for (std::size_t k = 0; k + shift <= max_deg; ++k) dst[k + shift] += f[ideal][k];
        }
        if (ideal != states - 1) std::vector<std::uint64_t>().swap(f[ideal]);
    }
    return IntPoly::from_counts(f[states - 1]);
}

// Sum over linear extensions of x^{des + 1}, by dynamic programming over
// (ideal, last element placed).
inline IntPoly descent_gf(const Poset& p, bool force = false) {
    detail::check_extension_guard(p, force);
    const std::size_t n = p.size();
    if (n == 0) return IntPoly{1};
    const std::size_t states = std::size_t{1} << n;
    // f[ideal * n + last][d] = extensions of the ideal ending in `last` with d descents.
    std::vector<std::vector<std::uint64_t>> f(states * n);
    for (std::size_t x = 0; x < n; ++x) {
        if (p.below_mask(x) != 0) continue;
        auto& dst = f[(std::size_t{1} << x) * n + x];
        dst.assign(n, 0);
        dst[0] = 1;
    }
    for (std::size_t ideal = 1; ideal < states; ++ideal) {
        for (std::size_t last = 0; last < n; ++last) {
            const auto& src = f[ideal * n + last];
            if (src.empty()) continue;
            for (std::size_t x = 0; x < n; ++x) {
                const auto bit = Poset::mask{1} << x;
                if ((ideal & bit) || (p.below_mask(x) & ~ideal) != 0) continue;
                const std::size_t step = last > x ? 1 : 0;
                auto& dst = f[(ideal | bit) * n + x];
                if (dst.empty()) dst.assign(n, 0);
                for (std::size_t d = 0; d + step < n; ++d) dst[d + step] += src[d];
            }
        }
    }
    std::vector<std::uint64_t> total(n + 1, 0);
    for (std::size_t last = 0; last < n; ++last) {
        const auto& src = f[(states - 1) * n + last];
        for (std::size_t d = 0; d < src.size(); ++d) total[d + 1] += src[d];
    }
    return IntPoly::from_counts(total);
}

// ---------------------------------------------------------------------------
// Order polynomial

namespace detail {

inline void check_order_polynomial_guard(const Poset& p, std::size_t m_max, bool force) {
    if (force) return;
    if (p.size() > kMaxOrderPolynomialSize || m_max > p.size() + 2) {
        throw GuardExceeded("order polynomial evaluation limited to " + std::to_string(kMaxOrderPolynomialSize) +
                            " elements and m <= |P| + 2; pass --force to override");
    }
}

}  // namespace detail

// Omega_P(1..m_max) by checking every map P -> {1..m}.
inline std::vector<BigInt> order_polynomial_bruteforce(const Poset& p, std::size_t m_max) {
    const std::size_t n = p.size();
    std::vector<BigInt> out;
    const auto rel = p.relations();
    for (std::size_t m = 1; m <= m_max; ++m) {
        std::uint64_t count = 0;
        std::vector<std::size_t> f(n, 1);
        while (true) {
            bool ok = true;
            for (auto [a, b] : rel) {
                if (f[static_cast<std::size_t>(a) - p.offset() - 1] > f[static_cast<std::size_t>(b) - p.offset() - 1]) {
                    ok = false;
                    break;
                }
            }
            if (ok) ++count;
            std::size_t k = 0;
            while (k < n && f[k] == m) f[k++] = 1;
            if (k == n) break;
            ++f[k];
        }
        out.emplace_back(count);
    }
    return out;
}

// Omega_P(1..m_max) by counting multichains of order ideals
// {} = I_0 <= I_1 <= ... <= I_m = P.
inline std::vector<BigInt> order_polynomial_ideals(const Poset& p, std::size_t m_max) {
    const std::size_t n = p.size();
    const std::size_t states = std::size_t{1} << n;
    std::vector<std::size_t> ideals;
    for (std::size_t s = 0; s < states; ++s) {
        bool down_closed = true;
        for (std::size_t x = 0; x < n && down_closed; ++x)
            if (((s >> x) & 1u) && (p.below_mask(x) & ~s) != 0) down_closed = false;
        if (down_closed) ideals.push_back(s);
    }
    std::vector<BigInt> chains(states, 0);
    chains[0] = 1;
    std::vector<BigInt> out;
    for (std::size_t m = 1; m <= m_max; ++m) {
        std::vector<BigInt> next(states, 0);
        for (std::size_t top : ideals)
            for (std::size_t sub : ideals)
                if ((sub & ~top) == 0) next[top] += chains[sub];
        chains = std::move(next);
        out.push_back(chains[states - 1]);
    }
    return out;
}

inline std::vector<BigInt> order_polynomial_values(const Poset& p, std::size_t m_max, bool force = false) {
    detail::check_order_polynomial_guard(p, m_max, force);
    return p.size() > 6 ? order_polynomial_ideals(p, m_max) : order_polynomial_bruteforce(p, m_max);
}

// ---------------------------------------------------------------------------
// Export

inline std::string poset_dot(const Poset& p, const std::string& name = "poset") {
    std::ostringstream out;
    out << "graph " << name << " {\n";
    out << "  rankdir=BT;\n";
    out << "  node [shape=plaintext];\n";
    for (int l = p.min_label(); l <= p.max_label(); ++l) out << "  \"" << l << "\";\n";
    for (auto [a, b] : p.covers()) out << "  \"" << a << "\" -- \"" << b << "\";\n";
    out << "}\n";
    return out.str();
}

}  // namespace bruhat
