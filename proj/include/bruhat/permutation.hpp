#pragma once

// Permutations of {1..n} in one-line notation, with the right weak order
// cover structure. Products are read right to left: (s*t)(i) = s(t(i)), so
// multiplying on the right by the adjacent transposition s_i swaps the word
// entries at positions i and i+1.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bruhat/errors.hpp"

namespace bruhat {

inline constexpr std::size_t kMaxPermutationSize = 16;

class Permutation {
public:
    using letter = std::uint8_t;

    // The identity of S_1.
    Permutation() : n_(1) { word_[0] = 1; }

    template <typename Int>
    explicit Permutation(std::span<const Int> word) {
        assign(word.begin(), word.end());
    }
    explicit Permutation(const std::vector<int>& word) { assign(word.begin(), word.end()); }
    Permutation(std::initializer_list<int> word) { assign(word.begin(), word.end()); }

    static Permutation identity(std::size_t n) {
        check_size(n);
        Permutation p(Unchecked{}, n);
        for (std::size_t i = 0; i < std::min(n, kMaxPermutationSize); ++i) p.word_[i] = static_cast<letter>(i + 1);
        return p;
    }

    static Permutation longest(std::size_t n) {
        check_size(n);
        Permutation p(Unchecked{}, n);
        for (std::size_t i = 0; i < std::min(n, kMaxPermutationSize); ++i) p.word_[i] = static_cast<letter>(n - i);
        return p;
    }

    // s_i = (i, i+1) in S_n, 1 <= i < n.
    static Permutation simple_transposition(std::size_t n, std::size_t i) {
        if (i < 1 || i >= n) {
            throw InvalidPermutation("s_" + std::to_string(i) + " is not a generator of S_" +
                                     std::to_string(n));
        }
        Permutation p = identity(n);
        std::swap(p.word_[i - 1], p.word_[i]);
        return p;
    }

    // Accepts compact digits ("4132") or a comma-separated list
    // ("10,3,1,2,..."). Surrounding whitespace is ignored.
    static Permutation parse(std::string_view text);

    std::size_t size() const noexcept { return n_; }

    // 0-based position -> letter in 1..n.
    int operator[](std::size_t pos) const noexcept { return word_[pos]; }

    std::span<const letter> word() const noexcept { return {word_.data(), n_}; }

    std::vector<int> to_vector() const { return {word_.begin(), word_.begin() + n_}; }

    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < n_; ++i) {
            if (n_ > 9) {
                if (i) out += ',';
                out += std::to_string(word_[i]);
            } else {
                out += static_cast<char>('0' + word_[i]);
            }
        }
        return out;
    }

    // Right multiplication by s_i (1-based i): swaps positions i and i+1.
    Permutation times_simple(std::size_t i) const {
        Permutation p = *this;
        std::swap(p.word_[i - 1], p.word_[i]);
        return p;
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    struct Unchecked {};
    Permutation(Unchecked, std::size_t n) : n_(static_cast<letter>(n)) {}

    static void check_size(std::size_t n) {
        if (n == 0) throw InvalidPermutation("permutation size must be at least 1");
        if (n > kMaxPermutationSize) {
            throw InvalidPermutation("permutation size " + std::to_string(n) +
                                     " exceeds the supported maximum of " +
                                     std::to_string(kMaxPermutationSize));
        }
    }

    template <typename It>
    void assign(It first, It last) {
        const auto n = static_cast<std::size_t>(std::distance(first, last));
        check_size(n);
        n_ = static_cast<letter>(n);
        std::uint32_t seen = 0;
        std::size_t i = 0;
        for (It it = first; it != last; ++it, ++i) {
            const auto v = static_cast<long long>(*it);
            if (v < 1 || v > static_cast<long long>(n) || (seen >> v & 1u)) {
                throw InvalidPermutation("not a rearrangement of 1.." + std::to_string(n));
            }
            seen |= 1u << v;
            word_[i] = static_cast<letter>(v);
        }
    }

    // n_ precedes word_ so the defaulted ordering is by size, then lexicographic.
    letter n_ = 1;
    std::array<letter, kMaxPermutationSize> word_{};
};

inline Permutation Permutation::parse(std::string_view text) {
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
    while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
    while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
    if (text.empty()) throw InvalidPermutation("empty permutation text");

    std::vector<int> word;
    if (text.find(',') != std::string_view::npos) {
        std::size_t start = 0;
        while (start <= text.size()) {
            const std::size_t comma = std::min(text.find(',', start), text.size());
            std::string_view field = text.substr(start, comma - start);
            while (!field.empty() && is_space(field.front())) field.remove_prefix(1);
            while (!field.empty() && is_space(field.back())) field.remove_suffix(1);
            if (field.empty() || field.size() > 3 ||
                !std::all_of(field.begin(), field.end(), [](char c) { return c >= '0' && c <= '9'; })) {
                throw InvalidPermutation("malformed permutation entry in '" + std::string(text) + "'");
            }
            word.push_back(std::stoi(std::string(field)));
            start = comma + 1;
        }
    } else {
        for (char c : text) {
            if (c < '1' || c > '9') {
                throw InvalidPermutation("malformed permutation '" + std::string(text) + "'");
            }
            word.push_back(c - '0');
        }
    }
    return Permutation(word);
}

// ---------------------------------------------------------------------------
// Arithmetic

inline std::size_t length(const Permutation& p) noexcept {
    std::size_t inv = 0;
    const auto n = p.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (p[i] > p[j]) ++inv;
    return inv;
}

inline std::size_t max_length(std::size_t n) noexcept { return n * (n - 1) / 2; }

inline Permutation longest_element(std::size_t n) { return Permutation::longest(n); }

// (s*t)(i) = s(t(i)).
inline Permutation compose(const Permutation& s, const Permutation& t) {
    if (s.size() != t.size()) throw SizeMismatch(s.size(), t.size());
    std::vector<int> w(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) w[i] = s[static_cast<std::size_t>(t[i]) - 1];
    return Permutation(w);
}

inline Permutation operator*(const Permutation& s, const Permutation& t) { return compose(s, t); }

inline Permutation inverse(const Permutation& p) {
    std::vector<int> w(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) w[static_cast<std::size_t>(p[i]) - 1] = static_cast<int>(i + 1);
    return Permutation(w);
}

inline Permutation complement(const Permutation& p) {
    const int n = static_cast<int>(p.size());
    std::vector<int> w(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) w[i] = n + 1 - p[i];
    return Permutation(w);
}

// Descent positions i (1-based, 1 <= i < n) with a_i > a_{i+1}.
inline std::vector<std::size_t> descent_set(const Permutation& p) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
        if (p[i] > p[i + 1]) out.push_back(i + 1);
    return out;
}

inline std::size_t descents(const Permutation& p) noexcept {
    std::size_t d = 0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
        if (p[i] > p[i + 1]) ++d;
    return d;
}

// The permutation order-isomorphic to an arbitrary sequence of distinct values.
template <typename Int>
Permutation standardize(std::span<const Int> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<int> w(values.size());
    for (std::size_t r = 0; r < order.size(); ++r) w[order[r]] = static_cast<int>(r + 1);
    return Permutation(w);
}

inline Permutation standardize(const std::vector<int>& values) {
    return standardize(std::span<const int>(values));
}

// Naive subsequence search; patterns used here have at most four letters.
inline bool contains_pattern(const Permutation& p, const Permutation& pattern) {
    const std::size_t n = p.size();
    const std::size_t k = pattern.size();
    if (k > n) return false;
    std::array<std::size_t, kMaxPermutationSize> pos{};

    // pos[0..depth) are chosen positions; extend while every chosen pair
    // is ordered like the corresponding pattern pair.
    std::function<bool(std::size_t, std::size_t)> extend = [&](std::size_t depth, std::size_t from) {
        if (depth == k) return true;
        for (std::size_t i = from; i + (k - depth) <= n; ++i) {
            bool ok = true;
            for (std::size_t d = 0; d < depth && ok; ++d) {
                ok = (p[pos[d]] < p[i]) == (pattern[d] < pattern[depth]);
            }
            if (!ok) continue;
            pos[depth] = i;
            if (extend(depth + 1, i + 1)) return true;
        }
        return false;
    };
    return extend(0, 0);
}

inline bool avoids(const Permutation& p, const Permutation& pattern) { return !contains_pattern(p, pattern); }

// ---------------------------------------------------------------------------
// Weak order

inline std::vector<Permutation> upper_covers(const Permutation& p) {
    std::vector<Permutation> out;
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
        if (p[i] < p[i + 1]) out.push_back(p.times_simple(i + 1));
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<Permutation> lower_covers(const Permutation& p) {
    std::vector<Permutation> out;
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
        if (p[i] > p[i + 1]) out.push_back(p.times_simple(i + 1));
    std::sort(out.begin(), out.end());
    return out;
}

// u <= v iff l(u) + l(u^-1 v) = l(v).
inline bool leq_weak(const Permutation& u, const Permutation& v) {
    if (u.size() != v.size()) throw SizeMismatch(u.size(), v.size());
    const std::size_t lu = length(u);
    const std::size_t lv = length(v);
    if (lu > lv) return false;
    return lu + length(compose(inverse(u), v)) == lv;
}

// ---------------------------------------------------------------------------
// Enumeration of S_n in lexicographic order

inline std::uint64_t factorial(std::size_t n) noexcept {
    std::uint64_t f = 1;
    for (std::size_t i = 2; i <= n; ++i) f *= i;
    return f;
}

inline std::uint64_t lex_rank(const Permutation& p) noexcept {
    std::uint64_t rank = 0;
    const std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t smaller_after = 0;
        for (std::size_t j = i + 1; j < n; ++j)
            if (p[j] < p[i]) ++smaller_after;
        rank += smaller_after * factorial(n - 1 - i);
    }
    return rank;
}

inline Permutation lex_unrank(std::size_t n, std::uint64_t rank) {
    if (n == 0 || n > kMaxPermutationSize) throw InvalidPermutation("unsupported permutation size");
    if (rank >= factorial(n)) throw InvalidPermutation("rank out of range");
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 1);
    std::vector<int> w;
    w.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t f = factorial(n - 1 - i);
        const auto idx = static_cast<std::size_t>(rank / f);
        rank %= f;
        w.push_back(pool[idx]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
    }
    return Permutation(w);
}

// Calls fn(p) for every p in S_n in lexicographic order.
template <typename Fn>
void for_each_permutation(std::size_t n, Fn&& fn) {
    std::vector<int> w(n);
    std::iota(w.begin(), w.end(), 1);
    do {
        fn(Permutation(w));
    } while (std::next_permutation(w.begin(), w.end()));
}

inline std::vector<Permutation> all_permutations(std::size_t n) {
    std::vector<Permutation> out;
    out.reserve(factorial(n));
    for_each_permutation(n, [&](const Permutation& p) { out.push_back(p); });
    return out;
}

struct PermutationHash {
    std::size_t operator()(const Permutation& p) const noexcept {
        std::uint64_t h = 1469598103934665603ull ^ p.size();
        for (auto c : p.word()) {
            h ^= c;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace bruhat

template <>
struct std::hash<bruhat::Permutation> {
    std::size_t operator()(const bruhat::Permutation& p) const noexcept { return bruhat::PermutationHash{}(p); }
};
