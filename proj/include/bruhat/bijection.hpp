#pragma once

// The product map [id, p] x [p, w0] -> S_n, (u, v) -> u^{-1} v, its mirror
// (u, v) -> v^{-1} u, an exhaustive bijectivity check, and a recursive
// preimage construction for separable p.

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "bruhat/errors.hpp"
#include "bruhat/permutation.hpp"
#include "bruhat/separable.hpp"
#include "bruhat/weak_order.hpp"

namespace bruhat {

inline constexpr std::size_t kMaxBijectionSize = 7;
inline constexpr std::size_t kMaxFallbackSize = 6;

inline Permutation phi(const Permutation& u, const Permutation& v) { return compose(inverse(u), v); }

inline Permutation phi_prime(const Permutation& u, const Permutation& v) { return compose(inverse(v), u); }

struct PairEntry {
    Permutation u;
    Permutation v;
    Permutation w;
};

struct PairTable {
    Permutation pi;
    std::vector<PairEntry> entries;  // sorted by (w, u, v)
};

enum class PairMap { phi, phi_prime };

inline PairTable pair_table(const Permutation& pi, PairMap map = PairMap::phi, bool force = false) {
    if (pi.size() > kMaxBijectionSize && !force) {
        throw GuardExceeded("pair table for S_" + std::to_string(pi.size()) + " exceeds the n <= " +
                            std::to_string(kMaxBijectionSize) + " guard; pass --force to override");
    }
    const auto below = lower_interval(pi, force).elements();
    const auto above = upper_interval(pi, force).elements();
    PairTable table{pi, {}};
    table.entries.reserve(below.size() * above.size());
    for (const auto& u : below)
        for (const auto& v : above) table.entries.push_back({u, v, map == PairMap::phi ? phi(u, v) : phi_prime(u, v)});
    std::sort(table.entries.begin(), table.entries.end(), [](const PairEntry& a, const PairEntry& b) {
        return std::tie(a.w, a.u, a.v) < std::tie(b.w, b.u, b.v);
    });
    return table;
}

struct Collision {
    Permutation w;
    std::vector<std::pair<Permutation, Permutation>> preimages;
};

struct BijectionReport {
    bool is_bijection = false;
    std::size_t domain_size = 0;
    std::size_t image_size = 0;
    std::vector<Collision> collisions;
};

inline BijectionReport check_bijection(const PairTable& table) {
    BijectionReport report;
    report.domain_size = table.entries.size();
    const auto& e = table.entries;
    for (std::size_t i = 0; i < e.size();) {
        std::size_t j = i;
        while (j < e.size() && e[j].w == e[i].w) ++j;
        ++report.image_size;
        if (j - i > 1) {
            Collision c{e[i].w, {}};
            for (std::size_t k = i; k < j; ++k) c.preimages.emplace_back(e[k].u, e[k].v);
            report.collisions.push_back(std::move(c));
        }
        i = j;
    }
    report.is_bijection = report.collisions.empty() && report.image_size == factorial(table.pi.size());
    return report;
}

inline BijectionReport check_bijection(const Permutation& pi, PairMap map = PairMap::phi, bool force = false) {
    return check_bijection(pair_table(pi, map, force));
}

inline std::string pair_table_csv(const PairTable& table) {
    std::ostringstream out;
    out << "u,v,w\n";
    for (const auto& e : table.entries) out << e.u.to_string() << ',' << e.v.to_string() << ',' << e.w.to_string() << '\n';
    return out.str();
}

namespace detail {

inline Permutation concat_blocks(const Permutation& low, const Permutation& high) {
    std::vector<int> w = low.to_vector();
    const int shift = static_cast<int>(low.size());
    for (auto c : high.word()) w.push_back(c + shift);
    return Permutation(w);
}

}  // namespace detail

// Unverified recursive construction of (u, v) with u <= pi <= v and
// u^{-1} v = w. For a low-high split pi = pi_A pi_B at m, w splits into its
// subwords on the letters {1..m} and {m+1..n}; the sub-solutions are
// concatenated, and the position rearrangement that carries the
// concatenated subwords back to w is applied to v as well. High-low splits
// reduce to the low-high case through the complement, which reverses the
// weak order and so swaps the roles of u and v.
inline std::pair<Permutation, Permutation> construct_preimage(const Permutation& pi, const Permutation& w) {
    if (pi.size() != w.size()) throw SizeMismatch(pi.size(), w.size());
    const std::size_t n = pi.size();
    if (n == 1) return {pi, pi};
    const auto split = block_split(pi);
    if (!split) throw NotSeparable(pi.to_string());

    if (split->kind == BlockKind::high_low) {
        auto [u_c, v_c] = construct_preimage(complement(pi), inverse(w));
        return {complement(v_c), complement(u_c)};
    }

    const std::size_t m = split->m;
    const Permutation pi_a = block_prefix(pi, m);
    const Permutation pi_b = block_suffix(pi, m);
    std::vector<int> low;
    std::vector<int> high;
    for (auto c : w.word()) (static_cast<std::size_t>(c) <= m ? low : high).push_back(c);
    const Permutation w1(low);
    const Permutation w2 = standardize(high);

    const auto [u1, v1] = construct_preimage(pi_a, w1);
    const auto [u2, v2] = construct_preimage(pi_b, w2);
    const Permutation u = detail::concat_blocks(u1, u2);
    const Permutation v_joined = detail::concat_blocks(v1, v2);
    const Permutation w_joined = detail::concat_blocks(w1, w2);
    const Permutation shift = compose(inverse(w_joined), w);
    return {u, compose(v_joined, shift)};
}

// (u, v) in [id, pi] x [pi, w0] with u^{-1} v = w. The constructed pair is
// always checked; if the check fails, small cases fall back to exhaustive
// search and larger ones throw.
inline std::pair<Permutation, Permutation> invert_phi(const Permutation& pi, const Permutation& w) {
    if (!is_separable(pi)) throw NotSeparable(pi.to_string());
    auto valid = [&](const Permutation& u, const Permutation& v) {
        return leq_weak(u, pi) && leq_weak(pi, v) && phi(u, v) == w;
    };
    auto candidate = construct_preimage(pi, w);
    if (valid(candidate.first, candidate.second)) return candidate;
    if (pi.size() <= kMaxFallbackSize) {
        const auto below = lower_interval(pi).elements();
        const auto above = upper_interval(pi).elements();
        for (const auto& u : below)
            for (const auto& v : above)
                if (phi(u, v) == w) return {u, v};
    }
    throw InternalInversionFailure("no verified preimage of " + w.to_string() + " for " + pi.to_string());
}

}  // namespace bruhat
