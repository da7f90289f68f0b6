#pragma once

// Exhaustive property suites over S_n. Each suite checks one identity of the
// theory against brute force or against an independent formula and reports
// per-property pass/fail with counterexample words.

#include <functional>
#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "bruhat/bijection.hpp"
#include "bruhat/permutation.hpp"
#include "bruhat/poset.hpp"
#include "bruhat/qpoly.hpp"
#include "bruhat/separable.hpp"
#include "bruhat/survey.hpp"
#include "bruhat/weak_order.hpp"

namespace bruhat {

struct PropertyResult {
    PropertyResult() = default;
    explicit PropertyResult(std::string n) : name(std::move(n)) {}

    std::string name;
    std::uint64_t checked = 0;
    std::uint64_t failures = 0;
    std::vector<std::string> counterexamples;  // first few only

    bool passed() const { return counterexamples.empty() && failures == 0; }

    void record(bool ok, const std::string& witness) {
        ++checked;
        if (ok) return;
        ++failures;
        if (counterexamples.size() < 5) counterexamples.push_back(witness);
    }
};

struct SuiteResult {
    std::string suite;
    std::size_t n = 0;
    std::vector<PropertyResult> properties;

    bool passed() const {
        for (const auto& p : properties)
            if (!p.passed()) return false;
        return true;
    }
};

namespace detail {

inline void check_suite_guard(const std::string& suite, std::size_t n, std::size_t max_n, bool force) {
    if (n == 0) throw InvalidPermutation("suite size must be at least 1");
    if (n > max_n && !force) {
        throw GuardExceeded("suite " + suite + " is limited to n <= " + std::to_string(max_n) +
                            "; pass --force to override");
    }
}

// Every poset on {1..k}, as closed strict relations.
inline std::vector<Poset> all_posets(std::size_t k) {
    std::vector<std::pair<int, int>> pairs;
    for (int a = 1; a <= static_cast<int>(k); ++a)
        for (int b = 1; b <= static_cast<int>(k); ++b)
            if (a != b) pairs.emplace_back(a, b);
    std::vector<Poset> out;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << pairs.size()); ++s) {
        std::vector<std::pair<int, int>> rel;
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if ((s >> i) & 1u) rel.push_back(pairs[i]);
        try {
            Poset p = Poset::from_relations(k, rel);
            if (p.relations() == rel) out.push_back(std::move(p));  // keep only already-closed sets
        } catch (const Error&) {
        }
    }
    return out;
}

}  // namespace detail

using detail::all_posets;

inline SuiteResult verify_main_theorem(std::size_t n, bool force = false) {
    detail::check_suite_guard("main-theorem", n, 9, force);
    SuiteResult res{"main-theorem", n, {}};
    PropertyResult product{"F(below) * F(above) = [n]! for separable p (formulas)"};
    PropertyResult brute{"formulas agree with interval enumeration"};
    PropertyResult count{"number of separable permutations is the Schroeder number r_{n-1}"};
    PropertyResult failing{"F(below) * F(above) != [n]! for non-separable p (interval enumeration)"};
    const IntPoly qfact = q_factorial(n);
    const bool with_brute = n <= 6 || force;
    std::uint64_t separable = 0;
    for_each_permutation(n, [&](const Permutation& p) {
        if (!is_separable(p)) {
            if (with_brute) {
                const IntPoly below = rank_gf(lower_interval(p));
                const IntPoly above = rank_gf(upper_interval(p));
                failing.record(below * above != qfact, p.to_string());
            }
            return;
        }
        ++separable;
        const IntPoly below = gf_below_recursive(p);
        const IntPoly above = gf_above_recursive(p);
        product.record(below * above == qfact, p.to_string());
        if (with_brute) {
            brute.record(below == rank_gf(lower_interval(p)) && above == rank_gf(upper_interval(p)), p.to_string());
        }
    });
    count.record(BigInt(separable) == schroder(n - 1), std::to_string(separable));
    res.properties = {product, count};
    if (with_brute) {
        res.properties.push_back(brute);
        res.properties.push_back(failing);
    }
    return res;
}

inline SuiteResult verify_ff(std::size_t n, bool force = false) {
    detail::check_suite_guard("ff", n, 7, force);
    PropertyResult prop{"F(L(P_p)) = F([id, p]) for every p"};
    for_each_permutation(n, [&](const Permutation& p) {
        prop.record(le_gf(inversion_poset(p)) == rank_gf(lower_interval(p)), p.to_string());
    });
    return {"ff", n, {prop}};
}

inline SuiteResult verify_duality(std::size_t n, bool force = false) {
    detail::check_suite_guard("duality", n, 7, force);
    PropertyResult prop{"reverse(F([p, w0])) = F([id, p^c]) for every p"};
    PropertyResult len{"l(p) + l(p^c) = n(n-1)/2"};
    for_each_permutation(n, [&](const Permutation& p) {
        prop.record(reverse(rank_gf(upper_interval(p))) == rank_gf(lower_interval(complement(p))), p.to_string());
        len.record(length(p) + length(complement(p)) == max_length(n), p.to_string());
    });
    return {"duality", n, {prop, len}};
}

inline SuiteResult verify_chains_words(std::size_t n, bool force = false) {
    detail::check_suite_guard("chains-words", n, 6, force);
    PropertyResult count{"|R(p)| = number of saturated chains from id to p"};
    PropertyResult words{"each saturated chain spells a reduced word of p"};
    const Permutation id = Permutation::identity(n);
    for_each_permutation(n, [&](const Permutation& p) {
        const auto r = reduced_words(p);
        count.record(BigInt(r.size()) == saturated_chains(id, p), p.to_string());
        if (n <= 5) {
            std::vector<std::vector<int>> spelled;
            for (const auto& chain : list_saturated_chains(id, p)) {
                std::vector<int> w;
                for (std::size_t k = 1; k < chain.size(); ++k) {
                    for (std::size_t i = 0; i + 1 < n; ++i)
                        if (chain[k - 1].times_simple(i + 1) == chain[k]) w.push_back(static_cast<int>(i + 1));
                }
                spelled.push_back(std::move(w));
            }
            std::sort(spelled.begin(), spelled.end());
            words.record(spelled == r, p.to_string());
        }
    });
    SuiteResult res{"chains-words", n, {count}};
    if (n <= 5) res.properties.push_back(words);
    return res;
}

// Here n bounds the size of each factor poset.
inline SuiteResult verify_op_lemma(std::size_t n, bool force = false) {
    detail::check_suite_guard("op-lemma", n, 4, force);
    PropertyResult sum{"F(L(P (+) Q)) = F(L(P)) F(L(Q))"};
    PropertyResult uni{"F(L(P + Q)) = F(L(P)) F(L(Q)) [m+n choose m]"};
    PropertyResult concat{"P_{p_A p_B} splits as a sum or union exactly for block splits"};
    for (std::size_t a = 1; a <= n; ++a) {
        for (std::size_t b = 1; b <= n; ++b) {
            const auto ps = all_posets(a);
            const auto qs = all_posets(b);
            for (const auto& p : ps) {
                const IntPoly fp = le_gf(p);
                for (const auto& q0 : qs) {
                    const Poset q = q0.relabeled(a);
                    const IntPoly fq = le_gf(q);
                    const std::string tag = std::to_string(a) + "+" + std::to_string(b);
                    sum.record(le_gf(ordinal_sum(p, q)) == fp * fq, tag);
                    uni.record(le_gf(disjoint_union(p, q)) == fp * fq * q_binomial(a + b, a), tag);
                }
            }
        }
    }
    // Concatenation check over S_k for k up to n + 1.
    for (std::size_t k = 2; k <= n + 1; ++k) {
        for_each_permutation(k, [&](const Permutation& pi) {
            for (std::size_t m = 1; m < k; ++m) {
                const Permutation pa = block_prefix(pi, m);
                const Permutation pb = block_suffix(pi, m);
                const Poset whole = inversion_poset(pi);
                bool prefix_low = true;
                bool prefix_high = true;
                for (std::size_t i = 0; i < m; ++i) {
                    prefix_low &= static_cast<std::size_t>(pi[i]) <= m;
                    prefix_high &= static_cast<std::size_t>(pi[i]) > k - m;
                }
                if (prefix_low) {
                    const Poset expect = ordinal_sum(inversion_poset(pa), inversion_poset(pb).relabeled(m));
                    concat.record(whole == expect, pi.to_string());
                } else if (prefix_high) {
                    const Poset expect =
                        disjoint_union(inversion_poset(pa).relabeled(k - m), inversion_poset(pb));
                    concat.record(whole == expect, pi.to_string());
                }
            }
        });
    }
    return {"op-lemma", n, {sum, uni, concat}};
}

inline SuiteResult verify_des(std::size_t n, bool force = false) {
    detail::check_suite_guard("des", n, 6, force);
    PropertyResult thm{"sum_m Omega(m) x^m * (1-x)^{n+1} = sum_{L(P)} x^{des+1} through x^{n+2}"};
    PropertyResult covers{"des(p) = number of elements covered by p"};
    PropertyResult paths{"order polynomial: map enumeration = ideal multichains"};
    const std::size_t m_max = n + 2;
    // (1 - x)^{n+1}
    IntPoly one_minus_x_pow{1};
    for (std::size_t i = 0; i <= n; ++i) one_minus_x_pow *= IntPoly{1, -1};
    for_each_permutation(n, [&](const Permutation& p) {
        const Poset poset = inversion_poset(p);
        const auto omega = order_polynomial_values(poset, m_max, force);
        std::vector<BigInt> series(m_max + 1, 0);
        for (std::size_t m = 1; m <= m_max; ++m) series[m] = omega[m - 1];
        const IntPoly lhs = IntPoly(series) * one_minus_x_pow;
        const IntPoly rhs = descent_gf(poset);
        bool ok = true;
        for (std::size_t k = 0; k <= m_max; ++k) ok &= lhs[k] == rhs[k];
        thm.record(ok, p.to_string());
        covers.record(descents(p) == lower_covers(p).size(), p.to_string());
        paths.record(order_polynomial_bruteforce(poset, m_max) == order_polynomial_ideals(poset, m_max), p.to_string());
    });
    return {"des", n, {thm, covers, paths}};
}

inline SuiteResult verify_formula(std::size_t n, bool force = false) {
    detail::check_suite_guard("formula", n, 8, force);
    PropertyResult closed{"closed form = recursion (below and above)"};
    PropertyResult tree_free{"closed form is the same on the largest-split tree"};
    PropertyResult complement_route{"[n]! / F(below) = F(above)"};
    PropertyResult brute{"closed form = interval enumeration"};
    const bool with_brute = n <= 6 || force;
    for_each_permutation(n, [&](const Permutation& p) {
        if (!is_separable(p)) return;
        const auto t = separating_tree(p);
        const auto t_alt = separating_tree(p, SplitRule::largest);
        const IntPoly below = gf_below_closed(t);
        const IntPoly above = gf_above_closed(t);
        closed.record(below == gf_below_recursive(p) && above == gf_above_recursive(p), p.to_string());
        tree_free.record(gf_below_closed(t_alt) == below && gf_above_closed(t_alt) == above, p.to_string());
        complement_route.record(gf_above_from_complement(p) == above, p.to_string());
        if (with_brute) {
            brute.record(below == rank_gf(lower_interval(p)) && above == rank_gf(upper_interval(p)), p.to_string());
        }
    });
    SuiteResult res{"formula", n, {closed, tree_free, complement_route}};
    if (with_brute) res.properties.push_back(brute);
    return res;
}

inline SuiteResult verify_explicit_231(std::size_t n, bool force = false) {
    detail::check_suite_guard("explicit-231", n, 8, force);
    PropertyResult prop{"prod [c_i] = F([id, p]) for 231-avoiding p (interval enumeration)"};
    PropertyResult count{"number of 231-avoiding permutations is Catalan(n)"};
    std::uint64_t avoiders = 0;
    for_each_permutation(n, [&](const Permutation& p) {
        if (!avoids_231(p)) return;
        ++avoiders;
        prop.record(gf_below_231(p) == rank_gf(lower_interval(p)), p.to_string());
    });
    std::vector<std::uint64_t> catalan{1};
    for (std::size_t k = 1; k <= n; ++k) {
        std::uint64_t c = 0;
        for (std::size_t i = 0; i < k; ++i) c += catalan[i] * catalan[k - 1 - i];
        catalan.push_back(c);
    }
    count.record(avoiders == catalan[n], std::to_string(avoiders));
    return {"explicit-231", n, {prop, count}};
}

inline SuiteResult verify_bijection(std::size_t n, bool force = false) {
    detail::check_suite_guard("bijection", n, 6, force);
    PropertyResult bij{"(u, v) -> u^{-1} v is a bijection onto S_n for separable p"};
    PropertyResult mirror{"(u, v) -> v^{-1} u is a bijection onto S_n for separable p"};
    PropertyResult nonsep{"the map is not a bijection for non-separable p"};
    PropertyResult invert{"constructed preimages are valid for every w"};
    const auto sn = all_permutations(n);
    for (const auto& p : sn) {
        const bool sep = is_separable(p);
        const auto report = check_bijection(p, PairMap::phi, force);
        if (!sep) {
            nonsep.record(!report.is_bijection, p.to_string());
            continue;
        }
        bij.record(report.is_bijection, p.to_string());
        mirror.record(check_bijection(p, PairMap::phi_prime, force).is_bijection, p.to_string());
        if (n <= 5 || force) {
            for (const auto& w : sn) {
                const auto [u, v] = construct_preimage(p, w);
                invert.record(leq_weak(u, p) && leq_weak(p, v) && phi(u, v) == w, p.to_string() + "/" + w.to_string());
            }
        }
    }
    SuiteResult res{"bijection", n, {bij, mirror}};
    if (n >= 4) res.properties.push_back(nonsep);
    if (n <= 5 || force) res.properties.push_back(invert);
    return res;
}

inline SuiteResult verify_sym_unim(std::size_t n, bool force = false) {
    detail::check_suite_guard("sym-unim", n, 9, force);
    PropertyResult prop{"F(below) and F(above) are symmetric and unimodal for separable p"};
    for_each_permutation(n, [&](const Permutation& p) {
        if (!is_separable(p)) return;
        const IntPoly below = gf_below_recursive(p);
        const IntPoly above = gf_above_recursive(p);
        prop.record(is_symmetric(below) && is_unimodal(below) && is_symmetric(above) && is_unimodal(above),
                    p.to_string());
    });
    return {"sym-unim", n, {prop}};
}

inline SuiteResult verify_stanley(std::size_t n, bool force = false) {
    detail::check_suite_guard("stanley", n, 8, force);
    PropertyResult prop{"rank-symmetric [id, p] has a cyclotomic-product generating function"};
    PropertyResult divides_sep{"separable p: F([id, p]) divides [n]!"};
    SurveyOptions opt;
    opt.n = n;
    opt.force = force;
    opt.on_record = [&](const SurveyRecord& r) {
        if (r.rank_symmetric) prop.record(r.cyclotomic_product, r.word.to_string());
        if (r.is_separable) divides_sep.record(r.divides_qfact, r.word.to_string());
    };
    scan(opt);
    return {"stanley", n, {prop, divides_sep}};
}

inline const std::map<std::string, std::function<SuiteResult(std::size_t, bool)>>& verification_suites() {
    static const std::map<std::string, std::function<SuiteResult(std::size_t, bool)>> suites{
        {"main-theorem", verify_main_theorem}, {"ff", verify_ff},
        {"duality", verify_duality},           {"chains-words", verify_chains_words},
        {"op-lemma", verify_op_lemma},         {"des", verify_des},
        {"formula", verify_formula},           {"explicit-231", verify_explicit_231},
        {"bijection", verify_bijection},       {"sym-unim", verify_sym_unim},
        {"stanley", verify_stanley},
    };
    return suites;
}

}  // namespace bruhat
