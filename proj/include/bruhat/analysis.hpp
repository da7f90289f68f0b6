#pragma once

// One-stop summary of a single permutation.

#include <string>
#include <vector>

#include "json.hpp"

#include "bruhat/permutation.hpp"
#include "bruhat/poset.hpp"
#include "bruhat/qpoly.hpp"
#include "bruhat/separable.hpp"

namespace bruhat {

struct Analysis {
    Permutation word;
    std::size_t length = 0;
    std::vector<std::size_t> descents;
    bool separable = false;
    IntPoly gf_below;
    IntPoly gf_above;
    bool product_is_qfactorial = false;
    bool rank_symmetric = false;
    bool unimodal = false;
    bool cyclotomic_product = false;
};

// Separable input uses the tree recursions. Otherwise [id, p] comes from the
// linear extensions of the inversion poset, and [p, w0] from those of the
// complement's inversion poset (its interval [id, p^c] is [p, w0] reversed).
inline Analysis analyze(const Permutation& p) {
    Analysis a;
    a.word = p;
    a.length = length(p);
    a.descents = descent_set(p);
    a.separable = is_separable(p);
    if (a.separable) {
        a.gf_below = gf_below_recursive(p);
        a.gf_above = gf_above_recursive(p);
    } else {
        a.gf_below = le_gf(inversion_poset(p));
        a.gf_above = reverse(le_gf(inversion_poset(complement(p))));
    }
    a.product_is_qfactorial = a.gf_below * a.gf_above == q_factorial(p.size());
    a.rank_symmetric = is_symmetric(a.gf_below);
    a.unimodal = is_unimodal(a.gf_below);
    a.cyclotomic_product = is_cyclotomic_product(a.gf_below);
    return a;
}

inline nlohmann::json to_json(const Analysis& a) {
    return {{"word", a.word.to_string()},
            {"length", a.length},
            {"descents", a.descents},
            {"separable", a.separable},
            {"gf_below", a.gf_below.to_string()},
            {"gf_above", a.gf_above.to_string()},
            {"product_is_qfactorial", a.product_is_qfactorial},
            {"rank_symmetric", a.rank_symmetric},
            {"unimodal", a.unimodal},
            {"cyclotomic_product", a.cyclotomic_product}};
}

}  // namespace bruhat
