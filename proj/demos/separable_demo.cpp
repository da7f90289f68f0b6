// Walks through the q-factorial factorization for a few separable
// permutations and shows where it breaks for a non-separable one.

#include <iostream>

#include "bruhat/bijection.hpp"
#include "bruhat/separable.hpp"
#include "bruhat/weak_order.hpp"

int main() {
    using namespace bruhat;
    for (const char* word : {"4132", "4231", "142365", "2413"}) {
        const Permutation p = Permutation::parse(word);
        const IntPoly below = rank_gf(lower_interval(p));
        const IntPoly above = rank_gf(upper_interval(p));
        std::cout << word << (is_separable(p) ? "  separable\n" : "  not separable\n");
        std::cout << "  [id, p]: " << below.to_string() << '\n';
        std::cout << "  [p, w0]: " << above.to_string() << '\n';
        std::cout << "  product is [" << p.size() << "]!: " << (below * above == q_factorial(p.size()) ? "yes" : "no")
                  << '\n';
        if (is_separable(p)) {
            const auto t = separating_tree(p);
            std::cout << "  closed form agrees: "
                      << (gf_below_closed(t) == below && gf_above_closed(t) == above ? "yes" : "no") << '\n';
        }
        if (p.size() <= 6) {
            std::cout << "  (u, v) -> u^-1 v is a bijection: " << (check_bijection(p).is_bijection ? "yes" : "no")
                      << '\n';
        }
    }
}
