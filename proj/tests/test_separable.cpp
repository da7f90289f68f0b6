#include <gtest/gtest.h>

#include "bruhat/separable.hpp"
#include "bruhat/weak_order.hpp"

using namespace bruhat;

namespace {

Permutation P(const char* s) { return Permutation::parse(s); }

// Oracle: a sequence of distinct values is separable iff it has length 1 or
// some proper prefix holds exactly the smallest or exactly the largest
// values and both parts are separable.
bool decomposable(const std::vector<int>& w) {
    if (w.size() <= 1) return true;
    std::vector<int> sorted = w;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t m = 1; m < w.size(); ++m) {
        std::vector<int> pre(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(m));
        std::sort(pre.begin(), pre.end());
        const bool low = std::equal(pre.begin(), pre.end(), sorted.begin());
        const bool high = std::equal(pre.begin(), pre.end(), sorted.end() - static_cast<std::ptrdiff_t>(m));
        if ((low || high) && decomposable({w.begin(), w.begin() + static_cast<std::ptrdiff_t>(m)}) &&
            decomposable({w.begin() + static_cast<std::ptrdiff_t>(m), w.end()}))
            return true;
    }
    return false;
}

// Large Schroeder numbers from r_n = sum_k C(n+k, 2k) Cat(k).
std::uint64_t schroeder_by_sum(std::uint64_t n) {
    auto binom = [](std::uint64_t a, std::uint64_t b) {
        std::uint64_t r = 1;
        for (std::uint64_t i = 1; i <= b; ++i) r = r * (a - b + i) / i;
        return r;
    };
    std::uint64_t total = 0;
    for (std::uint64_t k = 0; k <= n; ++k) total += binom(n + k, 2 * k) * binom(2 * k, k) / (k + 1);
    return total;
}

}  // namespace

TEST(Separable, PatternCriterionMatchesDecomposition) {
    for (std::size_t n = 1; n <= 7; ++n) {
        std::uint64_t count = 0;
        for_each_permutation(n, [&](const Permutation& p) {
            const bool sep = is_separable(p);
            ASSERT_EQ(sep, decomposable(p.to_vector())) << p.to_string();
            count += sep;
        });
        EXPECT_EQ(count, schroeder_by_sum(n - 1)) << n;
    }
    EXPECT_FALSE(is_separable(P("2413")));
    EXPECT_FALSE(is_separable(P("3142")));
    EXPECT_TRUE(is_separable(P("4132")));
}

TEST(Separable, SchroederValues) {
    const std::vector<std::uint64_t> expected{1, 2, 6, 22, 90, 394, 1806, 8558};
    for (std::size_t k = 0; k < expected.size(); ++k) EXPECT_EQ(schroeder_by_sum(k), expected[k]);
}

TEST(BlockSplit, SmallestAndLargest) {
    EXPECT_EQ(block_split(P("4132")), (BlockSplit{1, BlockKind::high_low}));
    EXPECT_EQ(block_split(P("12")), (BlockSplit{1, BlockKind::low_high}));
    EXPECT_EQ(block_split(P("123"), SplitRule::largest), (BlockSplit{2, BlockKind::low_high}));
    EXPECT_FALSE(block_split(P("2413")).has_value());
    EXPECT_THROW(block_split(P("1")), Error);
    EXPECT_EQ(block_prefix(P("34125"), 2), P("12"));
    EXPECT_EQ(block_suffix(P("34125"), 2), P("123"));
}

TEST(SeparatingTree, Example4231) {
    const SeparatingTree t = separating_tree(P("4231"));
    EXPECT_EQ(t.count(NodeSign::negative), 2u);
    EXPECT_EQ(t.count(NodeSign::positive), 1u);
    EXPECT_EQ(t.root().sign, NodeSign::negative);
    EXPECT_EQ(t.leaves(), (std::vector<int>{4, 2, 3, 1}));
    EXPECT_EQ(t.sign_run_heads(NodeSign::negative).size(), 0u);
    EXPECT_EQ(t.sign_run_heads(NodeSign::positive).size(), 1u);
    EXPECT_EQ(gf_below_closed(t), exact_div(q_factorial(4), q_factorial(2)));
    EXPECT_EQ(gf_above_closed(t), q_factorial(2));
    const std::string dot = tree_dot(t);
    std::size_t neg = 0, pos = 0;
    for (std::size_t at = 0; (at = dot.find("Negative", at)) != std::string::npos; ++at) ++neg;
    for (std::size_t at = 0; (at = dot.find("Positive", at)) != std::string::npos; ++at) ++pos;
    EXPECT_EQ(neg, 2u);
    EXPECT_EQ(pos, 1u);
}

TEST(SeparatingTree, LeavesSpellTheWordAndRangesNest) {
    for_each_permutation(6, [&](const Permutation& p) {
        if (!is_separable(p)) {
            EXPECT_THROW(separating_tree(p), NotSeparable);
            return;
        }
        for (SplitRule rule : {SplitRule::smallest, SplitRule::largest}) {
            const auto t = separating_tree(p, rule);
            EXPECT_EQ(t.leaves(), p.to_vector());
            EXPECT_EQ(t.count(NodeSign::leaf), p.size());
            for (const auto& nd : t.nodes()) {
                EXPECT_EQ(static_cast<std::size_t>(nd.hi - nd.lo + 1), nd.leaf_count);
                if (nd.is_leaf()) continue;
                const auto& l = t.node(nd.left);
                const auto& r = t.node(nd.right);
                if (nd.sign == NodeSign::positive) EXPECT_LT(l.hi, r.lo);
                else EXPECT_GT(l.lo, r.hi);
            }
        }
    });
    EXPECT_EQ(separating_tree(P("1")).root().value, 1);
}

TEST(GeneratingFunctions, WorkedExample4132) {
    EXPECT_EQ(gf_below_recursive(P("4132")), (IntPoly{1, 2, 2, 2, 1}));
    EXPECT_EQ(gf_above_recursive(P("4132")), (IntPoly{1, 1, 1}));
    EXPECT_EQ(gf_below_recursive(P("4132")) * gf_above_recursive(P("4132")), q_factorial(4));
    EXPECT_THROW(gf_below_recursive(P("2413")), NotSeparable);
}

TEST(GeneratingFunctions, AllFormulasAgreeWithIntervalsUpToSix) {
    for (std::size_t n = 1; n <= 6; ++n) {
        for_each_permutation(n, [&](const Permutation& p) {
            if (!is_separable(p)) return;
            const IntPoly below = rank_gf(lower_interval(p));
            const IntPoly above = rank_gf(upper_interval(p));
            const auto t = separating_tree(p);
            const auto t2 = separating_tree(p, SplitRule::largest);
            ASSERT_EQ(gf_below_recursive(p), below) << p.to_string();
            ASSERT_EQ(gf_above_recursive(p), above) << p.to_string();
            ASSERT_EQ(gf_below_closed(t), below) << p.to_string();
            ASSERT_EQ(gf_above_closed(t), above) << p.to_string();
            ASSERT_EQ(gf_below_closed(t2), below) << p.to_string();
            ASSERT_EQ(gf_above_closed(t2), above) << p.to_string();
            ASSERT_EQ(gf_above_from_complement(p), above) << p.to_string();
            ASSERT_EQ(below * above, q_factorial(n)) << p.to_string();
            ASSERT_TRUE(is_symmetric(below) && is_unimodal(below) && is_symmetric(above) && is_unimodal(above));
        });
    }
}

TEST(GeneratingFunctions, ProductFailsForEveryNonSeparableUpToSix) {
    for (std::size_t n = 4; n <= 6; ++n) {
        for_each_permutation(n, [&](const Permutation& p) {
            if (is_separable(p)) return;
            ASSERT_NE(rank_gf(lower_interval(p)) * rank_gf(upper_interval(p)), q_factorial(n)) << p.to_string();
        });
    }
}

TEST(Avoiding231, ExampleAndBruteForce) {
    EXPECT_EQ(gf_below_231(P("142365")), (IntPoly{1, 1, 1} * IntPoly{1, 1}));
    EXPECT_THROW(gf_below_231(P("231")), Not231Avoiding);
    EXPECT_EQ(gf_below_231(Permutation::longest(5)), q_factorial(5));
    std::size_t count = 0;
    for_each_permutation(7, [&](const Permutation& p) {
        if (!avoids_231(p)) return;
        ++count;
        ASSERT_TRUE(is_separable(p));
        ASSERT_EQ(gf_below_231(p), rank_gf(lower_interval(p))) << p.to_string();
    });
    EXPECT_EQ(count, 429u);
}
