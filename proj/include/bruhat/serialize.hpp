#pragma once

// JSON forms of the library's values.

#include <string>

#include "json.hpp"

#include "bruhat/bijection.hpp"
#include "bruhat/permutation.hpp"
#include "bruhat/poset.hpp"
#include "bruhat/qpoly.hpp"
#include "bruhat/separable.hpp"
#include "bruhat/survey.hpp"
#include "bruhat/weak_order.hpp"

namespace bruhat {

using nlohmann::json;

// Decimal coefficient strings, index = exponent.
inline json to_json(const IntPoly& p) {
    json arr = json::array();
    for (const auto& c : p.coefficients()) arr.push_back(c.str());
    return arr;
}

inline IntPoly intpoly_from_json(const json& j) {
    std::vector<BigInt> coeffs;
    for (const auto& c : j) coeffs.emplace_back(c.get<std::string>());
    return IntPoly(std::move(coeffs));
}

inline json to_json(const Interval& iv) {
    json ranks = json::array();
    for (const auto& r : iv.ranks) {
        json row = json::array();
        for (const auto& w : r) row.push_back(w.to_string());
        ranks.push_back(std::move(row));
    }
    return {{"bottom", iv.bottom.to_string()}, {"top", iv.top.to_string()}, {"ranks", std::move(ranks)}};
}

inline json to_json(const Poset& p) {
    json covers = json::array();
    for (auto [a, b] : p.covers()) covers.push_back({a, b});
    json j{{"n", p.size()}, {"covers", std::move(covers)}};
    if (p.offset() != 0) j["offset"] = p.offset();
    return j;
}

inline Poset poset_from_json(const json& j) {
    std::vector<std::pair<int, int>> rel;
    for (const auto& c : j.at("covers")) rel.emplace_back(c.at(0).get<int>(), c.at(1).get<int>());
    return Poset::from_relations(j.at("n").get<std::size_t>(), rel, j.value("offset", std::size_t{0}));
}

inline json tree_node_json(const SeparatingTree& t, int i) {
    const TreeNode& nd = t.node(i);
    if (nd.is_leaf()) return {{"leaf", nd.value}};
    return {{"sign", nd.sign == NodeSign::positive ? "positive" : "negative"},
            {"children", json::array({tree_node_json(t, nd.left), tree_node_json(t, nd.right)})}};
}

inline json to_json(const SeparatingTree& t) { return tree_node_json(t, t.root_index()); }

inline json to_json(const BijectionReport& r) {
    json collisions = json::array();
    for (const auto& c : r.collisions) {
        json pre = json::array();
        for (const auto& [u, v] : c.preimages) pre.push_back({u.to_string(), v.to_string()});
        collisions.push_back({{"w", c.w.to_string()}, {"preimages", std::move(pre)}});
    }
    return {{"is_bijection", r.is_bijection},
            {"domain_size", r.domain_size},
            {"image_size", r.image_size},
            {"collisions", std::move(collisions)}};
}

inline json to_json(const SurveyReport& r) {
    return {{"n", r.n},
            {"mode", to_string(r.mode)},
            {"total", r.total},
            {"count_separable", r.count_separable},
            {"count_rank_symmetric", r.count_rank_symmetric},
            {"count_symmetric_cyclotomic", r.count_symmetric_cyclotomic},
            {"count_symmetric_nondividing", r.count_symmetric_nondividing},
            {"count_unimodal", r.count_unimodal},
            {"completed", r.completed},
            {"wall_time", r.wall_time}};
}

inline json witnesses_json(const SurveyReport& r) {
    return {{"n", r.n},
            {"rank_symmetric_nonseparable", r.symmetric_nonseparable},
            {"rank_symmetric_nondividing", r.symmetric_nondividing}};
}

}  // namespace bruhat
