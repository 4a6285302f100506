#pragma once

#include <functional>
#include <map>
#include <type_traits>
#include <variant>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kst/surject.hpp"

namespace kst {

// Witnesses as a node table: {"root": id, "nodes": [...]}, children before
// parents, shared subtrees stored once. Ids follow a depth-first walk, so
// the output is stable across runs.
inline nlohmann::json witness_to_json(const WitnessPtr& root) {
  using nlohmann::json;
  json nodes = json::array();
  std::map<const Witness*, std::size_t> ids;
  std::function<std::size_t(const WitnessPtr&)> visit = [&](const WitnessPtr& w) -> std::size_t {
    if (auto it = ids.find(w.get()); it != ids.end()) return it->second;
    json node = std::visit(
        [&](const auto& n) -> json {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, DiagonalLeaf>) {
            return {{"kind", "diagonal"}, {"weight", n.weight.parts()}, {"d", n.element.var_count()},
                    {"element", to_string(n.element)}};
          } else if constexpr (std::is_same_v<T, DividedPowerLeaf>) {
            return {{"kind", "divided_power"}, {"i", n.i}, {"l", n.l}, {"a", n.a}, {"v", n.v.parts()}};
          } else if constexpr (std::is_same_v<T, ConvolveNode>) {
            const std::size_t l = visit(n.left), r = visit(n.right);
            return {{"kind", "convolve"}, {"left", l}, {"right", r}};
          } else if constexpr (std::is_same_v<T, ScaleNode>) {
            const std::size_t c = visit(n.child);
            return {{"kind", "scale"}, {"coeff", n.coeff.get_str()}, {"q_power", n.q_power}, {"child", c}};
          } else {
            std::vector<std::size_t> cs;
            for (const auto& c : n.children) cs.push_back(visit(c));
            return {{"kind", "add"}, {"children", cs}};
          }
        },
        w->node);
    const std::size_t id = nodes.size();
    node["id"] = id;
    nodes.push_back(std::move(node));
    ids.emplace(w.get(), id);
    return id;
  };
  const std::size_t r = visit(root);
  return {{"root", r}, {"nodes", std::move(nodes)}};
}

inline WitnessPtr witness_from_json(const nlohmann::json& j) {
  try {
    std::vector<WitnessPtr> built;
    for (const auto& node : j.at("nodes")) {
      if (node.at("id").get<std::size_t>() != built.size()) throw ParseError("witness nodes out of order");
      auto child = [&](const nlohmann::json& id) {
        const auto k = id.get<std::size_t>();
        if (k >= built.size()) throw ParseError("witness child refers forward");
        return built[k];
      };
      const std::string kind = node.at("kind");
      if (kind == "diagonal") {
        built.push_back(make_diagonal(Composition(node.at("weight").get<std::vector<int>>()),
                                      parse_laurent(node.at("element").get<std::string>(),
                                                    node.at("d").get<std::size_t>())));
      } else if (kind == "divided_power") {
        built.push_back(make_divided_power(node.at("i").get<std::size_t>(), node.at("l").get<int>(),
                                           node.at("a").get<int>(), Composition(node.at("v").get<std::vector<int>>())));
      } else if (kind == "convolve") {
        built.push_back(make_convolve(child(node.at("left")), child(node.at("right"))));
      } else if (kind == "scale") {
        Rational c(node.at("coeff").get<std::string>());
        c.canonicalize();
        built.push_back(make_scale(c, node.at("q_power").get<int>(), child(node.at("child"))));
      } else if (kind == "add") {
        std::vector<WitnessPtr> cs;
        for (const auto& id : node.at("children")) cs.push_back(child(id));
        built.push_back(make_add(std::move(cs)));
      } else {
        throw ParseError("unknown witness node kind '" + kind + "'");
      }
    }
    const auto r = j.at("root").get<std::size_t>();
    if (r >= built.size()) throw ParseError("witness root out of range");
    return built[r];
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed witness json: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("malformed witness coefficient: ") + e.what());
  }
}

}  // namespace kst
