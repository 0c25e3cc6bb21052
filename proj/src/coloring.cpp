#include "dvisit/coloring.hpp"

#include <fstream>
#include <memory>
#include <sstream>

#include <json.hpp>

namespace dvisit {

Coloring::Coloring(std::size_t k, Fn fn, std::string name) : k_(k), fn_(std::move(fn)), name_(std::move(name)) {
  if (k_ == 0) throw Error(ErrorKind::InvalidInput, "a coloring needs at least one color");
}

Color Coloring::operator()(Node x, Node y) const {
  if (x == y) throw Error(ErrorKind::InvalidInput, "edge {" + std::to_string(x) + "," + std::to_string(y) + "} is a loop");
  const Color c = x < y ? fn_(x, y) : fn_(y, x);
  if (c >= k_)
    throw Error(ErrorKind::ColorOutOfRange, "coloring returned " + std::to_string(c) + " with k=" + std::to_string(k_));
  return c;
}

TableIncompleteError::TableIncompleteError(Node x, Node y)
    : Error(ErrorKind::TableIncomplete,
            "pair {" + std::to_string(x) + "," + std::to_string(y) + "} is not in the table"),
      pair_(x, y) {}

Coloring table_coloring(ColoringTable table, std::string name) {
  auto shared = std::make_shared<const ColoringTable>(std::move(table));
  return Coloring(
      shared->k,
      [shared](Node lo, Node hi) {
        auto it = shared->pairs.find({lo, hi});
        if (it == shared->pairs.end()) throw TableIncompleteError(lo, hi);
        return it->second;
      },
      std::move(name));
}

ColoringTable load_table_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("table JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("k") || !j.contains("pairs") || !j["k"].is_number_unsigned() ||
      !j["pairs"].is_array())
    throw Error(ErrorKind::InvalidInput, R"(table JSON must look like {"k": ..., "pairs": [[x, y, color], ...]})");
  ColoringTable table;
  table.k = j["k"].get<std::size_t>();
  if (table.k == 0) throw Error(ErrorKind::InvalidInput, "table k must be positive");
  for (const auto& entry : j["pairs"]) {
    if (!entry.is_array() || entry.size() != 3 || !entry[0].is_number_unsigned() || !entry[1].is_number_unsigned() ||
        !entry[2].is_number_unsigned())
      throw Error(ErrorKind::InvalidInput, "table entries are [x, y, color] triples of naturals");
    Node x = entry[0].get<Node>(), y = entry[1].get<Node>();
    const auto c = entry[2].get<Color>();
    if (x == y) throw Error(ErrorKind::InvalidInput, "table entry colors a loop at " + std::to_string(x));
    if (c >= table.k) throw Error(ErrorKind::ColorOutOfRange, "table color " + std::to_string(c));
    if (x > y) std::swap(x, y);
    auto [it, fresh] = table.pairs.emplace(std::make_pair(x, y), c);
    if (!fresh && it->second != c)
      throw Error(ErrorKind::InvalidInput,
                  "table colors {" + std::to_string(x) + "," + std::to_string(y) + "} twice with different colors");
  }
  return table;
}

ColoringTable load_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open table file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return load_table_json(buf.str());
}

std::string table_to_json(const ColoringTable& table) {
  nlohmann::ordered_json j;
  j["k"] = table.k;
  auto pairs = nlohmann::ordered_json::array();
  for (const auto& [pair, c] : table.pairs) pairs.push_back({pair.first, pair.second, c});
  j["pairs"] = std::move(pairs);
  return j.dump();
}

}  // namespace dvisit
