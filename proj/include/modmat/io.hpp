#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "json.hpp"
#include "modmat/core.hpp"
#include "modmat/flats.hpp"
#include "modmat/lattice.hpp"
#include "modmat/verdict.hpp"

namespace modmat::io {

using nlohmann::json;

namespace detail {

inline const json& require(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw Error(Errc::malformed_input, std::string("missing key '") + key + "'");
  return doc.at(key);
}

inline const json& require_array(const json& doc, const char* key) {
  const json& v = require(doc, key);
  if (!v.is_array()) throw Error(Errc::malformed_input, std::string("'") + key + "' must be an array");
  return v;
}

inline GroundSet read_ground(const json& doc) {
  std::vector<std::string> labels;
  for (const auto& item : require_array(doc, "ground")) {
    if (!item.is_string()) throw Error(Errc::malformed_input, "ground elements must be strings");
    labels.push_back(item.get<std::string>());
  }
  return GroundSet(std::move(labels));
}

inline SubsetMask read_set(const GroundSet& g, const json& arr) {
  if (!arr.is_array()) throw Error(Errc::malformed_input, "a set must be an array of element names");
  SubsetMask m;
  for (const auto& item : arr) {
    if (!item.is_string()) throw Error(Errc::malformed_input, "set elements must be strings");
    auto idx = g.index_of(item.get<std::string>());
    if (!idx) throw Error(Errc::malformed_input, "unknown element '" + item.get<std::string>() + "'");
    m = m.with(*idx);
  }
  return m;
}

}  // namespace detail

inline json set_to_json(const GroundSet& g, SubsetMask m) {
  json arr = json::array();
  for (Element e : m.elements()) arr.push_back(g.label(e));
  return arr;
}

inline json ground_to_json(const GroundSet& g) { return g.labels(); }

inline json to_json(const CircuitFamily& f) {
  json circuits = json::array();
  for (SubsetMask c : f.members()) circuits.push_back(set_to_json(f.ground(), c));
  return {{"ground", ground_to_json(f.ground())}, {"circuits", circuits}};
}

inline CircuitFamily circuit_family_from_json(const json& doc) {
  GroundSet g = detail::read_ground(doc);
  std::vector<SubsetMask> members;
  for (const auto& c : detail::require_array(doc, "circuits")) members.push_back(detail::read_set(g, c));
  return CircuitFamily::make(std::move(g), std::move(members));
}

inline json signed_to_json(const GroundSet& g, const SignedVector& x) {
  return {{"+", set_to_json(g, x.positive())}, {"-", set_to_json(g, x.negative())}};
}

inline json to_json(const SignedFamily& f) {
  json circuits = json::array();
  for (const auto& x : f.members()) circuits.push_back(signed_to_json(f.ground(), x));
  return {{"ground", ground_to_json(f.ground())}, {"circuits", circuits}};
}

inline SignedVector signed_from_json(const GroundSet& g, const json& item) {
  if (!item.is_object()) throw Error(Errc::malformed_input, "signed circuits are objects with '+' and '-' lists");
  SubsetMask pos = item.contains("+") ? detail::read_set(g, item.at("+")) : SubsetMask{};
  SubsetMask neg = item.contains("-") ? detail::read_set(g, item.at("-")) : SubsetMask{};
  return SignedVector(pos, neg);
}

/// Reads a signed file; with `complete_negations`, missing negatives are added.
inline SignedFamily signed_family_from_json(const json& doc, bool complete_negations = true) {
  GroundSet g = detail::read_ground(doc);
  std::vector<SignedVector> members;
  for (const auto& item : detail::require_array(doc, "circuits")) members.push_back(signed_from_json(g, item));
  return SignedFamily::make(std::move(g), std::move(members), complete_negations);
}

inline json to_json(const FlatFamily& f) {
  json flats = json::array();
  for (SubsetMask x : f.members()) flats.push_back(set_to_json(f.ground(), x));
  return {{"ground", ground_to_json(f.ground())}, {"flats", flats}};
}

inline FlatFamily flat_family_from_json(const json& doc) {
  GroundSet g = detail::read_ground(doc);
  std::vector<SubsetMask> members;
  for (const auto& x : detail::require_array(doc, "flats")) members.push_back(detail::read_set(g, x));
  return FlatFamily::make(std::move(g), std::move(members));
}

inline json to_json(const FiniteLattice& lat) {
  json covers = json::array();
  for (auto [lo, hi] : lat.covers()) covers.push_back({lo, hi});
  json doc = {{"elements", lat.size()}, {"covers", covers}};
  if (!lat.labels().empty()) doc["labels"] = lat.labels();
  return doc;
}

inline FiniteLattice lattice_from_json(const json& doc) {
  const json& n = detail::require(doc, "elements");
  if (!n.is_number_unsigned()) throw Error(Errc::malformed_input, "'elements' must be a nonnegative integer");
  std::vector<CoverPair> covers;
  for (const auto& pair : detail::require_array(doc, "covers")) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_unsigned() || !pair[1].is_number_unsigned()) {
      throw Error(Errc::malformed_input, "covers are [lower, upper] index pairs");
    }
    covers.emplace_back(pair[0].get<std::size_t>(), pair[1].get<std::size_t>());
  }
  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    for (const auto& l : doc.at("labels")) {
      if (!l.is_string()) throw Error(Errc::malformed_input, "labels must be strings");
      labels.push_back(l.get<std::string>());
    }
  }
  return lattice_from_covers(n.get<std::size_t>(), std::move(covers), std::move(labels));
}

/// Witness details, with sets written by element name.
inline json witness_to_json(const GroundSet& g, const Witness& w) {
  return std::visit(
      [&](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, EliminationWitness>) {
          return {{"type", "elimination"},
                  {"c1", set_to_json(g, v.c1)},
                  {"c2", set_to_json(g, v.c2)},
                  {"e", g.label(v.e)},
                  {"candidates", set_to_json(g, v.candidates)}};
        } else if constexpr (std::is_same_v<T, SignedEliminationWitness>) {
          return {{"type", "signed-elimination"},
                  {"x", signed_to_json(g, v.x)},
                  {"y", signed_to_json(g, v.y)},
                  {"e", g.label(v.e)},
                  {"f", g.label(v.f)}};
        } else if constexpr (std::is_same_v<T, SeparationWitness>) {
          json blocks = json::array();
          for (SubsetMask b : v.blocks) blocks.push_back(set_to_json(g, b));
          return {{"type", "separation"}, {"flat", set_to_json(g, v.flat)}, {"blocks", blocks}};
        } else {
          return {{"type", "lattice-separation"}, {"element", v.element}, {"reason", v.reason}};
        }
      },
      w);
}

/// A rejected input together with its witness; the document is itself a
/// valid input file, so feeding it back reproduces the rejection.
inline json witness_document(json family_doc, const GroundSet& g, const Verdict& v) {
  if (v.witness) family_doc["witness"] = witness_to_json(g, *v.witness);
  return family_doc;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::malformed_input, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::malformed_input, std::string("invalid JSON in '") + path + "': " + e.what());
  }
}

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

/// Hasse diagram in DOT, bottom at the bottom, elements of equal rank on one row.
inline std::string hasse_dot(const FiniteLattice& lat, const std::string& name = "lattice") {
  std::ostringstream os;
  os << "digraph \"" << dot_escape(name) << "\" {\n";
  os << "  rankdir=BT;\n  node [shape=box, fontname=\"Helvetica\"];\n";
  for (std::size_t x = 0; x < lat.size(); ++x) {
    os << "  n" << x << " [label=\"" << dot_escape(lat.label(x)) << "\"];\n";
  }
  std::map<std::size_t, std::vector<std::size_t>> by_rank;
  for (std::size_t x = 0; x < lat.size(); ++x) by_rank[lat.rank(x)].push_back(x);
  for (const auto& [r, xs] : by_rank) {
    os << "  { rank=same;";
    for (std::size_t x : xs) os << " n" << x << ";";
    os << " }  // rank " << r << "\n";
  }
  for (auto [lo, hi] : lat.covers()) os << "  n" << lo << " -> n" << hi << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace modmat::io
