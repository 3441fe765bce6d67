#pragma once

// Text and JSON formats.
//
//   element   r = 1: integer in [0, q);  r > 1: coefficient array [c0, c1, ...]
//   field     {"p": 13, "r": 1, "modulus": []}
//   chain     {"field": <field>, "c": [c0, ..., cn]}
//
// Text parsing (command line) additionally accepts negative integers, which
// are reduced, and quotients "x/y".

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "vsets/carlitz.hpp"
#include "vsets/constructions.hpp"
#include "vsets/error.hpp"
#include "vsets/family.hpp"
#include "vsets/gf.hpp"

namespace vsets {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Text

/// Splits at commas that are not inside brackets.
inline std::vector<std::string> split_top_level(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '[') ++depth;
    if (ch == ']') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  if (depth != 0) throw Error(ErrorCode::ParseError, "unbalanced brackets in '" + std::string(s) + "'");
  out.push_back(cur);
  return out;
}

inline long long parse_integer(std::string_view s) {
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty number");
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(std::string(s), &pos);
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "not an integer: '" + std::string(s) + "'");
  }
  if (pos != s.size()) throw Error(ErrorCode::ParseError, "not an integer: '" + std::string(s) + "'");
  return v;
}

inline Element parse_element(const Field& f, std::string_view s) {
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '[') ++depth;
    if (s[i] == ']') --depth;
    if (s[i] == '/' && depth == 0) return parse_element(f, s.substr(0, i)) / parse_element(f, s.substr(i + 1));
  }
  if (!s.empty() && s.front() == '[') {
    if (s.back() != ']') throw Error(ErrorCode::ParseError, "unterminated coefficient list");
    std::vector<long long> coeffs;
    auto inner = s.substr(1, s.size() - 2);
    if (!inner.empty())
      for (const auto& tok : split_top_level(inner)) coeffs.push_back(parse_integer(tok));
    return f.from_coeffs(coeffs);
  }
  return f.from_int(parse_integer(s));
}

inline std::vector<Element> parse_element_list(const Field& f, std::string_view s) {
  std::vector<Element> out;
  for (const auto& tok : split_top_level(s)) out.push_back(parse_element(f, tok));
  return out;
}

inline std::string join(const std::vector<Element>& v, char sep = ',') {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += v[i].to_string();
  }
  return s;
}

// ---------------------------------------------------------------------------
// JSON

inline json to_json(const Element& e) {
  if (e.field().degree() == 1) return e.code();
  return e.coeffs();
}

inline Element element_from_json(const Field& f, const json& j) {
  if (j.is_number_integer()) return f.from_int(j.get<long long>());
  if (j.is_array()) {
    std::vector<long long> coeffs = j.get<std::vector<long long>>();
    return f.from_coeffs(coeffs);
  }
  throw Error(ErrorCode::ParseError, "element must be an integer or a coefficient array");
}

inline json to_json(const std::vector<Element>& v) {
  json j = json::array();
  for (const auto& e : v) j.push_back(to_json(e));
  return j;
}

inline std::vector<Element> elements_from_json(const Field& f, const json& j) {
  std::vector<Element> out;
  for (const auto& x : j) out.push_back(element_from_json(f, x));
  return out;
}

inline json to_json(const Field& f) {
  return {{"p", f.characteristic()}, {"r", f.degree()}, {"modulus", f.modulus()}};
}

inline Field field_from_json(const json& j) {
  const auto p = j.at("p").get<std::uint64_t>();
  const auto r = j.at("r").get<unsigned>();
  std::optional<std::vector<long long>> modulus;
  if (r > 1 && j.contains("modulus")) modulus = j.at("modulus").get<std::vector<long long>>();
  return Field(p, r, modulus);
}

inline json to_json(const CarlitzChain& c) { return {{"field", to_json(c.field())}, {"c", to_json(c.constants())}}; }

inline CarlitzChain chain_from_json(const json& j) {
  const Field f = field_from_json(j.at("field"));
  return CarlitzChain(elements_from_json(f, j.at("c")));
}

inline json to_json(const LinearMap& g) { return {{"a", to_json(g.a())}, {"b", to_json(g.b())}}; }

inline json to_json(const ValueProfile& p) {
  json mult = json::array();
  for (const auto& [e, m] : p.mult) mult.push_back({to_json(e), m});
  json sparse = json::array();
  for (const auto& [i, v] : p.sparse_counts()) sparse.push_back({i, v});
  return {{"size", p.size()},         {"values", to_json(p.values)}, {"mult", mult},
          {"counts", p.counts},       {"sparse_counts", sparse},     {"max_count", p.max_count}};
}

inline ValueProfile profile_from_json(const Field& f, const json& j) {
  ValueProfile p;
  p.values = elements_from_json(f, j.at("values"));
  for (const auto& m : j.at("mult")) p.mult.emplace_back(element_from_json(f, m.at(0)), m.at(1).get<std::size_t>());
  p.counts = j.at("counts").get<std::vector<std::size_t>>();
  p.max_count = j.at("max_count").get<std::size_t>();
  return p;
}

inline json to_json(const ChainValidity& v) {
  return {{"alpha_last_zero", v.alpha_last_zero},
          {"alphas_nonzero", v.alphas_nonzero},
          {"poles_distinct", v.poles_distinct},
          {"valid", v.valid()}};
}

inline json to_json(const ConstructionParams& p) {
  json j = json::object();
  if (p.n) j["n"] = *p.n;
  if (p.a) j["a"] = to_json(*p.a);
  if (p.b) j["b"] = to_json(*p.b);
  if (p.c) j["c"] = to_json(*p.c);
  if (p.d) j["d"] = to_json(*p.d);
  if (p.alpha) j["alpha"] = to_json(*p.alpha);
  return j;
}

inline ConstructionParams params_from_json(const Field& f, const json& j) {
  ConstructionParams p;
  if (j.contains("n")) p.n = j["n"].get<std::size_t>();
  auto el = [&](const char* k, std::optional<Element>& out) {
    if (j.contains(k)) out = element_from_json(f, j[k]);
  };
  el("a", p.a);
  el("b", p.b);
  el("c", p.c);
  el("d", p.d);
  el("alpha", p.alpha);
  return p;
}

inline json to_json(const PredictedProfile& p) {
  json j = json::object();
  if (p.value_set) j["value_set"] = to_json(*p.value_set);
  if (p.missing) j["missing"] = to_json(*p.missing);
  if (!p.mult.empty()) {
    json m = json::array();
    for (const auto& [e, k] : p.mult) m.push_back({to_json(e), k});
    j["mult"] = m;
  }
  if (p.other_mult) j["other_mult"] = *p.other_mult;
  if (p.counts) {
    json c = json::array();
    for (const auto& [i, v] : *p.counts) c.push_back({i, v});
    j["counts"] = c;
  }
  if (p.size) j["size"] = *p.size;
  if (p.min_size) j["min_size"] = *p.min_size;
  if (p.max_count) j["max_count"] = *p.max_count;
  if (p.max_count_at_most) j["max_count_at_most"] = *p.max_count_at_most;
  if (p.complete_mapping) j["complete_mapping"] = *p.complete_mapping;
  j["source"] = p.source;
  return j;
}

inline PredictedProfile predicted_from_json(const Field& f, const json& j) {
  PredictedProfile p;
  if (j.contains("value_set")) p.value_set = elements_from_json(f, j["value_set"]);
  if (j.contains("missing")) p.missing = elements_from_json(f, j["missing"]);
  if (j.contains("mult"))
    for (const auto& m : j["mult"]) p.mult.emplace_back(element_from_json(f, m.at(0)), m.at(1).get<std::size_t>());
  if (j.contains("other_mult")) p.other_mult = j["other_mult"].get<std::size_t>();
  if (j.contains("counts")) {
    std::vector<std::pair<std::size_t, std::size_t>> c;
    for (const auto& x : j["counts"]) c.emplace_back(x.at(0).get<std::size_t>(), x.at(1).get<std::size_t>());
    p.counts = c;
  }
  if (j.contains("size")) p.size = j["size"].get<std::size_t>();
  if (j.contains("min_size")) p.min_size = j["min_size"].get<std::size_t>();
  if (j.contains("max_count")) p.max_count = j["max_count"].get<std::size_t>();
  if (j.contains("max_count_at_most")) p.max_count_at_most = j["max_count_at_most"].get<std::size_t>();
  if (j.contains("complete_mapping")) p.complete_mapping = j["complete_mapping"].get<bool>();
  p.source = j.value("source", "");
  return p;
}

inline json to_json(const ConstructionReport& r) {
  const auto& con = r.construction;
  json j = {{"family", std::string(family_name(con.family))},
            {"field", to_json(con.field)},
            {"params", to_json(con.params)},
            {"stated_as", con.chain ? "chain" : "pair"},
            {"chain", to_json(r.chain.constants())},
            {"g", to_json(r.g)},
            {"poles", to_json(r.poles.values())},
            {"validity", to_json(r.validity)},
            {"predicted", to_json(con.predicted)},
            {"observed", to_json(r.observed)},
            {"complete_mapping", r.observed_complete_mapping},
            {"match", r.match},
            {"mismatches", r.mismatches}};
  return j;
}

inline ConstructionReport report_from_json(const json& j) {
  const Field f = field_from_json(j.at("field"));
  const auto fam = parse_family(j.at("family").get<std::string>());
  if (!fam) throw Error(ErrorCode::ParseError, "unknown family");
  CarlitzChain chain(elements_from_json(f, j.at("chain")));
  LinearMap g(element_from_json(f, j.at("g").at("a")), element_from_json(f, j.at("g").at("b")));
  PoleSet poles(elements_from_json(f, j.at("poles")));
  Construction con{*fam, f, params_from_json(f, j.at("params")), std::nullopt, std::nullopt, std::nullopt,
                   predicted_from_json(f, j.at("predicted"))};
  if (j.at("stated_as") == "chain") {
    con.chain = chain;
  } else {
    con.g = g;
    con.poles = poles;
  }
  ChainValidity v;
  v.alpha_last_zero = j.at("validity").at("alpha_last_zero").get<bool>();
  v.alphas_nonzero = j.at("validity").at("alphas_nonzero").get<bool>();
  v.poles_distinct = j.at("validity").at("poles_distinct").get<bool>();
  return {std::move(con),
          std::move(chain),
          std::move(g),
          std::move(poles),
          v,
          profile_from_json(f, j.at("observed")),
          j.at("complete_mapping").get<bool>(),
          j.at("match").get<bool>(),
          j.at("mismatches").get<std::vector<std::string>>()};
}

/// One JSON-lines record per attained size.
inline json to_json(const SpectrumEntry& e) {
  json j = {{"size", e.size},
            {"witness",
             {{"a", to_json(e.witness.g.a())},
              {"b", to_json(e.witness.g.b())},
              {"poles", to_json(e.witness.poles.values())},
              {"chain", to_json(e.witness.chain.constants())}}}};
  if (e.count) j["count"] = *e.count;
  return j;
}

inline constexpr std::string_view kSpectrumTsvHeader = "size\tcount\ta\tb\tpoles\tchain";

inline std::string to_tsv(const SpectrumEntry& e) {
  return std::to_string(e.size) + '\t' + (e.count ? std::to_string(*e.count) : std::string("-")) + '\t' +
         e.witness.g.a().to_string() + '\t' + e.witness.g.b().to_string() + '\t' + join(e.witness.poles.values()) +
         '\t' + join(e.witness.chain.constants());
}

}  // namespace vsets
