#pragma once

#include <string>

#include <json.hpp>

#include "aqlab/aq.hpp"
#include "aqlab/render.hpp"

namespace aqlab {

using json = nlohmann::ordered_json;

/// Nested-list dump: ["const","17"] | ["var","x"] | ["neg",aq] | ["sum",aq,aq,...]
inline json aq_to_json(const AQ& a) {
  switch (a.kind()) {
    case AQ::Kind::Const: return json::array({"const", a.digits()});
    case AQ::Kind::Var: return json::array({"var", a.name()});
    case AQ::Kind::Neg: return json::array({"neg", aq_to_json(a.child())});
    case AQ::Kind::Sum: {
      json arr = json::array({"sum"});
      for (const AQ& k : a.children()) arr.push_back(aq_to_json(k));
      return arr;
    }
  }
  return json();
}

inline AQ aq_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_string())
    throw error(errc::format_error, "FormatError: AQ dump must be a tagged array");
  const std::string tag = j[0].get<std::string>();
  if (tag == "const" && j.size() == 2) return AQ::constant(j[1].get<std::string>());
  if (tag == "var" && j.size() == 2) return AQ::variable(j[1].get<std::string>());
  if (tag == "neg" && j.size() == 2) return AQ::negate(aq_from_json(j[1]));
  if (tag == "sum" && j.size() >= 3) {
    std::vector<AQ> kids;
    for (std::size_t i = 1; i < j.size(); ++i) kids.push_back(aq_from_json(j[i]));
    return AQ::sum(std::move(kids));
  }
  throw error(errc::format_error, "FormatError: bad AQ dump node '" + tag + "'");
}

inline json bracketed_to_json(const BracketedAQ& b) {
  json red = json::array();
  for (const auto& [path, count] : b.redundancy) {
    json p = json::array();
    for (int i : path) p.push_back(i);
    red.push_back(json{{"path", p}, {"pairs", count}});
  }
  return json{{"aq", aq_to_json(b.aq)},
              {"minimal", render_text(b.aq)},
              {"redundancy", red}};
}

}  // namespace aqlab
