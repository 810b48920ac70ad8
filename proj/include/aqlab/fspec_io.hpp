#pragma once

#include <sstream>
#include <string>

#include "aqlab/fspec_prove.hpp"
#include "aqlab/json_io.hpp"
#include "aqlab/parse.hpp"

namespace aqlab::fspec {

/// Line-oriented JSON for proof objects and rewrite traces: a header line,
/// one step object per line, and (for traces) a closing normal-form line.
/// Substitution bindings are rendered AQs; positions are child-index paths.

namespace io_detail {

inline json path_to_json(const Path& p) {
  json arr = json::array();
  for (int i : p) arr.push_back(i);
  return arr;
}

inline Path path_from_json(const json& j) {
  Path p;
  for (const auto& v : j) p.push_back(v.get<int>());
  return p;
}

inline json bindings_to_json(const AxiomInstance& inst) {
  json b = json::object();
  auto put = [&](const char* name, const AQ& t) { b[name] = render_text(t); };
  switch (inst.id) {
    case AxiomId::assoc:
      if (inst.poly) {
        for (std::size_t i = 0; i < inst.args.size(); ++i)
          b["t" + std::to_string(i + 1)] = render_text(inst.args[i]);
      } else {
        put("x", inst.args[0]);
        put("y", inst.args[1]);
        put("z", inst.args[2]);
      }
      break;
    case AxiomId::comm:
      put("x", inst.args[0]);
      put("y", inst.args[1]);
      break;
    case AxiomId::add_zero:
    case AxiomId::add_opp:
    case AxiomId::double_neg: put("x", inst.args[0]); break;
    case AxiomId::digit_succ: put("d", inst.args[0]); break;
    case AxiomId::nine_one: break;
    case AxiomId::append_succ:
      put("sigma", inst.args[0]);
      put("d", inst.args[1]);
      break;
    case AxiomId::carry_cond:
      put("sigma", inst.args[0]);
      put("tau", inst.args[1]);
      break;
  }
  return b;
}

inline AxiomId axiom_id_from_name(const std::string& name) {
  if (name == "Assoc" || name == "AssocPoly") return AxiomId::assoc;
  if (name == "Comm") return AxiomId::comm;
  if (name == "AddZero") return AxiomId::add_zero;
  if (name == "AddOpp") return AxiomId::add_opp;
  if (name == "DoubleNeg") return AxiomId::double_neg;
  if (name == "DigitSucc") return AxiomId::digit_succ;
  if (name == "NineOne") return AxiomId::nine_one;
  if (name == "AppendSucc") return AxiomId::append_succ;
  if (name == "CarryCond") return AxiomId::carry_cond;
  throw error(errc::format_error, "FormatError: unknown axiom '" + name + "'");
}

inline AxiomInstance bindings_from_json(const std::string& name, bool poly, const json& b) {
  AxiomInstance inst;
  inst.id = axiom_id_from_name(name);
  inst.poly = poly || name == "AssocPoly";
  auto grab = [&](const char* key) {
    if (!b.contains(key))
      throw error(errc::format_error, std::string("FormatError: missing binding '") + key + "'");
    return parse_aq(b[key].get<std::string>());
  };
  switch (inst.id) {
    case AxiomId::assoc:
      if (inst.poly) {
        for (std::size_t i = 1; b.contains("t" + std::to_string(i)); ++i)
          inst.args.push_back(parse_aq(b["t" + std::to_string(i)].get<std::string>()));
      } else {
        inst.args = {grab("x"), grab("y"), grab("z")};
      }
      break;
    case AxiomId::comm: inst.args = {grab("x"), grab("y")}; break;
    case AxiomId::add_zero:
    case AxiomId::add_opp:
    case AxiomId::double_neg: inst.args = {grab("x")}; break;
    case AxiomId::digit_succ: inst.args = {grab("d")}; break;
    case AxiomId::nine_one: break;
    case AxiomId::append_succ: inst.args = {grab("sigma"), grab("d")}; break;
    case AxiomId::carry_cond: inst.args = {grab("sigma"), grab("tau")}; break;
  }
  return inst;
}

inline json derivation_to_json_obj(const Derivation& d);

inline json step_to_json(const DStep& s) {
  switch (s.kind) {
    case DStep::Kind::axiom: {
      json j{{"kind", "axiom"},
             {"axiom", s.inst.id == AxiomId::assoc && s.inst.poly ? "AssocPoly"
                                                                  : axiom_name(s.inst.id)},
             {"bindings", bindings_to_json(s.inst)}};
      if (s.premise) j["premise"] = derivation_to_json_obj(*s.premise);
      return j;
    }
    case DStep::Kind::refl: return json{{"kind", "refl"}, {"term", render_text(s.term)}};
    case DStep::Kind::sym: return json{{"kind", "sym"}, {"inner", step_to_json(s.children[0])}};
    case DStep::Kind::trans:
      return json{{"kind", "trans"},
                  {"first", step_to_json(s.children[0])},
                  {"second", step_to_json(s.children[1])}};
    case DStep::Kind::cong:
      return json{{"kind", "cong"},
                  {"path", path_to_json(s.path)},
                  {"inner", step_to_json(s.children[0])}};
  }
  throw error(errc::format_error, "FormatError: bad step");
}

inline json derivation_to_json_obj(const Derivation& d) {
  json steps = json::array();
  for (const DStep& s : d.steps) steps.push_back(step_to_json(s));
  return json{{"goal", {{"lhs", render_text(d.goal.lhs)}, {"rhs", render_text(d.goal.rhs)}}},
              {"steps", steps}};
}

inline Derivation derivation_from_json_obj(const json& j);

inline DStep step_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "axiom") {
    AxiomInstance inst = bindings_from_json(j.at("axiom").get<std::string>(), false,
                                            j.value("bindings", json::object()));
    std::shared_ptr<const Derivation> prem;
    if (j.contains("premise"))
      prem = std::make_shared<const Derivation>(derivation_from_json_obj(j["premise"]));
    return DStep::axiom_step(std::move(inst), std::move(prem));
  }
  if (kind == "refl") return DStep::refl_step(parse_aq(j.at("term").get<std::string>()));
  if (kind == "sym") return DStep::sym_step(step_from_json(j.at("inner")));
  if (kind == "trans")
    return DStep::trans_step(step_from_json(j.at("first")), step_from_json(j.at("second")));
  if (kind == "cong")
    return DStep::cong_step(path_from_json(j.at("path")), step_from_json(j.at("inner")));
  throw error(errc::format_error, "FormatError: unknown step kind '" + kind + "'");
}

inline Derivation derivation_from_json_obj(const json& j) {
  Derivation d;
  d.goal.lhs = parse_aq(j.at("goal").at("lhs").get<std::string>());
  d.goal.rhs = parse_aq(j.at("goal").at("rhs").get<std::string>());
  for (const auto& s : j.at("steps")) d.steps.push_back(step_from_json(s));
  return d;
}

inline json trace_to_json_obj(const RewriteTrace& t);

inline json trace_step_to_json(const TraceStep& s) {
  json j;
  if (s.is_macro) {
    j = json{{"rule", s.macro_split ? "SplitConst" : "AddConst"},
             {"dir", "fwd"},
             {"path", path_to_json(s.path)},
             {"a", s.mac_a},
             {"b", s.mac_b},
             {"c", s.mac_c}};
  } else {
    j = json{{"rule", s.axiom.id == AxiomId::assoc && s.axiom.poly ? "AssocPoly"
                                                                   : axiom_name(s.axiom.id)},
             {"dir", s.forward ? "fwd" : "bwd"},
             {"path", path_to_json(s.path)},
             {"bindings", bindings_to_json(s.axiom)}};
    if (s.premise) j["premise"] = trace_to_json_obj(*s.premise);
  }
  j["result"] = render_text(s.result);
  return j;
}

inline json trace_to_json_obj(const RewriteTrace& t) {
  json steps = json::array();
  for (const TraceStep& s : t.steps) steps.push_back(trace_step_to_json(s));
  return json{{"start", render_text(t.start)},
              {"steps", steps},
              {"normal_form", render_text(t.normal_form)}};
}

inline TraceStep trace_step_from_json(const json& j) {
  TraceStep s;
  const std::string rule = j.at("rule").get<std::string>();
  s.path = path_from_json(j.at("path"));
  if (rule == "AddConst" || rule == "SplitConst") {
    s.is_macro = true;
    s.macro_split = rule == "SplitConst";
    s.mac_a = j.at("a").get<std::string>();
    s.mac_b = j.at("b").get<std::string>();
    s.mac_c = j.at("c").get<std::string>();
  } else {
    s.axiom = bindings_from_json(rule, false, j.value("bindings", json::object()));
    s.forward = j.at("dir").get<std::string>() == "fwd";
    if (j.contains("premise")) {
      auto prem = std::make_shared<RewriteTrace>();
      const json& pj = j["premise"];
      prem->start = parse_aq(pj.at("start").get<std::string>());
      prem->normal_form = parse_aq(pj.at("normal_form").get<std::string>());
      for (const auto& ps : pj.at("steps"))
        prem->steps.push_back(trace_step_from_json(ps));
      s.premise = std::move(prem);
    }
  }
  s.result = parse_aq(j.at("result").get<std::string>());
  return s;
}

}  // namespace io_detail

inline std::string derivation_to_jsonl(const Derivation& d) {
  std::string out;
  json header{{"format", "aqlab-derivation"},
              {"version", 1},
              {"goal", {{"lhs", render_text(d.goal.lhs)}, {"rhs", render_text(d.goal.rhs)}}}};
  out += header.dump();
  out += '\n';
  for (const DStep& s : d.steps) {
    out += json{{"step", io_detail::step_to_json(s)}}.dump();
    out += '\n';
  }
  return out;
}

inline std::string trace_to_jsonl(const RewriteTrace& t) {
  std::string out;
  json header{{"format", "aqlab-trace"}, {"version", 1}, {"start", render_text(t.start)}};
  out += header.dump();
  out += '\n';
  for (const TraceStep& s : t.steps) {
    out += json{{"step", io_detail::trace_step_to_json(s)}}.dump();
    out += '\n';
  }
  out += json{{"normal_form", render_text(t.normal_form)}}.dump();
  out += '\n';
  return out;
}

/// Detects the header kind of a JSONL document ("aqlab-derivation" or
/// "aqlab-trace").
inline std::string jsonl_format(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line))
    throw error(errc::format_error, "FormatError: empty document");
  json header = json::parse(line, nullptr, false);
  if (header.is_discarded() || !header.contains("format"))
    throw error(errc::format_error, "FormatError: missing header line");
  return header["format"].get<std::string>();
}

inline Derivation derivation_from_jsonl(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw error(errc::format_error, "FormatError: empty document");
  json header = json::parse(line, nullptr, false);
  if (header.is_discarded() || header.value("format", "") != "aqlab-derivation")
    throw error(errc::format_error, "FormatError: not an aqlab-derivation document");
  Derivation d;
  d.goal.lhs = parse_aq(header.at("goal").at("lhs").get<std::string>());
  d.goal.rhs = parse_aq(header.at("goal").at("rhs").get<std::string>());
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("step"))
      throw error(errc::format_error,
                  "FormatError: line " + std::to_string(lineno) + " is not a step");
    d.steps.push_back(io_detail::step_from_json(j["step"]));
  }
  return d;
}

inline RewriteTrace trace_from_jsonl(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw error(errc::format_error, "FormatError: empty document");
  json header = json::parse(line, nullptr, false);
  if (header.is_discarded() || header.value("format", "") != "aqlab-trace")
    throw error(errc::format_error, "FormatError: not an aqlab-trace document");
  RewriteTrace t;
  t.start = parse_aq(header.at("start").get<std::string>());
  bool closed = false;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded())
      throw error(errc::format_error, "FormatError: bad JSON on line " + std::to_string(lineno));
    if (j.contains("normal_form")) {
      t.normal_form = parse_aq(j["normal_form"].get<std::string>());
      closed = true;
      break;
    }
    if (!j.contains("step"))
      throw error(errc::format_error,
                  "FormatError: line " + std::to_string(lineno) + " is not a step");
    t.steps.push_back(io_detail::trace_step_from_json(j["step"]));
  }
  if (!closed) throw error(errc::format_error, "FormatError: trace lacks a normal_form line");
  return t;
}

}  // namespace aqlab::fspec
