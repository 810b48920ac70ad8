#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aqlab/config.hpp"
#include "aqlab/fspec_io.hpp"
#include "aqlab/isomorphism.hpp"
#include "aqlab/json_io.hpp"
#include "aqlab/paradox.hpp"

namespace aqlab::cli {

namespace cli_detail {

inline std::string read_all(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// '-' means stdin; used for every term / document argument.
inline std::string slurp_arg(const std::string& arg, std::istream& in) {
  if (arg != "-") return arg;
  std::string text = read_all(in);
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  return text;
}

inline sem::Backend backend_by_name(const std::string& name, const std::string& sort) {
  sem::BackendName n;
  if (name == "decimal") n = sem::BackendName::decimal;
  else if (name == "peano") n = sem::BackendName::peano;
  else if (name == "eqc") n = sem::BackendName::eqc;
  else if (name == "signed") n = sem::BackendName::signed_int;
  else if (name == "ordinal") n = sem::BackendName::ordinal;
  else throw CLI::ValidationError("--backend", "unknown backend '" + name + "'");
  switch (n) {
    case sem::BackendName::peano:
    case sem::BackendName::ordinal: return sem::Backend::make(n, sem::Sort::nat);
    case sem::BackendName::eqc:
    case sem::BackendName::signed_int: return sem::Backend::make(n, sem::Sort::int_);
    default: return sem::Backend::make(n, sort == "nat" ? sem::Sort::nat : sem::Sort::int_);
  }
}

inline json trace_steps_json(const paradox::ReasoningTrace& trace) {
  json steps = json::array();
  for (const auto& s : trace.steps) {
    json j{{"lhs", s.claim.lhs.raw},
           {"eqsym", paradox::eq_symbol(s.claim.level)},
           {"rhs", s.claim.rhs.raw},
           {"rule", s.claim.raw_rule},
           {"decision", s.decision == paradox::Decision::admitted   ? "admitted"
                        : s.decision == paradox::Decision::rejected ? "rejected"
                                                                    : "warned"}};
    if (!s.note.empty()) j["note"] = s.note;
    steps.push_back(j);
  }
  return steps;
}

}  // namespace cli_detail

/// Runs one command. Returns 0 on success, 1 when the domain says no (errors,
/// false verdicts, underivable goals), 2 on usage errors.
inline int dispatch(const std::vector<std::string>& args, std::istream& in = std::cin,
                    std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"aqlab: signs, arithmetical quantities, and the sum splitting paradox"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "configuration file (key=value); also $AQLAB_CONFIG");

  std::string format = "text";
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  // parse
  auto* cmd_parse = app.add_subcommand("parse", "parse a sign into an AQ");
  std::string parse_term;
  cmd_parse->add_option("term", parse_term, "sign to parse ('-' for stdin)")->required();

  // eq
  auto* cmd_eq = app.add_subcommand("eq", "compare two signs at a chosen equality level");
  std::string eq_level = "aq";
  std::string eq_a, eq_b;
  cmd_eq->add_option("--level", eq_level, "sign | aq | aq-bp | value")
      ->check(CLI::IsMember({"sign", "aq", "aq-bp", "value"}))->capture_default_str();
  cmd_eq->add_option("lhs", eq_a)->required();
  cmd_eq->add_option("rhs", eq_b)->required();

  // eval
  auto* cmd_eval = app.add_subcommand("eval", "evaluate a closed AQ in a backend");
  std::string eval_backend = "decimal";
  std::string eval_sort = "int";
  std::string eval_term;
  cmd_eval->add_option("--backend", eval_backend, "decimal | peano | eqc | signed | ordinal")
      ->capture_default_str();
  cmd_eval->add_option("--sort", eval_sort, "nat | int (decimal backend only)")
      ->check(CLI::IsMember({"nat", "int"}))->capture_default_str();
  cmd_eval->add_option("term", eval_term)->required();

  // normalize
  auto* cmd_norm = app.add_subcommand("normalize", "rewrite a closed AQ to its Z_d normal form");
  bool norm_trace = false;
  bool norm_pure = false;
  std::string norm_term;
  cmd_norm->add_flag("--trace", norm_trace, "emit the rewrite trace as line-oriented JSON");
  cmd_norm->add_flag("--axiom-pure", norm_pure, "expand column additions into +1 steps");
  cmd_norm->add_option("term", norm_term)->required();

  // prove
  auto* cmd_prove = app.add_subcommand("prove", "derive a closed equation from Tables 1/2");
  bool prove_trace = false;
  std::vector<std::string> prove_args;
  cmd_prove->add_flag("--trace", prove_trace, "emit the derivation as line-oriented JSON");
  cmd_prove->add_option("equation", prove_args, "\"LHS = RHS\" or two terms LHS RHS")
      ->expected(1, 2)->required();

  // check
  auto* cmd_check = app.add_subcommand("check", "verify a derivation or trace document");
  std::string check_file = "-";
  cmd_check->add_option("file", check_file, "JSONL document ('-' for stdin)");

  // split
  auto* cmd_split = app.add_subcommand("split", "apply a sumterm splitting operator");
  std::string split_side = "left";
  std::string split_term;
  cmd_split->add_option("--side", split_side, "left | right")
      ->check(CLI::IsMember({"left", "right"}))->capture_default_str();
  cmd_split->add_option("term", split_term)->required();

  // summand
  auto* cmd_summand = app.add_subcommand("summand", "k-th summand / length of a poly-infix sum");
  std::size_t summand_k = 0;
  bool summand_len = false;
  std::string summand_term;
  cmd_summand->add_option("-k,--index", summand_k, "1-based summand index");
  cmd_summand->add_flag("--length", summand_len, "print the arity instead");
  cmd_summand->add_option("term", summand_term)->required();

  // subst
  auto* cmd_subst = app.add_subcommand("subst", "substitution [replacement/var] term");
  std::string subst_var, subst_repl, subst_term;
  cmd_subst->add_option("var", subst_var)->required();
  cmd_subst->add_option("replacement", subst_repl)->required();
  cmd_subst->add_option("term", subst_term)->required();

  // let
  auto* cmd_let = app.add_subcommand("let", "let var = binding in body");
  std::string let_var, let_binding, let_body;
  bool let_unit = false;
  cmd_let->add_option("var", let_var)->required();
  cmd_let->add_option("binding", let_binding)->required();
  cmd_let->add_option("body", let_body)->required();
  cmd_let->add_flag("--unit", let_unit, "treat the binding as a bracketed unit");

  // tuple
  auto* cmd_tuple = app.add_subcommand("tuple", "check a sumtuple plus(a,b;c) for validity");
  std::string tuple_text;
  cmd_tuple->add_option("tuple", tuple_text)->required();

  // iso
  auto* cmd_iso = app.add_subcommand("iso", "desk-scale isomorphism check between two backends");
  std::string iso_b1, iso_b2;
  std::uint64_t iso_bound = 16;
  bool iso_full = false;
  std::string iso_sort = "";
  cmd_iso->add_option("backend1", iso_b1)->required();
  cmd_iso->add_option("backend2", iso_b2)->required();
  cmd_iso->add_option("--bound", iso_bound, "magnitude bound")->capture_default_str();
  cmd_iso->add_flag("--full", iso_full, "print one line per checked identity");
  cmd_iso->add_option("--sort", iso_sort, "nat | int (when both backends are decimal)");

  // paradox
  auto* cmd_paradox = app.add_subcommand("paradox", "run the sum splitting script under a policy");
  std::string paradox_policy = "naive";
  std::string paradox_script;
  bool paradox_annotated = false;
  cmd_paradox->add_option("--policy", paradox_policy,
                          "naive | sumterm | foundational | pragmatic | no-split | fixed-signature")
      ->capture_default_str();
  cmd_paradox->add_option("--script", paradox_script, "script file ('-' for stdin)");
  cmd_paradox->add_flag("--trace", paradox_annotated, "always print the annotated step list");

  // regress
  auto* cmd_regress = app.add_subcommand("regress", "the counting-operator regress report");
  bool no_split = false, no_bp = false, no_sp = false;
  cmd_regress->add_flag("--no-split", no_split, "disable l_s/r_s");
  cmd_regress->add_flag("--no-bp", no_bp, "disable #_bp");
  cmd_regress->add_flag("--no-sp", no_sp, "disable #_sp");

  // allow --format/--config either before or after the subcommand name
  for (auto* sc : app.get_subcommands([](const CLI::App*) { return true; })) sc->fallthrough();

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("aqlab");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const bool as_json = format == "json";

  try {
    Config cfg = resolve_config(config_path);

    if (*cmd_parse) {
      BracketedAQ b = parse(cli_detail::slurp_arg(parse_term, in));
      if (as_json) out << bracketed_to_json(b).dump() << "\n";
      else out << render_text(b.aq) << "\n";
      return 0;
    }

    if (*cmd_eq) {
      std::string a = cli_detail::slurp_arg(eq_a, in);
      std::string b = eq_b;
      bool equal = false;
      if (eq_level == "sign") equal = Sign(a) == Sign(b);
      else if (eq_level == "aq") equal = eq_aq(parse(a).aq, parse(b).aq);
      else if (eq_level == "aq-bp") equal = eq_aq_bp(parse(a), parse(b));
      else
        equal = sem::evaluate_decimal(parse(a).aq, cfg) == sem::evaluate_decimal(parse(b).aq, cfg);
      if (as_json) out << json{{"level", eq_level}, {"equal", equal}}.dump() << "\n";
      else out << (equal ? "true" : "false") << "\n";
      return equal ? 0 : 1;
    }

    if (*cmd_eval) {
      sem::Backend b = cli_detail::backend_by_name(eval_backend, eval_sort);
      sem::Value v = sem::evaluate(parse(cli_detail::slurp_arg(eval_term, in)).aq, b, cfg);
      if (as_json)
        out << json{{"backend", eval_backend}, {"value", sem::value_to_string(v, cfg)}}.dump()
            << "\n";
      else out << sem::value_to_string(v, cfg) << "\n";
      return 0;
    }

    if (*cmd_norm) {
      fspec::NormalizeOptions opts;
      opts.axiom_pure = norm_pure;
      fspec::RewriteTrace t = fspec::normalize(parse(cli_detail::slurp_arg(norm_term, in)).aq, opts);
      if (norm_trace) {
        out << fspec::trace_to_jsonl(t);
      } else if (as_json) {
        out << json{{"normal_form", render_text(t.normal_form)}, {"steps", t.steps.size()}}.dump()
            << "\n";
      } else {
        out << render_text(t.normal_form) << "\n";
      }
      return 0;
    }

    if (*cmd_prove) {
      fspec::Equation goal;
      if (prove_args.size() == 2) {
        goal.lhs = parse(cli_detail::slurp_arg(prove_args[0], in)).aq;
        goal.rhs = parse(prove_args[1]).aq;
      } else {
        std::string text = cli_detail::slurp_arg(prove_args[0], in);
        paradox::EqLevel lvl{};
        std::size_t sym_len = 0;
        std::size_t at = paradox::script_detail::find_eqsym(text, lvl, sym_len);
        if (at == std::string::npos || lvl != paradox::EqLevel::value)
          throw error(errc::parse_error, "ParseError: expected an equation LHS = RHS");
        goal.lhs = parse(text.substr(0, at)).aq;
        goal.rhs = parse(text.substr(at + sym_len)).aq;
      }
      fspec::ProveResult r = fspec::prove(goal, cfg);
      if (std::holds_alternative<fspec::Derivation>(r)) {
        const auto& d = std::get<fspec::Derivation>(r);
        if (prove_trace) out << fspec::derivation_to_jsonl(d);
        else if (as_json)
          out << json{{"derivable", true}, {"steps", d.steps.size()}}.dump() << "\n";
        else out << "derivable (" << d.steps.size() << " steps)\n";
        return 0;
      }
      const auto& nd = std::get<fspec::NotDerivable>(r);
      if (as_json)
        out << json{{"derivable", false},
                    {"lhs_normal_form", render_text(nd.lhs_normal_form)},
                    {"rhs_normal_form", render_text(nd.rhs_normal_form)}}.dump()
            << "\n";
      else
        out << "not derivable: distinct normal forms " << render_text(nd.lhs_normal_form)
            << " vs " << render_text(nd.rhs_normal_form) << "\n";
      return 1;
    }

    if (*cmd_check) {
      std::string doc;
      if (check_file == "-") {
        doc = cli_detail::read_all(in);
      } else {
        std::ifstream f(check_file);
        if (!f) throw error(errc::format_error, "FormatError: cannot open " + check_file);
        doc = cli_detail::read_all(f);
      }
      const std::string kind = fspec::jsonl_format(doc);
      if (kind == "aqlab-derivation") {
        fspec::Derivation d = fspec::derivation_from_jsonl(doc);
        fspec::CheckResult r = fspec::check(d);
        if (as_json)
          out << json{{"valid", r.ok}, {"message", r.message}}.dump() << "\n";
        else out << (r.ok ? "valid" : "invalid: " + r.message) << "\n";
        return r.ok ? 0 : 1;
      }
      if (kind == "aqlab-trace") {
        fspec::RewriteTrace t = fspec::trace_from_jsonl(doc);
        std::string why;
        bool ok = fspec::replay(t, &why);
        if (as_json) out << json{{"valid", ok}, {"message", why}}.dump() << "\n";
        else out << (ok ? "valid" : "invalid: " + why) << "\n";
        return ok ? 0 : 1;
      }
      throw error(errc::format_error, "FormatError: unknown document format '" + kind + "'");
    }

    if (*cmd_split) {
      AQ a = parse(cli_detail::slurp_arg(split_term, in)).aq;
      AQ r = split_side == "left" ? split_left(a) : split_right(a);
      if (as_json) out << aq_to_json(r).dump() << "\n";
      else out << render_text(r) << "\n";
      return 0;
    }

    if (*cmd_summand) {
      AQ a = parse(cli_detail::slurp_arg(summand_term, in)).aq;
      if (summand_len) {
        out << length(a) << "\n";
        return 0;
      }
      if (summand_k == 0)
        throw error(errc::index_out_of_range, "IndexOutOfRange: pass -k K (1-based) or --length");
      AQ r = summand(a, summand_k);
      if (as_json) out << aq_to_json(r).dump() << "\n";
      else out << render_text(r) << "\n";
      return 0;
    }

    if (*cmd_subst) {
      AQ body = parse(cli_detail::slurp_arg(subst_term, in)).aq;
      AQ repl = parse(subst_repl).aq;
      AQ r = substitute(body, subst_var, repl);
      if (as_json) out << aq_to_json(r).dump() << "\n";
      else out << render_text(r) << "\n";
      return 0;
    }

    if (*cmd_let) {
      BracketedAQ binding = parse(let_binding);
      AQ body = parse(cli_detail::slurp_arg(let_body, in)).aq;
      bool unit = let_unit || binding.redundancy.count(Path{}) > 0;
      AQ r = let_in(let_var, binding.aq, body, unit);
      if (as_json) out << aq_to_json(r).dump() << "\n";
      else out << render_text(r) << "\n";
      return 0;
    }

    if (*cmd_tuple) {
      Sumtuple t = parse_sumtuple(cli_detail::slurp_arg(tuple_text, in));
      bool ok = sumtuple_valid(t, cfg);
      if (as_json) out << json{{"valid", ok}}.dump() << "\n";
      else out << (ok ? "valid" : "invalid") << "\n";
      return ok ? 0 : 1;
    }

    if (*cmd_iso) {
      sem::Backend b1 = cli_detail::backend_by_name(iso_b1, iso_sort.empty() ? "int" : iso_sort);
      sem::Backend b2 = cli_detail::backend_by_name(iso_b2, iso_sort.empty() ? "int" : iso_sort);
      if (b1.name == sem::BackendName::decimal && b1.sort != b2.sort) b1.sort = b2.sort;
      if (b2.name == sem::BackendName::decimal && b2.sort != b1.sort) b2.sort = b1.sort;
      sem::IsoReport rep = sem::check_isomorphism(b1, b2, iso_bound, cfg, iso_full);
      if (as_json)
        out << json{{"backend1", iso_b1},
                    {"backend2", iso_b2},
                    {"bound", rep.bound},
                    {"ok", rep.ok},
                    {"counterexample", rep.counterexample}}.dump()
            << "\n";
      else out << rep.to_text();
      return rep.ok ? 0 : 1;
    }

    if (*cmd_paradox) {
      auto policy = paradox::Policy::from_name(paradox_policy);
      if (!policy) throw error(errc::domain_error, "DomainError: unknown policy " + paradox_policy);
      paradox::Script script;
      if (paradox_script.empty()) {
        script = paradox::parse_script(paradox::canonical_paradox_script());
      } else if (paradox_script == "-") {
        script = paradox::parse_script(cli_detail::read_all(in));
      } else {
        std::ifstream f(paradox_script);
        if (!f) throw error(errc::format_error, "FormatError: cannot open " + paradox_script);
        script = paradox::parse_script(cli_detail::read_all(f));
      }
      paradox::ReasoningTrace trace = paradox::run_script(script, *policy, cfg);
      if (as_json) {
        out << json{{"policy", paradox_policy},
                    {"steps", cli_detail::trace_steps_json(trace)},
                    {"verdict", trace.verdict_line()}}.dump()
            << "\n";
        return 0;
      }
      bool clean = !trace.steps.empty();
      for (const auto& s : trace.steps)
        if (s.decision != paradox::Decision::admitted) clean = false;
      if (clean && !paradox_annotated) out << paradox::chain_text(trace);
      else out << trace.annotated_text();
      return 0;
    }

    if (*cmd_regress) {
      paradox::RegressReport rep = paradox::regress_report(!no_split, !no_bp, !no_sp, cfg);
      if (as_json) {
        json levels = json::array();
        for (const auto& l : rep.levels)
          levels.push_back(json{{"level", l.name},
                                {"consistent", l.consistent},
                                {"breaker", l.breaker},
                                {"witness", l.witness}});
        out << json{{"levels", levels}, {"resolution", rep.resolution}}.dump() << "\n";
      } else {
        out << rep.to_text();
      }
      return 0;
    }
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "usage error: no subcommand\n";
  return 2;
}

}  // namespace aqlab::cli
