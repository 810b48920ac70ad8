#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "aqlab/fspec_rewrite.hpp"
#include "aqlab/parse.hpp"
#include "aqlab/render.hpp"
#include "aqlab/semantics.hpp"

namespace aqlab::paradox {

// ---------------------------------------------------------------------------
// policies

/// The five solutions of the sum splitting paradox, plus the naive reasoner
/// they dismantle, realized as configurations of one shared step checker.
enum class PolicyMode { naive, sumterm, foundational, pragmatic, no_split, fixed_signature };

struct Policy {
  PolicyMode mode = PolicyMode::naive;
  bool foundational_check = false;  // overrule closed identities via fspec normal forms
  int lint_level = 1;               // pragmatic: 0 silences the lint

  static Policy named(PolicyMode m) {
    Policy p;
    p.mode = m;
    if (m == PolicyMode::foundational) p.foundational_check = true;
    return p;
  }
  static std::optional<Policy> from_name(const std::string& name) {
    if (name == "naive") return named(PolicyMode::naive);
    if (name == "sumterm") return named(PolicyMode::sumterm);
    if (name == "foundational") return named(PolicyMode::foundational);
    if (name == "pragmatic") return named(PolicyMode::pragmatic);
    if (name == "no-split") return named(PolicyMode::no_split);
    if (name == "fixed-signature") return named(PolicyMode::fixed_signature);
    return std::nullopt;
  }
};

// ---------------------------------------------------------------------------
// script terms and claims

/// =, =_AQ, =_AQ^bp in increasing strength.
enum class EqLevel { value, aq, aq_bp };

inline int strength(EqLevel l) { return static_cast<int>(l); }

inline const char* eq_symbol(EqLevel l) {
  switch (l) {
    case EqLevel::value: return "=";
    case EqLevel::aq: return "=_AQ";
    case EqLevel::aq_bp: return "=_AQ^bp";
  }
  return "=";
}

/// A term of the script language: an AQ sign, or one of the meta-operators
/// l_s, r_s (over script terms) and #_bp, #_sp (over raw signs).
struct STerm {
  enum class Kind { leaf, ls, rs, count_bp, count_sp };
  Kind kind = Kind::leaf;
  std::string raw;        // source text, trimmed
  BracketedAQ baq;        // leaf
  std::vector<STerm> child;  // ls/rs
  std::string arg_sign;   // count ops keep the argument as concrete text
};

enum class RuleName { def_ls, def_rs, eval, aq, cong, trans, sym, refl, count, table2 };

inline std::optional<RuleName> rule_from_name(const std::string& s) {
  if (s == "def-ls") return RuleName::def_ls;
  if (s == "def-rs") return RuleName::def_rs;
  if (s == "eval") return RuleName::eval;
  if (s == "aq") return RuleName::aq;
  if (s == "cong") return RuleName::cong;
  if (s == "trans") return RuleName::trans;
  if (s == "sym") return RuleName::sym;
  if (s == "refl") return RuleName::refl;
  if (s == "count") return RuleName::count;
  if (s == "table2") return RuleName::table2;
  return std::nullopt;
}

struct Claim {
  STerm lhs;
  STerm rhs;
  EqLevel level = EqLevel::value;
  RuleName rule = RuleName::eval;
  std::string raw_rule;

  std::string render() const {
    return lhs.raw + " " + eq_symbol(level) + " " + rhs.raw;
  }
  std::string render_with_rule() const { return render() + " BY " + raw_rule; }
};

struct Script {
  std::vector<Claim> claims;
};

// ---------------------------------------------------------------------------
// script parsing

namespace script_detail {

inline std::string trim(std::string_view s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string_view::npos) return {};
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(a, b - a + 1));
}

inline bool wrapped_call(const std::string& s, const std::string& head, std::string& inner) {
  if (s.size() < head.size() + 2 || s.compare(0, head.size(), head) != 0) return false;
  if (s[head.size()] != '(' || s.back() != ')') return false;
  int depth = 0;
  for (std::size_t i = head.size(); i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    else if (s[i] == ')') {
      --depth;
      if (depth == 0 && i + 1 != s.size()) return false;  // closes before the end
    }
  }
  if (depth != 0) return false;
  inner = s.substr(head.size() + 1, s.size() - head.size() - 2);
  return true;
}

inline STerm parse_sterm(const std::string& raw_in) {
  STerm t;
  t.raw = trim(raw_in);
  std::string inner;
  if (wrapped_call(t.raw, "l_s", inner) || wrapped_call(t.raw, "r_s", inner)) {
    t.kind = t.raw[0] == 'l' ? STerm::Kind::ls : STerm::Kind::rs;
    t.child.push_back(parse_sterm(inner));
    return t;
  }
  if (wrapped_call(t.raw, "#_bp", inner) || wrapped_call(t.raw, "#_sp", inner)) {
    t.kind = t.raw[2] == 'b' ? STerm::Kind::count_bp : STerm::Kind::count_sp;
    t.arg_sign = inner;  // concrete sign: spacing and brackets stay significant
    return t;
  }
  t.kind = STerm::Kind::leaf;
  t.baq = aqlab::parse(t.raw);
  return t;
}

/// Finds the claim's equality symbol: the first '=' at bracket depth 0 that
/// is not the binder of a let-construct.
inline std::size_t find_eqsym(const std::string& s, EqLevel& level, std::size_t& sym_len) {
  int depth = 0;
  int let_pending = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(') ++depth;
    else if (c == ')') --depth;
    else if (detail::is_letter(c)) {
      std::size_t j = i;
      while (j < s.size() && detail::is_letter(s[j])) ++j;
      std::string word = s.substr(i, j - i);
      if (word == "let") ++let_pending;
      else if (word == "in" && let_pending > 0) --let_pending;
      i = j - 1;
    } else if (c == '=' && depth == 0) {
      if (let_pending > 0) continue;  // the '=' of a let binder
      if (s.compare(i, 7, "=_AQ^bp") == 0) {
        level = EqLevel::aq_bp;
        sym_len = 7;
      } else if (s.compare(i, 4, "=_AQ") == 0) {
        level = EqLevel::aq;
        sym_len = 4;
      } else {
        level = EqLevel::value;
        sym_len = 1;
      }
      return i;
    }
  }
  return std::string::npos;
}

}  // namespace script_detail

/// Script grammar: one claim per line, `<lhs> <eqsym> <rhs> BY <rule>` with
/// eqsym in {=, =_AQ, =_AQ^bp}; '#' starts a comment.
inline Script parse_script(std::string_view text) {
  Script script;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = script_detail::trim(line);
    if (t.empty()) continue;
    if (t[0] == '#' && t.compare(0, 2, "#_") != 0) continue;  // comment, not a counting op
    auto err = [&](const std::string& why) {
      return error(errc::parse_error,
                   "ParseError: script line " + std::to_string(lineno) + ": " + why);
    };
    std::size_t by = t.rfind(" BY ");
    if (by == std::string::npos) throw err("missing ' BY <rule>'");
    std::string rule_str = script_detail::trim(t.substr(by + 4));
    auto rule = rule_from_name(rule_str);
    if (!rule) throw err("unknown rule '" + rule_str + "'");
    std::string content = t.substr(0, by);
    EqLevel level = EqLevel::value;
    std::size_t sym_len = 0;
    std::size_t at = script_detail::find_eqsym(content, level, sym_len);
    if (at == std::string::npos) throw err("missing equality symbol");
    Claim c;
    c.lhs = script_detail::parse_sterm(content.substr(0, at));
    c.rhs = script_detail::parse_sterm(content.substr(at + sym_len));
    c.level = level;
    c.rule = *rule;
    c.raw_rule = rule_str;
    script.claims.push_back(std::move(c));
  }
  return script;
}

// ---------------------------------------------------------------------------
// reasoning

enum class Decision { admitted, rejected, warned };

struct StepOutcome {
  Claim claim;
  Decision decision = Decision::admitted;
  std::string note;  // rejection reason or lint text

  bool usable() const { return decision != Decision::rejected; }
};

struct ReasoningTrace {
  enum class Verdict { consistent, contradiction, step_rejected };

  std::vector<StepOutcome> steps;
  Verdict verdict = Verdict::consistent;
  std::string verdict_detail;
  std::size_t first_rejected = 0;  // 1-based, when verdict == step_rejected

  bool consistent() const { return verdict != Verdict::contradiction; }

  std::string verdict_line() const {
    switch (verdict) {
      case Verdict::consistent: return "verdict: consistent";
      case Verdict::contradiction: return "verdict: contradiction detected: " + verdict_detail;
      case Verdict::step_rejected:
        return "verdict: step " + std::to_string(first_rejected) + " rejected: " + verdict_detail;
    }
    return "";
  }

  std::string annotated_text() const {
    std::string out;
    for (const auto& s : steps) {
      out += s.claim.render_with_rule();
      switch (s.decision) {
        case Decision::admitted: out += " -- admitted"; break;
        case Decision::warned: out += " -- warned: " + s.note; break;
        case Decision::rejected: out += " -- rejected: " + s.note; break;
      }
      out += '\n';
    }
    out += verdict_line();
    out += '\n';
    return out;
  }
};

namespace reasoner_detail {

inline std::string redundancy_key(const BracketedAQ& b) {
  std::string k;
  for (const auto& [path, count] : b.redundancy) {
    k += '[';
    for (int i : path) k += std::to_string(i) + ',';
    k += "]:" + std::to_string(count) + ";";
  }
  return k;
}

/// Canonical identity of a script term: leaf terms up to =_AQ^bp (brackets
/// significant, spacing not), counting arguments as exact signs.
inline std::string sterm_key(const STerm& t) {
  switch (t.kind) {
    case STerm::Kind::leaf:
      return "L:" + render_text(t.baq.aq) + "|" + redundancy_key(t.baq);
    case STerm::Kind::ls: return "ls(" + sterm_key(t.child[0]) + ")";
    case STerm::Kind::rs: return "rs(" + sterm_key(t.child[0]) + ")";
    case STerm::Kind::count_bp: return "bp:" + t.arg_sign;
    case STerm::Kind::count_sp: return "sp:" + t.arg_sign;
  }
  return "?";
}

inline bool sterm_identical(const STerm& a, const STerm& b) {
  return sterm_key(a) == sterm_key(b);
}

inline bool mentions_split(const STerm& t) {
  if (t.kind == STerm::Kind::ls || t.kind == STerm::Kind::rs) return true;
  for (const auto& c : t.child)
    if (mentions_split(c)) return true;
  return false;
}

/// fixed-signature admits digits, +, -, brackets and spacing; anything else
/// (variables, keywords, split and counting operators) is out.
inline bool within_fixed_signature(const STerm& t) {
  if (t.kind != STerm::Kind::leaf) return false;
  for (char c : t.raw)
    if (!(detail::is_digit(c) || c == '+' || c == '-' || c == '(' || c == ')' ||
          detail::is_space_char(c)))
      return false;
  return true;
}

inline bool sterm_closed(const STerm& t) {
  switch (t.kind) {
    case STerm::Kind::leaf: return t.baq.aq.is_closed();
    case STerm::Kind::ls:
    case STerm::Kind::rs: return sterm_closed(t.child[0]);
    default: return true;
  }
}

/// The AQ a script term stands for (splits applied, counts computed).
inline AQ sterm_aq(const STerm& t) {
  switch (t.kind) {
    case STerm::Kind::leaf: return t.baq.aq;
    case STerm::Kind::ls: return split_left(sterm_aq(t.child[0]));
    case STerm::Kind::rs: return split_right(sterm_aq(t.child[0]));
    case STerm::Kind::count_bp:
      return AQ::constant(std::to_string(count_bracket_pairs(Sign(t.arg_sign))));
    case STerm::Kind::count_sp:
      return AQ::constant(std::to_string(count_spaces(Sign(t.arg_sign))));
  }
  throw error(errc::domain_error, "unreachable");
}

inline bool pure_arithmetical(const STerm& t) {
  return t.kind == STerm::Kind::leaf && t.baq.aq.is_closed();
}

}  // namespace reasoner_detail

/// The shared step checker. Claims are checked in order against the policy;
/// admitted (and warned) claims become premises for later congruence,
/// symmetry and transitivity steps.
class Reasoner {
 public:
  explicit Reasoner(Policy policy, const Config& cfg = Config::defaults())
      : policy_(policy), cfg_(cfg) {}

  StepOutcome step(const Claim& claim) {
    StepOutcome out;
    out.claim = claim;
    decide(claim, out);
    if (out.decision != Decision::rejected) {
      // contradiction tolerance with a foundational specification: closed
      // arithmetical identities are checked against Table 1/2 normal forms
      if (foundational_on() && claim.level == EqLevel::value &&
          reasoner_detail::pure_arithmetical(claim.lhs) &&
          reasoner_detail::pure_arithmetical(claim.rhs)) {
        AQ nl = fspec::normalize(claim.lhs.baq.aq).normal_form;
        AQ nr = fspec::normalize(claim.rhs.baq.aq).normal_form;
        if (nl != nr) {
          out.decision = Decision::rejected;
          out.note = "contradicts the foundational specification: normal forms " +
                     render_text(nl) + " vs " + render_text(nr);
          contradiction_ = claim.render();
        }
      }
    }
    outcomes_.push_back(out);
    return out;
  }

  ReasoningTrace run(const Script& script) {
    for (const Claim& c : script.claims) step(c);
    ReasoningTrace trace;
    trace.steps = outcomes_;
    if (!contradiction_.empty()) {
      trace.verdict = ReasoningTrace::Verdict::contradiction;
      trace.verdict_detail = contradiction_;
    } else {
      for (std::size_t i = 0; i < outcomes_.size(); ++i) {
        if (outcomes_[i].decision == Decision::rejected) {
          trace.verdict = ReasoningTrace::Verdict::step_rejected;
          trace.first_rejected = i + 1;
          trace.verdict_detail = outcomes_[i].note;
          break;
        }
      }
    }
    return trace;
  }

  const std::vector<StepOutcome>& outcomes() const { return outcomes_; }

 private:
  Policy policy_;
  Config cfg_;
  std::vector<StepOutcome> outcomes_;
  std::string contradiction_;

  bool foundational_on() const {
    return policy_.mode == PolicyMode::foundational || policy_.foundational_check;
  }

  void reject(StepOutcome& out, std::string why) {
    out.decision = Decision::rejected;
    out.note = std::move(why);
  }

  // -- premise lookup -------------------------------------------------------

  /// Finds an admitted claim equating the two terms, returning its level
  /// (strongest match wins). Orientation is ignored: =, =_AQ, =_AQ^bp are
  /// symmetric.
  std::optional<EqLevel> find_premise(const STerm& a, const STerm& b) const {
    using reasoner_detail::sterm_identical;
    std::optional<EqLevel> best;
    for (const auto& o : outcomes_) {
      if (!o.usable()) continue;
      const Claim& c = o.claim;
      bool fwd = sterm_identical(c.lhs, a) && sterm_identical(c.rhs, b);
      bool bwd = sterm_identical(c.lhs, b) && sterm_identical(c.rhs, a);
      if (!fwd && !bwd) continue;
      if (!best || strength(c.level) > strength(*best)) best = c.level;
    }
    return best;
  }

  /// Undirected path search over admitted claims of at least the given
  /// strength; returns the edge sequence as (claim index, used-forward).
  std::optional<std::vector<std::pair<std::size_t, bool>>> find_chain(const STerm& from,
                                                                      const STerm& to,
                                                                      EqLevel floor) const {
    using reasoner_detail::sterm_key;
    const std::string start = sterm_key(from);
    const std::string goal = sterm_key(to);
    std::map<std::string, std::pair<std::size_t, bool>> via;  // node -> incoming edge
    std::map<std::string, std::string> prev;
    std::deque<std::string> queue{start};
    std::map<std::string, bool> seen{{start, true}};
    while (!queue.empty()) {
      std::string node = queue.front();
      queue.pop_front();
      if (node == goal && node != start) break;
      for (std::size_t i = 0; i < outcomes_.size(); ++i) {
        const auto& o = outcomes_[i];
        if (!o.usable()) continue;
        if (strength(o.claim.level) < strength(floor)) continue;
        std::string l = sterm_key(o.claim.lhs);
        std::string r = sterm_key(o.claim.rhs);
        for (auto [src, dst, fwd] : {std::tuple{l, r, true}, std::tuple{r, l, false}}) {
          if (src != node || seen.count(dst)) continue;
          seen[dst] = true;
          via[dst] = {i, fwd};
          prev[dst] = node;
          queue.push_back(dst);
        }
      }
    }
    if (start == goal) return std::vector<std::pair<std::size_t, bool>>{};
    if (!seen.count(goal)) return std::nullopt;
    std::vector<std::pair<std::size_t, bool>> edges;
    for (std::string node = goal; node != start; node = prev[node]) edges.push_back(via[node]);
    std::reverse(edges.begin(), edges.end());
    return edges;
  }

  // -- the decision procedure ----------------------------------------------

  void decide(const Claim& claim, StepOutcome& out) {
    using namespace reasoner_detail;

    // signature gates
    if (policy_.mode == PolicyMode::no_split &&
        (mentions_split(claim.lhs) || mentions_split(claim.rhs))) {
      reject(out, "SignatureViolation: sum splitting operators are not functions here");
      return;
    }
    if (policy_.mode == PolicyMode::fixed_signature &&
        (!within_fixed_signature(claim.lhs) || !within_fixed_signature(claim.rhs))) {
      reject(out, "SignatureViolation: symbol outside the fixed signature {digits, +, -, brackets}");
      return;
    }

    switch (claim.rule) {
      case RuleName::refl:
        if (sterm_identical(claim.lhs, claim.rhs)) return;
        reject(out, "sides are not identical");
        return;

      case RuleName::sym: {
        auto lvl = find_premise(claim.rhs, claim.lhs);
        if (lvl && strength(*lvl) >= strength(claim.level)) return;
        reject(out, "no admitted claim to flip");
        return;
      }

      case RuleName::trans: {
        auto chain = find_chain(claim.lhs, claim.rhs, claim.level);
        if (chain && !chain->empty()) return;
        reject(out, "no admitted chain connects the sides");
        return;
      }

      case RuleName::eval: {
        if (claim.level != EqLevel::value) {
          reject(out, "evaluation justifies semantic equality (=) only");
          return;
        }
        if (!sterm_closed(claim.lhs) || !sterm_closed(claim.rhs)) {
          reject(out, "open term cannot be evaluated");
          return;
        }
        DecimalValue l = sem::evaluate_decimal(sterm_aq(claim.lhs), cfg_);
        DecimalValue r = sem::evaluate_decimal(sterm_aq(claim.rhs), cfg_);
        if (l == r) return;
        reject(out, "values differ: " + l.to_string() + " vs " + r.to_string());
        return;
      }

      case RuleName::table2: {
        if (claim.level != EqLevel::value) {
          reject(out, "the foundational specification proves semantic equality (=) only");
          return;
        }
        if (!pure_arithmetical(claim.lhs) || !pure_arithmetical(claim.rhs)) {
          reject(out, "Table 2 speaks about the arithmetical signature only");
          return;
        }
        AQ nl = fspec::normalize(claim.lhs.baq.aq).normal_form;
        AQ nr = fspec::normalize(claim.rhs.baq.aq).normal_form;
        if (nl == nr) return;
        reject(out, "distinct normal forms: " + render_text(nl) + " vs " + render_text(nr));
        return;
      }

      case RuleName::aq: {
        if (claim.lhs.kind != STerm::Kind::leaf || claim.rhs.kind != STerm::Kind::leaf) {
          reject(out, "aq compares plain AQ signs");
          return;
        }
        if (claim.level == EqLevel::aq_bp) {
          if (eq_aq_bp(claim.lhs.baq, claim.rhs.baq)) return;
          reject(out, claim.lhs.raw + " not =_AQ^bp " + claim.rhs.raw);
          return;
        }
        if (eq_aq(claim.lhs.baq.aq, claim.rhs.baq.aq)) return;
        reject(out, claim.lhs.raw + " not =_AQ " + claim.rhs.raw);
        return;
      }

      case RuleName::count: {
        if (claim.level != EqLevel::value) {
          reject(out, "counting justifies semantic equality (=) only");
          return;
        }
        const bool lhs_count = claim.lhs.kind == STerm::Kind::count_bp ||
                               claim.lhs.kind == STerm::Kind::count_sp;
        const STerm& op = lhs_count ? claim.lhs : claim.rhs;
        const STerm& num = lhs_count ? claim.rhs : claim.lhs;
        if ((op.kind != STerm::Kind::count_bp && op.kind != STerm::Kind::count_sp) ||
            !sterm_closed(num)) {
          reject(out, "count equates a counting operator application with a value");
          return;
        }
        DecimalValue counted = sem::evaluate_decimal(sterm_aq(op), cfg_);
        DecimalValue stated = sem::evaluate_decimal(sterm_aq(num), cfg_);
        if (counted == stated) return;
        reject(out, "the count is " + counted.to_string() + ", not " + stated.to_string());
        return;
      }

      case RuleName::def_ls:
      case RuleName::def_rs: {
        const bool left = claim.rule == RuleName::def_ls;
        auto applied = [&](const STerm& t) {
          return t.kind == (left ? STerm::Kind::ls : STerm::Kind::rs);
        };
        const STerm* app = applied(claim.lhs) ? &claim.lhs : applied(claim.rhs) ? &claim.rhs : nullptr;
        const STerm* other = app == &claim.lhs ? &claim.rhs : &claim.lhs;
        if (!app) {
          reject(out, std::string("no ") + (left ? "l_s" : "r_s") + " application in the claim");
          return;
        }
        if (claim.level == EqLevel::aq_bp) {
          reject(out, "splitting is defined up to =_AQ, not =_AQ^bp");
          return;
        }
        AQ split = left ? split_left(sterm_aq(app->child[0]))
                        : split_right(sterm_aq(app->child[0]));
        if (eq_aq(split, sterm_aq(*other))) return;
        reject(out, "the definition gives " + render_text(split) + ", not " + other->raw);
        return;
      }

      case RuleName::cong: {
        if (claim.lhs.kind == STerm::Kind::leaf || claim.lhs.kind != claim.rhs.kind) {
          reject(out, "congruence needs the same operator on both sides");
          return;
        }
        const bool is_split =
            claim.lhs.kind == STerm::Kind::ls || claim.lhs.kind == STerm::Kind::rs;
        std::optional<EqLevel> premise;
        std::string arg_l, arg_r;
        if (is_split) {
          premise = find_premise(claim.lhs.child[0], claim.rhs.child[0]);
          arg_l = claim.lhs.child[0].raw;
          arg_r = claim.rhs.child[0].raw;
        } else {
          // counting operators: premises are claims about the argument signs
          STerm la, ra;
          la.kind = ra.kind = STerm::Kind::leaf;
          la.raw = claim.lhs.arg_sign;
          ra.raw = claim.rhs.arg_sign;
          try {
            la.baq = aqlab::parse(la.raw);
            ra.baq = aqlab::parse(ra.raw);
          } catch (const error&) {
            reject(out, "counting arguments are not AQ signs; nothing equates them");
            return;
          }
          premise = find_premise(la, ra);
          arg_l = la.raw;
          arg_r = ra.raw;
        }
        if (!premise) {
          reject(out, "no admitted claim equates the arguments");
          return;
        }
        if (policy_.mode == PolicyMode::sumterm) {
          // congruence under these operators holds for =_AQ premises only
          if (is_split && strength(*premise) < strength(EqLevel::aq)) {
            reject(out, arg_l + " not =_AQ " + arg_r);
            return;
          }
          if (claim.lhs.kind == STerm::Kind::count_bp &&
              strength(*premise) < strength(EqLevel::aq_bp)) {
            reject(out, arg_l + " not =_AQ^bp " + arg_r);
            return;
          }
          if (claim.lhs.kind == STerm::Kind::count_sp) {
            reject(out, "no AQ-level equality is congruent for #_sp");
            return;
          }
          return;
        }
        if (policy_.mode == PolicyMode::pragmatic && policy_.lint_level > 0 && is_split &&
            strength(*premise) < strength(EqLevel::aq)) {
          out.decision = Decision::warned;
          out.note = "equals-for-equals applied at top level to an argument of " +
                     std::string(claim.lhs.kind == STerm::Kind::ls ? "l_s" : "r_s") +
                     " with a merely semantic premise";
          return;
        }
        return;  // naive, foundational, pragmatic-silent: admitted
      }
    }
    reject(out, "unknown rule");
  }
};

/// Single-step checking against a policy, with an explicit list of earlier
/// claims forming the context.
inline StepOutcome check_step(const Claim& claim, const Policy& policy,
                              const std::vector<Claim>& context,
                              const Config& cfg = Config::defaults()) {
  Reasoner r(policy, cfg);
  for (const Claim& c : context) r.step(c);
  return r.step(claim);
}

inline ReasoningTrace run_script(const Script& script, const Policy& policy,
                                 const Config& cfg = Config::defaults()) {
  Reasoner r(policy, cfg);
  return r.run(script);
}

// ---------------------------------------------------------------------------
// canned runs

/// Prop 5.3's script: splitting a sum that was rewritten under semantic
/// equality, concluding 1 = 2.
inline const char* canonical_paradox_script() {
  return "1 = l_s(1+2) BY def-ls\n"
         "1+2 = 2+1 BY eval\n"
         "l_s(1+2) = l_s(2+1) BY cong\n"
         "l_s(2+1) = 2 BY def-ls\n"
         "1 = 2 BY trans\n";
}

inline ReasoningTrace run_paradox(const Policy& policy, const Config& cfg = Config::defaults()) {
  return run_script(parse_script(canonical_paradox_script()), policy, cfg);
}

/// The derivation chain behind the script's final admitted claim, one claim
/// per line with the conclusion last: 1 = l_s(1+2), l_s(1+2) = l_s(2+1),
/// l_s(2+1) = 2, 1 = 2. Empty when the final claim was not admitted.
inline std::string chain_text(const ReasoningTrace& trace) {
  if (trace.steps.empty()) return {};
  const StepOutcome& last = trace.steps.back();
  if (last.decision == Decision::rejected) return {};
  // rebuild the chain over the earlier admitted claims, reusing the trace's
  // own decisions rather than re-running the policy
  std::vector<StepOutcome> prior(trace.steps.begin(), trace.steps.end() - 1);
  std::string out;
  struct Edge {
    std::string a, b;
    const Claim* claim;
  };
  using reasoner_detail::sterm_key;
  std::vector<Edge> edges;
  for (const auto& o : prior)
    if (o.usable()) edges.push_back({sterm_key(o.claim.lhs), sterm_key(o.claim.rhs), &o.claim});
  const std::string start = sterm_key(last.claim.lhs);
  const std::string goal = sterm_key(last.claim.rhs);
  std::map<std::string, std::pair<std::size_t, bool>> via;
  std::map<std::string, std::string> prev;
  std::deque<std::string> queue{start};
  std::map<std::string, bool> seen{{start, true}};
  while (!queue.empty()) {
    std::string node = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < edges.size(); ++i) {
      for (auto [src, dst, fwd] : {std::tuple{edges[i].a, edges[i].b, true},
                                   std::tuple{edges[i].b, edges[i].a, false}}) {
        if (src != node || seen.count(dst)) continue;
        seen[dst] = true;
        via[dst] = {i, fwd};
        prev[dst] = node;
        queue.push_back(dst);
      }
    }
  }
  if (seen.count(goal) && start != goal) {
    std::vector<std::pair<std::size_t, bool>> path;
    for (std::string node = goal; node != start; node = prev[node]) path.push_back(via[node]);
    std::reverse(path.begin(), path.end());
    for (auto [i, fwd] : path) {
      const Claim* c = edges[i].claim;
      out += fwd ? c->lhs.raw + " " + eq_symbol(c->level) + " " + c->rhs.raw
                 : c->rhs.raw + " " + eq_symbol(c->level) + " " + c->lhs.raw;
      out += '\n';
    }
  }
  out += last.claim.render();
  out += '\n';
  return out;
}

enum class CountingOp { bp, sp };

/// The bracket pair counting paradox (and its space-counting sibling) at a
/// chosen equality level. At level aq the bracket variant derives 0 = 1; at
/// level aq_bp its premise 0 =_AQ^bp (0) is rejected, while the space variant
/// re-breaks that level.
inline ReasoningTrace run_bracket_paradox(EqLevel level, CountingOp op = CountingOp::bp,
                                          const Config& cfg = Config::defaults()) {
  const char* sym = eq_symbol(level);
  std::string script;
  if (op == CountingOp::bp) {
    script += "#_bp(0) = 0 BY count\n";
    script += "#_bp((0)) = 1 BY count\n";
    script += std::string("0 ") + sym + " (0) BY aq\n";
    script += "#_bp(0) = #_bp((0)) BY cong\n";
    script += "0 = 1 BY trans\n";
  } else {
    script += "#_sp(1 + 2) = 2 BY count\n";
    script += "#_sp(1+2) = 0 BY count\n";
    script += std::string("1 + 2 ") + sym + " 1+2 BY aq\n";
    script += "#_sp(1 + 2) = #_sp(1+2) BY cong\n";
    script += "2 = 0 BY trans\n";
  }
  Policy p = Policy::named(PolicyMode::naive);
  p.foundational_check = true;  // record the absurdity when it goes through
  return run_script(parse_script(script), p, cfg);
}

// ---------------------------------------------------------------------------
// the regress report

struct RegressReport {
  struct Level {
    std::string name;
    bool consistent = true;
    std::string breaker;
    std::string witness;
  };
  std::vector<Level> levels;
  std::string resolution;

  std::string to_text() const {
    std::string out = "regress report: equality levels vs congruence-breaking operators\n";
    for (const auto& l : levels) {
      out += "level " + l.name + ": ";
      if (l.consistent)
        out += "consistent (no admitted operator distinguishes equal terms)";
      else
        out += "broken by " + l.breaker + " (" + l.witness + ")";
      out += '\n';
    }
    out += "resolution: " + resolution + "\n";
    return out;
  }
};

/// Machine-checked rendition of the infinite-regress argument: each equality
/// level is broken by the counting operator that sees one more notational
/// detail than the level abstracts from.
inline RegressReport regress_report(bool split_enabled = true, bool bp_enabled = true,
                                    bool sp_enabled = true,
                                    const Config& cfg = Config::defaults()) {
  RegressReport rep;

  {
    RegressReport::Level value{"value", true, {}, {}};
    if (split_enabled) {
      AQ x = parse_aq("1+2");
      AQ y = parse_aq("2+1");
      bool same_value =
          sem::evaluate_decimal(x, cfg) == sem::evaluate_decimal(y, cfg);
      AQ lx = split_left(x);
      AQ ly = split_left(y);
      if (same_value && !eq_aq(lx, ly)) {
        value.consistent = false;
        value.breaker = "l_s/r_s";
        value.witness = "1+2 = 2+1 but l_s(1+2) = " + render_text(lx) + " and l_s(2+1) = " +
                        render_text(ly);
      }
    }
    rep.levels.push_back(value);
  }
  {
    RegressReport::Level aq_level{"aq", true, {}, {}};
    if (bp_enabled) {
      BracketedAQ a = parse("0");
      BracketedAQ b = parse("(0)");
      std::size_t ca = count_bracket_pairs(Sign("0"));
      std::size_t cb = count_bracket_pairs(Sign("(0)"));
      if (eq_aq(a.aq, b.aq) && ca != cb) {
        aq_level.consistent = false;
        aq_level.breaker = "#_bp";
        aq_level.witness = "0 =_AQ (0) but #_bp(0) = " + std::to_string(ca) +
                           " and #_bp((0)) = " + std::to_string(cb);
      }
    }
    rep.levels.push_back(aq_level);
  }
  {
    RegressReport::Level bp_level{"aq_bp", true, {}, {}};
    if (sp_enabled) {
      BracketedAQ a = parse("1 + 2");
      BracketedAQ b = parse("1+2");
      std::size_t ca = count_spaces(Sign("1 + 2"));
      std::size_t cb = count_spaces(Sign("1+2"));
      if (eq_aq_bp(a, b) && ca != cb) {
        bp_level.consistent = false;
        bp_level.breaker = "#_sp";
        bp_level.witness = "1 + 2 =_AQ^bp 1+2 but #_sp(1 + 2) = " + std::to_string(ca) +
                           " and #_sp(1+2) = " + std::to_string(cb);
      }
    }
    rep.levels.push_back(bp_level);
  }
  {
    RegressReport::Level sign_level{"sign", true, {}, {}};
    // signs are fully concrete: distinct notations are distinct signs, so no
    // counting operator can break congruence here
    rep.levels.push_back(sign_level);
  }
  rep.resolution =
      "adopt sumterms, and conventionalism/traditionalism on arithmetic signatures: "
      "the counting operators #_bp and #_sp are rejected as signature extensions "
      "rather than answered with ever finer equalities";
  return rep;
}

}  // namespace aqlab::paradox
