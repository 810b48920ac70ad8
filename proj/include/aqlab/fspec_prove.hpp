#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "aqlab/fspec_rewrite.hpp"
#include "aqlab/render.hpp"

namespace aqlab::fspec {

struct Derivation;

/// One step of an equational proof. A step is a little tree: an axiom
/// instance, possibly flipped by sym, possibly transported to a position by
/// cong; refl and trans complete the equational-logic rule set. A carry_cond
/// axiom step carries the sub-derivation of its premise.
struct DStep {
  enum class Kind { axiom, refl, sym, trans, cong };
  Kind kind = Kind::refl;

  AxiomInstance inst;                            // axiom
  std::shared_ptr<const Derivation> premise;     // axiom with id carry_cond
  AQ term = AQ::constant("0");                   // refl
  Path path;                                     // cong
  std::vector<DStep> children;                   // sym: 1, trans: 2, cong: 1

  static DStep axiom_step(AxiomInstance i, std::shared_ptr<const Derivation> prem = nullptr) {
    DStep s;
    s.kind = Kind::axiom;
    s.inst = std::move(i);
    s.premise = std::move(prem);
    return s;
  }
  static DStep refl_step(AQ t) {
    DStep s;
    s.kind = Kind::refl;
    s.term = std::move(t);
    return s;
  }
  static DStep sym_step(DStep inner) {
    DStep s;
    s.kind = Kind::sym;
    s.children.push_back(std::move(inner));
    return s;
  }
  static DStep trans_step(DStep a, DStep b) {
    DStep s;
    s.kind = Kind::trans;
    s.children.push_back(std::move(a));
    s.children.push_back(std::move(b));
    return s;
  }
  static DStep cong_step(Path p, DStep inner) {
    DStep s;
    s.kind = Kind::cong;
    s.path = std::move(p);
    s.children.push_back(std::move(inner));
    return s;
  }
};

/// A proof object: a transitive chain of steps from goal.lhs to goal.rhs.
struct Derivation {
  Equation goal;
  std::vector<DStep> steps;
};

/// The initial-algebra verdict for a false ground equation: the two sides
/// have distinct Z_d normal forms, so they denote provably distinct values.
struct NotDerivable {
  AQ lhs_normal_form = AQ::constant("0");
  AQ rhs_normal_form = AQ::constant("0");
};

using ProveResult = std::variant<Derivation, NotDerivable>;

namespace detail {

/// Sum operands drive the unary expansion cost, so only they are bounded; a
/// constant standing alone (or merely negated) is already a normal form.
inline void enforce_prove_bound(const AQ& a, const std::string& bound,
                                bool inside_sum = false) {
  switch (a.kind()) {
    case AQ::Kind::Const:
      if (inside_sum && a.digits() != "0" && digits::compare(a.digits(), bound) > 0)
        throw error(errc::scale_error, "ScaleError: operand " + a.digits() +
                                           " exceeds the prove bound " + bound);
      return;
    case AQ::Kind::Var: return;
    case AQ::Kind::Neg: enforce_prove_bound(a.child(), bound, inside_sum); return;
    case AQ::Kind::Sum:
      for (const AQ& k : a.children()) enforce_prove_bound(k, bound, true);
      return;
  }
}

inline Derivation trace_to_chain(const RewriteTrace& trace);

inline DStep trace_step_to_dstep(TraceStep s) {
  std::shared_ptr<const Derivation> prem;
  if (s.premise)
    prem = std::make_shared<const Derivation>(trace_to_chain(*s.premise));
  DStep base = DStep::axiom_step(std::move(s.axiom), std::move(prem));
  if (!s.forward) base = DStep::sym_step(std::move(base));
  if (!s.path.empty()) base = DStep::cong_step(std::move(s.path), std::move(base));
  return base;
}

inline Derivation trace_to_chain(const RewriteTrace& trace) {
  Derivation d;
  d.goal = Equation{trace.start, trace.normal_form};
  d.steps.reserve(trace.steps.size());
  for (const TraceStep& s : trace.steps) d.steps.push_back(trace_step_to_dstep(s));
  return d;
}

}  // namespace detail

/// Proves a closed equation from Tables 1/2 by normalizing both sides and
/// splicing the reversed right trace onto the left one (ground Birkhoff
/// completeness). Distinct normal forms mean NotDerivable.
inline ProveResult prove(const Equation& goal, const Config& cfg = Config::defaults()) {
  if (!goal.lhs.is_closed() || !goal.rhs.is_closed())
    throw error(errc::open_term, "OpenTerm: prove requires a closed equation");
  const std::string bound = std::to_string(cfg.prove_bound);
  detail::enforce_prove_bound(goal.lhs, bound);
  detail::enforce_prove_bound(goal.rhs, bound);

  NormalizeOptions opts;
  opts.axiom_pure = true;       // derivations contain Table 1/2 instances only
  opts.record_results = false;  // the chain conversion does not need snapshots
  RewriteTrace left = normalize(goal.lhs, opts);
  RewriteTrace right = normalize(goal.rhs, opts);
  if (left.normal_form != right.normal_form)
    return NotDerivable{left.normal_form, right.normal_form};

  Derivation d;
  d.goal = goal;
  d.steps.reserve(left.steps.size() + right.steps.size());
  for (TraceStep& s : left.steps) d.steps.push_back(detail::trace_step_to_dstep(std::move(s)));
  for (std::size_t i = right.steps.size(); i-- > 0;)
    d.steps.push_back(DStep::sym_step(detail::trace_step_to_dstep(std::move(right.steps[i]))));
  return d;
}

/// Convenience: prove lhs = rhs.
inline ProveResult prove(const AQ& lhs, const AQ& rhs, const Config& cfg = Config::defaults()) {
  return prove(Equation{lhs, rhs}, cfg);
}

struct CheckResult {
  bool ok = true;
  std::size_t failed_step = 0;  // 1-based index of the first failing chain step
  std::string message;

  explicit operator bool() const { return ok; }
};

namespace checker {

/// The independent verifier. It shares nothing with the proof generator: it
/// rebuilds every axiom instance from the bindings by its own reading of
/// Tables 1 and 2 and replays the chain, so a bug in the rewrite engine
/// cannot silently vouch for itself.
struct Judged {
  bool ok = false;
  Equation eq;
  std::string why;
};

inline Judged judge_axiom(const AxiomInstance& inst,
                          const std::shared_ptr<const Derivation>& premise);

inline CheckResult check(const Derivation& d);

/// Judges a context-free step (everything except cong, which needs the
/// enclosing term).
inline Judged judge(const DStep& s) {
  switch (s.kind) {
    case DStep::Kind::axiom: return judge_axiom(s.inst, s.premise);
    case DStep::Kind::refl: return {true, {s.term, s.term}, {}};
    case DStep::Kind::sym: {
      if (s.children.size() != 1) return {false, {}, "sym needs one child"};
      Judged j = judge(s.children[0]);
      if (!j.ok) return j;
      return {true, {j.eq.rhs, j.eq.lhs}, {}};
    }
    case DStep::Kind::trans: {
      if (s.children.size() != 2) return {false, {}, "trans needs two children"};
      Judged a = judge(s.children[0]);
      if (!a.ok) return a;
      Judged b = judge(s.children[1]);
      if (!b.ok) return b;
      if (a.eq.rhs != b.eq.lhs) return {false, {}, "trans middle terms differ"};
      return {true, {a.eq.lhs, b.eq.rhs}, {}};
    }
    case DStep::Kind::cong:
      return {false, {}, "cong is only valid at chain level (needs a context)"};
  }
  return {false, {}, "unknown step kind"};
}

inline Judged judge_axiom(const AxiomInstance& inst,
                          const std::shared_ptr<const Derivation>& premise) {
  const auto& a = inst.args;
  auto bad = [&](const std::string& w) { return Judged{false, {}, w}; };
  auto pos_numeral = [](const AQ& t) { return t.is_const() && t.digits() != "0"; };
  auto digit_in = [](const AQ& t, char lo, char hi) {
    return t.is_const() && t.digits().size() == 1 && t.digits()[0] >= lo && t.digits()[0] <= hi;
  };
  switch (inst.id) {
    case AxiomId::assoc: {
      if (inst.poly) {
        if (a.size() < 3) return bad("poly assoc needs >= 3 terms");
        std::vector<AQ> flat(a.begin(), a.end());
        std::vector<AQ> nested(a.begin(), a.end() - 2);
        nested.push_back(AQ::sum({a[a.size() - 2], a.back()}));
        return {true, {AQ::sum(flat), AQ::sum(nested)}, {}};
      }
      if (a.size() != 3) return bad("assoc needs x,y,z");
      return {true,
              {AQ::sum({AQ::sum({a[0], a[1]}), a[2]}), AQ::sum({a[0], AQ::sum({a[1], a[2]})})},
              {}};
    }
    case AxiomId::comm:
      if (a.size() != 2) return bad("comm needs x,y");
      return {true, {AQ::sum({a[0], a[1]}), AQ::sum({a[1], a[0]})}, {}};
    case AxiomId::add_zero:
      if (a.size() != 1) return bad("add_zero needs x");
      return {true, {AQ::sum({a[0], AQ::constant("0")}), a[0]}, {}};
    case AxiomId::add_opp:
      if (a.size() != 1) return bad("add_opp needs x");
      return {true, {AQ::sum({a[0], AQ::negate(a[0])}), AQ::constant("0")}, {}};
    case AxiomId::double_neg:
      if (a.size() != 1) return bad("double_neg needs x");
      return {true, {AQ::negate(AQ::negate(a[0])), a[0]}, {}};
    case AxiomId::digit_succ: {
      if (a.size() != 1 || !digit_in(a[0], '1', '8')) return bad("digit_succ needs d in 1..8");
      const char d = a[0].digits()[0];
      return {true,
              {AQ::constant(std::string(1, static_cast<char>(d + 1))),
               AQ::sum({a[0], AQ::constant("1")})},
              {}};
    }
    case AxiomId::nine_one:
      if (!a.empty()) return bad("nine_one takes no bindings");
      return {true, {AQ::sum({AQ::constant("9"), AQ::constant("1")}), AQ::constant("10")}, {}};
    case AxiomId::append_succ: {
      if (a.size() != 2 || !pos_numeral(a[0]) || !digit_in(a[1], '0', '8'))
        return bad("append_succ needs sigma in N_d+ and d in 0..8");
      const std::string& sg = a[0].digits();
      const char d = a[1].digits()[0];
      return {true,
              {AQ::sum({AQ::constant(sg + d), AQ::constant("1")}),
               AQ::constant(sg + static_cast<char>(d + 1))},
              {}};
    }
    case AxiomId::carry_cond: {
      if (a.size() != 2 || !pos_numeral(a[0]) || !pos_numeral(a[1]))
        return bad("carry_cond needs sigma, tau in N_d+");
      if (!premise) return bad("carry_cond step lacks its premise sub-derivation");
      Equation needed{AQ::sum({a[0], AQ::constant("1")}), a[1]};
      if (premise->goal.lhs != needed.lhs || premise->goal.rhs != needed.rhs)
        return bad("carry premise proves the wrong equation");
      CheckResult sub = check(*premise);
      if (!sub.ok) return bad("carry premise fails: " + sub.message);
      return {true,
              {AQ::sum({AQ::constant(a[0].digits() + '9'), AQ::constant("1")}),
               AQ::constant(a[1].digits() + '0')},
              {}};
    }
  }
  return bad("unknown axiom");
}

/// Validates a full derivation: every step checks locally and the chain runs
/// from goal.lhs to goal.rhs.
inline CheckResult check(const Derivation& d) {
  AQ cur = d.goal.lhs;
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const DStep& s = d.steps[i];
    auto fail = [&](const std::string& why) {
      return CheckResult{false, i + 1, "step " + std::to_string(i + 1) + ": " + why};
    };
    Equation eq;
    if (s.kind == DStep::Kind::cong) {
      if (s.children.size() != 1) return fail("cong needs one child");
      Judged j = judge(s.children[0]);
      if (!j.ok) return fail(j.why);
      AQ sub = AQ::constant("0");
      try {
        sub = subterm_at(cur, s.path);
      } catch (const error&) {
        return fail("position path leaves the term");
      }
      if (sub != j.eq.lhs) return fail("redex does not match the instance");
      eq = Equation{cur, replace_at(cur, s.path, j.eq.rhs)};
    } else {
      Judged j = judge(s);
      if (!j.ok) return fail(j.why);
      eq = j.eq;
    }
    if (eq.lhs != cur)
      return fail("chain breaks: step starts at " + render_text(eq.lhs) + " but the chain is at " +
                  render_text(cur));
    cur = eq.rhs;
  }
  if (cur != d.goal.rhs)
    return {false, d.steps.size(),
            "chain ends at " + render_text(cur) + " instead of " + render_text(d.goal.rhs)};
  return {};
}

}  // namespace checker

/// Independent verification of a Derivation (first failure reported).
inline CheckResult check(const Derivation& d) { return checker::check(d); }

}  // namespace aqlab::fspec
