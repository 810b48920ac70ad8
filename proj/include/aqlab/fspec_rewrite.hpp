#pragma once

#include <algorithm>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "aqlab/config.hpp"
#include "aqlab/fspec_axioms.hpp"
#include "aqlab/semantics.hpp"

namespace aqlab::fspec {

struct RewriteTrace;

/// One oriented rule application. Most steps are literal Table 1/2 instances
/// (possibly applied right-to-left, `forward = false`). Numeral addition is
/// the exception: AddConst folds sigma+tau into one column/carry step and
/// SplitConst is its reverse; both are derived rules whose unary Table-2
/// expansions exist (and are emitted instead in axiom-pure mode).
struct TraceStep {
  bool is_macro = false;
  AxiomInstance axiom;      // when !is_macro
  bool forward = true;
  bool macro_split = false; // when is_macro: SplitConst instead of AddConst
  std::string mac_a, mac_b, mac_c;  // c = a + b, all positive numerals
  Path path;
  AQ result = AQ::constant("0");    // whole term after the step
  std::shared_ptr<const RewriteTrace> premise;  // carry_cond steps carry sigma+1 = tau
};

struct RewriteTrace {
  AQ start = AQ::constant("0");
  std::vector<TraceStep> steps;
  AQ normal_form = AQ::constant("0");
};

inline const char* rule_name(const TraceStep& s) {
  if (s.is_macro) return s.macro_split ? "SplitConst" : "AddConst";
  if (s.axiom.id == AxiomId::assoc && s.axiom.poly) return "AssocPoly";
  return axiom_name(s.axiom.id);
}

enum class StrategyKind { standard, randomized };

struct NormalizeOptions {
  bool axiom_pure = false;  // expand AddConst/SplitConst into +1 steps
  StrategyKind strategy = StrategyKind::standard;
  std::uint64_t seed = 0;
  bool allow_swap = true;      // use Comm to add the smaller operand (axiom-pure)
  // Snapshot the whole term after every step. Disabled, the trace is only
  // good for chain conversion (prove); replay() needs the snapshots.
  bool record_results = true;
};

namespace detail {

class Normalizer {
 public:
  explicit Normalizer(const NormalizeOptions& opts) : opts_(opts), rng_(opts.seed) {}

  RewriteTrace run(const AQ& start) {
    if (!start.is_closed())
      throw error(errc::open_term, "OpenTerm: cannot normalize an open term");
    RewriteTrace trace;
    trace.start = start;
    cur_ = start;
    steps_.clear();
    Path root;
    normalize_at(root);
    trace.steps = std::move(steps_);
    trace.normal_form = cur_;
    return trace;
  }

  const AQ& current() const { return cur_; }

 private:
  NormalizeOptions opts_;
  std::mt19937_64 rng_;
  AQ cur_ = AQ::constant("0");
  std::vector<TraceStep> steps_;

  static Path extend(const Path& p, int i) {
    Path q = p;
    q.push_back(i);
    return q;
  }

  const AQ& at(const Path& p) const { return subterm_at(cur_, p); }

  void axiom(AxiomId id, std::vector<AQ> args, bool forward, const Path& p,
             std::shared_ptr<const RewriteTrace> premise = nullptr, bool poly = false) {
    AxiomInstance inst{id, poly, std::move(args)};
    Equation eq = instantiate(inst);
    [[maybe_unused]] const AQ& from = forward ? eq.lhs : eq.rhs;
    const AQ& to = forward ? eq.rhs : eq.lhs;
#ifndef NDEBUG
    // generator self-check; release builds rely on replay()/check() instead
    if (at(p) != from)
      throw error(errc::domain_error, std::string("internal: misapplied axiom ") +
                                          axiom_name(id));
#endif
    cur_ = replace_at(cur_, p, to);
    TraceStep s;
    s.axiom = std::move(inst);
    s.forward = forward;
    s.path = p;
    if (opts_.record_results) s.result = cur_;
    s.premise = std::move(premise);
    steps_.push_back(std::move(s));
  }

  void macro(bool split, const std::string& a, const std::string& b, const std::string& c,
             const Path& p) {
    AQ pair = AQ::sum({AQ::constant(a), AQ::constant(b)});
    AQ folded = AQ::constant(c);
    [[maybe_unused]] const AQ& from = split ? folded : pair;
    const AQ& to = split ? pair : folded;
#ifndef NDEBUG
    if (at(p) != from) throw error(errc::domain_error, "internal: misapplied macro");
#endif
    cur_ = replace_at(cur_, p, to);
    TraceStep s;
    s.is_macro = true;
    s.macro_split = split;
    s.mac_a = a;
    s.mac_b = b;
    s.mac_c = c;
    s.path = p;
    if (opts_.record_results) s.result = cur_;
    steps_.push_back(std::move(s));
  }

  // ---- structure ----------------------------------------------------------

  void normalize_at(const Path& p) {
    switch (at(p).kind()) {
      case AQ::Kind::Const: return;
      case AQ::Kind::Var:
        throw error(errc::open_term, "OpenTerm: cannot normalize an open term");
      case AQ::Kind::Neg: {
        normalize_at(extend(p, 0));
        const AQ inner = at(p).child();
        if (inner.is_const() && inner.digits() == "0") {
          // -0 => (-0)+0 => 0+(-0) => 0
          AQ neg0 = AQ::negate(AQ::constant("0"));
          axiom(AxiomId::add_zero, {neg0}, false, p);
          axiom(AxiomId::comm, {neg0, AQ::constant("0")}, true, p);
          axiom(AxiomId::add_opp, {AQ::constant("0")}, true, p);
        } else if (inner.is_neg()) {
          axiom(AxiomId::double_neg, {inner.child()}, true, p);
        }
        return;
      }
      case AQ::Kind::Sum: {
        std::vector<int> order(at(p).arity());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        if (opts_.strategy == StrategyKind::randomized)
          std::shuffle(order.begin(), order.end(), rng_);
        for (int i : order) normalize_at(extend(p, i));

        // poly-infix sums become right-nested binary pairs
        while (at(p).is_sum() && at(p).arity() > 2)
          axiom(AxiomId::assoc, at(p).children(), true, p, nullptr, /*poly=*/true);

        if (opts_.strategy == StrategyKind::randomized)
          fold_random(p);
        else
          fold_left(p);
        return;
      }
    }
  }

  /// Left-to-right fold over the right-nested comb, matching the evaluation
  /// order of the decimal backend.
  void fold_left(const Path& p) {
    while (at(p).is_sum()) {
      const AQ node = at(p);
      const AQ& rest = node.children()[1];
      if (rest.is_sum()) {
        // X+(Y+R) => (X+Y)+R, reduce the exposed pair
        axiom(AxiomId::assoc,
              {node.children()[0], rest.children()[0], rest.children()[1]}, false, p);
        reduce_pair(extend(p, 0));
      } else {
        reduce_pair(p);
        return;
      }
    }
  }

  /// Reduces ready pairs (both operands in normal form) in random order.
  void fold_random(const Path& p) {
    while (at(p).is_sum()) {
      std::vector<Path> ready;
      collect_ready(p, ready);
      std::uniform_int_distribution<std::size_t> pick(0, ready.size() - 1);
      reduce_pair(ready[pick(rng_)]);
    }
  }

  void collect_ready(const Path& p, std::vector<Path>& out) {
    const AQ& t = at(p);
    if (!t.is_sum()) return;
    if (is_normal_form(t.children()[0]) && is_normal_form(t.children()[1]))
      out.push_back(p);
    for (std::size_t i = 0; i < 2; ++i)
      if (t.children()[i].is_sum()) collect_ready(extend(p, static_cast<int>(i)), out);
  }

  // ---- numeral pairs ------------------------------------------------------

  /// Reduces Sum[X, Y] with X, Y in Z_d normal form to a normal form.
  void reduce_pair(const Path& p) {
    const AQ node = at(p);
    const AQ x = node.children()[0];
    const AQ y = node.children()[1];
    if (x.is_const() && x.digits() == "0") {
      // 0+y => y+0 => y
      axiom(AxiomId::comm, {x, y}, true, p);
      axiom(AxiomId::add_zero, {y}, true, p);
      return;
    }
    if (y.is_const() && y.digits() == "0") {
      axiom(AxiomId::add_zero, {x}, true, p);
      return;
    }
    if (x.is_const() && y.is_const()) {
      emit_add(p, x.digits(), y.digits(), opts_.allow_swap);
      return;
    }
    if (x.is_const() && y.is_neg()) {
      reduce_pos_neg(p, x.digits(), y.child().digits());
      return;
    }
    if (x.is_neg() && y.is_const()) {
      axiom(AxiomId::comm, {x, y}, true, p);
      reduce_pos_neg(p, y.digits(), x.child().digits());
      return;
    }
    // (-s)+(-t) => ... => -(s+t)
    reduce_neg_neg(p, x.child().digits(), y.child().digits());
  }

  /// Sum[sigma, -tau], both magnitudes positive.
  void reduce_pos_neg(const Path& p, const std::string& sigma, const std::string& tau) {
    const int cmp = digits::compare(sigma, tau);
    AQ csigma = AQ::constant(sigma);
    AQ ctau = AQ::constant(tau);
    if (cmp == 0) {
      axiom(AxiomId::add_opp, {csigma}, true, p);
      return;
    }
    if (cmp > 0) {
      // sigma + (-tau) with sigma > tau: split sigma = delta+tau, cancel
      const std::string delta = digits::sub(sigma, tau);
      AQ cdelta = AQ::constant(delta);
      if (digits::compare(delta, tau) < 0) {
        // peel the smaller part, then commute into place
        emit_split(extend(p, 0), tau, delta, sigma);
        axiom(AxiomId::comm, {ctau, cdelta}, true, extend(p, 0));
      } else {
        emit_split(extend(p, 0), delta, tau, sigma);
      }
      axiom(AxiomId::assoc, {cdelta, ctau, AQ::negate(ctau)}, true, p);
      axiom(AxiomId::add_opp, {ctau}, true, extend(p, 1));
      axiom(AxiomId::add_zero, {cdelta}, true, p);
      return;
    }
    // sigma < tau: result is -(tau-sigma)
    const std::string delta = digits::sub(tau, sigma);
    AQ cdelta = AQ::constant(delta);
    axiom(AxiomId::add_zero, {csigma}, false, extend(p, 0));             // sigma => sigma+0
    axiom(AxiomId::add_opp, {cdelta}, false, extend(extend(p, 0), 1));   // 0 => delta+(-delta)
    axiom(AxiomId::assoc, {csigma, cdelta, AQ::negate(cdelta)}, false, extend(p, 0));
    emit_add(extend(extend(p, 0), 0), sigma, delta, true);              // sigma+delta => tau
    axiom(AxiomId::comm, {ctau, AQ::negate(cdelta)}, true, extend(p, 0));
    axiom(AxiomId::assoc, {AQ::negate(cdelta), ctau, AQ::negate(ctau)}, true, p);
    axiom(AxiomId::add_opp, {ctau}, true, extend(p, 1));
    axiom(AxiomId::add_zero, {AQ::negate(cdelta)}, true, p);
    return;
  }

  /// Sum[-sigma, -tau] => -(sigma+tau) via a cancellation scaffold.
  void reduce_neg_neg(const Path& p, const std::string& sigma, const std::string& tau) {
    const std::string rho = digits::add(sigma, tau);
    AQ csigma = AQ::constant(sigma);
    AQ ctau = AQ::constant(tau);
    AQ crho = AQ::constant(rho);
    AQ pair = AQ::sum({AQ::negate(csigma), AQ::negate(ctau)});
    axiom(AxiomId::add_zero, {pair}, false, p);               // A => A+0
    axiom(AxiomId::add_opp, {crho}, false, extend(p, 1));     // 0 => rho+(-rho)
    axiom(AxiomId::assoc, {pair, crho, AQ::negate(crho)}, false, p);  // => (A+rho)+(-rho)
    // reduce A+rho = ((-sigma)+(-tau))+rho to 0
    Path q = extend(p, 0);
    axiom(AxiomId::assoc, {AQ::negate(csigma), AQ::negate(ctau), crho}, true, q);
    axiom(AxiomId::comm, {AQ::negate(ctau), crho}, true, extend(q, 1));
    // rho+(-tau) => sigma (positive case, rho > tau)
    reduce_pos_neg(extend(q, 1), rho, tau);
    axiom(AxiomId::comm, {AQ::negate(csigma), csigma}, true, q);
    axiom(AxiomId::add_opp, {csigma}, true, q);
    // 0+(-rho) => (-rho)+0 => -rho
    axiom(AxiomId::comm, {AQ::constant("0"), AQ::negate(crho)}, true, p);
    axiom(AxiomId::add_zero, {AQ::negate(crho)}, true, p);
  }

  // ---- numeral addition ---------------------------------------------------

  /// Sum[a, b] => a+b for positive numerals: one AddConst column step, or its
  /// unary Table-2 expansion in axiom-pure mode.
  void emit_add(const Path& p, std::string a, std::string b, bool allow_swap) {
    const std::string c = digits::add(a, b);
    if (!opts_.axiom_pure) {
      // a single +1 is an axiom application in any mode
      if (b == "1") succ_axiom(p, a, true);
      else macro(false, a, b, c, p);
      return;
    }
    if (allow_swap && digits::compare(b, a) > 0) {
      axiom(AxiomId::comm, {AQ::constant(a), AQ::constant(b)}, true, p);
      std::swap(a, b);
    }
    // peel b down to 1: a+b => a+((b-1)+1) => (a+1)+(b-1), computing a+1
    while (b != "1") {
      const std::string bm1 = digits::sub(b, "1");
      succ_axiom(extend(p, 1), bm1, false);  // b => (b-1)+1
      axiom(AxiomId::comm, {AQ::constant(bm1), AQ::constant("1")}, true, extend(p, 1));
      axiom(AxiomId::assoc, {AQ::constant(a), AQ::constant("1"), AQ::constant(bm1)}, false, p);
      succ_axiom(extend(p, 0), a, true);     // a+1 => a'
      a = digits::succ(a);
      b = bm1;
    }
    succ_axiom(p, a, true);
  }

  /// Const c => Sum[a, b]: reverse of emit_add, as one SplitConst step or a
  /// direct unary build-down (peel 1s off the constant and regrow b).
  void emit_split(const Path& p, const std::string& a, const std::string& b,
                  const std::string& c) {
    if (!opts_.axiom_pure) {
      macro(true, a, b, c, p);
      return;
    }
    std::string cur_a = digits::sub(c, "1");
    succ_axiom(p, cur_a, false);  // c => (c-1)+1
    std::string cur_b = "1";
    Path left = extend(p, 0);
    Path right = extend(p, 1);
    while (digits::compare(cur_a, a) > 0) {
      std::string na = digits::sub(cur_a, "1");
      succ_axiom(left, na, false);  // cur_a => na+1
      axiom(AxiomId::assoc, {AQ::constant(na), AQ::constant("1"), AQ::constant(cur_b)}, true, p);
      axiom(AxiomId::comm, {AQ::constant("1"), AQ::constant(cur_b)}, true, right);
      succ_axiom(right, cur_b, true);  // cur_b+1 => succ(cur_b)
      cur_a = std::move(na);
      cur_b = digits::succ(cur_b);
    }
  }

  /// One +1 computation (or its reverse): Sum[s, 1] <=> succ(s), justified by
  /// the appropriate member of eqs (2)/(3) for 0, (6), (7), (8), or (9).
  void succ_axiom(const Path& p, const std::string& s, bool forward) {
    if (s == "0") {
      // 0+1 => 1+0 => 1 (Comm then AddZero); no +1 family member covers 0
      if (forward) {
        axiom(AxiomId::comm, {AQ::constant("0"), AQ::constant("1")}, true, p);
        axiom(AxiomId::add_zero, {AQ::constant("1")}, true, p);
      } else {
        axiom(AxiomId::add_zero, {AQ::constant("1")}, false, p);
        axiom(AxiomId::comm, {AQ::constant("0"), AQ::constant("1")}, false, p);
      }
      return;
    }
    if (s.size() == 1 && s[0] >= '1' && s[0] <= '8') {
      // DigitSucc reads d' = d+1, so the computing direction is backward
      axiom(AxiomId::digit_succ, {AQ::constant(s)}, !forward, p);
      return;
    }
    if (s == "9") {
      axiom(AxiomId::nine_one, {}, forward, p);
      return;
    }
    const char last = s.back();
    const std::string prefix = s.substr(0, s.size() - 1);
    if (last != '9') {
      axiom(AxiomId::append_succ, {AQ::constant(prefix), AQ::constant(std::string(1, last))},
            forward, p);
      return;
    }
    // trailing 9: carry, with the premise prefix+1 = succ(prefix) derived in
    // the +1 fragment itself
    const std::string nu = digits::succ(prefix);
    auto premise = std::make_shared<RewriteTrace>();
    {
      Normalizer sub(opts_);
      premise->start = AQ::sum({AQ::constant(prefix), AQ::constant("1")});
      sub.cur_ = premise->start;
      Path local;
      sub.succ_axiom(local, prefix, true);
      premise->steps = std::move(sub.steps_);
      premise->normal_form = sub.cur_;
    }
    axiom(AxiomId::carry_cond, {AQ::constant(prefix), AQ::constant(nu)}, forward, p,
          std::move(premise));
  }

  friend RewriteTrace successor_chain_trace(const DecimalValue&, const DecimalValue&,
                                            const NormalizeOptions&);
};

inline RewriteTrace successor_chain_trace(const DecimalValue& m, const DecimalValue& n,
                                          const NormalizeOptions& opts) {
  Normalizer nz(opts);
  RewriteTrace trace;
  trace.start = AQ::sum({m.is_zero() ? AQ::constant("0") : AQ::constant(m.magnitude),
                         n.is_zero() ? AQ::constant("0") : AQ::constant(n.magnitude)});
  nz.cur_ = trace.start;
  Path root;
  if (n.is_zero()) {
    nz.axiom(AxiomId::add_zero, {trace.start.children()[0]}, true, root);
  } else {
    nz.emit_add(root, trace.start.children()[0].digits(), n.magnitude, /*allow_swap=*/false);
  }
  trace.steps = std::move(nz.steps_);
  trace.normal_form = nz.cur_;
  return trace;
}

}  // namespace detail

/// Rewrites a closed AQ to its Z_d normal form under the oriented Table 1/2
/// system, returning the replayable trace.
inline RewriteTrace normalize(const AQ& a, const NormalizeOptions& opts = {}) {
  return detail::Normalizer(opts).run(a);
}

/// The "+1"-only in-system oracle: computes m+n by n applications of the +1
/// rules (eqs (6)-(9), with (2)/(3) gluing). Nonnegative operands only.
inline RewriteTrace successor_chain_add(const DecimalValue& m, const DecimalValue& n,
                                        const Config& cfg = Config::defaults()) {
  if (m.is_negative() || n.is_negative())
    throw error(errc::sort_error, "SortError: successor_chain_add is defined on naturals");
  const std::string bound = std::to_string(cfg.successor_chain_bound);
  if (!n.is_zero() && digits::compare(n.magnitude, bound) > 0)
    throw error(errc::scale_error, "ScaleError: successor chain length " + n.to_string() +
                                       " exceeds bound " + bound);
  NormalizeOptions opts;
  opts.axiom_pure = true;
  return detail::successor_chain_trace(m, n, opts);
}

/// Replays a trace step by step, validating each application. Macro steps are
/// validated by column arithmetic; axiom steps against Table 1/2.
inline bool replay(const RewriteTrace& trace, std::string* why = nullptr) {
  AQ cur = trace.start;
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const TraceStep& s = trace.steps[i];
    AQ from = AQ::constant("0");
    AQ to = AQ::constant("0");
    if (s.is_macro) {
      if (digits::add(s.mac_a, s.mac_b) != s.mac_c)
        return fail("step " + std::to_string(i) + ": bad column addition");
      AQ pair = AQ::sum({AQ::constant(s.mac_a), AQ::constant(s.mac_b)});
      AQ folded = AQ::constant(s.mac_c);
      from = s.macro_split ? folded : pair;
      to = s.macro_split ? pair : folded;
    } else {
      Equation eq = instantiate(s.axiom);
      from = s.forward ? eq.lhs : eq.rhs;
      to = s.forward ? eq.rhs : eq.lhs;
      if (s.axiom.id == AxiomId::carry_cond) {
        if (!s.premise) return fail("step " + std::to_string(i) + ": carry without premise");
        Equation prem = carry_premise(s.axiom);
        if (s.premise->start != prem.lhs || s.premise->normal_form != prem.rhs)
          return fail("step " + std::to_string(i) + ": premise proves the wrong equation");
        if (!replay(*s.premise, why))
          return fail("step " + std::to_string(i) + ": invalid premise");
      }
    }
    try {
      if (subterm_at(cur, s.path) != from)
        return fail("step " + std::to_string(i) + ": redex mismatch");
      cur = replace_at(cur, s.path, to);
    } catch (const error&) {
      return fail("step " + std::to_string(i) + ": bad position");
    }
    if (cur != s.result) return fail("step " + std::to_string(i) + ": result mismatch");
  }
  if (cur != trace.normal_form) return fail("normal form does not match the final step");
  return true;
}

}  // namespace aqlab::fspec
