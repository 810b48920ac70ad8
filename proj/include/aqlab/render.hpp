#pragma once

#include <string>

#include "aqlab/aq.hpp"
#include "aqlab/sign.hpp"

namespace aqlab {

/// minimal: only structural brackets, '-' abbreviation for negated summands.
/// fully_bracketed: one pair around every subterm.
/// spaced: minimal brackets with single spaces around the infix operators.
enum class RenderStyle { minimal, fully_bracketed, spaced };

namespace detail {

inline void render_min(const AQ& a, bool spaced, std::string& out) {
  switch (a.kind()) {
    case AQ::Kind::Const: out += a.digits(); return;
    case AQ::Kind::Var: out += a.name(); return;
    case AQ::Kind::Neg: {
      out += '-';
      const AQ& u = a.child();
      if (u.is_sum() || u.is_neg()) {
        out += '(';
        render_min(u, spaced, out);
        out += ')';
      } else {
        render_min(u, spaced, out);
      }
      return;
    }
    case AQ::Kind::Sum: {
      auto emit_operand = [&](const AQ& t) {
        if (t.is_sum()) {
          out += '(';
          render_min(t, spaced, out);
          out += ')';
        } else {
          render_min(t, spaced, out);
        }
      };
      bool first = true;
      for (const AQ& t : a.children()) {
        if (first) {
          first = false;
          if (t.is_neg()) {
            // leading negated summand: render as unary minus
            out += '-';
            const AQ& u = t.child();
            if (u.is_sum() || u.is_neg()) {
              out += '(';
              render_min(u, spaced, out);
              out += ')';
            } else {
              render_min(u, spaced, out);
            }
          } else {
            emit_operand(t);
          }
          continue;
        }
        if (t.is_neg()) {
          out += spaced ? " - " : "-";
          const AQ& u = t.child();
          if (u.is_sum() || u.is_neg()) {
            out += '(';
            render_min(u, spaced, out);
            out += ')';
          } else {
            render_min(u, spaced, out);
          }
        } else {
          out += spaced ? " + " : "+";
          emit_operand(t);
        }
      }
      return;
    }
  }
}

inline void render_full(const AQ& a, std::string& out) {
  out += '(';
  switch (a.kind()) {
    case AQ::Kind::Const: out += a.digits(); break;
    case AQ::Kind::Var: out += a.name(); break;
    case AQ::Kind::Neg:
      out += '-';
      render_full(a.child(), out);
      break;
    case AQ::Kind::Sum: {
      bool first = true;
      for (const AQ& t : a.children()) {
        if (!first) out += '+';
        first = false;
        render_full(t, out);
      }
      break;
    }
  }
  out += ')';
}

}  // namespace detail

inline std::string render_text(const AQ& a, RenderStyle style = RenderStyle::minimal) {
  std::string out;
  switch (style) {
    case RenderStyle::minimal: detail::render_min(a, false, out); break;
    case RenderStyle::spaced: detail::render_min(a, true, out); break;
    case RenderStyle::fully_bracketed: detail::render_full(a, out); break;
  }
  return out;
}

inline Sign render(const AQ& a, RenderStyle style = RenderStyle::minimal) {
  return Sign(render_text(a, style));
}

}  // namespace aqlab
