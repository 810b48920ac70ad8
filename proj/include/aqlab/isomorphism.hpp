#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aqlab/semantics.hpp"

namespace aqlab::sem {

/// Outcome of a desk-scale isomorphism check between two backends of the same
/// sort. The text form is one line per checked identity (in verbose mode)
/// plus a final verdict line, suitable for golden-file testing.
struct IsoReport {
  Backend b1{BackendName::decimal, Sort::nat};
  Backend b2{BackendName::decimal, Sort::nat};
  std::uint64_t bound = 0;
  bool ok = true;
  std::string counterexample;
  std::uint64_t map_entries = 0;
  std::uint64_t additions = 0;
  std::uint64_t negations = 0;
  std::vector<std::string> identity_lines;  // filled in verbose mode

  std::string header() const {
    return std::string("isomorphism check: ") + backend_name_str(b1.name) + " ~ " +
           backend_name_str(b2.name) + " (" + (b1.sort == Sort::nat ? "nat" : "int") +
           "), bound " + std::to_string(bound);
  }

  std::string to_text() const {
    std::string out = header() + "\n";
    for (const auto& l : identity_lines) out += l + "\n";
    out += "checked: " + std::to_string(map_entries) + " map entries, " +
           std::to_string(additions) + " additions, " + std::to_string(negations) +
           " negations\n";
    out += ok ? "verdict: no counterexample\n" : "verdict: counterexample: " + counterexample + "\n";
    return out;
  }
};

/// Builds the unique 0,1-and-successor-preserving map between the two value
/// enumerations (simultaneous successor iteration from 0, negated copies for
/// int sorts) and verifies bijectivity onto the image plus preservation of +
/// (and - for int).
inline IsoReport check_isomorphism(const Backend& b1, const Backend& b2, std::uint64_t bound,
                                   const Config& cfg = Config::defaults(),
                                   bool verbose = false) {
  if (b1.sort != b2.sort)
    throw error(errc::sort_error, "SortError: backends do not share a sort");
  if (bound < 2) throw error(errc::domain_error, "DomainError: isomorphism bound must be >= 2");

  IsoReport rep;
  rep.b1 = b1;
  rep.b2 = b2;
  rep.bound = bound;

  const bool is_int = b1.sort == Sort::int_;
  const std::int64_t lo = is_int ? -static_cast<std::int64_t>(bound) : 0;
  const std::int64_t hi = static_cast<std::int64_t>(bound);

  auto one1 = value_from_const("1", b1, cfg);
  auto one2 = value_from_const("1", b2, cfg);

  // simultaneous successor iteration from 0
  std::vector<Value> pos1{value_from_const("0", b1, cfg)};
  std::vector<Value> pos2{value_from_const("0", b2, cfg)};
  for (std::uint64_t k = 1; k <= bound; ++k) {
    pos1.push_back(value_add(pos1.back(), one1, cfg));
    pos2.push_back(value_add(pos2.back(), one2, cfg));
  }
  auto v1 = [&](std::int64_t k) {
    return k >= 0 ? pos1[static_cast<std::size_t>(k)]
                  : value_neg(pos1[static_cast<std::size_t>(-k)]);
  };
  auto v2 = [&](std::int64_t k) {
    return k >= 0 ? pos2[static_cast<std::size_t>(k)]
                  : value_neg(pos2[static_cast<std::size_t>(-k)]);
  };
  rep.map_entries = static_cast<std::uint64_t>(hi - lo + 1);

  auto fail = [&](std::string line) {
    rep.ok = false;
    rep.counterexample = std::move(line);
  };

  if (verbose) {
    rep.identity_lines.push_back("unit 0: " + value_to_string(v1(0), cfg) + " -> " +
                                 value_to_string(v2(0), cfg));
    rep.identity_lines.push_back("unit 1: " + value_to_string(v1(1), cfg) + " -> " +
                                 value_to_string(v2(1), cfg));
  }

  // injectivity on both sides (bijectivity onto the image)
  for (std::int64_t i = lo; rep.ok && i <= hi; ++i)
    for (std::int64_t j = i + 1; j <= hi; ++j) {
      if (value_equal(v1(i), v1(j)))
        fail("values " + std::to_string(i) + " and " + std::to_string(j) + " collide in " +
             backend_name_str(b1.name));
      else if (value_equal(v2(i), v2(j)))
        fail("values " + std::to_string(i) + " and " + std::to_string(j) + " collide in " +
             backend_name_str(b2.name));
      if (!rep.ok) break;
    }
  if (verbose && rep.ok)
    rep.identity_lines.push_back("injectivity: ok (" + std::to_string(rep.map_entries) +
                                 " values)");

  // + preservation: f(a +_1 b) = f(a) +_2 f(b) whenever a, b, a+b are in range
  for (std::int64_t i = lo; rep.ok && i <= hi; ++i) {
    for (std::int64_t j = i; j <= hi; ++j) {
      if (i + j < lo || i + j > hi) continue;
      Value s1 = value_add(v1(i), v1(j), cfg);
      Value s2 = value_add(v2(i), v2(j), cfg);
      ++rep.additions;
      bool ok1 = value_equal(s1, v1(i + j));
      bool ok2 = value_equal(s2, v2(i + j));
      if (!ok1 || !ok2) {
        fail("add " + std::to_string(i) + " " + std::to_string(j) + ": image of sum is not sum of images");
        break;
      }
      if (verbose)
        rep.identity_lines.push_back("add " + std::to_string(i) + " " + std::to_string(j) +
                                     ": ok");
    }
  }

  // - preservation for int sorts: f(-a) = -f(a)
  if (is_int) {
    for (std::int64_t i = lo; rep.ok && i <= hi; ++i) {
      if (-i < lo || -i > hi) continue;
      ++rep.negations;
      if (!value_equal(value_neg(v1(i)), v1(-i)) || !value_equal(value_neg(v2(i)), v2(-i))) {
        fail("neg " + std::to_string(i) + ": image of opposite is not opposite of image");
        break;
      }
      if (verbose) rep.identity_lines.push_back("neg " + std::to_string(i) + ": ok");
    }
  }

  return rep;
}

}  // namespace aqlab::sem
