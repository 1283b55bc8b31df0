#pragma once

// Sturm sequences and distinct-real-root counting. The chain is the classic
// one: P, P', then negated remainders until exhaustion, each remainder
// content-normalized (a positive scaling, so the sign pattern is preserved).

#include <optional>
#include <stdexcept>
#include <vector>

#include "sinr/unipoly.hpp"

namespace sinr {

class SturmSeq {
 public:
  explicit SturmSeq(UniPoly p) {
    if (p.is_zero()) throw std::domain_error("sturm sequence of the zero polynomial");
    polys_.push_back(std::move(p));
    UniPoly d = polys_[0].derivative();
    if (d.is_zero()) return;  // constant polynomial: the chain is just [P]
    polys_.push_back(d.content_normalized());
    while (true) {
      UniPoly r = polys_[polys_.size() - 2].remainder(polys_.back());
      if (r.is_zero()) break;
      polys_.push_back((-r).content_normalized());
    }
  }

  const std::vector<UniPoly>& polys() const { return polys_; }
  const UniPoly& head() const { return polys_.front(); }

  /// Sign changes of the chain evaluated at t, zeros skipped.
  int var_at(const Rat& t) const {
    int changes = 0, prev = 0;
    for (const auto& p : polys_) {
      int s = p.sign_at(t);
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++changes;
      prev = s;
    }
    return changes;
  }

  int var_at_pos_inf() const {
    int changes = 0, prev = 0;
    for (const auto& p : polys_) {
      int s = sgn(p.leading());
      if (prev != 0 && s != prev) ++changes;
      prev = s;
    }
    return changes;
  }

  int var_at_neg_inf() const {
    int changes = 0, prev = 0;
    for (const auto& p : polys_) {
      int s = sgn(p.leading());
      if (p.degree() % 2 == 1) s = -s;
      if (prev != 0 && s != prev) ++changes;
      prev = s;
    }
    return changes;
  }

 private:
  std::vector<UniPoly> polys_;
};

/// Counts distinct real roots of a nonzero polynomial on an interval.
/// Exact endpoint roots are deflated first (Sturm's condition needs non-root
/// endpoints) and added back according to the inclusion flags.
class RootCounter {
 public:
  explicit RootCounter(UniPoly p) : poly_(std::move(p)) {
    if (poly_.is_zero()) throw std::domain_error("root counting on the zero polynomial");
  }

  const UniPoly& poly() const { return poly_; }

  bool is_root(const Rat& t) const { return poly_.sign_at(t) == 0; }

  int count(const Rat& a, const Rat& b, bool include_a = false, bool include_b = false) const {
    if (!(a < b)) throw std::invalid_argument("root counting needs a < b");
    bool root_a = is_root(a);
    bool root_b = is_root(b);
    int open;
    if (!root_a && !root_b) {
      open = open_count(seq(), a, b);
    } else {
      UniPoly q = poly_;
      while (q.degree() >= 1 && q.sign_at(a) == 0) q = q.deflate(a);
      while (q.degree() >= 1 && q.sign_at(b) == 0) q = q.deflate(b);
      open = (q.degree() < 1) ? 0 : open_count(SturmSeq(q), a, b);
    }
    return open + (include_a && root_a ? 1 : 0) + (include_b && root_b ? 1 : 0);
  }

  int count_all() const {
    const SturmSeq& s = seq();
    return s.var_at_neg_inf() - s.var_at_pos_inf();
  }

  const SturmSeq& seq() const {
    if (!seq_) seq_.emplace(poly_);
    return *seq_;
  }

 private:
  static int open_count(const SturmSeq& s, const Rat& a, const Rat& b) {
    return s.var_at(a) - s.var_at(b);
  }

  UniPoly poly_;
  mutable std::optional<SturmSeq> seq_;
};

inline SturmSeq sturm_sequence(const UniPoly& p) { return SturmSeq(p); }

inline int count_distinct_roots(const UniPoly& p, const Rat& a, const Rat& b,
                                bool include_a = false, bool include_b = false) {
  return RootCounter(p).count(a, b, include_a, include_b);
}

/// One isolated real root: contained in [lo, hi]; `exact` when lo == hi.
struct RootBracket {
  Rat lo, hi;
  bool exact = false;

  Rat mid() const { return (lo + hi) / 2; }
};

/// Isolates every distinct root in [a, b] (inclusive) into disjoint brackets,
/// ordered by position. Non-exact brackets have non-root endpoints.
inline std::vector<RootBracket> isolate_roots(const RootCounter& rc, const Rat& a, const Rat& b) {
  std::vector<RootBracket> out;
  if (rc.is_root(a)) out.push_back({a, a, true});

  // Recursive bisection; each interval processed has non-root open endpoints.
  auto recurse = [&](auto&& self, const Rat& lo, const Rat& hi) -> void {
    int n = rc.count(lo, hi, false, false);
    if (n == 0) return;
    if (n == 1) {
      out.push_back({lo, hi, false});
      return;
    }
    Rat mid = (lo + hi) / 2;
    if (rc.is_root(mid)) {
      self(self, lo, mid);
      out.push_back({mid, mid, true});
      self(self, mid, hi);
    } else {
      self(self, lo, mid);
      self(self, mid, hi);
    }
  };
  if (a < b) recurse(recurse, a, b);

  if (b > a && rc.is_root(b)) out.push_back({b, b, true});
  return out;
}

/// Shrinks a one-root bracket until pred(bracket) holds or the root is pinned
/// exactly. pred must eventually accept any small enough bracket around the
/// root (or the exact root itself).
template <typename Pred>
inline void refine_bracket(const RootCounter& rc, RootBracket& br, Pred&& pred) {
  while (!br.exact && !pred(br)) {
    Rat mid = br.mid();
    if (rc.is_root(mid)) {
      br.lo = br.hi = mid;
      br.exact = true;
      break;
    }
    if (rc.count(br.lo, mid, false, false) == 1)
      br.hi = mid;
    else
      br.lo = mid;
  }
}

}  // namespace sinr
