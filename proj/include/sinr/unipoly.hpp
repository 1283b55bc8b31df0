#pragma once

// Dense univariate polynomials over the rationals, coefficients ascending by
// degree. The zero polynomial is the empty coefficient list; otherwise the
// leading coefficient is nonzero.

#include <stdexcept>
#include <vector>

#include "sinr/rational.hpp"

namespace sinr {

class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UniPoly zero() { return UniPoly(); }
  static UniPoly constant(Rat v) { return UniPoly({std::move(v)}); }
  /// lo + hi*x
  static UniPoly linear(Rat lo, Rat hi) { return UniPoly({std::move(lo), std::move(hi)}); }

  bool is_zero() const { return c_.empty(); }
  /// Degree of the zero polynomial is -1 by convention.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rat>& coeffs() const { return c_; }
  const Rat& operator[](std::size_t i) const { return c_[i]; }
  const Rat& leading() const { return c_.back(); }

  Rat eval(const Rat& t) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  int sign_at(const Rat& t) const { return sgn(eval(t)); }

  UniPoly derivative() const {
    if (c_.size() <= 1) return UniPoly();
    std::vector<Rat> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
    return UniPoly(std::move(d));
  }

  UniPoly operator-() const {
    std::vector<Rat> out(c_);
    for (auto& v : out) v = -v;
    return UniPoly(std::move(out));
  }

  UniPoly operator+(const UniPoly& o) const {
    std::vector<Rat> out(std::max(c_.size(), o.c_.size()), Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) out[i] += o.c_[i];
    return UniPoly(std::move(out));
  }

  UniPoly operator-(const UniPoly& o) const { return *this + (-o); }

  UniPoly operator*(const UniPoly& o) const {
    if (is_zero() || o.is_zero()) return UniPoly();
    std::vector<Rat> out(c_.size() + o.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
    return UniPoly(std::move(out));
  }

  UniPoly operator*(const Rat& s) const {
    if (sgn(s) == 0) return UniPoly();
    std::vector<Rat> out(c_);
    for (auto& v : out) v *= s;
    return UniPoly(std::move(out));
  }

  bool operator==(const UniPoly& o) const { return c_ == o.c_; }

  /// Divides each coefficient by the positive content (gcd of numerators over
  /// lcm of denominators). Signs are untouched, which is all the Sturm
  /// machinery cares about; without this step remainder coefficients blow up.
  UniPoly content_normalized() const {
    if (c_.empty()) return *this;
    Int num_gcd(0), den_lcm(1);
    for (const auto& v : c_) {
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), v.get_num().get_mpz_t());
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), v.get_den().get_mpz_t());
    }
    Rat content(num_gcd, den_lcm);
    content.canonicalize();
    std::vector<Rat> out(c_);
    for (auto& v : out) v /= content;
    return UniPoly(std::move(out));
  }

  /// Remainder of *this divided by d (exact rational long division).
  UniPoly remainder(const UniPoly& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rat> r(c_);
    int dr = static_cast<int>(r.size()) - 1;
    int dd = d.degree();
    while (dr >= dd) {
      Rat q = r[dr] / d.leading();
      for (int i = 0; i <= dd; ++i) r[dr - dd + i] -= q * d[i];
      r[dr] = 0;  // exact cancellation by construction
      while (dr >= 0 && sgn(r[dr]) == 0) --dr;
    }
    r.resize(dr + 1);
    return UniPoly(std::move(r));
  }

  /// Synthetic division by (x - root). The caller guarantees eval(root) == 0.
  UniPoly deflate(const Rat& root) const {
    if (c_.size() < 2) throw std::domain_error("deflate: degree too small");
    std::vector<Rat> out(c_.size() - 1);
    Rat carry = c_.back();
    for (std::size_t i = c_.size() - 1; i-- > 0;) {
      if (i == 0) {
        if (c_[0] + root * carry != 0) throw std::logic_error("deflate: not a root");
        break;
      }
      out[i] = carry;
      carry = c_[i] + root * carry;
    }
    out[0] = carry;
    return UniPoly(std::move(out));
  }

  /// Multiplicity of `root` (0 when not a root).
  int multiplicity(const Rat& root) const {
    UniPoly p = *this;
    int m = 0;
    while (!p.is_zero() && p.degree() >= 1 && sgn(p.eval(root)) == 0) {
      p = p.deflate(root);
      ++m;
    }
    return m;
  }

 private:
  void trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  }

  std::vector<Rat> c_;
};

}  // namespace sinr
