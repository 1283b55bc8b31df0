#pragma once

// Exact rational scalar used everywhere a membership or boundary decision is
// made. mpq_class keeps values canonical (positive denominator, lowest terms),
// which is exactly the representation contract we need.

#include <gmpxx.h>

#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sinr {

using Rat = mpq_class;
using Int = mpz_class;

inline int sign(const Rat& q) { return sgn(q); }
inline int sign(const Int& z) { return sgn(z); }

inline Rat rat(long num, long den = 1) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "p/q" (integers, q != 0) or a finite decimal string such as
/// "-12", "0.05", "+3.25". Anything else is rejected.
inline Rat parse_rational(std::string_view text) {
  auto fail = [&] {
    throw std::invalid_argument("bad rational: '" + std::string(text) + "'");
  };
  if (text.empty()) fail();

  auto is_int = [](std::string_view s) {
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) fail();
    Int n(std::string(num), 10), d(std::string(den), 10);
    if (sgn(d) == 0) fail();
    Rat q(n, d);
    q.canonicalize();
    return q;
  }

  std::string_view s = text;
  std::string digits;
  if (s[0] == '+' || s[0] == '-') {
    if (s[0] == '-') digits.push_back('-');
    s.remove_prefix(1);
  }
  auto dot = s.find('.');
  std::string_view ipart = (dot == std::string_view::npos) ? s : s.substr(0, dot);
  std::string_view fpart = (dot == std::string_view::npos) ? std::string_view{} : s.substr(dot + 1);
  if (ipart.empty() && fpart.empty()) fail();
  for (auto part : {ipart, fpart})
    for (char c : part)
      if (!std::isdigit(static_cast<unsigned char>(c))) fail();
  digits.append(ipart);
  digits.append(fpart);
  if (digits.empty() || digits == "-") fail();
  Int num(digits, 10);
  Int den(1);
  for (size_t i = 0; i < fpart.size(); ++i) den *= 10;
  Rat q(num, den);
  q.canonicalize();
  return q;
}

/// Canonical text form: "p" or "p/q" with q > 1. Round-trips exactly.
inline std::string rational_to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Directed enclosure of an irrational value: lo <= v <= hi.
struct RatInterval {
  Rat lo, hi;

  Rat width() const { return hi - lo; }
  Rat mid() const { return (lo + hi) / 2; }
  bool is_point() const { return lo == hi; }
  bool contains(const Rat& v) const { return lo <= v && v <= hi; }
};

/// Enclosure of sqrt(x) for x >= 0 with relative width <= 2^-prec_bits.
/// Perfect squares (of rationals) come back as zero-width intervals.
inline RatInterval sqrt_enclosure(const Rat& x, unsigned prec_bits = 48) {
  if (sgn(x) < 0) throw std::domain_error("sqrt_enclosure: negative argument");
  if (sgn(x) == 0) return {Rat(0), Rat(0)};

  // sqrt(p/q) = sqrt(p*q)/q; floor-sqrt after scaling by 4^k gives the
  // directed bounds r/(q*2^k) and (r+1)/(q*2^k). With p,q >= 1 the relative
  // width is at most 1/2^k.
  const Int& p = x.get_num();
  const Int& q = x.get_den();
  Int t = p * q;
  mpz_mul_2exp(t.get_mpz_t(), t.get_mpz_t(), 2 * prec_bits);

  Int r, rem;
  mpz_sqrtrem(r.get_mpz_t(), rem.get_mpz_t(), t.get_mpz_t());

  Int scale = q;
  mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), prec_bits);

  Rat lo(r, scale);
  lo.canonicalize();
  if (sgn(rem) == 0) return {lo, lo};
  Rat hi(r + 1, scale);
  hi.canonicalize();
  return {lo, hi};
}

/// Floor of a rational as an arbitrary-precision integer.
inline Int rat_floor(const Rat& q) {
  Int out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return out;
}

inline Int rat_ceil(const Rat& q) {
  Int out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return out;
}

/// Largest rational of the form m/10^k that is <= q, with the mantissa m
/// forced to at least `min_mantissa` so the value keeps most of q's
/// magnitude. Used where a grid pitch needs a small, decimal denominator.
inline Rat round_down_decimal(const Rat& q, unsigned long min_mantissa = 16) {
  if (sgn(q) <= 0) throw std::domain_error("round_down_decimal: needs positive value");
  Int den(1);
  for (int k = 0; k < 512; ++k) {
    Int m;
    mpz_fdiv_q(m.get_mpz_t(), Int(q.get_num() * den).get_mpz_t(), q.get_den().get_mpz_t());
    if (mpz_cmp_ui(m.get_mpz_t(), min_mantissa) >= 0) {
      Rat out(m, den);
      out.canonicalize();
      return out;
    }
    den *= 10;
  }
  throw std::runtime_error("round_down_decimal: value vanishingly small");
}

inline double to_double(const Rat& q) { return q.get_d(); }

}  // namespace sinr
