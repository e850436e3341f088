#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace schreier {

using Integer = boost::multiprecision::cpp_int;

// Countable ordinal below epsilon_0, kept in Cantor normal form
//   w^e1*c1 + w^e2*c2 + ... + w^ek*ck
// with e1 > e2 > ... > ek (ordinals themselves) and ci >= 1.
// The empty term list denotes 0. Immutable value type; all operations
// are pure, so Ordinal values can be shared freely across threads.
class Ordinal {
public:
  struct Term;

  Ordinal() = default;  // zero

  static Ordinal finite(const Integer& n);
  static Ordinal finite(long n) { return finite(Integer(n)); }
  static Ordinal omega();
  static Ordinal omega_power(const Ordinal& exponent);  // w^exponent
  // w^exponent * coefficient; coefficient >= 1.
  static Ordinal single_term(const Ordinal& exponent, const Integer& coefficient);

  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const;
  bool is_limit() const;      // nonzero and last exponent nonzero
  bool is_successor() const;  // nonzero and last exponent zero
  Integer finite_value() const;  // requires is_finite()

  // Predecessor of a successor ordinal.
  Ordinal predecessor() const;

  std::strong_ordering operator<=>(const Ordinal& rhs) const;
  bool operator==(const Ordinal& rhs) const;

  friend Ordinal operator+(const Ordinal& a, const Ordinal& b);
  friend Ordinal operator*(const Ordinal& a, const Ordinal& b);
  friend Ordinal hessenberg(const Ordinal& a, const Ordinal& b);
  friend std::vector<std::pair<Ordinal, Ordinal>> hessenberg_decompositions(const Ordinal& x);
  friend Ordinal fundamental_sequence(const Ordinal& l, int n);

  // Canonical text form, e.g. "w^2*3+w+4"; parse_ordinal() inverts it.
  std::string to_string() const;

private:
  std::vector<Term> terms_;
};

struct Ordinal::Term {
  Ordinal exponent;
  Integer coefficient;
};

// Hessenberg (natural) sum: coefficient-wise addition over the merged
// exponent list.
Ordinal hessenberg(const Ordinal& a, const Ordinal& b);

// All ordered pairs (a, b) with hessenberg(a, b) == x, sorted by first
// component. Always finite.
std::vector<std::pair<Ordinal, Ordinal>> hessenberg_decompositions(const Ordinal& x);

// Canonical (Wainer-style) fundamental sequence l[n] for a limit ordinal l
// and n >= 1:
//   (g + w^(a+1))[n] = g + w^a*n
//   (g + w^l')[n]    = g + w^(l'[n])   for l' a limit.
// Strictly increasing in n with supremum l. Throws std::domain_error if l
// is zero or a successor.
Ordinal fundamental_sequence(const Ordinal& l, int n);

}  // namespace schreier
