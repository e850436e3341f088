#include "schreier/ordinal.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace schreier {

Ordinal Ordinal::finite(const Integer& n) {
  if (n < 0) throw std::domain_error("ordinal coefficients must be non-negative");
  Ordinal r;
  if (n > 0) r.terms_.push_back({Ordinal(), n});
  return r;
}

Ordinal Ordinal::omega() { return omega_power(finite(1)); }

Ordinal Ordinal::omega_power(const Ordinal& exponent) {
  return single_term(exponent, 1);
}

Ordinal Ordinal::single_term(const Ordinal& exponent, const Integer& coefficient) {
  if (coefficient < 1) throw std::domain_error("term coefficient must be >= 1");
  Ordinal r;
  r.terms_.push_back({exponent, coefficient});
  return r;
}

bool Ordinal::is_finite() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero());
}

bool Ordinal::is_limit() const {
  return !terms_.empty() && !terms_.back().exponent.is_zero();
}

bool Ordinal::is_successor() const {
  return !terms_.empty() && terms_.back().exponent.is_zero();
}

Integer Ordinal::finite_value() const {
  if (!is_finite()) throw std::domain_error("ordinal is not finite");
  return terms_.empty() ? Integer(0) : terms_[0].coefficient;
}

Ordinal Ordinal::predecessor() const {
  if (!is_successor()) throw std::domain_error("predecessor of a non-successor ordinal");
  Ordinal r = *this;
  if (r.terms_.back().coefficient > 1) {
    r.terms_.back().coefficient -= 1;
  } else {
    r.terms_.pop_back();
  }
  return r;
}

std::strong_ordering Ordinal::operator<=>(const Ordinal& rhs) const {
  const auto& a = terms_;
  const auto& b = rhs.terms_;
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (auto c = a[i].exponent <=> b[i].exponent; c != 0) return c;
    if (a[i].coefficient != b[i].coefficient)
      return a[i].coefficient < b[i].coefficient ? std::strong_ordering::less
                                                 : std::strong_ordering::greater;
  }
  return a.size() <=> b.size();
}

bool Ordinal::operator==(const Ordinal& rhs) const { return (*this <=> rhs) == 0; }

Ordinal operator+(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return b;
  const Ordinal& lead = b.terms_[0].exponent;
  Ordinal r;
  // Terms of a with exponent above b's leading exponent survive; an equal
  // exponent merges; everything smaller is absorbed.
  for (const auto& t : a.terms_) {
    if (t.exponent > lead) {
      r.terms_.push_back(t);
    } else {
      break;
    }
  }
  size_t kept = r.terms_.size();
  r.terms_.push_back(b.terms_[0]);
  if (kept < a.terms_.size() && a.terms_[kept].exponent == lead)
    r.terms_.back().coefficient += a.terms_[kept].coefficient;
  r.terms_.insert(r.terms_.end(), b.terms_.begin() + 1, b.terms_.end());
  return r;
}

namespace {

// a * (w^beta * n) for a single CNF term.
Ordinal mul_term(const Ordinal& a, const Ordinal& beta, const Integer& n) {
  if (a.is_zero()) return Ordinal();
  if (beta.is_zero()) {
    // Right factor finite: multiply the leading coefficient, keep the tail.
    Ordinal r = Ordinal::single_term(a.terms()[0].exponent, a.terms()[0].coefficient * n);
    for (size_t i = 1; i < a.terms().size(); ++i)
      r = r + Ordinal::single_term(a.terms()[i].exponent, a.terms()[i].coefficient);
    return r;
  }
  return Ordinal::single_term(a.terms()[0].exponent + beta, n);
}

}  // namespace

Ordinal operator*(const Ordinal& a, const Ordinal& b) {
  if (a.is_zero() || b.is_zero()) return Ordinal();
  Ordinal r;
  for (const auto& t : b.terms_) r = r + mul_term(a, t.exponent, t.coefficient);
  return r;
}

Ordinal hessenberg(const Ordinal& a, const Ordinal& b) {
  Ordinal r;
  auto& out = r.terms_;
  size_t i = 0, j = 0;
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  while (i < ta.size() || j < tb.size()) {
    if (j == tb.size() || (i < ta.size() && ta[i].exponent > tb[j].exponent)) {
      out.push_back(ta[i++]);
    } else if (i == ta.size() || tb[j].exponent > ta[i].exponent) {
      out.push_back(tb[j++]);
    } else {
      out.push_back({ta[i].exponent, ta[i].coefficient + tb[j].coefficient});
      ++i, ++j;
    }
  }
  return r;
}

std::vector<std::pair<Ordinal, Ordinal>> hessenberg_decompositions(const Ordinal& x) {
  // Split every CNF coefficient; the cartesian product of the per-term
  // splits enumerates exactly the solutions of a (+) b = x.
  std::vector<std::pair<Ordinal, Ordinal>> result;
  const auto& ts = x.terms();
  std::vector<Integer> pick(ts.size(), 0);
  for (;;) {
    Ordinal a, b;
    auto& aterms = a.terms_;
    auto& bterms = b.terms_;
    for (size_t i = 0; i < ts.size(); ++i) {
      if (pick[i] > 0) aterms.push_back({ts[i].exponent, pick[i]});
      if (ts[i].coefficient - pick[i] > 0)
        bterms.push_back({ts[i].exponent, ts[i].coefficient - pick[i]});
    }
    result.emplace_back(std::move(a), std::move(b));
    size_t i = ts.size();
    while (i > 0) {
      --i;
      if (pick[i] < ts[i].coefficient) {
        ++pick[i];
        for (size_t j = i + 1; j < ts.size(); ++j) pick[j] = 0;
        break;
      }
      if (i == 0) {
        std::sort(result.begin(), result.end(),
                  [](const auto& p, const auto& q) { return p.first < q.first; });
        return result;
      }
    }
    if (ts.empty()) {
      return result;  // x == 0: the single pair (0, 0)
    }
  }
}

Ordinal fundamental_sequence(const Ordinal& l, int n) {
  if (n < 1) throw std::domain_error("fundamental sequence index must be >= 1");
  if (!l.is_limit()) throw std::domain_error("fundamental sequence of a non-limit ordinal");
  const auto& ts = l.terms();
  const Ordinal& beta = ts.back().exponent;
  // gamma = l with the last w^beta peeled off.
  Ordinal gamma;
  auto& gterms = gamma.terms_;
  gterms.assign(ts.begin(), ts.end() - 1);
  if (ts.back().coefficient > 1) gterms.push_back({beta, ts.back().coefficient - 1});
  if (beta.is_successor()) {
    return gamma + Ordinal::single_term(beta.predecessor(), Integer(n));
  }
  return gamma + Ordinal::omega_power(fundamental_sequence(beta, n));
}

namespace {

// An exponent prints without parentheses when it is an integer or a chain
// w^w^...^k; these re-parse unambiguously after '^'.
bool atom_printable(const Ordinal& e) {
  if (e.is_finite()) return true;
  return e.terms().size() == 1 && e.terms()[0].coefficient == 1 &&
         atom_printable(e.terms()[0].exponent);
}

}  // namespace

std::string Ordinal::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << '+';
    first = false;
    if (t.exponent.is_zero()) {
      os << t.coefficient;
      continue;
    }
    os << 'w';
    if (!(t.exponent == Ordinal::finite(1))) {
      os << '^';
      if (atom_printable(t.exponent)) {
        os << t.exponent.to_string();
      } else {
        os << '(' << t.exponent.to_string() << ')';
      }
    }
    if (t.coefficient != 1) os << '*' << t.coefficient;
  }
  return os.str();
}

}  // namespace schreier
