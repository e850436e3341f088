#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

namespace schreier {

// Strictly increasing finite sequence of positive integers; the element type
// of every family. The empty set is permitted.
class FinSet {
public:
  FinSet() = default;
  explicit FinSet(std::vector<int> elems);  // validates strict increase, elems >= 1

  static FinSet empty() { return FinSet(); }
  static FinSet singleton(int n) { return FinSet({n}); }

  size_t size() const { return elems_.size(); }
  bool is_empty() const { return elems_.empty(); }
  int min() const;  // requires nonempty
  int max() const;  // requires nonempty
  int operator[](size_t i) const { return elems_[i]; }
  const std::vector<int>& elements() const { return elems_; }

  FinSet prefix(size_t m) const;       // first m elements, m <= size
  FinSet suffix_from(size_t m) const;  // elements m..end
  FinSet append(int n) const;          // requires n > max (or any n >= 1 if empty)
  FinSet concat(const FinSet& f) const;  // requires *this < f

  bool contains(int n) const;

  // E < F in the block sense: max E < min F; empty compares below and above
  // everything by convention.
  bool before(const FinSet& f) const;

  // *this is an initial segment of f (strictly shorter).
  bool strict_initial_segment_of(const FinSet& f) const;
  bool initial_segment_of(const FinSet& f) const;  // allows equality

  auto operator<=>(const FinSet& rhs) const = default;

  std::string to_string() const;  // "{2,3,5}"

private:
  std::vector<int> elems_;
};

bool is_subset(const FinSet& e, const FinSet& f);
// L is a spread of E: equal length and coordinate-wise E[i] <= L[i].
bool is_spread(const FinSet& e, const FinSet& l);

// A strictly increasing map M: N -> N given in closed form, either an
// arithmetic progression or an explicit prefix followed by an arithmetic
// tail. Denotes the relabeling n -> m_n of §-style subsequence passing.
class Relabeling {
public:
  // M(n) = start + (n-1)*step
  static Relabeling arithmetic(int start, int step);
  // M(n) = prefix[n-1] for n <= |prefix|, then start + (n-|prefix|-1)*step.
  static Relabeling with_prefix(std::vector<int> prefix, int start, int step);
  static Relabeling evens() { return arithmetic(2, 2); }
  static Relabeling odds() { return arithmetic(1, 2); }

  int apply(int n) const;
  FinSet apply(const FinSet& e) const;
  // Least n with M(n) >= m.
  int preimage_at_least(int m) const;

  const std::vector<int>& prefix() const { return prefix_; }
  int start() const { return start_; }
  int step() const { return step_; }

  bool operator==(const Relabeling&) const = default;
  std::string to_string() const;

private:
  Relabeling() = default;
  std::vector<int> prefix_;
  int start_ = 1;
  int step_ = 1;
};

}  // namespace schreier
