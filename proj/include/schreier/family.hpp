#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "schreier/finset.hpp"
#include "schreier/ordinal.hpp"

namespace schreier {

enum class FamilyKind {
  Card,          // A_n: sets of cardinality <= n; Card(0) = {empty}
  SchreierBase,  // S = D(A_n) = {E : |E| <= min E}
  Schreier,      // S_xi
  FineSchreier,  // F_xi
  Sum,           // (F, G) = {F^G}
  Prod,          // F[G]
  Pow,           // [F]^n
  Diag,          // D(G_n) over a closed-form rule; arises from limit unfoldings
  Pre,           // M^{-1}(F)
};

// Closed-form index sequences allowed under a diagonalization. Arbitrary
// sequences are excluded so the symbolic index stays computable.
enum class DiagRule {
  Cardinality,      // n -> A_n
  SchreierLimit,    // n -> S_{lambda[n]}
  FineSchreierLimit,  // n -> F_{lambda[n]}
};

// A regular family on the finite subsets of N, given as a constructor
// expression. Nodes are immutable and hash-consed: structurally equal
// expressions share one node, so equality is O(1) and (family, set) pairs
// can key memo tables. Membership, decomposition, and extension are pure.
class Family {
public:
  struct Node;

  Family() = delete;

  static Family card(int n);
  static Family schreier_base();
  static Family schreier(const Ordinal& xi);
  static Family fine_schreier(const Ordinal& xi);
  static Family sum(const Family& f, const Family& g);
  static Family prod(const Family& f, const Family& g);
  static Family pow(const Family& f, int n);  // n >= 1
  static Family pre(const Relabeling& m, const Family& f);

  FamilyKind kind() const;
  int card_bound() const;           // Card
  int pow_exponent() const;         // Pow
  const Ordinal& ordinal_arg() const;  // Schreier / FineSchreier / Diag limit
  Family left() const;              // Sum/Prod first argument, Pow/Pre operand
  Family right() const;             // Sum/Prod second argument
  const Relabeling& relabeling() const;
  DiagRule diag_rule() const;

  // Membership of E^n is independent of n once n > max E. True for every
  // constructor except Pre, whose relabeling is not inspected.
  bool tail_invariant() const;

  bool member(const FinSet& e) const;
  // Least n > max E with E^n a member; absent iff E is maximal.
  // Throws std::domain_error when E is not a member.
  std::optional<int> min_extension(const FinSet& e) const;
  bool is_maximal(const FinSet& e) const;

  // Greedy maximal-initial-segment splitting of E with respect to this
  // family; exists iff (min E) is a member, and is then unique.
  std::optional<std::vector<FinSet>> standard_decomposition(const FinSet& e) const;

  // Successive nonempty blocks whose minima form a member.
  bool is_admissible(const std::vector<FinSet>& blocks) const;

  // All members contained in [1, ground], in lexicographic order.
  std::vector<FinSet> enumerate(int ground) const;

  size_t id() const;
  bool operator==(const Family& rhs) const { return node_ == rhs.node_; }
  bool operator!=(const Family& rhs) const { return node_ != rhs.node_; }

  std::string to_string() const;

  // Single evaluation with shared memoization across queries. The cache is
  // owned by the caller, keeping results independent of any global state.
  class Ctx;
  bool member(const FinSet& e, Ctx& ctx) const;
  std::optional<int> min_extension(const FinSet& e, Ctx& ctx) const;
  std::optional<std::vector<FinSet>> standard_decomposition(const FinSet& e, Ctx& ctx) const;

private:
  explicit Family(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Family diag(DiagRule rule, const Ordinal& limit);
  Family unfold() const;  // Schreier/FineSchreier/Pow rewritten one step
  Family diag_member_family(int k) const;  // Diag: the k-th family of the rule

  std::shared_ptr<const Node> node_;

  friend Ordinal iota(const Family&);
  friend class IndexCtx;
};

class Family::Ctx {
public:
  Ctx() = default;
  Ctx(const Ctx&) = delete;
  Ctx& operator=(const Ctx&) = delete;

private:
  std::map<std::pair<size_t, std::vector<int>>, bool> member_;
  std::map<std::pair<size_t, std::vector<int>>, std::optional<int>> minext_;
  friend class Family;
};

}  // namespace schreier
