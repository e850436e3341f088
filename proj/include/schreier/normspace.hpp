#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "schreier/family.hpp"

namespace schreier {

using Rational = boost::multiprecision::cpp_rational;

// Finitely supported vector with exact rational coefficients; no stored
// zeros, entries sorted by position.
class SparseVec {
public:
  SparseVec() = default;
  static SparseVec from_entries(std::vector<std::pair<int, Rational>> entries);
  static SparseVec unit(int pos);

  size_t size() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }
  const std::vector<std::pair<int, Rational>>& entries() const { return entries_; }
  Rational at(int pos) const;
  FinSet support() const;
  Rational l1() const;

  SparseVec operator+(const SparseVec& rhs) const;
  SparseVec scaled(const Rational& c) const;
  // Coordinatewise |.|; norms depend only on this by 1-unconditionality.
  SparseVec abs() const;
  SparseVec restricted(const FinSet& e) const;

  bool operator==(const SparseVec&) const = default;
  std::string to_string() const;  // "[3:1/2,5:-2]"

private:
  std::vector<std::pair<int, Rational>> entries_;
};

// theta_m, m >= 1: either geometric theta^m or an explicit strictly
// decreasing prefix continued geometrically. Both decrease strictly to 0,
// which the norm recursion's cutoff requires.
class ThetaSeq {
public:
  static ThetaSeq geometric(const Rational& theta);
  static ThetaSeq with_prefix(std::vector<Rational> prefix, const Rational& ratio);
  Rational at(int m) const;
  bool is_geometric() const { return prefix_.size() == 1 && prefix_[0] == ratio_; }
  const std::vector<Rational>& prefix() const { return prefix_; }
  const Rational& ratio() const { return ratio_; }
  bool operator==(const ThetaSeq&) const = default;

private:
  ThetaSeq() = default;
  std::vector<Rational> prefix_;
  Rational ratio_;
};

// Closed-form family sequence m -> G_m for the mixed Tsirelson constructor.
class FamilySeq {
public:
  enum class Kind { Powers, Constant, SchreierSeq, FineSchreierSeq };
  static FamilySeq powers(const Family& g);          // m -> [g]^m
  static FamilySeq constant(const Family& g);        // m -> g
  static FamilySeq schreier_seq(const Ordinal& limit);  // m -> S_{limit[m]}
  static FamilySeq fine_seq(const Ordinal& limit);      // m -> F_{limit[m]}
  Family at(int m) const;
  Kind kind() const { return kind_; }
  const Ordinal& limit() const { return limit_; }
  Family base() const;
  bool operator==(const FamilySeq& rhs) const;

private:
  FamilySeq(Kind k, std::optional<Family> g, Ordinal l)
      : kind_(k), base_(std::move(g)), limit_(std::move(l)) {}
  Kind kind_;
  std::optional<Family> base_;
  Ordinal limit_;
};

enum class SpaceKind { FamilySup, Tsirelson, DirectSum };

// Norm-space expression: family-sup l1 norms (Schreier spaces), mixed
// Tsirelson spaces via the implicit equation, finite U-direct sums.
class Space {
public:
  struct Node;

  static Space family_sup(const Family& g0);
  static Space schreier_space(const Ordinal& xi);  // X_xi = family_sup(S_xi)
  // T(G0, (theta_m, G_m)); G0 must contain all singletons.
  static Space tsirelson(const Family& g0, const ThetaSeq& thetas, const FamilySeq& gseq);
  // T(theta, G) = T(S_0, (theta^m, [G]^m)), printed in the short form.
  static Space tsirelson_single(const Rational& theta, const Family& g);
  static Space direct_sum(const Space& u, std::vector<Space> summands);

  SpaceKind kind() const;
  const Family& g0() const;          // FamilySup / Tsirelson
  const ThetaSeq& thetas() const;    // Tsirelson
  const FamilySeq& gseq() const;     // Tsirelson
  bool single_form() const;          // printed as T(theta, G)
  Space direct_sum_base() const;
  const std::vector<Space>& summands() const;

  bool operator==(const Space& rhs) const;
  std::string to_string() const;

private:
  explicit Space(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct NormOptions {
  // Searches are refused above this support size unless overridden.
  int support_limit = 24;
  bool allow_large_support = false;
};

// max over members E of G0 of the l1 mass of x on E, by hereditary-pruned
// search over the support.
Rational family_sup_norm(const Family& g0, const SparseVec& x);

// Exact mixed Tsirelson norm via the implicit equation, memoized over
// support intervals. Throws std::invalid_argument when the support exceeds
// the configured limit.
Rational tsirelson_norm(const Space& t, const SparseVec& x, const NormOptions& opts = {});

// Norm in any non-direct-sum space.
Rational norm(const Space& s, const SparseVec& x, const NormOptions& opts = {});

// Right-hand side of the implicit equation evaluated at the computed norm,
// with the self-referential full-support block admitted. Equals the norm
// exactly; exposed for the fixpoint self-consistency check.
Rational tsirelson_implicit_rhs(const Space& t, const SparseVec& x, const NormOptions& opts = {});

// ||sum_{i in E} a_i e_i|| >= theta_m^k * sum |a_i| for E in [G_m]^k[G_0].
// Throws std::domain_error when E lies outside the composed family.
bool l1_lower_certificate(const Space& t, const FinSet& e, int m, int k,
                          const std::vector<Rational>& coeffs, const NormOptions& opts = {});

// ||(x_n)|| = || sum ||x_n|| e_n ||_U with finitely many summands.
Rational direct_sum_norm(const Space& dsum, const std::vector<SparseVec>& parts,
                         const NormOptions& opts = {});

struct SchreierSumWitness {
  bool holds;              // direct-sum norm >= sum of |coeffs|
  Rational direct_sum_value;
  Rational chain_value;    // the lower-bounding projection chain, summand by summand
  Rational coeff_sum;
};

// The lower-estimate tree vector of a product family member: coefficient
// a_F on the basis vector of the last standard block of each predecessor F
// of E, evaluated inside (⊕ X_zeta)_{X_xi}. coeffs[t-1] belongs to the
// length-t predecessor.
SchreierSumWitness schreier_sum_witness(const Space& zeta_space, const Family& xi_family,
                                        const FinSet& e, const std::vector<Rational>& coeffs);

}  // namespace schreier
