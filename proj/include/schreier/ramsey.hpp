#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "schreier/family.hpp"
#include "schreier/ordinal.hpp"

namespace schreier {

// Closed-form predicate over a pair (E, F) with E a nonempty member and F a
// maximal extension of E. Built from a small grammar so colorings are
// reproducible from the command line.
class ColorPred {
public:
  enum class Kind { True, False, Even, Odd, Le, Ge, Eq, Not, And, Or };
  enum class Feature { MinE, MaxE, CardE, SumE, MinF, MaxF, CardF, SumF };

  static ColorPred constant(bool b);
  static ColorPred parity(Feature f, bool even);
  static ColorPred cmp(Kind k, Feature f, long bound);  // Le / Ge / Eq
  static ColorPred negation(ColorPred p);
  static ColorPred conj(ColorPred a, ColorPred b);
  static ColorPred disj(ColorPred a, ColorPred b);

  bool eval(const FinSet& e, const FinSet& f) const;
  std::string to_string() const;

  Kind kind() const { return kind_; }
  Feature feature() const { return feature_; }
  long bound() const { return bound_; }
  const ColorPred& child(size_t i) const { return *children_[i]; }

private:
  ColorPred() = default;
  Kind kind_ = Kind::True;
  Feature feature_ = Feature::MaxE;
  long bound_ = 0;
  std::vector<std::shared_ptr<const ColorPred>> children_;
};

// Two-color assignment on pairs (E, maximal F >= E). A^j_E is the set of
// maximal extensions of E carrying color j; totality (every pair has at
// least one color) is an invariant, automatic in the single-predicate form.
class Coloring {
public:
  static Coloring from_pred(const ColorPred& p);  // color 0 iff p, color 1 iff not p
  static Coloring both(const ColorPred& p0, const ColorPred& p1);

  bool has_color(int j, const FinSet& e, const FinSet& f) const;
  // Checks totality on every (E, maximal F) inside [1, ground].
  bool total_on(const Family& fam, int ground) const;
  bool single_pred() const { return single_; }
  const ColorPred& pred(int j) const { return j == 0 ? p0_ : p1_; }
  std::string to_string() const;

private:
  Coloring(ColorPred p0, ColorPred p1, bool single)
      : p0_(std::move(p0)), p1_(std::move(p1)), single_(single) {}
  ColorPred p0_, p1_;
  bool single_;
};

// Finite-table extended embedding of one family into another: i on the
// nonempty members with elements <= src_ground, e on the globally maximal
// ones among them, with i order-isomorphic onto its image and i(E) an
// initial segment of e(E).
struct ExtendedEmbedding {
  int src_ground = 0;
  std::map<FinSet, FinSet> i_map;
  std::map<FinSet, FinSet> e_map;
};

struct VerifyResult {
  bool ok = true;
  std::string violation;  // first violated constraint, with its witness
  explicit operator bool() const { return ok; }
};

VerifyResult verify_extended_embedding(const Family& src, const Family& dst,
                                       const ExtendedEmbedding& emb);

// The induced coloring is monochromatically j: every maximal E in the table
// satisfies e(E) in the intersection over k of A^j_{i(E|_k)}.
struct MonoResult {
  bool ok = true;
  std::string violation;
  std::optional<std::pair<FinSet, int>> failure;  // failing (E, k)
  explicit operator bool() const { return ok; }
};

MonoResult verify_monochromatic(const Family& src, const Family& dst,
                                const ExtendedEmbedding& emb, const Coloring& coloring, int j);

struct SumWitness {
  Ordinal xi0, xi1;
  ExtendedEmbedding emb0, emb1;  // empty tables when the ordinal is 0
};

struct SumSearchOptions {
  int bound = 30;       // images live in [1, bound]
  int src_ground = 4;   // source tables truncated to [1, src_ground]
};

// Bounded best-effort search for the coloring-lemma-for-sums witness pair:
// monochromatic extended embeddings of the fine Schreier families of two
// ordinals with Hessenberg sum iota(f). Requires iota(f) finite. Absence
// means "not found within the bound", never a refutation. Any returned
// witness re-verifies.
std::optional<SumWitness> search_sum_witness(const Family& f, const Coloring& coloring,
                                             const SumSearchOptions& opts = {});

// The (xi0, xi1) candidates the searcher iterates over, in order.
std::vector<std::pair<Ordinal, Ordinal>> sum_witness_candidates(const Family& f);

// Chain in a tree: nonempty members, pairwise comparable under the
// initial-segment order, listed shortest first.
using Chain = std::vector<FinSet>;

// Closed-form predicate over chains for the product coloring lemma;
// f(c) = 0 iff the predicate holds.
class ChainPred {
public:
  enum class Kind { True, False, Even, Odd, Le, Ge, Eq, Not, And, Or };
  enum class Feature { Len, TopCard, TopMax, BotMin };

  static ChainPred constant(bool b);
  static ChainPred parity(Feature f, bool even);
  static ChainPred cmp(Kind k, Feature f, long bound);
  static ChainPred negation(ChainPred p);
  static ChainPred conj(ChainPred a, ChainPred b);
  static ChainPred disj(ChainPred a, ChainPred b);

  bool eval(const Chain& c) const;
  std::string to_string() const;

  Kind kind() const { return kind_; }
  Feature feature() const { return feature_; }
  long bound() const { return bound_; }
  const ChainPred& child(size_t i) const { return *children_[i]; }

private:
  ChainPred() = default;
  Kind kind_ = Kind::True;
  Feature feature_ = Feature::Len;
  long bound_ = 0;
  std::vector<std::shared_ptr<const ChainPred>> children_;
};

// Order-preserving map from the nonempty members of a family (truncated to
// [1, src_ground]) into chains of a product family.
struct ChainMap {
  int src_ground = 0;
  std::map<FinSet, Chain> table;
};

// All chain-map invariants plus f(c) = 0 on every image chain, where
// color 0 holds iff zero_iff evaluates true.
VerifyResult verify_product_witness(const Family& f, const Family& g, const ChainPred& zero_iff,
                                    const ChainMap& jmap);

// Per-node subsequence selector for prunings, in closed form. The index map
// attached to a node E with first extension index s is strictly increasing
// on [s, infinity).
class Selector {
public:
  enum class Kind { Id, Double, Shift, Ap };
  static Selector identity();
  static Selector doubling();
  static Selector shift(int k);
  // psi(n) = a + (n - s) * d, anchored at the node's first extension index.
  static Selector ap(int a, int d);

  int apply(int n, int s) const;
  Kind kind() const { return kind_; }
  int a() const { return a_; }
  int d() const { return d_; }
  std::string to_string() const;

private:
  Selector(Kind k, int a, int d) : kind_(k), a_(a), d_(d) {}
  Kind kind_;
  int a_ = 0, d_ = 0;
};

// phi with phi(E^n) = phi(E)^psi_E(n), built from the selector and checked
// by sampling; phi(E) recomputes on demand.
class PruningMap {
public:
  PruningMap(Family f, Selector sel) : family_(std::move(f)), selector_(sel) {}
  FinSet phi(const FinSet& e) const;  // throws on selector violations
  const Family& family() const { return family_; }
  const Selector& selector() const { return selector_; }

private:
  Family family_;
  Selector selector_;
};

struct PruneReport {
  bool ok = true;
  std::string violation;
  std::vector<std::pair<FinSet, FinSet>> samples;  // E -> phi(E), in visit order
};

// Builds the pruning map and verifies the defining identity, strict
// increase, and membership of the image on all nodes of depth <= depth,
// breadth <= breadth.
std::pair<PruningMap, PruneReport> prune(const Family& f, const Selector& sel, int depth,
                                         int breadth);

}  // namespace schreier
