#include "schreier/normspace.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace schreier {

SparseVec SparseVec::from_entries(std::vector<std::pair<int, Rational>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec v;
  for (auto& [pos, c] : entries) {
    if (pos < 1) throw std::invalid_argument("vector positions must be positive");
    if (c == 0) continue;
    if (!v.entries_.empty() && v.entries_.back().first == pos) {
      v.entries_.back().second += c;
      if (v.entries_.back().second == 0) v.entries_.pop_back();
    } else {
      v.entries_.emplace_back(pos, std::move(c));
    }
  }
  return v;
}

SparseVec SparseVec::unit(int pos) { return from_entries({{pos, Rational(1)}}); }

Rational SparseVec::at(int pos) const {
  for (const auto& [p, c] : entries_)
    if (p == pos) return c;
  return Rational(0);
}

FinSet SparseVec::support() const {
  std::vector<int> s;
  s.reserve(entries_.size());
  for (const auto& [p, c] : entries_) s.push_back(p);
  return FinSet(std::move(s));
}

Rational SparseVec::l1() const {
  Rational r = 0;
  for (const auto& [p, c] : entries_) r += boost::multiprecision::abs(c);
  return r;
}

SparseVec SparseVec::operator+(const SparseVec& rhs) const {
  auto e = entries_;
  e.insert(e.end(), rhs.entries_.begin(), rhs.entries_.end());
  return from_entries(std::move(e));
}

SparseVec SparseVec::scaled(const Rational& c) const {
  std::vector<std::pair<int, Rational>> e;
  for (const auto& [p, v] : entries_) e.emplace_back(p, v * c);
  return from_entries(std::move(e));
}

SparseVec SparseVec::abs() const {
  std::vector<std::pair<int, Rational>> e;
  for (const auto& [p, v] : entries_) e.emplace_back(p, boost::multiprecision::abs(v));
  return from_entries(std::move(e));
}

SparseVec SparseVec::restricted(const FinSet& s) const {
  std::vector<std::pair<int, Rational>> e;
  for (const auto& [p, v] : entries_)
    if (s.contains(p)) e.emplace_back(p, v);
  return from_entries(std::move(e));
}

std::string SparseVec::to_string() const {
  std::ostringstream os;
  os << '[';
  bool first = true;
  for (const auto& [p, c] : entries_) {
    if (!first) os << ',';
    first = false;
    os << p << ':' << c;
  }
  os << ']';
  return os.str();
}

ThetaSeq ThetaSeq::geometric(const Rational& theta) {
  return with_prefix({theta}, theta);
}

ThetaSeq ThetaSeq::with_prefix(std::vector<Rational> prefix, const Rational& ratio) {
  if (prefix.empty()) throw std::invalid_argument("theta sequence needs at least one value");
  if (!(ratio > 0 && ratio < 1))
    throw std::invalid_argument("theta ratio must lie in (0,1)");
  for (size_t i = 0; i < prefix.size(); ++i) {
    if (!(prefix[i] > 0 && prefix[i] < 1))
      throw std::invalid_argument("theta values must lie in (0,1)");
    if (i > 0 && !(prefix[i] < prefix[i - 1]))
      throw std::invalid_argument("theta values must be strictly decreasing");
  }
  ThetaSeq t;
  t.prefix_ = std::move(prefix);
  t.ratio_ = ratio;
  return t;
}

Rational ThetaSeq::at(int m) const {
  if (m < 1) throw std::domain_error("theta index must be >= 1");
  if (static_cast<size_t>(m) <= prefix_.size()) return prefix_[m - 1];
  Rational r = prefix_.back();
  for (size_t i = prefix_.size(); i < static_cast<size_t>(m); ++i) r *= ratio_;
  return r;
}

FamilySeq FamilySeq::powers(const Family& g) { return FamilySeq(Kind::Powers, g, Ordinal()); }
FamilySeq FamilySeq::constant(const Family& g) { return FamilySeq(Kind::Constant, g, Ordinal()); }

FamilySeq FamilySeq::schreier_seq(const Ordinal& limit) {
  if (!limit.is_limit()) throw std::invalid_argument("sseq requires a limit ordinal");
  return FamilySeq(Kind::SchreierSeq, std::nullopt, limit);
}

FamilySeq FamilySeq::fine_seq(const Ordinal& limit) {
  if (!limit.is_limit()) throw std::invalid_argument("fsseq requires a limit ordinal");
  return FamilySeq(Kind::FineSchreierSeq, std::nullopt, limit);
}

Family FamilySeq::at(int m) const {
  if (m < 1) throw std::domain_error("family sequence index must be >= 1");
  switch (kind_) {
    case Kind::Powers:
      return Family::pow(*base_, m);
    case Kind::Constant:
      return *base_;
    case Kind::SchreierSeq:
      return Family::schreier(fundamental_sequence(limit_, m));
    case Kind::FineSchreierSeq:
      return Family::fine_schreier(fundamental_sequence(limit_, m));
  }
  throw std::logic_error("unknown family sequence kind");
}

Family FamilySeq::base() const {
  if (!base_) throw std::logic_error("family sequence has no base family");
  return *base_;
}

bool FamilySeq::operator==(const FamilySeq& rhs) const {
  if (kind_ != rhs.kind_) return false;
  if (base_.has_value() != rhs.base_.has_value()) return false;
  if (base_ && !(*base_ == *rhs.base_)) return false;
  return limit_ == rhs.limit_;
}

struct Space::Node {
  SpaceKind kind;
  std::optional<Family> g0;
  std::optional<ThetaSeq> thetas;
  std::optional<FamilySeq> gseq;
  bool single_form = false;
  std::shared_ptr<const Node> base;  // DirectSum U
  std::vector<Space> summands;
};

Space Space::family_sup(const Family& g0) {
  auto n = std::make_shared<Node>();
  n->kind = SpaceKind::FamilySup;
  n->g0 = g0;
  return Space(std::move(n));
}

Space Space::schreier_space(const Ordinal& xi) { return family_sup(Family::schreier(xi)); }

Space Space::tsirelson(const Family& g0, const ThetaSeq& thetas, const FamilySeq& gseq) {
  if (!g0.member(FinSet::singleton(1)))
    throw std::invalid_argument("Tsirelson base family must contain all singletons");
  auto n = std::make_shared<Node>();
  n->kind = SpaceKind::Tsirelson;
  n->g0 = g0;
  n->thetas = thetas;
  n->gseq = gseq;
  return Space(std::move(n));
}

Space Space::tsirelson_single(const Rational& theta, const Family& g) {
  Space s = tsirelson(Family::card(1), ThetaSeq::geometric(theta), FamilySeq::powers(g));
  const_cast<Node*>(s.node_.get())->single_form = true;
  return s;
}

Space Space::direct_sum(const Space& u, std::vector<Space> summands) {
  if (u.kind() == SpaceKind::DirectSum)
    throw std::invalid_argument("direct-sum base space must be a sequence space");
  if (summands.empty()) throw std::invalid_argument("direct sum needs at least one summand");
  for (const auto& s : summands)
    if (s.kind() == SpaceKind::DirectSum)
      throw std::invalid_argument("nested direct sums are not supported");
  auto n = std::make_shared<Node>();
  n->kind = SpaceKind::DirectSum;
  n->base = u.node_;
  n->summands = std::move(summands);
  return Space(std::move(n));
}

SpaceKind Space::kind() const { return node_->kind; }
const Family& Space::g0() const { return *node_->g0; }
const ThetaSeq& Space::thetas() const { return *node_->thetas; }
const FamilySeq& Space::gseq() const { return *node_->gseq; }
bool Space::single_form() const { return node_->single_form; }
Space Space::direct_sum_base() const { return Space(node_->base); }
const std::vector<Space>& Space::summands() const { return node_->summands; }

bool Space::operator==(const Space& rhs) const {
  if (node_ == rhs.node_) return true;
  if (node_->kind != rhs.node_->kind) return false;
  switch (node_->kind) {
    case SpaceKind::FamilySup:
      return *node_->g0 == *rhs.node_->g0;
    case SpaceKind::Tsirelson:
      return *node_->g0 == *rhs.node_->g0 && *node_->thetas == *rhs.node_->thetas &&
             *node_->gseq == *rhs.node_->gseq && node_->single_form == rhs.node_->single_form;
    case SpaceKind::DirectSum: {
      if (!(Space(node_->base) == Space(rhs.node_->base))) return false;
      if (node_->summands.size() != rhs.node_->summands.size()) return false;
      for (size_t i = 0; i < node_->summands.size(); ++i)
        if (!(node_->summands[i] == rhs.node_->summands[i])) return false;
      return true;
    }
  }
  return false;
}

namespace {

std::string rational_str(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

}  // namespace

std::string Space::to_string() const {
  switch (node_->kind) {
    case SpaceKind::FamilySup:
      if (node_->g0->kind() == FamilyKind::Schreier)
        return "X[" + node_->g0->ordinal_arg().to_string() + "]";
      return "sup(" + node_->g0->to_string() + ")";
    case SpaceKind::Tsirelson: {
      if (node_->single_form)
        return "T(" + rational_str(node_->thetas->prefix()[0]) + "," +
               node_->gseq->base().to_string() + ")";
      std::ostringstream os;
      os << "T(";
      const auto& th = *node_->thetas;
      if (th.is_geometric()) {
        os << rational_str(th.ratio());
      } else {
        os << '[';
        for (size_t i = 0; i < th.prefix().size(); ++i) {
          if (i) os << ',';
          os << rational_str(th.prefix()[i]);
        }
        os << ';' << rational_str(th.ratio()) << ']';
      }
      os << ';' << node_->g0->to_string() << ';';
      switch (node_->gseq->kind()) {
        case FamilySeq::Kind::Powers:
          os << "pow(" << node_->gseq->base().to_string() << ')';
          break;
        case FamilySeq::Kind::Constant:
          os << "const(" << node_->gseq->base().to_string() << ')';
          break;
        case FamilySeq::Kind::SchreierSeq:
          os << "sseq[" << node_->gseq->limit().to_string() << ']';
          break;
        case FamilySeq::Kind::FineSchreierSeq:
          os << "fsseq[" << node_->gseq->limit().to_string() << ']';
          break;
      }
      os << ')';
      return os.str();
    }
    case SpaceKind::DirectSum: {
      std::ostringstream os;
      os << "dsum(" << Space(node_->base).to_string() << ';';
      for (size_t i = 0; i < node_->summands.size(); ++i) {
        if (i) os << ',';
        os << node_->summands[i].to_string();
      }
      os << ')';
      return os.str();
    }
  }
  return "?";
}

Rational family_sup_norm(const Family& g0, const SparseVec& x) {
  if (x.is_zero()) return Rational(0);
  SparseVec a = x.abs();
  const auto& es = a.entries();
  Family::Ctx ctx;
  Rational best = 0;
  std::vector<int> cur;
  auto dfs = [&](auto&& self, size_t last, const Rational& sum) -> void {
    for (size_t i = last + 1; i < es.size(); ++i) {
      cur.push_back(es[i].first);
      if (g0.member(FinSet(cur), ctx)) {
        Rational s = sum + es[i].second;
        if (s > best) best = s;
        self(self, i, s);
      }
      cur.pop_back();
    }
  };
  dfs(dfs, static_cast<size_t>(-1), Rational(0));
  return best;
}

namespace {

// Implicit-equation evaluator over one fixed vector. Candidate admissible
// block sequences are reduced to consecutive intervals of the support with
// an optional dropped prefix: replacing each block by the interval between
// successive block minima preserves admissibility (the minima only spread)
// and never lowers the value (unconditional monotonicity). Values are
// memoized per support interval.
class TsirelsonEngine {
public:
  TsirelsonEngine(const Space& sp, const SparseVec& x, const NormOptions& opts)
      : space_(sp), opts_(opts) {
    for (const auto& [p, c] : x.entries()) {
      pos_.push_back(p);
      absc_.push_back(boost::multiprecision::abs(c));
    }
    if (static_cast<int>(pos_.size()) > opts.support_limit && !opts.allow_large_support) {
      std::ostringstream os;
      os << "support size " << pos_.size() << " exceeds the limit of " << opts.support_limit
         << " (raise the support limit to proceed)";
      throw std::invalid_argument(os.str());
    }
  }

  Rational full_norm() {
    if (pos_.empty()) return Rational(0);
    return norm(0, static_cast<int>(pos_.size()) - 1);
  }

  // RHS of the implicit equation at the computed norm, self case included.
  Rational implicit_rhs() {
    if (pos_.empty()) return Rational(0);
    int i = 0, j = static_cast<int>(pos_.size()) - 1;
    Rational value = norm(i, j);
    Rational best = base_norm(i, j);
    Rational ell1 = range_l1(i, j);
    for (int m = 1;; ++m) {
      Rational theta = space_.thetas().at(m);
      if (theta * ell1 <= best) break;
      Rational b = best_partition(m, i, j, /*allow_self=*/true);
      if (b >= 0 && theta * b > best) best = theta * b;
    }
    return best;
  }

private:
  Rational range_l1(int i, int j) const {
    Rational r = 0;
    for (int k = i; k <= j; ++k) r += absc_[k];
    return r;
  }

  Rational base_norm(int i, int j) {
    Rational best = 0;
    std::vector<int> cur;
    const Family& g0 = space_.g0();
    auto dfs = [&](auto&& self, int last, const Rational& sum) -> void {
      for (int k = last + 1; k <= j; ++k) {
        cur.push_back(pos_[k]);
        if (g0.member(FinSet(cur), fam_ctx_)) {
          Rational s = sum + absc_[k];
          if (s > best) best = s;
          self(self, k, s);
        }
        cur.pop_back();
      }
    };
    dfs(dfs, i - 1, Rational(0));
    return best;
  }

  Rational norm(int i, int j) {
    if (i > j) return Rational(0);
    auto key = std::make_pair(i, j);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Rational best = base_norm(i, j);
    Rational ell1 = range_l1(i, j);
    for (int m = 1;; ++m) {
      Rational theta = space_.thetas().at(m);
      if (theta * ell1 <= best) break;
      Rational b = best_partition(m, i, j, /*allow_self=*/false);
      if (b >= 0 && theta * b > best) best = theta * b;
    }
    memo_.emplace(key, best);
    return best;
  }

  // Maximum of sum ||P_block x|| over interval partitions of [s..j] for
  // s in [i..j] whose block minima form a member of G_m; -1 when none.
  // The single block [i..j] is the self-referential case and is only
  // admitted for the fixpoint re-check.
  Rational best_partition(int m, int i, int j, bool allow_self) {
    Family gm = space_.gseq().at(m);
    Rational best = -1;
    // chain(mu, s): best value of blocks from s onward, minima so far mu
    auto chain = [&](auto&& self, FinSet& mu, int s) -> Rational {
      Rational result = -1;
      bool self_case = (mu.size() == 1 && s == i);
      if (!self_case || allow_self) result = norm(s, j);  // close the last block at j
      auto nxt = gm.min_extension(mu, fam_ctx_);
      if (nxt) {
        for (int t = s + 1; t <= j; ++t) {
          if (pos_[t] < *nxt) continue;
          FinSet mu2 = mu.append(pos_[t]);
          Rational rest = self(self, mu2, t);
          if (rest >= 0) {
            Rational v = norm(s, t - 1) + rest;
            if (v > result) result = v;
          }
        }
      }
      return result;
    };
    for (int s = i; s <= j; ++s) {
      FinSet mu = FinSet::singleton(pos_[s]);
      if (!gm.member(mu, fam_ctx_)) continue;
      Rational v = chain(chain, mu, s);
      if (v > best) best = v;
    }
    return best;
  }

  const Space& space_;
  NormOptions opts_;
  std::vector<int> pos_;
  std::vector<Rational> absc_;
  std::map<std::pair<int, int>, Rational> memo_;
  Family::Ctx fam_ctx_;
};

}  // namespace

Rational tsirelson_norm(const Space& t, const SparseVec& x, const NormOptions& opts) {
  if (t.kind() != SpaceKind::Tsirelson)
    throw std::invalid_argument("tsirelson_norm requires a Tsirelson space");
  TsirelsonEngine engine(t, x, opts);
  return engine.full_norm();
}

Rational tsirelson_implicit_rhs(const Space& t, const SparseVec& x, const NormOptions& opts) {
  if (t.kind() != SpaceKind::Tsirelson)
    throw std::invalid_argument("tsirelson_implicit_rhs requires a Tsirelson space");
  TsirelsonEngine engine(t, x, opts);
  engine.full_norm();
  return engine.implicit_rhs();
}

Rational norm(const Space& s, const SparseVec& x, const NormOptions& opts) {
  switch (s.kind()) {
    case SpaceKind::FamilySup:
      if (static_cast<int>(x.size()) > opts.support_limit && !opts.allow_large_support) {
        std::ostringstream os;
        os << "support size " << x.size() << " exceeds the limit of " << opts.support_limit
           << " (raise the support limit to proceed)";
        throw std::invalid_argument(os.str());
      }
      return family_sup_norm(s.g0(), x);
    case SpaceKind::Tsirelson:
      return tsirelson_norm(s, x, opts);
    case SpaceKind::DirectSum:
      throw std::invalid_argument("direct-sum norms take one vector per summand");
  }
  throw std::logic_error("unknown space kind");
}

bool l1_lower_certificate(const Space& t, const FinSet& e, int m, int k,
                          const std::vector<Rational>& coeffs, const NormOptions& opts) {
  if (t.kind() != SpaceKind::Tsirelson)
    throw std::invalid_argument("l1_lower_certificate requires a Tsirelson space");
  if (m < 1 || k < 1) throw std::invalid_argument("certificate exponents must be >= 1");
  if (coeffs.size() != e.size())
    throw std::invalid_argument("certificate needs one coefficient per element of E");
  Family composed = Family::prod(Family::pow(t.gseq().at(m), k), t.g0());
  if (!composed.member(e))
    throw std::domain_error("certificate set lies outside [G_m]^k[G_0]");
  std::vector<std::pair<int, Rational>> entries;
  Rational total = 0;
  for (size_t i = 0; i < e.size(); ++i) {
    entries.emplace_back(e[static_cast<int>(i)], coeffs[i]);
    total += boost::multiprecision::abs(coeffs[i]);
  }
  Rational lhs = tsirelson_norm(t, SparseVec::from_entries(std::move(entries)), opts);
  Rational theta = t.thetas().at(m);
  Rational bound = total;
  for (int i = 0; i < k; ++i) bound *= theta;
  return lhs >= bound;
}

Rational direct_sum_norm(const Space& dsum, const std::vector<SparseVec>& parts,
                         const NormOptions& opts) {
  if (dsum.kind() != SpaceKind::DirectSum)
    throw std::invalid_argument("direct_sum_norm requires a direct-sum space");
  if (parts.size() != dsum.summands().size())
    throw std::invalid_argument("direct sum needs exactly one vector per summand");
  std::vector<std::pair<int, Rational>> scalars;
  for (size_t i = 0; i < parts.size(); ++i) {
    Rational v = norm(dsum.summands()[i], parts[i], opts);
    scalars.emplace_back(static_cast<int>(i) + 1, std::move(v));
  }
  return norm(dsum.direct_sum_base(), SparseVec::from_entries(std::move(scalars)), opts);
}

SchreierSumWitness schreier_sum_witness(const Space& zeta_space, const Family& xi_family,
                                        const FinSet& e, const std::vector<Rational>& coeffs) {
  if (zeta_space.kind() != SpaceKind::FamilySup)
    throw std::invalid_argument("schreier_sum_witness needs a family-sup summand space");
  const Family& zeta = zeta_space.g0();
  if (coeffs.size() != e.size())
    throw std::invalid_argument("witness needs one coefficient per predecessor of E");
  SchreierSumWitness w;
  w.coeff_sum = 0;
  for (const auto& c : coeffs) w.coeff_sum += boost::multiprecision::abs(c);
  if (e.is_empty()) {
    w.direct_sum_value = 0;
    w.chain_value = 0;
    w.holds = true;
    return w;
  }
  if (!Family::prod(xi_family, zeta).member(e))
    throw std::domain_error("witness set lies outside the product family");
  auto blocks = *zeta.standard_decomposition(e);
  // The length-t predecessor F of E ends inside some standard block; its
  // tree vector is the coordinate max F of the summand indexed min of that
  // block, carrying coefficient coeffs[t-1].
  std::vector<std::pair<int, Rational>> scalars;
  Rational chain = 0;
  size_t t = 0;
  for (const auto& b : blocks) {
    std::vector<std::pair<int, Rational>> comp;
    for (size_t i = 0; i < b.size(); ++i) comp.emplace_back(b[i], coeffs[t++]);
    Rational cnorm = family_sup_norm(zeta, SparseVec::from_entries(std::move(comp)));
    chain += cnorm;
    scalars.emplace_back(b.min(), std::move(cnorm));
  }
  w.direct_sum_value =
      family_sup_norm(xi_family, SparseVec::from_entries(std::move(scalars)));
  w.chain_value = chain;
  w.holds = w.direct_sum_value >= w.coeff_sum;
  return w;
}

}  // namespace schreier
