#include "schreier/index.hpp"

#include <map>
#include <stdexcept>

namespace schreier {

Ordinal iota(const Family& f) {
  switch (f.kind()) {
    case FamilyKind::Card:
      return Ordinal::finite(f.card_bound());
    case FamilyKind::SchreierBase:
      return Ordinal::omega();
    case FamilyKind::Schreier:
      return Ordinal::omega_power(f.ordinal_arg());
    case FamilyKind::FineSchreier:
      return f.ordinal_arg();
    case FamilyKind::Sum:
      return iota(f.right()) + iota(f.left());
    case FamilyKind::Prod:
      return iota(f.right()) * iota(f.left());
    case FamilyKind::Pow: {
      Ordinal a = iota(f.left());
      Ordinal r = a;
      for (int i = 1; i < f.pow_exponent(); ++i) r = r * a;
      return r;
    }
    case FamilyKind::Diag:
      // Supremum of the closed-form index sequence; never attained.
      switch (f.diag_rule()) {
        case DiagRule::Cardinality:
          return Ordinal::omega();
        case DiagRule::SchreierLimit:
          return Ordinal::omega_power(f.ordinal_arg());
        case DiagRule::FineSchreierLimit:
          return f.ordinal_arg();
      }
      throw std::logic_error("unknown diagonalization rule");
    case FamilyKind::Pre:
      return iota(f.left());
  }
  throw std::logic_error("unknown family kind");
}

// Rank evaluator with a per-call memo; befriended by Family for access to
// the unfolding of the transfinite constructors.
class IndexCtx {
public:
  Ordinal rank(const Family& f, const FinSet& e) {
    if (!f.member(e, ctx_)) throw std::domain_error("rank: set is not a member");
    return rank_member(f, e);
  }

  Family::Ctx& family_ctx() { return ctx_; }

private:
  Ordinal rank_member(const Family& f, const FinSet& e) {
    auto key = std::make_pair(f.id(), e.elements());
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Ordinal result = compute(f, e);
    memo_.emplace(std::move(key), result);
    return result;
  }

  Ordinal compute(const Family& f, const FinSet& e) {
    switch (f.kind()) {
      case FamilyKind::Card:
        return Ordinal::finite(f.card_bound() - static_cast<int>(e.size()));
      case FamilyKind::SchreierBase:
        if (e.is_empty()) return Ordinal::omega();
        return Ordinal::finite(e.min() - static_cast<int>(e.size()));
      case FamilyKind::Schreier:
      case FamilyKind::FineSchreier:
      case FamilyKind::Pow:
        return rank_member(f.unfold(), e);
      case FamilyKind::Sum: {
        Family l = f.left(), g = f.right();
        if (l.member(e, ctx_)) return iota(g) + rank_member(l, e);
        // E sits strictly inside the G layer: the largest rank over the
        // splittings F^G with F in the first family and G nonempty.
        Ordinal best;
        bool found = false;
        for (size_t k = 0; k < e.size(); ++k) {
          if (!l.member(e.prefix(k), ctx_)) continue;
          FinSet gpart = e.suffix_from(k);
          if (!g.member(gpart, ctx_)) continue;
          Ordinal r = rank_member(g, gpart);
          if (!found || best < r) best = r, found = true;
        }
        if (!found) throw std::logic_error("sum rank: no admissible splitting for a member");
        return best;
      }
      case FamilyKind::Prod: {
        Family l = f.left(), g = f.right();
        if (e.is_empty()) return iota(g) * iota(l);
        auto blocks = *g.standard_decomposition(e, ctx_);
        std::vector<int> minima;
        for (const auto& b : blocks) minima.push_back(b.min());
        return iota(g) * rank_member(l, FinSet(std::move(minima))) +
               rank_member(g, blocks.back());
      }
      case FamilyKind::Diag: {
        if (e.is_empty()) return iota(f);
        Ordinal best;
        bool found = false;
        for (int k = 1; k <= e.min(); ++k) {
          Family gk = f.diag_member_family(k);
          if (!gk.member(e, ctx_)) continue;
          Ordinal r = rank_member(gk, e);
          if (!found || best < r) best = r, found = true;
        }
        if (!found) throw std::logic_error("diag rank: no witnessing family for a member");
        return best;
      }
      case FamilyKind::Pre:
        return rank_member(f.left(), f.relabeling().apply(e));
    }
    throw std::logic_error("unknown family kind");
  }

  Family::Ctx ctx_;
  std::map<std::pair<size_t, std::vector<int>>, Ordinal> memo_;
};

Ordinal rank(const Family& f, const FinSet& e) {
  IndexCtx ctx;
  return ctx.rank(f, e);
}

bool in_derivative(const Family& f, const FinSet& e, const Ordinal& x) {
  if (!f.member(e)) return false;
  return rank(f, e) >= x;
}

std::optional<int> rank_oracle(const Family& f, const FinSet& e, int cap) {
  if (!f.tail_invariant())
    throw std::domain_error("rank_oracle requires a tail-invariant family");
  if (!f.member(e)) throw std::domain_error("rank_oracle: set is not a member");
  Family::Ctx mctx;
  std::map<std::pair<std::vector<int>, int>, bool> memo;
  auto extend = [](const FinSet& s) { return s.append(s.is_empty() ? 1 : s.max() + 1); };
  auto in_level = [&](auto&& self, const FinSet& s, int k) -> bool {
    if (k == 0) return f.member(s, mctx);
    auto key = std::make_pair(s.elements(), k);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    bool r = self(self, s, k - 1) && self(self, extend(s), k - 1);
    memo.emplace(std::move(key), r);
    return r;
  };
  for (int k = 1; k <= cap; ++k) {
    if (!in_level(in_level, e, k)) return k - 1;
  }
  return std::nullopt;
}

}  // namespace schreier
