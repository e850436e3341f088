#include "schreier/family.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace schreier {

struct Family::Node {
  FamilyKind kind;
  int n = 0;                    // Card bound / Pow exponent
  Ordinal xi;                   // Schreier / FineSchreier / Diag limit
  std::shared_ptr<const Node> a, b;
  Relabeling relabel = Relabeling::odds();
  DiagRule rule = DiagRule::Cardinality;
  size_t id = 0;
  bool tail_invariant = true;
  // One-step unfolding of Schreier/FineSchreier/Pow, filled lazily under the
  // intern lock so concurrent readers see a settled value.
  mutable std::shared_ptr<const Node> unfolded;
};

namespace {

std::mutex& intern_mutex() {
  static std::mutex m;
  return m;
}

std::unordered_map<std::string, std::shared_ptr<const Family::Node>>& intern_table() {
  static std::unordered_map<std::string, std::shared_ptr<const Family::Node>> t;
  return t;
}

std::string node_key(const Family::Node& n) {
  std::ostringstream os;
  os << static_cast<int>(n.kind) << '|' << n.n << '|' << n.xi.to_string() << '|'
     << (n.a ? n.a->id : 0) << '|' << (n.b ? n.b->id : 0) << '|' << n.relabel.to_string() << '|'
     << static_cast<int>(n.rule);
  return os.str();
}

std::shared_ptr<const Family::Node> intern(Family::Node n) {
  std::lock_guard<std::mutex> lock(intern_mutex());
  auto& table = intern_table();
  std::string key = node_key(n);
  auto it = table.find(key);
  if (it != table.end()) return it->second;
  n.id = table.size() + 1;
  auto sp = std::make_shared<const Family::Node>(std::move(n));
  table.emplace(std::move(key), sp);
  return sp;
}

}  // namespace

Family Family::card(int n) {
  if (n < 0) throw std::invalid_argument("A(n) requires n >= 0");
  Node node;
  node.kind = FamilyKind::Card;
  node.n = n;
  return Family(intern(std::move(node)));
}

Family Family::schreier_base() {
  Node node;
  node.kind = FamilyKind::SchreierBase;
  return Family(intern(std::move(node)));
}

Family Family::schreier(const Ordinal& xi) {
  Node node;
  node.kind = FamilyKind::Schreier;
  node.xi = xi;
  return Family(intern(std::move(node)));
}

Family Family::fine_schreier(const Ordinal& xi) {
  Node node;
  node.kind = FamilyKind::FineSchreier;
  node.xi = xi;
  return Family(intern(std::move(node)));
}

Family Family::sum(const Family& f, const Family& g) {
  Node node;
  node.kind = FamilyKind::Sum;
  node.a = f.node_;
  node.b = g.node_;
  node.tail_invariant = f.tail_invariant() && g.tail_invariant();
  return Family(intern(std::move(node)));
}

Family Family::prod(const Family& f, const Family& g) {
  Node node;
  node.kind = FamilyKind::Prod;
  node.a = f.node_;
  node.b = g.node_;
  node.tail_invariant = f.tail_invariant() && g.tail_invariant();
  return Family(intern(std::move(node)));
}

Family Family::pow(const Family& f, int n) {
  if (n < 1) throw std::invalid_argument("pow(f,n) requires n >= 1");
  Node node;
  node.kind = FamilyKind::Pow;
  node.n = n;
  node.a = f.node_;
  node.tail_invariant = f.tail_invariant();
  return Family(intern(std::move(node)));
}

Family Family::pre(const Relabeling& m, const Family& f) {
  Node node;
  node.kind = FamilyKind::Pre;
  node.relabel = m;
  node.a = f.node_;
  node.tail_invariant = false;
  return Family(intern(std::move(node)));
}

Family Family::diag(DiagRule rule, const Ordinal& limit) {
  Node node;
  node.kind = FamilyKind::Diag;
  node.rule = rule;
  node.xi = limit;
  return Family(intern(std::move(node)));
}

FamilyKind Family::kind() const { return node_->kind; }
int Family::card_bound() const { return node_->n; }
int Family::pow_exponent() const { return node_->n; }
const Ordinal& Family::ordinal_arg() const { return node_->xi; }
Family Family::left() const { return Family(node_->a); }
Family Family::right() const { return Family(node_->b); }
const Relabeling& Family::relabeling() const { return node_->relabel; }
DiagRule Family::diag_rule() const { return node_->rule; }
bool Family::tail_invariant() const { return node_->tail_invariant; }
size_t Family::id() const { return node_->id; }

Family Family::unfold() const {
  {
    std::lock_guard<std::mutex> lock(intern_mutex());
    if (node_->unfolded) return Family(node_->unfolded);
  }
  Family result = [&] {
    switch (node_->kind) {
      case FamilyKind::Schreier: {
        const Ordinal& xi = node_->xi;
        if (xi.is_zero()) return card(1);  // S_0 = F_1 = A_1
        if (xi.is_successor()) return prod(schreier_base(), schreier(xi.predecessor()));
        return diag(DiagRule::SchreierLimit, xi);
      }
      case FamilyKind::FineSchreier: {
        const Ordinal& xi = node_->xi;
        if (xi.is_zero()) return card(0);  // F_0 = {empty}
        if (xi.is_successor()) return sum(card(1), fine_schreier(xi.predecessor()));
        return diag(DiagRule::FineSchreierLimit, xi);
      }
      case FamilyKind::Pow: {
        if (node_->n == 1) return Family(node_->a);
        return prod(Family(node_->a), pow(Family(node_->a), node_->n - 1));
      }
      default:
        throw std::logic_error("unfold on a primitive family");
    }
  }();
  std::lock_guard<std::mutex> lock(intern_mutex());
  node_->unfolded = result.node_;
  return result;
}

Family Family::diag_member_family(int k) const {
  switch (node_->rule) {
    case DiagRule::Cardinality:
      return card(k);
    case DiagRule::SchreierLimit:
      return schreier(fundamental_sequence(node_->xi, k));
    case DiagRule::FineSchreierLimit:
      return fine_schreier(fundamental_sequence(node_->xi, k));
  }
  throw std::logic_error("unknown diagonalization rule");
}

bool Family::member(const FinSet& e) const {
  Ctx ctx;
  return member(e, ctx);
}

bool Family::member(const FinSet& e, Ctx& ctx) const {
  if (e.is_empty()) return true;  // every denoted family is nonempty hereditary
  auto key = std::make_pair(node_->id, e.elements());
  if (auto it = ctx.member_.find(key); it != ctx.member_.end()) return it->second;
  bool result = false;
  switch (node_->kind) {
    case FamilyKind::Card:
      result = static_cast<int>(e.size()) <= node_->n;
      break;
    case FamilyKind::SchreierBase:
      result = static_cast<int>(e.size()) <= e.min();
      break;
    case FamilyKind::Schreier:
    case FamilyKind::FineSchreier:
    case FamilyKind::Pow:
      result = unfold().member(e, ctx);
      break;
    case FamilyKind::Sum: {
      Family f = left(), g = right();
      for (size_t k = 0; k <= e.size() && !result; ++k)
        result = f.member(e.prefix(k), ctx) && g.member(e.suffix_from(k), ctx);
      break;
    }
    case FamilyKind::Prod: {
      auto blocks = right().standard_decomposition(e, ctx);
      if (blocks) {
        std::vector<int> minima;
        for (const auto& b : *blocks) minima.push_back(b.min());
        result = left().member(FinSet(std::move(minima)), ctx);
      }
      break;
    }
    case FamilyKind::Diag: {
      for (int k = 1; k <= e.min() && !result; ++k)
        result = diag_member_family(k).member(e, ctx);
      break;
    }
    case FamilyKind::Pre:
      result = Family(node_->a).member(node_->relabel.apply(e), ctx);
      break;
  }
  ctx.member_.emplace(std::move(key), result);
  return result;
}

std::optional<std::vector<FinSet>> Family::standard_decomposition(const FinSet& e) const {
  Ctx ctx;
  return standard_decomposition(e, ctx);
}

std::optional<std::vector<FinSet>> Family::standard_decomposition(const FinSet& e,
                                                                  Ctx& ctx) const {
  // Greedy splitting into maximal initial segments; valid because members'
  // initial segments are members (hereditary), so the feasible prefix
  // lengths of each tail form an initial range.
  std::vector<FinSet> blocks;
  size_t i = 0;
  while (i < e.size()) {
    FinSet tail = e.suffix_from(i);
    size_t best = 0;
    for (size_t len = 1; len <= tail.size(); ++len) {
      if (member(tail.prefix(len), ctx)) {
        best = len;
      } else {
        break;
      }
    }
    if (best == 0) return std::nullopt;
    blocks.push_back(tail.prefix(best));
    i += best;
  }
  return blocks;
}

bool Family::is_admissible(const std::vector<FinSet>& blocks) const {
  std::vector<int> minima;
  for (size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].is_empty()) return false;
    if (i > 0 && !(blocks[i - 1].max() < blocks[i].min())) return false;
    minima.push_back(blocks[i].min());
  }
  return member(FinSet(std::move(minima)));
}

std::optional<int> Family::min_extension(const FinSet& e) const {
  Ctx ctx;
  return min_extension(e, ctx);
}

namespace {

void keep_min(std::optional<int>& best, std::optional<int> candidate) {
  if (candidate && (!best || *candidate < *best)) best = candidate;
}

}  // namespace

std::optional<int> Family::min_extension(const FinSet& e, Ctx& ctx) const {
  if (!member(e, ctx)) throw std::domain_error("min_extension: set is not a member");
  auto key = std::make_pair(node_->id, e.elements());
  if (auto it = ctx.minext_.find(key); it != ctx.minext_.end()) return it->second;
  const int floor = e.is_empty() ? 1 : e.max() + 1;
  std::optional<int> best;
  switch (node_->kind) {
    case FamilyKind::Card:
      if (static_cast<int>(e.size()) < node_->n) best = floor;
      break;
    case FamilyKind::SchreierBase:
      if (e.is_empty()) {
        best = 1;
      } else if (static_cast<int>(e.size()) < e.min()) {
        best = floor;
      }
      break;
    case FamilyKind::Schreier:
    case FamilyKind::FineSchreier:
    case FamilyKind::Pow:
      best = unfold().min_extension(e, ctx);
      break;
    case FamilyKind::Sum: {
      Family f = left(), g = right();
      // An extension either grows the G part of some splitting (possibly a
      // fresh G part) or grows E entirely inside F.
      for (size_t k = 0; k <= e.size(); ++k) {
        FinSet fpart = e.prefix(k), gpart = e.suffix_from(k);
        if (!f.member(fpart, ctx) || !g.member(gpart, ctx)) continue;
        if (auto c = g.min_extension(gpart, ctx)) keep_min(best, std::max(*c, floor));
      }
      if (f.member(e, ctx)) keep_min(best, f.min_extension(e, ctx));
      break;
    }
    case FamilyKind::Prod: {
      Family f = left(), g = right();
      if (e.is_empty()) {
        auto cg = g.min_extension(FinSet(), ctx);
        auto cf = f.min_extension(FinSet(), ctx);
        if (cg && cf) best = std::max(*cg, *cf);
        break;
      }
      auto blocks = *g.standard_decomposition(e, ctx);
      std::vector<int> minima;
      for (const auto& b : blocks) minima.push_back(b.min());
      // Grow the last standard block, or open a new block (n) with
      // minima^n still admissible.
      keep_min(best, g.min_extension(blocks.back(), ctx));
      if (auto c = f.min_extension(FinSet(minima), ctx)) keep_min(best, std::max(*c, floor));
      break;
    }
    case FamilyKind::Diag: {
      if (e.is_empty()) {
        // least n with (n) in G_k for some k <= n
        for (int k = 1;; ++k) {
          if (best && k > *best) break;
          if (k > 1000000) throw std::logic_error("diagonalization minimum extension diverged");
          if (auto v = diag_member_family(k).min_extension(FinSet(), ctx))
            keep_min(best, std::max(k, *v));
        }
      } else {
        for (int k = 1; k <= e.min(); ++k) {
          Family gk = diag_member_family(k);
          if (gk.member(e, ctx)) keep_min(best, gk.min_extension(e, ctx));
        }
      }
      break;
    }
    case FamilyKind::Pre: {
      auto v = Family(node_->a).min_extension(node_->relabel.apply(e), ctx);
      if (v) best = std::max(node_->relabel.preimage_at_least(*v), floor);
      break;
    }
  }
  ctx.minext_.emplace(std::move(key), best);
  return best;
}

bool Family::is_maximal(const FinSet& e) const { return !min_extension(e).has_value(); }

std::vector<FinSet> Family::enumerate(int ground) const {
  Ctx ctx;
  std::vector<FinSet> out;
  out.push_back(FinSet());
  // Depth-first extension; non-members are never extended since supersets
  // of non-members are non-members.
  std::vector<int> cur;
  auto dfs = [&](auto&& self, int last) -> void {
    for (int n = last + 1; n <= ground; ++n) {
      cur.push_back(n);
      if (member(FinSet(cur), ctx)) {
        out.push_back(FinSet(cur));
        self(self, n);
      }
      cur.pop_back();
    }
  };
  dfs(dfs, 0);
  return out;
}

std::string Family::to_string() const {
  switch (node_->kind) {
    case FamilyKind::Card: {
      std::ostringstream os;
      os << "A(" << node_->n << ')';
      return os.str();
    }
    case FamilyKind::SchreierBase:
      return "S";
    case FamilyKind::Schreier:
      return "S[" + node_->xi.to_string() + "]";
    case FamilyKind::FineSchreier:
      return "FS[" + node_->xi.to_string() + "]";
    case FamilyKind::Sum:
      return "sum(" + left().to_string() + "," + right().to_string() + ")";
    case FamilyKind::Prod:
      return "prod(" + left().to_string() + "," + right().to_string() + ")";
    case FamilyKind::Pow: {
      std::ostringstream os;
      os << "pow(" << Family(node_->a).to_string() << ',' << node_->n << ')';
      return os.str();
    }
    case FamilyKind::Diag:
      // Diagonalizations only arise as unfoldings of the limit families, so
      // print the family they denote.
      switch (node_->rule) {
        case DiagRule::Cardinality:
          return "S";
        case DiagRule::SchreierLimit:
          return "S[" + node_->xi.to_string() + "]";
        case DiagRule::FineSchreierLimit:
          return "FS[" + node_->xi.to_string() + "]";
      }
      return "S";
    case FamilyKind::Pre:
      return "pre(" + node_->relabel.to_string() + "," + Family(node_->a).to_string() + ")";
  }
  return "?";
}

}  // namespace schreier
