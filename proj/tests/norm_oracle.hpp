// Test-only exhaustive evaluator for the mixed Tsirelson implicit equation.
// Written against the definitional tower |x|_0, |x|_1, ... directly: level
// n+1 maximizes over ALL successive tuples of nonempty subsets of the
// support (not just interval partitions), with admissibility checked on the
// block minima. Deliberately shares nothing with the production engine's
// search-space reduction; exponential, intended for supports of size <= 7.
#pragma once

#include <map>
#include <vector>

#include "schreier/normspace.hpp"

namespace schreier::testing {

class ExhaustiveTsirelson {
public:
  ExhaustiveTsirelson(const Space& sp, const SparseVec& x) : sp_(sp), x_(x.abs()) {}

  Rational value() {
    std::vector<int> supp = x_.support().elements();
    int depth = static_cast<int>(supp.size()) + 1;
    Rational v = tower(supp, depth);
    // the tower must have stabilized by |supp|
    if (tower(supp, depth + 1) != v) throw std::logic_error("oracle tower did not stabilize");
    return v;
  }

private:
  Rational base(const std::vector<int>& supp) {
    // max over members of G0 of the l1 mass: enumerate all subsets
    Rational best = 0;
    size_t n = supp.size();
    for (size_t mask = 0; mask < (size_t(1) << n); ++mask) {
      std::vector<int> e;
      Rational sum = 0;
      for (size_t i = 0; i < n; ++i)
        if ((mask >> i) & 1) {
          e.push_back(supp[i]);
          sum += x_.at(supp[i]);
        }
      if (sum > best && sp_.g0().member(FinSet(std::move(e)))) best = sum;
    }
    return best;
  }

  Rational tower(const std::vector<int>& supp, int level) {
    if (supp.empty()) return Rational(0);
    auto key = std::make_pair(supp, level);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Rational best;
    if (level == 0) {
      best = base(supp);
    } else {
      best = tower(supp, level - 1);
      Rational ell1 = 0;
      for (int p : supp) ell1 += x_.at(p);
      for (int m = 1;; ++m) {
        Rational theta = sp_.thetas().at(m);
        if (theta * ell1 <= best) break;
        Family gm = sp_.gseq().at(m);
        // enumerate all successive tuples of nonempty subsets of supp
        std::vector<std::vector<int>> blocks;
        auto walk = [&](auto&& self, size_t idx) -> void {
          if (idx == supp.size()) {
            if (blocks.empty()) return;
            std::vector<int> minima;
            for (const auto& b : blocks) minima.push_back(b.front());
            if (!gm.member(FinSet(std::move(minima)))) return;
            Rational sum = 0;
            for (const auto& b : blocks) sum += tower(b, level - 1);
            if (theta * sum > best) best = theta * sum;
            return;
          }
          // skip this support element
          self(self, idx + 1);
          // append it to the current block
          if (!blocks.empty()) {
            blocks.back().push_back(supp[idx]);
            self(self, idx + 1);
            blocks.back().pop_back();
          }
          // open a new block with it
          blocks.push_back({supp[idx]});
          self(self, idx + 1);
          blocks.pop_back();
        };
        walk(walk, 0);
      }
    }
    memo_.emplace(std::move(key), best);
    return best;
  }

  const Space& sp_;
  SparseVec x_;
  std::map<std::pair<std::vector<int>, int>, Rational> memo_;
};

inline Rational exhaustive_tsirelson_norm(const Space& sp, const SparseVec& x) {
  return ExhaustiveTsirelson(sp, x).value();
}

}  // namespace schreier::testing
