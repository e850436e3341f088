#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "schreier/index.hpp"
#include "schreier/ramsey.hpp"

using namespace schreier;

namespace {

FinSet fs(std::initializer_list<int> xs) { return FinSet(std::vector<int>(xs)); }
Ordinal fin(long n) { return Ordinal::finite(n); }

// Identity extended embedding of A(k) into itself over [1, ground]: i is the
// identity, e extends each maximal set to itself.
ExtendedEmbedding identity_embedding(int k, int ground) {
  ExtendedEmbedding emb;
  emb.src_ground = ground;
  Family a = Family::card(k);
  for (const auto& e : a.enumerate(ground)) {
    if (e.is_empty()) continue;
    emb.i_map[e] = e;
    if (static_cast<int>(e.size()) == k) emb.e_map[e] = e;
  }
  return emb;
}

// Naive re-verification of a monochromatic witness: a direct transcription
// of the definitions on the same finite tables, sharing no code with the
// production verifier.
bool naive_recheck(const Family& src, const Family& dst, const ExtendedEmbedding& emb,
                   const Coloring& col, int j) {
  std::vector<FinSet> dom;
  for (const auto& e : src.enumerate(emb.src_ground))
    if (!e.is_empty()) dom.push_back(e);
  for (const auto& e : dom)
    if (!emb.i_map.count(e)) return false;
  for (const auto& a : dom) {
    const FinSet& fa = emb.i_map.at(a);
    if (fa.is_empty() || !dst.member(fa)) return false;
    for (const auto& b : dom) {
      if (a == b) continue;
      const FinSet& fb = emb.i_map.at(b);
      if (fa == fb) return false;
      bool pre = a.size() < b.size() && a.initial_segment_of(b);
      bool post = fa.size() < fb.size() && fa.initial_segment_of(fb);
      if (pre != post) return false;
    }
  }
  for (const auto& e : dom) {
    if (!src.is_maximal(e)) continue;
    if (!emb.e_map.count(e)) return false;
    const FinSet& ext = emb.e_map.at(e);
    if (!dst.member(ext) || !dst.is_maximal(ext)) return false;
    if (!emb.i_map.at(e).initial_segment_of(ext)) return false;
    for (size_t k = 1; k <= e.size(); ++k)
      if (!col.has_color(j, emb.i_map.at(e.prefix(k)), ext)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("coloring predicates") {
  auto p = ColorPred::parity(ColorPred::Feature::MaxE, true);
  CHECK(p.eval(fs({1, 4}), fs({1, 4, 5})));
  CHECK(!p.eval(fs({1, 3}), fs({1, 3, 4})));
  auto q = ColorPred::conj(ColorPred::cmp(ColorPred::Kind::Ge, ColorPred::Feature::MinF, 2),
                           ColorPred::parity(ColorPred::Feature::CardE, false));
  CHECK(q.eval(fs({2}), fs({2, 5})));
  CHECK(!q.eval(fs({2, 5}), fs({2, 5})));
  CHECK(q.to_string() == "and(ge(minF,2),odd(cardE))");
  Coloring c = Coloring::from_pred(p);
  CHECK(c.has_color(0, fs({2}), fs({2, 3})));
  CHECK(c.has_color(1, fs({3}), fs({3, 4})));
  CHECK(c.total_on(Family::card(2), 6));
  // a both-form coloring with a genuinely uncolored pair is not total
  Coloring bad = Coloring::both(ColorPred::constant(false), ColorPred::constant(false));
  CHECK(!bad.total_on(Family::card(2), 4));
  Coloring overlap = Coloring::both(ColorPred::constant(true), ColorPred::constant(true));
  CHECK(overlap.total_on(Family::card(2), 4));
}

TEST_CASE("verify extended embedding accepts the identity") {
  Family a2 = Family::card(2);
  auto emb = identity_embedding(2, 5);
  CHECK(verify_extended_embedding(a2, a2, emb));
  // e may genuinely extend
  auto emb2 = emb;
  for (auto& [e, ext] : emb2.e_map) (void)e;
  CHECK(verify_extended_embedding(a2, Family::card(3), emb).ok == false);
  // images must be maximal in the target: a 2-set is not maximal in A(3)
}

TEST_CASE("verify extended embedding rejects broken tables") {
  Family a2 = Family::card(2);
  {
    auto emb = identity_embedding(2, 4);
    emb.i_map.erase(fs({1, 2}));
    auto r = verify_extended_embedding(a2, a2, emb);
    CHECK(!r.ok);
    CHECK(r.violation.find("missing") != std::string::npos);
  }
  {
    auto emb = identity_embedding(2, 4);
    emb.i_map[fs({2})] = fs({1});  // collapse onto i({1})
    auto r = verify_extended_embedding(a2, a2, emb);
    CHECK(!r.ok);
    CHECK(r.violation.find("collapses") != std::string::npos);
  }
  {
    auto emb = identity_embedding(2, 4);
    emb.i_map[fs({1, 2})] = fs({3, 4});  // no longer extends i({1})
    auto r = verify_extended_embedding(a2, a2, emb);
    CHECK(!r.ok);
    CHECK(r.violation.find("order-isomorphic") != std::string::npos);
  }
  {
    auto emb = identity_embedding(2, 4);
    emb.i_map[fs({3, 4})] = fs({2, 3, 4});  // not a member of A(2)... it is; use size 3
    emb.i_map[fs({3, 4})] = fs({3, 4});
    emb.e_map[fs({3, 4})] = fs({3, 4, 5});  // not a member of A(2)
    auto r = verify_extended_embedding(a2, a2, emb);
    CHECK(!r.ok);
  }
  {
    // swapping two incomparable nodes stays order-isomorphic
    auto emb = identity_embedding(2, 4);
    emb.i_map[fs({1, 2})] = fs({1, 3});
    emb.i_map[fs({1, 3})] = fs({1, 2});
    emb.e_map[fs({1, 2})] = fs({1, 3});
    emb.e_map[fs({1, 3})] = fs({1, 2});
    CHECK(verify_extended_embedding(a2, a2, emb));
  }
}

TEST_CASE("monochromatic verification") {
  Family a2 = Family::card(2);
  auto emb = identity_embedding(2, 4);
  Coloring all0 = Coloring::from_pred(ColorPred::constant(true));
  CHECK(verify_monochromatic(a2, a2, emb, all0, 0));
  CHECK(!verify_monochromatic(a2, a2, emb, all0, 1).ok);
  auto r = verify_monochromatic(a2, a2, emb, all0, 1);
  REQUIRE(r.failure.has_value());
  CHECK(r.failure->second >= 1);
  // parity coloring with an embedding landing on even-max nodes only
  Coloring evenmax = Coloring::from_pred(ColorPred::parity(ColorPred::Feature::MaxE, true));
  ExtendedEmbedding ev;
  ev.src_ground = 2;
  ev.i_map[fs({1})] = fs({2});
  ev.i_map[fs({2})] = fs({4});
  ev.i_map[fs({1, 2})] = fs({2, 4});
  ev.e_map[fs({1, 2})] = fs({2, 4});
  CHECK(verify_monochromatic(a2, a2, ev, evenmax, 0));
  CHECK(naive_recheck(a2, a2, ev, evenmax, 0));
}

TEST_CASE("search candidates follow the hessenberg decompositions") {
  Family a3 = Family::card(3);
  auto cand = sum_witness_candidates(a3);
  auto dec = hessenberg_decompositions(fin(3));
  REQUIRE(cand.size() == dec.size());
  for (size_t i = 0; i < cand.size(); ++i) {
    CHECK(cand[i].first == dec[i].first);
    CHECK(cand[i].second == dec[i].second);
  }
  CHECK_THROWS_AS(sum_witness_candidates(Family::schreier_base()), std::domain_error);
}

TEST_CASE("sum witness search on constant colorings") {
  Family a2 = Family::card(2);
  Coloring all0 = Coloring::from_pred(ColorPred::constant(true));
  auto w = search_sum_witness(a2, all0);
  REQUIRE(w.has_value());
  CHECK(hessenberg(w->xi0, w->xi1) == fin(2));
  CHECK(w->xi1.is_zero());  // all-0: the 1-side is empty
  CHECK(naive_recheck(Family::fine_schreier(w->xi0), a2, w->emb0, all0, 0));
  Coloring all1 = Coloring::from_pred(ColorPred::constant(false));
  auto w1 = search_sum_witness(a2, all1);
  REQUIRE(w1.has_value());
  CHECK(w1->xi0.is_zero());
  CHECK(hessenberg(w1->xi0, w1->xi1) == fin(2));
  CHECK(naive_recheck(Family::fine_schreier(w1->xi1), a2, w1->emb1, all1, 1));
}

TEST_CASE("sum witness search on parity colorings") {
  std::vector<ColorPred> corpus = {
      ColorPred::parity(ColorPred::Feature::MaxE, true),
      ColorPred::parity(ColorPred::Feature::MaxE, false),
      ColorPred::parity(ColorPred::Feature::MinE, true),
      ColorPred::parity(ColorPred::Feature::MinE, false),
      ColorPred::parity(ColorPred::Feature::SumE, true),
      ColorPred::parity(ColorPred::Feature::SumE, false),
      ColorPred::parity(ColorPred::Feature::MaxF, true),
      ColorPred::parity(ColorPred::Feature::MaxF, false),
  };
  for (int n = 2; n <= 3; ++n) {
    Family an = Family::card(n);
    for (const auto& p : corpus) {
      Coloring col = Coloring::from_pred(p);
      auto w = search_sum_witness(an, col);
      REQUIRE_MESSAGE(w.has_value(), "no witness for ", p.to_string(), " on A(", n, ")");
      CHECK(hessenberg(w->xi0, w->xi1) == fin(n));
      if (!w->xi0.is_zero())
        CHECK(naive_recheck(Family::fine_schreier(w->xi0), an, w->emb0, col, 0));
      if (!w->xi1.is_zero())
        CHECK(naive_recheck(Family::fine_schreier(w->xi1), an, w->emb1, col, 1));
    }
  }
}

TEST_CASE("product witness verification") {
  Family f = Family::card(2), g = Family::card(2);
  ChainMap jmap;
  jmap.src_ground = 4;
  for (const auto& e : f.enumerate(4)) {
    if (e.is_empty()) continue;
    jmap.table[e] = Chain{e};  // singleton blocks: E itself lies in F[G]
  }
  CHECK(verify_product_witness(f, g, ChainPred::constant(true), jmap));
  CHECK(!verify_product_witness(f, g, ChainPred::constant(false), jmap).ok);
  // f(c) = 0 iff |c| = 1 accepts singleton chains
  CHECK(verify_product_witness(f, g, ChainPred::cmp(ChainPred::Kind::Eq, ChainPred::Feature::Len, 1),
                               jmap));
  {
    auto broken = jmap;
    broken.table[fs({1})] = Chain{fs({2, 3, 4, 5})};  // outside A(2)[A(2)] = A(4)? no: size 4 fine
    broken.table[fs({1})] = Chain{fs({1, 2, 3, 4, 5})};  // size 5 leaves A(4)
    auto r = verify_product_witness(f, g, ChainPred::constant(true), broken);
    CHECK(!r.ok);
  }
  {
    auto broken = jmap;
    broken.table[fs({1, 2})] = Chain{fs({1})};  // fails order preservation under {1}
    auto r = verify_product_witness(f, g, ChainPred::constant(true), broken);
    CHECK(!r.ok);
    CHECK(r.violation.find("order") != std::string::npos);
  }
  {
    auto broken = jmap;
    broken.table[fs({2})] = Chain{fs({3, 4}), fs({2, 3, 4})};  // not linearly ordered
    auto r = verify_product_witness(f, g, ChainPred::constant(true), broken);
    CHECK(!r.ok);
  }
  {
    // multi-set chains are fine when nested
    auto rich = jmap;
    rich.table[fs({4})] = Chain{fs({4}), fs({4, 5}), fs({4, 5, 6})};
    CHECK(verify_product_witness(f, g, ChainPred::constant(true), rich));
    // naive re-check of the accepted witness, straight from the definitions
    Family fg = Family::prod(f, g);
    for (const auto& [e, c] : rich.table) {
      CHECK(!c.empty());
      for (size_t i = 0; i < c.size(); ++i) {
        CHECK(fg.member(c[i]));
        CHECK(!c[i].is_empty());
        for (size_t j = i + 1; j < c.size(); ++j) {
          CHECK(c[i].size() < c[j].size());
          CHECK(c[i].initial_segment_of(c[j]));
        }
      }
      for (const auto& [e2, c2] : rich.table) {
        if (!(e.size() < e2.size() && e.initial_segment_of(e2))) continue;
        for (const auto& s : c)
          for (const auto& s2 : c2) {
            CHECK(s.size() < s2.size());
            CHECK(s.initial_segment_of(s2));
          }
      }
    }
  }
}

TEST_CASE("pruning") {
  Family a2 = Family::card(2);
  {
    auto [map, report] = prune(a2, Selector::identity(), 3, 4);
    CHECK(report.ok);
    for (const auto& [e, img] : report.samples) CHECK(e == img);
  }
  {
    auto [map, report] = prune(a2, Selector::doubling(), 3, 4);
    CHECK(report.ok);
    CHECK(map.phi(fs({3, 5})) == fs({6, 10}));
    for (const auto& [e, img] : report.samples) {
      CHECK(is_spread(e, img));
      CHECK(a2.member(img));
    }
  }
  {
    // skip to the next even index on S: n -> 2n keeps every branch inside S
    Family s = Family::schreier_base();
    auto [map, report] = prune(s, Selector::doubling(), 3, 10);
    CHECK(report.ok);
    for (const auto& [e, img] : report.samples) CHECK(s.member(img));
    CHECK(!report.samples.empty());
  }
  {
    // shifting indexes stays strictly increasing and inside spreading families
    auto [map, report] = prune(Family::schreier_base(), Selector::shift(3), 3, 6);
    CHECK(report.ok);
  }
  {
    // an ap selector anchored too low leaves the family's extension range
    auto [map, report] = prune(Family::pre(Relabeling::arithmetic(4, 1), Family::card(2)),
                               Selector::ap(1, 1), 2, 3);
    CHECK(!report.ok);
  }
  CHECK_THROWS_AS(prune(Family::card(2), Selector::identity(), 2, 3).first.phi(fs({1, 2, 3})),
                  std::domain_error);
}
