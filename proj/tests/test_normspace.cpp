#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "norm_oracle.hpp"
#include "schreier/normspace.hpp"

using namespace schreier;

namespace {

FinSet fs(std::initializer_list<int> xs) { return FinSet(std::vector<int>(xs)); }
Ordinal fin(long n) { return Ordinal::finite(n); }

SparseVec units(std::initializer_list<int> ps) {
  std::vector<std::pair<int, Rational>> e;
  for (int p : ps) e.emplace_back(p, Rational(1));
  return SparseVec::from_entries(std::move(e));
}

Space half_schreier() { return Space::tsirelson_single(Rational(1, 2), Family::schreier_base()); }

SparseVec random_vec(std::mt19937& rng, int ground, int max_support) {
  std::uniform_int_distribution<int> nsup(1, max_support);
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 5);
  std::vector<int> all(ground);
  for (int i = 0; i < ground; ++i) all[i] = i + 1;
  std::shuffle(all.begin(), all.end(), rng);
  int k = nsup(rng);
  std::vector<std::pair<int, Rational>> e;
  for (int i = 0; i < k; ++i) e.emplace_back(all[i], Rational(num(rng), den(rng)));
  return SparseVec::from_entries(std::move(e));
}

}  // namespace

TEST_CASE("sparse vectors") {
  auto v = SparseVec::from_entries({{5, Rational(-2)}, {3, Rational(1, 2)}, {5, Rational(2)}});
  CHECK(v.size() == 1);
  CHECK(v.at(3) == Rational(1, 2));
  CHECK(v.at(5) == 0);
  CHECK(v.to_string() == "[3:1/2]");
  auto w = SparseVec::unit(7);
  CHECK((v + w).l1() == Rational(3, 2));
  CHECK(v.scaled(Rational(4)).at(3) == 2);
  CHECK_THROWS_AS(SparseVec::from_entries({{0, Rational(1)}}), std::invalid_argument);
}

TEST_CASE("theta sequences") {
  auto g = ThetaSeq::geometric(Rational(1, 2));
  CHECK(g.at(1) == Rational(1, 2));
  CHECK(g.at(3) == Rational(1, 8));
  auto p = ThetaSeq::with_prefix({Rational(2, 3), Rational(1, 3)}, Rational(1, 2));
  CHECK(p.at(1) == Rational(2, 3));
  CHECK(p.at(2) == Rational(1, 3));
  CHECK(p.at(4) == Rational(1, 12));
  CHECK_THROWS_AS(ThetaSeq::geometric(Rational(1)), std::invalid_argument);
  CHECK_THROWS_AS(ThetaSeq::with_prefix({Rational(1, 3), Rational(1, 2)}, Rational(1, 2)),
                  std::invalid_argument);
}

TEST_CASE("family sup norm") {
  Family s1 = Family::schreier(fin(1));
  CHECK(family_sup_norm(s1, units({1, 2, 3, 4, 5})) == 3);  // best E = {3,4,5}
  CHECK(family_sup_norm(Family::card(5), SparseVec::unit(7)) == 1);
  auto v = SparseVec::from_entries({{1, Rational(1)}, {2, Rational(-2)}, {3, Rational(3)}});
  CHECK(family_sup_norm(Family::card(2), v) == 5);
  CHECK(family_sup_norm(s1, SparseVec()) == 0);
  CHECK(family_sup_norm(Family::card(0), v) == 0);
}

TEST_CASE("tsirelson spot values against the exhaustive evaluator") {
  Space t = half_schreier();
  auto e12 = units({1, 2});
  auto e345 = units({3, 4, 5});
  CHECK(testing::exhaustive_tsirelson_norm(t, e12) == 1);
  CHECK(testing::exhaustive_tsirelson_norm(t, e345) == Rational(3, 2));
  CHECK(tsirelson_norm(t, e12) == 1);
  CHECK(tsirelson_norm(t, e345) == Rational(3, 2));
  for (int n : {1, 2, 5, 9}) CHECK(tsirelson_norm(t, SparseVec::unit(n)) == 1);
  CHECK(tsirelson_norm(t, SparseVec()) == 0);
}

TEST_CASE("engine agrees with the exhaustive evaluator on random vectors") {
  std::mt19937 rng(101);
  Space spaces[] = {
      half_schreier(),
      Space::tsirelson_single(Rational(2, 3), Family::card(2)),
      Space::tsirelson(Family::schreier_base(), ThetaSeq::geometric(Rational(1, 2)),
                       FamilySeq::powers(Family::schreier_base())),
      Space::tsirelson(Family::card(1),
                       ThetaSeq::with_prefix({Rational(3, 4), Rational(1, 4)}, Rational(1, 2)),
                       FamilySeq::constant(Family::card(3))),
      Space::tsirelson(Family::card(2), ThetaSeq::geometric(Rational(1, 3)),
                       FamilySeq::schreier_seq(Ordinal::omega())),
  };
  for (const auto& sp : spaces) {
    for (int trial = 0; trial < 25; ++trial) {
      SparseVec x = random_vec(rng, 9, 6);
      CHECK(tsirelson_norm(sp, x) == testing::exhaustive_tsirelson_norm(sp, x));
    }
  }
}

TEST_CASE("norm properties on random vectors") {
  std::mt19937 rng(202);
  Space t = half_schreier();
  for (int trial = 0; trial < 60; ++trial) {
    SparseVec x = random_vec(rng, 14, 7);
    Rational n = tsirelson_norm(t, x);
    CHECK(n <= x.l1());
    CHECK(n >= family_sup_norm(Family::card(1), x));
    // unconditionality: flipping signs never changes the norm
    std::vector<std::pair<int, Rational>> flipped;
    int i = 0;
    for (const auto& [p, c] : x.entries())
      flipped.emplace_back(p, (++i % 2) ? -c : c);
    CHECK(tsirelson_norm(t, SparseVec::from_entries(std::move(flipped))) == n);
    // monotone under coefficient shrinking
    std::vector<std::pair<int, Rational>> shrunk;
    for (const auto& [p, c] : x.entries()) shrunk.emplace_back(p, c / 2);
    CHECK(tsirelson_norm(t, SparseVec::from_entries(std::move(shrunk))) <= n);
    // fixpoint: the implicit equation's RHS at the computed norm is the norm
    CHECK(tsirelson_implicit_rhs(t, x) == n);
    // homogeneity
    CHECK(tsirelson_norm(t, x.scaled(Rational(3, 7))) == n * Rational(3, 7));
    SparseVec y = random_vec(rng, 14, 7);
    CHECK(tsirelson_norm(t, x + y) <= n + tsirelson_norm(t, y));
  }
}

TEST_CASE("l1 lower certificates") {
  Space t = half_schreier();
  CHECK(l1_lower_certificate(t, fs({3, 4, 5}), 1, 1,
                             {Rational(1), Rational(1), Rational(1)}));
  CHECK(l1_lower_certificate(t, fs({9}), 2, 2, {Rational(1)}));
  CHECK(l1_lower_certificate(t, fs({2, 3, 4, 5}), 1, 2,
                             {Rational(1), Rational(1), Rational(1), Rational(1)}));
  CHECK_THROWS_AS(l1_lower_certificate(t, fs({1, 2, 3}), 1, 1,
                                       {Rational(1), Rational(1), Rational(1)}),
                  std::domain_error);
  std::mt19937 rng(303);
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 4);
  for (int k = 1; k <= 2; ++k) {
    Family comp = Family::prod(Family::pow(Family::schreier_base(), k), Family::card(1));
    auto members = comp.enumerate(10);
    std::uniform_int_distribution<size_t> pick(0, members.size() - 1);
    for (int trial = 0; trial < 25; ++trial) {
      const FinSet& e = members[pick(rng)];
      if (e.is_empty()) continue;
      std::vector<Rational> coeffs;
      for (size_t i = 0; i < e.size(); ++i) coeffs.emplace_back(num(rng), den(rng));
      CHECK(l1_lower_certificate(t, e, 1, k, coeffs));
    }
  }
}

TEST_CASE("direct sums") {
  Space x1 = Space::schreier_space(fin(1));
  Space sup1 = Space::family_sup(Family::card(1));
  Space d = Space::direct_sum(sup1, {x1, x1});
  CHECK(direct_sum_norm(d, {units({3, 4}), units({5, 6, 7})}) == 3);
  Space dsingle = Space::direct_sum(sup1, {x1});
  CHECK(direct_sum_norm(dsingle, {units({1, 2})}) ==
        family_sup_norm(Family::schreier(fin(1)), units({1, 2})));
  CHECK_THROWS_AS(direct_sum_norm(d, {units({1})}), std::invalid_argument);
  // l1 assembly: base U = X[1] sums the summand norms when minima allow
  Space dl1 = Space::direct_sum(Space::schreier_space(fin(1)), {x1, x1, x1});
  CHECK(direct_sum_norm(dl1, {SparseVec(), units({4, 5}), units({9})}) == 3);
}

TEST_CASE("schreier sum witness") {
  Space xz = Space::schreier_space(fin(1));
  Family s1 = Family::schreier(fin(1));
  {
    auto w = schreier_sum_witness(xz, s1, fs({3}), {Rational(1)});
    CHECK(w.holds);
    CHECK(w.direct_sum_value == 1);
    CHECK(w.chain_value == 1);
  }
  {
    std::vector<Rational> ones(5, Rational(1));
    auto w = schreier_sum_witness(xz, s1, fs({2, 3, 5, 6, 7}), ones);
    CHECK(w.holds);
    CHECK(w.coeff_sum == 5);
    CHECK(w.chain_value == 5);
    CHECK(w.direct_sum_value == 5);
  }
  {
    std::vector<Rational> zeros(5, Rational(0));
    auto w = schreier_sum_witness(xz, s1, fs({2, 3, 5, 6, 7}), zeros);
    CHECK(w.holds);
    CHECK(w.direct_sum_value == 0);
  }
  {
    auto w = schreier_sum_witness(xz, s1, FinSet(), {});
    CHECK(w.holds);
  }
  CHECK_THROWS_AS(schreier_sum_witness(xz, s1, fs({1, 2, 3}), std::vector<Rational>(3, Rational(1))),
                  std::domain_error);
  // mixed coefficients keep the exact chain identity
  auto w = schreier_sum_witness(xz, s1, fs({2, 3, 5, 6, 7}),
                                {Rational(1, 2), Rational(-1), Rational(2), Rational(1, 3),
                                 Rational(-1, 7)});
  CHECK(w.chain_value == w.coeff_sum);
  CHECK(w.holds);
}

TEST_CASE("support limit is enforced") {
  Space t = half_schreier();
  std::vector<std::pair<int, Rational>> e;
  for (int i = 1; i <= 25; ++i) e.emplace_back(i, Rational(1));
  SparseVec big = SparseVec::from_entries(std::move(e));
  CHECK_THROWS_AS(tsirelson_norm(t, big), std::invalid_argument);
  NormOptions opts;
  opts.allow_large_support = true;
  CHECK(tsirelson_norm(t, big, opts) > 0);
}

TEST_CASE("space equality and printing") {
  CHECK(half_schreier() == half_schreier());
  CHECK(half_schreier().to_string() == "T(1/2,S)");
  CHECK(Space::schreier_space(fin(2)).to_string() == "X[2]");
  CHECK(Space::family_sup(Family::card(3)).to_string() == "sup(A(3))");
  Space g = Space::tsirelson(Family::schreier_base(), ThetaSeq::geometric(Rational(1, 3)),
                             FamilySeq::powers(Family::card(2)));
  CHECK(g.to_string() == "T(1/3;S;pow(A(2)))");
  Space d = Space::direct_sum(Space::family_sup(Family::card(1)),
                              {Space::schreier_space(fin(1)), g});
  CHECK(d.to_string() == "dsum(sup(A(1));X[1],T(1/3;S;pow(A(2))))");
  CHECK(!(g == half_schreier()));
  CHECK_THROWS_AS(Space::tsirelson(Family::card(0), ThetaSeq::geometric(Rational(1, 2)),
                                   FamilySeq::powers(Family::card(1))),
                  std::invalid_argument);
}
