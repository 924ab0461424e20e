#include <doctest.h>

#include <algorithm>
#include <vector>

#include "gennum/pgroup.hpp"
#include "test_util.hpp"

using namespace gennum;
using namespace gennum::pgroup;
using padic::Zmod;

namespace {

Vec unit_vec(Int n, Int i) {
  Vec v = Vec::Zero(n);
  v(i) = 1;
  return v;
}

Mat omega_w() {
  Mat w(2, 2);
  w << 0, -1, 1, -1;
  return w;
}

// C_2 |x (Z/2^K)^2 with the top acting by -1
GroupPtr minus_one_group(Int K) {
  const Zmod ring = Zmod::make(2, K);
  return FiniteGroup::closure(ring, 2,
                              {AffineElement::linear(ring, -Mat::Identity(2, 2)),
                               AffineElement::translation(ring, unit_vec(2, 0)),
                               AffineElement::translation(ring, unit_vec(2, 1))});
}

// exhaustive minimal-generating-set search, independent of Frattini theory
Int brute_force_dmin(const Subgroup& s) {
  const auto& g = s.parent;
  if (s.order() == 1) return 0;
  for (Int k = 1;; ++k) {
    const Int n = s.order();
    // odometer over k-subsets of the subgroup's elements
    std::vector<Int> idx(k);
    for (Int i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
      std::vector<std::int32_t> gens;
      for (Int i : idx) gens.push_back(s.ids[i]);
      if (subgroup_closure(g, gens).order() == s.order()) return k;
      Int at = k - 1;
      while (at >= 0 && idx[at] == n - k + at) --at;
      if (at < 0) break;
      ++idx[at];
      for (Int i = at + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
}

}  // namespace

TEST_CASE("closure materializes the generated group") {
  const Zmod r9 = Zmod::make(3, 2);
  CHECK(FiniteGroup::closure(r9, 2, {})->order() == 1);

  const auto free_ab = FiniteGroup::closure(
      r9, 2, {AffineElement::translation(r9, unit_vec(2, 0)),
              AffineElement::translation(r9, unit_vec(2, 1))});
  CHECK(free_ab->order() == 81);

  const auto split = FiniteGroup::closure(
      r9, 2, {AffineElement::linear(r9, omega_w()),
              AffineElement::translation(r9, unit_vec(2, 0)),
              AffineElement::translation(r9, unit_vec(2, 1))});
  CHECK(split->order() == 243);
  CHECK(split->prime() == 3);
  CHECK(split->order_exp() == 5);

  SUBCASE("budget cap fails loudly") {
    ClosureOptions tight;
    tight.budget = 50;
    testutil::expect_error(errc::budget_exceeded, [&] {
      FiniteGroup::closure(r9, 2, {AffineElement::translation(r9, unit_vec(2, 0)),
                                   AffineElement::translation(r9, unit_vec(2, 1))},
                           tight);
    });
  }
  SUBCASE("non p-power elements are rejected") {
    Mat two(1, 1);
    two << 2;  // order 4 = 2^2 mod 5, not a power of 5
    testutil::expect_error(errc::not_a_p_group, [&] {
      FiniteGroup::closure(Zmod::make(5, 1), 1,
                           {AffineElement::linear(Zmod::make(5, 1), two)});
    });
  }
}

TEST_CASE("subgroup closure computes canonical subgroups with index") {
  const auto g = minus_one_group(3);
  REQUIRE(g->order() == 2 * 64);

  const Subgroup trivial = subgroup_closure(g, {g->identity_id()});
  CHECK(trivial.order() == 1);
  CHECK(trivial.index_exp == g->order_exp());

  const Subgroup whole = subgroup_closure(g, g->generator_ids());
  CHECK(whole.order() == g->order());
  CHECK(whole.index_exp == 0);

  const Subgroup translations =
      subgroup_closure(g, {g->generator_ids()[1], g->generator_ids()[2]});
  CHECK(translations.index_exp == 1);
  CHECK(translations.order() == 64);
}

TEST_CASE("frattini subgroup and dmin") {
  SUBCASE("elementary abelian translations have trivial Frattini") {
    const Zmod r = Zmod::make(5, 1);
    const auto g = FiniteGroup::closure(
        r, 3, {AffineElement::translation(r, unit_vec(3, 0)),
               AffineElement::translation(r, unit_vec(3, 1)),
               AffineElement::translation(r, unit_vec(3, 2))});
    const Subgroup phi = frattini(whole_group(g));
    CHECK(phi.order() == 1);
    CHECK(dmin(whole_group(g)) == 3);
  }
  SUBCASE("(Z/4)^2 has Frattini of index 4") {
    const Zmod r = Zmod::make(2, 2);
    const auto g = FiniteGroup::closure(
        r, 2, {AffineElement::translation(r, unit_vec(2, 0)),
               AffineElement::translation(r, unit_vec(2, 1))});
    const Subgroup phi = frattini(whole_group(g));
    CHECK(g->order() / phi.order() == 4);
    CHECK(dmin(whole_group(g)) == 2);
  }
  SUBCASE("split scalar quotient p=3, lambda=4, K=3 has Frattini index 9") {
    const Zmod r = Zmod::make(3, 3);
    Mat act = Mat::Identity(2, 2);
    act(1, 1) = 4;
    const auto g = FiniteGroup::closure(
        r, 2, {AffineElement::make(r, act, unit_vec(2, 0)),
               AffineElement::translation(r, unit_vec(2, 1))});
    REQUIRE(g->order() == 729);
    const Subgroup phi = frattini(whole_group(g));
    CHECK(g->order() / phi.order() == 9);
  }
  SUBCASE("maximal class truncation is 2-generated, minus-one top needs 3") {
    const Zmod r = Zmod::make(3, 2);
    const auto g0 = FiniteGroup::closure(
        r, 2, {AffineElement::linear(r, omega_w()),
               AffineElement::translation(r, unit_vec(2, 0))});
    CHECK(dmin(whole_group(g0)) == 2);
    CHECK(dmin(whole_group(minus_one_group(3))) == 3);
  }
}

TEST_CASE("maximal subgroups match the hyperplane count") {
  const Zmod r2 = Zmod::make(2, 1);
  const auto klein = FiniteGroup::closure(
      r2, 2, {AffineElement::translation(r2, unit_vec(2, 0)),
              AffineElement::translation(r2, unit_vec(2, 1))});
  CHECK(maximal_subgroups(whole_group(klein)).size() == 3);

  const Zmod r3 = Zmod::make(3, 1);
  const auto c3 = FiniteGroup::closure(
      r3, 1, {AffineElement::translation(r3, unit_vec(1, 0))});
  const auto maxes = maximal_subgroups(whole_group(c3));
  REQUIRE(maxes.size() == 1);
  CHECK(maxes[0].order() == 1);

  CHECK(maximal_subgroups(whole_group(minus_one_group(3))).size() == 7);
}

TEST_CASE("census enumerates every subgroup once with invariants") {
  SUBCASE("cyclic C_5") {
    const Zmod r = Zmod::make(5, 1);
    const auto g = FiniteGroup::closure(
        r, 1, {AffineElement::translation(r, unit_vec(1, 0))});
    const auto recs = all_subgroups_up_to_index(g, 1);
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].index_exp == 0);
    CHECK(recs[1].index_exp == 1);
    CHECK(recs[1].sub.order() == 1);
  }
  SUBCASE("(Z/4)^2 index 2") {
    const Zmod r = Zmod::make(2, 2);
    const auto g = FiniteGroup::closure(
        r, 2, {AffineElement::translation(r, unit_vec(2, 0)),
               AffineElement::translation(r, unit_vec(2, 1))});
    const auto recs = all_subgroups_up_to_index(g, 1);
    REQUIRE(recs.size() == 4);
    for (const auto& rec : recs) CHECK(rec.d == 2);
  }
  SUBCASE("Lagrange, containment, elementary quotients, Burnside basis") {
    const Zmod r = Zmod::make(3, 2);
    const auto g = FiniteGroup::closure(
        r, 2, {AffineElement::linear(r, omega_w()),
               AffineElement::translation(r, unit_vec(2, 0)),
               AffineElement::translation(r, unit_vec(2, 1))});
    const auto recs = all_subgroups_up_to_index(g, 2);
    const auto series = frattini_series(g, 2);
    Int at_index_one = 0;
    for (const auto& rec : recs) {
      CHECK(g->order() % rec.sub.order() == 0);
      at_index_one += rec.index_exp == 1;
      // every index-p^i subgroup contains the i-th Frattini term
      for (std::int32_t id : series[rec.index_exp].ids) CHECK(rec.sub.contains(id));
      // S / Phi(S) is elementary abelian
      for (std::int32_t id : rec.sub.gens) CHECK(rec.phi.contains(g->pow_id(id, 3)));
      // witness generators form a Burnside basis
      const auto basis = witness_generators(rec.sub, rec.phi);
      CHECK(static_cast<Int>(basis.size()) == rec.d);
      CHECK(subgroup_closure(g, basis).order() == rec.sub.order());
    }
    CHECK(at_index_one ==
          (checked_pow(3, dmin(whole_group(g))) - 1) / (3 - 1));
  }
}

TEST_CASE("frattini series descends with the expected layers") {
  const Zmod r8 = Zmod::make(2, 3);
  const auto c8 = FiniteGroup::closure(
      r8, 1, {AffineElement::translation(r8, unit_vec(1, 0))});
  const auto chain = frattini_series(c8, 3);
  REQUIRE(chain.size() == 4);
  CHECK(chain[0].order() == 8);
  CHECK(chain[1].order() == 4);
  CHECK(chain[2].order() == 2);
  CHECK(chain[3].order() == 1);

  const Zmod r27 = Zmod::make(3, 3);
  const auto g0 = FiniteGroup::closure(
      r27, 2, {AffineElement::linear(r27, omega_w()),
               AffineElement::translation(r27, unit_vec(2, 0))});
  const auto series = frattini_series(g0, 2);
  REQUIRE(series.size() == 3);
  // pi^(2j-1) B layers: |B : pi B| = 3, |B : pi^3 B| = 27
  CHECK(series[0].order() == 3 * 729);
  CHECK(series[1].order() == 729 / 3);
  CHECK(series[2].order() == 729 / 27);

  const Zmod r5 = Zmod::make(5, 1);
  const auto elem = FiniteGroup::closure(
      r5, 2, {AffineElement::translation(r5, unit_vec(2, 0)),
              AffineElement::translation(r5, unit_vec(2, 1))});
  CHECK(frattini_series(elem, 1)[1].order() == 1);
}

TEST_CASE("dmin equals exhaustive minimal generating search") {
  const Zmod r4 = Zmod::make(2, 2);
  const auto z4sq = FiniteGroup::closure(
      r4, 2, {AffineElement::translation(r4, unit_vec(2, 0)),
              AffineElement::translation(r4, unit_vec(2, 1))});
  for (const auto& rec : all_subgroups_up_to_index(z4sq, 2))
    CHECK(rec.d == brute_force_dmin(rec.sub));

  const auto g = minus_one_group(2);  // order 32
  for (const auto& rec : all_subgroups_up_to_index(g, 1))
    CHECK(rec.d == brute_force_dmin(rec.sub));
}
