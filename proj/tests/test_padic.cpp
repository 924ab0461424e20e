#include <doctest.h>

#include <algorithm>
#include <random>

#include "gennum/padic.hpp"
#include "test_util.hpp"

using namespace gennum;
using namespace gennum::padic;
using testutil::expect_error;

namespace {

Mat mat2(Int a, Int b, Int c, Int d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST_CASE("valuation saturates at the precision") {
  CHECK(val(Zmod::make(2, 6), 12) == Valuation::exact(2));
  CHECK(val(Zmod::make(3, 4), 0) == Valuation::at_least(4));
  CHECK(val(Zmod::make(5, 3), 10) == Valuation::exact(1));
  CHECK(val(Zmod::make(2, 3), 8) == Valuation::at_least(3));
}

TEST_CASE("unit inverse solves x*y = 1, rejects non-units") {
  CHECK(unit_inverse(Zmod::make(5, 2), 2) == 13);
  CHECK(unit_inverse(Zmod::make(2, 3), 3) == 3);
  expect_error(errc::non_unit, [] { unit_inverse(Zmod::make(3, 2), 3); });
  const Zmod r = Zmod::make(7, 5);
  for (Int x = 1; x < 40; ++x) {
    if (x % 7 == 0) continue;
    CHECK(r.mul(x, unit_inverse(r, x)) == 1);
  }
}

TEST_CASE("hnf canonicalizes sublattices") {
  const Zmod r = Zmod::make(2, 6);
  SUBCASE("diagonal p lattice") {
    const Lattice l = hnf(RMatrix::make(r, mat2(2, 0, 0, 2)));
    REQUIRE(l.rank() == 2);
    CHECK(l.pivot_vals == std::vector<Int>{1, 1});
    CHECK(l.basis == mat2(2, 0, 0, 2));
  }
  SUBCASE("mixed pivots keep the echelon basis") {
    const Lattice l = hnf(RMatrix::make(r, mat2(1, 0, 1, 2)));
    REQUIRE(l.rank() == 2);
    CHECK(l.pivot_vals == std::vector<Int>{0, 1});
    CHECK(l.basis == mat2(1, 0, 1, 2));
  }
  SUBCASE("redundant generators are dropped") {
    Mat three(2, 3);
    three << 2, 0, 2, 0, 8, 8;
    const Lattice with = hnf(RMatrix{r, three});
    const Lattice without = hnf(RMatrix::make(r, mat2(2, 0, 0, 8)));
    CHECK(lattice_equal(with, without));
    CHECK(with.basis == without.basis);
  }
  SUBCASE("generator order never changes the canonical form") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<Int> entry(0, 63);
    for (int trial = 0; trial < 50; ++trial) {
      Mat m(3, 4);
      for (Int i = 0; i < 9 + 3; ++i) m(i / 4, i % 4) = entry(rng);
      const Zmod ring = Zmod::make(trial % 2 ? 2 : 3, 6);
      const Lattice a = hnf(RMatrix::make(ring, m));
      Mat shuffled = m;
      std::vector<Int> perm{0, 1, 2, 3};
      std::shuffle(perm.begin(), perm.end(), rng);
      for (Int j = 0; j < 4; ++j) shuffled.col(j) = m.col(perm[j]);
      const Lattice b = hnf(RMatrix::make(ring, shuffled));
      CHECK(a.basis == b.basis);
      CHECK(a.pivot_vals == b.pivot_vals);
    }
  }
  SUBCASE("unresolved rank raises PrecisionExhausted") {
    const Zmod low = Zmod::make(2, 2);
    Mat col(2, 1);
    col << 4, 0;
    expect_error(errc::precision_exhausted,
                 [&] { hnf_expect_rank(RMatrix::make(low, col), 1); });
  }
}

TEST_CASE("snf sorts pivot valuations and tracks transforms") {
  const Zmod r = Zmod::make(2, 6);
  SUBCASE("diag(2,12) has elementary divisors 2 and 4") {
    const RMatrix m = RMatrix::make(r, mat2(2, 0, 0, 12));
    const Snf s = snf(m);
    REQUIRE(s.resolved);
    CHECK(s.diag == std::vector<Valuation>{Valuation::exact(1), Valuation::exact(2)});
    const Mat prod = rmul(rmul(RMatrix::make(r, s.u), m), RMatrix::make(r, s.v)).m;
    CHECK(val(r, prod(0, 0)) == Valuation::exact(1));
    CHECK(val(r, prod(1, 1)) == Valuation::exact(2));
    CHECK(prod(0, 1) == 0);
    CHECK(prod(1, 0) == 0);
    CHECK(is_invertible(RMatrix::make(r, s.u)));
    CHECK(is_invertible(RMatrix::make(r, s.v)));
  }
  SUBCASE("identity") {
    const Snf s = snf(ridentity(r, 3));
    CHECK(s.resolved);
    for (const Valuation& v : s.diag) CHECK(v == Valuation::exact(0));
  }
  SUBCASE("zero matrix is flagged unresolved") {
    const Snf s = snf(RMatrix::make(r, Mat::Zero(2, 2)));
    CHECK_FALSE(s.resolved);
    for (const Valuation& v : s.diag) CHECK(v == Valuation::at_least(6));
  }
}

TEST_CASE("lattice index is the pivot-valuation product") {
  const Zmod r3 = Zmod::make(3, 5);
  const Lattice full = full_lattice(r3, 2);
  CHECK(lattice_index(lattice_scale(full, 1), full) == 9);

  // pi = omega - 1 on Z_3[omega] in the basis (1, omega)
  const Mat pi = mat2(-1, -1, 1, -2);
  const Lattice pib = lattice_apply(RMatrix::make(r3, pi), full);
  CHECK(lattice_index(pib, full) == 3);
  const Lattice pi2b = lattice_apply(RMatrix::make(r3, pi), pib);
  CHECK(lattice_index(pi2b, full) == 9);
  CHECK(lattice_index(pi2b, pib) * lattice_index(pib, full) ==
        lattice_index(pi2b, full));

  expect_error(errc::not_contained, [&] { lattice_index(full, pib); });

  Mat thin(2, 1);
  thin << 1, 0;
  const Lattice line = hnf(RMatrix::make(r3, thin));
  expect_error(errc::infinite_index, [&] { lattice_index(line, full); });
}

TEST_CASE("matrix order detects p-power orders only") {
  Mat one(1, 1);
  one << 4;
  CHECK(matrix_order_mod(RMatrix::make(Zmod::make(3, 3), one)) == 9);
  CHECK(matrix_order_mod(ridentity(Zmod::make(5, 4), 3)) == 1);

  const Mat w = mat2(0, -1, 1, -1);  // companion of x^2 + x + 1
  CHECK(matrix_order_mod(RMatrix::make(Zmod::make(3, 5), w)) == 3);
  expect_error(errc::not_p_power_order,
               [&] { matrix_order_mod(RMatrix::make(Zmod::make(5, 4), w)); });
}

TEST_CASE("scalar normal form matches the catalog shapes") {
  CHECK(scalar_normal_form_exact(5, 6) == ScalarForm{ScalarForm::Plus, 1});
  CHECK(scalar_normal_form_exact(2, 3) == ScalarForm{ScalarForm::Minus, 2});
  CHECK(scalar_normal_form(Residue::make(Zmod::make(2, 5), 3)) ==
        ScalarForm{ScalarForm::Minus, 2});
  CHECK(scalar_normal_form_exact(2, -1) == ScalarForm{ScalarForm::MinusOne, 0});
  CHECK(scalar_normal_form_exact(3, 1) == ScalarForm{ScalarForm::Trivial, 0});
  expect_error(errc::discontinuous_action, [] { scalar_normal_form_exact(5, 2); });
  expect_error(errc::non_unit, [] { scalar_normal_form_exact(3, 6); });

  SUBCASE("invariant under powers coprime to p") {
    CHECK(scalar_normal_form_exact(3, 10 * 10) ==
          ScalarForm{ScalarForm::Plus, 2});
    CHECK(scalar_normal_form_exact(3, 10) == scalar_normal_form_exact(3, 100));
    CHECK(scalar_normal_form_exact(2, -5) == ScalarForm{ScalarForm::Minus, 2});
    CHECK(scalar_normal_form_exact(2, -125) == ScalarForm{ScalarForm::Minus, 2});
    CHECK(scalar_normal_form_exact(2, -5 * -5) == ScalarForm{ScalarForm::Plus, 3});
  }
  SUBCASE("round trip through the representative scalar") {
    for (const ScalarForm f : {ScalarForm{ScalarForm::Plus, 2},
                               ScalarForm{ScalarForm::Minus, 3},
                               ScalarForm{ScalarForm::MinusOne, 0},
                               ScalarForm{ScalarForm::Trivial, 0}}) {
      CHECK(scalar_normal_form_exact(2, scalar_of_form(2, f)) == f);
    }
    CHECK(scalar_normal_form_exact(7, scalar_of_form(7, {ScalarForm::Plus, 1})) ==
          ScalarForm{ScalarForm::Plus, 1});
  }
}
