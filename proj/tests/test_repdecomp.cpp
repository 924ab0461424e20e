#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "gennum/repdecomp.hpp"
#include "test_util.hpp"

using namespace gennum;
using namespace gennum::repdecomp;

namespace {

Mat companion3() {
  Mat t(2, 2);
  t << 0, -1, 1, -1;
  return t;
}

Mat swap2() {
  Mat t(2, 2);
  t << 0, 1, 1, 0;
  return t;
}

DecompositionCounts counts(Int p, Int n1, Int n2, Int n3) {
  DecompositionCounts c;
  c.p = p;
  c.n1 = n1;
  c.n2 = n2;
  c.n3 = n3;
  c.n = n1 + (p - 1) * n2 + p * n3;
  return c;
}

std::set<std::tuple<Int, Int, Int>> label_set(const std::vector<TableRow>& rows,
                                              const std::string& label) {
  std::set<std::tuple<Int, Int, Int>> out;
  for (const auto& r : rows)
    if (r.label == label) out.insert({r.n1, r.n2, r.n3});
  return out;
}

}  // namespace

TEST_CASE("order-p check is exact over the integers") {
  CHECK(check_order_p(5, Mat::Identity(3, 3)));
  CHECK(check_order_p(3, companion3()));
  CHECK(check_order_p(2, swap2()));
  Mat unipotent(2, 2);
  unipotent << 1, 1, 0, 1;
  CHECK_FALSE(check_order_p(2, unipotent));
  testutil::expect_error(errc::not_order_dividing_p,
                         [&] { require_order_p(2, unipotent); });
  testutil::expect_error(errc::not_order_dividing_p,
                         [&] { require_order_p(2, Mat(2 * Mat::Identity(2, 2))); });
}

TEST_CASE("decomposition multiplicities of the indecomposable summands") {
  SUBCASE("trivial action") {
    for (Int p : {2, 3, 5}) {
      const auto c = decompose(p, Mat::Identity(2, 2));
      CHECK(c.n1 == 2);
      CHECK(c.n2 == 0);
      CHECK(c.n3 == 0);
      CHECK(c.n == 2);
    }
  }
  SUBCASE("cyclotomic summand at p=3") {
    const auto c = decompose(3, companion3());
    CHECK(c.n1 == 0);
    CHECK(c.n2 == 1);
    CHECK(c.n3 == 0);
  }
  SUBCASE("regular summand at p=2") {
    const auto c = decompose(2, swap2());
    CHECK(c.n1 == 0);
    CHECK(c.n2 == 0);
    CHECK(c.n3 == 1);
  }
  SUBCASE("dimension identity on mixed instances") {
    for (Int p : {2, 3}) {
      const Mat t = synth_instance(p, 1, 1, 1, 7);
      const auto c = decompose(p, t);
      CHECK(c.n1 + (p - 1) * c.n2 + p * c.n3 == c.n);
      CHECK(c.n == t.rows());
    }
  }
}

TEST_CASE("rational generator count") {
  CHECK(rational_d(counts(2, 2, 0, 0)) == 2);
  CHECK(rational_d(counts(2, 1, 2, 1)) == 3);
  CHECK(rational_d(counts(3, 0, 1, 0)) == 1);
}

TEST_CASE("feasibility inequality") {
  CHECK(inequality_check(counts(2, 1, 0, 1)));
  CHECK(inequality_check(counts(3, 0, 1, 0)));
  CHECK_FALSE(inequality_check(counts(5, 0, 1, 0)));
  CHECK_FALSE(inequality_check(counts(3, 0, 2, 0)));
  CHECK_FALSE(inequality_check(counts(2, 0, 0, 2)));
}

TEST_CASE("case labels for feasible triples") {
  CHECK(case_label(counts(2, 2, 0, 0)) == "(T 2.1)");
  CHECK(case_label(counts(2, 3, 1, 0)) == "(T 2.2)");
  CHECK(case_label(counts(2, 1, 0, 1)) == "(T 2.3)");
  CHECK(case_label(counts(2, 0, 2, 0)) == "(T 2.4)");
  CHECK(case_label(counts(2, 1, 1, 0)) == "(T 2.5)");
  CHECK(case_label(counts(2, 0, 0, 1)) == "(T 2.6)");
  CHECK(case_label(counts(3, 2, 0, 0)) == "(T 3.1)");
  CHECK(case_label(counts(3, 0, 1, 0)) == "(T 3.2)");
  CHECK(case_label(counts(5, 4, 0, 0)) == "--");
  testutil::expect_error(errc::constraint_violation,
                         [] { (void)case_label(counts(5, 0, 1, 0)); });
  testutil::expect_error(errc::constraint_violation,
                         [] { (void)case_label(counts(2, 1, 0, 0)); });
}

TEST_CASE("table of feasible multiplicities") {
  SUBCASE("p=2 families up to dimension 4") {
    const auto rows = table1(2, 4);
    CHECK(label_set(rows, "(T 2.1)") ==
          std::set<std::tuple<Int, Int, Int>>{{2, 0, 0}, {3, 0, 0}, {4, 0, 0}});
    CHECK(label_set(rows, "(T 2.2)") ==
          std::set<std::tuple<Int, Int, Int>>{{2, 1, 0}, {3, 1, 0}});
    CHECK(label_set(rows, "(T 2.3)") ==
          std::set<std::tuple<Int, Int, Int>>{{1, 0, 1}, {2, 0, 1}});
    CHECK(label_set(rows, "(T 2.4)") ==
          std::set<std::tuple<Int, Int, Int>>{{0, 2, 0}, {0, 3, 0}, {0, 4, 0}});
    CHECK(label_set(rows, "(T 2.5)") ==
          std::set<std::tuple<Int, Int, Int>>{{1, 1, 0}, {1, 2, 0}, {1, 3, 0}});
    CHECK(label_set(rows, "(T 2.6)") ==
          std::set<std::tuple<Int, Int, Int>>{{0, 0, 1}, {0, 1, 1}, {0, 2, 1}});
    for (const auto& r : rows) {
      CHECK(r.n >= 2);
      CHECK(r.n <= 4);
      CHECK(r.conditions == (r.n1 > r.n2 ? "n1 > n2" : "n1 <= n2"));
    }
  }
  SUBCASE("p=3 has exactly two families") {
    const auto rows = table1(3, 5);
    std::set<std::string> labels;
    for (const auto& r : rows) labels.insert(r.label);
    CHECK(labels == std::set<std::string>{"(T 3.1)", "(T 3.2)"});
    CHECK(label_set(rows, "(T 3.2)") ==
          std::set<std::tuple<Int, Int, Int>>{{0, 1, 0}});
  }
  SUBCASE("p=5 only keeps the trivial-action family") {
    const auto rows = table1(5, 6);
    for (const auto& r : rows) {
      CHECK(r.label == "--");
      CHECK(r.n2 == 0);
      CHECK(r.n3 == 0);
      CHECK(r.n1 >= 2);
    }
    CHECK(rows.size() == 5);
  }
  SUBCASE("rows are exactly the feasible triples") {
    for (Int p : {2, 3}) {
      const auto rows = table1(p, 6);
      std::set<std::tuple<Int, Int, Int>> seen;
      for (const auto& r : rows) {
        CHECK(inequality_check(counts(p, r.n1, r.n2, r.n3)));
        CHECK(seen.insert({r.n1, r.n2, r.n3}).second);
      }
      for (Int n1 = 0; n1 <= 6; ++n1)
        for (Int n2 = 0; (p - 1) * n2 <= 6; ++n2)
          for (Int n3 = 0; p * n3 <= 6; ++n3) {
            const auto c = counts(p, n1, n2, n3);
            if (c.n < 2 || c.n > 6) continue;
            CHECK(seen.count({n1, n2, n3}) ==
                  static_cast<std::size_t>(inequality_check(c)));
          }
    }
  }
}

TEST_CASE("synthetic instances round-trip through decompose") {
  CHECK(synth_instance(3, 1, 0, 0, 42) == Mat::Identity(1, 1));
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const Mat t = synth_instance(2, 0, 0, 1, seed);
    REQUIRE(check_order_p(2, t));
    const auto c = decompose(2, t);
    CHECK(c.n1 == 0);
    CHECK(c.n2 == 0);
    CHECK(c.n3 == 1);
  }
  const Mat t7 = synth_instance(3, 2, 1, 1, 11);
  REQUIRE(t7.rows() == 2 + (3 - 1) * 1 + 3 * 1);
  REQUIRE(check_order_p(3, t7));
  const auto c7 = decompose(3, t7);
  CHECK(c7.n1 == 2);
  CHECK(c7.n2 == 1);
  CHECK(c7.n3 == 1);
}

TEST_CASE("decomposition is a conjugation invariant with direct-sum additivity") {
  const Mat a = synth_instance(2, 1, 1, 0, 5);
  const Mat b = synth_instance(2, 0, 0, 1, 6);
  Mat direct = Mat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  direct.topLeftCorner(a.rows(), a.cols()) = a;
  direct.bottomRightCorner(b.rows(), b.cols()) = b;
  const auto ca = decompose(2, a);
  const auto cb = decompose(2, b);
  const auto cd = decompose(2, direct);
  CHECK(cd.n1 == ca.n1 + cb.n1);
  CHECK(cd.n2 == ca.n2 + cb.n2);
  CHECK(cd.n3 == ca.n3 + cb.n3);

  // conjugating by an explicit shear changes nothing
  Mat u = Mat::Identity(4, 4);
  u(0, 2) = 1;
  u(1, 3) = -2;
  Mat uinv = Mat::Identity(4, 4);
  uinv(0, 2) = -1;
  uinv(1, 3) = 2;
  REQUIRE(u * uinv == Mat::Identity(4, 4));
  const auto cc = decompose(2, Mat(u * direct * uinv));
  CHECK(cc.n1 == cd.n1);
  CHECK(cc.n2 == cd.n2);
  CHECK(cc.n3 == cd.n3);
}
