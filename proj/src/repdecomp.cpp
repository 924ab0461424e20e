#include "gennum/repdecomp.hpp"

#include <algorithm>
#include <random>
#include <tuple>

namespace gennum::repdecomp {

bool check_order_p(Int p, const Mat& t) {
  if (t.rows() != t.cols() || t.rows() < 1) return false;
  try {
    return int_mat_is_identity(int_mat_pow(t, p));
  } catch (const error& e) {
    if (e.code() == errc::overflow) return false;
    throw;
  }
}

void require_order_p(Int p, const Mat& t) {
  require(is_prime(p), errc::semantic_error, "p must be prime");
  require(t.rows() == t.cols() && t.rows() >= 1, errc::semantic_error,
          "action matrix must be square");
  require(check_order_p(p, t), errc::not_order_dividing_p,
          "matrix power T^p is not the identity");
}

DecompositionCounts decompose(Int p, const Mat& t) {
  require_order_p(p, t);
  const Int n = t.rows();
  DecompositionCounts c;
  c.p = p;
  c.n = n;
  const Int work = n + 4;
  const padic::Zmod ring = padic::Zmod::make(p, work);
  const padic::RMatrix tm = padic::RMatrix::make(ring, t);
  const padic::RMatrix shifted = padic::rsub(tm, padic::ridentity(ring, n));

  // elementary divisors of T - 1 are p^0 per free line, one p^1 per
  // cyclotomic summand, and a zero per trivial or regular summand
  const padic::Snf s = padic::snf(shifted);
  Int zeros = 0;
  for (const padic::Valuation& v : s.diag) {
    if (!v.resolved()) {
      ++zeros;
      continue;
    }
    require(v.v <= 1, errc::internal,
            "unexpected elementary divisor for an order-p action");
    if (v.v == 1) c.n2 += 1;
  }

  if (zeros == 0) {
    require(c.n2 * (p - 1) == n, errc::internal, "decomposition does not fill the rank");
    return c;
  }

  // norm map: acts as p on each trivial line, 0 on each cyclotomic
  // summand, and with a single unit divisor on each regular summand
  padic::RMatrix norm = padic::ridentity(ring, n);
  padic::RMatrix power = tm;
  for (Int i = 1; i < p; ++i) {
    norm = padic::radd(norm, power);
    if (i + 1 < p) power = padic::rmul(power, tm);
  }
  for (const padic::Valuation& v : padic::snf(norm).diag) {
    if (!v.resolved()) continue;
    require(v.v <= 1, errc::internal, "unexpected norm divisor for an order-p action");
    if (v.v == 0) c.n3 += 1;
    if (v.v == 1) c.n1 += 1;
  }
  require(c.n1 + c.n3 == zeros, errc::internal,
          "norm divisors disagree with the fixed rank");
  require(c.n1 + (p - 1) * c.n2 + p * c.n3 == n, errc::internal,
          "decomposition does not fill the rank");
  return c;
}

Int rational_d(const DecompositionCounts& c) {
  return std::max(c.n1, c.n2) + c.n3;
}

bool inequality_check(const DecompositionCounts& c) {
  return 1 + std::max(Int{0}, c.n2 - c.n1) >= (c.p - 1) * (c.n2 + c.n3);
}

std::string case_label(const DecompositionCounts& c) {
  require(c.n == c.n1 + (c.p - 1) * c.n2 + c.p * c.n3, errc::semantic_error,
          "ambient dimension does not match the multiplicities");
  require(c.n >= 2 && inequality_check(c), errc::constraint_violation,
          "counts fail the feasibility inequality or have dimension below 2");
  if (c.p == 2) {
    if (c.n1 >= 2 && c.n2 == 0 && c.n3 == 0) return "(T 2.1)";
    if (c.n1 >= 2 && c.n2 == 1 && c.n3 == 0) return "(T 2.2)";
    if (c.n1 >= 1 && c.n2 == 0 && c.n3 == 1) return "(T 2.3)";
    if (c.n1 == 0 && c.n2 >= 2 && c.n3 == 0) return "(T 2.4)";
    if (c.n1 == 1 && c.n2 >= 1 && c.n3 == 0) return "(T 2.5)";
    if (c.n1 == 0 && c.n3 == 1) return "(T 2.6)";
  } else if (c.p == 3) {
    if (c.n1 >= 2 && c.n2 == 0 && c.n3 == 0) return "(T 3.1)";
    if (c.n1 == 0 && c.n2 == 1 && c.n3 == 0) return "(T 3.2)";
  } else if (c.n1 >= 2 && c.n2 == 0 && c.n3 == 0) {
    return "--";
  }
  fail(errc::internal, "feasible triple escapes the classified rows");
}

std::vector<TableRow> table1(Int p, Int n_max) {
  require(is_prime(p), errc::semantic_error, "p must be prime");
  require(n_max >= 2, errc::semantic_error, "dimension bound must be at least 2");
  std::vector<TableRow> rows;
  for (Int n1 = 0; n1 <= n_max; ++n1)
    for (Int n2 = 0; (p - 1) * n2 <= n_max; ++n2)
      for (Int n3 = 0; p * n3 <= n_max; ++n3) {
        DecompositionCounts c;
        c.p = p;
        c.n1 = n1;
        c.n2 = n2;
        c.n3 = n3;
        c.n = n1 + (p - 1) * n2 + p * n3;
        if (c.n < 2 || c.n > n_max || !inequality_check(c)) continue;
        TableRow r;
        r.p = p;
        r.n1 = n1;
        r.n2 = n2;
        r.n3 = n3;
        r.n = c.n;
        r.conditions = (p >= 5) ? "--" : (n1 > n2 ? "n1 > n2" : "n1 <= n2");
        r.label = case_label(c);
        rows.push_back(std::move(r));
      }
  std::sort(rows.begin(), rows.end(), [](const TableRow& a, const TableRow& b) {
    return std::tie(a.n, a.n1, a.n2, a.n3) < std::tie(b.n, b.n1, b.n2, b.n3);
  });
  return rows;
}

Mat synth_instance(Int p, Int n1, Int n2, Int n3, std::uint64_t seed) {
  require(is_prime(p), errc::semantic_error, "p must be prime");
  require(n1 >= 0 && n2 >= 0 && n3 >= 0 && n1 + n2 + n3 > 0, errc::semantic_error,
          "multiplicities must be nonnegative and not all zero");
  const Int n = n1 + (p - 1) * n2 + p * n3;
  Mat t = Mat::Zero(n, n);
  Int at = 0;
  for (Int i = 0; i < n1; ++i) {
    t(at, at) = 1;
    at += 1;
  }
  for (Int b = 0; b < n2; ++b) {
    // companion matrix of 1 + x + ... + x^(p-1)
    for (Int i = 1; i < p - 1; ++i) t(at + i, at + i - 1) = 1;
    for (Int i = 0; i < p - 1; ++i) t(at + i, at + p - 2) = -1;
    at += p - 1;
  }
  for (Int b = 0; b < n3; ++b) {
    for (Int i = 1; i < p; ++i) t(at + i, at + i - 1) = 1;
    t(at, at + p - 1) = 1;
    at += p;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Int> coord(0, n - 1);
  std::uniform_int_distribution<Int> coeff(-3, 3);
  const Int rounds = 2 * n + 4;
  for (Int round = 0; round < rounds; ++round) {
    const Int i = coord(rng);
    const Int j = coord(rng);
    const Int cval = coeff(rng);
    if (i == j || cval == 0) continue;
    Mat shear = Mat::Identity(n, n);
    shear(i, j) = cval;
    Mat inv = Mat::Identity(n, n);
    inv(i, j) = -cval;
    const Mat cand = int_mat_mul(int_mat_mul(shear, t), inv);
    if (cand.cwiseAbs().maxCoeff() > 10000) continue;
    t = cand;
  }
  require_order_p(p, t);
  return t;
}

}  // namespace gennum::repdecomp
