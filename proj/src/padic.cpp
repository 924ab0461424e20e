#include "gennum/padic.hpp"

#include <algorithm>
#include <utility>

namespace gennum::padic {

Zmod Zmod::make(Int p, Int K) {
  require(is_prime(p), errc::semantic_error, "modulus base must be prime");
  require(K >= 1, errc::semantic_error, "precision exponent must be >= 1");
  Zmod r;
  r.p = p;
  r.K = K;
  r.q = checked_pow(p, K);
  return r;
}

Int Zmod::pow(Int a, Int e) const {
  require(e >= 0, errc::internal, "negative exponent");
  Int base = reduce(a);
  Int r = 1;
  while (e > 0) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

Valuation val(const Zmod& ring, Int x) {
  Int r = ring.reduce(x);
  if (r == 0) return Valuation::at_least(ring.K);
  Int v = 0;
  while (r % ring.p == 0) {
    r /= ring.p;
    ++v;
  }
  return Valuation::exact(v);
}

Int unit_inverse(const Zmod& ring, Int x) {
  Int r = ring.reduce(x);
  require(r % ring.p != 0, errc::non_unit, "inverse of a non-unit residue");
  // extended Euclid on (r, q); gcd is 1 because r is a unit
  Int a = r, b = ring.q;
  Int u0 = 1, u1 = 0;
  while (b != 0) {
    Int t = a / b;
    a -= t * b;
    std::swap(a, b);
    u0 -= t * u1;
    std::swap(u0, u1);
  }
  return ring.reduce(u0);
}

RMatrix RMatrix::make(const Zmod& ring, const Mat& a) {
  RMatrix r{ring, a};
  for (Int i = 0; i < r.rows(); ++i)
    for (Int j = 0; j < r.cols(); ++j) r.m(i, j) = ring.reduce(r.m(i, j));
  return r;
}

RMatrix ridentity(const Zmod& ring, Int n) {
  RMatrix r{ring, Mat::Identity(n, n)};
  return r;
}

RMatrix rmul(const RMatrix& a, const RMatrix& b) {
  require(a.ring == b.ring, errc::internal, "ring mismatch in matrix product");
  require(a.cols() == b.rows(), errc::internal, "shape mismatch in matrix product");
  RMatrix r{a.ring, Mat::Zero(a.rows(), b.cols())};
  for (Int i = 0; i < a.rows(); ++i)
    for (Int j = 0; j < b.cols(); ++j) {
      __int128 acc = 0;
      for (Int k = 0; k < a.cols(); ++k)
        acc += static_cast<__int128>(a.m(i, k)) * b.m(k, j);
      r.m(i, j) = static_cast<Int>(((acc % a.ring.q) + a.ring.q) % a.ring.q);
    }
  return r;
}

RMatrix radd(const RMatrix& a, const RMatrix& b) {
  require(a.ring == b.ring, errc::internal, "ring mismatch in matrix sum");
  RMatrix r{a.ring, Mat::Zero(a.rows(), a.cols())};
  for (Int i = 0; i < a.rows(); ++i)
    for (Int j = 0; j < a.cols(); ++j) r.m(i, j) = a.ring.add(a.m(i, j), b.m(i, j));
  return r;
}

RMatrix rsub(const RMatrix& a, const RMatrix& b) {
  require(a.ring == b.ring, errc::internal, "ring mismatch in matrix difference");
  RMatrix r{a.ring, Mat::Zero(a.rows(), a.cols())};
  for (Int i = 0; i < a.rows(); ++i)
    for (Int j = 0; j < a.cols(); ++j) r.m(i, j) = a.ring.sub(a.m(i, j), b.m(i, j));
  return r;
}

RMatrix rpow(const RMatrix& a, Int e) {
  require(e >= 0, errc::internal, "negative matrix exponent");
  require(a.rows() == a.cols(), errc::internal, "power of a non-square matrix");
  RMatrix base = a;
  RMatrix r = ridentity(a.ring, a.rows());
  while (e > 0) {
    if (e & 1) r = rmul(r, base);
    base = rmul(base, base);
    e >>= 1;
  }
  return r;
}

Vec rapply(const RMatrix& a, const Vec& v) {
  require(a.cols() == v.size(), errc::internal, "shape mismatch in matrix apply");
  Vec r = Vec::Zero(a.rows());
  for (Int i = 0; i < a.rows(); ++i) {
    __int128 acc = 0;
    for (Int k = 0; k < a.cols(); ++k)
      acc += static_cast<__int128>(a.m(i, k)) * v(k);
    r(i) = static_cast<Int>(((acc % a.ring.q) + a.ring.q) % a.ring.q);
  }
  return r;
}

bool is_identity(const RMatrix& a) {
  if (a.rows() != a.cols()) return false;
  for (Int i = 0; i < a.rows(); ++i)
    for (Int j = 0; j < a.cols(); ++j)
      if (a.m(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

bool is_invertible(const RMatrix& a) {
  if (a.rows() != a.cols()) return false;
  // full rank mod p is equivalent to invertibility mod p^K
  const Int p = a.ring.p;
  Mat w = a.m;
  const Int n = w.rows();
  for (Int i = 0; i < n; ++i)
    for (Int j = 0; j < n; ++j) w(i, j) %= p;
  Int row = 0;
  for (Int col = 0; col < n && row < n; ++col) {
    Int piv = -1;
    for (Int i = row; i < n; ++i)
      if (w(i, col) % p != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return false;
    w.row(row).swap(w.row(piv));
    Int inv = 1;
    for (Int x = 1; x < p; ++x)
      if ((x * w(row, col)) % p == 1) inv = x;
    for (Int j = 0; j < n; ++j) w(row, j) = (w(row, j) * inv) % p;
    for (Int i = 0; i < n; ++i) {
      if (i == row) continue;
      Int f = w(i, col) % p;
      if (f == 0) continue;
      for (Int j = 0; j < n; ++j)
        w(i, j) = ((w(i, j) - f * w(row, j)) % p + p) % p;
    }
    ++row;
  }
  return row == n;
}

RMatrix rinverse(const RMatrix& a) {
  require(a.rows() == a.cols(), errc::not_invertible, "inverse of a non-square matrix");
  const Zmod& ring = a.ring;
  const Int n = a.rows();
  Mat w = a.m;
  Mat inv = Mat::Identity(n, n);
  for (Int col = 0; col < n; ++col) {
    Int piv = -1;
    for (Int i = col; i < n; ++i)
      if (w(i, col) % ring.p != 0) {
        piv = i;
        break;
      }
    require(piv >= 0, errc::not_invertible, "matrix is singular mod p");
    w.row(col).swap(w.row(piv));
    inv.row(col).swap(inv.row(piv));
    Int u = unit_inverse(ring, w(col, col));
    for (Int j = 0; j < n; ++j) {
      w(col, j) = ring.mul(w(col, j), u);
      inv(col, j) = ring.mul(inv(col, j), u);
    }
    for (Int i = 0; i < n; ++i) {
      if (i == col) continue;
      Int f = w(i, col);
      if (f == 0) continue;
      for (Int j = 0; j < n; ++j) {
        w(i, j) = ring.sub(w(i, j), ring.mul(f, w(col, j)));
        inv(i, j) = ring.sub(inv(i, j), ring.mul(f, inv(col, j)));
      }
    }
  }
  return RMatrix{ring, inv};
}

Int Lattice::pivot_val_sum() const {
  Int s = 0;
  for (Int v : pivot_vals) s += v;
  return s;
}

Lattice hnf(const RMatrix& gens) {
  const Zmod& ring = gens.ring;
  const Int n = gens.rows();
  Mat a = gens.m;
  const Int c = a.cols();
  std::vector<Int> pivot_rows, pivot_vals;
  Int done = 0;
  for (Int row = 0; row < n && done < c; ++row) {
    Int best = -1;
    Int best_v = ring.K;
    for (Int j = done; j < c; ++j) {
      Valuation w = val(ring, a(row, j));
      if (w.resolved() && w.v < best_v) {
        best_v = w.v;
        best = j;
      }
    }
    if (best < 0) continue;
    a.col(done).swap(a.col(best));
    const Int pw = checked_pow(ring.p, best_v);
    const Int unit = a(row, done) / pw;
    const Int uinv = unit_inverse(ring, unit);
    for (Int i = 0; i < n; ++i) a(i, done) = ring.mul(a(i, done), uinv);
    for (Int j = done + 1; j < c; ++j) {
      const Int f = a(row, j) / pw;
      if (f == 0) continue;
      for (Int i = 0; i < n; ++i)
        a(i, j) = ring.sub(a(i, j), ring.mul(f, a(i, done)));
    }
    pivot_rows.push_back(row);
    pivot_vals.push_back(best_v);
    ++done;
  }
  // reduce pivot-row entries of earlier columns below the pivot
  for (Int j = 1; j < done; ++j) {
    const Int row = pivot_rows[j];
    const Int pw = checked_pow(ring.p, pivot_vals[j]);
    for (Int j2 = 0; j2 < j; ++j2) {
      const Int f = a(row, j2) / pw;
      if (f == 0) continue;
      for (Int i = 0; i < n; ++i)
        a(i, j2) = ring.sub(a(i, j2), ring.mul(f, a(i, j)));
    }
  }
  Lattice lat;
  lat.ring = ring;
  lat.ambient = n;
  lat.basis = a.leftCols(done);
  lat.pivot_rows = std::move(pivot_rows);
  lat.pivot_vals = std::move(pivot_vals);
  return lat;
}

Lattice hnf_expect_rank(const RMatrix& gens, Int rank) {
  Lattice lat = hnf(gens);
  require(lat.rank() >= rank, errc::precision_exhausted,
          "lattice rank " + std::to_string(lat.rank()) + " below expected " +
              std::to_string(rank) + " at precision K=" + std::to_string(gens.ring.K));
  return lat;
}

Lattice full_lattice(const Zmod& ring, Int n) {
  return hnf(ridentity(ring, n));
}

Lattice lattice_sum(const Lattice& a, const Lattice& b) {
  require(a.ring == b.ring && a.ambient == b.ambient, errc::internal,
          "lattice sum over mismatched ambients");
  Mat cols(a.ambient, a.rank() + b.rank());
  cols << a.basis, b.basis;
  return hnf(RMatrix{a.ring, cols});
}

Lattice lattice_scale(const Lattice& a, Int j) {
  const Int f = a.ring.reduce(checked_pow(a.ring.p, j));
  Mat cols = a.basis;
  for (Int i = 0; i < cols.rows(); ++i)
    for (Int k = 0; k < cols.cols(); ++k) cols(i, k) = a.ring.mul(cols(i, k), f);
  return hnf(RMatrix{a.ring, cols});
}

Lattice lattice_apply(const RMatrix& t, const Lattice& a) {
  require(t.cols() == a.ambient, errc::internal, "apply shape mismatch");
  return hnf(rmul(t, RMatrix{a.ring, a.basis}));
}

std::optional<Vec> lattice_solve(const Lattice& lat, const Vec& x) {
  const Zmod& ring = lat.ring;
  require(x.size() == lat.ambient, errc::internal, "solve shape mismatch");
  Vec r = x;
  for (Int i = 0; i < r.size(); ++i) r(i) = ring.reduce(r(i));
  Vec coef = Vec::Zero(lat.rank());
  for (Int k = 0; k < lat.rank(); ++k) {
    const Int row = lat.pivot_rows[k];
    const Int pw = checked_pow(ring.p, lat.pivot_vals[k]);
    const Int e = r(row);
    if (e % pw != 0) return std::nullopt;
    const Int c = e / pw;
    coef(k) = c;
    if (c != 0)
      for (Int i = 0; i < r.size(); ++i)
        r(i) = ring.sub(r(i), ring.mul(c, lat.basis(i, k)));
  }
  for (Int i = 0; i < r.size(); ++i)
    if (r(i) != 0) return std::nullopt;
  return coef;
}

std::optional<Mat> lattice_solve_cols(const Lattice& lat, const Mat& cols) {
  Mat x(lat.rank(), cols.cols());
  for (Int j = 0; j < cols.cols(); ++j) {
    auto c = lattice_solve(lat, cols.col(j));
    if (!c) return std::nullopt;
    x.col(j) = *c;
  }
  return x;
}

bool lattice_contains(const Lattice& sup, const Vec& x) {
  return lattice_solve(sup, x).has_value();
}

bool lattice_contains(const Lattice& sup, const Lattice& sub) {
  require(sup.ring == sub.ring && sup.ambient == sub.ambient, errc::internal,
          "containment over mismatched ambients");
  return lattice_solve_cols(sup, sub.basis).has_value();
}

bool lattice_equal(const Lattice& a, const Lattice& b) {
  return a.ring == b.ring && a.ambient == b.ambient &&
         a.pivot_rows == b.pivot_rows && a.pivot_vals == b.pivot_vals &&
         a.basis == b.basis;
}

Int lattice_index_exp(const Lattice& sub, const Lattice& sup) {
  require(sub.ring == sup.ring && sub.ambient == sup.ambient, errc::internal,
          "index over mismatched ambients");
  require(sub.rank() == sup.rank(), errc::infinite_index,
          "index of lattices of different rank");
  auto x = lattice_solve_cols(sup, sub.basis);
  require(x.has_value(), errc::not_contained, "index of a non-contained lattice");
  Lattice h = hnf_expect_rank(RMatrix::make(sub.ring, *x), sub.rank());
  return h.pivot_val_sum();
}

Int lattice_index(const Lattice& sub, const Lattice& sup) {
  return checked_pow(sub.ring.p, lattice_index_exp(sub, sup));
}

Snf snf(const RMatrix& a) {
  const Zmod& ring = a.ring;
  Mat d = a.m;
  const Int nr = d.rows();
  const Int nc = d.cols();
  Mat u = Mat::Identity(nr, nr);
  Mat v = Mat::Identity(nc, nc);
  const Int r = std::min(nr, nc);
  Snf out;
  Int t = 0;
  for (; t < r; ++t) {
    Int bi = -1, bj = -1, bv = ring.K;
    for (Int i = t; i < nr; ++i)
      for (Int j = t; j < nc; ++j) {
        Valuation w = val(ring, d(i, j));
        if (w.resolved() && w.v < bv) {
          bv = w.v;
          bi = i;
          bj = j;
        }
      }
    if (bi < 0) break;
    d.row(t).swap(d.row(bi));
    u.row(t).swap(u.row(bi));
    d.col(t).swap(d.col(bj));
    v.col(t).swap(v.col(bj));
    const Int pw = checked_pow(ring.p, bv);
    const Int uinv = unit_inverse(ring, d(t, t) / pw);
    for (Int j = 0; j < nc; ++j) d(t, j) = ring.mul(d(t, j), uinv);
    for (Int j = 0; j < nr; ++j) u(t, j) = ring.mul(u(t, j), uinv);
    for (Int i = t + 1; i < nr; ++i) {
      const Int f = d(i, t) / pw;
      if (f == 0) continue;
      for (Int j = 0; j < nc; ++j) d(i, j) = ring.sub(d(i, j), ring.mul(f, d(t, j)));
      for (Int j = 0; j < nr; ++j) u(i, j) = ring.sub(u(i, j), ring.mul(f, u(t, j)));
    }
    for (Int j = t + 1; j < nc; ++j) {
      const Int f = d(t, j) / pw;
      if (f == 0) continue;
      for (Int i = 0; i < nr; ++i) d(i, j) = ring.sub(d(i, j), ring.mul(f, d(i, t)));
      for (Int i = 0; i < nc; ++i) v(i, j) = ring.sub(v(i, j), ring.mul(f, v(i, t)));
    }
    out.diag.push_back(Valuation::exact(bv));
  }
  for (Int k = t; k < r; ++k) out.diag.push_back(Valuation::at_least(ring.K));
  out.resolved = (t == r);
  out.u = std::move(u);
  out.v = std::move(v);
  return out;
}

Int matrix_order_exp(const RMatrix& t) {
  require(t.rows() == t.cols(), errc::not_invertible, "order of a non-square matrix");
  require(is_invertible(t), errc::not_invertible, "order of a singular matrix");
  Int bound = t.ring.K + 2;
  for (Int m = 1; m < t.rows(); m *= t.ring.p) ++bound;
  RMatrix s = t;
  for (Int j = 0; j <= bound; ++j) {
    if (is_identity(s)) return j;
    s = rpow(s, t.ring.p);
  }
  fail(errc::not_p_power_order,
       "matrix order mod p^K is not a power of p within the certified bound");
}

Int matrix_order_mod(const RMatrix& t) {
  return checked_pow(t.ring.p, matrix_order_exp(t));
}

namespace {

Int exact_val(Int p, Int x) {
  require(x != 0, errc::internal, "valuation of zero");
  if (x < 0) x = -x;
  Int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

}  // namespace

ScalarForm scalar_normal_form(const Residue& lambda) {
  const Zmod& ring = lambda.ring;
  const Int x = ring.reduce(lambda.value);
  require(x % ring.p != 0, errc::non_unit, "scalar action by a non-unit");
  if (x == 1) return {ScalarForm::Trivial, 0};
  if (ring.p != 2) {
    require(x % ring.p == 1, errc::discontinuous_action,
            "scalar with nontrivial Teichmuller part admits no continuous Z_p-action");
    return {ScalarForm::Plus, val(ring, x - 1).v};
  }
  if (x == ring.q - 1) return {ScalarForm::MinusOne, 0};
  const bool plus = (x % 4 == 1);
  const Int m = plus ? ring.sub(x, 1) : ring.sub(ring.neg(x), 1);
  return {plus ? ScalarForm::Plus : ScalarForm::Minus, val(ring, m).v};
}

ScalarForm scalar_normal_form_exact(Int p, Int lambda) {
  require(is_prime(p), errc::semantic_error, "scalar normal form needs a prime p");
  require(lambda % p != 0, errc::non_unit, "scalar action by a non-unit");
  if (lambda == 1) return {ScalarForm::Trivial, 0};
  if (p != 2) {
    Int r = lambda % p;
    if (r < 0) r += p;
    require(r == 1, errc::discontinuous_action,
            "scalar with nontrivial Teichmuller part admits no continuous Z_p-action");
    return {ScalarForm::Plus, exact_val(p, lambda - 1)};
  }
  if (lambda == -1) return {ScalarForm::MinusOne, 0};
  Int r4 = lambda % 4;
  if (r4 < 0) r4 += 4;
  const bool plus = (r4 == 1);
  const Int m = (plus ? lambda : -lambda) - 1;
  return {plus ? ScalarForm::Plus : ScalarForm::Minus, exact_val(2, m)};
}

Int scalar_of_form(Int p, const ScalarForm& f) {
  switch (f.kind) {
    case ScalarForm::Trivial: return 1;
    case ScalarForm::Plus: return 1 + checked_pow(p, f.s);
    case ScalarForm::MinusOne: return -1;
    case ScalarForm::Minus:
      require(p == 2, errc::constraint_violation, "negative scalar form needs p=2");
      return -(1 + checked_pow(2, f.s));
  }
  fail(errc::internal, "unreachable scalar form");
}

std::string to_string(const ScalarForm& f) {
  switch (f.kind) {
    case ScalarForm::Trivial: return "trivial";
    case ScalarForm::Plus: return "plus(" + std::to_string(f.s) + ")";
    case ScalarForm::MinusOne: return "minus_one";
    case ScalarForm::Minus: return "minus(" + std::to_string(f.s) + ")";
  }
  return "trivial";
}

}  // namespace gennum::padic
