#include "gennum/lielattice.hpp"

#include <algorithm>
#include <functional>

namespace gennum::lielattice {

namespace {

Int structure_val_bound(const LieLattice& l) {
  Int bound = 0;
  for (const Mat& ci : l.c)
    for (Int j = 0; j < ci.rows(); ++j)
      for (Int k = 0; k < ci.cols(); ++k) {
        Int x = ci(j, k);
        if (x == 0) continue;
        if (x < 0) x = -x;
        Int v = 0;
        while (x % l.p == 0) {
          x /= l.p;
          ++v;
        }
        bound = std::max(bound, v);
      }
  return bound;
}

Int working_precision(const LieLattice& l, Int max_exp) {
  return 2 * max_exp + structure_val_bound(l) + 4;
}

Vec bracket(const LieLattice& l, const padic::Zmod& ring, const Vec& u, const Vec& v) {
  Vec r = Vec::Zero(l.dim);
  for (Int m = 0; m < l.dim; ++m) {
    __int128 acc = 0;
    for (Int j = 0; j < l.dim; ++j) {
      if (u(j) == 0) continue;
      for (Int k = 0; k < l.dim; ++k) {
        if (v(k) == 0 || l.c[static_cast<std::size_t>(m)](j, k) == 0) continue;
        acc += static_cast<__int128>(ring.mul(ring.reduce(u(j)), ring.reduce(v(k)))) *
               ring.reduce(l.c[static_cast<std::size_t>(m)](j, k));
      }
    }
    r(m) = static_cast<Int>(((acc % ring.q) + ring.q) % ring.q);
  }
  return r;
}

}  // namespace

LieLattice make_lie_lattice(Int p, Int dim, const std::vector<Mat>& c) {
  require(is_prime(p), errc::semantic_error, "p must be prime");
  require(dim >= 1, errc::semantic_error, "lattice dimension must be >= 1");
  require(static_cast<Int>(c.size()) == dim, errc::semantic_error,
          "structure tensor needs one matrix per basis vector");
  for (const Mat& ci : c)
    require(ci.rows() == dim && ci.cols() == dim, errc::semantic_error,
            "structure matrix shape mismatch");
  for (Int i = 0; i < dim; ++i)
    for (Int j = 0; j < dim; ++j)
      for (Int k = 0; k < dim; ++k)
        require(c[static_cast<std::size_t>(i)](j, k) ==
                    -c[static_cast<std::size_t>(i)](k, j),
                errc::not_antisymmetric, "bracket must be antisymmetric");
  for (Int j = 0; j < dim; ++j)
    for (Int k = 0; k < dim; ++k)
      for (Int el = 0; el < dim; ++el)
        for (Int m = 0; m < dim; ++m) {
          __int128 acc = 0;
          for (Int i = 0; i < dim; ++i) {
            const auto& ci = c[static_cast<std::size_t>(i)];
            const auto& cm = c[static_cast<std::size_t>(m)];
            acc += static_cast<__int128>(ci(j, k)) * cm(i, el);
            acc += static_cast<__int128>(ci(k, el)) * cm(i, j);
            acc += static_cast<__int128>(ci(el, j)) * cm(i, k);
          }
          require(acc == 0, errc::jacobi_fails, "bracket violates the Jacobi identity");
        }
  LieLattice l;
  l.p = p;
  l.dim = dim;
  l.c = c;
  return l;
}

LieLattice abelian_lattice(Int p, Int dim) {
  std::vector<Mat> c(static_cast<std::size_t>(dim), Mat::Zero(dim, dim));
  return make_lie_lattice(p, dim, c);
}

LieLattice x_scalar_lattice(Int p, Int r, Int s) {
  require(r >= 1 && s >= 0, errc::semantic_error, "need rank >= 1 and exponent >= 0");
  const Int dim = r + 1;
  const Int w = checked_pow(p, s);
  std::vector<Mat> c(static_cast<std::size_t>(dim), Mat::Zero(dim, dim));
  for (Int i = 1; i < dim; ++i) {
    c[static_cast<std::size_t>(i)](0, i) = w;
    c[static_cast<std::size_t>(i)](i, 0) = -w;
  }
  return make_lie_lattice(p, dim, c);
}

Int lattice_dmin(const LieLattice& l, Int precision_exp) {
  const padic::Zmod ring = padic::Zmod::make(l.p, precision_exp);
  const Int pairs = l.dim * (l.dim - 1) / 2;
  Mat cols(l.dim, pairs + l.dim);
  Int at = 0;
  for (Int j = 0; j < l.dim; ++j)
    for (Int k = j + 1; k < l.dim; ++k) {
      Vec ej = Vec::Zero(l.dim);
      Vec ek = Vec::Zero(l.dim);
      ej(j) = 1;
      ek(k) = 1;
      cols.col(at++) = bracket(l, ring, ej, ek);
    }
  cols.rightCols(l.dim) = l.p * Mat::Identity(l.dim, l.dim);
  const padic::Lattice h =
      padic::hnf_expect_rank(padic::RMatrix::make(ring, cols), l.dim);
  return h.pivot_val_sum();
}

Int sublattice_dmin(const LieLattice& l, const Mat& b, Int precision_exp) {
  const padic::Zmod ring = padic::Zmod::make(l.p, precision_exp);
  require(b.rows() == l.dim && b.cols() == l.dim, errc::semantic_error,
          "sublattice basis must be square of full dimension");
  const padic::Lattice blat =
      padic::hnf_expect_rank(padic::RMatrix::make(ring, b), l.dim);
  const Int pairs = l.dim * (l.dim - 1) / 2;
  Mat cols(l.dim, pairs + l.dim);
  Int at = 0;
  for (Int j = 0; j < l.dim; ++j)
    for (Int k = j + 1; k < l.dim; ++k)
      cols.col(at++) = bracket(l, ring, b.col(j), b.col(k));
  for (Int j = 0; j < l.dim; ++j) {
    Vec pc = b.col(j);
    for (Int i = 0; i < l.dim; ++i) pc(i) = ring.mul(ring.reduce(pc(i)), l.p);
    cols.col(at++) = pc;
  }
  auto coords = padic::lattice_solve_cols(blat, cols);
  require(coords.has_value(), errc::not_contained,
          "sublattice is not closed under the bracket");
  const padic::Lattice h =
      padic::hnf_expect_rank(padic::RMatrix::make(ring, *coords), l.dim);
  return h.pivot_val_sum();
}

bool bracket_closed(const LieLattice& l, const Mat& b, Int precision_exp) {
  const padic::Zmod ring = padic::Zmod::make(l.p, precision_exp);
  const padic::Lattice blat =
      padic::hnf_expect_rank(padic::RMatrix::make(ring, b), l.dim);
  for (Int j = 0; j < l.dim; ++j)
    for (Int k = j + 1; k < l.dim; ++k)
      if (!padic::lattice_contains(blat, bracket(l, ring, b.col(j), b.col(k))))
        return false;
  return true;
}

std::vector<SublatticeRecord> lie_sublattices_up_to_index(const LieLattice& l,
                                                          Int max_exp) {
  require(max_exp >= 0, errc::semantic_error, "index bound must be >= 0");
  const Int w = working_precision(l, max_exp);
  std::vector<SublatticeRecord> out;
  std::vector<Int> comp(static_cast<std::size_t>(l.dim), 0);
  // below-diagonal slots in column-major order
  std::vector<std::pair<Int, Int>> slots;
  for (Int j = 0; j < l.dim; ++j)
    for (Int i = j + 1; i < l.dim; ++i) slots.emplace_back(i, j);

  auto emit_matrices = [&]() {
    std::vector<Int> radii(slots.size());
    for (std::size_t s = 0; s < slots.size(); ++s)
      radii[s] = checked_pow(l.p, comp[static_cast<std::size_t>(slots[s].first)]);
    std::vector<Int> digit(slots.size(), 0);
    while (true) {
      Mat b = Mat::Zero(l.dim, l.dim);
      for (Int j = 0; j < l.dim; ++j)
        b(j, j) = checked_pow(l.p, comp[static_cast<std::size_t>(j)]);
      for (std::size_t s = 0; s < slots.size(); ++s)
        b(slots[s].first, slots[s].second) = digit[s];
      if (bracket_closed(l, b, w)) {
        SublatticeRecord rec;
        rec.basis = b;
        rec.index_exp = 0;
        for (Int a : comp) rec.index_exp += a;
        rec.d = sublattice_dmin(l, b, w);
        out.push_back(std::move(rec));
      }
      std::size_t s = 0;
      while (s < slots.size()) {
        if (++digit[s] < radii[s]) break;
        digit[s] = 0;
        ++s;
      }
      if (s == slots.size()) break;
    }
  };

  for (Int total = 0; total <= max_exp; ++total) {
    // compositions of total into dim parts, first coordinate descending
    std::function<void(Int, Int)> rec = [&](Int pos, Int left) {
      if (pos == l.dim - 1) {
        comp[static_cast<std::size_t>(pos)] = left;
        emit_matrices();
        return;
      }
      for (Int a = left; a >= 0; --a) {
        comp[static_cast<std::size_t>(pos)] = a;
        rec(pos + 1, left - a);
      }
    };
    rec(0, total);
  }
  return out;
}

LatticeVerdict star_check_lattice(const LieLattice& l, Int max_exp,
                                  Int d_expected) {
  const Int w = working_precision(l, max_exp);
  LatticeVerdict v;
  v.d_top = lattice_dmin(l, w);
  const Int want = d_expected < 0 ? v.d_top : d_expected;
  auto recs = lie_sublattices_up_to_index(l, max_exp);
  v.sublattices = static_cast<Int>(recs.size());
  for (const auto& rec : recs) {
    if (rec.d != want) {
      v.pass = false;
      v.witness = LatticeWitness{rec.basis, rec.index_exp, rec.d, want};
      break;
    }
  }
  return v;
}

}  // namespace gennum::lielattice
