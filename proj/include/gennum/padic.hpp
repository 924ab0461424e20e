#pragma once

#include "gennum/common.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gennum::padic {

/// Residue ring Z/p^K, p prime, K >= 1. All arithmetic stays in [0, q).
struct Zmod {
  Int p = 2;
  Int K = 1;
  Int q = 2;  // p^K

  static Zmod make(Int p, Int K);

  Int reduce(Int x) const {
    Int r = x % q;
    return r < 0 ? r + q : r;
  }
  Int add(Int a, Int b) const { return reduce(a + b); }
  Int sub(Int a, Int b) const { return reduce(a - b); }
  Int neg(Int a) const { return reduce(-a); }
  Int mul(Int a, Int b) const {
    return static_cast<Int>((static_cast<__int128>(a) * b) % q);
  }
  Int pow(Int a, Int e) const;

  friend bool operator==(const Zmod&, const Zmod&) = default;
};

struct Residue {
  Zmod ring;
  Int value = 0;

  static Residue make(const Zmod& ring, Int x) { return {ring, ring.reduce(x)}; }
};

/// Saturated p-adic valuation: exact values lie in {0, ..., K-1};
/// AtLeastK marks residues that vanish mod p^K.
struct Valuation {
  Int v = 0;
  bool at_least_k = false;

  static Valuation exact(Int v) { return {v, false}; }
  static Valuation at_least(Int K) { return {K, true}; }
  bool resolved() const { return !at_least_k; }

  friend bool operator==(const Valuation&, const Valuation&) = default;
};

Valuation val(const Zmod& ring, Int x);
inline Valuation val(const Residue& x) { return val(x.ring, x.value); }

/// Multiplicative inverse of a unit; NonUnit otherwise.
Int unit_inverse(const Zmod& ring, Int x);
inline Residue unit_inverse(const Residue& x) {
  return {x.ring, unit_inverse(x.ring, x.value)};
}

struct RMatrix {
  Zmod ring;
  Mat m;

  Int rows() const { return m.rows(); }
  Int cols() const { return m.cols(); }
  static RMatrix make(const Zmod& ring, const Mat& a);
};

RMatrix ridentity(const Zmod& ring, Int n);
RMatrix rmul(const RMatrix& a, const RMatrix& b);
RMatrix radd(const RMatrix& a, const RMatrix& b);
RMatrix rsub(const RMatrix& a, const RMatrix& b);
RMatrix rpow(const RMatrix& a, Int e);
Vec rapply(const RMatrix& a, const Vec& v);
bool is_identity(const RMatrix& a);
bool is_invertible(const RMatrix& a);
RMatrix rinverse(const RMatrix& a);

/// Sublattice of Z_p^n at precision K in canonical column echelon form:
/// pivot rows strictly increase, pivots are exact powers of p, entries in a
/// pivot row of the other columns are reduced below the pivot, and columns
/// vanishing mod p^K are dropped (they lower the rank).
struct Lattice {
  Zmod ring;
  Int ambient = 0;
  Mat basis;                    // ambient x rank
  std::vector<Int> pivot_rows;
  std::vector<Int> pivot_vals;  // each < K

  Int rank() const { return basis.cols(); }
  Int pivot_val_sum() const;
};

Lattice hnf(const RMatrix& gens);
/// hnf that treats a rank below `rank` as a precision failure.
Lattice hnf_expect_rank(const RMatrix& gens, Int rank);
Lattice full_lattice(const Zmod& ring, Int n);
Lattice lattice_sum(const Lattice& a, const Lattice& b);
Lattice lattice_scale(const Lattice& a, Int j);  // p^j * a
Lattice lattice_apply(const RMatrix& t, const Lattice& a);

/// Coefficients c with basis * c = x mod p^K, if x lies in the lattice.
std::optional<Vec> lattice_solve(const Lattice& lat, const Vec& x);
std::optional<Mat> lattice_solve_cols(const Lattice& lat, const Mat& cols);
bool lattice_contains(const Lattice& sup, const Vec& x);
bool lattice_contains(const Lattice& sup, const Lattice& sub);
bool lattice_equal(const Lattice& a, const Lattice& b);

/// |sup : sub| as a power of p; NotContained / InfiniteIndex on bad input.
Int lattice_index(const Lattice& sub, const Lattice& sup);
Int lattice_index_exp(const Lattice& sub, const Lattice& sup);

/// U * M * V = diag of p-powers with nondecreasing valuations. resolved is
/// false when trailing diagonal entries vanish mod p^K.
struct Snf {
  Mat u;
  Mat v;
  std::vector<Valuation> diag;
  bool resolved = true;
};

Snf snf(const RMatrix& a);

/// Least p-power q with T^q = I mod p^K; NotPPowerOrder when the order of T
/// has a prime factor other than p.
Int matrix_order_mod(const RMatrix& t);
Int matrix_order_exp(const RMatrix& t);

/// Normal form of a scalar action of a Z_p (or torsion) top on a lattice:
/// Trivial (1), Plus(s) (1+p^s), and for p=2 also MinusOne (-1) and
/// Minus(s) (-(1+2^s), s >= 2). Invariant under replacing the acting
/// generator by a power coprime to p.
struct ScalarForm {
  enum Kind { Trivial, Plus, MinusOne, Minus };
  Kind kind = Trivial;
  Int s = 0;

  friend bool operator==(const ScalarForm&, const ScalarForm&) = default;
};

ScalarForm scalar_normal_form(const Residue& lambda);
ScalarForm scalar_normal_form_exact(Int p, Int lambda);
Int scalar_of_form(Int p, const ScalarForm& f);
std::string to_string(const ScalarForm& f);

}  // namespace gennum::padic
