#pragma once

#include <optional>
#include <vector>

#include "gennum/padic.hpp"

namespace gennum::lielattice {

using padic::Lattice;
using padic::RMatrix;
using padic::Zmod;

// Z_p-lattice with a bracket given by a structure tensor c[i](j,k) on a basis
struct LieLattice {
  Int p = 2;
  Int dim = 0;
  std::vector<Mat> c;  // c[i] is dim x dim; [e_j, e_k] = sum_i c[i](j,k) e_i
};

// validates antisymmetry and the Jacobi identity over the integers
LieLattice make_lie_lattice(Int p, Int dim, const std::vector<Mat>& c);

LieLattice abelian_lattice(Int p, Int dim);

// dim = r+1 with basis x, a_1..a_r and [x, a_i] = p^s a_i, [a_i, a_j] = 0
LieLattice x_scalar_lattice(Int p, Int r, Int s);

// minimal generator number of the whole lattice: dim of L / ([L,L] + pL)
Int lattice_dmin(const LieLattice& l, Int precision_exp);

// same for the sublattice spanned by the columns of b (integer basis)
Int sublattice_dmin(const LieLattice& l, const Mat& b, Int precision_exp);

bool bracket_closed(const LieLattice& l, const Mat& b, Int precision_exp);

struct SublatticeRecord {
  Mat basis;        // dim x dim, column basis, canonical triangular form
  Int index_exp = 0;
  Int d = 0;
};

// all bracket-closed full-rank sublattices of index <= p^max_exp
std::vector<SublatticeRecord> lie_sublattices_up_to_index(const LieLattice& l,
                                                          Int max_exp);

struct LatticeWitness {
  Mat basis;
  Int index_exp = 0;
  Int d_found = 0;
  Int d_expected = 0;
};

struct LatticeVerdict {
  bool pass = true;
  Int d_top = 0;
  Int sublattices = 0;
  std::optional<LatticeWitness> witness;
};

// does every open subalgebra of index <= p^max_exp have minimal generator
// number d_expected?  d_expected < 0 means use the whole lattice's value
LatticeVerdict star_check_lattice(const LieLattice& l, Int max_exp,
                                  Int d_expected = -1);

}  // namespace gennum::lielattice
