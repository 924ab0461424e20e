#pragma once

#include <string>
#include <vector>

#include "gennum/padic.hpp"

namespace gennum::repdecomp {

using padic::RMatrix;
using padic::Zmod;

// check T^p = 1 exactly over the integers
bool check_order_p(Int p, const Mat& t);
void require_order_p(Int p, const Mat& t);

// multiplicities of the indecomposable Z_p<z>-lattices for z of order p:
// n1 trivial lines, n2 cyclotomic summands, n3 regular summands
struct DecompositionCounts {
  Int p = 2;
  Int n = 0;  // ambient dimension: n1 + (p-1) n2 + p n3
  Int n1 = 0;
  Int n2 = 0;
  Int n3 = 0;
};

DecompositionCounts decompose(Int p, const Mat& t);

// minimal generator number of the lattice as a module: max(n1, n2) + n3
Int rational_d(const DecompositionCounts& c);

// 1 + max(0, n2 - n1) >= (p-1)(n2 + n3), the feasibility constraint for
// one-step extensions with constant generating number
bool inequality_check(const DecompositionCounts& c);

struct TableRow {
  Int p = 2;
  Int n1 = 0, n2 = 0, n3 = 0;
  Int n = 0;                       // n1 + (p-1) n2 + p n3
  std::string conditions;          // n1 vs n2 side condition
  std::string label;               // case tag, "--" for p >= 5
};

// all multiplicity triples with 2 <= n <= n_max passing inequality_check,
// each labelled; sorted by (n, n1, n2, n3)
std::vector<TableRow> table1(Int p, Int n_max);

// case tag for feasible counts with n >= 2; throws ConstraintViolation
// on an infeasible triple
std::string case_label(const DecompositionCounts& c);

// a pseudo-random integer matrix of order p realizing the multiplicities
Mat synth_instance(Int p, Int n1, Int n2, Int n3, std::uint64_t seed);

}  // namespace gennum::repdecomp
