#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gennum/pgroup.hpp"

namespace gennum::catalog {

using padic::Lattice;
using padic::RMatrix;
using padic::ScalarForm;
using padic::Zmod;
using pgroup::AffineElement;
using pgroup::GroupPtr;

// Z_p^d
struct AbelianSpec {
  Int p = 2;
  Int d = 1;
};

// <y> |x Z_p^(d-1), y acting by the scalar lambda
struct ScalarSplitSpec {
  Int p = 2;
  Int d = 2;
  ScalarForm form;
};

// <y> |x Z_p^r, y acting by an invertible matrix congruent to 1 mod p
struct MatrixSplitSpec {
  Int p = 2;
  Mat t;  // r x r integer matrix
};

// p = 3 maximal class: <w> |x Z_3[omega], w of order 3 acting by omega
struct MaxClass3Spec {};

// <w> |x Z_p^r with w of finite p-power order acting by an integer matrix
struct TorsionScalarSpec {
  Int p = 2;
  Mat t;  // r x r, exact p-power order
};

// explicit affine generators over Z/p^K, completed at each precision
struct CustomAffineSpec {
  Int p = 2;
  Int dim = 1;         // ambient dimension of the affine action
  Int counter = -1;    // coordinate tracking the Z_p top, -1 if none
  std::vector<std::pair<Mat, Vec>> gens;  // integer matrices, reduced per level
  std::string name;
};

using GroupSpec = std::variant<AbelianSpec, ScalarSplitSpec, MatrixSplitSpec,
                               MaxClass3Spec, TorsionScalarSpec, CustomAffineSpec>;

Int spec_prime(const GroupSpec& spec);
Int spec_dim(const GroupSpec& spec);  // ambient dimension of the affine model
std::string spec_kind(const GroupSpec& spec);
std::string describe(const GroupSpec& spec);

// shape and constraint checks for a spec, throwing on violation
void validate(const GroupSpec& spec);

// catalog families, numbered as in the classification
GroupSpec family(Int item, Int p, Int d, std::optional<Int> s = std::nullopt,
                 Int sign = +1);

// companion matrix of x^2 + x + 1, the action of omega on Z_3[omega]
Mat omega_companion();

// exact p-power order exponent of an integer matrix, or NotPPowerOrder
Int torsion_order_exp(Int p, const Mat& t);

struct PhiSeriesEntry {
  Int level = 0;        // j for Phi^j
  Int top_exp = 0;      // top generator enters as y^(p^top_exp)
  bool top_trivial = false;
  Mat lattice;          // integer basis of the translation part, dim x dim
};

// closed form Frattini series of a split single-top model, exact over Z_p
std::vector<PhiSeriesEntry> symbolic_phi_series(const GroupSpec& spec, Int length);

enum class CertMode { Exact, Heuristic };

struct Certificate {
  CertMode mode = CertMode::Exact;
  Int m = 0;  // subgroup census is faithful up to index p^m
  Int K = 0;  // precision of the finite quotient
};

struct BuildOptions {
  Int budget = Int{1} << 21;
  std::optional<Int> forced_K;  // pin the precision instead of escalating
};

struct BuiltGroup {
  GroupSpec spec;
  Certificate cert;
  GroupPtr quotient;
  std::vector<AffineElement> gens;
};

// certify that the finite quotient at precision K sees all subgroups of
// index <= p^m with correct minimal generator numbers, or raise
// CertificateUnavailable
Certificate certify(const GroupSpec& spec, Int m, Int K, const BuildOptions& opts);

// build the smallest certified quotient for censuses up to index p^m
BuiltGroup build(const GroupSpec& spec, Int m, const BuildOptions& opts = {});

// the affine generators of the finite quotient at precision K
std::vector<AffineElement> quotient_generators(const GroupSpec& spec, Int K);

}  // namespace gennum::catalog
