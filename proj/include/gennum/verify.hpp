#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gennum/catalog.hpp"

namespace gennum::verify {

using catalog::BuildOptions;
using catalog::BuiltGroup;
using catalog::Certificate;
using catalog::GroupSpec;

struct WitnessInfo {
  Int index_exp = 0;
  Int d_found = 0;
  Int d_expected = 0;
  std::vector<std::pair<Mat, Vec>> gens;  // affine generators of the witness subgroup
};

struct Verdict {
  bool pass = true;
  Certificate cert;
  Int d_top = 0;           // d of the whole group
  Int subgroups = 0;       // census size
  std::optional<WitnessInfo> witness;
};

// does every open subgroup of index <= p^m satisfy d(H) = d(G)?
Verdict star_check(const BuiltGroup& g, Int m);

// does every open subgroup satisfy d(H) - n = |G:H| (d(G) - n)?
Verdict en_check(const BuiltGroup& g, Int m, Int n);

struct DefectRow {
  Int index_exp = 0;
  Int count = 0;        // subgroups at this index
  Int min_d = 0, max_d = 0;
  Int schreier_rhs = 0;  // 1 + p^i (d(G) - 1)
  bool free_like = false;  // max_d - 1 == p^i (d(G) - 1)
};

struct DefectReport {
  Certificate cert;
  Int d_top = 0;
  std::vector<DefectRow> rows;
};

// d(H) - 1 against the Nielsen-Schreier value p^i (d(G) - 1), per index
DefectReport schreier_defect_report(const BuiltGroup& g, Int m);

struct ProfileRow {
  Int index_exp = 0;
  std::vector<std::pair<Int, Int>> d_counts;  // (d value, multiplicity), d ascending
};

struct DProfile {
  Certificate cert;
  Int d_top = 0;
  std::vector<ProfileRow> rows;
};

DProfile d_profile(const BuiltGroup& g, Int m);

struct OracleVerdict {
  enum Kind { Listed, NotListed, Unknown } kind = Unknown;
  Int item = 0;  // catalog item when Listed
  std::string reason;
};

// classify the spec by shape alone, without any census
OracleVerdict theorem_oracle(const GroupSpec& spec);

}  // namespace gennum::verify
