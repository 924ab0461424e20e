#include "gennum/verify.hpp"

#include <algorithm>
#include <map>

#include "gennum/repdecomp.hpp"

namespace gennum::verify {

using catalog::AbelianSpec;
using catalog::CustomAffineSpec;
using catalog::MatrixSplitSpec;
using catalog::MaxClass3Spec;
using catalog::ScalarSplitSpec;
using catalog::TorsionScalarSpec;
using padic::ScalarForm;

namespace {

WitnessInfo make_witness(const catalog::BuiltGroup& g, const pgroup::SubgroupRecord& rec,
                         Int d_expected) {
  WitnessInfo w;
  w.index_exp = rec.index_exp;
  w.d_found = rec.d;
  w.d_expected = d_expected;
  for (std::int32_t id : pgroup::witness_generators(rec.sub, rec.phi)) {
    const pgroup::AffineElement e = g.quotient->element(id);
    w.gens.emplace_back(e.m, e.v);
  }
  return w;
}

}  // namespace

Verdict star_check(const catalog::BuiltGroup& g, Int m) {
  auto recs = pgroup::all_subgroups_up_to_index(g.quotient, m);
  Verdict v;
  v.cert = g.cert;
  v.d_top = recs.front().d;
  v.subgroups = static_cast<Int>(recs.size());
  for (const auto& rec : recs) {
    if (rec.d != v.d_top) {
      v.pass = false;
      v.witness = make_witness(g, rec, v.d_top);
      break;
    }
  }
  return v;
}

Verdict en_check(const catalog::BuiltGroup& g, Int m, Int n) {
  const Int p = g.quotient->prime();
  auto recs = pgroup::all_subgroups_up_to_index(g.quotient, m);
  Verdict v;
  v.cert = g.cert;
  v.d_top = recs.front().d;
  v.subgroups = static_cast<Int>(recs.size());
  for (const auto& rec : recs) {
    const Int want = n + checked_pow(p, rec.index_exp) * (v.d_top - n);
    if (rec.d != want) {
      v.pass = false;
      v.witness = make_witness(g, rec, want);
      break;
    }
  }
  return v;
}

DefectReport schreier_defect_report(const catalog::BuiltGroup& g, Int m) {
  const Int p = g.quotient->prime();
  auto recs = pgroup::all_subgroups_up_to_index(g.quotient, m);
  DefectReport rep;
  rep.cert = g.cert;
  rep.d_top = recs.front().d;
  std::map<Int, DefectRow> rows;
  for (const auto& rec : recs) {
    auto [it, fresh] = rows.try_emplace(rec.index_exp);
    DefectRow& row = it->second;
    if (fresh) {
      row.index_exp = rec.index_exp;
      row.min_d = rec.d;
      row.max_d = rec.d;
    }
    row.count += 1;
    row.min_d = std::min(row.min_d, rec.d);
    row.max_d = std::max(row.max_d, rec.d);
  }
  for (auto& [idx, row] : rows) {
    const Int rhs = checked_pow(p, idx) * (rep.d_top - 1);
    row.schreier_rhs = 1 + rhs;
    row.free_like = (row.max_d - 1 == rhs);
    rep.rows.push_back(row);
  }
  return rep;
}

DProfile d_profile(const catalog::BuiltGroup& g, Int m) {
  auto recs = pgroup::all_subgroups_up_to_index(g.quotient, m);
  DProfile rep;
  rep.cert = g.cert;
  rep.d_top = recs.front().d;
  std::map<Int, std::map<Int, Int>> counts;
  for (const auto& rec : recs) counts[rec.index_exp][rec.d] += 1;
  for (const auto& [idx, by_d] : counts) {
    ProfileRow row;
    row.index_exp = idx;
    for (const auto& [d, c] : by_d) row.d_counts.emplace_back(d, c);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

namespace {

OracleVerdict oracle_for_scalar(Int p, const ScalarForm& form) {
  switch (form.kind) {
    case ScalarForm::Trivial:
      return {OracleVerdict::Listed, 1, "trivial action gives a free abelian group"};
    case ScalarForm::Plus:
      return {OracleVerdict::Listed, 2,
              "scalar 1+p^" + std::to_string(form.s) + " action"};
    case ScalarForm::Minus:
      return {OracleVerdict::Listed, 2,
              "scalar -(1+2^" + std::to_string(form.s) + ") action"};
    case ScalarForm::MinusOne:
      return {OracleVerdict::Listed, p == 2 ? 4 : 0, "scalar -1 action"};
  }
  return {OracleVerdict::Unknown, 0, "unrecognized scalar form"};
}

bool is_scalar_matrix(const Mat& t) {
  for (Int i = 0; i < t.rows(); ++i)
    for (Int j = 0; j < t.cols(); ++j) {
      if (i != j && t(i, j) != 0) return false;
      if (i == j && t(i, j) != t(0, 0)) return false;
    }
  return true;
}

}  // namespace

OracleVerdict theorem_oracle(const catalog::GroupSpec& spec) {
  return std::visit(
      [](const auto& s) -> OracleVerdict {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, AbelianSpec>) {
          return {OracleVerdict::Listed, 1, "free abelian pro-p group"};
        } else if constexpr (std::is_same_v<T, ScalarSplitSpec>) {
          return oracle_for_scalar(s.p, s.form);
        } else if constexpr (std::is_same_v<T, MatrixSplitSpec>) {
          if (is_scalar_matrix(s.t))
            return oracle_for_scalar(
                s.p, padic::scalar_normal_form_exact(s.p, s.t(0, 0)));
          return {OracleVerdict::NotListed, 0, "split action is not by a scalar"};
        } else if constexpr (std::is_same_v<T, MaxClass3Spec>) {
          return {OracleVerdict::Listed, 3, "maximal class pro-3 group"};
        } else if constexpr (std::is_same_v<T, TorsionScalarSpec>) {
          const Int t_exp = catalog::torsion_order_exp(s.p, s.t);
          if (t_exp == 0) return {OracleVerdict::Listed, 1, "trivial torsion top"};
          if (t_exp == 1 && s.p == 3 && s.t.rows() == 2) {
            const auto c = repdecomp::decompose(3, s.t);
            if (c.n1 == 0 && c.n2 == 1 && c.n3 == 0)
              return {OracleVerdict::Listed, 3,
                      "order-3 top acting by a primitive cube root of unity"};
          }
          return {OracleVerdict::NotListed, 0, "torsion top outside the catalog"};
        } else {
          static_assert(std::is_same_v<T, CustomAffineSpec>);
          return {OracleVerdict::Unknown, 0, "no structural form to classify"};
        }
      },
      spec);
}

}  // namespace gennum::verify
