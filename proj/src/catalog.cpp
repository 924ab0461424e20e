#include "gennum/catalog.hpp"

#include <algorithm>

namespace gennum::catalog {

namespace {

// exact order exponent over the integers, or NotPPowerOrder
Int exact_p_power_order_exp(Int p, const Mat& t, Int max_e = 6) {
  try {
    Mat s = t;
    for (Int j = 0; j <= max_e; ++j) {
      if (int_mat_is_identity(s)) return j;
      s = int_mat_pow(s, p);
    }
  } catch (const error& e) {
    if (e.code() != errc::overflow) throw;
  }
  fail(errc::not_p_power_order,
       "matrix has no exact p-power order over the integers");
}

void validate_one(const AbelianSpec& s) {
  require(is_prime(s.p), errc::semantic_error, "p must be prime");
  require(s.d >= 1, errc::constraint_violation, "abelian rank must be >= 1");
}

void validate_one(const ScalarSplitSpec& s) {
  require(is_prime(s.p), errc::semantic_error, "p must be prime");
  require(s.d >= 2, errc::constraint_violation, "split scalar groups need rank >= 2");
  using padic::ScalarForm;
  switch (s.form.kind) {
    case ScalarForm::Trivial:
      require(s.form.s == 0, errc::constraint_violation, "trivial form has no exponent");
      break;
    case ScalarForm::Plus:
      if (s.p == 2)
        require(s.form.s >= 2, errc::constraint_violation,
                "2-adic scalar exponents start at 2");
      else
        require(s.form.s >= 1, errc::constraint_violation,
                "scalar exponent must be >= 1");
      break;
    case ScalarForm::MinusOne:
      require(s.p == 2, errc::constraint_violation, "scalar -1 needs p=2");
      break;
    case ScalarForm::Minus:
      require(s.p == 2, errc::constraint_violation, "negative scalar forms need p=2");
      require(s.form.s >= 2, errc::constraint_violation,
              "2-adic scalar exponents start at 2");
      break;
  }
}

void validate_one(const MatrixSplitSpec& s) {
  require(is_prime(s.p), errc::semantic_error, "p must be prime");
  require(s.t.rows() == s.t.cols() && s.t.rows() >= 1, errc::semantic_error,
          "matrix action must be square");
  for (Int i = 0; i < s.t.rows(); ++i)
    for (Int j = 0; j < s.t.cols(); ++j) {
      const Int e = s.t(i, j) - (i == j ? 1 : 0);
      require(((e % s.p) + s.p) % s.p == 0, errc::discontinuous_action,
              "matrix action must be trivial mod p to act on a pro-p lattice");
    }
}

void validate_one(const MaxClass3Spec&) {}

void validate_one(const TorsionScalarSpec& s) {
  require(is_prime(s.p), errc::semantic_error, "p must be prime");
  require(s.t.rows() == s.t.cols() && s.t.rows() >= 1, errc::semantic_error,
          "torsion action must be square");
  exact_p_power_order_exp(s.p, s.t);
}

void validate_one(const CustomAffineSpec& s) {
  require(is_prime(s.p), errc::semantic_error, "p must be prime");
  require(s.dim >= 1, errc::semantic_error, "affine dimension must be >= 1");
  require(!s.gens.empty(), errc::semantic_error, "affine spec needs generators");
  require(s.counter >= -1 && s.counter < s.dim, errc::semantic_error,
          "counter coordinate out of range");
  for (const auto& [m, v] : s.gens)
    require(m.rows() == s.dim && m.cols() == s.dim && v.size() == s.dim,
            errc::semantic_error, "generator shape mismatch");
}

void validate_spec(const GroupSpec& spec) {
  std::visit([](const auto& s) { validate_one(s); }, spec);
}

bool has_free_top(const GroupSpec& spec) {
  return std::holds_alternative<ScalarSplitSpec>(spec) ||
         std::holds_alternative<MatrixSplitSpec>(spec);
}

// action on the translation lattice, as an integer matrix
Mat lattice_action(const GroupSpec& spec) {
  return std::visit(
      overloaded{[](const AbelianSpec& s) -> Mat { return Mat::Identity(s.d, s.d); },
                 [](const ScalarSplitSpec& s) -> Mat {
                   return padic::scalar_of_form(s.p, s.form) *
                          Mat::Identity(s.d - 1, s.d - 1);
                 },
                 [](const MatrixSplitSpec& s) -> Mat { return s.t; },
                 [](const MaxClass3Spec&) -> Mat { return omega_companion(); },
                 [](const TorsionScalarSpec& s) -> Mat { return s.t; },
                 [](const CustomAffineSpec&) -> Mat {
                   fail(errc::certificate_unavailable,
                        "custom generators have no single lattice action");
                 }},
      spec);
}

Int lattice_rank(const GroupSpec& spec) {
  return std::visit(overloaded{[](const AbelianSpec& s) { return s.d; },
                               [](const ScalarSplitSpec& s) { return s.d - 1; },
                               [](const MatrixSplitSpec& s) { return s.t.rows(); },
                               [](const MaxClass3Spec&) { return Int{2}; },
                               [](const TorsionScalarSpec& s) { return s.t.rows(); },
                               [](const CustomAffineSpec& s) { return s.dim; }},
                    spec);
}

// order exponent of the torsion top, 0 for abelian, -1 for a free top
Int torsion_top_exp(const GroupSpec& spec) {
  return std::visit(
      overloaded{[](const AbelianSpec&) { return Int{0}; },
                 [](const ScalarSplitSpec&) { return Int{-1}; },
                 [](const MatrixSplitSpec&) { return Int{-1}; },
                 [](const MaxClass3Spec&) { return Int{1}; },
                 [](const TorsionScalarSpec& s) {
                   return exact_p_power_order_exp(s.p, s.t);
                 },
                 [](const CustomAffineSpec&) { return Int{-1}; }},
      spec);
}

}  // namespace

Int spec_prime(const GroupSpec& spec) {
  return std::visit(overloaded{[](const MaxClass3Spec&) { return Int{3}; },
                               [](const auto& s) { return s.p; }},
                    spec);
}

Int spec_dim(const GroupSpec& spec) {
  return std::visit(overloaded{[](const AbelianSpec& s) { return s.d; },
                               [](const ScalarSplitSpec& s) { return s.d; },
                               [](const MatrixSplitSpec& s) { return s.t.rows() + 1; },
                               [](const MaxClass3Spec&) { return Int{2}; },
                               [](const TorsionScalarSpec& s) { return s.t.rows(); },
                               [](const CustomAffineSpec& s) { return s.dim; }},
                    spec);
}

std::string spec_kind(const GroupSpec& spec) {
  return std::visit(
      overloaded{[](const AbelianSpec&) { return std::string("abelian"); },
                 [](const ScalarSplitSpec&) { return std::string("scalar"); },
                 [](const MatrixSplitSpec&) { return std::string("matrix"); },
                 [](const MaxClass3Spec&) { return std::string("maxclass3"); },
                 [](const TorsionScalarSpec&) { return std::string("torsion"); },
                 [](const CustomAffineSpec&) { return std::string("affine"); }},
      spec);
}

std::string describe(const GroupSpec& spec) {
  return std::visit(
      overloaded{
          [](const AbelianSpec& s) {
            return "abelian(p=" + std::to_string(s.p) + ", rank=" + std::to_string(s.d) +
                   ")";
          },
          [](const ScalarSplitSpec& s) {
            return "scalar(p=" + std::to_string(s.p) + ", rank=" + std::to_string(s.d) +
                   ", form=" + padic::to_string(s.form) + ")";
          },
          [](const MatrixSplitSpec& s) {
            return "matrix(p=" + std::to_string(s.p) +
                   ", rank=" + std::to_string(s.t.rows()) + ")";
          },
          [](const MaxClass3Spec&) { return std::string("maxclass3(p=3)"); },
          [](const TorsionScalarSpec& s) {
            return "torsion(p=" + std::to_string(s.p) +
                   ", rank=" + std::to_string(s.t.rows()) + ")";
          },
          [](const CustomAffineSpec& s) {
            std::string r = "affine(p=" + std::to_string(s.p) +
                            ", dim=" + std::to_string(s.dim);
            if (!s.name.empty()) r += ", name=" + s.name;
            return r + ")";
          }},
      spec);
}

void validate(const GroupSpec& spec) { validate_spec(spec); }

Mat omega_companion() {
  Mat w(2, 2);
  w << 0, -1, 1, -1;
  return w;
}

Int torsion_order_exp(Int p, const Mat& t) {
  require(is_prime(p), errc::semantic_error, "p must be prime");
  require(t.rows() == t.cols() && t.rows() >= 1, errc::semantic_error,
          "order of a non-square matrix");
  return exact_p_power_order_exp(p, t);
}

GroupSpec family(Int item, Int p, Int d, std::optional<Int> s, Int sign) {
  require(is_prime(p), errc::semantic_error, "p must be prime");
  switch (item) {
    case 1: {
      AbelianSpec a{p, d};
      validate_one(a);
      return a;
    }
    case 2: {
      using padic::ScalarForm;
      require(s.has_value(), errc::constraint_violation,
              "catalog item 2 needs a scalar exponent");
      ScalarForm form;
      if (sign >= 0) {
        form = {ScalarForm::Plus, *s};
      } else {
        require(p == 2, errc::constraint_violation, "negative scalar forms need p=2");
        require(*s >= 2, errc::constraint_violation,
                "scalar -1 belongs to catalog item 4");
        form = {ScalarForm::Minus, *s};
      }
      ScalarSplitSpec g{p, d, form};
      validate_one(g);
      return g;
    }
    case 3:
      require(p == 3, errc::constraint_violation, "catalog item 3 is a pro-3 group");
      require(d == 2, errc::constraint_violation,
              "catalog item 3 has fixed dimension 2");
      return MaxClass3Spec{};
    case 4: {
      require(p == 2, errc::constraint_violation, "catalog item 4 needs p=2");
      ScalarSplitSpec g{2, d, {padic::ScalarForm::MinusOne, 0}};
      validate_one(g);
      return g;
    }
    default:
      fail(errc::constraint_violation, "catalog items are numbered 1 to 4");
  }
}

std::vector<AffineElement> quotient_generators(const GroupSpec& spec, Int K) {
  validate_spec(spec);
  const Int p = spec_prime(spec);
  const padic::Zmod ring = padic::Zmod::make(p, K);
  const Int n = spec_dim(spec);
  std::vector<AffineElement> gens;
  auto basis_translation = [&](Int i) {
    Vec v = Vec::Zero(n);
    v(i) = 1;
    return AffineElement::translation(ring, v);
  };
  std::visit(
      overloaded{
          [&](const AbelianSpec& s) {
            for (Int i = 0; i < s.d; ++i) gens.push_back(basis_translation(i));
          },
          [&](const ScalarSplitSpec& s) {
            const Int lam = padic::scalar_of_form(s.p, s.form);
            Mat m = Mat::Identity(n, n);
            for (Int i = 1; i < n; ++i) m(i, i) = lam;
            Vec v = Vec::Zero(n);
            v(0) = 1;
            gens.push_back(AffineElement::make(ring, m, v));
            for (Int i = 1; i < n; ++i) gens.push_back(basis_translation(i));
          },
          [&](const MatrixSplitSpec& s) {
            Mat m = Mat::Identity(n, n);
            m.bottomRightCorner(s.t.rows(), s.t.rows()) = s.t;
            Vec v = Vec::Zero(n);
            v(0) = 1;
            gens.push_back(AffineElement::make(ring, m, v));
            for (Int i = 1; i < n; ++i) gens.push_back(basis_translation(i));
          },
          [&](const MaxClass3Spec&) {
            gens.push_back(AffineElement::linear(ring, omega_companion()));
            gens.push_back(basis_translation(0));
          },
          [&](const TorsionScalarSpec& s) {
            gens.push_back(AffineElement::linear(ring, s.t));
            for (Int i = 0; i < s.t.rows(); ++i) gens.push_back(basis_translation(i));
          },
          [&](const CustomAffineSpec& s) {
            for (const auto& [m, v] : s.gens)
              gens.push_back(AffineElement::make(ring, m, v));
          }},
      spec);
  return gens;
}

std::vector<PhiSeriesEntry> symbolic_phi_series(const GroupSpec& spec, Int length) {
  validate_spec(spec);
  require(!std::holds_alternative<CustomAffineSpec>(spec), errc::certificate_unavailable,
          "no closed-form Frattini series for custom generators");
  const Int p = spec_prime(spec);
  const Int r = lattice_rank(spec);
  const Int t = torsion_top_exp(spec);  // -1 for a free top
  const padic::Zmod ring = padic::Zmod::make(p, length + 2);
  const padic::RMatrix act = padic::RMatrix::make(ring, lattice_action(spec));
  padic::Lattice l = padic::full_lattice(ring, r);
  std::vector<PhiSeriesEntry> out;
  Int e = 0;
  for (Int j = 0; j <= length; ++j) {
    PhiSeriesEntry entry;
    entry.level = j;
    entry.top_exp = e;
    entry.top_trivial = (t >= 0 && e >= t);
    entry.lattice = l.basis;
    require(l.rank() == r, errc::precision_exhausted,
            "Frattini series lattice lost rank");
    out.push_back(std::move(entry));
    if (j == length) break;
    const padic::RMatrix step =
        padic::rsub(padic::rpow(act, checked_pow(p, e)), padic::ridentity(ring, r));
    l = padic::lattice_sum(padic::lattice_scale(l, 1), padic::lattice_apply(step, l));
    e = (t >= 0) ? std::min(e + 1, t) : e + 1;
  }
  return out;
}

namespace {

struct CustomCert {
  Certificate cert;
  pgroup::GroupPtr quotient;
  std::vector<AffineElement> gens;
};

std::vector<std::pair<Int, Int>> census_profile(const pgroup::GroupPtr& q, Int m) {
  std::vector<std::pair<Int, Int>> prof;
  for (const auto& rec : pgroup::all_subgroups_up_to_index(q, m))
    prof.emplace_back(rec.index_exp, rec.d);
  std::sort(prof.begin(), prof.end());
  return prof;
}

CustomCert certify_custom(const CustomAffineSpec& s, const GroupSpec& spec, Int m,
                          Int K, const BuildOptions& opts) {
  const padic::Zmod ring_k = padic::Zmod::make(s.p, K);
  const padic::Zmod ring_k1 = padic::Zmod::make(s.p, K + 1);
  pgroup::ClosureOptions copts{opts.budget};
  auto gens_k = quotient_generators(spec, K);
  auto gens_k1 = quotient_generators(spec, K + 1);
  pgroup::GroupPtr qk = pgroup::FiniteGroup::closure(ring_k, s.dim, gens_k, copts);
  pgroup::GroupPtr qk1 = pgroup::FiniteGroup::closure(ring_k1, s.dim, gens_k1, copts);

  // the reduction kernel must sit below Phi^(m+1) of the refined quotient
  auto series = pgroup::frattini_series(qk1, m + 1);
  const pgroup::Subgroup& deep = series.back();
  for (Int id = 0; id < qk1->order(); ++id) {
    const AffineElement g = qk1->element(static_cast<std::int32_t>(id));
    bool trivial = true;
    for (Int i = 0; trivial && i < s.dim; ++i) {
      if (ring_k.reduce(g.v(i)) != 0) trivial = false;
      for (Int j = 0; trivial && j < s.dim; ++j)
        if (ring_k.reduce(g.m(i, j)) != (i == j ? 1 : 0)) trivial = false;
    }
    if (!trivial) continue;
    require(deep.contains(static_cast<std::int32_t>(id)), errc::certificate_unavailable,
            "reduction kernel escapes the depth-" + std::to_string(m + 1) +
                " Frattini term");
  }

  // the two censuses must agree
  require(census_profile(qk, m) == census_profile(qk1, m),
          errc::certificate_unavailable,
          "censuses at adjacent precisions disagree");
  return {Certificate{CertMode::Heuristic, m, K}, qk, std::move(gens_k)};
}

}  // namespace

Certificate certify(const GroupSpec& spec, Int m, Int K, const BuildOptions& opts) {
  validate_spec(spec);
  require(m >= 0, errc::semantic_error, "census depth must be >= 0");
  require(K >= 1, errc::semantic_error, "precision must be >= 1");
  if (const auto* custom = std::get_if<CustomAffineSpec>(&spec))
    return certify_custom(*custom, spec, m, K, opts).cert;

  const Int p = spec_prime(spec);
  auto series = symbolic_phi_series(spec, m + 1);
  const PhiSeriesEntry& tail = series.back();
  if (has_free_top(spec))
    require(K >= tail.top_exp, errc::certificate_unavailable,
            "precision below the Frattini series depth");
  const Int w = std::max(K, m + 1) + 2;
  const padic::Zmod ring = padic::Zmod::make(p, w);
  const Int r = lattice_rank(spec);
  padic::Lattice phi_lat =
      padic::hnf(padic::RMatrix::make(ring, tail.lattice));
  padic::Lattice kernel_lat = padic::hnf(padic::RMatrix::make(
      ring, Mat(checked_pow(p, K) * Mat::Identity(r, r))));
  require(padic::lattice_contains(phi_lat, kernel_lat), errc::certificate_unavailable,
          "truncation kernel escapes the depth-" + std::to_string(m + 1) +
              " Frattini term");
  return {CertMode::Exact, m, K};
}

namespace {

// cross-check the finite quotient against the closed-form series
void self_check_quotient(const GroupSpec& spec, Int m, Int K,
                         const pgroup::GroupPtr& q) {
  const Int r = lattice_rank(spec);
  const Int t = torsion_top_exp(spec);
  const Int top_total = std::holds_alternative<AbelianSpec>(spec) ? 0
                        : (t >= 0)                                ? t
                                                                  : K;
  auto series = symbolic_phi_series(spec, m + 1);
  require(q->order_exp() == top_total + K * r, errc::internal,
          "quotient order disagrees with the spec shape");
  auto concrete = pgroup::frattini_series(q, m + 1);
  const padic::Zmod wring = padic::Zmod::make(q->prime(), m + 3);
  for (Int j = 0; j <= m + 1; ++j) {
    const PhiSeriesEntry& entry = series[static_cast<std::size_t>(j)];
    const Int pivot_sum =
        padic::hnf(padic::RMatrix::make(wring, entry.lattice)).pivot_val_sum();
    Int top_exp_in_quotient;
    if (std::holds_alternative<AbelianSpec>(spec))
      top_exp_in_quotient = 0;
    else if (t >= 0)
      top_exp_in_quotient = t - std::min(entry.top_exp, t);
    else
      top_exp_in_quotient = K - std::min(entry.top_exp, K);
    const Int expected = top_exp_in_quotient + K * r - pivot_sum;
    require(concrete[static_cast<std::size_t>(j)].order_exp() == expected,
            errc::internal, "Frattini series disagrees with the closed form at depth " +
                                std::to_string(j));
  }
}

}  // namespace

BuiltGroup build(const GroupSpec& spec, Int m, const BuildOptions& opts) {
  validate_spec(spec);
  const Int p = spec_prime(spec);
  const Int k_lo = opts.forced_K.value_or(m + 1);
  const Int k_hi = opts.forced_K.value_or(m + 4);
  std::string last = "no certificate found";
  for (Int K = k_lo; K <= k_hi; ++K) {
    try {
      if (const auto* custom = std::get_if<CustomAffineSpec>(&spec)) {
        CustomCert cc = certify_custom(*custom, spec, m, K, opts);
        return {spec, cc.cert, cc.quotient, std::move(cc.gens)};
      }
      Certificate cert = certify(spec, m, K, opts);
      auto gens = quotient_generators(spec, K);
      pgroup::GroupPtr q = pgroup::FiniteGroup::closure(
          padic::Zmod::make(p, K), spec_dim(spec), gens, {opts.budget});
      self_check_quotient(spec, m, K, q);
      return {spec, cert, q, std::move(gens)};
    } catch (const error& e) {
      if (e.code() != errc::certificate_unavailable) throw;
      last = e.what();
    }
  }
  fail(errc::certificate_unavailable, last);
}

}  // namespace gennum::catalog
