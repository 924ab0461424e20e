#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gennum {

using Int = std::int64_t;

/// Dense integer matrix/vector types; every modular routine in this
/// library states its modulus explicitly instead of wrapping scalars.
using Mat = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Int, Eigen::Dynamic, 1>;

enum class errc {
  non_unit,
  precision_exhausted,
  not_contained,
  infinite_index,
  not_p_power_order,
  discontinuous_action,
  budget_exceeded,
  not_a_p_group,
  not_invertible,
  constraint_violation,
  certificate_unavailable,
  not_order_dividing_p,
  not_antisymmetric,
  jacobi_fails,
  syntax_error,
  semantic_error,
  overflow,
  internal,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
 public:
  error(errc c, const std::string& what)
      : std::runtime_error(std::string(errc_name(c)) + ": " + what), code_(c) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& what) {
  throw error(c, what);
}

inline void require(bool ok, errc c, const std::string& what) {
  if (!ok) fail(c, what);
}

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::non_unit: return "NonUnit";
    case errc::precision_exhausted: return "PrecisionExhausted";
    case errc::not_contained: return "NotContained";
    case errc::infinite_index: return "InfiniteIndex";
    case errc::not_p_power_order: return "NotPPowerOrder";
    case errc::discontinuous_action: return "DiscontinuousAction";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::not_a_p_group: return "NotAPGroup";
    case errc::not_invertible: return "NotInvertible";
    case errc::constraint_violation: return "ConstraintViolation";
    case errc::certificate_unavailable: return "CertificateUnavailable";
    case errc::not_order_dividing_p: return "NotOrderDividingP";
    case errc::not_antisymmetric: return "NotAntisymmetric";
    case errc::jacobi_fails: return "JacobiFails";
    case errc::syntax_error: return "SyntaxError";
    case errc::semantic_error: return "SemanticError";
    case errc::overflow: return "Overflow";
    case errc::internal: return "Internal";
  }
  return "Internal";
}

/// visitor aggregate for std::visit over spec variants
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

/// p^e as Int; throws Overflow past the int64 range.
inline Int checked_pow(Int p, Int e) {
  require(e >= 0, errc::internal, "negative exponent");
  Int r = 1;
  for (Int i = 0; i < e; ++i) {
    require(r <= (Int{1} << 62) / p, errc::overflow, "p^e exceeds int64");
    r *= p;
  }
  return r;
}

inline bool is_prime(Int p) {
  if (p < 2) return false;
  for (Int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline bool int_mat_is_identity(const Mat& a) {
  if (a.rows() != a.cols()) return false;
  for (Int i = 0; i < a.rows(); ++i)
    for (Int j = 0; j < a.cols(); ++j)
      if (a(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

/// exact integer product; throws Overflow when an entry leaves +-2^62
inline Mat int_mat_mul(const Mat& a, const Mat& b) {
  Mat r = Mat::Zero(a.rows(), b.cols());
  for (Int i = 0; i < a.rows(); ++i)
    for (Int j = 0; j < b.cols(); ++j) {
      __int128 acc = 0;
      for (Int k = 0; k < a.cols(); ++k)
        acc += static_cast<__int128>(a(i, k)) * b(k, j);
      require(acc <= (static_cast<__int128>(1) << 62) &&
                  acc >= -(static_cast<__int128>(1) << 62),
              errc::overflow, "integer matrix product overflows");
      r(i, j) = static_cast<Int>(acc);
    }
  return r;
}

inline Mat int_mat_pow(const Mat& a, Int e) {
  require(e >= 0, errc::internal, "negative matrix exponent");
  Mat base = a;
  Mat r = Mat::Identity(a.rows(), a.cols());
  while (e > 0) {
    if (e & 1) r = int_mat_mul(r, base);
    if (e > 1) base = int_mat_mul(base, base);
    e >>= 1;
  }
  return r;
}

}  // namespace gennum
