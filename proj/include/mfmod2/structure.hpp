#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "mfmod2/code.hpp"
#include "mfmod2/combination.hpp"
#include "mfmod2/gf2matrix.hpp"
#include "mfmod2/hecke.hpp"

namespace mfmod2 {

/// k < 40 q^2 with k = 1, 3, 7, 9 mod 20, ascending (8 q^2 indices).
std::vector<std::uint64_t> space_Waq(std::uint64_t q);
/// pair_to_k(a, b) over a + b < m, ascending (m(m+1)/2 indices).
std::vector<std::uint64_t> space_Sm(std::uint64_t m);

/// An operator on W: T_p for a prime p != 2, 5, or T_11 composed with itself.
class Operator {
 public:
  static Operator hecke(std::uint64_t p) { return Operator(p, false); }
  static Operator t11_squared() { return Operator(11, true); }
  std::string name() const;
  Combination apply(const Combination& c) const;
  /// Every output index i of T_p(D_k) satisfies i = pk or 9pk mod 40.
  bool respects_grading(std::uint64_t k, const Combination& image) const;

 private:
  Operator(std::uint64_t p, bool squared) : p_(p), squared_(squared) {}
  std::uint64_t p_;
  bool squared_;
};

/// Matrix of `op` on the span of `space`. Each column must stay inside the
/// space and use only indices below its own (InternalError otherwise).
Gf2Matrix op_matrix(const Operator& op, const std::vector<std::uint64_t>& space);

/// Kernel basis of a matrix whose columns are labelled by D indices.
std::vector<Combination> kernel(const Gf2Matrix& mat);

/// X = T_3 and Y = T_7 acting on D-combinations.
Combination apply_X(const Combination& c);
Combination apply_Y(const Combination& c);

/// Polynomial over GF(2) in X and Y, known modulo (X, Y)^order.
class XYPoly {
 public:
  using Monomial = std::pair<std::uint32_t, std::uint32_t>;  // (i, j) for X^i Y^j

  explicit XYPoly(std::uint32_t order = 0) : order_(order) {}
  static XYPoly X(std::uint32_t order) { return monomial(1, 0, order); }
  static XYPoly Y(std::uint32_t order) { return monomial(0, 1, order); }
  static XYPoly monomial(std::uint32_t i, std::uint32_t j, std::uint32_t order);

  std::uint32_t order() const { return order_; }
  const std::set<Monomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool coeff(std::uint32_t i, std::uint32_t j) const { return terms_.count({i, j}) != 0; }
  /// Smallest total degree present; order() when zero.
  std::uint32_t valuation() const;
  /// Adds X^i Y^j; ignored when i + j >= order.
  void toggle(std::uint32_t i, std::uint32_t j);
  XYPoly truncated(std::uint32_t order) const;

  friend XYPoly operator+(const XYPoly& f, const XYPoly& g);
  /// Product known modulo degree min(f.order + val g, g.order + val f).
  friend XYPoly operator*(const XYPoly& f, const XYPoly& g);
  friend bool operator==(const XYPoly&, const XYPoly&) = default;

  /// Action on W through X = T_3, Y = T_7. Exact only when the terms of degree
  /// >= order() annihilate c.
  Combination apply(const Combination& c) const;

 private:
  std::uint32_t order_;
  std::set<Monomial> terms_;
};

/// `X + X^2Y` with monomials by degree, then by power of Y; `0` when zero.
std::string to_text(const XYPoly& f);
/// List of [i, j] pairs.
void to_json(nlohmann::json& j, const XYPoly& f);
XYPoly xypoly_from_json(const nlohmann::json& j, std::uint32_t order);

/// r + t eps with eps^2 = 0.
struct OElement {
  XYPoly r;
  XYPoly t;
  friend OElement operator*(const OElement& a, const OElement& b) {
    return {a.r * b.r, a.r * b.t + b.r * a.t};
  }
  friend OElement operator+(const OElement& a, const OElement& b) { return {a.r + b.r, a.t + b.t}; }
  friend bool operator==(const OElement&, const OElement&) = default;
};
/// `r = ...; t = ...`
std::string to_text(const OElement& e);
void to_json(nlohmann::json& j, const OElement& e);

/// The basis m_{a,b}, a + b < depth, of S_depth, with X m_{a,b} = m_{a-1,b},
/// Y m_{a,b} = m_{a,b-1} (0 at the boundary) and m_{0,0} = D. Every m_{a,b}
/// other than m_{0,0} has zero D_1 coordinate.
class AdaptedBasis {
 public:
  explicit AdaptedBasis(std::uint32_t depth);

  std::uint32_t depth() const { return depth_; }
  /// Pairs with a + b < depth in precedence order.
  const std::vector<PairCode>& pairs() const { return pairs_; }
  const Combination& m(std::uint64_t a, std::uint64_t b) const;
  const Combination& m(PairCode pc) const { return m(pc.a, pc.b); }
  bool has(PairCode pc) const { return pc.a + pc.b < depth_; }

  /// Coordinates of v in the m basis; v must lie in S_depth (DomainError
  /// otherwise). Returned as the pairs with coefficient 1.
  std::vector<PairCode> coordinates(const Combination& v) const;
  bool coordinate(const Combination& v, PairCode pc) const;

  /// sum over (i, j) of c_ij m_{a-i, b-j}: the element u . m_{a,b} predicted by
  /// the adapted relations.
  Combination shifted_sum(const XYPoly& u, PairCode ab) const;

 private:
  std::uint32_t depth_;
  std::vector<PairCode> pairs_;
  std::map<PairCode, Combination> m_;
  std::vector<std::uint64_t> labels_;  // S_depth
  std::unique_ptr<Gf2Matrix> inverse_;
};

/// Shared, memoized instance for a given depth.
std::shared_ptr<const AdaptedBasis> adapted_basis(std::uint32_t depth);

/// Leading index of T_11(D_k) for k = 11, 13, 17, 19 mod 20, and its inverse.
std::uint64_t t11_lead(std::uint64_t k);
std::uint64_t t11_lead_inverse(std::uint64_t j);

/// The unique h in W_b with T_11(h) = target, by back-substitution on leading indices.
Combination t11_preimage(const Combination& target);

/// n_{i,j} = T_11^{-1}(m_{i,j}) for the pairs of the adapted basis.
std::map<PairCode, Combination> nb_basis(const AdaptedBasis& basis);

/// u with T_11^2 = u(X, Y) on S_depth, and lambda with lambda^2 = u.
struct LambdaResult {
  XYPoly u;
  XYPoly lambda;  // order ceil(depth / 2)
};
LambdaResult lambda_series(std::uint32_t depth);

/// T_p as an element of O modulo (X, Y)^M.
///
/// chi(p) = 1:  T_p = r(X, Y) and the t part is zero.
/// chi(p) = -1: T_p = t T_11 = t lambda + t eps, reported with through_t11 set,
///              t_factor = t, element = (t lambda, t).
struct HeckeExpression {
  std::uint64_t p = 0;
  std::uint32_t order = 0;
  OElement element;
  XYPoly t_factor;
  bool through_t11 = false;
};
/// The adapted-basis depth express_hecke uses for (p, M).
std::uint32_t express_depth(std::uint64_t p, std::uint32_t M);
/// Extracts the coefficients and validates them on every basis vector with
/// a + b < M, on both W_a and W_b; InconsistencyError names the first failure.
HeckeExpression express_hecke(std::uint64_t p, std::uint32_t M);

/// T_3(D_k) from the 16 initial values and P_k = w^80 P_{k-80} + w^20 P_{k-60}.
Combination tk_oracle(std::uint64_t k);

}  // namespace mfmod2
