#include <doctest.h>

#include <nlohmann/json.hpp>

#include "mfmod2/errors.hpp"
#include "mfmod2/forms.hpp"
#include "mfmod2/hecke.hpp"
#include "mfmod2/quadideals.hpp"
#include "mfmod2/structure.hpp"

using namespace mfmod2;

TEST_CASE("spaces") {
  CHECK(space_Waq(1) == std::vector<std::uint64_t>{1, 3, 7, 9, 21, 23, 27, 29});
  for (std::uint64_t q : {1, 2, 4}) CHECK(space_Waq(q).size() == 8 * q * q);
  CHECK(space_Sm(0).empty());
  CHECK(space_Sm(1) == std::vector<std::uint64_t>{1});
  CHECK(space_Sm(2) == std::vector<std::uint64_t>{1, 3, 7});
  for (std::uint64_t m = 0; m < 12; ++m) CHECK(space_Sm(m).size() == m * (m + 1) / 2);
  CHECK_THROWS_AS(space_Waq(6), DomainError);
}

TEST_CASE("operator matrices") {
  const auto w1 = space_Waq(1);
  const Gf2Matrix X = op_matrix(Operator::hecke(3), w1);
  CHECK(from_bits(X.column(5), w1) == Combination{21});  // column of D_23
  CHECK(from_bits(X.column(0), w1).empty());             // column of D_1
  CHECK(Operator::hecke(3).name() == "T3");
  CHECK(Operator::t11_squared().name() == "T11^2");
  CHECK_THROWS_AS(op_matrix(Operator::hecke(3), {1, 3, 47}), InternalError);

  for (std::uint64_t m = 0; m < 10; ++m) {
    const Gf2Matrix Xm = op_matrix(Operator::hecke(3), space_Sm(m + 1));
    CHECK(Xm.rank() == m * (m + 1) / 2);
  }
}

TEST_CASE("kernels on W_a(q)") {
  for (std::uint64_t q : {1, 2, 4}) {
    const auto space = space_Waq(q);
    const Gf2Matrix X = op_matrix(Operator::hecke(3), space);
    const Gf2Matrix Y = op_matrix(Operator::hecke(7), space);
    const auto ker = kernel(X);
    CHECK(ker.size() == 2 * q);
    auto joint = ker;
    const auto di = di_basis(q);
    joint.insert(joint.end(), di.begin(), di.end());
    CHECK(rank_of(joint) == 2 * q);
    CHECK(kernel(X.stacked(Y)) == std::vector<Combination>{Combination{1}});
  }
}

TEST_CASE("XYPoly") {
  const XYPoly X = XYPoly::X(6);
  const XYPoly Y = XYPoly::Y(6);
  CHECK(to_text(XYPoly(6)) == "0");
  CHECK(to_text(X + X * X * Y) == "X + X^2Y");
  CHECK(to_text(Y + X) == "X + Y");
  CHECK(to_text(XYPoly::monomial(0, 0, 3)) == "1");
  CHECK((X + X).is_zero());
  CHECK((X * Y).valuation() == 2);
  CHECK(XYPoly(4).valuation() == 4);

  XYPoly f(3);
  f.toggle(2, 1);  // degree 3 is beyond the order
  CHECK(f.is_zero());
  f.toggle(1, 1);
  CHECK(f.coeff(1, 1));

  // known to order min(6 + 1, 6 + 1)
  CHECK((X * Y).order() == 7);
  CHECK((XYPoly::monomial(0, 0, 6) * X).order() == 6);
  CHECK((X + XYPoly::Y(3)).order() == 3);

  nlohmann::json j = X + X * Y;
  CHECK(j.dump() == "[[1,0],[1,1]]");
  CHECK(xypoly_from_json(j, 6) == X + X * Y);

  const OElement eps{XYPoly(4), XYPoly::monomial(0, 0, 4)};
  CHECK((eps * eps).r.is_zero());
  CHECK((eps * eps).t.is_zero());
  CHECK(to_text(OElement{X, XYPoly(6)}) == "r = X; t = 0");
}

TEST_CASE("XYPoly action matches X = T3 and Y = T7") {
  const Combination v{1, 3, 7, 9, 21, 23, 41, 43, 47, 61, 63};
  const XYPoly X = XYPoly::X(8);
  const XYPoly Y = XYPoly::Y(8);
  CHECK(X.apply(v) == apply_Tp(v, HeckePrime(3)));
  CHECK(Y.apply(v) == apply_Tp(v, HeckePrime(7)));
  CHECK((X * Y + Y).apply(v) == apply_Y(apply_X(v)) + apply_Y(v));
}

TEST_CASE("adapted basis") {
  const auto basis = adapted_basis(12);
  CHECK(adapted_basis(12) == basis);
  CHECK(basis->depth() == 12);
  CHECK(basis->pairs().size() == 78);
  CHECK(basis->m(0, 0) == Combination{1});
  CHECK(apply_X(basis->m(1, 0)) == basis->m(0, 0));
  CHECK(apply_Y(basis->m(1, 0)).empty());
  CHECK(basis->m(1, 0) == Combination{3});
  CHECK(basis->m(0, 1) == Combination{7});

  std::vector<Combination> all;
  for (const auto& pc : basis->pairs()) {
    all.push_back(basis->m(pc));
    if (pc.a > 0 || pc.b > 0) CHECK_FALSE(basis->m(pc).contains(1));
    CHECK(basis->coordinates(basis->m(pc)) == std::vector<PairCode>{pc});
  }
  CHECK(rank_of(all) == 78);

  const Combination v = basis->m(3, 2) + basis->m(0, 5) + basis->m(1, 1);
  const auto coords = basis->coordinates(v);
  CHECK(coords.size() == 3);
  CHECK(basis->coordinate(v, {0, 5}));
  CHECK_FALSE(basis->coordinate(v, {5, 0}));
  CHECK_THROWS_AS(basis->coordinates(Combination{pair_to_k({12, 0})}), DomainError);
  CHECK_THROWS_AS(basis->m(12, 0), DomainError);

  const XYPoly u = XYPoly::X(12) * XYPoly::Y(12) + XYPoly::monomial(0, 2, 12);
  CHECK(u.apply(basis->m(3, 3)) == basis->shifted_sum(u, {3, 3}));
  CHECK(basis->shifted_sum(u, {3, 3}) == basis->m(2, 2) + basis->m(3, 1));
}

TEST_CASE("T11 from W_b to W_a") {
  for (std::uint64_t k : {11, 13, 17, 19, 31, 93, 119}) {
    CHECK(Tp_on_Dk(HeckePrime(11), k).max_index() == t11_lead(k));
    CHECK(t11_lead_inverse(t11_lead(k)) == k);
  }
  CHECK(t11_lead(11) == 1);

  const auto basis = adapted_basis(8);
  const auto nb = nb_basis(*basis);
  REQUIRE(nb.size() == basis->pairs().size());
  CHECK(nb.at({0, 0}).contains(11));
  for (const auto& [pc, n] : nb) {
    CHECK(apply_Tp(n, HeckePrime(11)) == basis->m(pc));
    for (auto k : n.indices()) CHECK(chi(k) == -1);
    if (pc.a > 0) CHECK(apply_X(n) == nb.at({pc.a - 1, pc.b}));
    if (pc.b > 0) CHECK(apply_Y(n) == nb.at({pc.a, pc.b - 1}));
  }
  CHECK(t11_preimage(Combination{}).empty());
  CHECK_THROWS_AS(t11_preimage(Combination{11}), DomainError);
}

TEST_CASE("lambda") {
  const LambdaResult r = lambda_series(8);
  CHECK(r.lambda.order() == 4);
  CHECK(r.lambda.coeff(1, 0));
  CHECK(r.lambda.coeff(0, 1));
  CHECK_FALSE(r.lambda.coeff(0, 0));
  // u carries only even bidegrees
  for (const auto& [i, j] : r.u.terms()) {
    CHECK(i % 2 == 0);
    CHECK(j % 2 == 0);
  }
  const Combination d9{9};
  CHECK(r.u.apply(d9) == Operator::t11_squared().apply(d9));
  for (auto k : space_Sm(8)) CHECK(r.u.apply(Combination{k}) == Operator::t11_squared().apply(Combination{k}));
  CHECK(to_text(lambda_series(12).lambda) == "X + Y + X^3 + X^2Y + Y^3 + X^5 + X^3Y^2 + Y^5");
  CHECK_THROWS_AS(lambda_series(1), DomainError);

  for (std::uint64_t m = 0; m + 2 <= 8; ++m) {
    std::vector<Combination> img;
    for (auto k : space_Sm(m + 2)) img.push_back(Operator::t11_squared().apply(Combination{k}));
    CHECK(rank_of(img) == m * (m + 1) / 2);
  }
}

TEST_CASE("Hecke operators inside O") {
  for (std::uint32_t M : {2, 4, 6}) {
    CHECK(to_text(express_hecke(3, M).element) == "r = X; t = 0");
    CHECK(to_text(express_hecke(7, M).element) == "r = Y; t = 0");
  }
  CHECK(express_depth(3, 5) == 5);
  CHECK(express_depth(13, 5) == 7);
  CHECK(express_depth(13, 1) == 2);

  const HeckeExpression e13 = express_hecke(13, 4);
  CHECK(e13.through_t11);
  CHECK(e13.t_factor.valuation() >= 1);
  CHECK(e13.element.t == e13.t_factor);

  const HeckeExpression e23 = express_hecke(23, 5);
  CHECK_FALSE(e23.through_t11);
  CHECK(e23.element.t.is_zero());
  CHECK(e23.element.r.valuation() >= 1);

  // T_p = t T_11 with t(0, 0) = 1 for p = 19: the x coefficient of T_19(D_11)
  // is the x^19 coefficient of D_11 = G^2 D, which is 1.
  CHECK(gen_Dk(11, 40).coeff(19));
  CHECK(express_hecke(19, 5).t_factor.coeff(0, 0));
  CHECK(express_hecke(11, 4).t_factor == XYPoly::monomial(0, 0, 4));

  nlohmann::json j = express_hecke(7, 3).element;
  CHECK(j.dump() == R"({"order":3,"r":[[0,1]],"t":[]})");
  CHECK_THROWS_AS(express_hecke(4, 3), DomainError);
  CHECK_THROWS_AS(express_hecke(3, 0), DomainError);
}

TEST_CASE("T3 recursion oracle") {
  CHECK(tk_oracle(47) == Combination{21});
  CHECK(tk_oracle(1).empty());
  for (std::uint64_t k = 1; k < 800; ++k) {
    if (chi(k) == 1) CHECK(tk_oracle(k) == Tp_on_Dk(HeckePrime(3), k));
  }
  CHECK_THROWS_AS(tk_oracle(11), DomainError);
}
