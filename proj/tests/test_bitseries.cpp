#include <doctest.h>

#include <random>
#include <vector>

#include <nlohmann/json.hpp>

#include "mfmod2/bitseries.hpp"
#include "mfmod2/errors.hpp"
#include "mfmod2/forms.hpp"
#include "oracles.hpp"

using namespace mfmod2;

namespace {

BitSeries poly(std::vector<std::uint64_t> exps, std::size_t prec) { return BitSeries::from_exponents(exps, prec); }

BitSeries random_series(std::mt19937_64& rng, std::size_t prec, unsigned shift = 0) {
  std::vector<std::uint64_t> exps;
  for (std::size_t n = shift; n < prec; ++n) {
    if (rng() & 1) exps.push_back(n);
  }
  return BitSeries::from_exponents(exps, prec);
}

}  // namespace

TEST_CASE("monomials and coefficients") {
  CHECK(monomial(0, 16) == BitSeries::one(16));
  CHECK(monomial(5, 16).exponents() == std::vector<std::uint64_t>{5});
  CHECK_THROWS_AS(monomial(16, 16), PrecisionError);
  CHECK_THROWS_AS(BitSeries(0), PrecisionError);

  const BitSeries F = gen(Named::kF, 100);
  CHECK(F.coeff(9));
  CHECK_FALSE(F.coeff(3));
  CHECK(gen(Named::kD, 100).coeff(49));
  CHECK_THROWS_AS(F.coeff(100), PrecisionError);
}

TEST_CASE("add") {
  std::mt19937_64 rng(1);
  const BitSeries f = random_series(rng, 300);
  CHECK((f + f).is_zero());
  CHECK(poly({1, 3}, 10) + poly({3, 5}, 10) == poly({1, 5}, 10));
  // the window is the smaller one
  CHECK((poly({1}, 10) + poly({1, 20}, 40)).prec() == 10);

  const BitSeries F = gen(Named::kF, 2000);
  const BitSeries H = substitute_power(F.truncated(80), 25);
  CHECK(agree(F + H, gen(Named::kD, 2000)));
}

TEST_CASE("mul against schoolbook product") {
  std::mt19937_64 rng(2);
  for (std::size_t prec : {1u, 7u, 63u, 64u, 65u, 200u, 700u}) {
    const BitSeries f = random_series(rng, prec);
    const BitSeries g = random_series(rng, prec);
    const BitSeries fg = f * g;
    const auto want = oracle::mul(oracle::bits_of(f), oracle::bits_of(g), prec);
    REQUIRE(fg.prec() >= prec);
    for (std::size_t n = 0; n < prec; ++n) CHECK(fg.coeff(n) == bool(want[n]));
  }
}

TEST_CASE("mul window follows valuations") {
  const BitSeries f = poly({3, 4}, 10);
  const BitSeries g = poly({5}, 20);
  // min(10 + 5, 20 + 3)
  CHECK((f * g).prec() == 15);
  CHECK((f * g).exponents() == std::vector<std::uint64_t>{8, 9});
  CHECK(poly({0, 1}, 10) * BitSeries::one(10) == poly({0, 1}, 10));
}

TEST_CASE("square is Frobenius") {
  CHECK(square(poly({0, 1}, 10)) == poly({0, 2}, 20));
  CHECK(square(monomial(1, 10)).exponents() == std::vector<std::uint64_t>{2});
  const BitSeries F = gen(Named::kF, 3000);
  CHECK(agree(square(F), F * F));

  // D^15 through square(D^4) D^7 and through repeated multiplication
  const BitSeries D = gen(Named::kD, 4000);
  BitSeries direct = D;
  for (int i = 1; i < 15; ++i) direct = direct * D;
  CHECK(agree(square(square(square(D))) * power(D, 7), direct));
  CHECK(agree(power(D, 15), direct));
}

TEST_CASE("substitute_power") {
  const BitSeries F = gen(Named::kF, 400);
  CHECK(agree(substitute_power(F, 5), gen(Named::kG, 2000)));
  CHECK(substitute_power(F, 1) == F);
  CHECK(agree(substitute_power(substitute_power(F, 5), 5), substitute_power(F, 25)));
  CHECK(agree(substitute_power(F, 25), gen(Named::kH, 10000)));
  CHECK(substitute_power(F, 3).prec() == 1200);
}

TEST_CASE("divide_exact") {
  const std::size_t n = 3000;
  const BitSeries D = gen(Named::kD, n);
  const BitSeries G = gen(Named::kG, n);
  const BitSeries D3 = divide_exact(power(D, 8), G);
  CHECK(agree(G * D3, power(D, 8)));
  CHECK(agree(D3, gen_Dk(3, n)));
  CHECK(D3.prec() == n - 5);

  const BitSeries F = gen(Named::kF, n);
  const BitSeries J3 = divide_exact(power(F, 8), G);
  CHECK(agree(J3, power(G, 7) + F * square(F + G)));
  CHECK(agree(J3, gen_Jk(3, n)));

  CHECK(divide_exact(F, BitSeries::one(n)) == F);

  // x^2 (1 + x) / (1 + x) and a non-divisible case
  CHECK(divide_exact(poly({2, 3}, 20), poly({0, 1}, 20)).exponents() == std::vector<std::uint64_t>{2});
  CHECK_THROWS_AS(divide_exact(poly({1}, 20), poly({2}, 20)), DivisionError);
  CHECK_THROWS_AS(divide_exact(poly({1}, 20), BitSeries(20)), DivisionError);
  try {
    divide_exact(poly({1, 5}, 20), poly({2}, 20));
    FAIL("expected a division error");
  } catch (const DivisionError& e) {
    CHECK(e.exponent() == 1);
  }
}

TEST_CASE("ring laws on random series") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const BitSeries f = random_series(rng, 1024);
    const BitSeries g = random_series(rng, 1024);
    const BitSeries h = random_series(rng, 1024);
    CHECK(agree(f * g, g * f));
    CHECK(agree((f * g) * h, f * (g * h)));
    CHECK(agree(f * (g + h), f * g + f * h));
  }
}

TEST_CASE("shifts and masks") {
  const BitSeries f = poly({3, 5}, 10);
  CHECK(shift_down(f, 3) == poly({0, 2}, 7));
  CHECK(shift_up(f, 2) == poly({5, 7}, 12));
  CHECK_THROWS_AS(shift_down(f, 4), DivisionError);
  CHECK(mask_exponents(poly({1, 2, 3, 4}, 10), [](std::uint64_t e) { return e % 2 == 0; }) == poly({2, 4}, 10));
}

TEST_CASE("first_difference") {
  CHECK(first_difference(poly({1, 5}, 10), poly({1, 5, 30}, 40)) == std::nullopt);
  CHECK(first_difference(poly({1, 5}, 10), poly({1, 6}, 10)) == 5u);
}

TEST_CASE("text and json round trip") {
  const BitSeries f = poly({1, 9, 25}, 30);
  CHECK(to_text(f) == "prec=30; exps=1,9,25");
  CHECK(series_from_text(to_text(f)) == f);
  CHECK(series_from_text("prec=5; exps=") == BitSeries(5));

  nlohmann::json j;
  to_json(j, f);
  CHECK(j.dump() == R"({"exps":[1,9,25],"prec":30})");
  CHECK(series_from_json(j) == f);

  std::mt19937_64 rng(4);
  const BitSeries big = random_series(rng, 777);
  CHECK(series_from_text(to_text(big)) == big);

  CHECK_THROWS_AS(series_from_text("prec=5; exps=7"), ParseError);
  CHECK_THROWS_AS(series_from_text("exps=1"), ParseError);
}
