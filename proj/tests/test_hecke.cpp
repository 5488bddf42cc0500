#include <doctest.h>

#include <random>

#include "mfmod2/errors.hpp"
#include "mfmod2/forms.hpp"
#include "mfmod2/hecke.hpp"
#include "oracles.hpp"

using namespace mfmod2;

TEST_CASE("character and primes") {
  CHECK(chi(3) == 1);
  CHECK(chi(11) == -1);
  CHECK(chi(15) == 0);
  CHECK(chi(20) == 0);
  for (std::uint64_t n : {1, 3, 7, 9, 21, 23, 27, 29}) CHECK(chi(n) == 1);
  for (std::uint64_t n : {11, 13, 17, 19, 31, 33, 37, 39}) CHECK(chi(n) == -1);
  CHECK(chi(3 * 13) == chi(3) * chi(13));

  CHECK(legendre(-10, 7) == 1);
  CHECK(legendre(-10, 3) == -1);
  CHECK(legendre(2, 7) == 1);

  // trial division as the reference
  auto naive = [](std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) return false;
    }
    return true;
  };
  for (std::uint64_t n = 0; n < 5000; ++n) CHECK(is_prime(n) == naive(n));
  CHECK(is_prime(18446744073709551557ull));
  CHECK_FALSE(is_prime(18446744073709551555ull));

  CHECK_THROWS_AS(HeckePrime(2), DomainError);
  CHECK_THROWS_AS(HeckePrime(5), DomainError);
  CHECK_THROWS_AS(HeckePrime(9), DomainError);
  CHECK(HeckePrime(7).splits());
  CHECK_FALSE(HeckePrime(3).splits());
  CHECK(HeckePrime(13).chi_value() == -1);
}

TEST_CASE("apply_Tp against the two-term formula") {
  std::mt19937_64 rng(5);
  for (std::uint64_t p : {3, 7, 11, 13, 29}) {
    std::vector<std::uint64_t> exps;
    for (std::uint64_t n = 0; n < 3000; ++n) {
      if (rng() & 1) exps.push_back(n);
    }
    const BitSeries f = BitSeries::from_exponents(exps, 3000);
    const BitSeries t = apply_Tp(f, HeckePrime(p));
    const auto want = oracle::tp(oracle::bits_of(f), p);
    REQUIRE(t.prec() == want.size());
    for (std::size_t n = 0; n < want.size(); ++n) CHECK(t.coeff(n) == bool(want[n]));
  }
  const BitSeries t = apply_Tp(monomial(3, 100), HeckePrime(3));
  CHECK(t.prec() == 34);
  CHECK(t.exponents() == std::vector<std::uint64_t>{1, 9});
}

TEST_CASE("level-one kernel facts") {
  CHECK(apply_Tp(gen(Named::kD, 10000), HeckePrime(3)).is_zero());
  CHECK(apply_Tp(gen(Named::kF, 10000), HeckePrime(3)).is_zero());
}

TEST_CASE("projections") {
  const std::size_t n = 4000;
  CHECK(agree(project(gen_Jk(3, n), Projection::kPr), gen_Dk(3, n)));
  CHECK(project(gen(Named::kG, n), Projection::kPr).is_zero());
  const BitSeries x = BitSeries::from_exponents(std::vector<std::uint64_t>{1, 2, 5, 11, 13, 21, 25}, 30);
  CHECK(project(x, Projection::kPr).exponents() == std::vector<std::uint64_t>{1, 2, 11, 13, 21});
  CHECK(project(x, Projection::kPa).exponents() == std::vector<std::uint64_t>{1, 21});
  CHECK(project(x, Projection::kPb).exponents() == std::vector<std::uint64_t>{11, 13});
}

TEST_CASE("Hecke images of basis elements") {
  CHECK(Tp_on_Dk(HeckePrime(3), 47) == Combination{21});
  CHECK(Tp_on_Dk(HeckePrime(3), 69) == Combination{23, 47, 63});
  CHECK(Tp_on_Dk(HeckePrime(11), 93) == Combination{47, 87});
  CHECK(Tp_on_Dk(HeckePrime(3), 1).empty());
  CHECK(Tp_on_Dk(HeckePrime(11), 11) == Combination{1});
  CHECK_THROWS_AS(Tp_on_Dk(HeckePrime(3), 25), DomainError);

  // memoized answers match a fresh decomposition of T_p(D_k) on a wide window
  for (std::uint64_t p : {3, 7, 13}) {
    for (std::uint64_t k : {49, 61, 77, 123}) {
      const BitSeries img = apply_Tp(gen_Dk(k, 40 * p * k), HeckePrime(p));
      CHECK(decompose_W(img) == Tp_on_Dk(HeckePrime(p), k));
    }
  }
  CHECK(apply_Tp(Combination{47, 69}, HeckePrime(3)) == Combination{21, 23, 47, 63});
}
