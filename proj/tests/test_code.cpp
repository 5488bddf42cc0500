#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "mfmod2/code.hpp"
#include "mfmod2/errors.hpp"
#include "mfmod2/hecke.hpp"

using namespace mfmod2;

namespace {

// binary digits of n reinterpreted in base 4
std::uint64_t g_by_digits(std::uint64_t n) {
  std::uint64_t out = 0;
  std::uint64_t place = 1;
  for (; n; n >>= 1, place *= 4) out += (n & 1) * place;
  return out;
}

}  // namespace

TEST_CASE("g") {
  CHECK(g(0) == 0);
  CHECK(g(2) == 4);
  CHECK(g(11) == 69);
  for (std::uint64_t n = 0; n < 5000; ++n) CHECK(g(n) == g_by_digits(n));
}

TEST_CASE("pair code examples") {
  CHECK(pair_to_k({0, 0}) == 1);
  CHECK(pair_to_k({1, 0}) == 3);
  CHECK(pair_to_k({0, 1}) == 7);
  for (std::uint64_t q : {1, 2, 4, 8}) CHECK(pair_to_k({0, 2 * q}) == 40 * q * q + 1);
  CHECK(k_to_pair(41) == PairCode{0, 2});
  CHECK(k_to_pair(1) == PairCode{0, 0});
  CHECK_THROWS_AS(k_to_pair(11), DomainError);
  CHECK_THROWS_AS(k_to_pair(5), DomainError);
}

TEST_CASE("pair code is a bijection onto the W_a indices") {
  // every admissible k below a bound is hit by exactly one small pair
  std::set<std::uint64_t> hit;
  for (std::uint64_t a = 0; a < 64; ++a) {
    for (std::uint64_t b = 0; b < 64; ++b) {
      const auto k = pair_to_k({a, b});
      CHECK(chi(k) == 1);
      CHECK(k_to_pair(k) == PairCode{a, b});
      hit.insert(k);
    }
  }
  CHECK(hit.size() == 64 * 64);
  // indices below 40 q^2 are exactly the pairs with a < 4q, b < 2q
  for (std::uint64_t q : {1, 2, 4, 8}) {
    std::set<PairCode> box;
    for (std::uint64_t k = 1; k < 40 * q * q; ++k) {
      if (chi(k) == 1) box.insert(k_to_pair(k));
    }
    CHECK(box.size() == 8 * q * q);
    for (const auto& pc : box) {
      CHECK(pc.a < 4 * q);
      CHECK(pc.b < 2 * q);
    }
  }
}

TEST_CASE("precedence") {
  CHECK(precedes({0, 1}, {2, 0}));
  CHECK(precedes({2, 0}, {0, 2}));
  CHECK_FALSE(precedes({1, 1}, {1, 1}));
  CHECK_FALSE(precedes({0, 2}, {2, 0}));

  std::vector<PairCode> pairs;
  for (std::uint64_t a = 0; a < 4; ++a) {
    for (std::uint64_t b = 0; a + b < 4; ++b) pairs.push_back({a, b});
  }
  std::sort(pairs.begin(), pairs.end(), PrecedenceLess{});
  CHECK(pairs.front() == PairCode{0, 0});
  CHECK(pairs[1] == PairCode{1, 0});
  CHECK(pairs[2] == PairCode{0, 1});
  CHECK(pairs.back() == PairCode{0, 3});
}

TEST_CASE("earlier pairs have smaller index than (0, b)") {
  for (std::uint64_t b = 0; b < 32; ++b) {
    for (std::uint64_t c = 0; c < 32; ++c) {
      for (std::uint64_t d = 0; d < 32; ++d) {
        if (precedes({c, d}, {0, b})) CHECK(pair_to_k({c, d}) < pair_to_k({0, b}));
      }
    }
  }
}
