#include "mfmod2/code.hpp"

#include <array>
#include <string>

#include "mfmod2/errors.hpp"

namespace mfmod2 {

namespace {

// t-exponent residue mod 16 -> w-exponent residue mod 40. The two entries
// for residues 5 and 7 make the map a bijection onto {1,3,7,9,21,23,27,29}.
constexpr std::array<std::uint64_t, 8> kPhi = {1, 3, 7, 21, 9, 27, 23, 29};

// Inverse of g on numbers whose base-4 digits are 0 or 1.
std::uint64_t g_inverse(std::uint64_t v) {
  std::uint64_t n = 0;
  for (int bit = 0; v != 0; ++bit, v >>= 2) n |= (v & 1u) << bit;
  return n;
}

}  // namespace

std::uint64_t g(std::uint64_t n) {
  std::uint64_t out = 0;
  for (int bit = 0; n != 0; ++bit, n >>= 1) out |= (n & 1u) << (2 * bit);
  return out;
}

std::uint64_t pair_to_k(PairCode pc) {
  const std::uint64_t e = 1 + 2 * g(pc.a) + 4 * g(pc.b);
  const std::uint64_t m = e / 16;
  const std::uint64_t s = e % 16;  // odd
  return 40 * m + kPhi[s / 2];
}

PairCode k_to_pair(std::uint64_t k) {
  const std::uint64_t m = k / 40;
  const std::uint64_t res = k % 40;
  std::uint64_t s = 16;
  for (std::uint64_t i = 0; i < kPhi.size(); ++i) {
    if (kPhi[i] == res) s = 2 * i + 1;
  }
  if (s == 16) throw DomainError("k = " + std::to_string(k) + " is not 1, 3, 7 or 9 mod 20");
  const std::uint64_t half = (16 * m + s - 1) / 2;  // g(a) + 2 g(b)
  const std::uint64_t a_digits = half & 0x5555555555555555ULL;
  const std::uint64_t b_digits = (half >> 1) & 0x5555555555555555ULL;
  return PairCode{g_inverse(a_digits), g_inverse(b_digits)};
}

bool precedes(PairCode lhs, PairCode rhs) {
  const auto ls = lhs.a + lhs.b;
  const auto rs = rhs.a + rhs.b;
  return ls < rs || (ls == rs && lhs.b < rhs.b);
}

}  // namespace mfmod2
