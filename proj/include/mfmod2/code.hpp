#pragma once

#include <compare>
#include <cstdint>

namespace mfmod2 {

/// A point (a, b) of N x N labelling one D_k of W_a.
struct PairCode {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  friend bool operator==(const PairCode&, const PairCode&) = default;
  friend auto operator<=>(const PairCode&, const PairCode&) = default;
};

/// g(2n) = 4 g(n), g(2n+1) = g(2n) + 1: the binary digits of n read in base 4.
std::uint64_t g(std::uint64_t n);

/// k such that (a, b) codes D_k. Always k = 1, 3, 7 or 9 mod 20.
std::uint64_t pair_to_k(PairCode pc);
/// Inverse of pair_to_k; DomainError unless k = 1, 3, 7, 9 mod 20.
PairCode k_to_pair(std::uint64_t k);

/// (c,d) precedes (a,b) iff c+d < a+b, or c+d = a+b and d < b.
bool precedes(PairCode lhs, PairCode rhs);

/// Strict weak ordering usable with std::sort and std::map.
struct PrecedenceLess {
  bool operator()(PairCode lhs, PairCode rhs) const { return precedes(lhs, rhs); }
};

}  // namespace mfmod2
