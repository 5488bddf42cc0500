#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mfmod2/bitseries.hpp"
#include "mfmod2/combination.hpp"

namespace mfmod2 {

/// The named series of the level-5 theory.
///   F    = sum over odd n of x^(n^2)
///   G    = F(x^5),  H = F(x^25),  D = F + H
///   r    = sum over n > 0 of x^(n^2) + x^(2n^2) + x^(5n^2) + x^(10n^2)
///   Cbar = x * prod (1 + x^n)^4 (1 + x^5n)^4, the reduced eta product
enum class Named { kF, kG, kH, kR, kD, kCbar };

std::optional<Named> parse_named(std::string_view name);
std::string_view name_of(Named n);

BitSeries gen(Named which, std::size_t prec);

/// D_1 = D, D_3 = D^8/G, D_7 = D^2 G, D_9 = D^4 G, D_{k+10} = G^2 D_k.
/// Requires gcd(k, 10) = 1. Values are memoized; safe to call concurrently.
BitSeries gen_Dk(std::uint64_t k, std::size_t prec);
/// J_1 = F, J_3 = F^8/G, J_5 = G, J_7 = F^2 G, J_9 = F^4 G, J_{k+10} = G^2 J_k (k odd).
BitSeries gen_Jk(std::uint64_t k, std::size_t prec);

/// Sum of the basis series of `c` (D_k or J_k according to its family).
BitSeries series_of(const Combination& c, std::size_t prec);

/// Writes f as a sum of D_k by greedy leading-term reduction.
///
/// Throws NotInWError when a leading exponent is not prime to 10, and
/// InsufficientPrecisionError when an index reaches the upper half of the
/// window (the upper half is what certifies that the reduction is complete).
Combination decompose_W(const BitSeries& f);

struct IdentityResult {
  std::string name;
  std::size_t window = 0;
  bool passed = false;
  std::optional<std::uint64_t> first_bad;
};

struct IdentityReport {
  std::vector<IdentityResult> results;
  bool all_passed() const;
  /// Throws IdentityViolation naming the first failed identity.
  void require_all() const;
};

/// Checks the modular equations and projection identities coefficientwise.
/// Every identity is compared on a window of at least `prec` coefficients.
IdentityReport verify_identities(std::size_t prec);

}  // namespace mfmod2
