#pragma once

#include <cstdint>

#include "mfmod2/bitseries.hpp"
#include "mfmod2/combination.hpp"

namespace mfmod2 {

/// The mod-20 character: +1 on 1,3,7,9; -1 on 11,13,17,19; 0 when gcd(n,20) > 1.
int chi(std::uint64_t n);
/// Legendre symbol (a/p) for an odd prime p.
int legendre(std::int64_t a, std::uint64_t p);
/// Deterministic for all 64-bit inputs.
bool is_prime(std::uint64_t n);

class HeckePrime {
 public:
  /// Throws DomainError unless p is prime and p is not 2 or 5.
  explicit HeckePrime(std::uint64_t p);
  std::uint64_t p() const { return p_; }
  int chi_value() const { return chi_; }
  /// Whether -10 is a square mod p, i.e. p splits in Z[sqrt(-10)].
  bool splits() const { return splits_; }

 private:
  std::uint64_t p_;
  int chi_;
  bool splits_;
};

/// T_p(sum c_n x^n) = sum c_{pn} x^n + sum c_n x^{pn}; output window ceil(prec/p).
BitSeries apply_Tp(const BitSeries& f, const HeckePrime& p);

enum class Projection {
  kPr,  // keep exponents prime to 5
  kPa,  // keep exponents with chi = +1
  kPb,  // keep exponents with chi = -1
};
BitSeries project(const BitSeries& f, Projection which);

/// T_p(D_k) written in the D basis. The input window is 8pk (at least 64p) so
/// the decomposition is certified on 8k coefficients; memoized per (p, k).
Combination Tp_on_Dk(const HeckePrime& p, std::uint64_t k);
/// Linear extension of Tp_on_Dk to a D-combination.
Combination apply_Tp(const Combination& c, const HeckePrime& p);

}  // namespace mfmod2
