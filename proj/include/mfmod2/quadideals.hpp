#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mfmod2/bitseries.hpp"
#include "mfmod2/combination.hpp"

namespace mfmod2 {

/// b + c sqrt(-10).
struct QuadInt {
  std::int64_t b = 0;
  std::int64_t c = 0;
  std::int64_t norm() const { return b * b + 10 * c * c; }
  QuadInt conj() const { return {b, -c}; }
  friend bool operator==(const QuadInt&, const QuadInt&) = default;
  friend QuadInt operator*(QuadInt x, QuadInt y) { return {x.b * y.b - 10 * x.c * y.c, x.b * y.c + x.c * y.b}; }
  friend QuadInt operator-(QuadInt x) { return {-x.b, -x.c}; }
};

enum class Sector { kPrincipal, kNonprincipal };

/// An ideal I of Z[sqrt(-10)]. A principal I is stored by a generator; a
/// nonprincipal one by a generator of I*P, where P = (7, 2 - sqrt(-10)).
/// The stored generator is normalized to b > 0, or b = 0 and c > 0.
struct IdealRep {
  Sector sector = Sector::kPrincipal;
  QuadInt alpha;
  std::uint64_t norm = 0;
  bool type_a() const;
  friend bool operator==(const IdealRep&, const IdealRep&) = default;
};

/// The conjugate ideal.
IdealRep conjugate(const IdealRep& I);

struct GaussClass {
  std::uint64_t q = 1;
  Sector sector = Sector::kPrincipal;
  std::uint64_t d = 0;  // in [0, 2q)
  friend bool operator==(const GaussClass&, const GaussClass&) = default;
};

std::string to_text(const GaussClass& g);

/// P^2 = (3 + 2 sqrt(-10)) for P = (7, 2 - sqrt(-10)).
inline constexpr QuadInt kP2{3, 2};

/// Whether q is 1, 2, 4, 8, ...; DomainError otherwise from the q-taking operations.
bool is_power_of_two(std::uint64_t q);

/// All ideals of norm exactly n, principal ones first, each sector sorted by generator.
std::vector<IdealRep> ideals_of_norm(std::uint64_t n);
/// All ideals of norm below `bound`, ordered by norm then as in ideals_of_norm.
std::vector<IdealRep> ideals_below(std::uint64_t bound);

/// Which fixed nonprincipal ideal L is used to move nonprincipal ideals to principal ones.
enum class Anchor { kP, kPbar };

/// The Gauss-class at level q. DomainError for ideals that are not type a.
GaussClass gauss_class(const IdealRep& I, std::uint64_t q, Anchor anchor = Anchor::kP);

/// Entry i is the class of C^i, C the class of P, for i = 0 .. 4q-1.
std::vector<GaussClass> class_power_table(std::uint64_t q);

/// Exponent i with C^i = g, given the table of class_power_table(q).
std::uint64_t class_exponent(const std::vector<GaussClass>& table, const GaussClass& g);

/// Integer power series: coefficient n at index n, window = size().
using IntSeries = std::vector<std::int64_t>;

/// theta(C^i) for every i = 0 .. 4q-1, on exponents below prec.
std::vector<IntSeries> theta_all(std::uint64_t q, std::size_t prec);
/// Mod 2 reduction of theta(C^i); for i = 2q (mod 4q) the reduction of
/// theta(AMB)/2, after checking that theta(AMB) has even coefficients.
BitSeries theta(std::uint64_t i, std::uint64_t q, std::size_t prec);

/// Hecke operator on integer series for chi(p) = 1:
/// sum c_n x^n -> sum c_{pn} x^n + (-10/p) sum c_n x^{pn}. Window ceil(prec/p).
IntSeries apply_Tp_integral(const IntSeries& f, std::uint64_t p);

/// Working window for the theta computations at level q.
std::size_t di_default_prec(std::uint64_t q);

/// alpha_0 .. alpha_{2q-1} written in the D basis. Checks independence and
/// that every index is below 40 q^2.
std::vector<Combination> di_basis(std::uint64_t q, std::size_t prec = 0);

/// Polynomials U_n over GF(2): U_0 = 0, U_1 = Y, U_{n+2} = Y U_{n+1} + U_n.
/// Bit i of coeffs is the coefficient of Y^i.
struct ChebPoly {
  std::uint64_t n = 0;
  std::vector<bool> coeffs;
  std::size_t degree() const;
  friend bool operator==(const ChebPoly&, const ChebPoly&) = default;
};
ChebPoly cheb_U(std::uint64_t n);
std::string to_text(const ChebPoly& u);

/// Counts of (a, b) with a^2 + 5 b^2 = 6n.
struct LatticeCounts {
  std::uint64_t n = 0;
  std::uint64_t congruent_mod3 = 0;  // a = b mod 3
  std::uint64_t both_one_mod6 = 0;   // a = b = 1 mod 6
};
LatticeCounts lattice_counts(std::uint64_t n);

struct ParityFailure {
  std::uint64_t n = 0;
  std::string claim;
};
/// Checks both parity statements for every n in [1, nmax]; the first failure, if any.
std::optional<ParityFailure> lattice_parity_check(std::uint64_t nmax);

}  // namespace mfmod2
