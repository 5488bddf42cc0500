#include <functional>

#include "mfmod2/errors.hpp"
#include "mfmod2/forms.hpp"
#include "mfmod2/hecke.hpp"

namespace mfmod2 {

bool IdentityReport::all_passed() const {
  for (const auto& r : results) {
    if (!r.passed) return false;
  }
  return true;
}

void IdentityReport::require_all() const {
  for (const auto& r : results) {
    if (!r.passed) throw IdentityViolation(r.name, r.first_bad.value_or(r.window));
  }
}

namespace {

IdentityResult compare(std::string name, const BitSeries& lhs, const BitSeries& rhs, std::size_t min_window) {
  IdentityResult r;
  r.name = std::move(name);
  r.window = std::min(lhs.prec(), rhs.prec());
  r.first_bad = first_difference(lhs, rhs);
  r.passed = !r.first_bad && r.window >= min_window;
  return r;
}

}  // namespace

IdentityReport verify_identities(std::size_t prec) {
  // Inputs carry a margin that covers the valuation lost in divisions by G.
  const std::size_t p = prec + 64;
  const BitSeries F = gen(Named::kF, p);
  const BitSeries G = gen(Named::kG, p);
  const BitSeries H = gen(Named::kH, p);
  const BitSeries D = gen(Named::kD, p);
  const BitSeries r = gen(Named::kR, p);
  const BitSeries Cbar = gen(Named::kCbar, p);
  const BitSeries one = BitSeries::one(p);
  const BitSeries zero(p);
  const BitSeries FG = F + G;

  IdentityReport rep;
  auto check = [&](std::string name, const BitSeries& lhs, const BitSeries& rhs) {
    rep.results.push_back(compare(std::move(name), lhs, rhs, prec));
  };

  check("D = F + F(x^25)", D, F + substitute_power(F.truncated(p / 25 + 1), 25));
  check("H = G(x^5)", H, substitute_power(G.truncated(p / 5 + 1), 5));
  check("(F+G)^6 = FG", power(FG, 6), F * G);
  check("G = r^5 (r+1)", G, power(r, 5) * (r + one));
  check("F = r (r+1)^5", F, r * power(r + one, 5));
  check("Cbar = r^2 + r", Cbar, square(r) + r);

  const BitSeries D3 = power(D, 3);
  check("D^15 + G^4 D^3 + G^3 = 0", power(D, 15) + power(G, 4) * D3 + power(G, 3), zero);

  const BitSeries D5G = divide_exact(power(D, 5), G);
  check("(D^5/G)^4 + D^5/G = D^8", power(D5G, 4) + D5G, power(D, 8));

  const BitSeries J3 = divide_exact(power(F, 8), G);
  check("F^8/G = G^7 + F (F+G)^2", J3, power(G, 7) + F * square(FG));

  auto level3 = [](const BitSeries& a, const BitSeries& b) { return power(a, 4) + power(b, 4) + a * b; };
  const BitSeries F3 = substitute_power(F.truncated(p / 3 + 1), 3).truncated(p);
  const BitSeries G3 = substitute_power(G.truncated(p / 3 + 1), 3).truncated(p);
  check("A^4 + B^4 + AB = 0 at (F(x^3), F)", level3(F3, F), zero);
  check("A^4 + B^4 + AB = 0 at (G(x^3), G)", level3(G3, G), zero);

  const BitSeries A = substitute_power(F.truncated(p / 11 + 1), 11).truncated(p);
  const BitSeries& B = F;
  const BitSeries U11 = power(A + B, 12) + power(A, 6) * square(B) + square(A) * power(B, 6) + power(A, 9) * B +
                        A * power(B, 9) + power(A, 3) * power(B, 3) + A * B;
  check("level 11 equation at (F(x^11), F)", U11, zero);

  const BitSeries FFG4 = F * power(FG, 4);
  const BitSeries D10G = divide_exact(power(D, 10), G);
  check("p_a(F (F+G)^4) = D^10/G + G", project(FFG4, Projection::kPa), D10G + G);
  check("p_b(F (F+G)^4) = D^5 + G", project(FFG4, Projection::kPb), power(D, 5) + G);
  const BitSeries G2 = square(G);
  const BitSeries FG2FG4 = G2 * FFG4;
  check("p_a(F G^2 (F+G)^4) = D^5 G^2 + G^3", project(FG2FG4, Projection::kPa),
        power(D, 5) * G2 + power(G, 3));
  check("p_b(F G^2 (F+G)^4) = D^10 G + G^3", project(FG2FG4, Projection::kPb), power(D, 10) * G + power(G, 3));

  const BitSeries r8G = power(r, 8) * G;
  check("p_b(r^8 G) = D^5 + G", project(r8G, Projection::kPb), power(D, 5) + G);
  check("p_a(r^8 G) = D^10/G + G", project(r8G, Projection::kPa), D10G + G);

  for (std::uint64_t k : {1, 3, 7, 9, 11, 13, 17, 19}) {
    check("pr(J_" + std::to_string(k) + ") = D_" + std::to_string(k), project(gen_Jk(k, p), Projection::kPr),
          gen_Dk(k, p));
  }
  return rep;
}

}  // namespace mfmod2
