#include "mfmod2/quadideals.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "mfmod2/errors.hpp"
#include "mfmod2/forms.hpp"
#include "mfmod2/gf2matrix.hpp"
#include "mfmod2/hecke.hpp"

namespace mfmod2 {

namespace {

std::int64_t isqrt(std::int64_t n) {
  if (n < 0) return -1;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

QuadInt canonical_sign(QuadInt a) {
  if (a.b < 0 || (a.b == 0 && a.c < 0)) return -a;
  return a;
}

bool in_P(QuadInt a) { return mod(a.b + 2 * a.c, 7) == 0; }

// All b + c sqrt(-10) of norm n, one per sign pair, canonical sign, sorted.
std::vector<QuadInt> elements_of_norm(std::int64_t n) {
  std::vector<QuadInt> out;
  for (std::int64_t c = 0; 10 * c * c <= n; ++c) {
    const std::int64_t rest = n - 10 * c * c;
    const std::int64_t b = isqrt(rest);
    if (b * b != rest) continue;
    if (b == 0) {
      if (c > 0) out.push_back({0, c});
    } else {
      out.push_back({b, c});
      if (c > 0) out.push_back({b, -c});
    }
  }
  std::sort(out.begin(), out.end(), [](QuadInt x, QuadInt y) { return std::tie(x.b, x.c) < std::tie(y.b, y.c); });
  return out;
}

// Exact division by a rational integer; InternalError if it does not divide.
QuadInt divide(QuadInt a, std::int64_t n) {
  if (a.b % n != 0 || a.c % n != 0) throw InternalError("element is not divisible as expected");
  return {a.b / n, a.c / n};
}

void require_power_of_two(std::uint64_t q) {
  if (!is_power_of_two(q)) throw DomainError("q must be a power of 2, got " + std::to_string(q));
}

std::int64_t inverse_mod(std::int64_t b, std::int64_t m) {
  // m is a power of 2 and b is odd; Newton iteration on the 2-adic inverse.
  std::int64_t x = 1;
  for (int i = 0; i < 7; ++i) x = mod(x * (2 - mod(b * x, m)), m);
  return mod(x, m);
}

// Label d of a principal type-a ideal (b + 2c' sqrt(-10)).
std::uint64_t principal_label(QuadInt a, std::uint64_t q) {
  const auto m = static_cast<std::int64_t>(4 * q);
  if (a.c % 2 != 0 || a.b % 2 == 0) throw DomainError("generator is not of type a");
  const std::int64_t cprime = a.c / 2;
  const std::int64_t d = mod(inverse_mod(mod(a.b, m), m) * cprime, static_cast<std::int64_t>(2 * q));
  return static_cast<std::uint64_t>(d);
}

}  // namespace

bool is_power_of_two(std::uint64_t q) { return q != 0 && (q & (q - 1)) == 0; }

bool IdealRep::type_a() const { return chi(norm) == 1; }

IdealRep conjugate(const IdealRep& I) {
  IdealRep out = I;
  if (I.sector == Sector::kPrincipal) {
    out.alpha = canonical_sign(I.alpha.conj());
  } else {
    // I = (beta) Pbar / 7, so conj(I) P = conj(beta) P^2 / 7.
    out.alpha = canonical_sign(divide(I.alpha.conj() * kP2, 7));
  }
  return out;
}

std::string to_text(const GaussClass& g) {
  return std::string(g.sector == Sector::kPrincipal ? "pr" : "np") + ":" + std::to_string(g.d);
}

std::vector<IdealRep> ideals_of_norm(std::uint64_t n) {
  if (n == 0) throw DomainError("ideal norms are positive");
  std::vector<IdealRep> out;
  for (auto a : elements_of_norm(static_cast<std::int64_t>(n))) out.push_back({Sector::kPrincipal, a, n});
  for (auto a : elements_of_norm(static_cast<std::int64_t>(7 * n))) {
    // (beta) = I P with beta in P determines I = (beta) Pbar / 7, and the
    // generator of a principal ideal is unique up to sign.
    if (in_P(a)) out.push_back({Sector::kNonprincipal, a, n});
  }
  return out;
}

std::vector<IdealRep> ideals_below(std::uint64_t bound) {
  std::vector<IdealRep> out;
  for (std::uint64_t n = 1; n < bound; ++n) {
    auto v = ideals_of_norm(n);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

GaussClass gauss_class(const IdealRep& I, std::uint64_t q, Anchor anchor) {
  require_power_of_two(q);
  if (!I.type_a()) throw DomainError("ideal of norm " + std::to_string(I.norm) + " is not of type a");
  if (I.sector == Sector::kPrincipal) return {q, Sector::kPrincipal, principal_label(I.alpha, q)};
  QuadInt beta = I.alpha;
  if (anchor == Anchor::kPbar) {
    // I Pbar = I P (Pbar / P) = (beta (3 - 2 sqrt(-10)) / 7).
    beta = divide(beta * kP2.conj(), 7);
  }
  return {q, Sector::kNonprincipal, principal_label(beta, q)};
}

std::vector<GaussClass> class_power_table(std::uint64_t q) {
  require_power_of_two(q);
  const auto m = static_cast<std::int64_t>(4 * q);
  std::vector<GaussClass> table(4 * q);
  QuadInt x{1, 0};
  for (std::uint64_t j = 0; j < 2 * q; ++j) {
    table[2 * j] = {q, Sector::kPrincipal, principal_label(x, q)};
    x = x * kP2;
    x = {mod(x.b, m), mod(x.c, m)};
  }
  for (std::uint64_t j = 0; j < 2 * q; ++j) {
    table[2 * j + 1] = {q, Sector::kNonprincipal, table[(2 * j + 2) % (4 * q)].d};
  }
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (std::size_t k = 0; k < i; ++k) {
      if (table[i] == table[k]) throw InternalError("powers of C repeat before 4q: class group is not cyclic of order 4q");
    }
  }
  return table;
}

std::uint64_t class_exponent(const std::vector<GaussClass>& table, const GaussClass& g) {
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i] == g) return i;
  }
  throw InternalError("class " + to_text(g) + " is not a power of C");
}

std::vector<IntSeries> theta_all(std::uint64_t q, std::size_t prec) {
  const auto table = class_power_table(q);
  std::map<std::pair<Sector, std::uint64_t>, std::uint64_t> index;
  for (std::size_t i = 0; i < table.size(); ++i) index[{table[i].sector, table[i].d}] = i;
  std::vector<IntSeries> out(4 * q, IntSeries(prec, 0));
  for (const auto& I : ideals_below(prec)) {
    if (!I.type_a()) continue;
    const GaussClass g = gauss_class(I, q);
    out[index.at({g.sector, g.d})][I.norm] += 1;
  }
  return out;
}

BitSeries theta(std::uint64_t i, std::uint64_t q, std::size_t prec) {
  require_power_of_two(q);
  i %= 4 * q;
  const auto all = theta_all(q, prec);
  const IntSeries& t = all[i];
  std::vector<std::uint64_t> exps;
  for (std::size_t n = 0; n < t.size(); ++n) {
    std::int64_t c = t[n];
    if (i == 2 * q) {
      if (c % 2 != 0) throw InternalError("theta(AMB) has an odd coefficient at exponent " + std::to_string(n));
      c /= 2;
    }
    if (c % 2 != 0) exps.push_back(n);
  }
  return BitSeries::from_exponents(exps, prec);
}

IntSeries apply_Tp_integral(const IntSeries& f, std::uint64_t p) {
  const HeckePrime hp(p);
  if (hp.chi_value() != 1) throw DomainError("the integral T_p is defined for chi(p) = 1");
  const std::int64_t sign = legendre(-10, p);
  IntSeries out((f.size() + p - 1) / p, 0);
  for (std::size_t n = 0; n < out.size(); ++n) {
    out[n] = f[n * p];
    if (n % p == 0) out[n] += sign * f[n / p];
  }
  return out;
}

std::size_t di_default_prec(std::uint64_t q) { return 160 * q * q + 64; }

std::vector<Combination> di_basis(std::uint64_t q, std::size_t prec) {
  require_power_of_two(q);
  if (prec == 0) prec = di_default_prec(q);
  if (prec < 80 * q * q + 2) throw PrecisionError("di_basis needs a window above 80 q^2");
  const auto all = theta_all(q, prec);
  std::vector<Combination> out;
  for (std::uint64_t i = 0; i < 2 * q; ++i) {
    std::vector<std::uint64_t> exps;
    for (std::size_t n = 0; n < prec; ++n) {
      if (all[i][n] % 2 != 0) exps.push_back(n);
    }
    Combination c;
    try {
      c = decompose_W(BitSeries::from_exponents(exps, prec));
    } catch (const NotInWError& e) {
      throw InternalError("alpha_" + std::to_string(i) + " is not in W: " + e.what());
    }
    if (c.max_index() >= 40 * q * q) {
      throw InternalError("alpha_" + std::to_string(i) + " has index " + std::to_string(c.max_index()) +
                          " beyond 40 q^2");
    }
    out.push_back(std::move(c));
  }
  if (rank_of(out) != out.size()) throw InternalError("the alpha_i are linearly dependent");
  return out;
}

std::size_t ChebPoly::degree() const {
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i]) return i;
  }
  return 0;
}

ChebPoly cheb_U(std::uint64_t n) {
  std::vector<bool> prev;            // U_0
  std::vector<bool> cur{false, true};  // U_1
  if (n == 0) return {0, prev};
  for (std::uint64_t k = 1; k < n; ++k) {
    std::vector<bool> next(cur.size() + 1, false);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] = cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] = next[i] != prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  while (!cur.empty() && !cur.back()) cur.pop_back();
  return {n, cur};
}

std::string to_text(const ChebPoly& u) {
  std::string out;
  for (std::size_t i = 0; i < u.coeffs.size(); ++i) {
    if (!u.coeffs[i]) continue;
    if (!out.empty()) out += " + ";
    out += i == 0 ? "1" : i == 1 ? "Y" : "Y^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

LatticeCounts lattice_counts(std::uint64_t n) {
  LatticeCounts lc;
  lc.n = n;
  const auto target = static_cast<std::int64_t>(6 * n);
  for (std::int64_t b = -isqrt(target / 5); 5 * b * b <= target; ++b) {
    const std::int64_t rest = target - 5 * b * b;
    const std::int64_t a = isqrt(rest);
    if (a * a != rest) continue;
    for (std::int64_t s : {a, -a}) {
      if (mod(s - b, 3) == 0) ++lc.congruent_mod3;
      if (mod(s, 6) == 1 && mod(b, 6) == 1) ++lc.both_one_mod6;
      if (a == 0) break;
    }
  }
  return lc;
}

std::optional<ParityFailure> lattice_parity_check(std::uint64_t nmax) {
  auto is_square = [](std::uint64_t m) {
    const auto r = static_cast<std::uint64_t>(isqrt(static_cast<std::int64_t>(m)));
    return r * r == m;
  };
  for (std::uint64_t n = 1; n <= nmax; ++n) {
    const LatticeCounts lc = lattice_counts(n);
    const bool special = is_square(n) || (n % 5 == 0 && is_square(n / 5));
    if (lc.congruent_mod3 % 4 != (special ? 2u : 0u)) return ParityFailure{n, "count with a = b mod 3, mod 4"};
    const bool odd_special = n % 2 == 1 && special;
    if ((lc.both_one_mod6 % 2 == 1) != odd_special) return ParityFailure{n, "parity of count with a = b = 1 mod 6"};
  }
  return std::nullopt;
}

}  // namespace mfmod2
