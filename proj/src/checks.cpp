#include "mfmod2/checks.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "mfmod2/bitseries.hpp"
#include "mfmod2/code.hpp"
#include "mfmod2/errors.hpp"
#include "mfmod2/forms.hpp"
#include "mfmod2/gf2matrix.hpp"
#include "mfmod2/hecke.hpp"
#include "mfmod2/quadideals.hpp"
#include "mfmod2/structure.hpp"

namespace mfmod2 {

namespace {

using std::to_string;

constexpr std::uint64_t kSeed = 0x5eed2026;

BitSeries random_series(std::mt19937_64& rng, std::size_t prec) {
  std::vector<BitSeries::Word> words((prec + 63) / 64);
  for (auto& w : words) w = rng();
  return BitSeries::from_words(std::move(words), prec);
}

std::string where(std::string_view what, std::optional<std::uint64_t> exponent) {
  return std::string(what) + (exponent ? " first differs at x^" + to_string(*exponent) : " window too small");
}

bool same_on(const BitSeries& f, const BitSeries& g, std::size_t min_window) {
  return agree(f, g) && std::min(f.prec(), g.prec()) >= min_window;
}

std::vector<std::uint64_t> indices_below(std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t k = 1; k < bound; k += 2) {
    if (k % 5 != 0) out.push_back(k);
  }
  return out;
}

const std::array<std::uint64_t, 8> kHeckePrimes = {3, 7, 11, 13, 17, 19, 23, 29};

// ---------------------------------------------------------------------------
// series

CheckOutcome series_ring_laws(const CheckContext&) {
  std::mt19937_64 rng(kSeed);
  const std::size_t n = 1024;
  for (int trial = 0; trial < 20; ++trial) {
    const BitSeries f = random_series(rng, n);
    const BitSeries g = random_series(rng, n);
    const BitSeries h = random_series(rng, n);
    if (!(f + f).is_zero()) return CheckOutcome::fail("f + f != 0 in trial " + to_string(trial));
    if (f + g != g + f || (f + g) + h != f + (g + h)) return CheckOutcome::fail("add law, trial " + to_string(trial));
    if (!agree(f * g, g * f)) return CheckOutcome::fail("mul not commutative, trial " + to_string(trial));
    if (!agree((f * g) * h, f * (g * h))) return CheckOutcome::fail("mul not associative, trial " + to_string(trial));
    if (!agree(f * (g + h), f * g + f * h)) return CheckOutcome::fail("mul not distributive, trial " + to_string(trial));
    if (!agree(square(f), f * f)) return CheckOutcome::fail("square != f*f, trial " + to_string(trial));
    // g with a unit part divides g*h exactly.
    const BitSeries unit = g + (g.coeff(0) ? BitSeries(n) : BitSeries::one(n));
    const BitSeries prod = unit * h;
    if (!agree(unit * divide_exact(prod, unit), prod)) return CheckOutcome::fail("g * (f/g) != f, trial " + to_string(trial));
    const BitSeries small = f.truncated(40);
    if (substitute_power(substitute_power(small, 3), 5) != substitute_power(small, 15)) {
      return CheckOutcome::fail("substitute_power does not compose, trial " + to_string(trial));
    }
  }
  return CheckOutcome::ok("20 random triples at window 1024");
}

CheckOutcome series_precision_soundness(const CheckContext&) {
  auto pipeline = [](std::size_t prec) {
    const BitSeries D = gen(Named::kD, prec);
    const BitSeries G = gen(Named::kG, prec);
    return std::array<BitSeries, 3>{divide_exact(power(D, 8), G), power(D, 15) + power(G, 4) * power(D, 3),
                                    apply_Tp(gen_Dk(47, prec), HeckePrime(3))};
  };
  const auto low = pipeline(2000);
  const auto high = pipeline(8000);
  for (std::size_t i = 0; i < low.size(); ++i) {
    if (low[i].prec() > high[i].prec() || !agree(low[i], high[i])) {
      return CheckOutcome::fail("pipeline " + to_string(i) + " changes a reported coefficient at higher precision");
    }
  }
  return CheckOutcome::ok("3 pipelines at windows 2000 and 8000");
}

// ---------------------------------------------------------------------------
// forms

CheckOutcome forms_identities(const CheckContext& ctx) {
  const IdentityReport rep = verify_identities(ctx.prec);
  for (const auto& r : rep.results) {
    if (!r.passed) return CheckOutcome::fail(where(r.name, r.first_bad));
  }
  return CheckOutcome::ok(to_string(rep.results.size()) + " identities at window " + to_string(ctx.prec));
}

CheckOutcome forms_dk_shape(const CheckContext&) {
  for (auto k : indices_below(1000)) {
    const BitSeries d = gen_Dk(k, 4000);
    if (d.valuation() != k) return CheckOutcome::fail("D_" + to_string(k) + " does not start at x^" + to_string(k));
    for (auto e : d.exponents()) {
      if (e % 40 != k % 40 && e % 40 != 9 * k % 40) {
        return CheckOutcome::fail("D_" + to_string(k) + " has the exponent " + to_string(e));
      }
    }
  }
  return CheckOutcome::ok("k < 1000");
}

CheckOutcome forms_decompose(const CheckContext&) {
  for (auto k : indices_below(1000)) {
    if (decompose_W(gen_Dk(k, 2 * k + 2)) != Combination{k}) {
      return CheckOutcome::fail("decompose_W(D_" + to_string(k) + ") != {" + to_string(k) + "}");
    }
  }
  std::mt19937_64 rng(kSeed);
  const auto pool = indices_below(400);
  for (int trial = 0; trial < 50; ++trial) {
    Combination a;
    Combination b;
    for (int i = 0; i < 6; ++i) {
      a.toggle(pool[rng() % pool.size()]);
      b.toggle(pool[rng() % pool.size()]);
    }
    const std::size_t prec = 1024;
    const Combination sum = decompose_W(series_of(a, prec) + series_of(b, prec));
    if (sum != a + b) return CheckOutcome::fail("decompose_W not linear on " + to_text(a) + " + " + to_text(b));
  }
  return CheckOutcome::ok("round trip for k < 1000, linearity on 50 random pairs");
}

CheckOutcome forms_pr_jk(const CheckContext&) {
  for (std::uint64_t k = 1; k < 200; k += 2) {
    if (k % 5 == 0) continue;
    const std::size_t prec = 4 * k + 64;
    if (!agree(project(gen_Jk(k, prec), Projection::kPr), gen_Dk(k, prec))) {
      return CheckOutcome::fail("pr(J_" + to_string(k) + ") != D_" + to_string(k));
    }
  }
  return CheckOutcome::ok("k < 200");
}

// ---------------------------------------------------------------------------
// hecke

CheckOutcome hecke_commute(const CheckContext&) {
  std::mt19937_64 rng(kSeed);
  const std::array<std::uint64_t, 6> primes = {3, 7, 11, 13, 17, 19};
  for (std::size_t i = 0; i < primes.size(); ++i) {
    for (std::size_t j = i + 1; j < primes.size(); ++j) {
      const BitSeries f = random_series(rng, 10000);
      const HeckePrime p(primes[i]);
      const HeckePrime q(primes[j]);
      const auto pq = apply_Tp(apply_Tp(f, p), q);
      const auto qp = apply_Tp(apply_Tp(f, q), p);
      if (!agree(pq, qp)) {
        return CheckOutcome::fail("T" + to_string(primes[i]) + " T" + to_string(primes[j]) + " differs at x^" +
                                  to_string(*first_difference(pq, qp)));
      }
    }
  }
  return CheckOutcome::ok("primes <= 19 on random series at window 10000");
}

CheckOutcome hecke_grading_descent(const CheckContext&) {
  for (auto p : kHeckePrimes) {
    const Operator op = Operator::hecke(p);
    for (auto k : indices_below(500)) {
      const Combination img = Tp_on_Dk(HeckePrime(p), k);
      if (!img.empty() && img.max_index() >= k) {
        return CheckOutcome::fail("T" + to_string(p) + "(D_" + to_string(k) + ") = " + to_text(img) + " is not lower");
      }
      if (!op.respects_grading(k, img)) {
        return CheckOutcome::fail("T" + to_string(p) + "(D_" + to_string(k) + ") = " + to_text(img) +
                                  " breaks the mod-40 grading");
      }
      for (auto i : img.indices()) {
        if (chi(i) != chi(p) * chi(k)) return CheckOutcome::fail("character of D_" + to_string(i) + " in T" + to_string(p) + "(D_" + to_string(k) + ")");
      }
    }
  }
  return CheckOutcome::ok("p <= 29, k < 500");
}

CheckOutcome hecke_level3_twist(const CheckContext&) {
  std::mt19937_64 rng(kSeed);
  const std::size_t n = 6000;
  const HeckePrime t3(3);
  const BitSeries G = gen(Named::kG, n);
  const BitSeries G4 = power(G, 4);
  const BitSeries G16 = power(G, 16);
  for (int trial = 0; trial < 100; ++trial) {
    const BitSeries u = random_series(rng, n);
    const BitSeries lhs = apply_Tp(G16 * u, t3);
    const BitSeries rhs = G16 * apply_Tp(u, t3) + G4 * apply_Tp(G4 * u, t3);
    if (!same_on(lhs, rhs, n / 3)) return CheckOutcome::fail(where("level-3 twist, trial " + to_string(trial), first_difference(lhs, rhs)));
  }
  return CheckOutcome::ok("100 random series at window 6000");
}

CheckOutcome hecke_level11_twist(const CheckContext&) {
  std::mt19937_64 rng(kSeed);
  const std::size_t n = 11 * 1024;
  const HeckePrime t11(11);
  const BitSeries G = gen(Named::kG, n);
  std::vector<BitSeries> g2{BitSeries::one(n)};  // G^(2i)
  for (std::size_t i = 1; i <= 12; ++i) g2.push_back(g2.back() * square(G));
  const std::array<std::pair<int, int>, 9> pairs = {{{12, 0}, {8, 4}, {4, 8}, {6, 2}, {2, 6}, {9, 1}, {1, 9}, {3, 3}, {1, 1}}};
  for (int trial = 0; trial < 100; ++trial) {
    const BitSeries u = random_series(rng, n);
    const BitSeries lhs = apply_Tp(u * g2[12], t11);
    BitSeries rhs(n);
    for (auto [i, j] : pairs) rhs = rhs + g2[i] * apply_Tp(u * g2[j], t11);
    if (!same_on(lhs, rhs, n / 11)) return CheckOutcome::fail(where("level-11 twist, trial " + to_string(trial), first_difference(lhs, rhs)));
  }
  return CheckOutcome::ok("100 random series at window 11264");
}

CheckOutcome hecke_t3_recursion(const CheckContext&) {
  const HeckePrime t3(3);
  for (auto n : indices_below(320)) {
    const std::size_t prec = 3 * 8 * (n + 80);
    const BitSeries G = gen(Named::kG, prec);
    const BitSeries lhs = apply_Tp(gen_Dk(n + 80, prec), t3);
    const BitSeries rhs = power(G, 16) * apply_Tp(gen_Dk(n, prec), t3) + power(G, 4) * apply_Tp(gen_Dk(n + 20, prec), t3);
    if (!same_on(lhs, rhs, prec / 3)) return CheckOutcome::fail(where("T3 recursion at n = " + to_string(n), first_difference(lhs, rhs)));
  }
  return CheckOutcome::ok("n < 320");
}

// ---------------------------------------------------------------------------
// tables

CheckOutcome tables_t3(const CheckContext&) {
  const std::vector<std::pair<std::uint64_t, Combination>> expected = {
      {1, {}},        {3, {1}},           {7, {}},        {9, {3}},          {21, {7}},      {23, {21}},
      {27, {9}},      {29, {23}},         {41, {}},       {43, {41}},        {47, {21}},     {49, {43, 27}},
      {61, {47, 23}}, {63, {61, 29, 21}}, {67, {49, 41}}, {69, {63, 47, 23}},
  };
  for (const auto& [k, want] : expected) {
    const Combination got = Tp_on_Dk(HeckePrime(3), k);
    if (got != want) return CheckOutcome::fail("T3(D_" + to_string(k) + ") = " + to_text(got) + ", expected " + to_text(want));
  }
  return CheckOutcome::ok("16 values");
}

CheckOutcome tables_t11(const CheckContext&) {
  const std::vector<std::pair<std::uint64_t, Combination>> expected = {
      {11, {1}},   {31, {21}},      {51, {41, 9}},     {71, {61, 29}},        {91, {81, 41, 9}},
      {111, {101, 61, 21}},
      {19, {9}},   {39, {29}},      {59, {49, 9}},     {79, {69, 29}},        {99, {89, 49, 9}},
      {119, {109, 69, 29, 21}},
      {13, {7}},   {33, {27, 3}},   {53, {47}},        {73, {67, 43, 27}},    {93, {87, 47}},
      {113, {107, 83, 67, 43, 27}},
      {17, {3}},   {37, {23, 7}},   {57, {43}},        {77, {63, 47, 23, 7}}, {97, {83, 43}},
      {117, {103, 87, 63, 47, 23}},
      {9, {}},     {29, {}},        {49, {19, 11}},    {69, {39, 31}},        {89, {11}},
      {109, {39}},
  };
  for (const auto& [k, want] : expected) {
    const Combination got = Tp_on_Dk(HeckePrime(11), k);
    if (got != want) return CheckOutcome::fail("T11(D_" + to_string(k) + ") = " + to_text(got) + ", expected " + to_text(want));
  }
  return CheckOutcome::ok("30 values");
}

CheckOutcome tables_oracle(const CheckContext&) {
  std::size_t n = 0;
  for (std::uint64_t k = 1; k < 2000; k += 2) {
    if (chi(k) != 1) continue;
    const Combination want = tk_oracle(k);
    const Combination got = Tp_on_Dk(HeckePrime(3), k);
    if (got != want) return CheckOutcome::fail("k = " + to_string(k) + ": series gives " + to_text(got) + ", recursion gives " + to_text(want));
    ++n;
  }
  return CheckOutcome::ok(to_string(n) + " indices below 2000");
}

// ---------------------------------------------------------------------------
// code

CheckOutcome code_round_trip(const CheckContext&) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t a = 0; a < 64; ++a) {
    for (std::uint64_t b = 0; b < 64; ++b) {
      const std::uint64_t k = pair_to_k({a, b});
      if (chi(k) != 1) return CheckOutcome::fail("pair_to_k(" + to_string(a) + "," + to_string(b) + ") = " + to_string(k) + " has the wrong residue");
      if (k_to_pair(k) != PairCode{a, b}) return CheckOutcome::fail("k_to_pair(pair_to_k(" + to_string(a) + "," + to_string(b) + ")) differs");
      if (!seen.insert(k).second) return CheckOutcome::fail("pair_to_k repeats " + to_string(k));
    }
  }
  return CheckOutcome::ok("a, b < 64");
}

CheckOutcome code_monotone(const CheckContext&) {
  for (std::uint64_t b = 0; b < 32; ++b) {
    const std::uint64_t j = pair_to_k({0, b});
    for (std::uint64_t c = 0; c < 32; ++c) {
      for (std::uint64_t d = 0; d < 32; ++d) {
        if (precedes({c, d}, {0, b}) && pair_to_k({c, d}) >= j) {
          return CheckOutcome::fail("(" + to_string(c) + "," + to_string(d) + ") precedes (0," + to_string(b) + ") but has index " + to_string(pair_to_k({c, d})));
        }
      }
    }
  }
  return CheckOutcome::ok("all pairs with coordinates < 32");
}

CheckOutcome code_t3_lowers(const CheckContext&) {
  for (std::uint64_t s = 0; s < 12; ++s) {
    for (std::uint64_t a = 0; a <= s; ++a) {
      const PairCode ab{a, s - a};
      const Combination img = apply_X(Combination{pair_to_k(ab)});
      std::vector<PairCode> terms;
      for (auto k : img.indices()) terms.push_back(k_to_pair(k));
      for (auto t : terms) {
        if (t.a + t.b >= s) return CheckOutcome::fail("T3 of (" + to_string(ab.a) + "," + to_string(ab.b) + ")* has a term of the same total degree");
      }
      if (a > 0) {
        const PairCode lead{a - 1, ab.b};
        const auto top = std::max_element(terms.begin(), terms.end(), PrecedenceLess{});
        if (top == terms.end() || *top != lead) {
          return CheckOutcome::fail("T3 of (" + to_string(ab.a) + "," + to_string(ab.b) + ")* does not lead with (" + to_string(lead.a) + "," + to_string(lead.b) + ")*");
        }
      }
    }
  }
  return CheckOutcome::ok("a + b < 12");
}

// ---------------------------------------------------------------------------
// ideals and DI(q)

std::vector<std::uint64_t> primes_with(bool split, std::size_t count) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 3; out.size() < count; p += 2) {
    if (is_prime(p) && chi(p) == 1 && (legendre(-10, p) == 1) == split) out.push_back(p);
  }
  return out;
}

CheckOutcome ideals_conjugation(const CheckContext& ctx) {
  const auto table = class_power_table(ctx.q);
  const std::uint64_t order = 4 * ctx.q;
  for (const auto& I : ideals_below(2000)) {
    const IdealRep J = conjugate(I);
    const auto same_norm = ideals_of_norm(I.norm);
    if (std::find(same_norm.begin(), same_norm.end(), J) == same_norm.end()) {
      return CheckOutcome::fail("conjugate of an ideal of norm " + to_string(I.norm) + " is missing");
    }
    if (!I.type_a()) continue;
    const auto i = class_exponent(table, gauss_class(I, ctx.q));
    const auto j = class_exponent(table, gauss_class(J, ctx.q));
    if ((i + j) % order != 0) return CheckOutcome::fail("classes C^" + to_string(i) + " and C^" + to_string(j) + " of conjugates at norm " + to_string(I.norm));
  }
  return CheckOutcome::ok("norms < 2000");
}

CheckOutcome ideals_anchor(const CheckContext& ctx) {
  std::map<std::uint64_t, std::uint64_t> forward;
  std::map<std::uint64_t, std::uint64_t> backward;
  for (const auto& I : ideals_below(3000)) {
    if (I.sector != Sector::kNonprincipal || !I.type_a()) continue;
    const auto a = gauss_class(I, ctx.q, Anchor::kP).d;
    const auto b = gauss_class(I, ctx.q, Anchor::kPbar).d;
    const auto it = forward.emplace(a, b).first;
    const auto jt = backward.emplace(b, a).first;
    if (it->second != b || jt->second != a) {
      return CheckOutcome::fail("anchors P and conj(P) split the nonprincipal classes differently at norm " + to_string(I.norm));
    }
  }
  if (forward.size() != 2 * ctx.q) return CheckOutcome::fail("only " + to_string(forward.size()) + " nonprincipal classes seen");
  return CheckOutcome::ok("norms < 3000");
}

struct DiData {
  std::uint64_t q;
  std::vector<Combination> alpha;  // alpha_0 .. alpha_{2q-1}
  std::vector<IntSeries> theta;    // theta_0 .. theta_{4q-1}
};

DiData di_data(std::uint64_t q) {
  const std::size_t prec = di_default_prec(q);
  return {q, di_basis(q, prec), theta_all(q, prec)};
}

std::vector<std::uint64_t> q_levels(const CheckContext& ctx) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 1; q <= ctx.q; q *= 2) out.push_back(q);
  return out;
}

CheckOutcome di_theta_structure(const CheckContext& ctx) {
  for (auto q : q_levels(ctx)) {
    const DiData d = di_data(q);
    if (d.alpha.size() != 2 * q) return CheckOutcome::fail("dim DI(" + to_string(q) + ") != 2q");
    if (d.alpha[0] != Combination{1}) return CheckOutcome::fail("alpha_0 != D at q = " + to_string(q));
    const auto& amb = d.theta[2 * q];
    std::vector<std::uint64_t> exps;
    for (std::size_t n = 0; n < amb.size(); ++n) {
      if (amb[n] % 2 != 0) return CheckOutcome::fail("theta(AMB) odd at x^" + to_string(n) + ", q = " + to_string(q));
      if ((amb[n] / 2) % 2 != 0) exps.push_back(n);
    }
    if (decompose_W(BitSeries::from_exponents(exps, amb.size())) != Combination{40 * q * q + 1}) {
      return CheckOutcome::fail("theta(AMB)/2 is not D_" + to_string(40 * q * q + 1));
    }
    for (std::uint64_t i = 1; i < 2 * q; ++i) {
      if (d.theta[i] != d.theta[4 * q - i]) return CheckOutcome::fail("theta_" + to_string(i) + " != theta_" + to_string(4 * q - i));
    }
  }
  return CheckOutcome::ok("q up to " + to_string(ctx.q));
}

CheckOutcome di_tridiagonal(const CheckContext& ctx) {
  for (auto q : q_levels(ctx)) {
    const DiData d = di_data(q);
    auto alpha = [&](std::uint64_t i) { return i < 2 * q ? d.alpha[i] : Combination{}; };
    for (std::uint64_t i = 1; i < 2 * q; ++i) {
      if (apply_Y(alpha(i)) != alpha(i - 1) + alpha(i + 1)) return CheckOutcome::fail("T7(alpha_" + to_string(i) + ") at q = " + to_string(q));
    }
    if (apply_Y(Combination{40 * q * q + 1}) != alpha(2 * q - 1)) return CheckOutcome::fail("T7(D_{40q^2+1}) != alpha_{2q-1} at q = " + to_string(q));
    const std::uint64_t n = 4 * q;
    for (std::uint64_t i = 0; i < n; ++i) {
      const IntSeries lhs = apply_Tp_integral(d.theta[i], 7);
      for (std::size_t e = 0; e < lhs.size(); ++e) {
        if (lhs[e] != d.theta[(i + 1) % n][e] + d.theta[(i + n - 1) % n][e]) {
          return CheckOutcome::fail("integral T7 theta_" + to_string(i) + " at x^" + to_string(e) + ", q = " + to_string(q));
        }
      }
    }
  }
  return CheckOutcome::ok("q up to " + to_string(ctx.q));
}

CheckOutcome di_nilpotency(const CheckContext& ctx) {
  for (auto q : q_levels(ctx)) {
    const DiData d = di_data(q);
    Combination v = d.alpha[2 * q - 1];
    for (std::uint64_t s = 0; s + 1 < 2 * q; ++s) {
      if (v.empty()) return CheckOutcome::fail("Y^" + to_string(s) + " alpha_{2q-1} = 0 early at q = " + to_string(q));
      v = apply_Y(v);
    }
    if (v != Combination{1}) return CheckOutcome::fail("Y^{2q-1} alpha_{2q-1} != D at q = " + to_string(q));
    if (!apply_Y(v).empty()) return CheckOutcome::fail("Y^{2q} alpha_{2q-1} != 0 at q = " + to_string(q));
    // Every alpha_i is U_{2q-i}(Y) applied to D_{40q^2+1}.
    for (std::uint64_t i = 1; i <= 2 * q; ++i) {
      const ChebPoly u = cheb_U(i);
      Combination acc;
      Combination power{40 * q * q + 1};
      for (std::size_t e = 0; e < u.coeffs.size(); ++e) {
        if (u.coeffs[e]) acc += power;
        power = apply_Y(power);
      }
      if (acc != d.alpha[2 * q - i]) return CheckOutcome::fail("U_" + to_string(i) + "(Y) D_{40q^2+1} != alpha_" + to_string(2 * q - i) + " at q = " + to_string(q));
    }
  }
  return CheckOutcome::ok("q up to " + to_string(ctx.q));
}

CheckOutcome ideals_inert(const CheckContext& ctx) {
  const auto primes = primes_with(false, 3);
  const std::size_t prec = 16000;
  const auto theta = theta_all(ctx.q, prec);
  for (auto p : primes) {
    for (std::size_t i = 0; i < theta.size(); ++i) {
      const IntSeries img = apply_Tp_integral(theta[i], p);
      for (std::size_t e = 0; e < img.size(); ++e) {
        if (img[e] != 0) return CheckOutcome::fail("T" + to_string(p) + " theta_" + to_string(i) + " nonzero at x^" + to_string(e));
      }
    }
  }
  return CheckOutcome::ok("inert primes " + to_string(primes[0]) + ", " + to_string(primes[1]) + ", " + to_string(primes[2]));
}

CheckOutcome ideals_split(const CheckContext& ctx) {
  const auto primes = primes_with(true, 3);
  const std::size_t prec = 16000;
  const auto table = class_power_table(ctx.q);
  const auto theta = theta_all(ctx.q, prec);
  const std::uint64_t n = 4 * ctx.q;
  for (auto p : primes) {
    const auto above = ideals_of_norm(p);
    if (above.size() != 2) return CheckOutcome::fail(to_string(p) + " does not have two prime ideals above it");
    const auto j = class_exponent(table, gauss_class(above[0], ctx.q));
    for (std::uint64_t i = 0; i < n; ++i) {
      const IntSeries img = apply_Tp_integral(theta[i], p);
      for (std::size_t e = 0; e < img.size(); ++e) {
        if (img[e] != theta[(i + j) % n][e] + theta[(i + n - j) % n][e]) {
          return CheckOutcome::fail("T" + to_string(p) + " theta_" + to_string(i) + " at x^" + to_string(e));
        }
      }
    }
  }
  return CheckOutcome::ok("split primes " + to_string(primes[0]) + ", " + to_string(primes[1]) + ", " + to_string(primes[2]));
}

CheckOutcome ideals_class_group(const CheckContext& ctx) {
  for (std::uint64_t q = 1; q <= 4 * ctx.q; q *= 2) {
    const auto table = class_power_table(q);
    std::set<std::pair<int, std::uint64_t>> seen;
    for (const auto& g : table) {
      if (g.d >= 2 * q) return CheckOutcome::fail("label " + to_text(g) + " out of range at q = " + to_string(q));
      seen.insert({static_cast<int>(g.sector), g.d});
    }
    if (seen.size() != 4 * q) return CheckOutcome::fail("powers of C repeat at q = " + to_string(q));
  }
  return CheckOutcome::ok("q up to " + to_string(4 * ctx.q));
}

CheckOutcome ideals_chebyshev(const CheckContext&) {
  auto sq = [](const ChebPoly& u) {
    std::vector<bool> out(u.coeffs.empty() ? 0 : 2 * u.coeffs.size() - 1);
    for (std::size_t i = 0; i < u.coeffs.size(); ++i) out[2 * i] = u.coeffs[i];
    return out;
  };
  if (!cheb_U(0).coeffs.empty() || to_text(cheb_U(1)) != "Y") return CheckOutcome::fail("U_0 or U_1");
  for (std::uint64_t n = 1; n < 200; ++n) {
    const ChebPoly u = cheb_U(n);
    if (u.coeffs.empty() || u.coeffs[0]) return CheckOutcome::fail("Y does not divide U_" + to_string(n));
    if (cheb_U(2 * n).coeffs != sq(u)) return CheckOutcome::fail("U_" + to_string(2 * n) + " != U_" + to_string(n) + "^2");
  }
  return CheckOutcome::ok("n < 200");
}

CheckOutcome ideals_lattice_parity(const CheckContext&) {
  if (auto f = lattice_parity_check(2000)) return CheckOutcome::fail(f->claim + " fails at n = " + to_string(f->n));
  return CheckOutcome::ok("n <= 2000");
}

// ---------------------------------------------------------------------------
// structure

bool inside(const Combination& c, const std::vector<std::uint64_t>& space) {
  return std::all_of(c.indices().begin(), c.indices().end(),
                     [&](std::uint64_t k) { return std::binary_search(space.begin(), space.end(), k); });
}

CheckOutcome structure_di_kernel(const CheckContext& ctx) {
  for (auto q : q_levels(ctx)) {
    const auto space = space_Waq(q);
    const Gf2Matrix X = op_matrix(Operator::hecke(3), space);
    const Gf2Matrix Y = op_matrix(Operator::hecke(7), space);
    const auto ker = kernel(X);
    if (ker.size() != 2 * q) return CheckOutcome::fail("kernel of X on W_a(" + to_string(q) + ") has dimension " + to_string(ker.size()));
    auto both = ker;
    const auto di = di_basis(q);
    both.insert(both.end(), di.begin(), di.end());
    if (rank_of(both) != 2 * q) return CheckOutcome::fail("kernel of X differs from DI(" + to_string(q) + ")");
    for (const auto& a : di) {
      if (!apply_X(a).empty()) return CheckOutcome::fail("X does not kill " + to_text(a));
    }
    const auto common = kernel(X.stacked(Y));
    if (common.size() != 1 || common[0] != Combination{1}) return CheckOutcome::fail("common kernel of X, Y on W_a(" + to_string(q) + ") is not {0, D}");
  }
  return CheckOutcome::ok("q up to " + to_string(ctx.q));
}

CheckOutcome structure_di_filtration(const CheckContext& ctx) {
  const auto di = di_basis(ctx.q);
  for (std::uint64_t m = 0; m <= 2 * ctx.q; ++m) {
    const auto sm = space_Sm(m);
    std::vector<Combination> all = di;
    for (auto k : sm) all.push_back(Combination{k});
    const std::size_t dim = di.size() + sm.size() - rank_of(all);
    if (dim != m) return CheckOutcome::fail("dim(DI(" + to_string(ctx.q) + ") & S_" + to_string(m) + ") = " + to_string(dim));
  }
  return CheckOutcome::ok("m <= " + to_string(2 * ctx.q));
}

CheckOutcome structure_adapted(const CheckContext& ctx) {
  const auto basis = adapted_basis(ctx.depth);
  if (basis->m(0, 0) != Combination{1}) return CheckOutcome::fail("m_{0,0} != D");
  for (const auto& pc : basis->pairs()) {
    const Combination& m = basis->m(pc);
    const Combination wantX = pc.a > 0 ? basis->m(pc.a - 1, pc.b) : Combination{};
    const Combination wantY = pc.b > 0 ? basis->m(pc.a, pc.b - 1) : Combination{};
    const std::string at = "(" + to_string(pc.a) + "," + to_string(pc.b) + ")";
    if (apply_X(m) != wantX) return CheckOutcome::fail("X m" + at);
    if (apply_Y(m) != wantY) return CheckOutcome::fail("Y m" + at);
    if (!inside(m, space_Sm(pc.a + pc.b + 1))) return CheckOutcome::fail("m" + at + " is not in S_{a+b+1}");
  }
  for (std::uint32_t m = 1; m <= ctx.depth; ++m) {
    std::vector<Combination> block;
    for (const auto& pc : basis->pairs()) {
      if (pc.a + pc.b < m) block.push_back(basis->m(pc));
    }
    if (rank_of(block) != m * (m + 1) / 2) return CheckOutcome::fail("{m_ab : a+b < " + to_string(m) + "} is not a basis of S_" + to_string(m));
  }
  return CheckOutcome::ok("depth " + to_string(ctx.depth) + ", rank " + to_string(ctx.depth * (ctx.depth + 1) / 2));
}

CheckOutcome structure_filtration_maps(const CheckContext&) {
  for (std::uint64_t m = 0; m <= 10; ++m) {
    const auto big = space_Sm(m + 1);
    const auto small = space_Sm(m);
    std::vector<Combination> ximg;
    for (auto k : big) {
      const Combination x = apply_X(Combination{k});
      const Combination y = apply_Y(Combination{k});
      if (!inside(x, small)) return CheckOutcome::fail("X S_" + to_string(m + 1) + " not inside S_" + to_string(m));
      if (!inside(y, small)) return CheckOutcome::fail("Y S_" + to_string(m + 1) + " not inside S_" + to_string(m));
      ximg.push_back(x);
    }
    if (rank_of(ximg) != small.size()) return CheckOutcome::fail("X does not map S_" + to_string(m + 1) + " onto S_" + to_string(m));
  }
  return CheckOutcome::ok("m <= 10");
}

CheckOutcome structure_t11sq_onto(const CheckContext& ctx) {
  const Operator sq = Operator::t11_squared();
  for (std::uint64_t m = 0; m + 2 <= ctx.depth; ++m) {
    const auto big = space_Sm(m + 2);
    const auto small = space_Sm(m);
    std::vector<Combination> img;
    for (auto k : big) {
      img.push_back(sq.apply(Combination{k}));
      if (!inside(img.back(), small)) return CheckOutcome::fail("T11^2 S_" + to_string(m + 2) + " not inside S_" + to_string(m));
    }
    if (rank_of(img) != small.size()) return CheckOutcome::fail("T11^2 does not map S_" + to_string(m + 2) + " onto S_" + to_string(m));
  }
  return CheckOutcome::ok("m + 2 <= " + to_string(ctx.depth));
}

CheckOutcome structure_faithful(const CheckContext& ctx) {
  const auto basis = adapted_basis(ctx.depth);
  for (const auto& ab : basis->pairs()) {
    for (std::uint32_t i = 0; i <= ab.a; ++i) {
      for (std::uint32_t j = 0; j <= ab.b; ++j) {
        const XYPoly u = XYPoly::monomial(i, j, ctx.depth);
        if (u.apply(basis->m(ab)) != basis->m(ab.a - i, ab.b - j)) {
          return CheckOutcome::fail("X^" + to_string(i) + "Y^" + to_string(j) + " m(" + to_string(ab.a) + "," + to_string(ab.b) + ")");
        }
      }
    }
  }
  std::mt19937_64 rng(kSeed);
  for (int trial = 0; trial < 100; ++trial) {
    XYPoly u(ctx.depth);
    for (const auto& pc : basis->pairs()) {
      if (rng() % 3 == 0) u.toggle(static_cast<std::uint32_t>(pc.a), static_cast<std::uint32_t>(pc.b));
    }
    if (u.is_zero()) continue;
    // Pick the precedence-largest monomial; u . m at that pair has D coordinate 1.
    PairCode top{0, 0};
    for (const auto& [i, j] : u.terms()) {
      if (precedes(top, {i, j})) top = {i, j};
    }
    if (!basis->coordinate(u.apply(basis->m(top)), {0, 0})) return CheckOutcome::fail("random polynomial " + to_text(u) + " acts as zero");
  }
  return CheckOutcome::ok("depth " + to_string(ctx.depth));
}

CheckOutcome structure_nb_basis(const CheckContext& ctx) {
  const auto basis = adapted_basis(ctx.depth);
  const auto nb = nb_basis(*basis);
  const HeckePrime t11(11);
  for (const auto& [pc, n] : nb) {
    const std::string at = "(" + to_string(pc.a) + "," + to_string(pc.b) + ")";
    for (auto k : n.indices()) {
      if (chi(k) != -1) return CheckOutcome::fail("n" + at + " has D_" + to_string(k) + " outside W_b");
    }
    if (apply_Tp(n, t11) != basis->m(pc)) return CheckOutcome::fail("T11 n" + at + " != m" + at);
    const Combination wantX = pc.a > 0 ? nb.at({pc.a - 1, pc.b}) : Combination{};
    const Combination wantY = pc.b > 0 ? nb.at({pc.a, pc.b - 1}) : Combination{};
    if (apply_X(n) != wantX) return CheckOutcome::fail("X n" + at);
    if (apply_Y(n) != wantY) return CheckOutcome::fail("Y n" + at);
  }
  return CheckOutcome::ok(to_string(nb.size()) + " vectors of W_b");
}

// h -> lambda h + T11 h on span{n_ab : a + b < ceil(depth/2)}, where lambda is exact.
CheckOutcome structure_eps_injective(const CheckContext& ctx) {
  const auto basis = adapted_basis(ctx.depth);
  const XYPoly lambda = lambda_series(ctx.depth).lambda;
  const auto nb = nb_basis(*basis);
  std::vector<Combination> cols;
  for (const auto& [pc, n] : nb) {
    if (pc.a + pc.b >= lambda.order()) continue;
    cols.push_back(lambda.apply(n) + apply_Tp(n, HeckePrime(11)));
  }
  if (rank_of(cols) != cols.size()) return CheckOutcome::fail("eps has a kernel on the W_b truncation");
  return CheckOutcome::ok(to_string(cols.size()) + " vectors of W_b");
}

CheckOutcome structure_t11_bijection(const CheckContext&) {
  std::set<std::uint64_t> leads;
  for (std::uint64_t k = 11; k < 1000; k += 2) {
    if (chi(k) != -1) continue;
    const Combination img = Tp_on_Dk(HeckePrime(11), k);
    if (img.max_index() != t11_lead(k)) return CheckOutcome::fail("T11(D_" + to_string(k) + ") leads with D_" + to_string(img.max_index()));
    if (chi(img.max_index()) != 1 || !leads.insert(img.max_index()).second) return CheckOutcome::fail("leading index of T11(D_" + to_string(k) + ") repeats");
    if (t11_lead_inverse(t11_lead(k)) != k) return CheckOutcome::fail("lead map not invertible at " + to_string(k));
  }
  return CheckOutcome::ok(to_string(leads.size()) + " indices below 1000");
}

CheckOutcome structure_summands(const CheckContext& ctx) {
  const auto space = space_Sm(ctx.depth);
  for (const Operator& op : {Operator::hecke(3), Operator::hecke(7), Operator::t11_squared()}) {
    for (auto k : space) {
      if (!op.respects_grading(k, op.apply(Combination{k}))) return CheckOutcome::fail(op.name() + "(D_" + to_string(k) + ") mixes the mod-40 summands");
    }
  }
  return CheckOutcome::ok("T3, T7, T11^2 on S_" + to_string(ctx.depth));
}

CheckOutcome structure_lambda(const CheckContext& ctx) {
  const std::uint32_t depth = std::max<std::uint32_t>(ctx.depth, 8);
  const XYPoly lambda = lambda_series(depth).lambda;
  if (lambda.coeff(0, 0) || !lambda.coeff(1, 0) || !lambda.coeff(0, 1)) return CheckOutcome::fail("lambda = " + to_text(lambda) + " is not X + Y + ...");
  // Squaring is Frobenius, so lambda^2 is known to twice the order.
  XYPoly sq(2 * lambda.order());
  for (const auto& [i, j] : lambda.terms()) sq.toggle(2 * i, 2 * j);
  for (auto k : space_Sm(8)) {
    if (Operator::t11_squared().apply(Combination{k}) != sq.apply(Combination{k})) return CheckOutcome::fail("T11^2(D_" + to_string(k) + ") != lambda^2 D_" + to_string(k));
  }
  return CheckOutcome::ok("lambda = " + to_text(lambda));
}

CheckOutcome structure_express(const CheckContext&) {
  if (to_text(express_hecke(3, 6).element) != "r = X; t = 0") return CheckOutcome::fail("T3 is not X");
  if (to_text(express_hecke(7, 6).element) != "r = Y; t = 0") return CheckOutcome::fail("T7 is not Y");
  for (std::uint64_t p : {11, 13, 17, 19, 23, 29, 31, 37}) express_hecke(p, 5);
  return CheckOutcome::ok("primes up to 37 validated modulo (X,Y)^5");
}

constexpr CheckItem kRegistry[] = {
    {"series.ring-laws", "properties", "ring laws, square, exact division, substitution", series_ring_laws},
    {"series.precision-soundness", "properties", "raising the window never changes reported coefficients", series_precision_soundness},
    {"forms.identities", "identities", "modular equations and projection identities", forms_identities},
    {"forms.dk-shape", "properties", "D_k starts at x^k with exponents k or 9k mod 40", forms_dk_shape},
    {"forms.decompose", "properties", "decomposition round trip and linearity", forms_decompose},
    {"forms.pr-jk", "properties", "pr(J_k) = D_k", forms_pr_jk},
    {"hecke.commute", "properties", "T_p T_q = T_q T_p on random series", hecke_commute},
    {"hecke.grading-descent", "properties", "T_p(D_k) graded mod 40 and below k", hecke_grading_descent},
    {"hecke.level3-twist", "properties", "T3(G^16 u) = G^16 T3(u) + G^4 T3(G^4 u)", hecke_level3_twist},
    {"hecke.level11-twist", "properties", "nine-pair identity for T11(u G^24)", hecke_level11_twist},
    {"hecke.t3-recursion", "properties", "T3(D_{n+80}) = G^16 T3(D_n) + G^4 T3(D_{n+20})", hecke_t3_recursion},
    {"tables.t3", "tables", "the 16 initial values of T3 on D_k", tables_t3},
    {"tables.t11", "tables", "the 30 values of T11 on D_k, k < 120", tables_t11},
    {"tables.t3-oracle", "tables", "T3 from series equals the recursion, k < 2000", tables_oracle},
    {"code.round-trip", "properties", "pair code is a bijection onto k = 1,3,7,9 mod 20", code_round_trip},
    {"code.monotone", "properties", "pairs preceding (0,b) have smaller index", code_monotone},
    {"code.t3-lowers", "properties", "T3 lowers total degree and leads with (a-1,b)", code_t3_lowers},
    {"ideals.conjugation", "properties", "conjugation inverts Gauss classes", ideals_conjugation},
    {"ideals.anchor", "properties", "class partition does not depend on the anchor ideal", ideals_anchor},
    {"ideals.inert", "di", "inert T_p kills every theta series", ideals_inert},
    {"ideals.split", "di", "split T_p moves theta series along the class group", ideals_split},
    {"ideals.class-group", "properties", "powers of C give 4q distinct classes", ideals_class_group},
    {"ideals.chebyshev", "properties", "Y divides U_n and U_2n = U_n^2", ideals_chebyshev},
    {"ideals.lattice-parity", "properties", "parity of lattice point counts on a^2 + 5b^2 = 6n", ideals_lattice_parity},
    {"di.theta-structure", "di", "alpha_0 = D, theta(AMB)/2 = D_{40q^2+1}, alpha_i = alpha_{4q-i}", di_theta_structure},
    {"di.tridiagonal", "di", "T7 alpha_i = alpha_{i-1} + alpha_{i+1}, integral and mod 2", di_tridiagonal},
    {"di.nilpotency", "di", "Y-nilpotency profile and Chebyshev chain", di_nilpotency},
    {"structure.di-kernel", "di", "kernel of X on W_a(q) is DI(q); common kernel is {0, D}", structure_di_kernel},
    {"structure.di-filtration", "structure", "dim(DI & S_m) = m", structure_di_filtration},
    {"structure.adapted", "structure", "adapted basis relations and ranks", structure_adapted},
    {"structure.filtration-maps", "structure", "X maps S_{m+1} onto S_m, Y S_{m+1} inside S_m", structure_filtration_maps},
    {"structure.t11sq-onto", "structure", "T11^2 maps S_{m+2} onto S_m", structure_t11sq_onto},
    {"structure.faithful", "structure", "X, Y act faithfully through the adapted basis", structure_faithful},
    {"structure.nb-basis", "structure", "n_ab in W_b with T11 n_ab = m_ab and the same X, Y relations", structure_nb_basis},
    {"structure.eps-injective", "structure", "h -> lambda h + T11 h has no kernel on W_b", structure_eps_injective},
    {"structure.t11-bijection", "structure", "T11 leading indices give a bijection W_b -> W_a", structure_t11_bijection},
    {"structure.summands", "structure", "operators respect the four mod-40 summands", structure_summands},
    {"structure.lambda", "structure", "lambda = X + Y + ..., T11^2 = lambda^2 on S_8", structure_lambda},
    {"structure.express", "structure", "Hecke operators as elements of O, validated", structure_express},
};

}  // namespace

std::span<const CheckItem> check_registry() { return kRegistry; }

const CheckItem* find_check(std::string_view id) {
  for (const auto& item : kRegistry) {
    if (item.id == id) return &item;
  }
  return nullptr;
}

CheckOutcome run_check(const CheckItem& item, const CheckContext& ctx) {
  try {
    return item.run(ctx);
  } catch (const Error& e) {
    return CheckOutcome::fail(e.what());
  }
}

}  // namespace mfmod2
