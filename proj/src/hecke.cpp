#include "mfmod2/hecke.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "mfmod2/errors.hpp"
#include "mfmod2/forms.hpp"

namespace mfmod2 {

int chi(std::uint64_t n) {
  switch (n % 20) {
    case 1: case 3: case 7: case 9: return 1;
    case 11: case 13: case 17: case 19: return -1;
    default: return 0;
  }
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  // These witnesses are sufficient below 3.3e24.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

int legendre(std::int64_t a, std::uint64_t p) {
  const auto m = static_cast<std::int64_t>(p);
  const auto r = static_cast<std::uint64_t>(((a % m) + m) % m);
  if (r == 0) return 0;
  return powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

HeckePrime::HeckePrime(std::uint64_t p) : p_(p) {
  if (p == 2 || p == 5 || !is_prime(p)) {
    throw DomainError("Hecke operator needs a prime other than 2 and 5, got " + std::to_string(p));
  }
  chi_ = chi(p);
  splits_ = legendre(-10, p) == 1;
}

BitSeries apply_Tp(const BitSeries& f, const HeckePrime& hp) {
  const std::uint64_t p = hp.p();
  const std::size_t prec = (f.prec() + p - 1) / p;
  std::vector<std::uint64_t> exps;
  for (auto e : f.exponents()) {
    if (e % p == 0 && e / p < prec) exps.push_back(e / p);
    if (e < prec / p + 1 && e * p < prec) exps.push_back(e * p);
  }
  return BitSeries::from_exponents(exps, prec);
}

namespace {

bool prime_to_5(std::uint64_t n) { return n % 5 != 0; }
bool chi_plus(std::uint64_t n) { return chi(n) == 1; }
bool chi_minus(std::uint64_t n) { return chi(n) == -1; }

class TpTable {
 public:
  Combination get(const HeckePrime& hp, std::uint64_t k) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (auto it = table_.find({hp.p(), k}); it != table_.end()) return it->second;
    }
    std::size_t window = std::max<std::size_t>(8 * k, 64);
    Combination result;
    while (true) {
      try {
        const BitSeries image = apply_Tp(gen_Dk(k, window * hp.p()), hp);
        result = decompose_W(image);
        break;
      } catch (const InsufficientPrecisionError&) {
        window *= 2;
      } catch (const NotInWError& e) {
        throw InternalError("T_" + std::to_string(hp.p()) + "(D_" + std::to_string(k) +
                            ") left W: " + e.what());
      }
    }
    std::lock_guard<std::mutex> lock(mu_);
    table_.emplace(std::pair{hp.p(), k}, result);
    return result;
  }

 private:
  std::mutex mu_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, Combination> table_;
};

TpTable& tp_table() {
  static TpTable table;
  return table;
}

}  // namespace

BitSeries project(const BitSeries& f, Projection which) {
  switch (which) {
    case Projection::kPr: return mask_exponents(f, prime_to_5);
    case Projection::kPa: return mask_exponents(f, chi_plus);
    case Projection::kPb: return mask_exponents(f, chi_minus);
  }
  throw DomainError("unknown projection");
}

Combination Tp_on_Dk(const HeckePrime& p, std::uint64_t k) {
  if (!valid_index(k)) throw DomainError("D_k requires gcd(k,10) = 1, got k = " + std::to_string(k));
  return tp_table().get(p, k);
}

Combination apply_Tp(const Combination& c, const HeckePrime& p) {
  if (c.family() != Family::kD) throw DomainError("Hecke action on combinations is defined in the D basis");
  Combination out;
  for (auto k : c.indices()) out += Tp_on_Dk(p, k);
  return out;
}

}  // namespace mfmod2
