#include "mfmod2/forms.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <numeric>
#include <unordered_map>

#include "mfmod2/errors.hpp"

namespace mfmod2 {

namespace {

// Sum of x^(m * n^2) over n >= 1 passing `keep`.
template <class Pred>
std::vector<std::uint64_t> scaled_squares(std::uint64_t m, std::size_t prec, Pred keep) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 1; m * n * n < prec; ++n) {
    if (keep(n)) out.push_back(m * n * n);
  }
  return out;
}

bool is_odd(std::uint64_t n) { return n % 2 == 1; }

BitSeries eta_product(std::size_t prec) {
  // (1 + x^n)^4 = 1 + x^(4n) mod 2
  BitSeries acc = BitSeries::monomial(1, prec);
  for (std::size_t n = 1; 4 * n < prec; ++n) {
    acc = add(acc, shift_up(acc, 4 * n).truncated(prec));
    if (20 * n < prec) acc = add(acc, shift_up(acc, 20 * n).truncated(prec));
  }
  return acc;
}

// Memo for D_k. Entries are held at power-of-two windows so that growing
// requests trigger only logarithmically many rebuilds of a chain.
class DkTable {
 public:
  BitSeries get(std::uint64_t k, std::size_t prec) {
    const std::size_t cap = std::bit_ceil(std::max<std::size_t>(prec, 1024));
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = table_.find(k); it != table_.end() && it->second.prec() >= prec) {
      return it->second.truncated(prec);
    }
    // Walk down the chain k, k-10, ... to a cached entry or a base case.
    std::uint64_t j = k;
    std::optional<BitSeries> cur;
    while (true) {
      if (auto it = table_.find(j); it != table_.end() && it->second.prec() >= cap) {
        cur = it->second.truncated(cap);
        break;
      }
      if (j < 10) break;
      j -= 10;
    }
    if (!cur) {
      cur = base(j, cap);
      table_.insert_or_assign(j, *cur);
    }
    const BitSeries g2 = gen_exps(10, cap);
    while (j < k) {
      cur = mul(g2, *cur).truncated(cap);
      j += 10;
      table_.insert_or_assign(j, *cur);
    }
    return cur->truncated(prec);
  }

 private:
  static BitSeries gen_exps(std::uint64_t m, std::size_t prec) {
    const auto e = scaled_squares(m, prec, is_odd);
    return BitSeries::from_exponents(e, prec);
  }

  static BitSeries base(std::uint64_t k, std::size_t prec) {
    const BitSeries d = gen(Named::kD, prec + 5);
    const BitSeries g = gen(Named::kG, prec + 5);
    switch (k) {
      case 1:
        return d.truncated(prec);
      case 3:
        return divide_exact(power(d, 8).truncated(prec + 5), g).truncated(prec);
      case 7:
        return mul(square(d).truncated(prec + 5), g).truncated(prec);
      case 9:
        return mul(power(d, 4).truncated(prec + 5), g).truncated(prec);
      default:
        throw InternalError("no base case for D_" + std::to_string(k));
    }
  }

  std::mutex mu_;
  std::unordered_map<std::uint64_t, BitSeries> table_;
};

DkTable& dk_table() {
  static DkTable table;
  return table;
}

}  // namespace

std::optional<Named> parse_named(std::string_view name) {
  if (name == "F") return Named::kF;
  if (name == "G") return Named::kG;
  if (name == "H") return Named::kH;
  if (name == "r") return Named::kR;
  if (name == "D") return Named::kD;
  if (name == "Cbar") return Named::kCbar;
  return std::nullopt;
}

std::string_view name_of(Named n) {
  switch (n) {
    case Named::kF: return "F";
    case Named::kG: return "G";
    case Named::kH: return "H";
    case Named::kR: return "r";
    case Named::kD: return "D";
    case Named::kCbar: return "Cbar";
  }
  return "?";
}

BitSeries gen(Named which, std::size_t prec) {
  if (prec == 0) throw PrecisionError("series precision must be positive");
  auto coprime10 = [](std::uint64_t n) { return std::gcd(n, std::uint64_t{10}) == 1; };
  auto any = [](std::uint64_t) { return true; };
  switch (which) {
    case Named::kF:
      return BitSeries::from_exponents(scaled_squares(1, prec, is_odd), prec);
    case Named::kG:
      return BitSeries::from_exponents(scaled_squares(5, prec, is_odd), prec);
    case Named::kH:
      return BitSeries::from_exponents(scaled_squares(25, prec, is_odd), prec);
    case Named::kD:
      return BitSeries::from_exponents(scaled_squares(1, prec, coprime10), prec);
    case Named::kR: {
      std::vector<std::uint64_t> e;
      for (std::uint64_t m : {1, 2, 5, 10}) {
        auto part = scaled_squares(m, prec, any);
        e.insert(e.end(), part.begin(), part.end());
      }
      return BitSeries::from_exponents(e, prec);
    }
    case Named::kCbar:
      return eta_product(prec);
  }
  throw DomainError("unknown series name");
}

BitSeries gen_Dk(std::uint64_t k, std::size_t prec) {
  if (!valid_index(k)) throw DomainError("D_k requires gcd(k,10) = 1, got k = " + std::to_string(k));
  if (prec == 0) throw PrecisionError("series precision must be positive");
  return dk_table().get(k, prec);
}

BitSeries gen_Jk(std::uint64_t k, std::size_t prec) {
  if (k == 0 || k % 2 == 0) throw DomainError("J_k requires odd k > 0, got k = " + std::to_string(k));
  if (prec == 0) throw PrecisionError("series precision must be positive");
  const std::size_t p = prec + 5;
  const BitSeries f = gen(Named::kF, p);
  const BitSeries g = gen(Named::kG, p);
  BitSeries j = [&] {
    switch (k % 10) {
      case 1: return f;
      case 3: return divide_exact(power(f, 8).truncated(p), g);
      case 5: return g;
      case 7: return mul(square(f).truncated(p), g).truncated(p);
      default: return mul(power(f, 4).truncated(p), g).truncated(p);
    }
  }();
  const BitSeries g2 = square(g).truncated(p);
  for (std::uint64_t i = k % 10; i < k; i += 10) j = mul(g2, j).truncated(std::min(p, j.prec()));
  return j.truncated(prec);
}

BitSeries series_of(const Combination& c, std::size_t prec) {
  BitSeries acc(prec);
  for (auto k : c.indices()) acc = add(acc, c.family() == Family::kD ? gen_Dk(k, prec) : gen_Jk(k, prec));
  return acc;
}

Combination decompose_W(const BitSeries& f) {
  const std::size_t prec = f.prec();
  BitSeries rem = f;
  Combination out;
  while (true) {
    const std::size_t k = rem.valuation();
    if (k == prec) break;
    if (!valid_index(k)) {
      throw NotInWError(k, "not in W: leading exponent " + std::to_string(k) + " is not prime to 10");
    }
    if (2 * k >= prec) {
      throw InsufficientPrecisionError("index " + std::to_string(k) + " is too close to the window " +
                                       std::to_string(prec) + " to certify the decomposition");
    }
    rem = add(rem, gen_Dk(k, prec));
    out.toggle(k);
  }
  return out;
}

}  // namespace mfmod2
