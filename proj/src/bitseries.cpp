#include "mfmod2/bitseries.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mfmod2/errors.hpp"

namespace mfmod2 {

namespace {

using Word = BitSeries::Word;
constexpr std::size_t kW = BitSeries::kWordBits;

std::size_t words_for(std::size_t bits) { return (bits + kW - 1) / kW; }

// dst ^= src * x^shift, restricted to the first dst.size() words.
void xor_shifted(std::vector<Word>& dst, std::span<const Word> src, std::size_t shift) {
  const std::size_t ws = shift / kW;
  const unsigned bs = shift % kW;
  const std::size_t n = dst.size();
  if (ws >= n) return;
  const std::size_t m = std::min(src.size(), n - ws);
  if (bs == 0) {
    for (std::size_t i = 0; i < m; ++i) dst[ws + i] ^= src[i];
    return;
  }
  for (std::size_t i = 0; i < m; ++i) {
    const Word w = src[i];
    dst[ws + i] ^= w << bs;
    if (ws + i + 1 < n) dst[ws + i + 1] ^= w >> (kW - bs);
  }
}

// Spreads the 32 low bits of w to the even bit positions of a 64-bit word.
Word spread_bits(Word w) {
  w &= 0xffffffffULL;
  w = (w | (w << 16)) & 0x0000ffff0000ffffULL;
  w = (w | (w << 8)) & 0x00ff00ff00ff00ffULL;
  w = (w | (w << 4)) & 0x0f0f0f0f0f0f0f0fULL;
  w = (w | (w << 2)) & 0x3333333333333333ULL;
  w = (w | (w << 1)) & 0x5555555555555555ULL;
  return w;
}

template <class Fn>
void for_each_set_bit(std::span<const Word> words, Fn&& fn) {
  for (std::size_t i = 0; i < words.size(); ++i) {
    Word w = words[i];
    while (w) {
      const unsigned b = std::countr_zero(w);
      fn(i * kW + b);
      w &= w - 1;
    }
  }
}

}  // namespace

BitSeries::BitSeries(std::size_t prec) : words_(words_for(prec), 0), prec_(prec) {
  if (prec == 0) throw PrecisionError("series precision must be positive");
}

BitSeries::BitSeries(std::vector<Word> words, std::size_t prec) : words_(std::move(words)), prec_(prec) {
  if (prec == 0) throw PrecisionError("series precision must be positive");
  words_.resize(words_for(prec), 0);
  clear_tail();
}

void BitSeries::clear_tail() {
  const unsigned r = prec_ % kW;
  if (r != 0) words_.back() &= (Word{1} << r) - 1;
}

BitSeries BitSeries::monomial(std::size_t n, std::size_t prec) {
  if (n >= prec) {
    throw PrecisionError("monomial x^" + std::to_string(n) + " outside window " + std::to_string(prec));
  }
  BitSeries s(prec);
  s.words_[n / kW] |= Word{1} << (n % kW);
  return s;
}

BitSeries BitSeries::from_exponents(std::span<const std::uint64_t> exps, std::size_t prec) {
  BitSeries s(prec);
  for (auto e : exps) {
    if (e < prec) s.words_[e / kW] ^= Word{1} << (e % kW);
  }
  return s;
}

BitSeries BitSeries::from_words(std::vector<Word> words, std::size_t prec) {
  return BitSeries(std::move(words), prec);
}

bool BitSeries::coeff(std::size_t n) const {
  if (n >= prec_) {
    throw PrecisionError("coefficient x^" + std::to_string(n) + " outside window " + std::to_string(prec_));
  }
  return (words_[n / kW] >> (n % kW)) & 1u;
}

std::size_t BitSeries::valuation() const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i]) return std::min(prec_, i * kW + std::countr_zero(words_[i]));
  }
  return prec_;
}

std::size_t BitSeries::popcount() const {
  std::size_t c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

std::vector<std::uint64_t> BitSeries::exponents() const {
  std::vector<std::uint64_t> out;
  out.reserve(popcount());
  for_each_set_bit(words_, [&](std::size_t e) { out.push_back(e); });
  return out;
}

BitSeries BitSeries::truncated(std::size_t prec) const {
  if (prec > prec_) {
    throw PrecisionError("cannot extend window " + std::to_string(prec_) + " to " + std::to_string(prec));
  }
  std::vector<Word> w(words_.begin(), words_.begin() + static_cast<std::ptrdiff_t>(words_for(prec)));
  return BitSeries(std::move(w), prec);
}

BitSeries monomial(std::size_t n, std::size_t prec) { return BitSeries::monomial(n, prec); }

bool coeff(const BitSeries& f, std::size_t n) { return f.coeff(n); }

BitSeries add(const BitSeries& f, const BitSeries& g) {
  const std::size_t prec = std::min(f.prec_, g.prec_);
  std::vector<Word> w(words_for(prec));
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = f.words_[i] ^ g.words_[i];
  return BitSeries(std::move(w), prec);
}

BitSeries mul(const BitSeries& f, const BitSeries& g) {
  const std::size_t vf = f.valuation();
  const std::size_t vg = g.valuation();
  const std::size_t prec = std::min(f.prec_ + vg, g.prec_ + vf);
  // Iterate over the sparser factor, XOR shifted copies of the denser one.
  const bool f_sparse = f.popcount() <= g.popcount();
  const BitSeries& s = f_sparse ? f : g;
  const BitSeries& d = f_sparse ? g : f;
  std::vector<Word> out(words_for(prec), 0);
  for_each_set_bit(s.words_, [&](std::size_t i) {
    if (i < prec) xor_shifted(out, d.words_, i);
  });
  return BitSeries(std::move(out), prec);
}

BitSeries square(const BitSeries& f) {
  const std::size_t prec = 2 * f.prec_;
  std::vector<Word> out(words_for(prec), 0);
  for (std::size_t i = 0; i < f.words_.size(); ++i) {
    const Word w = f.words_[i];
    if (2 * i < out.size()) out[2 * i] = spread_bits(w);
    if (2 * i + 1 < out.size()) out[2 * i + 1] = spread_bits(w >> 32);
  }
  return BitSeries(std::move(out), prec);
}

BitSeries power(const BitSeries& f, unsigned e) {
  BitSeries result = BitSeries::one(f.prec());
  BitSeries base = f;
  bool first = true;
  while (e) {
    if (e & 1u) {
      result = first ? base : mul(result, base);
      first = false;
    }
    e >>= 1;
    if (e) base = square(base);
  }
  return result;
}

BitSeries substitute_power(const BitSeries& f, std::size_t k) {
  if (k == 0) throw DomainError("substitute_power requires k >= 1");
  if (k == 1) return f;
  const std::size_t prec = k * f.prec_;
  std::vector<Word> out(words_for(prec), 0);
  for_each_set_bit(f.words_, [&](std::size_t e) {
    const std::size_t n = e * k;
    out[n / kW] |= Word{1} << (n % kW);
  });
  return BitSeries(std::move(out), prec);
}

BitSeries shift_down(const BitSeries& f, std::size_t v) {
  if (v == 0) return f;
  if (f.valuation() < v) {
    throw DivisionError(DivisionError::Kind::kValuation, f.valuation(),
                        "series has a nonzero coefficient below x^" + std::to_string(v));
  }
  if (v >= f.prec_) throw PrecisionError("shift leaves an empty window");
  const std::size_t prec = f.prec_ - v;
  std::vector<Word> out(words_for(prec), 0);
  const std::size_t ws = v / kW;
  const unsigned bs = v % kW;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::size_t j = i + ws;
    Word w = j < f.words_.size() ? f.words_[j] >> bs : 0;
    if (bs && j + 1 < f.words_.size()) w |= f.words_[j + 1] << (kW - bs);
    out[i] = w;
  }
  return BitSeries(std::move(out), prec);
}

BitSeries shift_up(const BitSeries& f, std::size_t v) {
  const std::size_t prec = f.prec_ + v;
  std::vector<Word> out(words_for(prec), 0);
  xor_shifted(out, f.words_, v);
  return BitSeries(std::move(out), prec);
}

BitSeries mask_exponents(const BitSeries& f, bool (*keep)(std::uint64_t)) {
  std::vector<Word> out(f.words_.size(), 0);
  for_each_set_bit(f.words_, [&](std::size_t e) {
    if (keep(e)) out[e / kW] |= Word{1} << (e % kW);
  });
  return BitSeries(std::move(out), f.prec_);
}

BitSeries divide_exact(const BitSeries& f, const BitSeries& g) {
  const std::size_t vg = g.valuation();
  if (vg == g.prec()) {
    throw DivisionError(DivisionError::Kind::kZeroDivisor, vg, "divisor vanishes on its window");
  }
  const std::size_t vf = f.valuation();
  if (vf < vg) {
    throw DivisionError(DivisionError::Kind::kValuation, vf,
                        "not divisible: x^" + std::to_string(vf) + " survives division by a series of valuation " +
                            std::to_string(vg));
  }
  const std::size_t prec = std::min(f.prec(), g.prec()) - vg;
  if (prec == 0) throw PrecisionError("quotient window is empty");
  const BitSeries unit = shift_down(g, vg).truncated(prec);
  // Newton step for 1/u over GF(2): h <- u * h^2.
  BitSeries inv = BitSeries::one(1);
  while (inv.prec() < prec) {
    const std::size_t next = std::min(2 * inv.prec(), prec);
    inv = mul(unit.truncated(next), square(inv)).truncated(next);
  }
  return mul(shift_down(f, vg).truncated(prec), inv).truncated(prec);
}

std::optional<std::uint64_t> first_difference(const BitSeries& f, const BitSeries& g) {
  const std::size_t prec = std::min(f.prec(), g.prec());
  const auto fw = f.words();
  const auto gw = g.words();
  for (std::size_t i = 0; i < words_for(prec); ++i) {
    Word d = fw[i] ^ gw[i];
    if (i == words_for(prec) - 1 && prec % kW) d &= (Word{1} << (prec % kW)) - 1;
    if (d) return i * kW + std::countr_zero(d);
  }
  return std::nullopt;
}

std::string to_text(const BitSeries& f) {
  std::string out = "prec=" + std::to_string(f.prec()) + "; exps=";
  bool first = true;
  for (auto e : f.exponents()) {
    if (!first) out += ',';
    out += std::to_string(e);
    first = false;
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_u64(std::string_view s) {
  s = trim(s);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError("not a non-negative integer: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

BitSeries series_from_text(std::string_view text) {
  text = trim(text);
  const auto semi = text.find(';');
  if (semi == std::string_view::npos) throw ParseError("expected 'prec=N; exps=...'");
  auto head = trim(text.substr(0, semi));
  auto tail = trim(text.substr(semi + 1));
  if (!head.starts_with("prec=") || !tail.starts_with("exps=")) {
    throw ParseError("expected 'prec=N; exps=...'");
  }
  const std::uint64_t prec = parse_u64(head.substr(5));
  if (prec == 0) throw ParseError("precision must be positive");
  tail.remove_prefix(5);
  std::vector<std::uint64_t> exps;
  std::uint64_t last = 0;
  while (!trim(tail).empty()) {
    const auto comma = tail.find(',');
    const std::uint64_t e = parse_u64(tail.substr(0, comma));
    if (e >= prec) throw ParseError("exponent " + std::to_string(e) + " outside window");
    if (!exps.empty() && e <= last) throw ParseError("exponents must be strictly increasing");
    exps.push_back(e);
    last = e;
    if (comma == std::string_view::npos) break;
    tail.remove_prefix(comma + 1);
  }
  return BitSeries::from_exponents(exps, prec);
}

void to_json(nlohmann::json& j, const BitSeries& f) {
  j = nlohmann::json{{"exps", f.exponents()}, {"prec", f.prec()}};
}

BitSeries series_from_json(const nlohmann::json& j) {
  try {
    const auto prec = j.at("prec").get<std::uint64_t>();
    const auto exps = j.at("exps").get<std::vector<std::uint64_t>>();
    if (prec == 0) throw ParseError("precision must be positive");
    for (std::size_t i = 0; i < exps.size(); ++i) {
      if (exps[i] >= prec) throw ParseError("exponent outside window");
      if (i > 0 && exps[i] <= exps[i - 1]) throw ParseError("exponents must be strictly increasing");
    }
    return BitSeries::from_exponents(exps, prec);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed series JSON: ") + e.what());
  }
}

}  // namespace mfmod2
