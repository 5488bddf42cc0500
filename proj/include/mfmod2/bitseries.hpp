#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace mfmod2 {

/// Truncated power series over GF(2).
///
/// Coefficients of x^n are known for 0 <= n < prec(); nothing is known beyond.
/// Storage is dense, 64 coefficients per word, and all bits at or above prec()
/// are kept zero. Values are immutable once built.
class BitSeries {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  /// The zero series known to precision `prec` (prec > 0).
  explicit BitSeries(std::size_t prec);

  static BitSeries monomial(std::size_t n, std::size_t prec);
  static BitSeries one(std::size_t prec) { return monomial(0, prec); }
  /// Series with coefficient 1 exactly at the given exponents. Exponents
  /// >= prec are ignored; repeated exponents cancel.
  static BitSeries from_exponents(std::span<const std::uint64_t> exps, std::size_t prec);
  static BitSeries from_words(std::vector<Word> words, std::size_t prec);

  std::size_t prec() const { return prec_; }
  bool coeff(std::size_t n) const;
  /// Order of vanishing; equals prec() when the series is zero on its window.
  std::size_t valuation() const;
  bool is_zero() const { return valuation() == prec_; }
  std::size_t popcount() const;
  std::vector<std::uint64_t> exponents() const;
  std::span<const Word> words() const { return words_; }

  BitSeries truncated(std::size_t prec) const;

  /// Structural equality: same precision and same coefficients.
  friend bool operator==(const BitSeries& a, const BitSeries& b) = default;

 private:
  BitSeries(std::vector<Word> words, std::size_t prec);
  void clear_tail();

  std::vector<Word> words_;
  std::size_t prec_;

  friend BitSeries add(const BitSeries&, const BitSeries&);
  friend BitSeries mul(const BitSeries&, const BitSeries&);
  friend BitSeries square(const BitSeries&);
  friend BitSeries substitute_power(const BitSeries&, std::size_t);
  friend BitSeries shift_down(const BitSeries&, std::size_t);
  friend BitSeries shift_up(const BitSeries&, std::size_t);
  friend BitSeries mask_exponents(const BitSeries&, bool (*)(std::uint64_t));
};

BitSeries monomial(std::size_t n, std::size_t prec);
bool coeff(const BitSeries& f, std::size_t n);

/// Coefficientwise XOR; precision is the smaller of the two.
BitSeries add(const BitSeries& f, const BitSeries& g);
/// Carry-less product. The result window is min(f.prec + val(g), g.prec + val(f)),
/// which is exactly the set of coefficients determined by the inputs.
BitSeries mul(const BitSeries& f, const BitSeries& g);
/// f*f via Frobenius; the window doubles.
BitSeries square(const BitSeries& f);
/// f^e by repeated squaring, each step keeping the determined window.
BitSeries power(const BitSeries& f, unsigned e);
/// f(x^k), window k * f.prec.
BitSeries substitute_power(const BitSeries& f, std::size_t k);
/// h with g*h = f. Window min(f.prec, g.prec) - val(g). Throws DivisionError
/// when g vanishes on its window or val(f) < val(g); the reported exponent is
/// the smallest exponent of f that cannot be cancelled.
BitSeries divide_exact(const BitSeries& f, const BitSeries& g);

/// f / x^v; requires the coefficients below v to vanish.
BitSeries shift_down(const BitSeries& f, std::size_t v);
/// x^v * f, window grows by v.
BitSeries shift_up(const BitSeries& f, std::size_t v);
/// Keeps the coefficients whose exponent satisfies `keep`.
BitSeries mask_exponents(const BitSeries& f, bool (*keep)(std::uint64_t));

/// Smallest exponent where f and g differ inside min(f.prec, g.prec).
std::optional<std::uint64_t> first_difference(const BitSeries& f, const BitSeries& g);
inline bool agree(const BitSeries& f, const BitSeries& g) { return !first_difference(f, g); }

inline BitSeries operator+(const BitSeries& f, const BitSeries& g) { return add(f, g); }
inline BitSeries operator*(const BitSeries& f, const BitSeries& g) { return mul(f, g); }

/// `prec=N; exps=1,9,25`
std::string to_text(const BitSeries& f);
BitSeries series_from_text(std::string_view text);
void to_json(nlohmann::json& j, const BitSeries& f);
BitSeries series_from_json(const nlohmann::json& j);

}  // namespace mfmod2
