#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace mfmod2 {

enum class Family { kD, kJ };

/// A GF(2)-linear combination of the basis series D_k (or J_k), stored as the
/// sorted set of indices with coefficient 1. Every index k satisfies k > 0 and
/// gcd(k, 10) = 1.
class Combination {
 public:
  Combination() = default;
  explicit Combination(std::vector<std::uint64_t> indices, Family family = Family::kD);
  Combination(std::initializer_list<std::uint64_t> indices) : Combination(std::vector<std::uint64_t>(indices)) {}

  Family family() const { return family_; }
  const std::vector<std::uint64_t>& indices() const { return indices_; }
  bool empty() const { return indices_.empty(); }
  std::size_t size() const { return indices_.size(); }
  bool contains(std::uint64_t k) const;
  /// Largest index; 0 when empty.
  std::uint64_t max_index() const { return indices_.empty() ? 0 : indices_.back(); }

  /// Adds D_k (coefficient 1 + 1 = 0 cancels).
  void toggle(std::uint64_t k);
  Combination& operator+=(const Combination& other);
  friend Combination operator+(Combination a, const Combination& b) { return a += b; }
  friend bool operator==(const Combination&, const Combination&) = default;

 private:
  std::vector<std::uint64_t> indices_;
  Family family_ = Family::kD;
};

bool valid_index(std::uint64_t k);

/// `D[1,21,43]`
std::string to_text(const Combination& c);
Combination combination_from_text(std::string_view text);
void to_json(nlohmann::json& j, const Combination& c);
Combination combination_from_json(const nlohmann::json& j);

}  // namespace mfmod2
