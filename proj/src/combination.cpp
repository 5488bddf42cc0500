#include "mfmod2/combination.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>

#include <nlohmann/json.hpp>

#include "mfmod2/errors.hpp"

namespace mfmod2 {

bool valid_index(std::uint64_t k) { return k > 0 && std::gcd(k, std::uint64_t{10}) == 1; }

Combination::Combination(std::vector<std::uint64_t> indices, Family family) : family_(family) {
  std::sort(indices.begin(), indices.end());
  // Repeated indices cancel in pairs.
  for (std::size_t i = 0; i < indices.size();) {
    std::size_t j = i;
    while (j < indices.size() && indices[j] == indices[i]) ++j;
    if ((j - i) % 2 == 1) indices_.push_back(indices[i]);
    i = j;
  }
  for (auto k : indices_) {
    if (!valid_index(k)) throw DomainError("index " + std::to_string(k) + " is not prime to 10");
  }
}

bool Combination::contains(std::uint64_t k) const {
  return std::binary_search(indices_.begin(), indices_.end(), k);
}

void Combination::toggle(std::uint64_t k) {
  if (!valid_index(k)) throw DomainError("index " + std::to_string(k) + " is not prime to 10");
  auto it = std::lower_bound(indices_.begin(), indices_.end(), k);
  if (it != indices_.end() && *it == k) {
    indices_.erase(it);
  } else {
    indices_.insert(it, k);
  }
}

Combination& Combination::operator+=(const Combination& other) {
  std::vector<std::uint64_t> out;
  out.reserve(indices_.size() + other.indices_.size());
  std::set_symmetric_difference(indices_.begin(), indices_.end(), other.indices_.begin(), other.indices_.end(),
                                std::back_inserter(out));
  indices_ = std::move(out);
  return *this;
}

std::string to_text(const Combination& c) {
  std::string out = c.family() == Family::kD ? "D[" : "J[";
  for (std::size_t i = 0; i < c.indices().size(); ++i) {
    if (i) out += ',';
    out += std::to_string(c.indices()[i]);
  }
  out += ']';
  return out;
}

Combination combination_from_text(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.size() < 3 || (text[0] != 'D' && text[0] != 'J') || text[1] != '[' || text.back() != ']') {
    throw ParseError("expected D[...] or J[...]");
  }
  const Family family = text[0] == 'D' ? Family::kD : Family::kJ;
  std::string_view body = text.substr(2, text.size() - 3);
  std::vector<std::uint64_t> idx;
  while (!body.empty()) {
    const auto comma = body.find(',');
    auto tok = body.substr(0, comma);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw ParseError("bad index '" + std::string(tok) + "'");
    }
    if (!idx.empty() && v <= idx.back()) throw ParseError("indices must be strictly increasing");
    idx.push_back(v);
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  try {
    return Combination(std::move(idx), family);
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

void to_json(nlohmann::json& j, const Combination& c) {
  j = nlohmann::json{{"family", c.family() == Family::kD ? "D" : "J"}, {"indices", c.indices()}};
}

Combination combination_from_json(const nlohmann::json& j) {
  try {
    const auto fam = j.at("family").get<std::string>();
    if (fam != "D" && fam != "J") throw ParseError("family must be D or J");
    auto idx = j.at("indices").get<std::vector<std::uint64_t>>();
    for (std::size_t i = 1; i < idx.size(); ++i) {
      if (idx[i] <= idx[i - 1]) throw ParseError("indices must be strictly increasing");
    }
    return Combination(std::move(idx), fam == "D" ? Family::kD : Family::kJ);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed combination JSON: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

}  // namespace mfmod2
