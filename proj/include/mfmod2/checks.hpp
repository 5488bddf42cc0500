#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace mfmod2 {

struct CheckContext {
  std::size_t prec = 10000;  // series window for identity-style checks
  std::uint64_t q = 4;       // level for the DI(q) checks
  std::uint32_t depth = 12;  // adapted-basis depth
};

struct CheckOutcome {
  bool passed = true;
  std::string detail;  // first counterexample on failure, a short summary otherwise

  static CheckOutcome ok(std::string summary) { return {true, std::move(summary)}; }
  static CheckOutcome fail(std::string where) { return {false, std::move(where)}; }
};

struct CheckItem {
  std::string_view id;
  std::string_view group;  // identities, tables, di, structure, properties
  std::string_view summary;
  CheckOutcome (*run)(const CheckContext&);
};

/// Every invariant the library checks, in a fixed order.
std::span<const CheckItem> check_registry();
const CheckItem* find_check(std::string_view id);

/// Runs one item, turning library exceptions into a failed outcome.
CheckOutcome run_check(const CheckItem& item, const CheckContext& ctx);

}  // namespace mfmod2
