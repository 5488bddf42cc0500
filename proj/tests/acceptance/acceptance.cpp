// One line per acceptance criterion. `--criterion N` runs just one; the exit
// code is nonzero if any selected criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mfmod2/checks.hpp"
#include "mfmod2/errors.hpp"
#include "mfmod2/forms.hpp"
#include "mfmod2/hecke.hpp"
#include "mfmod2/quadideals.hpp"
#include "mfmod2/structure.hpp"

using namespace mfmod2;

namespace {

struct Verdict {
  bool passed = true;
  std::string detail;
  void fail(const std::string& why) {
    if (passed) detail = why;
    passed = false;
  }
};

struct Criterion {
  int number;
  const char* title;
  double budget_seconds;
  std::function<Verdict()> run;
};

Verdict from_registry(std::initializer_list<const char*> ids) {
  Verdict v;
  CheckContext ctx;
  for (const char* id : ids) {
    const CheckItem* item = find_check(id);
    if (!item) {
      v.fail(std::string("missing check ") + id);
      continue;
    }
    const CheckOutcome o = run_check(*item, ctx);
    if (!o.passed) v.fail(std::string(id) + ": " + o.detail);
  }
  if (v.passed) v.detail = std::to_string(ids.size()) + " checks";
  return v;
}

Verdict golden(const std::vector<std::pair<std::uint64_t, Combination>>& table, std::uint64_t p) {
  Verdict v;
  for (const auto& [k, want] : table) {
    const Combination got = Tp_on_Dk(HeckePrime(p), k);
    if (got != want) v.fail("T" + std::to_string(p) + "(D_" + std::to_string(k) + ") = " + to_text(got) + ", expected " + to_text(want));
  }
  if (v.passed) v.detail = std::to_string(table.size()) + " values";
  return v;
}

Verdict t3_table() {
  return golden({{1, {}},          {3, {1}},           {7, {}},        {9, {3}},          {21, {7}},      {23, {21}},
                 {27, {9}},        {29, {23}},         {41, {}},       {43, {41}},        {47, {21}},     {49, {43, 27}},
                 {61, {47, 23}},   {63, {61, 29, 21}}, {67, {49, 41}}, {69, {63, 47, 23}}},
                3);
}

Verdict t11_table() {
  return golden({{11, {1}},         {31, {21}},           {51, {41, 9}},     {71, {61, 29}},        {91, {81, 41, 9}},
                 {111, {101, 61, 21}},
                 {19, {9}},         {39, {29}},           {59, {49, 9}},     {79, {69, 29}},        {99, {89, 49, 9}},
                 {119, {109, 69, 29, 21}},
                 {13, {7}},         {33, {27, 3}},        {53, {47}},        {73, {67, 43, 27}},    {93, {87, 47}},
                 {113, {107, 83, 67, 43, 27}},
                 {17, {3}},         {37, {23, 7}},        {57, {43}},        {77, {63, 47, 23, 7}}, {97, {83, 43}},
                 {117, {103, 87, 63, 47, 23}},
                 {9, {}},           {29, {}},             {49, {19, 11}},    {69, {39, 31}},        {89, {11}},
                 {109, {39}}},
                11);
}

Verdict identity_suite() {
  Verdict v;
  const IdentityReport rep = verify_identities(10000);
  for (const auto& r : rep.results) {
    if (!r.passed) v.fail(r.name + (r.first_bad ? " fails at x^" + std::to_string(*r.first_bad) : " window too small"));
  }
  if (v.passed) v.detail = std::to_string(rep.results.size()) + " identities at window 10000";
  return v;
}

Verdict oracle_equivalence() {
  Verdict v;
  std::size_t n = 0;
  for (std::uint64_t k = 1; k < 2000; ++k) {
    if (chi(k) != 1) continue;
    ++n;
    const Combination a = tk_oracle(k);
    const Combination b = Tp_on_Dk(HeckePrime(3), k);
    if (a != b) v.fail("k = " + std::to_string(k) + ": recursion " + to_text(a) + ", series " + to_text(b));
  }
  if (v.passed) v.detail = std::to_string(n) + " indices";
  return v;
}

Verdict di_structure() {
  Verdict v;
  for (std::uint64_t q : {1, 2, 4}) {
    const std::string at = " (q = " + std::to_string(q) + ")";
    const auto alpha = di_basis(q);
    if (alpha.size() != 2 * q) v.fail("dim DI != 2q" + at);
    if (alpha[0] != Combination{1}) v.fail("alpha_0 != D" + at);
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (!apply_X(alpha[i]).empty()) v.fail("T3 alpha_" + std::to_string(i) + " != 0" + at);
    }
    const auto ker = kernel(op_matrix(Operator::hecke(3), space_Waq(q)));
    auto joint = ker;
    joint.insert(joint.end(), alpha.begin(), alpha.end());
    if (ker.size() != 2 * q || rank_of(joint) != 2 * q) v.fail("ker T3 on W_a(q) != DI(q)" + at);

    Combination y = alpha[2 * q - 1];
    for (std::uint64_t s = 0; s + 1 < 2 * q; ++s) {
      if (y.empty()) v.fail("Y-nilpotency index below 2q" + at);
      y = apply_Y(y);
    }
    if (y != Combination{1}) v.fail("Y^{2q-1} alpha_{2q-1} != D" + at);
    if (!apply_Y(y).empty()) v.fail("Y^{2q} alpha_{2q-1} != 0" + at);

    const std::size_t prec = di_default_prec(q);
    const auto thetas = theta_all(q, prec);
    for (std::size_t n = 0; n < thetas[2 * q].size(); ++n) {
      if (thetas[2 * q][n] % 2 != 0) {
        v.fail("alpha_{2q} != 0 at x^" + std::to_string(n) + at);
        break;
      }
    }
    if (decompose_W(theta(2 * q, q, prec)) != Combination{40 * q * q + 1}) v.fail("theta(AMB)/2 != D_{40q^2+1}" + at);
  }
  if (v.passed) v.detail = "q = 1, 2, 4";
  return v;
}

Verdict tridiagonal() {
  Verdict v;
  for (std::uint64_t q : {1, 2, 4}) {
    const auto alpha = di_basis(q);
    auto a = [&](std::uint64_t i) { return i < alpha.size() ? alpha[i] : Combination{}; };
    for (std::uint64_t i = 1; i < 2 * q; ++i) {
      if (apply_Y(a(i)) != a(i - 1) + a(i + 1)) v.fail("T7 alpha_" + std::to_string(i) + " at q = " + std::to_string(q));
    }
    if (apply_Y(Combination{40 * q * q + 1}) != a(2 * q - 1)) v.fail("T7 D_{40q^2+1} != alpha_{2q-1} at q = " + std::to_string(q));
  }
  if (v.passed) v.detail = "q = 1, 2, 4";
  return v;
}

Verdict adapted() {
  Verdict v = from_registry({"structure.adapted", "structure.filtration-maps"});
  const auto basis = adapted_basis(12);
  std::vector<Combination> all;
  for (const auto& pc : basis->pairs()) all.push_back(basis->m(pc));
  if (rank_of(all) != 78) v.fail("rank of the adapted basis is " + std::to_string(rank_of(all)));
  const auto w = space_Waq(4);
  const auto common = kernel(op_matrix(Operator::hecke(3), w).stacked(op_matrix(Operator::hecke(7), w)));
  if (common != std::vector<Combination>{Combination{1}}) v.fail("ker X & ker Y on W_a(4) is not {0, D}");
  if (v.passed) v.detail = "depth 12, rank 78, common kernel {0, D}";
  return v;
}

Verdict o_algebra() {
  Verdict v;
  if (to_text(express_hecke(3, 6).element) != "r = X; t = 0") v.fail("T3 != X");
  if (to_text(express_hecke(7, 6).element) != "r = Y; t = 0") v.fail("T7 != Y");
  const XYPoly lambda = lambda_series(8).lambda;
  if (lambda.coeff(0, 0) || !lambda.coeff(1, 0) || !lambda.coeff(0, 1)) v.fail("lambda = " + to_text(lambda));
  XYPoly sq(2 * lambda.order());
  for (const auto& [i, j] : lambda.terms()) sq.toggle(2 * i, 2 * j);
  for (auto k : space_Sm(8)) {
    if (Operator::t11_squared().apply(Combination{k}) != sq.apply(Combination{k})) v.fail("T11^2 != lambda^2 at D_" + std::to_string(k));
  }
  std::string seen;
  for (std::uint64_t p : {13, 17, 19, 23, 29}) {
    HeckeExpression e;
    try {
      e = express_hecke(p, 5);  // validates on every m_ab and n_ab with a + b < 5
    } catch (const InconsistencyError& err) {
      v.fail("T" + std::to_string(p) + " does not validate: " + err.what());
      continue;
    }
    if (e.element.t.coeff(0, 0)) v.fail("T" + std::to_string(p) + ": t = " + to_text(e.element.t) + " is a unit, not in (X, Y)");
    seen += (seen.empty() ? "" : ", ") + std::to_string(p);
  }
  if (v.passed) v.detail = "lambda = " + to_text(lambda) + "; p = " + seen + " validated with t in (X, Y)";
  return v;
}

Verdict properties() {
  return from_registry({"hecke.grading-descent", "hecke.level3-twist", "hecke.level11-twist", "ideals.lattice-parity",
                        "code.monotone", "structure.t11-bijection"});
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "T3 golden table", 1, t3_table},
      {2, "T11 golden tables", 5, t11_table},
      {3, "identity suite at 10^4", 30, identity_suite},
      {4, "T3 recursion oracle, k < 2000", 60, oracle_equivalence},
      {5, "DI(q) structure, q = 1, 2, 4", 120, di_structure},
      {6, "T7 tridiagonal on DI(q)", 120, tridiagonal},
      {7, "adapted basis to depth 12", 300, adapted},
      {8, "Hecke operators in O", 600, o_algebra},
      {9, "property suite", 600, properties},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> only;
  app.add_option("--criterion", only, "criterion numbers to run (default all)")->check(CLI::Range(1, 9));
  CLI11_PARSE(app, argc, argv);

  bool all_ok = true;
  for (const auto& c : criteria()) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.number) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const Error& e) {
      v.fail(std::string("error: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_seconds) v.fail("took " + std::to_string(secs) + " s, budget " + std::to_string(c.budget_seconds) + " s");
    all_ok = all_ok && v.passed;
    std::printf("[%s] criterion %d: %s (%.2f s) %s\n", v.passed ? "PASS" : "FAIL", c.number, c.title, secs, v.detail.c_str());
    std::fflush(stdout);
  }
  return all_ok ? 0 : 1;
}
