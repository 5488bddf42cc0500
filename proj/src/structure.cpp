#include "mfmod2/structure.hpp"

#include <algorithm>
#include <mutex>

#include <nlohmann/json.hpp>

#include "mfmod2/errors.hpp"
#include "mfmod2/quadideals.hpp"

namespace mfmod2 {

std::vector<std::uint64_t> space_Waq(std::uint64_t q) {
  if (!is_power_of_two(q)) throw DomainError("q must be a power of 2, got " + std::to_string(q));
  std::vector<std::uint64_t> out;
  for (std::uint64_t k = 1; k < 40 * q * q; k += 2) {
    if (chi(k) == 1) out.push_back(k);
  }
  return out;
}

std::vector<std::uint64_t> space_Sm(std::uint64_t m) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t s = 0; s < m; ++s) {
    for (std::uint64_t a = 0; a <= s; ++a) out.push_back(pair_to_k({a, s - a}));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string Operator::name() const { return squared_ ? "T11^2" : "T" + std::to_string(p_); }

Combination Operator::apply(const Combination& c) const {
  const HeckePrime hp(p_);
  if (squared_) return apply_Tp(apply_Tp(c, hp), hp);
  return apply_Tp(c, hp);
}

bool Operator::respects_grading(std::uint64_t k, const Combination& image) const {
  const std::uint64_t mult = squared_ ? 1 : p_ % 40;
  const std::uint64_t r1 = mult * k % 40;
  const std::uint64_t r2 = 9 * r1 % 40;
  return std::all_of(image.indices().begin(), image.indices().end(),
                     [&](std::uint64_t i) { return i % 40 == r1 || i % 40 == r2; });
}

Gf2Matrix op_matrix(const Operator& op, const std::vector<std::uint64_t>& space) {
  std::vector<Combination> cols;
  cols.reserve(space.size());
  for (auto k : space) {
    Combination img = op.apply(Combination{k});
    if (!img.empty() && img.max_index() >= k) {
      throw InternalError(op.name() + "(D_" + std::to_string(k) + ") does not lower the index");
    }
    for (auto i : img.indices()) {
      if (!std::binary_search(space.begin(), space.end(), i)) {
        throw InternalError(op.name() + "(D_" + std::to_string(k) + ") leaves the space at D_" + std::to_string(i));
      }
    }
    cols.push_back(std::move(img));
  }
  return Gf2Matrix::from_columns(space, space, cols);
}

std::vector<Combination> kernel(const Gf2Matrix& mat) {
  std::vector<Combination> out;
  for (const auto& v : mat.kernel()) out.push_back(from_bits(v, mat.col_labels()));
  return out;
}

Combination apply_X(const Combination& c) { return apply_Tp(c, HeckePrime(3)); }
Combination apply_Y(const Combination& c) { return apply_Tp(c, HeckePrime(7)); }

// ---------------------------------------------------------------------------
// XYPoly

XYPoly XYPoly::monomial(std::uint32_t i, std::uint32_t j, std::uint32_t order) {
  XYPoly f(order);
  f.toggle(i, j);
  return f;
}

std::uint32_t XYPoly::valuation() const {
  std::uint32_t v = order_;
  for (const auto& [i, j] : terms_) v = std::min(v, i + j);
  return v;
}

void XYPoly::toggle(std::uint32_t i, std::uint32_t j) {
  if (i + j >= order_) return;
  auto [it, inserted] = terms_.insert({i, j});
  if (!inserted) terms_.erase(it);
}

XYPoly XYPoly::truncated(std::uint32_t order) const {
  XYPoly out(std::min(order, order_));
  for (const auto& [i, j] : terms_) out.toggle(i, j);
  return out;
}

XYPoly operator+(const XYPoly& f, const XYPoly& g) {
  XYPoly out(std::min(f.order_, g.order_));
  for (const auto& [i, j] : f.terms_) out.toggle(i, j);
  for (const auto& [i, j] : g.terms_) out.toggle(i, j);
  return out;
}

XYPoly operator*(const XYPoly& f, const XYPoly& g) {
  XYPoly out(std::min(f.order_ + g.valuation(), g.order_ + f.valuation()));
  for (const auto& [i1, j1] : f.terms_) {
    for (const auto& [i2, j2] : g.terms_) out.toggle(i1 + i2, j1 + j2);
  }
  return out;
}

Combination XYPoly::apply(const Combination& c) const {
  Combination out;
  Combination xi = c;
  std::uint32_t cur_i = 0;
  // terms_ is ordered by i, so X^i c is built incrementally.
  for (const auto& [i, j] : terms_) {
    while (cur_i < i) {
      xi = apply_X(xi);
      ++cur_i;
    }
    Combination v = xi;
    for (std::uint32_t s = 0; s < j; ++s) v = apply_Y(v);
    out += v;
  }
  return out;
}

namespace {

std::vector<XYPoly::Monomial> display_order(const XYPoly& f) {
  std::vector<XYPoly::Monomial> v(f.terms().begin(), f.terms().end());
  std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) {
    const auto dx = x.first + x.second;
    const auto dy = y.first + y.second;
    return dx != dy ? dx < dy : x.second < y.second;
  });
  return v;
}

std::string power_text(const char* var, std::uint32_t e) {
  if (e == 0) return "";
  if (e == 1) return var;
  return std::string(var) + "^" + std::to_string(e);
}

}  // namespace

std::string to_text(const XYPoly& f) {
  std::string out;
  for (const auto& [i, j] : display_order(f)) {
    if (!out.empty()) out += " + ";
    std::string mono = power_text("X", i) + power_text("Y", j);
    out += mono.empty() ? "1" : mono;
  }
  return out.empty() ? "0" : out;
}

void to_json(nlohmann::json& j, const XYPoly& f) {
  j = nlohmann::json::array();
  for (const auto& [a, b] : display_order(f)) j.push_back({a, b});
}

XYPoly xypoly_from_json(const nlohmann::json& j, std::uint32_t order) {
  if (!j.is_array()) throw ParseError("polynomial must be a list of [i, j] pairs");
  XYPoly f(order);
  for (const auto& m : j) {
    if (!m.is_array() || m.size() != 2) throw ParseError("monomial must be [i, j]");
    f.toggle(m[0].get<std::uint32_t>(), m[1].get<std::uint32_t>());
  }
  return f;
}

std::string to_text(const OElement& e) { return "r = " + to_text(e.r) + "; t = " + to_text(e.t); }

void to_json(nlohmann::json& j, const OElement& e) {
  j = nlohmann::json{{"order", std::min(e.r.order(), e.t.order())}, {"r", e.r}, {"t", e.t}};
}

// ---------------------------------------------------------------------------
// Adapted basis

AdaptedBasis::AdaptedBasis(std::uint32_t depth) : depth_(depth) {
  if (depth == 0) throw DomainError("adapted basis needs depth >= 1");
  for (std::uint64_t s = 0; s < depth; ++s) {
    for (std::uint64_t b = 0; b <= s; ++b) pairs_.push_back({s - b, b});
  }
  m_[{0, 0}] = Combination{1};

  for (std::uint64_t s = 1; s < depth; ++s) {
    const auto L = space_Sm(s + 1);
    std::vector<Combination> xcols;
    std::vector<Combination> ycols;
    for (auto k : L) {
      xcols.push_back(apply_X(Combination{k}));
      ycols.push_back(apply_Y(Combination{k}));
    }
    Gf2Matrix A = [&] {
      try {
        return Gf2Matrix::from_columns(L, L, xcols).stacked(Gf2Matrix::from_columns(L, L, ycols));
      } catch (const DomainError& e) {
        throw InternalError("X or Y moves S_" + std::to_string(s + 1) + " outside itself: " + e.what());
      }
    }();
    const auto ker = A.kernel();
    if (ker.size() != 1 || from_bits(ker[0], L) != Combination{1}) {
      throw InternalError("common kernel of X and Y on S_" + std::to_string(s + 1) + " is not {0, D}");
    }
    for (std::uint64_t b = 0; b <= s; ++b) {
      const std::uint64_t a = s - b;
      const Combination f = a > 0 ? m_.at({a - 1, b}) : Combination{};
      const Combination h = b > 0 ? m_.at({a, b - 1}) : Combination{};
      if (apply_Y(f) != apply_X(h)) {
        throw InternalError("Y f != X h while building m_{" + std::to_string(a) + "," + std::to_string(b) + "}");
      }
      const BitVec fb = to_bits(f, L);
      const BitVec hb = to_bits(h, L);
      BitVec rhs(2 * L.size());
      for (std::size_t i = 0; i < L.size(); ++i) {
        rhs[i] = fb[i];
        rhs[L.size() + i] = hb[i];
      }
      const auto e = A.solve(rhs);
      if (!e) {
        throw InternalError("no e with X e = f, Y e = h for m_{" + std::to_string(a) + "," + std::to_string(b) + "}");
      }
      Combination mab = from_bits(*e, L);
      if (mab.contains(1)) mab.toggle(1);
      m_[{a, b}] = std::move(mab);
    }
  }

  labels_ = space_Sm(depth);
  std::vector<std::uint64_t> positions(pairs_.size());
  std::vector<Combination> cols;
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    positions[i] = i;
    cols.push_back(m_.at(pairs_[i]));
  }
  inverse_ = std::make_unique<Gf2Matrix>(Gf2Matrix::from_columns(labels_, positions, cols).inverse());
}

const Combination& AdaptedBasis::m(std::uint64_t a, std::uint64_t b) const {
  auto it = m_.find({a, b});
  if (it == m_.end()) {
    throw DomainError("m_{" + std::to_string(a) + "," + std::to_string(b) + "} is beyond depth " +
                      std::to_string(depth_));
  }
  return it->second;
}

std::vector<PairCode> AdaptedBasis::coordinates(const Combination& v) const {
  const BitVec x = inverse_->apply(to_bits(v, labels_));
  std::vector<PairCode> out;
  for (auto i = x.find_first(); i != BitVec::npos; i = x.find_next(i)) out.push_back(pairs_[i]);
  return out;
}

bool AdaptedBasis::coordinate(const Combination& v, PairCode pc) const {
  const auto c = coordinates(v);
  return std::find(c.begin(), c.end(), pc) != c.end();
}

Combination AdaptedBasis::shifted_sum(const XYPoly& u, PairCode ab) const {
  Combination out;
  for (const auto& [i, j] : u.terms()) {
    if (i <= ab.a && j <= ab.b) out += m(ab.a - i, ab.b - j);
  }
  return out;
}

std::shared_ptr<const AdaptedBasis> adapted_basis(std::uint32_t depth) {
  static std::mutex mu;
  static std::map<std::uint32_t, std::shared_ptr<const AdaptedBasis>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[depth];
  if (!slot) slot = std::make_shared<const AdaptedBasis>(depth);
  return slot;
}

// ---------------------------------------------------------------------------
// W_b basis through T_11

std::uint64_t t11_lead(std::uint64_t k) {
  switch (k % 20) {
    case 11: case 19: return k - 10;
    case 13: return k - 6;
    case 17: return k - 14;
    default: throw DomainError("D_" + std::to_string(k) + " is not in W_b");
  }
}

std::uint64_t t11_lead_inverse(std::uint64_t j) {
  switch (j % 20) {
    case 1: case 9: return j + 10;
    case 7: return j + 6;
    case 3: return j + 14;
    default: throw DomainError("D_" + std::to_string(j) + " is not in W_a");
  }
}

Combination t11_preimage(const Combination& target) {
  const HeckePrime p11(11);
  Combination rest = target;
  Combination h;
  while (!rest.empty()) {
    const std::uint64_t top = rest.max_index();
    const std::uint64_t k = t11_lead_inverse(top);
    const Combination img = Tp_on_Dk(p11, k);
    if (img.max_index() != top) {
      throw InternalError("T11(D_" + std::to_string(k) + ") does not lead with D_" + std::to_string(top));
    }
    rest += img;
    h.toggle(k);
  }
  return h;
}

std::map<PairCode, Combination> nb_basis(const AdaptedBasis& basis) {
  std::map<PairCode, Combination> out;
  for (const auto& pc : basis.pairs()) out[pc] = t11_preimage(basis.m(pc));
  return out;
}

LambdaResult lambda_series(std::uint32_t depth) {
  if (depth < 2) throw DomainError("lambda needs depth >= 2");
  const auto basis = adapted_basis(depth);
  const Operator sq = Operator::t11_squared();
  LambdaResult res{XYPoly(depth), XYPoly((depth + 1) / 2)};
  std::map<PairCode, Combination> images;
  for (const auto& pc : basis->pairs()) {
    images[pc] = sq.apply(basis->m(pc));
    if (basis->coordinate(images[pc], {0, 0})) res.u.toggle(static_cast<std::uint32_t>(pc.a), static_cast<std::uint32_t>(pc.b));
  }
  for (const auto& pc : basis->pairs()) {
    if (images[pc] != basis->shifted_sum(res.u, pc)) {
      throw InconsistencyError(pc.a, pc.b, "T11^2 is not multiplication by the extracted series");
    }
  }
  for (const auto& [i, j] : res.u.terms()) {
    if (i % 2 != 0 || j % 2 != 0) {
      throw InternalError("T11^2 series has the odd-degree term X^" + std::to_string(i) + " Y^" + std::to_string(j));
    }
    res.lambda.toggle(i / 2, j / 2);
  }
  return res;
}

std::uint32_t express_depth(std::uint64_t p, std::uint32_t M) {
  if (chi(p) == 1) return M;
  // r = t lambda needs lambda modulo degree M - 1, i.e. depth 2M - 3.
  return std::max<std::uint32_t>({M, 2 * M >= 3 ? 2 * M - 3 : 0, 2});
}

HeckeExpression express_hecke(std::uint64_t p, std::uint32_t M) {
  const HeckePrime hp(p);
  if (M == 0) throw DomainError("truncation order M must be at least 1");
  const auto basis = adapted_basis(express_depth(p, M));
  std::vector<PairCode> pairs;
  for (const auto& pc : basis->pairs()) {
    if (pc.a + pc.b < M) pairs.push_back(pc);
  }
  std::map<PairCode, Combination> nb;
  for (const auto& pc : pairs) nb[pc] = t11_preimage(basis->m(pc));

  auto nb_shifted = [&](const XYPoly& u, PairCode ab) {
    Combination out;
    for (const auto& [i, j] : u.terms()) {
      if (i <= ab.a && j <= ab.b) out += nb.at({ab.a - i, ab.b - j});
    }
    return out;
  };
  auto coord00 = [&](const Combination& v, PairCode pc) {
    try {
      return basis->coordinate(v, {0, 0});
    } catch (const DomainError& e) {
      throw InconsistencyError(pc.a, pc.b, std::string("image leaves the adapted span: ") + e.what());
    }
  };

  HeckeExpression out;
  out.p = p;
  out.order = M;
  if (hp.chi_value() == 1) {
    XYPoly r(M);
    std::map<PairCode, Combination> images;
    for (const auto& pc : pairs) {
      images[pc] = apply_Tp(basis->m(pc), hp);
      if (coord00(images[pc], pc)) r.toggle(static_cast<std::uint32_t>(pc.a), static_cast<std::uint32_t>(pc.b));
    }
    for (const auto& pc : pairs) {
      if (images[pc] != basis->shifted_sum(r, pc)) {
        throw InconsistencyError(pc.a, pc.b, "T" + std::to_string(p) + "(m) differs from r . m");
      }
      if (apply_Tp(nb.at(pc), hp) != nb_shifted(r, pc)) {
        throw InconsistencyError(pc.a, pc.b, "T" + std::to_string(p) + "(n) differs from r . n");
      }
    }
    out.element = {r, XYPoly(M)};
    out.t_factor = XYPoly(M);
    return out;
  }

  XYPoly t(M);
  std::map<PairCode, Combination> images;
  for (const auto& pc : pairs) {
    images[pc] = apply_Tp(nb.at(pc), hp);
    if (coord00(images[pc], pc)) t.toggle(static_cast<std::uint32_t>(pc.a), static_cast<std::uint32_t>(pc.b));
  }
  const HeckePrime p11(11);
  for (const auto& pc : pairs) {
    if (images[pc] != basis->shifted_sum(t, pc)) {
      throw InconsistencyError(pc.a, pc.b, "T" + std::to_string(p) + "(n) differs from t . m");
    }
    Combination expected;
    for (const auto& [i, j] : t.terms()) {
      if (i <= pc.a && j <= pc.b) expected += apply_Tp(basis->m(pc.a - i, pc.b - j), p11);
    }
    if (apply_Tp(basis->m(pc), hp) != expected) {
      throw InconsistencyError(pc.a, pc.b, "T" + std::to_string(p) + "(m) differs from t . T11(m)");
    }
  }
  const XYPoly lambda = lambda_series(basis->depth()).lambda;
  out.t_factor = t;
  out.element = {(t * lambda).truncated(M), t};
  out.through_t11 = true;
  return out;
}

// ---------------------------------------------------------------------------
// T_3 oracle

Combination tk_oracle(std::uint64_t k) {
  if (chi(k) != 1) throw DomainError("tk_oracle needs k = 1, 3, 7, 9 mod 20, got " + std::to_string(k));
  static const std::map<std::uint64_t, Combination> initial = {
      {1, {}},        {3, {1}},           {7, {}},           {9, {3}},
      {21, {7}},      {23, {21}},         {27, {9}},         {29, {23}},
      {41, {}},       {43, {41}},         {47, {21}},        {49, {43, 27}},
      {61, {47, 23}}, {63, {61, 29, 21}}, {67, {49, 41}},    {69, {63, 47, 23}},
  };
  static std::mutex mu;
  static std::map<std::uint64_t, Combination> memo;
  std::lock_guard<std::mutex> lock(mu);
  auto shift = [](const Combination& c, std::uint64_t s) {
    std::vector<std::uint64_t> idx;
    for (auto i : c.indices()) idx.push_back(i + s);
    return Combination(std::move(idx));
  };
  auto get = [&](std::uint64_t kk) -> Combination {
    if (kk < 80) return initial.at(kk);
    return memo.at(kk);
  };
  // Fill the residue class of k upward so every lookup is already present.
  for (std::uint64_t kk = k % 20 + 80; kk <= k; kk += 20) {
    if (memo.count(kk)) continue;
    memo[kk] = shift(get(kk - 80), 80) + shift(get(kk - 60), 20);
  }
  return get(k);
}

}  // namespace mfmod2
