#include "mfmod2/cli.hpp"

#include <charconv>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mfmod2/bitseries.hpp"
#include "mfmod2/checks.hpp"
#include "mfmod2/code.hpp"
#include "mfmod2/errors.hpp"
#include "mfmod2/forms.hpp"
#include "mfmod2/hecke.hpp"
#include "mfmod2/quadideals.hpp"
#include "mfmod2/structure.hpp"

namespace mfmod2::cli {

namespace {

using nlohmann::json;

// Unset flags fall back to per-command defaults.
struct RunConfig {
  std::optional<std::size_t> prec_flag;
  std::optional<std::uint64_t> q_flag;
  std::optional<std::uint32_t> depth_flag;
  std::string format = "text";

  std::size_t prec() const { return prec_flag.value_or(10000); }
  std::uint64_t q() const { return q_flag.value_or(1); }
  std::uint32_t depth() const { return depth_flag.value_or(6); }
  bool json() const { return format == "json"; }
};

// Thrown by command bodies for semantic misuse that CLI11 cannot see.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::optional<std::uint64_t> parse_uint(std::string_view s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

// F, G, H, r, D, Cbar, D<k>, J<k>, D[..] / J[..], or `prec=N; exps=...`.
BitSeries series_operand(const std::string& token, std::size_t prec) {
  if (auto named = parse_named(token)) return gen(*named, prec);
  if (token.size() > 1 && (token[0] == 'D' || token[0] == 'J')) {
    if (token[1] == '[') return series_of(combination_from_text(token), prec);
    if (auto k = parse_uint(std::string_view(token).substr(1))) {
      return token[0] == 'D' ? gen_Dk(*k, prec) : gen_Jk(*k, prec);
    }
  }
  if (token.rfind("prec=", 0) == 0) return series_from_text(token);
  throw UsageError("unknown series '" + token + "'");
}

void emit(std::ostream& out, const RunConfig& cfg, const json& j, const std::string& text) {
  if (cfg.json()) {
    out << j.dump() << '\n';
  } else {
    out << text << '\n';
  }
}

void emit_series(std::ostream& out, const RunConfig& cfg, const BitSeries& f) {
  json j;
  to_json(j, f);
  emit(out, cfg, j, to_text(f));
}

void emit_combination(std::ostream& out, const RunConfig& cfg, const Combination& c) {
  json j;
  to_json(j, c);
  emit(out, cfg, j, to_text(c));
}

std::string quad_text(QuadInt x) {
  std::ostringstream s;
  s << x.b << (x.c < 0 ? "-" : "+") << (x.c < 0 ? -x.c : x.c) << "*sqrt(-10)";
  return s.str();
}

// --- verify ---------------------------------------------------------------

int run_verify(std::ostream& out, const RunConfig& cfg, std::string_view group, const std::vector<std::string>& only) {
  CheckContext ctx;
  if (cfg.prec_flag) ctx.prec = *cfg.prec_flag;
  if (cfg.q_flag) ctx.q = *cfg.q_flag;
  if (cfg.depth_flag) ctx.depth = *cfg.depth_flag;
  std::vector<const CheckItem*> items;
  for (const auto& id : only) {
    const CheckItem* item = find_check(id);
    if (!item) throw UsageError("no check named '" + id + "'");
    items.push_back(item);
  }
  if (only.empty()) {
    for (const auto& item : check_registry()) {
      if (group == "all" || item.group == group) items.push_back(&item);
    }
  }
  bool all_ok = true;
  json report = json::array();
  for (const CheckItem* item : items) {
    const CheckOutcome o = run_check(*item, ctx);
    all_ok = all_ok && o.passed;
    if (cfg.json()) {
      report.push_back({{"id", item->id}, {"passed", o.passed}, {"detail", o.detail}});
    } else {
      out << (o.passed ? "PASS " : "FAIL ") << item->id << ": " << o.detail << '\n';
    }
  }
  if (cfg.json()) out << report.dump() << '\n';
  return all_ok ? kOk : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"mod-2 level-5 modular forms and their Hecke algebra", "mfmod2"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--prec", cfg.prec_flag, "series precision")->check(CLI::Range(std::size_t{64}, std::size_t{1} << 30));
  app.add_option("--q", cfg.q_flag, "level q, a power of 2")->check([](const std::string& s) {
    auto v = parse_uint(s);
    return v && is_power_of_two(*v) ? std::string() : std::string("q must be a power of 2");
  });
  app.add_option("-M,--depth", cfg.depth_flag, "adapted-basis depth / truncation order")->check(CLI::Range(1u, 64u));
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json"}));

  std::function<int()> action;

  // series
  auto* series = app.add_subcommand("series", "named series and operations")->require_subcommand(1);
  std::string s_name;
  auto* s_gen = series->add_subcommand("gen", "print a series");
  s_gen->add_option("name", s_name, "F, G, H, r, D, Cbar, D<k> or J<k>")->required();
  s_gen->callback([&] { action = [&] { emit_series(out, cfg, series_operand(s_name, cfg.prec())); return kOk; }; });

  std::string s_op;
  std::vector<std::string> s_args;
  std::uint64_t s_p = 0;
  std::size_t s_power = 0;
  std::string s_proj;
  auto* s_opc = series->add_subcommand("op", "apply an operation to series");
  s_opc->add_option("op", s_op, "add, mul, square, divide, subst, tp or project")
      ->required()
      ->check(CLI::IsMember({"add", "mul", "square", "divide", "subst", "tp", "project"}));
  s_opc->add_option("operands", s_args, "series operands")->required();
  s_opc->add_option("-p", s_p, "prime for tp");
  s_opc->add_option("--power", s_power, "exponent for subst");
  s_opc->add_option("--projection", s_proj, "pr, pa or pb")->check(CLI::IsMember({"pr", "pa", "pb"}));
  s_opc->callback([&] {
    action = [&] {
      const bool binary = s_op == "add" || s_op == "mul" || s_op == "divide";
      if (s_args.size() != (binary ? 2u : 1u)) throw UsageError("'" + s_op + "' takes " + (binary ? "two operands" : "one operand"));
      const BitSeries f = series_operand(s_args[0], cfg.prec());
      BitSeries r(1);
      if (s_op == "add") r = f + series_operand(s_args[1], cfg.prec());
      if (s_op == "mul") r = f * series_operand(s_args[1], cfg.prec());
      if (s_op == "divide") r = divide_exact(f, series_operand(s_args[1], cfg.prec()));
      if (s_op == "square") r = square(f);
      if (s_op == "subst") {
        if (s_power == 0) throw UsageError("subst needs --power");
        r = substitute_power(f, s_power);
      }
      if (s_op == "tp") r = apply_Tp(f, HeckePrime(s_p));
      if (s_op == "project") {
        if (s_proj.empty()) throw UsageError("project needs --projection");
        r = project(f, s_proj == "pr" ? Projection::kPr : s_proj == "pa" ? Projection::kPa : Projection::kPb);
      }
      emit_series(out, cfg, r);
      return kOk;
    };
  });

  // hecke
  auto* hecke = app.add_subcommand("hecke", "Hecke operators on the D basis")->require_subcommand(1);
  std::uint64_t h_p = 0;
  std::uint64_t h_k = 0;
  std::string h_comb;
  auto* h_apply = hecke->add_subcommand("apply", "T_p of a combination such as D[47,69]");
  h_apply->add_option("-p", h_p, "prime")->required();
  h_apply->add_option("combination", h_comb, "D[...]")->required();
  h_apply->callback([&] {
    action = [&] { emit_combination(out, cfg, apply_Tp(combination_from_text(h_comb), HeckePrime(h_p))); return kOk; };
  });
  auto* h_basis = hecke->add_subcommand("on-basis", "T_p(D_k)");
  h_basis->add_option("-p", h_p, "prime")->required();
  h_basis->add_option("-k", h_k, "index")->required();
  h_basis->callback([&] { action = [&] { emit_combination(out, cfg, Tp_on_Dk(HeckePrime(h_p), h_k)); return kOk; }; });

  // decompose
  std::string d_series;
  auto* decompose = app.add_subcommand("decompose", "write a series in the D basis");
  decompose->add_option("series", d_series, "series operand")->required();
  decompose->callback([&] { action = [&] { emit_combination(out, cfg, decompose_W(series_operand(d_series, cfg.prec()))); return kOk; }; });

  // code
  auto* code = app.add_subcommand("code", "the pair code of W_a")->require_subcommand(1);
  std::uint64_t c_a = 0;
  std::uint64_t c_b = 0;
  std::uint64_t c_k = 0;
  auto* c_p2k = code->add_subcommand("pair2k", "index of (a, b)");
  c_p2k->add_option("a", c_a)->required();
  c_p2k->add_option("b", c_b)->required();
  c_p2k->callback([&] {
    action = [&] {
      const auto k = pair_to_k({c_a, c_b});
      emit(out, cfg, json{{"a", c_a}, {"b", c_b}, {"k", k}}, std::to_string(k));
      return kOk;
    };
  });
  auto* c_k2p = code->add_subcommand("k2pair", "pair of D_k");
  c_k2p->add_option("k", c_k)->required();
  c_k2p->callback([&] {
    action = [&] {
      const auto pc = k_to_pair(c_k);
      emit(out, cfg, json{{"a", pc.a}, {"b", pc.b}, {"k", c_k}}, "(" + std::to_string(pc.a) + "," + std::to_string(pc.b) + ")");
      return kOk;
    };
  });

  // ideals
  auto* ideals = app.add_subcommand("ideals", "ideals of Z[sqrt(-10)] and theta series")->require_subcommand(1);
  std::uint64_t i_n = 0;
  std::uint64_t i_i = 0;
  auto* i_norm = ideals->add_subcommand("norm", "ideals of a given norm with their Gauss classes at level q");
  i_norm->add_option("n", i_n)->required()->check(CLI::PositiveNumber);
  i_norm->callback([&] {
    action = [&] {
      json list = json::array();
      std::ostringstream text;
      const auto table = class_power_table(cfg.q());
      for (const auto& I : ideals_of_norm(i_n)) {
        const bool principal = I.sector == Sector::kPrincipal;
        json j{{"norm", I.norm}, {"sector", principal ? "principal" : "nonprincipal"}, {"generator", {I.alpha.b, I.alpha.c}}};
        text << "(" << quad_text(I.alpha) << (principal ? ")" : ") = I*P");
        if (I.type_a()) {
          const GaussClass g = gauss_class(I, cfg.q());
          j["class"] = {{"label", to_text(g)}, {"exponent", class_exponent(table, g)}};
          text << "  " << to_text(g) << "  C^" << class_exponent(table, g);
        }
        list.push_back(std::move(j));
        text << '\n';
      }
      if (cfg.json()) {
        out << list.dump() << '\n';
      } else {
        out << text.str();
      }
      return kOk;
    };
  });
  bool i_series = false;
  auto* i_theta = ideals->add_subcommand("theta", "mod-2 theta series of C^i (halved for the ambiguous class)");
  i_theta->add_option("-i", i_i, "class exponent")->required();
  i_theta->add_flag("--series", i_series, "print the series instead of its D decomposition");
  i_theta->callback([&] {
    action = [&] {
      const BitSeries t = theta(i_i, cfg.q(), cfg.prec_flag.value_or(di_default_prec(cfg.q())));
      if (i_series) {
        emit_series(out, cfg, t);
      } else {
        emit_combination(out, cfg, decompose_W(t));
      }
      return kOk;
    };
  });
  auto* i_di = ideals->add_subcommand("di-basis", "alpha_0 .. alpha_{2q-1}");
  i_di->callback([&] {
    action = [&] {
      const auto basis = di_basis(cfg.q(), cfg.prec_flag.value_or(0));
      json list = json::array();
      for (std::size_t i = 0; i < basis.size(); ++i) {
        json c;
        to_json(c, basis[i]);
        list.push_back(c);
        if (!cfg.json()) out << "alpha_" << i << " = " << to_text(basis[i]) << '\n';
      }
      if (cfg.json()) out << list.dump() << '\n';
      return kOk;
    };
  });

  // structure
  auto* structure = app.add_subcommand("structure", "the algebra generated by X = T3, Y = T7 and T11")->require_subcommand(1);
  std::uint64_t st_p = 3;
  auto* st_kernel = structure->add_subcommand("kernel", "kernel of T_p on W_a(q)");
  st_kernel->add_option("-p", st_p, "prime (default 3)");
  st_kernel->callback([&] {
    action = [&] {
      const auto ker = kernel(op_matrix(Operator::hecke(st_p), space_Waq(cfg.q())));
      json list = json::array();
      for (const auto& c : ker) {
        json j;
        to_json(j, c);
        list.push_back(j);
        if (!cfg.json()) out << to_text(c) << '\n';
      }
      if (cfg.json()) out << list.dump() << '\n';
      return kOk;
    };
  });
  auto* st_adapted = structure->add_subcommand("adapted", "the adapted basis m_{a,b}, a + b < depth");
  st_adapted->callback([&] {
    action = [&] {
      const auto basis = adapted_basis(cfg.depth());
      json list = json::array();
      for (const auto& pc : basis->pairs()) {
        json c;
        to_json(c, basis->m(pc));
        list.push_back({{"a", pc.a}, {"b", pc.b}, {"m", c}});
        if (!cfg.json()) out << "m(" << pc.a << "," << pc.b << ") = " << to_text(basis->m(pc)) << '\n';
      }
      if (cfg.json()) out << list.dump() << '\n';
      return kOk;
    };
  });
  std::uint64_t ex_p = 0;
  auto* st_express = structure->add_subcommand("express", "T_p modulo (X, Y)^M");
  st_express->add_option("-p", ex_p, "prime")->required();
  st_express->callback([&] {
    action = [&] {
      const HeckeExpression e = express_hecke(ex_p, cfg.depth());
      json j;
      to_json(j, e.element);
      j["p"] = e.p;
      j["through_t11"] = e.through_t11;
      emit(out, cfg, j, to_text(e.element));
      return kOk;
    };
  });
  auto* st_lambda = structure->add_subcommand("lambda", "lambda with T11^2 = lambda^2 on S_depth");
  st_lambda->callback([&] {
    action = [&] {
      const LambdaResult r = lambda_series(cfg.depth());
      json j;
      j["lambda"] = r.lambda;
      j["u"] = r.u;
      j["order"] = r.lambda.order();
      emit(out, cfg, j, "lambda = " + to_text(r.lambda) + " mod deg " + std::to_string(r.lambda.order()));
      return kOk;
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "run registered checks")->require_subcommand(1);
  std::vector<std::string> only;
  for (const char* group : {"identities", "tables", "di", "structure", "properties", "all"}) {
    auto* sub = verify->add_subcommand(group, std::string("checks in group ") + group);
    if (std::string_view(group) == "all") sub->add_option("--only", only, "run just these check ids");
    sub->callback([&, group] { action = [&, group] { return run_verify(out, cfg, group, only); }; });
  }
  auto* v_list = verify->add_subcommand("list", "list registered checks");
  v_list->callback([&] {
    action = [&] {
      for (const auto& item : check_registry()) out << item.id << "  [" << item.group << "]  " << item.summary << '\n';
      return kOk;
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }
  if (!action) {
    err << app.help();
    return kUsage;
  }
  try {
    return action();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "check failed: " << e.what() << '\n';
    return kCheckFailed;
  }
}

}  // namespace mfmod2::cli
