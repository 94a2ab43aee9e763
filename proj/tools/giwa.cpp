// giwa: spanning trees, zeta functions and Iwasawa invariants of abelian
// l-towers of Cayley-Serre multigraphs.

#include "giwa/cyclotomic.hpp"
#include "giwa/iwasawa.hpp"
#include "giwa/multigraph.hpp"
#include "giwa/voltage.hpp"
#include "giwa/zeta.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitVerification = 2;

/// Raised for malformed input; maps to exit code 1.
struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::int64_t prime = 2;
  std::string generators;
  int levels = 6;
  std::string format = "text";
  std::int64_t cap_vertices = giwa::kDefaultMatrixTreeCap;
  std::size_t budget_bits = giwa::kDefaultBudgetBits;
  bool parallel = false;
  std::string input;
  std::string output;
};

std::vector<std::int64_t> parse_generators(const std::string& text) {
  std::vector<std::int64_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    const std::string_view token(text.data() + start, end - start);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
      throw InvalidInput("bad generator '" + std::string(token) + "' in '" + text + "'");
    }
    out.push_back(value);
    start = end + 1;
  }
  return out;
}

giwa::TowerSpec make_spec(const Config& cfg) {
  if (cfg.generators.empty()) throw InvalidInput("--generators is required");
  giwa::TowerSpec spec{cfg.prime, parse_generators(cfg.generators)};
  try {
    spec.validate();
  } catch (const std::invalid_argument& err) {
    throw InvalidInput(err.what());
  }
  return spec;
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& err) {
    throw InvalidInput(path + ": " + err.what());
  }
}

void emit(const Config& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output);
  if (!out) throw InvalidInput("cannot write " + cfg.output);
  out << text;
}

int cmd_tower(const Config& cfg) {
  const giwa::TowerSpec spec = make_spec(cfg);
  const giwa::TowerReport report = giwa::build_report(spec, cfg.levels, {cfg.parallel, cfg.budget_bits});
  if (cfg.format == "json") {
    emit(cfg, giwa::to_json(report).dump(2) + "\n");
  } else if (cfg.format == "csv") {
    emit(cfg, giwa::to_csv(report));
  } else {
    emit(cfg, giwa::to_text(report));
  }
  return report.consistent() ? kExitOk : kExitVerification;
}

int cmd_kappa(const Config& cfg) {
  const giwa::TowerSpec spec = make_spec(cfg);
  const giwa::BigInt kappa = giwa::kappa_exact(spec, cfg.levels, cfg.budget_bits);
  const long ord = giwa::ord_p(kappa, static_cast<unsigned long>(spec.prime));
  if (cfg.format == "json") {
    const nlohmann::json j = {{"l", spec.prime},         {"generators", spec.generators}, {"n", cfg.levels},
                              {"kappa", giwa::to_decimal(kappa)}, {"ord_l_kappa", std::to_string(ord)}};
    emit(cfg, j.dump(2) + "\n");
  } else if (cfg.format == "csv") {
    emit(cfg, "n,kappa,ord_l_kappa\n" + std::to_string(cfg.levels) + "," + giwa::to_decimal(kappa) + "," + std::to_string(ord) + "\n");
  } else {
    emit(cfg, "kappa_" + std::to_string(cfg.levels) + " = " + giwa::factored_form(kappa) + "\nord_" + std::to_string(spec.prime) +
                  " = " + std::to_string(ord) + "\n");
  }
  return kExitOk;
}

giwa::Multigraph load_graph(const std::string& path) {
  try {
    giwa::Multigraph x = giwa::multigraph_from_json(read_json(path));
    if (const auto violations = giwa::validate_serre(x); !violations.empty()) {
      throw InvalidInput(path + ": " + violations.front().message);
    }
    return x;
  } catch (const std::invalid_argument& err) {
    throw InvalidInput(path + ": " + err.what());
  } catch (const std::out_of_range& err) {
    throw InvalidInput(path + ": " + err.what());
  }
}

giwa::VoltageGraph load_voltage_graph(const std::string& path) {
  try {
    return giwa::voltage_graph_from_json(read_json(path));
  } catch (const std::invalid_argument& err) {
    throw InvalidInput(path + ": " + err.what());
  } catch (const std::out_of_range& err) {
    throw InvalidInput(path + ": " + err.what());
  }
}

int cmd_zeta(const Config& cfg) {
  const giwa::Multigraph x = load_graph(cfg.input);
  const giwa::ZetaReciprocal z = giwa::ihara_Z(x, cfg.parallel);
  const giwa::SpecialValues sv = giwa::special_values(z.h, x);
  const giwa::BigInt kappa = giwa::spanning_tree_count(x, {.vertex_cap = cfg.cap_vertices});
  bool ok = sv.h_at_1 == 0 && z.degree() == 2 * static_cast<long>(x.undirected_edge_count());
  if (sv.kappa_implied) ok = ok && *sv.kappa_implied == kappa;
  if (giwa::euler_characteristic(x) == 0) {
    ok = ok && sv.d2h_at_1 == 2 * giwa::BigInt(static_cast<long>(x.vertex_count())) * static_cast<long>(x.vertex_count());
  }
  if (cfg.format == "json") {
    nlohmann::json j = {{"h", giwa::poly_to_json(z.h)},
                        {"Z_exponent", std::to_string(z.exponent)},
                        {"chi", std::to_string(giwa::euler_characteristic(x))},
                        {"kappa", giwa::to_decimal(kappa)},
                        {"h_at_1", giwa::to_decimal(sv.h_at_1)},
                        {"dh_at_1", giwa::to_decimal(sv.dh_at_1)},
                        {"d2h_at_1", giwa::to_decimal(sv.d2h_at_1)},
                        {"verified", ok}};
    emit(cfg, j.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << "h = " << giwa::to_string(z.h) << ", kappa = " << giwa::to_decimal(kappa) << '\n';
    out << "Z = (1 - u^2)^" << z.exponent << " * h, deg Z = " << z.degree() << '\n';
    out << "chi = " << giwa::euler_characteristic(x) << '\n';
    out << "h(1) = " << sv.h_at_1 << ", h'(1) = " << sv.dh_at_1 << ", h''(1) = " << sv.d2h_at_1 << '\n';
    out << (ok ? "PASS" : "FAIL") << '\n';
    emit(cfg, out.str());
  }
  return ok ? kExitOk : kExitVerification;
}

int cmd_cover_verify(const Config& cfg) {
  const giwa::VoltageGraph vg = load_voltage_graph(cfg.input);
  if (vg.base().vertex_count() * vg.modulus() > cfg.cap_vertices) {
    throw InvalidInput("cover exceeds --cap-vertices");
  }
  const auto product = giwa::verify_product_formula(vg, cfg.parallel);
  std::optional<giwa::IntegerDecompositionReport> decomposition;
  if (giwa::euler_characteristic(vg.base()) != 0) decomposition = giwa::verify_integer_decomposition(vg, cfg.parallel);
  const bool ok = product.holds && (!decomposition || decomposition->holds);
  if (cfg.format == "json") {
    nlohmann::json j = {{"m", vg.modulus()},
                        {"product_formula", {{"holds", product.holds},
                                             {"lhs", giwa::poly_to_json(product.lhs)},
                                             {"rhs", giwa::poly_to_json(product.rhs)}}},
                        {"integer_decomposition", nullptr},
                        {"verified", ok}};
    if (decomposition) {
      j["integer_decomposition"] = {{"holds", decomposition->holds},
                                    {"lhs", giwa::to_decimal(decomposition->lhs)},
                                    {"rhs", giwa::to_decimal(decomposition->rhs)}};
    }
    emit(cfg, j.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << "h_Y = " << giwa::to_string(product.lhs) << '\n';
    out << "product formula: " << (product.holds ? "PASS" : "FAIL") << '\n';
    if (!product.holds) out << "  product of orbit polynomials = " << giwa::to_string(product.rhs) << '\n';
    if (decomposition) {
      out << "integer decomposition: " << (decomposition->holds ? "PASS" : "FAIL") << " (" << decomposition->lhs
          << " = " << decomposition->rhs << ")\n";
    } else {
      out << "integer decomposition: skipped (chi(base) = 0)\n";
    }
    out << (ok ? "PASS" : "FAIL") << '\n';
    emit(cfg, out.str());
  }
  return ok ? kExitOk : kExitVerification;
}

int cmd_export_dot(const Config& cfg) {
  giwa::Multigraph x;
  std::string name = "X";
  if (!cfg.input.empty()) {
    const nlohmann::json j = read_json(cfg.input);
    if (j.contains("m")) {
      x = giwa::derived_cover(load_voltage_graph(cfg.input));
      name = "Y";
    } else {
      x = load_graph(cfg.input);
    }
  } else {
    const giwa::TowerSpec spec = make_spec(cfg);
    if (cfg.levels < 0) throw InvalidInput("--levels must be nonnegative");
    const giwa::BigInt size = giwa::ipow(giwa::BigInt(static_cast<long>(spec.prime)), static_cast<unsigned long>(cfg.levels));
    if (size > cfg.cap_vertices) throw InvalidInput("layer exceeds --cap-vertices");
    x = giwa::derived_cover(giwa::cayley_serre(size.get_si(), spec.generators));
    name = "X" + std::to_string(cfg.levels);
  }
  if (x.vertex_count() > cfg.cap_vertices) throw InvalidInput("graph exceeds --cap-vertices");
  emit(cfg, giwa::to_dot(x, name));
  return kExitOk;
}

void add_common(CLI::App* sub, Config& cfg) {
  sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  sub->add_option("--cap-vertices", cfg.cap_vertices, "Refuse explicit graphs with more vertices")->check(CLI::PositiveNumber);
  sub->add_option("--budget-bits", cfg.budget_bits, "Bit budget for intermediate integers")
      ->envname("GRAPH_IWASAWA_BUDGET_BITS")
      ->check(CLI::PositiveNumber);
  sub->add_flag("--parallel", cfg.parallel, "Evaluate independent pieces concurrently");
  sub->add_option("-o,--output", cfg.output, "Write to a file instead of stdout");
}

void add_tower_options(CLI::App* sub, Config& cfg, bool levels_required) {
  sub->add_option("-l,--prime", cfg.prime, "The prime l");
  sub->add_option("-a,--generators", cfg.generators, "Comma separated generators, e.g. 3,5 or -1,4");
  auto* levels = sub->add_option("-n,--levels", cfg.levels, "Top level n")->check(CLI::NonNegativeNumber);
  if (levels_required) levels->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spanning trees and Iwasawa invariants of abelian l-towers of multigraphs", "giwa"};
  app.require_subcommand(1);
  Config cfg;

  auto* tower = app.add_subcommand("tower", "Per-level table and invariants of a tower over a bouquet");
  add_tower_options(tower, cfg, false);
  add_common(tower, cfg);

  auto* kappa = app.add_subcommand("kappa", "Exact kappa_n at one level");
  add_tower_options(kappa, cfg, true);
  add_common(kappa, cfg);

  auto* zeta = app.add_subcommand("zeta", "Ihara h(u), Z(u) and kappa of a multigraph JSON file");
  zeta->add_option("graph", cfg.input, "Multigraph JSON")->required();
  add_common(zeta, cfg);

  auto* cover = app.add_subcommand("cover-verify", "Check the L-function product and integer decomposition of a voltage graph");
  cover->add_option("voltage", cfg.input, "Voltage graph JSON")->required();
  add_common(cover, cfg);

  auto* dot = app.add_subcommand("export-dot", "Graphviz rendering of a tower layer, multigraph, or derived cover");
  add_tower_options(dot, cfg, false);
  dot->add_option("file", cfg.input, "Multigraph or voltage graph JSON");
  add_common(dot, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*tower) return cmd_tower(cfg);
    if (*kappa) return cmd_kappa(cfg);
    if (*zeta) return cmd_zeta(cfg);
    if (*cover) return cmd_cover_verify(cfg);
    if (*dot) return cmd_export_dot(cfg);
  } catch (const InvalidInput& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitInvalid;
  } catch (const giwa::BudgetExceeded& err) {
    std::cerr << "error: " << err.what() << " (raise --budget-bits)\n";
    return kExitInvalid;
  } catch (const std::length_error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitInvalid;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& err) {
    std::cerr << "verification failure: " << err.what() << '\n';
    return kExitVerification;
  }
  return kExitInvalid;
}
