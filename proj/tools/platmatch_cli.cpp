#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <string>

#include "platmatch/approx_solvers.hpp"
#include "platmatch/errors.hpp"
#include "platmatch/exact_solver.hpp"
#include "platmatch/instance_lab.hpp"
#include "platmatch/json_io.hpp"
#include "platmatch/market_ops.hpp"
#include "platmatch/special_solvers.hpp"

namespace {

using nlohmann::json;
using namespace platmatch;

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

ExactLimits limits_from(int max_exact_flag) {
  ExactLimits limits;
  if (const char* env = std::getenv("PLATFORM_MATCH_MAX_EXACT")) {
    int v = std::atoi(env);
    if (v > 0) {
      limits.max_buyers = v;
      limits.max_sellers = v;
    }
  }
  if (max_exact_flag > 0) {
    limits.max_buyers = max_exact_flag;
    limits.max_sellers = max_exact_flag;
  }
  return limits;
}

json conversion_to_json(const Market& market, const ConversionReport& report) {
  json j;
  j["input_edges"] = edges_to_json(market, report.input_edges)["edges"];
  j["input_delta_w"] = rational_to_json(report.input_delta_w);
  j["input_delta_w_decimal"] = rational_to_double(report.input_delta_w);
  j["chosen_subset"] = edges_to_json(market, report.chosen_subset)["edges"];
  j["revenue"] = rational_to_json(report.revenue);
  j["revenue_decimal"] = rational_to_double(report.revenue);
  j["guarantee"] = rational_to_json(report.guarantee);
  j["guarantee_decimal"] = rational_to_double(report.guarantee);
  j["harmonic_k"] = report.harmonic_k;
  return j;
}

json prm_to_json(const Market& market, const PrmReport& report) {
  json j;
  j["optimal_welfare"] = rational_to_json(report.optimal_welfare);
  j["optimal_welfare_decimal"] = rational_to_double(report.optimal_welfare);
  j["worst_revenue_optimal_welfare"] =
      rational_to_json(report.worst_revenue_optimal_welfare);
  j["worst_revenue_optimal_welfare_decimal"] =
      rational_to_double(report.worst_revenue_optimal_welfare);
  j["ratio"] = rational_to_json(report.ratio);
  j["ratio_decimal"] = rational_to_double(report.ratio);
  j["witness_edges"] = edges_to_json(market, report.witness_edges)["edges"];
  return j;
}

int run(int argc, char** argv) {
  CLI::App app{"competitive-equilibrium platform matching toolkit"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a market instance");
  std::string family, out_path;
  std::map<std::string, std::string> params;
  gen->add_option("--family", family, "instance family")->required();
  gen->add_option("--out", out_path, "output file (default: stdout)");
  for (const char* key : {"n", "m", "k", "eps", "buyers", "sellers", "seed"}) {
    gen->add_option_function<std::string>(
        std::string("--") + key,
        [&params, key](const std::string& v) { params[key] = v; });
  }

  // solve
  auto* solve = app.add_subcommand("solve", "solve for platform revenue");
  std::string solve_input, solver = "auto";
  int max_exact = 0;
  solve->add_option("--input", solve_input, "market JSON")->required();
  solve->add_option("--solver", solver,
                    "auto|exact|swsh|shgb|greedy|hom-convert|min-nm");
  solve->add_option("--max-exact", max_exact, "exact-solver size limit");

  // eval
  auto* eval = app.add_subcommand("eval", "price a platform edge set");
  std::string eval_input, eval_edges;
  eval->add_option("--input", eval_input, "market JSON")->required();
  eval->add_option("--edges", eval_edges, "platform edges JSON")->required();

  // convert
  auto* convert =
      app.add_subcommand("convert", "greedy welfare-to-revenue conversion");
  std::string conv_input, conv_edges;
  convert->add_option("--input", conv_input, "market JSON")->required();
  convert->add_option("--edges", conv_edges,
                      "candidate edges JSON (default: welfare-maximizing)");

  // prm
  auto* prm_cmd = app.add_subcommand("prm", "price of revenue maximization");
  std::string prm_input;
  int prm_max_exact = 0;
  prm_cmd->add_option("--input", prm_input, "market JSON")->required();
  prm_cmd->add_option("--max-exact", prm_max_exact, "exact-solver size limit");

  // verify
  auto* verify = app.add_subcommand("verify", "check an equilibrium");
  std::string ver_input, ver_edges, ver_alloc;
  verify->add_option("--input", ver_input, "market JSON")->required();
  verify->add_option("--edges", ver_edges, "platform edges JSON")->required();
  verify->add_option("--allocation", ver_alloc, "allocation JSON")->required();

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    GenSpec spec{family, params};
    Market market = gen_random(spec);
    json j = market_to_json(market);
    if (out_path.empty()) {
      emit(j);
    } else {
      std::ofstream out(out_path);
      if (!out) throw InstanceError("gen: cannot write '" + out_path + "'");
      out << j.dump(2) << "\n";
    }
    return 0;
  }
  if (solve->parsed()) {
    Market market = load_market(solve_input);
    ExactLimits limits = limits_from(max_exact);
    SolveReport report;
    if (solver == "auto") report = solve_auto(market, limits);
    else if (solver == "exact") report = optimal_revenue(market, limits);
    else if (solver == "swsh") report = swsh_solve(market);
    else if (solver == "shgb") report = shgb_solve(market);
    else if (solver == "greedy") report = greedy_solve(market);
    else if (solver == "hom-convert") report = hom_full_conversion(market);
    else if (solver == "min-nm") report = min_nm_approx(market);
    else throw InstanceError("solve: unknown solver '" + solver + "'");
    json j = report_to_json(market, report);
    j["market_class"] = market_class_name(classify_market(market));
    emit(j);
    return 0;
  }
  if (eval->parsed()) {
    Market market = load_market(eval_input);
    PlatformEdgeSet edges = load_edges(market, eval_edges);
    SolveReport report = report_for_edges(market, edges, "eval", false);
    emit(report_to_json(market, report));
    return 0;
  }
  if (convert->parsed()) {
    Market market = load_market(conv_input);
    PlatformEdgeSet candidates = conv_edges.empty()
                                     ? welfare_maximizing_edges(market)
                                     : load_edges(market, conv_edges);
    ConversionReport report = greedy_conversion(market, candidates);
    emit(conversion_to_json(market, report));
    return 0;
  }
  if (prm_cmd->parsed()) {
    Market market = load_market(prm_input);
    PrmReport report = prm(market, limits_from(prm_max_exact));
    emit(prm_to_json(market, report));
    return 0;
  }
  if (verify->parsed()) {
    Market market = load_market(ver_input);
    PlatformEdgeSet edges = load_edges(market, ver_edges);
    std::ifstream in(ver_alloc);
    if (!in) throw ParseError("verify: cannot read '" + ver_alloc + "'");
    json ja = json::parse(in, nullptr, false);
    if (ja.is_discarded())
      throw ParseError("verify: invalid JSON in '" + ver_alloc + "'");
    EdgeList allocation = allocation_from_json(market, ja);
    // Pair the given allocation with the maximum competitive prices; any
    // defect (including a non-max-weight allocation) surfaces as a
    // violation rather than an error.
    Equilibrium eq{allocation, max_competitive_prices(market, edges)};
    std::vector<std::string> violations = verify_equilibrium(market, edges, eq);
    json j;
    j["violations"] = violations;
    j["equilibrium"] = equilibrium_to_json(market, eq);
    emit(j);
    return violations.empty() ? 0 : 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    nlohmann::json err;
    err["error"] = e.kind();
    err["message"] = e.what();
    std::cerr << err.dump(2) << "\n";
    if (e.kind() == "capacity") return 2;
    if (e.kind() == "parse") return 3;
    return 1;
  } catch (const std::exception& e) {
    nlohmann::json err;
    err["error"] = "internal";
    err["message"] = e.what();
    std::cerr << err.dump(2) << "\n";
    return 1;
  }
}
