// skirent-lab: generate multi-option ski rental instances, run the
// prediction-guided algorithms, sweep bound compliance, emit trade-off
// curves, and check the lower-bound certificate.

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "skirent/button_lp.hpp"
#include "skirent/evaluator.hpp"
#include "skirent/execute.hpp"
#include "skirent/generators.hpp"
#include "skirent/report.hpp"
#include "skirent/tradeoff.hpp"
#include "skirent/version.hpp"

namespace {

using namespace skirent;

double parse_delta(const std::string& text) {
  if (text == "e") return std::exp(1.0);
  if (text.rfind("e^", 0) == 0) return std::exp(std::stod(text.substr(2)));
  return std::stod(text);
}

struct InstanceSource {
  std::string file;
  std::string family;

  std::pair<Instance, std::string> load() const {
    if (!file.empty() && !family.empty())
      throw CLI::ValidationError("give either --instance or --family, not both");
    if (!file.empty()) {
      std::ifstream in(file);
      if (!in) throw CLI::ValidationError("cannot open instance file: " + file);
      nlohmann::json j;
      in >> j;
      return {instance_from_json(j), file};
    }
    if (family.empty()) throw CLI::ValidationError("need --instance <file> or --family <spec>");
    return {instance_from_family_spec(family), family};
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("--instance", file, "instance JSON file");
    cmd->add_option("--family", family,
                    "family spec: classic:<B> | geometric:<b>,<n> | "
                    "random:seed=..,n=..,days=..,cost=..");
  }
};

std::ostream& open_out(const std::string& path, std::ofstream& file) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw CLI::ValidationError("cannot open output file: " + path);
  return file;
}

void print_schedule(const OptTable& table, const Schedule& sched) {
  const auto& options = table.instance().options;
  if (sched.empty()) {
    std::cout << "schedule: (empty)\n";
    return;
  }
  std::cout << "schedule:";
  for (int idx : sched.options) {
    const auto& o = options[static_cast<std::size_t>(idx)];
    std::cout << " option" << idx << "(";
    if (o.infinite())
      std::cout << "inf";
    else
      std::cout << o.days << "d";
    std::cout << "," << format_rational(o.cost) << ")";
  }
  std::cout << "\ncovered days: "
            << (is_forever(sched.covered_days) ? std::string("inf")
                                               : std::to_string(sched.covered_days))
            << ", total cost: " << format_rational(sched.total_cost) << "\n";
}

template <class Money>
int report_run(const OptTable& table, const ExecutionTrace<Money>& trace, std::int64_t t,
               const std::string& trace_path) {
  std::ofstream file;
  std::ostream& os = open_out(trace_path, file);
  dump_trace_jsonl(os, trace);
  double cost;
  if constexpr (std::is_same_v<Money, Rational>)
    cost = to_double(trace.total_cost);
  else
    cost = trace.total_cost;
  std::cout << "total cost: " << format_double(cost);
  if constexpr (std::is_same_v<Money, Rational>)
    std::cout << " (= " << format_rational(trace.total_cost) << ")";
  std::cout << "\n";
  if (t >= 1) {
    double opt = table.optval_d(t);
    std::cout << "optval(" << t << ") = " << format_double(opt)
              << ", ratio = " << format_double(cost / opt) << "\n";
  }
  return 0;
}

int cmd_gen(const InstanceSource& src, const std::string& out_path) {
  auto [inst, name] = src.load();
  std::ofstream file;
  std::ostream& os = open_out(out_path, file);
  os << instance_to_json(inst).dump(2) << "\n";
  return 0;
}

int cmd_opt(const InstanceSource& src, std::int64_t t) {
  auto [inst, name] = src.load();
  if (t < 0 || t > inst.horizon) throw CLI::ValidationError("t must lie in [0, horizon]");
  OptTable table = OptTable::build(inst);
  std::cout << "optval(" << t << ") = " << format_rational(table.optval(t)) << "\n";
  print_schedule(table, table.opt_schedule(t));
  return 0;
}

int cmd_run_det(const InstanceSource& src, const std::string& lambda_text, std::int64_t t_pred,
                std::int64_t t, const std::string& trace_path) {
  auto [raw, name] = src.load();
  auto [inst, scale] = normalize_costs(raw);
  OptTable table = OptTable::build(inst, std::max(t_pred, inst.horizon));
  if (t > table.queryable_days()) throw CLI::ValidationError("t exceeds the table horizon");
  Rational lambda = parse_rational(lambda_text);
  if (lambda == 0) {
    LambdaZeroPlan plan(t_pred, cheapest_option(inst));
    return report_run(table, execute_plan(table, plan, t), t, trace_path);
  }
  DetRunParams p = det_run_params(table, t_pred, lambda);
  DetPlan plan(lambda, p.k, p.budget_scale);
  return report_run(table, execute_plan(table, plan, t), t, trace_path);
}

int cmd_run_rand(const InstanceSource& src, const std::string& delta_text, double s,
                 std::int64_t t_pred, std::int64_t t, double alpha, std::uint64_t seed,
                 bool have_alpha, const std::string& trace_path) {
  auto [raw, name] = src.load();
  auto [inst, scale] = normalize_costs(raw);
  OptTable table = OptTable::build(inst, std::max(t_pred, inst.horizon));
  if (t > table.queryable_days()) throw CLI::ValidationError("t exceeds the table horizon");
  double delta = parse_delta(delta_text);
  RandRunParams run = rand_run_params(table, t_pred, delta, s);
  AlphaDraw draw{alpha};
  if (!have_alpha) {
    std::mt19937_64 rng(seed);
    draw = sample_alpha(rng, delta);
  }
  std::cout << "alpha = " << format_double(draw.value) << ", k = " << run.params.k << "\n";
  RandPlan plan(run.params, draw, t_pred, run.budget_scale);
  return report_run(table, execute_plan(table, plan, t), t, trace_path);
}

int cmd_sweep(const InstanceSource& src, const std::string& algo, const std::string& lambda_text,
              const std::string& delta_text, double s, std::int64_t t_pred, std::int64_t t_min,
              std::int64_t t_max, std::uint64_t seed, const std::string& out_path) {
  auto [raw, name] = src.load();
  auto [inst, scale] = normalize_costs(raw);
  OptTable table = OptTable::build(inst, std::max(t_pred, inst.horizon));
  if (t_max <= 0) t_max = inst.horizon;
  AlgoConfig config;
  if (algo == "det")
    config = DetConfig{parse_rational(lambda_text)};
  else if (algo == "rand")
    config = RandConfig{parse_delta(delta_text), s};
  else
    throw CLI::ValidationError("--algo must be det or rand");
  auto rows = sweep_rows(name, config, table, t_pred, t_min, t_max);
  std::ofstream file;
  std::ostream& os = open_out(out_path, file);
  write_sweep_csv(os, rows, seed);
  return 0;
}

int cmd_curves(const std::string& out_path) {
  std::ofstream file;
  std::ostream& os = open_out(out_path, file);
  write_curves_csv(os, standard_curves(), 0);
  return 0;
}

int cmd_lb_verify(std::int64_t J, const std::string& lambda_text, const std::string& csv_path) {
  Rational lambda = parse_rational(lambda_text);
  DualCertificate cert = build_certificate(J, lambda);
  auto d2 = verify_d2_feasibility(cert);
  auto [scaled, divisor] = scale_to_d1(cert);
  auto d1 = verify_d1_feasibility(scaled);
  Rational ratio = certificate_ratio(J, lambda);
  Rational target = certificate_ratio_limit(lambda);
  std::cout << "J = " << J << ", lambda = " << format_rational(lambda) << "\n";
  std::cout << "certificate: ell = " << cert.ell << ", vhat = " << format_rational(cert.vhat)
            << ", w = " << format_rational(cert.w) << ", u_1 = " << format_rational(cert.u[0])
            << "\n";
  std::cout << "D2 feasible: " << (d2.feasible ? "yes" : "NO") << "  ("
            << d2.constraints_checked << " constraints"
            << (d2.used_affine_shortcut ? ", affine shortcut" : "") << ")\n";
  std::cout << "D1 feasible after scaling by " << format_rational(divisor) << ": "
            << (d1.feasible ? "yes" : "NO") << "\n";
  std::cout << "certificate ratio = " << format_rational(ratio) << " ~= "
            << format_double(to_double(ratio)) << "\n";
  std::cout << "target (1+lambda)^2/(2 lambda) = " << format_rational(target) << " ~= "
            << format_double(to_double(target)) << "\n";
  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    if (!csv) throw CLI::ValidationError("cannot open output file: " + csv_path);
    csv << provenance_line(0) << "\n";
    csv << "J,lambda,ell,ratio,target,d2_feasible,d1_feasible\n";
    csv << J << ',' << format_rational(lambda) << ',' << cert.ell << ','
        << format_double(to_double(ratio)) << ',' << format_double(to_double(target)) << ','
        << d2.feasible << ',' << d1.feasible << "\n";
  }
  return d2.feasible && d1.feasible ? 0 : 1;
}

int cmd_lb_solve(std::int64_t J, const std::string& lambda_text) {
  Rational lambda = parse_rational(lambda_text);
  PrimalSolution sol = solve_primal_exact(J, lambda);
  Rational cert = certificate_ratio(J, lambda);
  std::cout << "J = " << J << ", lambda = " << format_rational(lambda) << "\n";
  std::cout << "gamma* = " << format_rational(sol.result.objective) << " ~= "
            << format_double(to_double(sol.result.objective)) << "  (" << sol.result.pivots
            << " pivots)\n";
  std::cout << "certificate ratio = " << format_rational(cert) << " ~= "
            << format_double(to_double(cert)) << "\n";
  bool weak_duality_ok = sol.result.objective >= cert;
  std::cout << "weak duality gamma* >= certificate: " << (weak_duality_ok ? "yes" : "NO")
            << "\n";
  return weak_duality_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(skirent::kToolName) + " " + skirent::kVersion +
               ": learning-augmented multi-option ski rental laboratory"};
  app.set_version_flag("--version", std::string(skirent::kToolName) + " v" + skirent::kVersion);
  app.require_subcommand(1);

  InstanceSource gen_src, opt_src, det_src, rand_src, sweep_src;
  std::string out_path, trace_path, lambda_text = "1/2", delta_text = "e", algo = "det";
  std::string csv_path;
  std::int64_t t = 0, t_pred = 1, t_min = 1, t_max = 0, J = 10;
  double s = 0, alpha = 1;
  std::uint64_t seed = 1;

  auto* gen = app.add_subcommand("gen", "emit an instance as JSON");
  gen_src.attach(gen);
  gen->add_option("--out", out_path, "output file (default stdout)");

  auto* opt = app.add_subcommand("opt", "print the offline optimum for t days");
  opt_src.attach(opt);
  opt->add_option("--t", t, "day count")->required();

  auto* run_det = app.add_subcommand("run-det", "run the deterministic algorithm once");
  det_src.attach(run_det);
  run_det->add_option("--lambda", lambda_text, "trade-off parameter in [0, 1/2], e.g. 1/3");
  run_det->add_option("--that", t_pred, "predicted day count")->required();
  run_det->add_option("--t", t, "true day count")->required();
  run_det->add_option("--trace", trace_path, "trace JSONL output file (default stdout)");

  auto* run_rand = app.add_subcommand("run-rand", "run the randomized algorithm once");
  rand_src.attach(run_rand);
  run_rand->add_option("--delta", delta_text, "delta >= e; accepts e^x shorthand");
  run_rand->add_option("--s", s, "robustness shift s >= 0");
  run_rand->add_option("--that", t_pred, "predicted day count")->required();
  run_rand->add_option("--t", t, "true day count")->required();
  auto* alpha_opt = run_rand->add_option("--alpha", alpha, "fix the random scale directly");
  run_rand->add_option("--seed", seed, "draw alpha from this seed (default 1)");
  run_rand->add_option("--trace", trace_path, "trace JSONL output file (default stdout)");

  auto* sweep = app.add_subcommand("sweep", "bound-compliance CSV over a range of true T");
  sweep_src.attach(sweep);
  sweep->add_option("--algo", algo, "det | rand");
  sweep->add_option("--lambda", lambda_text, "deterministic parameter");
  sweep->add_option("--delta", delta_text, "randomized delta");
  sweep->add_option("--s", s, "randomized s");
  sweep->add_option("--that", t_pred, "predicted day count")->required();
  sweep->add_option("--t-min", t_min, "first true T (default 1)");
  sweep->add_option("--t-max", t_max, "last true T (default horizon)");
  sweep->add_option("--seed", seed, "provenance seed");
  sweep->add_option("--out", out_path, "output CSV (default stdout)");

  auto* curves = app.add_subcommand("curves", "emit all trade-off curve families as CSV");
  curves->add_option("--out", out_path, "output CSV (default stdout)");

  auto* lb_verify = app.add_subcommand("lb-verify", "check the dual lower-bound certificate");
  lb_verify->add_option("--J", J, "number of buttons")->required();
  lb_verify->add_option("--lambda", lambda_text, "consistency parameter in (0, 1)")->required();
  lb_verify->add_option("--csv", csv_path, "also write a CSV row");

  auto* lb_solve = app.add_subcommand("lb-solve", "solve the primal LP exactly (J <= 14)");
  lb_solve->add_option("--J", J, "number of buttons")->required();
  lb_solve->add_option("--lambda", lambda_text, "consistency parameter in (0, 1)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(gen_src, out_path);
    if (opt->parsed()) return cmd_opt(opt_src, t);
    if (run_det->parsed()) return cmd_run_det(det_src, lambda_text, t_pred, t, trace_path);
    if (run_rand->parsed())
      return cmd_run_rand(rand_src, delta_text, s, t_pred, t, alpha, seed,
                          alpha_opt->count() > 0, trace_path);
    if (sweep->parsed())
      return cmd_sweep(sweep_src, algo, lambda_text, delta_text, s, t_pred, t_min, t_max, seed,
                       out_path);
    if (curves->parsed()) return cmd_curves(out_path);
    if (lb_verify->parsed()) return cmd_lb_verify(J, lambda_text, csv_path);
    if (lb_solve->parsed()) return cmd_lb_solve(J, lambda_text);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
