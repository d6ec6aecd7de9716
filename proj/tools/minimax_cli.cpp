#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "minimax/harness.hpp"
#include "minimax/methods.hpp"
#include "minimax/oracle.hpp"
#include "minimax/theta.hpp"
#include "minimax/worst_case.hpp"

namespace {

minimax::Vec parse_point(const std::string& text) {
  minimax::Vec point;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    point.push_back(std::stod(item));
  }
  return point;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  return s.substr(begin, s.find_last_not_of(" \t\r") - begin + 1);
}

// key=value config, '#' comments. Keys match the experiment config fields.
std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line.substr(0, line.find('#')));
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": expected key=value");
    }
    kv[trim(stripped.substr(0, eq))] = trim(stripped.substr(eq + 1));
  }
  return kv;
}

// Fills config fields from the file for every flag not given on the command
// line; flags always win.
void merge_config_file(const std::string& path, const CLI::App& cmd,
                       minimax::ExperimentConfig& config) {
  const std::map<std::string, std::string> kv = read_config_file(path);
  for (const auto& [key, value] : kv) {
    if (key == "method") {
      if (cmd.count("--method") == 0) config.method = value;
    } else if (key == "L") {
      if (cmd.count("--L") == 0) config.L = std::stod(value);
    } else if (key == "R") {
      if (cmd.count("--R") == 0) config.R = std::stod(value);
    } else if (key == "N") {
      if (cmd.count("--N") == 0) config.N = std::stoi(value);
    } else if (key == "d") {
      if (cmd.count("--d") == 0) config.d = std::stoi(value);
    } else if (key == "tol") {
      if (cmd.count("--tol") == 0) config.tol = std::stod(value);
    } else if (key == "seed") {
      if (cmd.count("--seed") == 0) config.seed = std::stoull(value);
    } else if (key == "out") {
      if (cmd.count("--out") == 0) config.csv_path = value;
    } else if (key == "transcript") {
      if (cmd.count("--transcript") == 0) config.transcript_path = value;
    } else {
      throw std::runtime_error("config: unknown key '" + key + "'");
    }
  }
}

void print_record(const minimax::RunRecord& r) {
  using minimax::format_double;
  std::cout << "method,N,L,R,d,calls,gap,bound,ratio,quadratic_ref,transcript_path\n"
            << r.method << ',' << r.N << ',' << format_double(r.L) << ','
            << format_double(r.R) << ',' << r.d << ',' << r.calls << ','
            << format_double(r.gap) << ',' << format_double(r.bound) << ','
            << format_double(r.ratio) << ',' << format_double(r.quadratic_ref) << ','
            << r.transcript_path << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Worst-case construction, resisting oracle, and first-order "
               "method harness for smooth convex minimization"};
  app.require_subcommand(1);

  // bounds
  double L = 1.0, R = 1.0;
  int N = 1;
  std::optional<double> M;
  CLI::App* bounds = app.add_subcommand("bounds", "Print the closed-form risk levels");
  bounds->add_option("--L", L, "Gradient Lipschitz constant")->capture_default_str();
  bounds->add_option("--R", R, "Distance budget")->capture_default_str();
  bounds->add_option("--N", N, "Oracle-call budget")->capture_default_str();
  bounds->add_option("--M", M, "Nonsmooth Lipschitz constant (optional)");

  // eval
  std::string point_text;
  CLI::App* eval = app.add_subcommand("eval", "Evaluate the worst-case function");
  eval->add_option("--L", L, "Gradient Lipschitz constant")->capture_default_str();
  eval->add_option("--R", R, "Distance budget")->capture_default_str();
  eval->add_option("--N", N, "Oracle-call budget")->capture_default_str();
  eval->add_option("--point", point_text, "Comma-separated coordinates, dimension N+1")
      ->required();

  // run
  minimax::ExperimentConfig config;
  std::string run_config_path;
  CLI::App* run = app.add_subcommand("run", "Run one method against the resisting oracle");
  run->add_option("--config", run_config_path, "Config file (key=value, flags override)");
  run->add_option("--method", config.method, "One of gd, fgm, ogm")
      ->capture_default_str();
  run->add_option("--L", config.L, "Gradient Lipschitz constant")->capture_default_str();
  run->add_option("--R", config.R, "Distance budget")->capture_default_str();
  run->add_option("--N", config.N, "Oracle-call budget")->capture_default_str();
  run->add_option("--d", config.d, "Ambient dimension (default N+1)");
  run->add_option("--tol", config.tol, "Inner solver tolerance")->capture_default_str();
  run->add_option("--seed", config.seed, "Seed for random probes")->capture_default_str();
  run->add_option("--out", config.csv_path, "CSV output path");
  run->add_option("--transcript", config.transcript_path, "Transcript JSONL path");

  // certify
  minimax::CertifyConfig certify_config;
  std::string certify_out;
  CLI::App* certify = app.add_subcommand("certify", "Run the certification suite");
  certify->add_option("--n-max", certify_config.n_max, "Method sweep upper budget")
      ->capture_default_str();
  certify->add_option("--L", certify_config.L, "Gradient Lipschitz constant")
      ->capture_default_str();
  certify->add_option("--R", certify_config.R, "Distance budget")->capture_default_str();
  certify->add_option("--tol", certify_config.tol, "Inner solver tolerance")
      ->capture_default_str();
  certify->add_option("--seed", certify_config.seed, "Seed for random probes")
      ->capture_default_str();
  certify->add_option("--out", certify_out, "Report JSON path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (bounds->parsed()) {
      const minimax::BoundsReport report = minimax::reference_bounds(L, R, N, M);
      std::cout << "smooth_exact " << minimax::format_double(report.smooth_exact)
                << "\nquadratic_ref " << minimax::format_double(report.quadratic_ref)
                << '\n';
      if (report.nonsmooth_ref) {
        std::cout << "nonsmooth_ref " << minimax::format_double(*report.nonsmooth_ref)
                  << '\n';
      }
      return 0;
    }

    if (eval->parsed()) {
      const minimax::Vec y = parse_point(point_text);
      const minimax::WorstCaseFunction W =
          minimax::build_triples(minimax::zeta_star(N, R), L);
      const minimax::EvalResult e = minimax::eval_worst_case(W, y);
      std::cout << "value " << minimax::format_double(e.value) << "\ngradient";
      for (double g : e.gradient) std::cout << ' ' << minimax::format_double(g);
      std::cout << "\nactive_pair m=" << e.active_pair->first << " t="
                << minimax::format_double(e.active_pair->second) << '\n';
      return 0;
    }

    if (run->parsed()) {
      if (!run_config_path.empty()) merge_config_file(run_config_path, *run, config);
      if (config.transcript_path.empty()) {
        config.transcript_path =
            "transcript_" + config.method + "_N" + std::to_string(config.N) + ".jsonl";
      }
      const minimax::RunRecord record = minimax::run_experiment(config);
      print_record(record);
      if (!record.replay_ok) {
        std::cerr << "replay verification FAILED\n";
        return 1;
      }
      return 0;
    }

    if (certify->parsed()) {
      const minimax::CertificateReport report = minimax::certify(certify_config);
      for (const minimax::CertificateCheck& c : report.checks) {
        std::printf("[%s] %-34s expected=%-12.6g observed=%-12.6g tol=%-8.3g\n",
                    c.pass ? "PASS" : "FAIL", c.name.c_str(), c.expected, c.observed,
                    c.tolerance);
      }
      std::printf("summary: %d passed, %d failed\n", report.passed, report.failed);
      if (!certify_out.empty()) minimax::save_certificate(report, certify_out);
      return report.all_pass() ? 0 : 1;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 2;
  }
  return 0;
}
