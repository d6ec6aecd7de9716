#include "minimax/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "minimax/methods.hpp"
#include "minimax/oracle.hpp"
#include "minimax/theta.hpp"
#include "minimax/worst_case.hpp"

namespace minimax {

namespace {

constexpr const char* kCsvHeader =
    "method,N,L,R,d,calls,gap,bound,ratio,quadratic_ref,transcript_path";

void validate_experiment(const ExperimentConfig& config) {
  if (config.N < 1) throw std::invalid_argument("config: N must be >= 1");
  if (!(config.L > 0.0) || !(config.R > 0.0)) {
    throw std::invalid_argument("config: L and R must be positive");
  }
  if (!(config.tol > 0.0)) throw std::invalid_argument("config: tol must be positive");
  if (method_registry().find(config.method) == method_registry().end()) {
    throw std::invalid_argument("config: unknown method '" + config.method + "'");
  }
  const int d = config.d == 0 ? config.N + 1 : config.d;
  if (d < config.N + 1) {
    throw std::invalid_argument("config: d must be at least N+1");
  }
}

struct Outcome {
  RunRecord record;
  ReplayReport replay;
};

Outcome execute(const ExperimentConfig& config) {
  validate_experiment(config);
  const int d = config.d == 0 ? config.N + 1 : config.d;
  const Vec x0 = zeros(d);

  ResistingOracle oracle(d, config.N, config.L, config.R, x0);
  const RunResult run = run_method(config.method, oracle, x0, config.N, config.L);
  const FinalizedFunction fn = oracle.finalize(run.output);
  const Transcript& transcript = oracle.transcript();
  const ReplayReport replay = replay_verify(fn, transcript);

  Outcome outcome;
  outcome.replay = replay;
  RunRecord& rec = outcome.record;
  rec.method = config.method;
  rec.N = config.N;
  rec.L = config.L;
  rec.R = config.R;
  rec.d = d;
  rec.calls = run.calls_used;
  rec.gap = transcript.gap;
  rec.bound = transcript.bound;
  rec.ratio = transcript.gap / transcript.bound;
  rec.quadratic_ref = reference_bounds(config.L, config.R, config.N).quadratic_ref;
  rec.transcript_path = config.transcript_path;
  rec.replay_ok = replay.pass;

  if (!config.transcript_path.empty()) {
    save_transcript(transcript, config.transcript_path);
  }
  return outcome;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(field);
      field.clear();
    } else {
      field.push_back(ch);
    }
  }
  fields.push_back(field);
  return fields;
}

Vec gaussian_vec(std::size_t n, double scale, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Vec v(n);
  for (double& x : v) x = scale * dist(rng);
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

RunRecord run_experiment(const ExperimentConfig& config) {
  const Outcome outcome = execute(config);
  if (!config.csv_path.empty()) {
    export_csv({outcome.record}, config.csv_path);
  }
  return outcome.record;
}

void export_csv(const std::vector<RunRecord>& records, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("export_csv: cannot open " + path);
  out << kCsvHeader << '\n';
  for (const RunRecord& r : records) {
    out << r.method << ',' << r.N << ',' << format_double(r.L) << ','
        << format_double(r.R) << ',' << r.d << ',' << r.calls << ','
        << format_double(r.gap) << ',' << format_double(r.bound) << ','
        << format_double(r.ratio) << ',' << format_double(r.quadratic_ref) << ','
        << r.transcript_path << '\n';
  }
  if (!out) throw std::runtime_error("export_csv: write failed for " + path);
}

std::vector<RunRecord> import_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("import_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::runtime_error("import_csv: bad header in " + path);
  }
  std::vector<RunRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != 11) throw std::runtime_error("import_csv: bad row in " + path);
    RunRecord r;
    r.method = f[0];
    r.N = std::stoi(f[1]);
    r.L = std::stod(f[2]);
    r.R = std::stod(f[3]);
    r.d = std::stoi(f[4]);
    r.calls = std::stoi(f[5]);
    r.gap = std::stod(f[6]);
    r.bound = std::stod(f[7]);
    r.ratio = std::stod(f[8]);
    r.quadratic_ref = std::stod(f[9]);
    r.transcript_path = f[10];
    records.push_back(std::move(r));
  }
  return records;
}

CertificateReport certify(const CertifyConfig& config) {
  if (config.n_max < 1) throw std::invalid_argument("certify: n_max must be >= 1");
  if (!(config.L > 0.0) || !(config.R > 0.0)) {
    throw std::invalid_argument("certify: L and R must be positive");
  }
  if (!(config.tol > 0.0)) throw std::invalid_argument("certify: tol must be positive");

  const double L = config.L;
  const double R = config.R;
  CertificateReport report;
  auto add = [&report](const std::string& name, int group, double expected,
                       double observed, double tolerance, bool pass) {
    report.checks.push_back({name, group, expected, observed, tolerance, pass});
  };

  double replay_value_err = 0.0;
  double replay_grad_err = 0.0;
  auto sweep_method = [&](const std::string& method, auto&& fold) {
    for (int N = 1; N <= config.n_max; ++N) {
      const int d = N + 1;
      const Vec x0 = zeros(d);
      ResistingOracle oracle(d, N, L, R, x0);
      const RunResult run = run_method(method, oracle, x0, N, L);
      const FinalizedFunction fn = oracle.finalize(run.output);
      const ReplayReport replay = replay_verify(fn, oracle.transcript());
      replay_value_err = std::max(replay_value_err, replay.max_value_err);
      replay_grad_err = std::max(replay_grad_err, replay.max_grad_err);
      fold(N, oracle.transcript().gap, oracle.transcript().bound);
    }
  };

  // 1. OGM meets the certified risk level exactly: the adversary forces
  //    gap >= bound while the method's guarantee caps it at the same value.
  const auto t0 = std::chrono::steady_clock::now();
  double ogm_rel_err = 0.0;
  sweep_method("ogm", [&](int, double gap, double bound) {
    ogm_rel_err = std::max(ogm_rel_err, std::abs(gap - bound) / bound);
  });
  const double ogm_elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  add("ogm_exact_risk_rel_err", 1, 0.0, ogm_rel_err, 1e-6, ogm_rel_err <= 1e-6);
  add("ogm_sweep_runtime_s", 1, 0.0, ogm_elapsed, 10.0, ogm_elapsed < 10.0);

  // 2. Every method's gap stays above the risk level.
  double min_slack = std::numeric_limits<double>::infinity();
  double gd1_gap = std::numeric_limits<double>::quiet_NaN();
  for (const std::string method : {"gd", "fgm"}) {
    sweep_method(method, [&](int N, double gap, double bound) {
      min_slack = std::min(min_slack, gap - bound);
      if (method == "gd" && N == 1) gd1_gap = gap;
    });
  }
  add("method_gap_minus_bound_min", 2, 0.0, min_slack, 1e-9, min_slack >= -1e-9);
  const double gd1_expected = 5.0 / 36.0;
  add("gd_n1_gap", 2, gd1_expected, gd1_gap, 1e-9,
      std::abs(gd1_gap - gd1_expected) <= 1e-9);

  // 3. Instance identities up to N = 1000.
  double theta_interior_err = 0.0;
  double theta_final_err = 0.0;
  double terminal_norm_err = 0.0;
  double final_value_err = 0.0;
  for (int N = 1; N <= 1000; ++N) {
    const ThetaSequence theta = theta_sequence(N);
    const std::vector<double>& th = theta.values;
    for (int i = 1; i <= N - 1; ++i) {
      const double lhs = th[i - 1] * th[i - 1];
      theta_interior_err =
          std::max(theta_interior_err, std::abs(lhs - th[i] * (th[i] - 1.0)) / lhs);
    }
    const double lhs = th[N - 1] * th[N - 1];
    theta_final_err =
        std::max(theta_final_err, std::abs(lhs - 0.5 * th[N] * (th[N] - 1.0)) / lhs);

    const WorstCaseFunction W = build_triples(zeta_star(N, R), L);
    terminal_norm_err = std::max(
        terminal_norm_err, std::abs(norm(W.triples.points[N + 1].x) - R) / R);
    const double expected_fn = L * R * R / (2.0 * th[N] * th[N]);
    final_value_err = std::max(
        final_value_err, std::abs(W.triples.points[N].f - expected_fn) / expected_fn);
  }
  add("terminal_point_norm_rel_err", 3, 0.0, terminal_norm_err, 1e-9,
      terminal_norm_err <= 1e-9);
  add("final_value_rel_err", 3, 0.0, final_value_err, 1e-9, final_value_err <= 1e-9);
  add("theta_interior_identity_rel_err", 3, 0.0, theta_interior_err, 1e-12,
      theta_interior_err <= 1e-12);
  add("theta_final_identity_rel_err", 3, 0.0, theta_final_err, 1e-12,
      theta_final_err <= 1e-12);

  // 4. The instance interpolates its own triples.
  double interp_value_err = 0.0;
  double interp_grad_err = 0.0;
  for (int N = 1; N <= 20; ++N) {
    const WorstCaseFunction W = build_triples(zeta_star(N, R), L);
    for (int i = 0; i <= N + 1; ++i) {
      const TriplePoint& p = W.triples.points[i];
      const EvalResult e = eval_worst_case(W, p.x);
      interp_value_err = std::max(interp_value_err, std::abs(e.value - p.f));
      interp_grad_err = std::max(interp_grad_err, norm(sub(e.gradient, p.g)));
    }
  }
  add("interpolation_value_err", 4, 0.0, interp_value_err, 1e-8,
      interp_value_err <= 1e-8);
  add("interpolation_grad_err", 4, 0.0, interp_grad_err, 1e-8, interp_grad_err <= 1e-8);

  // 5. Pair-scan evaluator vs the full-simplex reference solver.
  {
    std::mt19937_64 rng(config.seed + 5);
    double cross_err = 0.0;
    for (int N = 1; N <= 10; ++N) {
      const WorstCaseFunction W = build_triples(zeta_star(N, R), L);
      for (int p = 0; p < 100; ++p) {
        const Vec y = gaussian_vec(N + 1, R, rng);
        const EvalResult fast = eval_worst_case(W, y);
        const EvalResult ref = eval_worst_case_reference(W, y, config.tol);
        cross_err = std::max(cross_err, std::abs(fast.value - ref.value));
      }
    }
    add("pair_scan_vs_reference_value_err", 5, 0.0, cross_err, 1e-6,
        cross_err <= 1e-6);
  }

  // 6. Minimum-value and inactive-coordinate properties on constructed points.
  {
    std::mt19937_64 rng(config.seed + 6);
    double min_value_slack = std::numeric_limits<double>::infinity();
    double inactive_grad = 0.0;
    for (int N = 1; N <= 10; ++N) {
      const WorstCaseFunction W = build_triples(zeta_star(N, R), L);
      std::uniform_int_distribution<int> pick_k(0, N);
      for (int p = 0; p < 1000; ++p) {
        Vec y = gaussian_vec(N + 1, R, rng);
        const int forced = pick_k(rng);
        y[forced] = std::abs(y[forced]);
        const EvalResult e = eval_worst_case(W, y);
        for (int k = 0; k <= N; ++k) {
          if (y[k] >= 0.0) {
            min_value_slack =
                std::min(min_value_slack, e.value - W.triples.points[k].f);
          }
        }
      }
      if (N >= 1) {
        std::uniform_int_distribution<int> pick_low(0, N - 1);
        for (int p = 0; p < 1000; ++p) {
          Vec y = gaussian_vec(N + 1, R, rng);
          const int k = pick_low(rng);
          std::uniform_int_distribution<int> pick_high(k + 1, N);
          const int n = pick_high(rng);
          y[k] = std::abs(y[k]);
          y[n] = 0.0;
          const EvalResult e = eval_worst_case(W, y);
          inactive_grad = std::max(inactive_grad, std::abs(e.gradient[n]));
        }
      }
    }
    add("min_value_slack", 6, 0.0, min_value_slack, 1e-9, min_value_slack >= -1e-9);
    add("inactive_coordinate_grad", 6, 0.0, inactive_grad, 1e-9, inactive_grad <= 1e-9);
  }

  // 7. Smoothness probes on the N = 10 instance.
  {
    std::mt19937_64 rng(config.seed + 7);
    const int N = 10;
    const WorstCaseFunction W = build_triples(zeta_star(N, R), L);
    double coco_slack = std::numeric_limits<double>::infinity();
    for (int p = 0; p < 1000; ++p) {
      const Vec y1 = gaussian_vec(N + 1, R, rng);
      const Vec y2 = gaussian_vec(N + 1, R, rng);
      const EvalResult e1 = eval_worst_case(W, y1);
      const EvalResult e2 = eval_worst_case(W, y2);
      const Vec dg = sub(e1.gradient, e2.gradient);
      const double slack = e2.value - e1.value - dot(e1.gradient, sub(y2, y1)) -
                           dot(dg, dg) / (2.0 * L);
      coco_slack = std::min(coco_slack, slack);
    }
    double fd_rel_err = 0.0;
    const double h = 1e-6;
    for (int p = 0; p < 100; ++p) {
      const Vec y = gaussian_vec(N + 1, R, rng);
      const EvalResult e = eval_worst_case(W, y);
      Vec fd(N + 1);
      for (int j = 0; j <= N; ++j) {
        Vec yp = y, ym = y;
        yp[j] += h;
        ym[j] -= h;
        fd[j] = (eval_worst_case(W, yp).value - eval_worst_case(W, ym).value) /
                (2.0 * h);
      }
      const double g_norm = std::max(norm(e.gradient), 1e-12);
      fd_rel_err = std::max(fd_rel_err, norm(sub(e.gradient, fd)) / g_norm);
    }
    add("cocoercivity_min_slack", 7, 0.0, coco_slack, 1e-9, coco_slack >= -1e-9);
    add("gradient_fd_rel_err", 7, 0.0, fd_rel_err, 1e-5, fd_rel_err <= 1e-5);
  }

  // 8. Transcript replay across every run above.
  add("replay_max_value_err", 8, 0.0, replay_value_err, 1e-9,
      replay_value_err <= 1e-9);
  add("replay_max_grad_err", 8, 0.0, replay_grad_err, 1e-9, replay_grad_err <= 1e-9);

  // 9. Asymptotic ratio against the quadratic-class level at N = 100.
  {
    const double th100 = theta_sequence(100).back();
    const double ratio = 201.0 * 201.0 / (th100 * th100);
    add("quadratic_to_smooth_ratio_n100", 9, 7.75, ratio, 0.25,
        ratio >= 7.5 && ratio <= 8.0);
  }

  for (const CertificateCheck& c : report.checks) {
    (c.pass ? report.passed : report.failed) += 1;
  }
  return report;
}

std::string certificate_to_json(const CertificateReport& report) {
  nlohmann::json j;
  j["checks"] = nlohmann::json::array();
  for (const CertificateCheck& c : report.checks) {
    j["checks"].push_back({{"name", c.name},
                           {"group", c.group},
                           {"expected", c.expected},
                           {"observed", c.observed},
                           {"tolerance", c.tolerance},
                           {"pass", c.pass}});
  }
  j["summary"] = {{"passed", report.passed}, {"failed", report.failed}};
  return j.dump(2);
}

void save_certificate(const CertificateReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_certificate: cannot open " + path);
  out << certificate_to_json(report) << '\n';
  if (!out) throw std::runtime_error("save_certificate: write failed for " + path);
}

}  // namespace minimax
