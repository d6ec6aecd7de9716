#ifndef MINIMAX_HARNESS_HPP
#define MINIMAX_HARNESS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace minimax {

/// One adversarial experiment: a method, a budget, and the instance scale.
struct ExperimentConfig {
  double L = 1.0;
  double R = 1.0;
  int N = 1;
  int d = 0;  // 0 means N+1
  std::string method = "ogm";
  double tol = 1e-10;
  std::uint64_t seed = 42;
  std::string csv_path;         // when nonempty, the row is appended here
  std::string transcript_path;  // when nonempty, the transcript is written here
};

/// One CSV row. ratio = gap / bound; quadratic_ref is the risk level of the
/// quadratic subclass, for context.
struct RunRecord {
  std::string method;
  int N = 0;
  double L = 0.0;
  double R = 0.0;
  int d = 0;
  int calls = 0;
  double gap = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
  double quadratic_ref = 0.0;
  std::string transcript_path;
  bool replay_ok = true;  // not a CSV column
};

/// Builds a resisting oracle, runs the configured method, finalizes,
/// replay-verifies, and emits the requested files.
RunRecord run_experiment(const ExperimentConfig& config);

/// CSV with header method,N,L,R,d,calls,gap,bound,ratio,quadratic_ref,transcript_path.
/// Numbers carry 17 significant digits so files diff and round-trip exactly.
void export_csv(const std::vector<RunRecord>& records, const std::string& path);
std::vector<RunRecord> import_csv(const std::string& path);

struct CertifyConfig {
  int n_max = 30;  // method sweep runs N = 1..n_max
  double L = 1.0;
  double R = 1.0;
  double tol = 1e-10;
  std::uint64_t seed = 42;
};

struct CertificateCheck {
  std::string name;
  int group = 0;  // checks with the same group certify one claim
  double expected = 0.0;
  double observed = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct CertificateReport {
  std::vector<CertificateCheck> checks;
  int passed = 0;
  int failed = 0;

  bool all_pass() const { return failed == 0 && !checks.empty(); }
};

/// Runs the full certification suite: exact-risk squeeze for OGM, the
/// lower-bound sweep for GD/FGM, instance identities, interpolation,
/// evaluator cross-checks, minimum-value and inactive-coordinate properties,
/// smoothness probes, transcript replay, and the asymptotic ratio.
CertificateReport certify(const CertifyConfig& config);

std::string certificate_to_json(const CertificateReport& report);
void save_certificate(const CertificateReport& report, const std::string& path);

/// "%.17g" formatting used for all floating-point output.
std::string format_double(double v);

}  // namespace minimax

#endif
