#ifndef MINIMAX_ORACLE_HPP
#define MINIMAX_ORACLE_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "minimax/vec.hpp"
#include "minimax/worst_case.hpp"

namespace minimax {

struct OracleAnswer {
  double value = 0.0;
  Vec gradient;
};

/// Anything a first-order method can interrogate: value and gradient at a
/// query point, nothing else.
class FirstOrderOracle {
 public:
  virtual ~FirstOrderOracle() = default;
  virtual int dimension() const = 0;
  virtual OracleAnswer query(const Vec& z) = 0;
};

/// Thrown when a method exceeds its oracle-call budget.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

struct TranscriptRecord {
  int k = 0;
  Vec z;
  double value = 0.0;
  Vec grad;
  Vec frame_vec;  // in-memory only; not part of the JSONL schema
};

/// Full log of one adversarial run: header, one record per query, and the
/// footer written at finalization.
struct Transcript {
  int d = 0;
  int N = 0;
  double L = 0.0;
  double R = 0.0;
  Vec x0;
  std::vector<TranscriptRecord> records;
  bool finalized = false;
  Vec output;
  double gap = 0.0;
  double bound = 0.0;
};

/// The function the adversary commits to once the run ends: the worst-case
/// instance composed with the orthonormal frame assembled during the run,
///   w(z) = W(<z - x0, v_0>, ..., <z - x0, v_N>).
class FinalizedFunction {
 public:
  FinalizedFunction(WorstCaseFunction base, std::vector<Vec> frame, Vec x0);

  OracleAnswer eval(const Vec& z) const;
  double value(const Vec& z) const;

  /// x* = x0 + sum_j (x_{N+1})_j v_j; satisfies ||x* - x0|| = R and
  /// w(x*) = 0.
  const Vec& minimizer() const { return minimizer_; }
  const std::vector<Vec>& frame() const { return frame_; }
  const WorstCaseFunction& base() const { return base_; }
  const Vec& reference_point() const { return x0_; }

 private:
  WorstCaseFunction base_;
  std::vector<Vec> frame_;
  Vec x0_;
  Vec minimizer_;
};

/// Adversarial oracle: answers are consistent with a smooth convex function
/// that is only pinned down at finalize(). Each query appends one frame
/// vector (lazily extending an orthonormal set), and the answer depends only
/// on the query's coordinates in the frame built so far.
class ResistingOracle final : public FirstOrderOracle {
 public:
  /// Requires d >= N+1 (the construction needs one fresh direction per query
  /// plus one for the output).
  ResistingOracle(int d, int N, double L, double R, Vec x0);

  int dimension() const override { return d_; }

  /// Answers the k-th query. Throws BudgetError once N queries were spent.
  OracleAnswer query(const Vec& z) override;

  /// Pads the frame to length N, appends the output direction, and commits
  /// to the finalized function. Callable once.
  FinalizedFunction finalize(const Vec& output);

  int queries_used() const { return queries_used_; }
  const std::vector<Vec>& frame() const { return frame_; }
  const Transcript& transcript() const { return transcript_; }
  const WorstCaseFunction& base() const { return base_; }

 private:
  Vec next_frame_vector(const Vec& w);
  Vec fallback_vector() const;

  int d_ = 0;
  int N_ = 0;
  double L_ = 0.0;
  double R_ = 0.0;
  Vec x0_;
  WorstCaseFunction base_;
  std::vector<Vec> frame_;
  Transcript transcript_;
  int queries_used_ = 0;
  bool finalized_ = false;
};

struct ReplayRecordResult {
  int k = 0;
  double value_err = 0.0;
  double grad_err = 0.0;
  bool ok = false;
};

struct ReplayReport {
  std::vector<ReplayRecordResult> records;
  bool pass = true;
  double max_value_err = 0.0;
  double max_grad_err = 0.0;
};

/// Re-evaluates every recorded query against the finalized function; passes
/// iff every value and gradient matches within tol. Empty transcripts pass
/// vacuously.
ReplayReport replay_verify(const FinalizedFunction& fn, const Transcript& transcript,
                           double tol = 1e-9);

/// JSON Lines persistence: one header record, one record per query, one
/// footer when finalized.
void save_transcript(const Transcript& transcript, const std::string& path);
Transcript load_transcript(const std::string& path);

}  // namespace minimax

#endif
