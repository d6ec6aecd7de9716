#include "minimax/oracle.hpp"

#include <cmath>
#include <fstream>
#include <utility>

#include <json.hpp>

namespace minimax {

namespace {

constexpr double kResidualTol = 1e-12;   // relative to 1 + ||w||
constexpr double kSignTol = 1e-12;       // inner products below this keep their sign
constexpr double kFallbackNorm = 0.5;

// Two-pass Gram-Schmidt of w against the frame. Returns the residual.
Vec orthogonalize(const Vec& w, const std::vector<Vec>& frame) {
  Vec t = w;
  for (int pass = 0; pass < 2; ++pass) {
    for (const Vec& v : frame) axpy(t, -dot(t, v), v);
  }
  return t;
}

}  // namespace

FinalizedFunction::FinalizedFunction(WorstCaseFunction base, std::vector<Vec> frame,
                                     Vec x0)
    : base_(std::move(base)), frame_(std::move(frame)), x0_(std::move(x0)) {
  if (frame_.size() != static_cast<std::size_t>(base_.N) + 1) {
    throw std::invalid_argument("FinalizedFunction: frame must have N+1 vectors");
  }
  minimizer_ = x0_;
  const Vec& xstar = base_.triples.points[base_.N + 1].x;
  for (std::size_t j = 0; j < frame_.size(); ++j) {
    axpy(minimizer_, xstar[j], frame_[j]);
  }
}

OracleAnswer FinalizedFunction::eval(const Vec& z) const {
  if (z.size() != x0_.size()) {
    throw std::invalid_argument("FinalizedFunction::eval: dimension mismatch");
  }
  const Vec w = sub(z, x0_);
  Vec y(frame_.size());
  for (std::size_t j = 0; j < frame_.size(); ++j) y[j] = dot(w, frame_[j]);
  const EvalResult e = eval_worst_case(base_, y);
  OracleAnswer answer;
  answer.value = e.value;
  answer.gradient = zeros(z.size());
  for (std::size_t j = 0; j < frame_.size(); ++j) {
    axpy(answer.gradient, e.gradient[j], frame_[j]);
  }
  return answer;
}

double FinalizedFunction::value(const Vec& z) const { return eval(z).value; }

ResistingOracle::ResistingOracle(int d, int N, double L, double R, Vec x0)
    : d_(d), N_(N), L_(L), R_(R), x0_(std::move(x0)) {
  if (N < 1) throw std::invalid_argument("ResistingOracle: N must be >= 1");
  if (d < N + 1) {
    throw std::invalid_argument("ResistingOracle: requires dimension d >= N+1");
  }
  if (!(L > 0.0) || !(R > 0.0)) {
    throw std::invalid_argument("ResistingOracle: L and R must be positive");
  }
  if (x0_.size() != static_cast<std::size_t>(d)) {
    throw std::invalid_argument("ResistingOracle: x0 has wrong dimension");
  }
  base_ = build_triples(zeta_star(N, R), L);
  transcript_.d = d;
  transcript_.N = N;
  transcript_.L = L;
  transcript_.R = R;
  transcript_.x0 = x0_;
}

Vec ResistingOracle::fallback_vector() const {
  // Lowest-index canonical basis vector whose component orthogonal to the
  // frame is large enough; otherwise the one with the largest component
  // (nonzero because the frame never spans the whole space).
  Vec best;
  double best_norm = -1.0;
  for (int i = 0; i < d_; ++i) {
    Vec t = orthogonalize(unit(d_, i), frame_);
    const double n = norm(t);
    if (n >= kFallbackNorm) {
      scale(t, 1.0 / n);
      return t;
    }
    if (n > best_norm) {
      best_norm = n;
      best = std::move(t);
    }
  }
  if (best_norm <= 0.0) throw std::logic_error("fallback_vector: frame spans space");
  scale(best, 1.0 / best_norm);
  return best;
}

Vec ResistingOracle::next_frame_vector(const Vec& w) {
  Vec t = orthogonalize(w, frame_);
  const double n = norm(t);
  Vec v;
  if (n < kResidualTol * (1.0 + norm(w))) {
    v = fallback_vector();
  } else {
    v = std::move(t);
    scale(v, 1.0 / n);
  }
  if (dot(w, v) <= -kSignTol) scale(v, -1.0);
  return v;
}

OracleAnswer ResistingOracle::query(const Vec& z) {
  if (finalized_) throw std::logic_error("ResistingOracle: query after finalize");
  if (queries_used_ >= N_) {
    throw BudgetError("ResistingOracle: budget of " + std::to_string(N_) +
                      " queries exhausted");
  }
  if (z.size() != static_cast<std::size_t>(d_)) {
    throw std::invalid_argument("ResistingOracle::query: dimension mismatch");
  }

  const Vec w = sub(z, x0_);
  frame_.push_back(next_frame_vector(w));
  const std::size_t k = frame_.size() - 1;

  Vec y(static_cast<std::size_t>(N_) + 1, 0.0);
  for (std::size_t j = 0; j <= k; ++j) y[j] = dot(w, frame_[j]);

  const EvalResult e = eval_worst_case(base_, y);
  OracleAnswer answer;
  answer.value = e.value;
  answer.gradient = zeros(d_);
  // Components past the newest frame vector vanish: the query has a
  // nonnegative coordinate along v_k and zero coordinates beyond it.
  for (std::size_t j = 0; j <= k; ++j) axpy(answer.gradient, e.gradient[j], frame_[j]);

  transcript_.records.push_back(
      {static_cast<int>(k), z, answer.value, answer.gradient, frame_.back()});
  ++queries_used_;
  return answer;
}

FinalizedFunction ResistingOracle::finalize(const Vec& output) {
  if (finalized_) throw std::logic_error("ResistingOracle: finalize called twice");
  if (output.size() != static_cast<std::size_t>(d_)) {
    throw std::invalid_argument("ResistingOracle::finalize: dimension mismatch");
  }
  while (frame_.size() < static_cast<std::size_t>(N_)) {
    frame_.push_back(fallback_vector());
  }
  frame_.push_back(next_frame_vector(sub(output, x0_)));

  FinalizedFunction fn(base_, frame_, x0_);
  finalized_ = true;
  transcript_.finalized = true;
  transcript_.output = output;
  transcript_.gap = fn.value(output);
  const double thN = theta_sequence(N_).back();
  transcript_.bound = L_ * R_ * R_ / (2.0 * thN * thN);
  return fn;
}

ReplayReport replay_verify(const FinalizedFunction& fn, const Transcript& transcript,
                           double tol) {
  ReplayReport report;
  for (const TranscriptRecord& rec : transcript.records) {
    const OracleAnswer fresh = fn.eval(rec.z);
    ReplayRecordResult r;
    r.k = rec.k;
    r.value_err = std::abs(fresh.value - rec.value);
    r.grad_err = norm(sub(fresh.gradient, rec.grad));
    r.ok = r.value_err <= tol && r.grad_err <= tol;
    report.max_value_err = std::max(report.max_value_err, r.value_err);
    report.max_grad_err = std::max(report.max_grad_err, r.grad_err);
    if (!r.ok) report.pass = false;
    report.records.push_back(std::move(r));
  }
  return report;
}

void save_transcript(const Transcript& transcript, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_transcript: cannot open " + path);
  nlohmann::json header = {{"type", "header"}, {"d", transcript.d},
                           {"N", transcript.N}, {"L", transcript.L},
                           {"R", transcript.R}, {"x0", transcript.x0}};
  out << header.dump() << '\n';
  for (const TranscriptRecord& rec : transcript.records) {
    nlohmann::json q = {{"type", "query"}, {"k", rec.k}, {"z", rec.z},
                        {"value", rec.value}, {"grad", rec.grad}};
    out << q.dump() << '\n';
  }
  if (transcript.finalized) {
    nlohmann::json footer = {{"type", "final"}, {"output", transcript.output},
                             {"gap", transcript.gap}, {"bound", transcript.bound}};
    out << footer.dump() << '\n';
  }
  if (!out) throw std::runtime_error("save_transcript: write failed for " + path);
}

Transcript load_transcript(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_transcript: cannot open " + path);
  Transcript transcript;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const nlohmann::json j = nlohmann::json::parse(line);
    const std::string type = j.at("type").get<std::string>();
    if (type == "header") {
      transcript.d = j.at("d").get<int>();
      transcript.N = j.at("N").get<int>();
      transcript.L = j.at("L").get<double>();
      transcript.R = j.at("R").get<double>();
      transcript.x0 = j.at("x0").get<Vec>();
      have_header = true;
    } else if (type == "query") {
      TranscriptRecord rec;
      rec.k = j.at("k").get<int>();
      rec.z = j.at("z").get<Vec>();
      rec.value = j.at("value").get<double>();
      rec.grad = j.at("grad").get<Vec>();
      transcript.records.push_back(std::move(rec));
    } else if (type == "final") {
      transcript.finalized = true;
      transcript.output = j.at("output").get<Vec>();
      transcript.gap = j.at("gap").get<double>();
      transcript.bound = j.at("bound").get<double>();
    } else {
      throw std::runtime_error("load_transcript: unknown record type " + type);
    }
  }
  if (!have_header) throw std::runtime_error("load_transcript: missing header in " + path);
  return transcript;
}

}  // namespace minimax
