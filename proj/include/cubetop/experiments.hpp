#pragma once

// Monte Carlo drivers behind the command-line tool: trial runner, sweeps,
// the Poisson-regime report and the verify suites, plus their CSV / JSON
// renderings.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <type_traits>
#include <vector>

#include "json.hpp"

#include "cubetop/complex.hpp"
#include "cubetop/contraction.hpp"
#include "cubetop/homology.hpp"
#include "cubetop/rng.hpp"

namespace cubetop {

struct SummaryStats {
  std::uint64_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;         // sample standard deviation (n - 1)
  double standardError = 0.0;  // stddev / sqrt(count)
  double min = 0.0;
  double max = 0.0;
};

SummaryStats summarizeSamples(std::span<const double> xs);

/// CUBETOP_THREADS if set to a positive integer, else the hardware count.
int defaultThreadCount();

/// Runs fn(trialIndex, trialSeed(masterSeed, trialIndex)) for every trial and
/// returns the results in trial order regardless of which thread ran what.
template <typename R, typename Fn>
std::vector<R> runTrials(std::uint64_t trials, std::uint64_t masterSeed, int threads, Fn&& fn) {
  static_assert(!std::is_same_v<R, bool>, "use a byte type; vector<bool> is not thread-safe per element");
  std::vector<R> out(trials);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex errorMutex;
  auto worker = [&] {
    for (;;) {
      const std::uint64_t k = next.fetch_add(1);
      if (k >= trials) return;
      try {
        out[k] = fn(k, trialSeed(masterSeed, k));
      } catch (...) {
        std::lock_guard lock(errorMutex);
        if (!error) error = std::current_exception();
        next.store(trials);
        return;
      }
    }
  };
  const auto count = static_cast<std::uint64_t>(std::max(threads, 1));
  const int workers = static_cast<int>(std::min<std::uint64_t>(count, std::max<std::uint64_t>(trials, 1)));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  return out;
}

/// 2^(n-1) n (1-p)^(n-1): expected number of edges in no 2-face.
double expectedMaximalCount(int n, double p);

enum class Statistic { FaceCount, MaximalCount, LightCount, Beta1, SurvivorCount, StageCount, VfixFull };

std::optional<Statistic> parseStatistic(std::string_view name);
std::string_view statisticName(Statistic s);
std::vector<std::string_view> statisticNames();

struct ExperimentConfig {
  int n = 10;
  double pStart = 0.5;
  double pEnd = 0.5;
  double pStep = 0.05;
  std::uint64_t trials = 100;
  std::uint64_t seed = 1;
  Statistic stat = Statistic::MaximalCount;
  int threads = 1;
  int maxStages = 16;

  /// Throws std::invalid_argument on a bad range, trial count or dimension.
  void validate() const;
  /// pStart, pStart + pStep, ... up to pEnd (inclusive, 1e-9 slack).
  std::vector<double> pValues() const;
};

struct SweepRow {
  int n = 0;
  double p = 0.0;
  std::uint64_t trials = 0;
  std::string stat;
  SummaryStats stats;
};

/// One statistic evaluated on one complex. `lightThreshold` is only used by
/// LightCount.
double measureStatistic(Statistic stat, const Complex& c, long long lightThreshold, int maxStages);

/// All trials at one p; trial t uses sample(n, p, trialSeed(seed, t)).
std::vector<double> runStatistic(int n, double p, std::uint64_t trials, std::uint64_t seed, Statistic stat,
                                 int threads, int maxStages = 16);

std::vector<SweepRow> sweep(const ExperimentConfig& config);

inline constexpr std::string_view kSweepCsvHeader = "n,p,trials,stat,mean,stddev,stderr,min,max";
std::string sweepCsv(std::span<const SweepRow> rows);
nlohmann::json sweepJson(std::span<const SweepRow> rows);
/// A matplotlib script plotting mean +- 3 stderr against p from `csvPath`.
std::string plotScript(std::string_view csvPath, std::string_view stat);

// ---------------------------------------------------------------------------

struct StatsReport {
  int n = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t faces = 0;
  std::uint64_t maximalEdges = 0;
  bool thresholdsDefined = false;  // T_p, M_p exist only for 0 < p < 1
  Thresholds thresholds;
  std::uint64_t lightEdges = 0;  // at M_p
  std::uint64_t beta1 = 0;
};

StatsReport statsReport(const Complex& c);
nlohmann::json toJson(const StatsReport& r);
nlohmann::json toJson(const ContractionTrace& trace, const SurvivorReport& survivors);
nlohmann::json toJson(const HomologySummary& h);

// ---------------------------------------------------------------------------

struct PoissonReport {
  int n = 0;
  double c = 0.0;
  double p = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> histogram;  // histogram[k] = trials with k maximal edges
  SummaryStats count;
  double probabilityZero = 0.0;
  double probabilityZeroError = 0.0;
  double expectedMean = 0.0;         // 2^(n-1) n (1-p)^(n-1) at this p
  double limitMean = 0.0;            // e^(-c)
  double limitProbabilityZero = 0.0;  // e^(-e^(-c))
};

/// p = (1 + (ln n + c) / n) / 2. Throws std::invalid_argument if trials < 1000
/// or p falls outside [0, 1].
double poissonWindowP(int n, double c);
PoissonReport poissonExperiment(int n, double c, std::uint64_t trials, std::uint64_t seed, int threads);
nlohmann::json toJson(const PoissonReport& r);

// ---------------------------------------------------------------------------

struct CheckLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::string check;
  std::vector<CheckLine> lines;
  bool pass() const noexcept {
    return std::all_of(lines.begin(), lines.end(), [](const CheckLine& l) { return l.pass; });
  }
};

std::vector<std::string_view> verifyCheckNames();

/// Runs a named property suite with fixed seeds. Throws std::invalid_argument
/// for an unknown name; failures are reported in the lines.
VerifyReport runVerify(std::string_view check, int threads);
nlohmann::json toJson(const VerifyReport& r);

// Building blocks shared with the tests.

struct PartitionCheck {
  int n = 0;
  std::uint64_t components = 0;
  bool sizesOk = false;       // every component has 2^(n-2) squares
  bool isomorphismOk = false; // each class maps onto Q^(n-2)_1 by dropping its star coordinates
  bool pass() const noexcept;
};
PartitionCheck checkPartition(int n);

struct SoundnessCheck {
  std::uint64_t trials = 0;
  std::uint64_t mismatches = 0;
};
/// beta1 over F2 of C and of C with the contraction fixpoint filled in.
SoundnessCheck checkContractionSoundness(int n, double p, std::uint64_t trials, std::uint64_t seed, int threads);

}  // namespace cubetop
