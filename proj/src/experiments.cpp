#include "cubetop/experiments.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "cubetop/bounds.hpp"
#include "cubetop/parallel.hpp"
#include "cubetop/union_find.hpp"
#include "cubetop/witness.hpp"

namespace cubetop {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

constexpr std::array<std::string_view, 7> kStatNames = {"face-count",     "maximal-count", "light-count", "beta1",
                                                        "survivor-count", "stage-count",   "vfix-full"};

}  // namespace

SummaryStats summarizeSamples(std::span<const double> xs) {
  SummaryStats s;
  s.count = xs.size();
  if (xs.empty()) return s;
  s.min = *std::min_element(xs.begin(), xs.end());
  s.max = *std::max_element(xs.begin(), xs.end());
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    s.standardError = s.stddev / std::sqrt(static_cast<double>(xs.size()));
  }
  return s;
}

int defaultThreadCount() {
  if (const char* env = std::getenv("CUBETOP_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 1024) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

double expectedMaximalCount(int n, double p) {
  return std::ldexp(static_cast<double>(n), n - 1) * std::pow(1.0 - p, n - 1);
}

std::optional<Statistic> parseStatistic(std::string_view name) {
  for (std::size_t k = 0; k < kStatNames.size(); ++k)
    if (kStatNames[k] == name) return static_cast<Statistic>(k);
  return std::nullopt;
}

std::string_view statisticName(Statistic s) { return kStatNames[static_cast<std::size_t>(s)]; }

std::vector<std::string_view> statisticNames() { return {kStatNames.begin(), kStatNames.end()}; }

void ExperimentConfig::validate() const {
  if (n < 3 || n > kMaxDimension) throw std::invalid_argument("n must lie in [3, 24]");
  if (!(pStart >= 0.0 && pStart <= 1.0) || !(pEnd >= 0.0 && pEnd <= 1.0))
    throw std::invalid_argument("p must lie in [0, 1]");
  if (pEnd < pStart) throw std::invalid_argument("p-end must not be below p-start");
  if (!(pStep > 0.0)) throw std::invalid_argument("p-step must be positive");
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (maxStages < 1) throw std::invalid_argument("max-stages must be at least 1");
  if (stat == Statistic::LightCount)
    for (double p : pValues())
      if (p <= 0.0 || p >= 1.0) throw std::invalid_argument("light-count needs 0 < p < 1");
}

std::vector<double> ExperimentConfig::pValues() const {
  std::vector<double> out;
  for (std::uint64_t k = 0;; ++k) {
    double p = pStart + static_cast<double>(k) * pStep;
    if (p > pEnd + 1e-9) break;
    p = std::round(p * 1e12) / 1e12;
    out.push_back(std::min(p, 1.0));
    if (pStep <= 0.0) break;
  }
  return out;
}

double measureStatistic(Statistic stat, const Complex& c, long long lightThreshold, int maxStages) {
  switch (stat) {
    case Statistic::FaceCount:
      return static_cast<double>(c.faceCount());
    case Statistic::MaximalCount:
      return static_cast<double>(maximalEdgeCount(edgeDegrees(c)));
    case Statistic::LightCount:
      return static_cast<double>(
          lightEdgeCount(edgeDegrees(c), static_cast<int>(std::clamp<long long>(lightThreshold, -1, 255))));
    case Statistic::Beta1:
      return static_cast<double>(beta1F2(ChainComplex::fromComplex(c)));
    case Statistic::SurvivorCount:
      return static_cast<double>(runContraction(c, {maxStages, false}).survivors.size());
    case Statistic::StageCount:
      return static_cast<double>(runContraction(c, {maxStages, false}).stageCount);
    case Statistic::VfixFull:
      return runContraction(c, {maxStages, false}).fullyContracted() ? 1.0 : 0.0;
  }
  throw std::logic_error("unhandled statistic");
}

std::vector<double> runStatistic(int n, double p, std::uint64_t trials, std::uint64_t seed, Statistic stat,
                                 int threads, int maxStages) {
  long long light = 0;
  if (stat == Statistic::LightCount) light = computeThresholds(p).mp;
  return runTrials<double>(trials, seed, threads, [&](std::uint64_t, std::uint64_t s) {
    return measureStatistic(stat, sample(n, p, s), light, maxStages);
  });
}

std::vector<SweepRow> sweep(const ExperimentConfig& config) {
  config.validate();
  std::vector<SweepRow> rows;
  for (double p : config.pValues()) {
    const auto xs = runStatistic(config.n, p, config.trials, config.seed, config.stat, config.threads,
                                 config.maxStages);
    rows.push_back(SweepRow{config.n, p, config.trials, std::string(statisticName(config.stat)),
                            summarizeSamples(xs)});
  }
  return rows;
}

std::string sweepCsv(std::span<const SweepRow> rows) {
  std::string out(kSweepCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += std::to_string(r.n) + ',' + fmt("%.6g", r.p) + ',' + std::to_string(r.trials) + ',' + r.stat + ',' +
           fmt("%.10g", r.stats.mean) + ',' + fmt("%.10g", r.stats.stddev) + ',' +
           fmt("%.10g", r.stats.standardError) + ',' + fmt("%.10g", r.stats.min) + ',' + fmt("%.10g", r.stats.max) +
           '\n';
  }
  return out;
}

nlohmann::json sweepJson(std::span<const SweepRow> rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows)
    arr.push_back({{"n", r.n},
                   {"p", r.p},
                   {"trials", r.trials},
                   {"stat", r.stat},
                   {"mean", r.stats.mean},
                   {"stddev", r.stats.stddev},
                   {"stderr", r.stats.standardError},
                   {"min", r.stats.min},
                   {"max", r.stats.max}});
  return arr;
}

std::string plotScript(std::string_view csvPath, std::string_view stat) {
  std::ostringstream s;
  s << "import csv\n"
       "import matplotlib\n"
       "matplotlib.use('Agg')\n"
       "import matplotlib.pyplot as plt\n\n"
    << "path = '" << csvPath << "'\n"
    << "rows = list(csv.DictReader(open(path)))\n"
       "p = [float(r['p']) for r in rows]\n"
       "mean = [float(r['mean']) for r in rows]\n"
       "err = [3 * float(r['stderr']) for r in rows]\n"
       "plt.errorbar(p, mean, yerr=err, marker='o', capsize=3)\n"
       "plt.xlabel('p')\n"
    << "plt.ylabel('" << stat << "')\n"
    << "plt.title('n = ' + rows[0]['n'] + ', ' + rows[0]['trials'] + ' trials per point' if rows else '')\n"
       "plt.grid(True, alpha=0.3)\n"
       "plt.savefig(path.rsplit('.', 1)[0] + '.png', dpi=120)\n";
  return s.str();
}

// ---------------------------------------------------------------------------

StatsReport statsReport(const Complex& c) {
  StatsReport r;
  r.n = c.dimension();
  r.p = c.p();
  r.seed = c.seed();
  r.faces = c.faceCount();
  const auto degrees = edgeDegrees(c);
  r.maximalEdges = maximalEdgeCount(degrees);
  if (r.p > 0.0 && r.p < 1.0) {
    r.thresholdsDefined = true;
    r.thresholds = computeThresholds(r.p);
    r.lightEdges = lightEdgeCount(degrees, static_cast<int>(std::min<long long>(r.thresholds.mp, 255)));
  }
  r.beta1 = beta1F2(ChainComplex::fromComplex(c));
  return r;
}

nlohmann::json toJson(const StatsReport& r) {
  nlohmann::json j = {{"n", r.n},
                      {"p", r.p},
                      {"seed", r.seed},
                      {"faces", r.faces},
                      {"maximal_edges", r.maximalEdges},
                      {"beta1_f2", r.beta1}};
  if (r.thresholdsDefined) {
    j["t_p"] = r.thresholds.tp;
    j["m_p"] = r.thresholds.mp;
    j["light_edges"] = r.lightEdges;
  } else {
    j["t_p"] = nullptr;
    j["m_p"] = nullptr;
    j["light_edges"] = nullptr;
  }
  return j;
}

nlohmann::json toJson(const ContractionTrace& trace, const SurvivorReport& survivors) {
  nlohmann::json stageSizes = nlohmann::json::array();
  for (const auto& s : trace.stages) stageSizes.push_back(s.size());
  return {{"n", trace.n},
          {"p", trace.p},
          {"seed", trace.seed},
          {"stages", trace.stageCount},
          {"converged", trace.converged},
          {"fixpoint_size", trace.fixpoint.size()},
          {"fully_contracted", trace.fullyContracted()},
          {"stage_sizes", stageSizes},
          {"survivors", survivors.survivors},
          {"survivors_with_maximal_edge", survivors.withMaximalEdge},
          {"survivors_with_light_edge", survivors.withLightEdge},
          {"light_threshold", survivors.lightThreshold}};
}

nlohmann::json toJson(const HomologySummary& h) {
  nlohmann::json j = {{"beta0", h.beta0}, {"beta1_f2", h.beta1F2}, {"torsion_computed", h.torsionComputed}};
  if (h.torsionComputed) {
    j["free_rank"] = h.freeRank;
    j["torsion"] = h.torsion;
  }
  return j;
}

// ---------------------------------------------------------------------------

double poissonWindowP(int n, double c) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  const double p = 0.5 * (1.0 + (std::log(static_cast<double>(n)) + c) / n);
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p = (1 + (ln n + c)/n)/2 falls outside [0, 1]");
  return p;
}

PoissonReport poissonExperiment(int n, double c, std::uint64_t trials, std::uint64_t seed, int threads) {
  if (trials < 1000) throw std::invalid_argument("the Poisson report needs at least 1000 trials");
  PoissonReport r;
  r.n = n;
  r.c = c;
  r.p = poissonWindowP(n, c);
  r.trials = trials;
  r.seed = seed;
  const auto counts = runStatistic(n, r.p, trials, seed, Statistic::MaximalCount, threads);
  r.count = summarizeSamples(counts);
  for (double x : counts) {
    const auto k = static_cast<std::size_t>(x);
    if (r.histogram.size() <= k) r.histogram.resize(k + 1, 0);
    ++r.histogram[k];
  }
  r.probabilityZero = static_cast<double>(r.histogram.empty() ? 0 : r.histogram[0]) / static_cast<double>(trials);
  r.probabilityZeroError = std::sqrt(r.probabilityZero * (1.0 - r.probabilityZero) / static_cast<double>(trials));
  r.expectedMean = expectedMaximalCount(n, r.p);
  r.limitMean = std::exp(-c);
  r.limitProbabilityZero = std::exp(-std::exp(-c));
  return r;
}

nlohmann::json toJson(const PoissonReport& r) {
  return {{"n", r.n},
          {"c", r.c},
          {"p", r.p},
          {"trials", r.trials},
          {"seed", r.seed},
          {"histogram", r.histogram},
          {"mean", r.count.mean},
          {"stderr", r.count.standardError},
          {"expected_mean", r.expectedMean},
          {"limit_mean", r.limitMean},
          {"pr_zero", r.probabilityZero},
          {"pr_zero_stderr", r.probabilityZeroError},
          {"limit_pr_zero", r.limitProbabilityZero}};
}

// ---------------------------------------------------------------------------

bool PartitionCheck::pass() const noexcept {
  return components == static_cast<std::uint64_t>(n) * (n - 1) / 2 && sizesOk && isomorphismOk;
}

PartitionCheck checkPartition(int n) {
  if (n < 3) throw std::invalid_argument("checkPartition needs n >= 3");
  const Cube cube(n);
  const SquareSet all(n, true);
  PartitionCheck out;
  out.n = n;
  const auto dec = components(all, all);
  out.components = dec.components.size();
  out.sizesOk = std::all_of(dec.components.begin(), dec.components.end(),
                            [&](const Component& c) { return c.size == (std::uint64_t{1} << (n - 2)); });
  // Within a class, the square index low bits are the base with the star bits
  // deleted, so each class is identified with the vertices of Q^(n-2).
  std::vector<std::uint64_t> edgesPerClass(cube.pairCount(), 0);
  bool ok = true;
  forEachRelatedPair(all, [&](std::uint64_t a, std::uint64_t b) {
    const auto ca = a >> (n - 2), cb = b >> (n - 2);
    const std::uint64_t mask = (std::uint64_t{1} << (n - 2)) - 1;
    if (ca != cb || std::popcount((a ^ b) & mask) != 1) ok = false;
    ++edgesPerClass[ca];
  });
  const std::uint64_t cubeEdges = static_cast<std::uint64_t>(n - 2) << (n - 3);
  for (auto e : edgesPerClass) ok = ok && e == cubeEdges;
  // Components must coincide with classes.
  for (std::uint64_t s = 0; s < cube.squareCount(); ++s)
    ok = ok && dec.components[dec.label[s]].id == ((s >> (n - 2)) << (n - 2));
  out.isomorphismOk = ok;
  return out;
}

SoundnessCheck checkContractionSoundness(int n, double p, std::uint64_t trials, std::uint64_t seed, int threads) {
  const auto diffs = runTrials<std::uint8_t>(trials, seed, threads, [&](std::uint64_t, std::uint64_t s) {
    const Complex c = sample(n, p, s);
    const auto trace = runContraction(c);
    const auto before = beta1F2(ChainComplex::fromComplex(c));
    const auto after = beta1F2(ChainComplex::fromComplex(fillContracted(c, trace)));
    return static_cast<std::uint8_t>(before != after);
  });
  SoundnessCheck out;
  out.trials = trials;
  for (auto d : diffs) out.mismatches += d;
  return out;
}

std::vector<std::string_view> verifyCheckNames() { return {"partition", "edge-prob", "gs", "witness", "soundness"}; }

namespace {

VerifyReport verifyPartition() {
  VerifyReport r{"partition", {}};
  for (int n = 4; n <= 8; ++n) {
    const auto c = checkPartition(n);
    r.lines.push_back({"partition n=" + std::to_string(n), c.pass(),
                       std::to_string(c.components) + " components (expected " + std::to_string(n * (n - 1) / 2) +
                           "), sizes " + (c.sizesOk ? "ok" : "wrong") + ", cube structure " +
                           (c.isomorphismOk ? "ok" : "wrong")});
  }
  return r;
}

VerifyReport verifyEdgeProb() {
  VerifyReport r{"edge-prob", {}};
  const double p = 0.7;
  const auto rep = componentSubgraphLawCheck(7, p, 2000, 20240601);
  const double target = std::pow(p, 4);
  const double dev = std::abs(rep.edgeFrequency.mean - target);
  r.lines.push_back({"edge frequency n=7 p=0.7", dev <= 3.0 * rep.edgeFrequency.standardError,
                     "mean " + fmt("%.6f", rep.edgeFrequency.mean) + " vs p^4 = " + fmt("%.6f", target) + ", 3 SE = " +
                         fmt("%.6f", 3.0 * rep.edgeFrequency.standardError)});
  const double corr = rep.colorDegreeCorrelation.mean;
  r.lines.push_back({"color/degree correlation", std::abs(corr) <= 3.0 * rep.colorDegreeCorrelation.standardError,
                     "mean " + fmt("%.6f", corr) + ", 3 SE = " +
                         fmt("%.6f", 3.0 * rep.colorDegreeCorrelation.standardError)});
  return r;
}

VerifyReport verifyGs() {
  VerifyReport r{"gs", {}};
  int cases = 0, failures = 0;
  for (int n = 1; n <= kGsExactMaxDimension; ++n)
    for (int s = 1; s <= kGsExactMaxSize; ++s)
      for (int k = 1; k <= 9; ++k) {
        ++cases;
        if (!gsExactWithinBound(n, k / 10.0, s)) ++failures;
      }
  r.lines.push_back({"gs-exact <= gs-bound", failures == 0,
                     std::to_string(cases - failures) + "/" + std::to_string(cases) + " cases"});
  std::uint64_t sets = 0, below = 0;
  for (int n = 1; n <= kGsExactMaxDimension; ++n)
    for (int s = 1; s <= kGsExactMaxSize; ++s)
      forEachConnectedSubset(n, s, [&](std::span<const Vertex> set) {
        ++sets;
        if (static_cast<double>(boundaryCount(n, set)) < isoperimetricBound(n, s) - 1e-9) ++below;
      });
  r.lines.push_back({"b(S) >= s (n - log2 s)", below == 0,
                     std::to_string(sets - below) + "/" + std::to_string(sets) + " connected sets"});
  return r;
}

VerifyReport verifyWitness() {
  VerifyReport r{"witness", {}};
  struct Expect {
    const char* name;
    std::size_t freeRank;
    std::vector<std::int64_t> torsion;
    double threshold;
  };
  const std::vector<Expect> expects = {
      {"torus", 2, {}, 0.021428}, {"rp2", 0, {2}, 0.017179}, {"klein", 1, {2}, 0.01230134}};
  for (const auto& e : expects) {
    const auto w = buildWitness(e.name);
    r.lines.push_back({std::string(e.name) + " edge count", w.edgeCount() == w.expectedEdgeCount,
                       std::to_string(w.edgeCount()) + " (expected " + std::to_string(w.expectedEdgeCount) + ")"});
    const auto h = integerHomology(ChainComplex::fromSquares(w.n, w.squares, false));
    std::string tors;
    for (auto t : h.torsion) tors += (tors.empty() ? "" : ",") + std::to_string(t);
    r.lines.push_back({std::string(e.name) + " homology", h.freeRank == e.freeRank && h.torsion == e.torsion,
                       "free rank " + std::to_string(h.freeRank) + ", torsion {" + tors + "}"});
    r.lines.push_back({std::string(e.name) + " threshold", std::abs(w.threshold() - e.threshold) < 5e-6,
                       fmt("%.8f", w.threshold()) + " vs " + fmt("%.8f", e.threshold)});
  }
  for (int n = 3; n <= 6; ++n) {
    const Edge f{0, 0};
    const auto b = buildBubble(n, f);
    const auto beta = beta1F2(ChainComplex::fromCells(n, b.edges, b.squares));
    bool filledOk = true;
    for (const auto& s : Cube(n).squaresOfEdge(f)) {
      auto sq = b.squares;
      sq.push_back(s);
      filledOk = filledOk && beta1F2(ChainComplex::fromCells(n, b.edges, sq)) == 0;
    }
    r.lines.push_back({"bubble n=" + std::to_string(n), beta == 1 && filledOk,
                       "beta1 " + std::to_string(beta) + ", filled " + (filledOk ? "0" : "nonzero")});
  }
  return r;
}

VerifyReport verifySoundness(int threads) {
  VerifyReport r{"soundness", {}};
  for (int n = 6; n <= 9; ++n)
    for (double p : {0.3, 0.5, 0.7}) {
      const auto c = checkContractionSoundness(n, p, 100, 1000 + n, threads);
      r.lines.push_back({"soundness n=" + std::to_string(n) + " p=" + fmt("%.1f", p), c.mismatches == 0,
                         std::to_string(c.trials - c.mismatches) + "/" + std::to_string(c.trials) +
                             " trials with equal beta1"});
    }
  return r;
}

}  // namespace

VerifyReport runVerify(std::string_view check, int threads) {
  if (check == "partition") return verifyPartition();
  if (check == "edge-prob") return verifyEdgeProb();
  if (check == "gs") return verifyGs();
  if (check == "witness") return verifyWitness();
  if (check == "soundness") return verifySoundness(threads);
  throw std::invalid_argument("unknown check: " + std::string(check));
}

nlohmann::json toJson(const VerifyReport& r) {
  nlohmann::json lines = nlohmann::json::array();
  for (const auto& l : r.lines) lines.push_back({{"name", l.name}, {"pass", l.pass}, {"detail", l.detail}});
  return {{"check", r.check},
          {"pass", r.pass()},
          {"lines", lines},
          {"note", "statistical lines use a 3 standard error band (about 0.3% false-failure rate each)"}};
}

}  // namespace cubetop
