// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Every seed, trial count and tolerance is fixed here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "cubetop/bounds.hpp"
#include "cubetop/complex.hpp"
#include "cubetop/contraction.hpp"
#include "cubetop/experiments.hpp"
#include "cubetop/homology.hpp"
#include "cubetop/parallel.hpp"
#include "cubetop/rng.hpp"
#include "cubetop/witness.hpp"

using namespace cubetop;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

int threads() { return defaultThreadCount(); }

Outcome partitionStructure() {
  std::string detail;
  bool ok = true;
  for (int n = 4; n <= 10; ++n) {
    const auto c = checkPartition(n);
    ok = ok && c.pass();
    detail += (detail.empty() ? "" : " ") + std::to_string(c.components);
  }
  return {ok, "components for n=4..10: " + detail};
}

Outcome maximalExpectation() {
  std::string detail;
  bool ok = true;
  const std::uint64_t seeds[] = {2030, 2050, 2070};
  const double ps[] = {0.3, 0.5, 0.7};
  for (int k = 0; k < 3; ++k) {
    const auto s = summarizeSamples(runStatistic(12, ps[k], 10000, seeds[k], Statistic::MaximalCount, threads()));
    const double e = expectedMaximalCount(12, ps[k]);
    const bool hit = std::abs(s.mean - e) <= 3 * s.standardError;
    ok = ok && hit;
    detail += fmt("p=%.1f mean %.4f vs %.4f (3se %.4f); ", ps[k], s.mean, e, 3 * s.standardError);
  }
  ok = ok && expectedMaximalCount(12, 0.5) == 12.0;
  return {ok, detail};
}

Outcome p4Law() {
  const auto r = componentSubgraphLawCheck(7, 0.7, 2000, 20240601);
  const double target = 0.7 * 0.7 * 0.7 * 0.7;
  const bool edge = std::abs(r.edgeFrequency.mean - target) <= 3 * r.edgeFrequency.standardError;
  const bool corr = std::abs(r.colorDegreeCorrelation.mean) <= 3 * r.colorDegreeCorrelation.standardError;
  return {edge && corr, fmt("edge freq %.5f vs 0.2401 (3se %.5f); corr %.5f (3se %.5f)", r.edgeFrequency.mean,
                            3 * r.edgeFrequency.standardError, r.colorDegreeCorrelation.mean,
                            3 * r.colorDegreeCorrelation.standardError)};
}

Outcome poissonRegime() {
  const auto r = poissonExperiment(14, 0.0, 20000, 1414, threads());
  const bool zero = std::abs(r.probabilityZero - std::exp(-1.0)) <= 0.05;
  const bool mean = std::abs(r.count.mean - 1.0) <= 0.05;
  return {zero && mean, fmt("Pr(0) %.4f vs 0.3679 +- 0.05; mean %.4f vs 1 +- 0.05 (finite-n expectation %.4f)",
                            r.probabilityZero, r.count.mean, r.expectedMean)};
}

Outcome contractionBehavior() {
  const long long mp = computeThresholds(0.6).mp;
  const auto lows = runTrials<std::array<std::uint8_t, 2>>(500, 7, threads(), [&](std::uint64_t, std::uint64_t seed) {
    const Complex c = sample(11, 0.6, seed);
    const auto trace = runContraction(c);
    const auto r = survivorReport(trace, mp);
    return std::array<std::uint8_t, 2>{static_cast<std::uint8_t>(trace.converged && trace.stageCount <= 5),
                                       static_cast<std::uint8_t>(r.withLightEdge == r.survivors)};
  });
  const auto highs = runTrials<std::uint8_t>(500, 7, threads(), [](std::uint64_t, std::uint64_t seed) {
    return static_cast<std::uint8_t>(runContraction(sample(11, 0.75, seed)).fullyContracted());
  });
  int fast = 0, light = 0, full = 0;
  for (const auto& l : lows) {
    fast += l[0];
    light += l[1];
  }
  for (auto h : highs) full += h;
  const bool ok = fast == 500 && light >= 495 && full >= 495;
  return {ok, fmt("p=0.6: %g/500 within 5 stages, %g/500 all survivors light; p=0.75: %g/500 fully contracted",
                  fast, light, full)};
}

Outcome soundness() {
  std::uint64_t trials = 0, mismatches = 0;
  for (int n = 6; n <= 10; ++n)
    for (double p : {0.3, 0.5, 0.7}) {
      const auto r = checkContractionSoundness(n, p, 100, 6000 + n, threads());
      trials += r.trials;
      mismatches += r.mismatches;
    }
  return {mismatches == 0 && trials == 1500,
          fmt("%g trials, %g beta1 mismatches", static_cast<double>(trials), static_cast<double>(mismatches))};
}

Outcome freeRankRegime() {
  const auto eq = runTrials<std::uint8_t>(300, 3512, threads(), [](std::uint64_t, std::uint64_t seed) {
    const Complex c = sample(12, 0.35, seed);
    return static_cast<std::uint8_t>(beta1F2(ChainComplex::fromComplex(c)) == maximalEdgeCount(edgeDegrees(c)));
  });
  int hits = 0;
  for (auto e : eq) hits += e;
  return {hits >= 270, fmt("beta1 = maximal count in %g/300 trials (need 270)", hits)};
}

Outcome witnesses() {
  struct Expect {
    const char* name;
    std::size_t edges, freeRank;
    std::vector<std::int64_t> torsion;
    double threshold;
  };
  const std::vector<Expect> expects = {{"torus", 32, 2, {}, 0.021428},
                                       {"rp2", 40, 0, {2}, 0.017179},
                                       {"klein", 56, 1, {2}, 0.01230134}};
  bool ok = true;
  std::string detail;
  for (const auto& e : expects) {
    const auto w = buildWitness(e.name);
    const auto h = integerHomology(ChainComplex::fromSquares(w.n, w.squares, false));
    const bool hit = w.edgeCount() == e.edges && h.freeRank == e.freeRank && h.torsion == e.torsion &&
                     std::abs(w.threshold() - e.threshold) < 5e-6;
    ok = ok && hit;
    detail += std::string(e.name) + fmt(" e=%g rank=%g torsion=%g thr=%.8f; ", static_cast<double>(w.edgeCount()),
                                        static_cast<double>(h.freeRank), static_cast<double>(h.torsion.size()),
                                        w.threshold());
  }
  return {ok, detail};
}

Outcome gsBounds() {
  int cases = 0, good = 0;
  for (int n = 1; n <= 5; ++n)
    for (int s = 1; s <= 5; ++s)
      for (int k = 1; k <= 9; ++k) {
        ++cases;
        good += gsExactWithinBound(n, k / 10.0, s);
      }
  return {good == cases, fmt("%g/%g cases with gs-exact <= gs-bound", good, cases)};
}

Outcome bubbles() {
  bool ok = true;
  std::string detail;
  for (int n = 3; n <= 6; ++n) {
    const Edge f{0, 0};
    const auto b = buildBubble(n, f);
    const auto beta = beta1F2(ChainComplex::fromCells(n, b.edges, b.squares));
    bool filled = true;
    for (const auto& s : Cube(n).squaresOfEdge(f)) {
      auto sq = b.squares;
      sq.push_back(s);
      filled = filled && beta1F2(ChainComplex::fromCells(n, b.edges, sq)) == 0;
    }
    ok = ok && beta == 1 && filled;
    detail += fmt("n=%g beta1 %g, ", n, static_cast<double>(beta)) + (filled ? "filled 0; " : "filled nonzero; ");
  }
  return {ok, detail};
}

Outcome pZero() {
  bool ok = true;
  std::string detail;
  for (int n = 3; n <= 8; ++n) {
    const auto b = beta1F2(ChainComplex::fromComplex(sample(n, 0.0, 1)));
    const std::size_t want = (static_cast<std::size_t>(n - 2) << (n - 1)) + 1;
    ok = ok && b == want;
    detail += fmt("%g ", static_cast<double>(b));
  }
  return {ok, "beta1 for n=3..8: " + detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 partition of G(all squares)", partitionStructure},
      {"2 maximal-edge expectation", maximalExpectation},
      {"3 p^4 law", p4Law},
      {"4 Poisson regime", poissonRegime},
      {"5 contraction behavior", contractionBehavior},
      {"6 contraction soundness", soundness},
      {"7 free-rank regime", freeRankRegime},
      {"8 witness complexes", witnesses},
      {"9 gs bound", gsBounds},
      {"10 n-bubbles", bubbles},
      {"11 p=0 extremal beta1", pZero},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::printf("%s %s -- %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
