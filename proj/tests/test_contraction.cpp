#include "doctest.h"

#include "cubetop/complex.hpp"
#include "cubetop/contraction.hpp"
#include "cubetop/homology.hpp"
#include "cubetop/parallel.hpp"
#include "cubetop/rng.hpp"

using namespace cubetop;

namespace {

// Adjacency spreading repeated until nothing changes, with the relation
// evaluated against the stage input V_t throughout.
SquareSet naiveStage(const SquareSet& vt) {
  const Cube cube(vt.dimension());
  SquareSet w = vt;
  for (bool grew = true; grew;) {
    grew = false;
    for (std::uint64_t k = 0; k < cube.squareCount(); ++k) {
      if (w.contains(k)) continue;
      const Square s = cube.squareAt(k);
      for (const auto& t : cube.parallelNeighbors(s)) {
        if (w.contains(cube.index(t)) && related(cube, s, t, vt)) {
          w.insert(k);
          grew = true;
          break;
        }
      }
    }
  }
  return w;
}

}  // namespace

TEST_CASE("stage: trivial inputs") {
  CHECK(contractionStage(SquareSet(5)) == SquareSet(5));
  CHECK(contractionStage(SquareSet(5, true)) == SquareSet(5, true));
}

TEST_CASE("stage: the four sides of a 3-cube carry one parallel square to the other") {
  const Cube q3(3);
  const Square s0{1, 2, 0}, s1{1, 2, 1};
  SquareSet v(3, true);
  v.erase(q3.index(s0));
  REQUIRE_FALSE(v.contains(s0));
  const SquareSet next = contractionStage(v);
  CHECK(next.contains(s0));
  CHECK(next == SquareSet(3, true));

  // without the partner nothing spreads into the pair
  v.erase(q3.index(s1));
  CHECK(contractionStage(v) == v);
}

TEST_CASE("stage equals iterated adjacency spreading") {
  for (int n : {3, 4, 5, 6}) {
    for (double p : {0.3, 0.5, 0.6, 0.8}) {
      for (std::uint64_t seed = 0; seed < 8; ++seed) {
        SquareSet v = sample(n, p, seed * 31 + n).faces();
        for (int t = 0; t < 4; ++t) {
          const SquareSet next = contractionStage(v);
          CHECK(next == naiveStage(v));
          CHECK(v.isSubsetOf(next));
          v = next;
        }
      }
    }
  }
}

TEST_CASE("run: p = 1, p = 0 and traces") {
  const auto full = runContraction(sample(8, 1.0, 1));
  CHECK(full.converged);
  CHECK(full.stageCount == 1);
  CHECK(full.fullyContracted());
  CHECK(full.fixpoint == SquareSet(8, true));

  const auto empty = runContraction(sample(6, 0.0, 1));
  CHECK(empty.converged);
  CHECK(empty.stageCount == 1);
  CHECK(empty.survivors.size() == Cube(6).squareCount());
  for (const auto& s : empty.survivors) CHECK(s.minEdgeDegree == 0);

  CHECK_THROWS_AS(runContraction(sample(5, 0.5, 1), {0, false}), std::invalid_argument);

  const Complex c = sample(9, 0.55, 77);
  const auto kept = runContraction(c, {16, true});
  REQUIRE(kept.converged);
  CHECK(kept.stages.size() == static_cast<std::size_t>(kept.stageCount));
  CHECK(kept.stages.front() == c.faces());
  CHECK(kept.stages.back() == kept.fixpoint);
  for (std::size_t t = 1; t < kept.stages.size(); ++t) {
    CHECK(kept.stages[t - 1].isSubsetOf(kept.stages[t]));
    CHECK_FALSE(kept.stages[t - 1] == kept.stages[t]);
  }
  CHECK(contractionStage(kept.fixpoint) == kept.fixpoint);

  const auto capped = runContraction(c, {1, false});
  if (kept.stageCount > 1) {
    CHECK_FALSE(capped.converged);
    CHECK(capped.stageCount == 1);
  }
}

TEST_CASE("fixpoint is monotone in the faces") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const auto lo = runContraction(sample(8, 0.45, seed));
    const auto hi = runContraction(sample(8, 0.6, seed));
    CHECK(lo.fixpoint.isSubsetOf(hi.fixpoint));
  }
}

TEST_CASE("survivor annotations") {
  const Complex c = sample(10, 0.45, 99);
  const auto trace = runContraction(c);
  const Cube cube(10);
  const auto degrees = edgeDegrees(c);
  for (const auto& s : trace.survivors) {
    int m = 99;
    for (const auto& e : edgesOfSquare(s.square)) m = std::min<int>(m, degrees.deg[cube.index(e)]);
    CHECK(s.minEdgeDegree == m);
  }
  // every square on a maximal edge survives
  for (const auto& e : maximalEdges(c))
    for (const auto& s : cube.squaresOfEdge(e)) CHECK_FALSE(trace.fixpoint.contains(s));

  const auto report = survivorReport(trace, computeThresholds(0.45).mp);
  CHECK(report.survivors == trace.survivors.size());
  CHECK(report.withMaximalEdge <= report.withLightEdge);
  CHECK(survivorReport(runContraction(sample(7, 1.0, 1)), 4).survivors == 0);
}

TEST_CASE("filling the fixpoint leaves beta1 over F2 unchanged") {
  for (int n : {5, 7, 9, 10}) {
    for (double p : {0.3, 0.5, 0.7}) {
      int mismatches = 0;
      for (int t = 0; t < 100; ++t) {
        const Complex c = sample(n, p, trialSeed(500 + n, t));
        const auto trace = runContraction(c);
        const Complex filled = fillContracted(c, trace);
        CHECK(c.faces().isSubsetOf(filled.faces()));
        if (beta1F2(ChainComplex::fromComplex(c)) != beta1F2(ChainComplex::fromComplex(filled))) ++mismatches;
      }
      CAPTURE(n);
      CAPTURE(p);
      CHECK(mismatches == 0);
    }
  }
}

TEST_CASE("n = 11, p = 0.6: the fixpoint arrives within five stages") {
  int worst = 0;
  for (int t = 0; t < 500; ++t) {
    const auto trace = runContraction(sample(11, 0.6, trialSeed(1106, t)));
    CHECK(trace.converged);
    worst = std::max(worst, trace.stageCount);
  }
  CAPTURE(worst);
  CHECK(worst <= 5);
}

TEST_CASE("n = 11, p = 0.55: every survivor has a light edge") {
  const long long mp = computeThresholds(0.55).mp;
  std::uint64_t survivors = 0, light = 0;
  for (int t = 0; t < 500; ++t) {
    const auto r = survivorReport(runContraction(sample(11, 0.55, trialSeed(1155, t))), mp);
    survivors += r.survivors;
    light += r.withLightEdge;
  }
  CHECK(survivors > 0);
  CHECK(light == survivors);
}

TEST_CASE("n = 12, p = 0.75: full contraction in at least 99% of trials") {
  int full = 0;
  for (int t = 0; t < 500; ++t) full += runContraction(sample(12, 0.75, trialSeed(1275, t))).fullyContracted();
  CAPTURE(full);
  CHECK(full >= 495);
}
