#include "cubetop/contraction.hpp"

#include <algorithm>
#include <stdexcept>

#include "cubetop/parallel.hpp"

namespace cubetop {

SquareSet contractionStage(const SquareSet& vt) {
  auto uf = parallelUnionFind(vt);
  const std::size_t total = uf.size();
  BitVector rootHit(total);
  vt.bits().forEachSet([&](std::size_t s) { rootHit.set(uf.find(static_cast<std::uint32_t>(s))); });
  BitVector next(total);
  auto words = next.mutableWords();
  for (std::size_t s = 0; s < total; ++s)
    if (rootHit.test(uf.find(static_cast<std::uint32_t>(s)))) words[s >> 6] |= std::uint64_t{1} << (s & 63);
  return SquareSet(vt.dimension(), std::move(next));
}

ContractionTrace runContraction(const Complex& c, const ContractionOptions& options) {
  if (options.maxStages < 1) throw std::invalid_argument("runContraction: maxStages must be at least 1");
  ContractionTrace trace;
  trace.n = c.dimension();
  trace.p = c.p();
  trace.seed = c.seed();

  SquareSet current = c.faces();
  if (options.keepStages) trace.stages.push_back(current);
  for (int t = 1; t <= options.maxStages; ++t) {
    SquareSet next = contractionStage(current);
    trace.stageCount = t;
    if (next == current) {
      trace.converged = true;
      break;
    }
    current = std::move(next);
    if (options.keepStages) trace.stages.push_back(current);
  }
  if (!options.keepStages) trace.stages.push_back(current);
  trace.fixpoint = std::move(current);

  const Cube cube(trace.n);
  const auto degrees = edgeDegrees(c);
  const auto& fix = trace.fixpoint.bits();
  for (std::uint64_t s = 0; s < fix.size(); ++s) {
    if (fix.test(s)) continue;
    const Square sq = cube.squareAt(s);
    int minDeg = trace.n;
    for (const auto& e : edgesOfSquare(sq))
      minDeg = std::min<int>(minDeg, degrees.deg[cube.edgeIndexUnchecked(e.dir, e.base)]);
    trace.survivors.push_back(Survivor{sq, minDeg});
  }
  return trace;
}

SurvivorReport survivorReport(const ContractionTrace& trace, long long lightThreshold) {
  SurvivorReport r;
  r.lightThreshold = lightThreshold;
  r.survivors = trace.survivors.size();
  for (const auto& s : trace.survivors) {
    r.withMaximalEdge += (s.minEdgeDegree == 0);
    r.withLightEdge += (s.minEdgeDegree <= lightThreshold);
  }
  return r;
}

Complex fillContracted(const Complex& c, const ContractionTrace& trace) {
  SquareSet faces = c.faces();
  faces.bits() |= trace.fixpoint.bits();
  return Complex(c.dimension(), std::move(faces), c.p(), c.seed());
}

}  // namespace cubetop
