#pragma once

// Parallel homotopy contraction.
//
// Stage t maps V_t to V_{t+1}: the union of all components of G(V_t) that
// contain at least one square of V_t. Starting from V_1 = the 2-faces of the
// complex, stages repeat until V_{t+1} = V_t. Every square in the fixpoint is
// null-homotopic in the complex; the rest are survivors.

#include <cstdint>
#include <vector>

#include "cubetop/complex.hpp"

namespace cubetop {

SquareSet contractionStage(const SquareSet& vt);

struct Survivor {
  Square square;
  int minEdgeDegree = 0;
};

struct ContractionTrace {
  int n = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
  std::vector<SquareSet> stages;  // V_1 .. V_fix; only the last when not retained
  int stageCount = 0;             // first t with V_{t+1} = V_t, or stages run if not converged
  bool converged = false;
  SquareSet fixpoint;
  std::vector<Survivor> survivors;

  bool fullyContracted() const noexcept { return survivors.empty(); }
};

struct ContractionOptions {
  int maxStages = 16;
  bool keepStages = false;
};

ContractionTrace runContraction(const Complex& c, const ContractionOptions& options = {});

struct SurvivorReport {
  std::uint64_t survivors = 0;
  std::uint64_t withMaximalEdge = 0;
  std::uint64_t withLightEdge = 0;
  long long lightThreshold = 0;
};

/// Classifies survivors by their weakest edge: degree 0 (maximal) or
/// degree <= lightThreshold (light).
SurvivorReport survivorReport(const ContractionTrace& trace, long long lightThreshold);

/// The complex with a 2-face added on every square of the fixpoint.
Complex fillContracted(const Complex& c, const ContractionTrace& trace);

}  // namespace cubetop
