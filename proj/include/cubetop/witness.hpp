#pragma once

// Small explicit complexes and the hull / clean-cube machinery around them.
//
// Star tuples are written coordinate 1 first, e.g. "(*,0,0,*)" is the square
// with stars on coordinates 1 and 4 (bits 0 and 3) and base 0.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cubetop/complex.hpp"
#include "cubetop/cube.hpp"

namespace cubetop {

struct WitnessComplex {
  std::string name;
  int n = 0;
  std::vector<Square> squares;
  std::vector<Edge> edges;  // union of the squares' boundary edges, canonical order
  std::size_t expectedEdgeCount = 0;

  std::size_t edgeCount() const noexcept { return edges.size(); }
  /// 1 - (1/2)^(1/e(T)).
  double threshold() const;
};

/// name in {"torus", "rp2", "klein"}; throws std::invalid_argument otherwise.
WitnessComplex buildWitness(std::string_view name);
std::vector<std::string> witnessNames();

/// Parse "(*,0,1)" or "*01"; throws std::invalid_argument on bad syntax.
Face parseStarTuple(std::string_view text);
std::string formatStarTuple(const Face& f, int n);

struct Bubble {
  Edge center;
  std::vector<Edge> edges;      // complete 1-skeletons of the 3-faces through the center
  std::vector<Square> squares;  // their 2-faces not containing the center
};

/// The n-bubble around f. Requires n >= 3 and a valid edge.
Bubble buildBubble(int n, const Edge& f);

/// Cubical embedding Q^n -> Q^N: coordinate k goes to injection[k]; the other
/// target coordinates are fixed by offset.
struct Embedding {
  int sourceDimension = 0;
  int targetDimension = 0;
  std::vector<int> injection;
  Vertex offset = 0;

  /// Identity injection into the low coordinates.
  static Embedding standard(int n, int N, Vertex offset = 0);

  /// Throws std::invalid_argument unless the injection is injective and in
  /// range and offset is zero on the image coordinates.
  void validate() const;

  Vertex map(Vertex v) const noexcept;
  Edge map(const Edge& e) const noexcept;
  Square map(const Square& s) const noexcept;
  Face map(const Face& f) const noexcept;
  /// The image of the whole source cube.
  Face image() const noexcept;
};

// ---------------------------------------------------------------------------
// Hull h(T)

struct HullResult {
  Face face;                    // the enclosing cube
  std::vector<Edge> tEdges;     // T's edges after growth, canonical order
  std::vector<Square> squares;  // 2-faces of h(T) = W-squares inside face
  int growthSteps = 0;          // edges added to T to satisfy condition (3)
};

inline constexpr int kDefaultHullDimensionCap = 20;

/// Grows the box span of T (its edges plus the W-squares touching them) until
/// every square of the span that avoids T is in W. When a square is missing,
/// its edge of lowest W-degree (ties: smallest index) joins T. Throws
/// GrowthError when the span exceeds `dimensionCap`.
HullResult hull(const SquareSet& w, std::span<const Edge> tEdges, std::span<const Square> tSquares,
                int dimensionCap = kDefaultHullDimensionCap);

/// Re-checks the three hull conditions against W.
bool verifyHull(const SquareSet& w, const HullResult& h);

struct CleanCubeOptions {
  long long lightThreshold = 0;  // degree <= threshold counts as light
  std::uint64_t budget = 1u << 20;  // candidate translates examined before giving up
};

/// H(T): a translate of h(T) across one free coordinate whose 2-skeleton is in
/// W, whose connecting squares on h(T)'s non-T edges are in W, and with no
/// light edge inside it or between it and h(T).
std::optional<Face> findCleanParallelCube(const SquareSet& w, const HullResult& h, const CleanCubeOptions& options);

// ---------------------------------------------------------------------------
// Witness occurrence

/// X = T plus every square of T's cube sharing no edge with T.
std::vector<Square> witnessEnvelope(const WitnessComplex& t);

struct OccurrenceConstraints {
  std::vector<std::uint64_t> present;  // target square indices that must be faces
  std::vector<std::uint64_t> absent;   // target square indices that must not be
};

/// Conditions (1) and (2) as explicit face constraints in Q^N.
OccurrenceConstraints occurrenceConstraints(const WitnessComplex& t, const Embedding& phi);

/// p^|present| (1-p)^|absent|.
double occurrenceProbability(const OccurrenceConstraints& constraints, double p);

struct SeparationCheck {
  long long lightThreshold = 0;
  int kCap = 1;  // condition (3) radius is 2 kCap + 2
};

/// Event E_phi. Conditions (1)-(2) always; (3) when `separation` is given.
/// Throws DimensionError if phi does not match T and C.
bool witnessOccurrence(const Complex& c, const WitnessComplex& t, const Embedding& phi,
                       const std::optional<SeparationCheck>& separation = std::nullopt);

/// The complex in Q^N whose faces are exactly phi(T).
Complex embedWitness(const WitnessComplex& t, const Embedding& phi);

}  // namespace cubetop
