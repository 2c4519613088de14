#pragma once

// The parallel relation on 4-cycles and the graph G(V).
//
// Two squares are parallel when they share a star pair and their bases differ
// in exactly one free coordinate k. Together they span the 3-face with stars
// {i, j, k}; they are related with respect to V when the four other squares
// of that 3-face all belong to V. G(V) has every square of Q^n as a vertex
// and an edge for each related pair.

#include <cstdint>
#include <vector>

#include "cubetop/complex.hpp"
#include "cubetop/cube.hpp"
#include "cubetop/union_find.hpp"

namespace cubetop {

bool related(const Cube& cube, const Square& s, const Square& t, const SquareSet& v);

/// Union-find over all squares of Q^n joined along the edges of G(V).
/// The graph is walked one 3-face at a time; each 3-face carries three
/// parallel pairs.
UnionFind parallelUnionFind(const SquareSet& v);

/// Calls fn(a, b) for every edge {a, b} of G(V), a < b, as square indices.
template <typename Fn>
void forEachRelatedPair(const SquareSet& v, Fn&& fn);

struct Component {
  std::uint64_t id = 0;  // smallest canonical square index in the component
  std::uint64_t size = 0;
  bool marked = false;
};

struct ComponentDecomposition {
  std::vector<std::uint32_t> label;   // per square: position in `components`
  std::vector<Component> components;  // ordered by id
};

ComponentDecomposition components(const SquareSet& v, const SquareSet& marked);

/// Largest component of G(V1) containing no square of V1; 0 if none.
std::uint64_t largestUncoloredComponent(const SquareSet& v1);

struct MeanWithError {
  double mean = 0.0;
  double standardError = 0.0;
};

struct SubgraphLawReport {
  int n = 0;
  double p = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
  int starI = 0;
  int starJ = 1;
  MeanWithError edgeFrequency;
  MeanWithError colorFrequency;
  MeanWithError colorDegreeCorrelation;
  int degenerateCorrelationTrials = 0;  // trials where a variance vanished (counted as 0)
};

/// Samples Q2(n,p) `trials` times and measures the subgraph of G[Q] induced on
/// the star-pair class {0,1}: edge frequency among (n-2) 2^(n-3) candidates,
/// colored-vertex frequency, and the Pearson correlation between a vertex's
/// color and its degree.
SubgraphLawReport componentSubgraphLawCheck(int n, double p, int trials, std::uint64_t seed);

// ---------------------------------------------------------------------------

namespace detail {
inline bool bitAt(const std::uint64_t* w, std::uint64_t k) noexcept { return (w[k >> 6] >> (k & 63)) & 1u; }
}  // namespace detail

template <typename Fn>
void forEachRelatedPair(const SquareSet& v, Fn&& fn) {
  const int n = v.dimension();
  if (n < 3) return;
  const Cube cube(n);
  const std::uint64_t* w = v.bits().words().data();
  const std::uint64_t perCube = std::uint64_t{1} << (n - 3);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int c = b + 1; c < n; ++c) {
        const std::uint64_t ab = static_cast<std::uint64_t>(cube.pairRank(a, b)) << (n - 2);
        const std::uint64_t ac = static_cast<std::uint64_t>(cube.pairRank(a, c)) << (n - 2);
        const std::uint64_t bc = static_cast<std::uint64_t>(cube.pairRank(b, c)) << (n - 2);
        for (std::uint64_t x = 0; x < perCube; ++x) {
          const std::uint64_t ab0 = ab | insertBit(x, c - 2, 0), ab1 = ab | insertBit(x, c - 2, 1);
          const std::uint64_t ac0 = ac | insertBit(x, b - 1, 0), ac1 = ac | insertBit(x, b - 1, 1);
          const std::uint64_t bc0 = bc | insertBit(x, a, 0), bc1 = bc | insertBit(x, a, 1);
          const bool hab = detail::bitAt(w, ab0) && detail::bitAt(w, ab1);
          const bool hac = detail::bitAt(w, ac0) && detail::bitAt(w, ac1);
          const bool hbc = detail::bitAt(w, bc0) && detail::bitAt(w, bc1);
          if (hac && hbc) fn(ab0, ab1);
          if (hab && hbc) fn(ac0, ac1);
          if (hab && hac) fn(bc0, bc1);
        }
      }
    }
  }
}

}  // namespace cubetop
