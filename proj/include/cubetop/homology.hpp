#pragma once

// Cellular chain complex of a cubical 2-complex inside Q^n and its low
// homology.
//
// Orientation: edge (d, b) runs from b to b + 2^d, so d1 = +(b + 2^d) - (b).
// Square ({i, j}, b), i < j, has d2 = +(i, b) + (j, b + 2^i) - (i, b + 2^j) - (j, b).

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "cubetop/bitvector.hpp"
#include "cubetop/complex.hpp"
#include "cubetop/cube.hpp"

namespace cubetop {

struct Incidence {
  std::uint32_t row = 0;
  int sign = 1;
};

inline constexpr std::array<int, 4> kSquareBoundarySigns = {+1, +1, -1, -1};

class ChainComplex {
 public:
  /// Full 1-skeleton of Q^n plus the complex's 2-faces.
  static ChainComplex fromComplex(const Complex& c);
  /// The given squares plus the closure of their boundaries. With
  /// `fullSkeleton` the whole 1-skeleton of Q^n is included instead.
  static ChainComplex fromSquares(int n, std::span<const Square> squares, bool fullSkeleton);
  /// Explicit cells: the listed edges and squares plus their boundary closure.
  static ChainComplex fromCells(int n, std::span<const Edge> edges, std::span<const Square> squares);

  int dimension() const noexcept { return n_; }
  bool hasFullSkeleton() const noexcept { return full_; }
  std::size_t vertexCount() const noexcept { return vertices_.size(); }
  std::size_t edgeCount() const noexcept { return edges_.size(); }
  std::size_t squareCount() const noexcept { return squares_.size(); }

  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<Square>& squares() const noexcept { return squares_; }

  std::array<Incidence, 2> boundary1(std::size_t edge) const noexcept { return d1_[edge]; }
  std::array<Incidence, 4> boundary2(std::size_t square) const noexcept;
  const std::array<std::uint32_t, 4>& boundary2Rows(std::size_t square) const noexcept { return d2_[square]; }

  /// Checks d1 o d2 = 0 over the integers, column by column.
  bool boundarySquaredVanishes() const;

 private:
  ChainComplex() = default;
  static ChainComplex fromCellsImpl(int n, std::span<const Edge> extraEdges, std::span<const Square> squares,
                                    bool fullSkeleton);
  void build(std::vector<Vertex> vertices, std::vector<Edge> edges, std::vector<Square> squares, bool full);

  int n_ = 0;
  bool full_ = false;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<Square> squares_;
  std::vector<std::array<Incidence, 2>> d1_;
  std::vector<std::array<std::uint32_t, 4>> d2_;
};

std::size_t betti0(const ChainComplex& chain);

/// rank of d2 over F2. Spanning-forest rows are dropped, singleton rows and
/// columns are peeled off, and the remaining core goes through word-parallel
/// Gaussian elimination.
std::size_t rankF2Boundary2(const ChainComplex& chain);

/// beta1 over F2 = #edges - (#vertices - beta0) - rank_F2(d2).
std::size_t beta1F2(const ChainComplex& chain);

inline constexpr std::size_t kSmithEdgeCap = 10'000;

struct IntegerHomology {
  std::size_t freeRank = 0;
  std::vector<std::int64_t> torsion;  // invariant factors > 1, ascending, each dividing the next
};

/// H1 over Z via Smith normal form of d2. Throws CapacityError above
/// kSmithEdgeCap edges and std::overflow_error if an entry leaves int64.
IntegerHomology integerHomology(const ChainComplex& chain);

/// Invariant factors of an integer matrix given row-major (rows x cols);
/// zero diagonal entries are omitted.
std::vector<std::int64_t> smithInvariantFactors(std::vector<std::int64_t> matrix, std::size_t rows, std::size_t cols);

struct HomologySummary {
  std::size_t beta0 = 0;
  std::size_t beta1F2 = 0;
  bool torsionComputed = false;
  std::vector<std::int64_t> torsion;
  std::size_t freeRank = 0;
};

HomologySummary summarizeHomology(const ChainComplex& chain, bool withTorsion);

struct GraphConnectivity {
  bool connected = false;
  std::uint64_t components = 0;
};

/// Connectivity of the spanning subgraph of Q^n_1 whose edges are the set bits
/// (canonical edge indices).
GraphConnectivity graphConnectivity(int n, const BitVector& edges);

/// Q(n, q): each edge of Q^n_1 kept independently, same stream rules as sample().
BitVector sampleCubeGraph(int n, double q, std::uint64_t seed);

}  // namespace cubetop
