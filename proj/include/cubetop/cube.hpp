#pragma once

// Face combinatorics of the n-cube.
//
// A vertex is an n-bit integer; bit k holds coordinate k+1 of the binary
// n-tuple (coordinate 1 is the least significant bit). A k-face is written
// in star notation as a mask of starred coordinates plus a base vertex whose
// starred bits are zero.
//
// Canonical indices (normative for the .qcx format):
//   edge   (dir, base)      -> dir * 2^(n-1) + squash(base, {dir})
//   square ({i<j}, base)    -> pairRank(i, j) * 2^(n-2) + squash(base, {i, j})
// where pairRank is the lexicographic rank of (i, j) among pairs i < j and
// squash deletes the listed bit positions, packing the rest low to high.

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace cubetop {

using Vertex = std::uint32_t;

inline constexpr int kMaxDimension = 24;

struct Edge {
  int dir = 0;
  Vertex base = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Square {
  int i = 0;
  int j = 1;
  Vertex base = 0;
  friend auto operator<=>(const Square&, const Square&) = default;
};

struct Face {
  std::uint32_t stars = 0;
  Vertex base = 0;
  int dimension() const noexcept;
  bool contains(const Face& other) const noexcept;
  friend auto operator<=>(const Face&, const Face&) = default;
};

Face toFace(Vertex v) noexcept;
Face toFace(const Edge& e) noexcept;
Face toFace(const Square& s) noexcept;

/// Delete the bits of v at the positions set in mask; remaining bits keep
/// their order and are packed from bit 0 upward.
std::uint64_t squash(std::uint64_t v, std::uint32_t mask) noexcept;
/// Inverse of squash for the same mask; the inserted positions read zero.
std::uint64_t unsquash(std::uint64_t v, std::uint32_t mask) noexcept;

// Single-position forms used on hot paths.
inline std::uint64_t squashBit(std::uint64_t v, int pos) noexcept {
  const std::uint64_t low = v & ((std::uint64_t{1} << pos) - 1);
  return ((v >> (pos + 1)) << pos) | low;
}
inline std::uint64_t insertBit(std::uint64_t v, int pos, std::uint64_t bit) noexcept {
  const std::uint64_t low = v & ((std::uint64_t{1} << pos) - 1);
  return ((v >> pos) << (pos + 1)) | (bit << pos) | low;
}

/// Index arithmetic for the faces of Q^n, 1 <= n <= kMaxDimension.
class Cube {
 public:
  explicit Cube(int n);

  int dimension() const noexcept { return n_; }

  std::uint64_t vertexCount() const noexcept { return std::uint64_t{1} << n_; }
  std::uint64_t edgeCount() const noexcept;
  std::uint64_t squareCount() const noexcept;
  std::uint64_t cubeCount() const noexcept;  // 3-faces

  int pairRank(int i, int j) const noexcept { return rowOffset_[i] + (j - i - 1); }
  std::pair<int, int> pairAt(int rank) const;
  int pairCount() const noexcept { return n_ * (n_ - 1) / 2; }

  bool valid(const Edge& e) const noexcept;
  bool valid(const Square& s) const noexcept;
  bool valid(const Face& f) const noexcept;

  std::uint64_t index(const Edge& e) const;
  std::uint64_t index(const Square& s) const;
  Edge edgeAt(std::uint64_t index) const;
  Square squareAt(std::uint64_t index) const;

  // Unchecked variants for inner loops; arguments must already be valid.
  std::uint64_t edgeIndexUnchecked(int dir, Vertex base) const noexcept {
    return (static_cast<std::uint64_t>(dir) << (n_ - 1)) | squashBit(base, dir);
  }
  std::uint64_t squareIndexUnchecked(int i, int j, Vertex base) const noexcept {
    return (static_cast<std::uint64_t>(pairRank(i, j)) << (n_ - 2)) | squashBit(squashBit(base, j), i);
  }

  /// The n-1 squares containing e: ({dir, k}, base with bit k cleared), k != dir.
  std::vector<Square> squaresOfEdge(const Edge& e) const;
  /// The n-2 squares parallel to s: same star pair, base flipped in one free bit.
  std::vector<Square> parallelNeighbors(const Square& s) const;

 private:
  int n_;
  std::array<int, kMaxDimension> rowOffset_{};
};

/// Boundary edges (i,b), (j,b+2^i), (i,b+2^j), (j,b) of square ({i,j},b).
std::array<Edge, 4> edgesOfSquare(const Square& s) noexcept;
/// The six 2-faces of a 3-face; throws DimensionError for other dimensions.
std::array<Square, 6> squaresOfCube(const Face& cube);
/// Build a square from a star pair given in either order.
Square makeSquare(int a, int b, Vertex base) noexcept;

/// Smallest face containing every listed face. Throws std::invalid_argument
/// on an empty list.
Face boxSpan(std::span<const Face> faces);
Face boxSpan(const Face& a, const Face& b) noexcept;

bool squareContainsEdge(const Square& s, const Edge& e) noexcept;

}  // namespace cubetop
