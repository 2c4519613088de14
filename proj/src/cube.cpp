#include "cubetop/cube.hpp"

#include <bit>
#include <stdexcept>
#include <string>

#include "cubetop/errors.hpp"

namespace cubetop {

int Face::dimension() const noexcept { return std::popcount(stars); }

bool Face::contains(const Face& other) const noexcept {
  if ((other.stars & ~stars) != 0) return false;
  const std::uint32_t fixed = ~stars;
  return ((other.base ^ base) & fixed) == 0;
}

Face toFace(Vertex v) noexcept { return Face{0, v}; }
Face toFace(const Edge& e) noexcept { return Face{std::uint32_t{1} << e.dir, e.base}; }
Face toFace(const Square& s) noexcept {
  return Face{(std::uint32_t{1} << s.i) | (std::uint32_t{1} << s.j), s.base};
}

std::uint64_t squash(std::uint64_t v, std::uint32_t mask) noexcept {
  std::uint64_t out = 0;
  int w = 0;
  for (int k = 0; k < 64; ++k) {
    if (k < 32 && ((mask >> k) & 1u)) continue;
    out |= ((v >> k) & 1u) << w;
    ++w;
  }
  return out;
}

std::uint64_t unsquash(std::uint64_t v, std::uint32_t mask) noexcept {
  std::uint64_t out = 0;
  int r = 0;
  for (int k = 0; k < 64 && r < 64; ++k) {
    if (k < 32 && ((mask >> k) & 1u)) continue;
    out |= ((v >> r) & 1u) << k;
    ++r;
  }
  return out;
}

Cube::Cube(int n) : n_(n) {
  if (n < 1 || n > kMaxDimension)
    throw std::invalid_argument("cube dimension must be in [1, " + std::to_string(kMaxDimension) + "], got " +
                                std::to_string(n));
  int offset = 0;
  for (int i = 0; i < n; ++i) {
    rowOffset_[i] = offset;
    offset += n - i - 1;
  }
}

std::uint64_t Cube::edgeCount() const noexcept {
  return static_cast<std::uint64_t>(n_) << (n_ - 1);
}

std::uint64_t Cube::squareCount() const noexcept {
  if (n_ < 2) return 0;
  return static_cast<std::uint64_t>(pairCount()) << (n_ - 2);
}

std::uint64_t Cube::cubeCount() const noexcept {
  if (n_ < 3) return 0;
  const std::uint64_t triples = static_cast<std::uint64_t>(n_) * (n_ - 1) * (n_ - 2) / 6;
  return triples << (n_ - 3);
}

std::pair<int, int> Cube::pairAt(int rank) const {
  if (rank < 0 || rank >= pairCount()) throw std::out_of_range("pair rank out of range");
  int i = 0;
  while (i + 1 < n_ && rowOffset_[i + 1] <= rank) ++i;
  return {i, i + 1 + (rank - rowOffset_[i])};
}

bool Cube::valid(const Edge& e) const noexcept {
  return e.dir >= 0 && e.dir < n_ && (e.base >> n_) == 0 && ((e.base >> e.dir) & 1u) == 0;
}

bool Cube::valid(const Square& s) const noexcept {
  return s.i >= 0 && s.i < s.j && s.j < n_ && (s.base >> n_) == 0 && ((s.base >> s.i) & 1u) == 0 &&
         ((s.base >> s.j) & 1u) == 0;
}

bool Cube::valid(const Face& f) const noexcept {
  const std::uint64_t limit = std::uint64_t{1} << n_;
  return f.stars < limit && f.base < limit && (f.stars & f.base) == 0;
}

std::uint64_t Cube::index(const Edge& e) const {
  if (!valid(e)) throw std::invalid_argument("invalid edge for this cube");
  return edgeIndexUnchecked(e.dir, e.base);
}

std::uint64_t Cube::index(const Square& s) const {
  if (!valid(s)) throw std::invalid_argument("invalid square for this cube");
  return squareIndexUnchecked(s.i, s.j, s.base);
}

Edge Cube::edgeAt(std::uint64_t index) const {
  if (index >= edgeCount()) throw std::out_of_range("edge index out of range");
  const int dir = static_cast<int>(index >> (n_ - 1));
  const std::uint64_t rest = index & ((std::uint64_t{1} << (n_ - 1)) - 1);
  return Edge{dir, static_cast<Vertex>(insertBit(rest, dir, 0))};
}

Square Cube::squareAt(std::uint64_t index) const {
  if (index >= squareCount()) throw std::out_of_range("square index out of range");
  const auto [i, j] = pairAt(static_cast<int>(index >> (n_ - 2)));
  const std::uint64_t rest = index & ((std::uint64_t{1} << (n_ - 2)) - 1);
  return Square{i, j, static_cast<Vertex>(insertBit(insertBit(rest, i, 0), j, 0))};
}

std::vector<Square> Cube::squaresOfEdge(const Edge& e) const {
  if (!valid(e)) throw std::invalid_argument("invalid edge for this cube");
  std::vector<Square> out;
  out.reserve(static_cast<std::size_t>(n_ - 1));
  for (int k = 0; k < n_; ++k) {
    if (k == e.dir) continue;
    out.push_back(makeSquare(e.dir, k, e.base & ~(Vertex{1} << k)));
  }
  return out;
}

std::vector<Square> Cube::parallelNeighbors(const Square& s) const {
  if (!valid(s)) throw std::invalid_argument("invalid square for this cube");
  std::vector<Square> out;
  out.reserve(static_cast<std::size_t>(n_ - 2));
  for (int k = 0; k < n_; ++k) {
    if (k == s.i || k == s.j) continue;
    out.push_back(Square{s.i, s.j, s.base ^ (Vertex{1} << k)});
  }
  return out;
}

std::array<Edge, 4> edgesOfSquare(const Square& s) noexcept {
  const Vertex bi = Vertex{1} << s.i;
  const Vertex bj = Vertex{1} << s.j;
  return {Edge{s.i, s.base}, Edge{s.j, s.base | bi}, Edge{s.i, s.base | bj}, Edge{s.j, s.base}};
}

Square makeSquare(int a, int b, Vertex base) noexcept {
  return a < b ? Square{a, b, base} : Square{b, a, base};
}

std::array<Square, 6> squaresOfCube(const Face& cube) {
  if (cube.dimension() != 3) throw DimensionError("squaresOfCube expects a 3-face");
  std::uint32_t m = cube.stars;
  const int i = std::countr_zero(m);
  m &= m - 1;
  const int j = std::countr_zero(m);
  m &= m - 1;
  const int k = std::countr_zero(m);
  const Vertex b = cube.base;
  return {Square{i, j, b}, Square{i, j, b | (Vertex{1} << k)}, Square{i, k, b}, Square{i, k, b | (Vertex{1} << j)},
          Square{j, k, b}, Square{j, k, b | (Vertex{1} << i)}};
}

Face boxSpan(const Face& a, const Face& b) noexcept {
  const std::uint32_t stars = a.stars | b.stars | (a.base ^ b.base);
  return Face{stars, a.base & ~stars};
}

Face boxSpan(std::span<const Face> faces) {
  if (faces.empty()) throw std::invalid_argument("boxSpan of an empty list");
  Face acc = faces.front();
  for (const auto& f : faces.subspan(1)) acc = boxSpan(acc, f);
  return acc;
}

bool squareContainsEdge(const Square& s, const Edge& e) noexcept {
  return toFace(s).contains(toFace(e));
}

}  // namespace cubetop
