#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"

#include "cubetop/cube.hpp"
#include "cubetop/errors.hpp"

using namespace cubetop;

TEST_CASE("face counts") {
  const Cube q3(3);
  CHECK(q3.edgeCount() == 12);
  CHECK(q3.squareCount() == 6);
  for (int n = 3; n <= 16; ++n) {
    const Cube c(n);
    CHECK(c.edgeCount() == static_cast<std::uint64_t>(n) << (n - 1));
    CHECK(c.squareCount() == (static_cast<std::uint64_t>(n) * (n - 1) << (n - 3)));
  }
  // exhaustive enumeration against the formula
  for (int n = 2; n <= 8; ++n) {
    const Cube c(n);
    std::uint64_t edges = 0, squares = 0;
    for (Vertex v = 0; v < c.vertexCount(); ++v)
      for (int a = 0; a < n; ++a) {
        if ((v >> a) & 1u) continue;
        ++edges;
        for (int b = a + 1; b < n; ++b) squares += ((v >> b) & 1u) == 0;
      }
    CHECK(edges == c.edgeCount());
    CHECK(squares == c.squareCount());
  }
}

TEST_CASE("squash and unsquash") {
  CHECK(squash(0b101, 0b10) == 0b11);
  CHECK(unsquash(0b11, 0b10) == 0b101);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 1000; ++t) {
    const std::uint32_t mask = static_cast<std::uint32_t>(rng()) & 0xffffu;
    const std::uint64_t v = rng() & 0xffffu & ~static_cast<std::uint64_t>(mask);
    CHECK(unsquash(squash(v, mask), mask) == v);
    const int pos = static_cast<int>(rng() % 16);
    CHECK(squashBit(v, pos) == squash(v, 1u << pos));
    const std::uint64_t small = rng() & 0x7fffu;
    CHECK(insertBit(small, pos, 1) == (unsquash(small, 1u << pos) | (std::uint64_t{1} << pos)));
  }
}

TEST_CASE("index bijection") {
  for (int n = 2; n <= 8; ++n) {
    const Cube c(n);
    for (std::uint64_t k = 0; k < c.edgeCount(); ++k) CHECK(c.index(c.edgeAt(k)) == k);
    for (std::uint64_t k = 0; k < c.squareCount(); ++k) CHECK(c.index(c.squareAt(k)) == k);
  }
  const Cube q4(4);
  std::set<std::uint64_t> seen;
  for (int d = 0; d < 4; ++d)
    for (Vertex b = 0; b < 16; ++b) {
      if ((b >> d) & 1u) continue;
      const Edge e{d, b};
      const auto k = q4.index(e);
      CHECK(q4.edgeAt(k) == e);
      seen.insert(k);
    }
  CHECK(seen.size() == 32);
  // pair ranks are lexicographic
  const Cube q5(5);
  int r = 0;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) {
      CHECK(q5.pairRank(i, j) == r);
      CHECK(q5.pairAt(r) == std::pair{i, j});
      ++r;
    }
}

TEST_CASE("index errors") {
  const Cube c(4);
  CHECK_THROWS_AS(c.edgeAt(c.edgeCount()), std::out_of_range);
  CHECK_THROWS_AS(c.squareAt(c.squareCount()), std::out_of_range);
  CHECK_THROWS_AS(c.index(Edge{0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(c.index(Square{1, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(Cube(0), std::invalid_argument);
  CHECK_THROWS_AS(Cube(kMaxDimension + 1), std::invalid_argument);
}

TEST_CASE("squares of an edge") {
  const Cube q3(3);
  const auto s = q3.squaresOfEdge(Edge{0, 0});
  REQUIRE(s.size() == 2);
  CHECK(s[0] == Square{0, 1, 0});
  CHECK(s[1] == Square{0, 2, 0});
  const Cube q5(5);
  for (std::uint64_t k = 0; k < q5.edgeCount(); ++k) {
    const Edge e = q5.edgeAt(k);
    const auto sq = q5.squaresOfEdge(e);
    CHECK(sq.size() == 4);
    for (const auto& x : sq) CHECK(squareContainsEdge(x, e));
  }
}

TEST_CASE("edges of a square and squares of a cube") {
  // Q^2: the single square covers all four edges
  const Cube q2(2);
  auto es = edgesOfSquare(Square{0, 1, 0});
  std::set<std::uint64_t> idx;
  for (const auto& e : es) idx.insert(q2.index(e));
  CHECK(idx.size() == 4);

  // the six 4-cycles of Q^3, written in star notation
  const auto six = squaresOfCube(Face{0b111, 0});
  std::set<Square> got(six.begin(), six.end());
  const std::set<Square> want = {Square{0, 1, 0}, Square{0, 1, 4}, Square{0, 2, 0},
                                 Square{0, 2, 2}, Square{1, 2, 0}, Square{1, 2, 1}};
  CHECK(got == want);
  CHECK_THROWS_AS(squaresOfCube(Face{0b11, 0}), DimensionError);

  // incidence duality at n = 4
  const Cube q4(4);
  for (std::uint64_t k = 0; k < q4.squareCount(); ++k) {
    const Square s = q4.squareAt(k);
    for (const auto& e : edgesOfSquare(s)) {
      const auto around = q4.squaresOfEdge(e);
      CHECK(std::count(around.begin(), around.end(), s) == 1);
    }
  }
  // and the converse
  for (std::uint64_t k = 0; k < q4.edgeCount(); ++k) {
    const Edge e = q4.edgeAt(k);
    for (const auto& s : q4.squaresOfEdge(e)) {
      const auto es4 = edgesOfSquare(s);
      CHECK(std::count(es4.begin(), es4.end(), e) == 1);
    }
  }
}

TEST_CASE("parallel neighbors") {
  const Cube q3(3);
  const auto nb = q3.parallelNeighbors(Square{1, 2, 0});  // (0,*,*)
  REQUIRE(nb.size() == 1);
  CHECK(nb[0] == Square{1, 2, 1});  // (1,*,*)
  const Cube q4(4);
  for (std::uint64_t k = 0; k < q4.squareCount(); ++k) {
    const Square s = q4.squareAt(k);
    const auto ns = q4.parallelNeighbors(s);
    CHECK(ns.size() == 2);
    for (const auto& t : ns) {
      const auto back = q4.parallelNeighbors(t);
      CHECK(std::count(back.begin(), back.end(), s) == 1);
    }
  }
}

TEST_CASE("box span") {
  const Face f{0b0101, 0b1000};
  const Face one[] = {f};
  CHECK(boxSpan(one) == f);
  CHECK(boxSpan(toFace(Vertex{0b000}), toFace(Vertex{0b101})) == Face{0b101, 0});
  CHECK(boxSpan(toFace(Square{1, 2, 0}), toFace(Square{1, 2, 1})) == Face{0b111, 0});
  CHECK_THROWS_AS(boxSpan(std::span<const Face>{}), std::invalid_argument);

  // semilattice laws on random faces of Q^6
  std::mt19937_64 rng(17);
  auto randomFace = [&] {
    const std::uint32_t stars = static_cast<std::uint32_t>(rng()) & 0x3fu;
    return Face{stars, static_cast<Vertex>(rng() & 0x3fu & ~stars)};
  };
  for (int t = 0; t < 500; ++t) {
    const Face a = randomFace(), b = randomFace(), c = randomFace();
    CHECK(boxSpan(a, b) == boxSpan(b, a));
    CHECK(boxSpan(boxSpan(a, b), c) == boxSpan(a, boxSpan(b, c)));
    CHECK(boxSpan(a, a) == a);
    const Face ab = boxSpan(a, b);
    CHECK(ab.contains(a));
    CHECK(ab.contains(b));
    CHECK((ab.stars & ab.base) == 0);
  }
}
