#include <bit>
#include <cmath>
#include <set>

#include "doctest.h"

#include "cubetop/complex.hpp"
#include "cubetop/errors.hpp"
#include "cubetop/homology.hpp"
#include "cubetop/rng.hpp"
#include "cubetop/witness.hpp"

using namespace cubetop;

namespace {

// A single square in Q^2: four edges, no envelope beyond itself.
WitnessComplex oneSquare() {
  WitnessComplex w;
  w.name = "square";
  w.n = 2;
  w.squares = {Square{0, 1, 0}};
  const auto es = edgesOfSquare(w.squares[0]);
  w.edges.assign(es.begin(), es.end());
  w.expectedEdgeCount = 4;
  return w;
}

}  // namespace

TEST_CASE("witness complexes: sizes and thresholds") {
  const auto torus = buildWitness("torus");
  const auto rp2 = buildWitness("rp2");
  const auto klein = buildWitness("klein");
  CHECK(torus.n == 4);
  CHECK(torus.squares.size() == 16);
  CHECK(torus.edgeCount() == 32);
  CHECK(rp2.squares.size() == 20);
  CHECK(rp2.edgeCount() == 40);
  CHECK(klein.squares.size() == 28);
  CHECK(klein.edgeCount() == 56);
  for (const auto& w : {torus, rp2, klein}) {
    CHECK(w.edgeCount() == w.expectedEdgeCount);
    std::set<Square> distinct(w.squares.begin(), w.squares.end());
    CHECK(distinct.size() == w.squares.size());
  }
  CHECK(std::abs(torus.threshold() - 0.021428) < 5e-6);
  CHECK(std::abs(rp2.threshold() - 0.017179) < 5e-6);
  CHECK(std::abs(klein.threshold() - 0.01230134) < 5e-6);
  CHECK_THROWS_AS(buildWitness("sphere"), std::invalid_argument);
  CHECK(witnessNames() == std::vector<std::string>{"torus", "rp2", "klein"});

  // the torus list opens with (*,0,0,*), (0,*,0,*), (*,1,0,*), (1,*,0,*)
  CHECK(toFace(torus.squares[0]) == parseStarTuple("(*,0,0,*)"));
  CHECK(toFace(torus.squares[1]) == parseStarTuple("(0,*,0,*)"));
  CHECK(toFace(torus.squares[2]) == parseStarTuple("(*,1,0,*)"));
  CHECK(toFace(torus.squares[3]) == parseStarTuple("(1,*,0,*)"));
}

TEST_CASE("star tuples") {
  const Face f = parseStarTuple("(*,0,0,*)");
  CHECK(f.stars == 0b1001u);
  CHECK(f.base == 0u);
  CHECK(parseStarTuple("*01") == Face{0b001, 0b100});
  CHECK(formatStarTuple(Face{0b001, 0b100}, 3) == "(*,0,1)");
  for (const auto& w : {buildWitness("rp2"), buildWitness("klein")})
    for (const auto& s : w.squares) CHECK(parseStarTuple(formatStarTuple(toFace(s), w.n)) == toFace(s));
  CHECK_THROWS_AS(parseStarTuple("(*,2)"), std::invalid_argument);
  CHECK_THROWS_AS(parseStarTuple("()"), std::invalid_argument);
}

TEST_CASE("bubbles") {
  const auto b3 = buildBubble(3, Edge{0, 0});
  CHECK(b3.squares.size() == 4);
  CHECK(b3.edges.size() == 12);
  for (const auto& s : b3.squares) CHECK_FALSE(squareContainsEdge(s, Edge{0, 0}));
  CHECK_THROWS_AS(buildBubble(2, Edge{0, 0}), DimensionError);

  for (int n = 3; n <= 6; ++n) {
    for (const Edge f : {Edge{0, 0}, Edge{n - 1, 1}}) {
      const auto b = buildBubble(n, f);
      // one 3-face per pair of other directions, each with 4 squares avoiding f
      CHECK(b.squares.size() == static_cast<std::size_t>(2 * (n - 1) * (n - 2)));
      CHECK(beta1F2(ChainComplex::fromCells(n, b.edges, b.squares)) == 1);
      for (const auto& s : Cube(n).squaresOfEdge(f)) {
        auto filled = b.squares;
        filled.push_back(s);
        CHECK(beta1F2(ChainComplex::fromCells(n, b.edges, filled)) == 0);
      }
    }
  }
}

TEST_CASE("embeddings") {
  const auto e = Embedding::standard(4, 6, 0b100000);
  CHECK(e.map(Vertex{0b1010}) == 0b101010u);
  CHECK(e.image() == Face{0b1111, 0b100000});
  CHECK(e.map(Square{0, 3, 0b0100}) == Square{0, 3, 0b100100});

  Embedding bad = e;
  bad.injection = {0, 1, 1, 2};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.injection = {0, 1, 2, 6};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = e;
  bad.offset = 0b1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  Embedding twisted{4, 6, {5, 0, 3, 1}, 0b000100};
  twisted.validate();
  CHECK(twisted.map(Vertex{0b0001}) == 0b100100u);
  CHECK(twisted.map(Edge{2, 0}) == Edge{3, 0b100});
}

TEST_CASE("hull: a lone square is its own hull") {
  const Cube q5(5);
  const Square s{1, 3, 0b00101};
  const std::vector<Square> t = {s};
  SquareSet w(5);
  w.insert(s);
  const auto h = hull(w, {}, t);
  CHECK(h.face == toFace(s));
  CHECK(h.growthSteps == 0);
  CHECK(h.squares == t);
  CHECK(verifyHull(w, h));
  CHECK_THROWS_AS(hull(SquareSet(5), {}, t), std::invalid_argument);
}

TEST_CASE("hull: an incident face outside the cube forces growth") {
  const Square s{0, 1, 0};
  const Square side{0, 2, 0};  // shares the edge (0, 0) with s
  SquareSet w(5);
  w.insert(s);
  w.insert(side);
  const std::vector<Square> t = {s};
  const auto h = hull(w, {}, t);
  CHECK(h.face == Face{0b111, 0});
  CHECK(h.growthSteps == 1);  // the opposite square (0,1) at coordinate 3 = 1 avoids T
  CHECK(verifyHull(w, h));

  // spans that would exceed the cap are reported
  CHECK_THROWS_AS(hull(w, {}, t, 2), GrowthError);
}

TEST_CASE("hull: rp2 alone in Q^5 fills the whole cube") {
  const auto rp2 = buildWitness("rp2");
  const SquareSet w = SquareSet::fromSquares(5, rp2.squares);
  const auto h = hull(w, {}, rp2.squares);
  CHECK(h.face == Face{0b11111, 0});
  CHECK(h.squares.size() == rp2.squares.size());
  CHECK(verifyHull(w, h));

  // tampering with the result breaks verification
  auto broken = h;
  broken.face = Face{0b01111, 0};
  CHECK_FALSE(verifyHull(w, broken));
}

TEST_CASE("clean parallel cube") {
  const SquareSet full(5, true);
  HullResult h;
  h.face = Face{0b00011, 0};
  const auto es = edgesOfSquare(Square{0, 1, 0});
  h.tEdges.assign(es.begin(), es.end());
  h.squares = {Square{0, 1, 0}};
  const auto y = findCleanParallelCube(full, h, {0, 1u << 20});
  REQUIRE(y.has_value());
  CHECK(y->stars == 0b00011u);
  CHECK(std::popcount(y->base) == 1);

  // every edge light: no clean translate
  CHECK_FALSE(findCleanParallelCube(full, h, {4, 1u << 20}).has_value());

  // a missing square in the first translate moves the search on
  SquareSet holed = full;
  holed.erase(Cube(5).index(Square{0, 1, 0b00100}));
  const auto z = findCleanParallelCube(holed, h, {0, 1u << 20});
  REQUIRE(z.has_value());
  CHECK(z->base != 0b00100u);

  CHECK_FALSE(findCleanParallelCube(full, h, {0, 0}).has_value());
}

TEST_CASE("occurrence: planted torus") {
  const auto torus = buildWitness("torus");
  // the torus uses all 32 edges of Q^4, so X = T
  CHECK(witnessEnvelope(torus).size() == torus.squares.size());
  const auto phi = Embedding::standard(4, 6);
  const Complex planted = embedWitness(torus, phi);
  CHECK(planted.faceCount() == 16);
  CHECK(witnessOccurrence(planted, torus, phi));

  const Cube q6(6);
  const Square extra{0, 4, 0};  // contains phi of the edge (0, 0)
  REQUIRE(squareContainsEdge(extra, Edge{0, 0}));
  SquareSet more = planted.faces();
  more.insert(extra);
  CHECK_FALSE(witnessOccurrence(Complex(6, more), torus, phi));

  // a face far from phi(T) changes nothing
  SquareSet far = planted.faces();
  far.insert(Square{4, 5, 0b001111});
  CHECK(witnessOccurrence(Complex(6, far), torus, phi));

  CHECK_THROWS_AS(witnessOccurrence(planted, torus, Embedding::standard(4, 7)), DimensionError);
  CHECK_THROWS_AS(witnessOccurrence(planted, buildWitness("rp2"), phi), DimensionError);
}

TEST_CASE("occurrence: constraints decide the event exactly") {
  for (const auto& name : {"torus", "rp2", "klein"}) {
    const auto t = buildWitness(name);
    const int N = t.n + 2;
    Embedding phi{t.n, N, {}, Vertex{1} << t.n};
    for (int k = t.n - 1; k >= 0; --k) phi.injection.push_back(k == 0 ? N - 1 : k);
    phi.validate();
    const auto cons = occurrenceConstraints(t, phi);
    CHECK(cons.present.size() == witnessEnvelope(t).size());

    std::set<std::uint64_t> constrained(cons.present.begin(), cons.present.end());
    constrained.insert(cons.absent.begin(), cons.absent.end());
    CHECK(constrained.size() == cons.present.size() + cons.absent.size());

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      SquareSet base = sample(N, 0.5, seed).faces();
      for (auto k : cons.present) base.insert(k);
      for (auto k : cons.absent) base.erase(k);
      CHECK(witnessOccurrence(Complex(N, base), t, phi));
      Xoshiro256ss rng(seed);
      for (int flip = 0; flip < 20; ++flip) {
        const std::uint64_t k = rng() % base.universeSize();
        SquareSet changed = base;
        changed.contains(k) ? changed.erase(k) : changed.insert(k);
        CHECK(witnessOccurrence(Complex(N, changed), t, phi) == !constrained.count(k));
      }
    }
  }
}

TEST_CASE("occurrence frequency matches the product formula") {
  // a non-degenerate instance: one square placed in Q^4
  const auto sq = oneSquare();
  const auto phi = Embedding::standard(2, 4, 0b1000);
  const auto cons = occurrenceConstraints(sq, phi);
  CHECK(cons.present.size() == 1);
  CHECK(cons.absent.size() == 8);
  const double p = 0.2;
  const double expect = occurrenceProbability(cons, p);
  CHECK(expect == doctest::Approx(p * std::pow(0.8, 8)));
  const int trials = 20000;
  int hits = 0;
  for (int t = 0; t < trials; ++t) hits += witnessOccurrence(sample(4, p, trialSeed(404, t)), sq, phi);
  const double se = std::sqrt(expect * (1 - expect) / trials);
  CHECK(std::abs(static_cast<double>(hits) / trials - expect) <= 3 * se);
}

TEST_CASE("torus occurrence in Q^9 at p = 0.01") {
  const auto torus = buildWitness("torus");
  const auto phi = Embedding::standard(4, 9, 0b101010000);
  const auto cons = occurrenceConstraints(torus, phi);
  // 16 faces on, the other 8 squares of the cube and 32 edges x 5 outward squares off
  CHECK(cons.present.size() == 16);
  CHECK(cons.absent.size() == 8 + 32 * 5);
  const double p = 0.01;
  const double expect = occurrenceProbability(cons, p);
  const int trials = 100000;
  int hits = 0;
  for (int t = 0; t < trials; ++t) hits += witnessOccurrence(sample(9, p, trialSeed(909, t)), torus, phi);
  // standard error of the frequency under the product law
  const double se = std::sqrt(expect * (1 - expect) / trials);
  CAPTURE(hits);
  CHECK(std::abs(static_cast<double>(hits) / trials - expect) <= 3 * se);
}

TEST_CASE("occurrence: separation condition") {
  const auto sq = oneSquare();
  const auto phi = Embedding::standard(2, 5);
  const Complex planted = embedWitness(sq, phi);
  // every edge outside phi(T) has degree 0, which is light for any threshold >= 0
  CHECK(witnessOccurrence(planted, sq, phi));
  CHECK_FALSE(witnessOccurrence(planted, sq, phi, SeparationCheck{0, 1}));
  CHECK(witnessOccurrence(planted, sq, phi, SeparationCheck{-1, 1}));
}
