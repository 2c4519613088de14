#include "cubetop/witness.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>

#include "cubetop/errors.hpp"

namespace cubetop {

namespace {

struct WitnessTable {
  std::string_view name;
  int n;
  std::size_t edges;
  std::vector<std::string_view> faces;
};

const std::vector<WitnessTable>& witnessTables() {
  static const std::vector<WitnessTable> tables = {
      {"torus",
       4,
       32,
       {"(*,0,0,*)", "(0,*,0,*)", "(*,1,0,*)", "(1,*,0,*)",  //
        "(*,0,*,1)", "(0,*,*,1)", "(*,1,*,1)", "(1,*,*,1)",  //
        "(*,0,1,*)", "(0,*,1,*)", "(*,1,1,*)", "(1,*,1,*)",  //
        "(*,0,*,0)", "(0,*,*,0)", "(*,1,*,0)", "(1,*,*,0)"}},
      {"rp2",
       5,
       40,
       {"(0,0,0,*,*)", "(0,0,1,*,*)", "(0,0,*,1,*)", "(0,0,*,*,1)",  //
        "(0,1,*,*,0)", "(0,*,0,0,*)", "(0,*,1,*,0)", "(0,*,*,0,0)",  //
        "(0,*,*,1,0)", "(1,0,*,0,*)", "(1,*,0,0,*)", "(1,*,0,*,0)",  //
        "(*,0,0,*,0)", "(*,0,1,0,*)", "(*,0,*,0,0)", "(*,0,*,0,1)",  //
        "(*,1,0,0,*)", "(*,*,0,0,1)", "(*,1,0,*,0)", "(*,*,0,1,0)"}},
      {"klein",
       5,
       56,
       {"(*,*,1,0,0)", "(*,*,0,0,0)", "(0,*,*,0,0)", "(1,*,*,0,0)",  //
        "(0,1,*,*,0)", "(1,1,*,*,0)", "(*,1,0,*,0)", "(*,1,1,*,0)",  //
        "(0,*,*,1,0)", "(1,*,*,1,0)", "(*,*,1,1,0)", "(*,0,*,1,0)",  //
        "(0,*,0,1,*)", "(1,*,0,1,*)", "(*,0,0,1,*)", "(*,1,0,1,*)",  //
        "(*,1,*,1,1)", "(0,*,*,1,1)", "(1,*,*,1,1)", "(*,*,1,1,1)",  //
        "(0,0,*,*,1)", "(1,0,*,*,1)", "(*,0,0,*,1)", "(*,0,1,*,1)",  //
        "(0,0,*,0,*)", "(1,0,*,0,*)", "(*,0,0,0,*)", "(*,0,1,0,*)"}},
  };
  return tables;
}

Square faceToSquare(const Face& f) {
  if (f.dimension() != 2) throw DimensionError("expected a 2-face");
  const int i = std::countr_zero(f.stars);
  const int j = 31 - std::countl_zero(f.stars);
  return Square{i, j, f.base};
}

template <typename T, typename Key>
void sortUnique(std::vector<T>& v, Key key) {
  std::sort(v.begin(), v.end(), [&](const T& a, const T& b) { return key(a) < key(b); });
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Squares of Q^n lying in face f, in canonical order.
template <typename Fn>
void forEachSquareIn(const Cube& cube, const Face& f, Fn&& fn) {
  std::vector<int> stars;
  for (std::uint32_t m = f.stars; m; m &= m - 1) stars.push_back(std::countr_zero(m));
  const int k = static_cast<int>(stars.size());
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      const std::uint32_t rest = f.stars & ~((1u << stars[a]) | (1u << stars[b]));
      // enumerate subsets of rest
      std::uint32_t sub = 0;
      do {
        fn(cube.squareIndexUnchecked(stars[a], stars[b], f.base | sub), Square{stars[a], stars[b], f.base | sub});
        sub = (sub - rest) & rest;
      } while (sub != 0);
    }
}

template <typename Fn>
void forEachEdgeIn(const Face& f, Fn&& fn) {
  for (std::uint32_t m = f.stars; m; m &= m - 1) {
    const int d = std::countr_zero(m);
    const std::uint32_t rest = f.stars & ~(1u << d);
    std::uint32_t sub = 0;
    do {
      fn(Edge{d, f.base | sub});
      sub = (sub - rest) & rest;
    } while (sub != 0);
  }
}

template <typename Fn>
void forEachVertexIn(const Face& f, Fn&& fn) {
  std::uint32_t sub = 0;
  do {
    fn(static_cast<Vertex>(f.base | sub));
    sub = (sub - f.stars) & f.stars;
  } while (sub != 0);
}

}  // namespace

double WitnessComplex::threshold() const {
  return 1.0 - std::pow(0.5, 1.0 / static_cast<double>(edgeCount()));
}

std::vector<std::string> witnessNames() {
  std::vector<std::string> out;
  for (const auto& t : witnessTables()) out.emplace_back(t.name);
  return out;
}

Face parseStarTuple(std::string_view text) {
  Face f;
  int coord = 0;
  for (char ch : text) {
    if (ch == '(' || ch == ')' || ch == ',' || ch == ' ') continue;
    if (coord >= kMaxDimension) throw std::invalid_argument("star tuple too long");
    if (ch == '*')
      f.stars |= 1u << coord;
    else if (ch == '1')
      f.base |= Vertex{1} << coord;
    else if (ch != '0')
      throw std::invalid_argument("bad character in star tuple: " + std::string(text));
    ++coord;
  }
  if (coord == 0) throw std::invalid_argument("empty star tuple");
  return f;
}

std::string formatStarTuple(const Face& f, int n) {
  std::string out = "(";
  for (int k = 0; k < n; ++k) {
    if (k) out += ',';
    out += ((f.stars >> k) & 1u) ? '*' : (((f.base >> k) & 1u) ? '1' : '0');
  }
  out += ')';
  return out;
}

WitnessComplex buildWitness(std::string_view name) {
  for (const auto& t : witnessTables()) {
    if (t.name != name) continue;
    const Cube cube(t.n);
    WitnessComplex w;
    w.name = std::string(t.name);
    w.n = t.n;
    w.expectedEdgeCount = t.edges;
    for (auto text : t.faces) {
      const Square s = faceToSquare(parseStarTuple(text));
      if (!cube.valid(s)) throw std::logic_error("witness table holds an invalid square");
      w.squares.push_back(s);
      for (const auto& e : edgesOfSquare(s)) w.edges.push_back(e);
    }
    sortUnique(w.edges, [&](const Edge& e) { return cube.index(e); });
    return w;
  }
  throw std::invalid_argument("unknown witness complex: " + std::string(name));
}

Bubble buildBubble(int n, const Edge& f) {
  if (n < 3) throw DimensionError("a bubble needs n >= 3");
  const Cube cube(n);
  if (!cube.valid(f)) throw std::invalid_argument("buildBubble: invalid edge");
  Bubble b;
  b.center = f;
  for (int i = 0; i < n; ++i) {
    if (i == f.dir) continue;
    for (int j = i + 1; j < n; ++j) {
      if (j == f.dir) continue;
      const std::uint32_t stars = (1u << f.dir) | (1u << i) | (1u << j);
      const Face c{stars, f.base & ~stars};
      forEachEdgeIn(c, [&](const Edge& e) { b.edges.push_back(e); });
      for (const auto& s : squaresOfCube(c))
        if (!squareContainsEdge(s, f)) b.squares.push_back(s);
    }
  }
  sortUnique(b.edges, [&](const Edge& e) { return cube.index(e); });
  sortUnique(b.squares, [&](const Square& s) { return cube.index(s); });
  return b;
}

// ---------------------------------------------------------------------------
// Embedding

Embedding Embedding::standard(int n, int N, Vertex offset) {
  Embedding e;
  e.sourceDimension = n;
  e.targetDimension = N;
  for (int k = 0; k < n; ++k) e.injection.push_back(k);
  e.offset = offset;
  e.validate();
  return e;
}

void Embedding::validate() const {
  if (sourceDimension < 1 || targetDimension < sourceDimension || targetDimension > kMaxDimension)
    throw std::invalid_argument("embedding dimensions out of range");
  if (static_cast<int>(injection.size()) != sourceDimension)
    throw std::invalid_argument("embedding injection has the wrong length");
  std::uint32_t used = 0;
  for (int t : injection) {
    if (t < 0 || t >= targetDimension) throw std::invalid_argument("embedding target coordinate out of range");
    if ((used >> t) & 1u) throw std::invalid_argument("embedding injection is not injective");
    used |= 1u << t;
  }
  if ((offset >> targetDimension) != 0) throw std::invalid_argument("embedding offset outside the target cube");
  if ((offset & used) != 0) throw std::invalid_argument("embedding offset must vanish on image coordinates");
}

Vertex Embedding::map(Vertex v) const noexcept {
  Vertex out = offset;
  for (int k = 0; k < sourceDimension; ++k)
    if ((v >> k) & 1u) out |= Vertex{1} << injection[k];
  return out;
}

Edge Embedding::map(const Edge& e) const noexcept { return Edge{injection[e.dir], map(e.base)}; }

Square Embedding::map(const Square& s) const noexcept {
  return makeSquare(injection[s.i], injection[s.j], map(s.base));
}

Face Embedding::map(const Face& f) const noexcept { return Face{map(f.stars) & ~offset, map(f.base)}; }

Face Embedding::image() const noexcept {
  return map(Face{static_cast<std::uint32_t>((std::uint64_t{1} << sourceDimension) - 1), 0});
}

// ---------------------------------------------------------------------------
// Hull

HullResult hull(const SquareSet& w, std::span<const Edge> tEdges, std::span<const Square> tSquares, int dimensionCap) {
  const int n = w.dimension();
  const Cube cube(n);
  std::set<std::uint64_t> t;
  for (const auto& e : tEdges) t.insert(cube.index(e));
  for (const auto& s : tSquares) {
    if (!w.contains(cube.index(s))) throw std::invalid_argument("hull: T square is not a face of W");
    for (const auto& e : edgesOfSquare(s)) t.insert(cube.index(e));
  }
  if (t.empty()) throw std::invalid_argument("hull: T is empty");
  const auto degrees = edgeDegrees(w);

  auto touchesT = [&](const Square& s) {
    for (const auto& e : edgesOfSquare(s))
      if (t.count(cube.edgeIndexUnchecked(e.dir, e.base))) return true;
    return false;
  };

  HullResult out;
  for (;;) {
    Face span = toFace(cube.edgeAt(*t.begin()));
    for (auto idx : t) {
      const Edge e = cube.edgeAt(idx);
      span = boxSpan(span, toFace(e));
      for (const auto& s : cube.squaresOfEdge(e))
        if (w.contains(cube.squareIndexUnchecked(s.i, s.j, s.base))) span = boxSpan(span, toFace(s));
    }
    if (span.dimension() > dimensionCap)
      throw GrowthError("hull exceeded dimension cap " + std::to_string(dimensionCap));

    bool grown = false;
    std::uint64_t addEdge = 0;
    forEachSquareIn(cube, span, [&](std::uint64_t idx, const Square& s) {
      if (grown || w.contains(idx) || touchesT(s)) return;
      int bestDeg = 1 << 30;
      for (const auto& e : edgesOfSquare(s)) {
        const auto ei = cube.edgeIndexUnchecked(e.dir, e.base);
        const int d = degrees.deg[ei];
        if (d < bestDeg || (d == bestDeg && ei < addEdge)) {
          bestDeg = d;
          addEdge = ei;
        }
      }
      grown = true;
    });
    if (grown) {
      t.insert(addEdge);
      ++out.growthSteps;
      continue;
    }
    out.face = span;
    break;
  }
  for (auto idx : t) out.tEdges.push_back(cube.edgeAt(idx));
  forEachSquareIn(cube, out.face, [&](std::uint64_t idx, const Square& s) {
    if (w.contains(idx)) out.squares.push_back(s);
  });
  std::sort(out.squares.begin(), out.squares.end(),
            [&](const Square& a, const Square& b) { return cube.index(a) < cube.index(b); });
  return out;
}

bool verifyHull(const SquareSet& w, const HullResult& h) {
  const Cube cube(w.dimension());
  if (!cube.valid(h.face)) return false;
  std::set<std::uint64_t> t;
  for (const auto& e : h.tEdges) {
    if (!cube.valid(e) || !h.face.contains(toFace(e))) return false;
    t.insert(cube.index(e));
  }
  // (2) every W-square incident to T lies in the cube
  for (const auto& e : h.tEdges)
    for (const auto& s : cube.squaresOfEdge(e))
      if (w.contains(cube.index(s)) && !h.face.contains(toFace(s))) return false;
  // (1) + (3): the listed squares are exactly W inside the cube, and every
  // cube square avoiding T is among them
  std::set<std::uint64_t> listed;
  for (const auto& s : h.squares) listed.insert(cube.index(s));
  bool ok = true;
  forEachSquareIn(cube, h.face, [&](std::uint64_t idx, const Square& s) {
    if (!ok) return;
    const bool inW = w.contains(idx);
    if (inW != static_cast<bool>(listed.count(idx))) ok = false;
    bool touches = false;
    for (const auto& e : edgesOfSquare(s)) touches = touches || t.count(cube.edgeIndexUnchecked(e.dir, e.base));
    if (!touches && !inW) ok = false;
  });
  return ok && listed.size() == h.squares.size();
}

std::optional<Face> findCleanParallelCube(const SquareSet& w, const HullResult& h, const CleanCubeOptions& options) {
  const int n = w.dimension();
  const Cube cube(n);
  const auto degrees = edgeDegrees(w);
  std::set<std::uint64_t> t;
  for (const auto& e : h.tEdges) t.insert(cube.index(e));
  auto light = [&](const Edge& e) {
    return static_cast<long long>(degrees.deg[cube.edgeIndexUnchecked(e.dir, e.base)]) <= options.lightThreshold;
  };

  std::uint64_t examined = 0;
  for (int c = 0; c < n; ++c) {
    if ((h.face.stars >> c) & 1u) continue;
    if (examined++ >= options.budget) break;
    const Vertex flip = Vertex{1} << c;
    const Face y{h.face.stars, h.face.base ^ flip};
    bool ok = true;
    forEachSquareIn(cube, y, [&](std::uint64_t idx, const Square&) { ok = ok && w.contains(idx); });
    if (ok) forEachEdgeIn(y, [&](const Edge& e) { ok = ok && !light(e); });
    if (ok)
      forEachVertexIn(h.face, [&](Vertex v) { ok = ok && !light(Edge{c, v & ~flip}); });
    if (ok)
      forEachEdgeIn(h.face, [&](const Edge& e) {
        if (!ok || t.count(cube.index(e))) return;
        const Square link = makeSquare(e.dir, c, e.base & ~flip);
        ok = w.contains(cube.index(link));
      });
    if (ok) return y;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Occurrence

std::vector<Square> witnessEnvelope(const WitnessComplex& t) {
  const Cube cube(t.n);
  std::set<std::uint64_t> tEdges, tSquares;
  for (const auto& e : t.edges) tEdges.insert(cube.index(e));
  for (const auto& s : t.squares) tSquares.insert(cube.index(s));
  std::vector<Square> out;
  for (std::uint64_t k = 0; k < cube.squareCount(); ++k) {
    const Square s = cube.squareAt(k);
    bool touches = false;
    for (const auto& e : edgesOfSquare(s)) touches = touches || tEdges.count(cube.index(e));
    if (tSquares.count(k) || !touches) out.push_back(s);
  }
  return out;
}

namespace {

void checkDimensions(const WitnessComplex& t, const Embedding& phi) {
  phi.validate();
  if (phi.sourceDimension != t.n) throw DimensionError("embedding source dimension does not match the witness");
}

}  // namespace

OccurrenceConstraints occurrenceConstraints(const WitnessComplex& t, const Embedding& phi) {
  checkDimensions(t, phi);
  const Cube source(t.n);
  const Cube target(phi.targetDimension);
  const auto envelope = witnessEnvelope(t);
  std::set<std::uint64_t> inX;
  for (const auto& s : envelope) inX.insert(source.index(s));

  OccurrenceConstraints out;
  for (std::uint64_t k = 0; k < source.squareCount(); ++k) {
    const auto idx = target.index(phi.map(source.squareAt(k)));
    (inX.count(k) ? out.present : out.absent).push_back(idx);
  }
  const Face image = phi.image();
  for (const auto& e : t.edges)
    for (const auto& s : target.squaresOfEdge(phi.map(e)))
      if (!image.contains(toFace(s))) out.absent.push_back(target.index(s));
  std::sort(out.present.begin(), out.present.end());
  std::sort(out.absent.begin(), out.absent.end());
  out.absent.erase(std::unique(out.absent.begin(), out.absent.end()), out.absent.end());
  return out;
}

double occurrenceProbability(const OccurrenceConstraints& constraints, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  return std::pow(p, static_cast<double>(constraints.present.size())) *
         std::pow(1.0 - p, static_cast<double>(constraints.absent.size()));
}

bool witnessOccurrence(const Complex& c, const WitnessComplex& t, const Embedding& phi,
                       const std::optional<SeparationCheck>& separation) {
  checkDimensions(t, phi);
  const int N = c.dimension();
  if (phi.targetDimension != N) throw DimensionError("embedding target dimension does not match the complex");
  const Cube source(t.n);
  const Cube target(N);
  const auto& faces = c.faces();

  std::set<std::uint64_t> tEdges, tSquares;
  for (const auto& e : t.edges) tEdges.insert(source.index(e));
  for (const auto& s : t.squares) tSquares.insert(source.index(s));
  auto touchesT = [&](const Square& s) {
    for (const auto& e : edgesOfSquare(s))
      if (tEdges.count(source.index(e))) return true;
    return false;
  };

  // (1) inside phi's cube the faces are exactly phi(X)
  for (std::uint64_t k = 0; k < source.squareCount(); ++k) {
    const Square s = source.squareAt(k);
    const bool inX = tSquares.count(k) || !touchesT(s);
    if (faces.contains(target.index(phi.map(s))) != inX) return false;
  }
  // (2) nothing else touches phi(T)
  const Face image = phi.image();
  for (const auto& e : t.edges)
    for (const auto& s : target.squaresOfEdge(phi.map(e)))
      if (!image.contains(toFace(s)) && faces.contains(target.index(s))) return false;

  if (!separation) return true;
  // (3) no light edges in phi(X \ T), none near phi(T) except phi(T) itself
  const auto degrees = edgeDegrees(c);
  auto light = [&](const Edge& e) {
    return static_cast<long long>(degrees.deg[target.index(e)]) <= separation->lightThreshold;
  };
  std::set<std::uint64_t> imageT;
  for (const auto& e : t.edges) imageT.insert(target.index(phi.map(e)));
  for (std::uint64_t k = 0; k < source.edgeCount(); ++k) {
    if (tEdges.count(k)) continue;
    if (light(phi.map(source.edgeAt(k)))) return false;
  }
  const int radius = 2 * separation->kCap + 2;
  std::vector<std::uint8_t> seen(target.vertexCount(), 0);
  std::vector<Vertex> frontier;
  for (const auto& e : t.edges) {
    const Edge m = phi.map(e);
    for (Vertex v : {m.base, static_cast<Vertex>(m.base | (Vertex{1} << m.dir))})
      if (!seen[v]) {
        seen[v] = 1;
        frontier.push_back(v);
      }
  }
  std::vector<Vertex> ball = frontier;
  for (int r = 0; r < radius; ++r) {
    std::vector<Vertex> next;
    for (Vertex v : frontier)
      for (int d = 0; d < N; ++d) {
        const Vertex u = v ^ (Vertex{1} << d);
        if (!seen[u]) {
          seen[u] = 1;
          next.push_back(u);
        }
      }
    ball.insert(ball.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  for (Vertex v : ball)
    for (int d = 0; d < N; ++d) {
      const Edge e{d, v & ~(Vertex{1} << d)};
      if (light(e) && !imageT.count(target.index(e))) return false;
    }
  return true;
}

Complex embedWitness(const WitnessComplex& t, const Embedding& phi) {
  checkDimensions(t, phi);
  SquareSet set(phi.targetDimension);
  for (const auto& s : t.squares) set.insert(phi.map(s));
  return Complex(phi.targetDimension, std::move(set));
}

}  // namespace cubetop
