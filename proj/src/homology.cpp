#include "cubetop/homology.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

#include "cubetop/errors.hpp"
#include "cubetop/rng.hpp"
#include "cubetop/union_find.hpp"

namespace cubetop {

// ---------------------------------------------------------------------------
// Construction

ChainComplex ChainComplex::fromComplex(const Complex& c) {
  return fromSquares(c.dimension(), c.faces().squares(), true);
}

ChainComplex ChainComplex::fromSquares(int n, std::span<const Square> squares, bool fullSkeleton) {
  return fromCellsImpl(n, {}, squares, fullSkeleton);
}

ChainComplex ChainComplex::fromCells(int n, std::span<const Edge> edges, std::span<const Square> squares) {
  return fromCellsImpl(n, edges, squares, false);
}

ChainComplex ChainComplex::fromCellsImpl(int n, std::span<const Edge> extraEdges, std::span<const Square> squares,
                                         bool fullSkeleton) {
  const Cube cube(n);
  for (const auto& e : extraEdges)
    if (!cube.valid(e)) throw std::invalid_argument("fromCells: invalid edge");
  for (const auto& s : squares)
    if (!cube.valid(s)) throw std::invalid_argument("fromSquares: invalid square");
  std::vector<Square> sq(squares.begin(), squares.end());
  std::sort(sq.begin(), sq.end(),
            [&](const Square& a, const Square& b) { return cube.index(a) < cube.index(b); });
  if (std::adjacent_find(sq.begin(), sq.end()) != sq.end())
    throw std::invalid_argument("fromSquares: duplicate square");

  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  if (fullSkeleton) {
    vertices.resize(cube.vertexCount());
    std::iota(vertices.begin(), vertices.end(), Vertex{0});
    edges.reserve(cube.edgeCount());
    for (std::uint64_t e = 0; e < cube.edgeCount(); ++e) edges.push_back(cube.edgeAt(e));
  } else {
    for (const auto& e : extraEdges) {
      edges.push_back(e);
      vertices.push_back(e.base);
      vertices.push_back(e.base | (Vertex{1} << e.dir));
    }
    for (const auto& s : sq)
      for (const auto& e : edgesOfSquare(s)) {
        edges.push_back(e);
        vertices.push_back(e.base);
        vertices.push_back(e.base | (Vertex{1} << e.dir));
      }
    std::sort(edges.begin(), edges.end(),
              [&](const Edge& a, const Edge& b) { return cube.index(a) < cube.index(b); });
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  }
  ChainComplex chain;
  chain.n_ = n;
  chain.build(std::move(vertices), std::move(edges), std::move(sq), fullSkeleton);
  return chain;
}

void ChainComplex::build(std::vector<Vertex> vertices, std::vector<Edge> edges, std::vector<Square> squares,
                         bool full) {
  full_ = full;
  vertices_ = std::move(vertices);
  edges_ = std::move(edges);
  squares_ = std::move(squares);
  const Cube cube(n_);

  auto vertexRow = [&](Vertex v) -> std::uint32_t {
    if (full_) return v;
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    return static_cast<std::uint32_t>(it - vertices_.begin());
  };
  auto edgeRow = [&](const Edge& e) -> std::uint32_t {
    const auto idx = cube.edgeIndexUnchecked(e.dir, e.base);
    if (full_) return static_cast<std::uint32_t>(idx);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), idx, [&](const Edge& a, std::uint64_t key) {
      return cube.edgeIndexUnchecked(a.dir, a.base) < key;
    });
    return static_cast<std::uint32_t>(it - edges_.begin());
  };

  d1_.resize(edges_.size());
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const auto& e = edges_[k];
    d1_[k] = {Incidence{vertexRow(e.base | (Vertex{1} << e.dir)), +1}, Incidence{vertexRow(e.base), -1}};
  }
  d2_.resize(squares_.size());
  for (std::size_t k = 0; k < squares_.size(); ++k) {
    const auto es = edgesOfSquare(squares_[k]);
    for (int t = 0; t < 4; ++t) d2_[k][t] = edgeRow(es[t]);
  }
  if (!boundarySquaredVanishes()) throw std::logic_error("boundary operators do not compose to zero");
}

std::array<Incidence, 4> ChainComplex::boundary2(std::size_t square) const noexcept {
  std::array<Incidence, 4> out;
  for (int t = 0; t < 4; ++t) out[t] = Incidence{d2_[square][t], kSquareBoundarySigns[t]};
  return out;
}

bool ChainComplex::boundarySquaredVanishes() const {
  for (std::size_t k = 0; k < d2_.size(); ++k) {
    std::array<std::pair<std::uint32_t, int>, 8> terms;
    int m = 0;
    for (int t = 0; t < 4; ++t)
      for (const auto& inc : d1_[d2_[k][t]]) terms[m++] = {inc.row, inc.sign * kSquareBoundarySigns[t]};
    std::sort(terms.begin(), terms.end());
    for (int a = 0; a < 8;) {
      int b = a, sum = 0;
      while (b < 8 && terms[b].first == terms[a].first) sum += terms[b++].second;
      if (sum != 0) return false;
      a = b;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Reduction shared by the F2 and integer routines

namespace {

struct SpanningForest {
  std::vector<bool> treeEdge;
  std::size_t components = 0;
};

SpanningForest spanningForest(const ChainComplex& chain) {
  UnionFind uf(chain.vertexCount());
  SpanningForest f;
  f.treeEdge.assign(chain.edgeCount(), false);
  std::size_t merges = 0;
  for (std::size_t e = 0; e < chain.edgeCount(); ++e) {
    const auto b = chain.boundary1(e);
    if (uf.unite(b[0].row, b[1].row)) {
      f.treeEdge[e] = true;
      ++merges;
    }
  }
  f.components = chain.vertexCount() - merges;
  return f;
}

// The boundary matrix with spanning-forest rows removed (its rank and the
// torsion of its cokernel match d2), after peeling singleton rows and
// columns. Only entries of the original matrix survive, so every peeled
// pivot is a unit and the peeling is exact over Z as well as F2.
struct PeeledCore {
  std::size_t peeledRank = 0;
  std::vector<std::uint32_t> rows;  // surviving edge indices
  std::vector<std::uint32_t> cols;  // surviving square indices
};

PeeledCore peel(const ChainComplex& chain, const SpanningForest& forest) {
  const std::size_t nr = chain.edgeCount();
  const std::size_t nc = chain.squareCount();
  std::vector<std::uint32_t> rowStart(nr + 1, 0);
  std::vector<int> colCount(nc, 0);
  for (std::size_t c = 0; c < nc; ++c)
    for (auto r : chain.boundary2Rows(c))
      if (!forest.treeEdge[r]) {
        ++rowStart[r + 1];
        ++colCount[c];
      }
  for (std::size_t r = 0; r < nr; ++r) rowStart[r + 1] += rowStart[r];
  std::vector<std::uint32_t> rowCols(rowStart[nr]);
  {
    std::vector<std::uint32_t> fill(rowStart.begin(), rowStart.end() - 1);
    for (std::size_t c = 0; c < nc; ++c)
      for (auto r : chain.boundary2Rows(c))
        if (!forest.treeEdge[r]) rowCols[fill[r]++] = static_cast<std::uint32_t>(c);
  }
  std::vector<int> rowCount(nr);
  std::vector<char> rowAlive(nr), colAlive(nc, 1);
  for (std::size_t r = 0; r < nr; ++r) {
    rowAlive[r] = !forest.treeEdge[r];
    rowCount[r] = static_cast<int>(rowStart[r + 1] - rowStart[r]);
  }

  PeeledCore core;
  // Work items: values < nr are rows, the rest columns offset by nr.
  std::vector<std::uint64_t> stack;
  for (std::size_t r = 0; r < nr; ++r)
    if (rowAlive[r] && rowCount[r] <= 1) stack.push_back(r);
  for (std::size_t c = 0; c < nc; ++c)
    if (colCount[c] <= 1) stack.push_back(nr + c);

  auto killCol = [&](std::size_t c) {
    colAlive[c] = 0;
    for (auto r : chain.boundary2Rows(c))
      if (rowAlive[r] && --rowCount[r] <= 1) stack.push_back(r);
  };
  auto killRow = [&](std::size_t r) {
    rowAlive[r] = 0;
    for (auto k = rowStart[r]; k < rowStart[r + 1]; ++k) {
      const auto c = rowCols[k];
      if (colAlive[c] && --colCount[c] <= 1) stack.push_back(nr + c);
    }
  };

  while (!stack.empty()) {
    const auto item = stack.back();
    stack.pop_back();
    if (item < nr) {
      const std::size_t r = item;
      if (!rowAlive[r] || rowCount[r] > 1) continue;
      if (rowCount[r] == 1) {
        std::size_t col = nc;
        for (auto k = rowStart[r]; k < rowStart[r + 1]; ++k)
          if (colAlive[rowCols[k]]) col = rowCols[k];
        ++core.peeledRank;
        rowAlive[r] = 0;
        killCol(col);
      } else {
        rowAlive[r] = 0;
      }
    } else {
      const std::size_t c = item - nr;
      if (!colAlive[c] || colCount[c] > 1) continue;
      if (colCount[c] == 1) {
        std::size_t row = nr;
        for (auto r : chain.boundary2Rows(c))
          if (rowAlive[r]) row = r;
        ++core.peeledRank;
        colAlive[c] = 0;
        killRow(row);
      } else {
        colAlive[c] = 0;
      }
    }
  }
  for (std::size_t r = 0; r < nr; ++r)
    if (rowAlive[r]) core.rows.push_back(static_cast<std::uint32_t>(r));
  for (std::size_t c = 0; c < nc; ++c)
    if (colAlive[c]) core.cols.push_back(static_cast<std::uint32_t>(c));
  return core;
}

std::size_t denseRankF2(const ChainComplex& chain, const PeeledCore& core) {
  const std::size_t nrows = core.rows.size();
  if (nrows == 0 || core.cols.empty()) return 0;
  std::vector<std::int32_t> local(chain.edgeCount(), -1);
  for (std::size_t k = 0; k < nrows; ++k) local[core.rows[k]] = static_cast<std::int32_t>(k);
  const std::size_t words = (nrows + 63) / 64;
  std::vector<std::uint64_t> pivotCols;  // pivot columns, stored contiguously
  std::vector<std::int32_t> pivotOf(nrows, -1);
  std::vector<std::uint64_t> col(words);
  std::size_t rank = 0;
  for (auto c : core.cols) {
    std::fill(col.begin(), col.end(), 0);
    for (auto r : chain.boundary2Rows(c))
      if (local[r] >= 0) col[static_cast<std::size_t>(local[r]) >> 6] ^= std::uint64_t{1} << (local[r] & 63);
    // Reduce by highest set row; pivot columns have all higher rows clear.
    std::size_t w = words;
    while (w > 0) {
      if (col[w - 1] == 0) {
        --w;
        continue;
      }
      const std::size_t top = (w - 1) * 64 + 63 - static_cast<std::size_t>(std::countl_zero(col[w - 1]));
      const auto p = pivotOf[top];
      if (p < 0) {
        pivotOf[top] = static_cast<std::int32_t>(rank);
        pivotCols.insert(pivotCols.end(), col.begin(), col.end());
        ++rank;
        break;
      }
      const std::uint64_t* src = pivotCols.data() + static_cast<std::size_t>(p) * words;
      for (std::size_t k = 0; k < w; ++k) col[k] ^= src[k];
    }
  }
  return rank;
}

}  // namespace

// ---------------------------------------------------------------------------
// Public homology routines

std::size_t betti0(const ChainComplex& chain) { return spanningForest(chain).components; }

std::size_t rankF2Boundary2(const ChainComplex& chain) {
  const auto forest = spanningForest(chain);
  const auto core = peel(chain, forest);
  return core.peeledRank + denseRankF2(chain, core);
}

std::size_t beta1F2(const ChainComplex& chain) {
  const auto forest = spanningForest(chain);
  const auto core = peel(chain, forest);
  const std::size_t rank = core.peeledRank + denseRankF2(chain, core);
  return chain.edgeCount() - (chain.vertexCount() - forest.components) - rank;
}

namespace {

std::int64_t checkedMulSub(std::int64_t a, std::int64_t q, std::int64_t b) {
  std::int64_t prod = 0, out = 0;
  if (__builtin_mul_overflow(q, b, &prod) || __builtin_sub_overflow(a, prod, &out))
    throw std::overflow_error("Smith normal form entry overflowed 64 bits");
  return out;
}

}  // namespace

std::vector<std::int64_t> smithInvariantFactors(std::vector<std::int64_t> a, std::size_t rows, std::size_t cols) {
  if (a.size() != rows * cols) throw std::invalid_argument("smithInvariantFactors: size mismatch");
  auto at = [&](std::size_t r, std::size_t c) -> std::int64_t& { return a[r * cols + c]; };
  std::vector<std::int64_t> diag;
  const std::size_t limit = std::min(rows, cols);
  for (std::size_t t = 0; t < limit; ++t) {
    // Smallest nonzero magnitude in the trailing block becomes the pivot.
    std::size_t pr = rows, pc = cols;
    std::int64_t best = 0;
    for (std::size_t r = t; r < rows; ++r)
      for (std::size_t c = t; c < cols; ++c) {
        const std::int64_t v = at(r, c);
        if (v != 0 && (best == 0 || std::abs(v) < best)) {
          best = std::abs(v);
          pr = r;
          pc = c;
        }
      }
    if (best == 0) break;
    for (;;) {
      if (pr != t)
        for (std::size_t c = 0; c < cols; ++c) std::swap(at(pr, c), at(t, c));
      if (pc != t)
        for (std::size_t r = 0; r < rows; ++r) std::swap(at(r, pc), at(r, t));
      const std::int64_t piv = at(t, t);
      bool clean = true;
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (at(r, t) == 0) continue;
        const std::int64_t q = at(r, t) / piv;
        for (std::size_t c = t; c < cols; ++c) at(r, c) = checkedMulSub(at(r, c), q, at(t, c));
        clean = clean && at(r, t) == 0;
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (at(t, c) == 0) continue;
        const std::int64_t q = at(t, c) / piv;
        for (std::size_t r = t; r < rows; ++r) at(r, c) = checkedMulSub(at(r, c), q, at(r, t));
        clean = clean && at(t, c) == 0;
      }
      if (clean) break;
      // A remainder smaller than the pivot is left in row or column t.
      pr = t;
      pc = t;
      best = std::abs(at(t, t));
      for (std::size_t r = t + 1; r < rows; ++r)
        if (at(r, t) != 0 && std::abs(at(r, t)) < best) {
          best = std::abs(at(r, t));
          pr = r;
          pc = t;
        }
      for (std::size_t c = t + 1; c < cols; ++c)
        if (at(t, c) != 0 && std::abs(at(t, c)) < best) {
          best = std::abs(at(t, c));
          pr = t;
          pc = c;
        }
    }
    diag.push_back(std::abs(at(t, t)));
  }
  // Diagonal to invariant factors: enforce d_k | d_{k+1} by gcd/lcm exchange.
  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      const std::int64_t g = std::gcd(diag[i], diag[j]);
      if (g == diag[i]) continue;
      std::int64_t l = 0;
      if (__builtin_mul_overflow(diag[i] / g, diag[j], &l))
        throw std::overflow_error("invariant factor overflowed 64 bits");
      diag[i] = g;
      diag[j] = l;
    }
  return diag;
}

IntegerHomology integerHomology(const ChainComplex& chain) {
  if (chain.edgeCount() > kSmithEdgeCap)
    throw CapacityError("integer homology is limited to " + std::to_string(kSmithEdgeCap) + " edges");
  const auto forest = spanningForest(chain);
  const auto core = peel(chain, forest);
  const std::size_t rows = core.rows.size(), cols = core.cols.size();
  std::vector<std::int32_t> local(chain.edgeCount(), -1);
  for (std::size_t k = 0; k < rows; ++k) local[core.rows[k]] = static_cast<std::int32_t>(k);
  std::vector<std::int64_t> m(rows * cols, 0);
  for (std::size_t c = 0; c < cols; ++c) {
    const auto bd = chain.boundary2(core.cols[c]);
    for (const auto& inc : bd)
      if (local[inc.row] >= 0) m[static_cast<std::size_t>(local[inc.row]) * cols + c] += inc.sign;
  }
  const auto factors = smithInvariantFactors(std::move(m), rows, cols);
  IntegerHomology h;
  const std::size_t rank = core.peeledRank + factors.size();
  h.freeRank = chain.edgeCount() - (chain.vertexCount() - forest.components) - rank;
  for (auto d : factors)
    if (d > 1) h.torsion.push_back(d);
  return h;
}

HomologySummary summarizeHomology(const ChainComplex& chain, bool withTorsion) {
  HomologySummary s;
  s.beta0 = betti0(chain);
  s.beta1F2 = beta1F2(chain);
  if (withTorsion) {
    const auto h = integerHomology(chain);
    s.torsionComputed = true;
    s.torsion = h.torsion;
    s.freeRank = h.freeRank;
  }
  return s;
}

GraphConnectivity graphConnectivity(int n, const BitVector& edges) {
  const Cube cube(n);
  if (edges.size() != cube.edgeCount()) throw std::invalid_argument("graphConnectivity: edge vector length mismatch");
  UnionFind uf(cube.vertexCount());
  std::uint64_t merges = 0;
  edges.forEachSet([&](std::size_t k) {
    const Edge e = cube.edgeAt(k);
    merges += uf.unite(e.base, e.base | (Vertex{1} << e.dir));
  });
  GraphConnectivity g;
  g.components = cube.vertexCount() - merges;
  g.connected = g.components == 1;
  return g;
}

BitVector sampleCubeGraph(int n, double q, std::uint64_t seed) {
  const Cube cube(n);
  const auto thr = inclusionThreshold(q);
  BitVector edges(cube.edgeCount());
  Xoshiro256ss rng(seed);
  for (std::uint64_t k = 0; k < cube.edgeCount(); ++k)
    if (const auto u = rng(); thr.always || u < thr.bound) edges.set(k);
  return edges;
}

}  // namespace cubetop
