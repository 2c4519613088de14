#include "cubetop/parallel.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "cubetop/rng.hpp"

namespace cubetop {

bool related(const Cube& cube, const Square& s, const Square& t, const SquareSet& v) {
  if (!cube.valid(s) || !cube.valid(t)) throw std::invalid_argument("related: invalid square");
  const Vertex diff = s.base ^ t.base;
  if (s.i != t.i || s.j != t.j || std::popcount(diff) != 1)
    throw std::invalid_argument("related: squares are not parallel");
  const Face span = boxSpan(toFace(s), toFace(t));
  for (const auto& side : squaresOfCube(span)) {
    if (side == s || side == t) continue;
    if (!v.contains(cube.index(side))) return false;
  }
  return true;
}

UnionFind parallelUnionFind(const SquareSet& v) {
  UnionFind uf(v.universeSize());
  forEachRelatedPair(v, [&](std::uint64_t a, std::uint64_t b) {
    uf.unite(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
  });
  return uf;
}

ComponentDecomposition components(const SquareSet& v, const SquareSet& marked) {
  if (marked.dimension() != v.dimension()) throw std::invalid_argument("components: dimension mismatch");
  auto uf = parallelUnionFind(v);
  const std::size_t total = uf.size();
  constexpr std::uint32_t kUnset = ~std::uint32_t{0};
  std::vector<std::uint32_t> rootLabel(total, kUnset);
  ComponentDecomposition out;
  out.label.resize(total);
  for (std::size_t s = 0; s < total; ++s) {
    const auto r = uf.find(static_cast<std::uint32_t>(s));
    if (rootLabel[r] == kUnset) {
      rootLabel[r] = static_cast<std::uint32_t>(out.components.size());
      out.components.push_back(Component{s, 0, false});
    }
    auto& comp = out.components[rootLabel[r]];
    ++comp.size;
    comp.marked = comp.marked || marked.contains(s);
    out.label[s] = rootLabel[r];
  }
  return out;
}

std::uint64_t largestUncoloredComponent(const SquareSet& v1) {
  const auto dec = components(v1, v1);
  std::uint64_t best = 0;
  for (const auto& c : dec.components)
    if (!c.marked && c.size > best) best = c.size;
  return best;
}

namespace {

MeanWithError summarize(const std::vector<double>& xs) {
  MeanWithError out;
  if (xs.empty()) return out;
  double sum = 0.0;
  for (double x : xs) sum += x;
  out.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.standardError = std::sqrt(ss / static_cast<double>(xs.size() - 1)) / std::sqrt(static_cast<double>(xs.size()));
  }
  return out;
}

}  // namespace

SubgraphLawReport componentSubgraphLawCheck(int n, double p, int trials, std::uint64_t seed) {
  if (n < 3 || n > 12) throw std::invalid_argument("componentSubgraphLawCheck: n must be in [3, 12]");
  if (trials < 1) throw std::invalid_argument("componentSubgraphLawCheck: trials must be positive");
  SubgraphLawReport report{n, p, trials, seed, 0, 1, {}, {}, {}, 0};
  const Cube cube(n);
  const std::uint64_t classSize = std::uint64_t{1} << (n - 2);
  const std::uint64_t candidateEdges = static_cast<std::uint64_t>(n - 2) << (n - 3);
  const std::uint64_t classStart = static_cast<std::uint64_t>(cube.pairRank(0, 1)) << (n - 2);

  std::vector<double> edgeFreq, colorFreq, corr;
  std::vector<int> degree(classSize);
  for (int t = 0; t < trials; ++t) {
    const Complex c = sample(n, p, trialSeed(seed, static_cast<std::uint64_t>(t)));
    const auto& faces = c.faces();
    std::fill(degree.begin(), degree.end(), 0);
    std::uint64_t edges = 0;
    forEachRelatedPair(faces, [&](std::uint64_t a, std::uint64_t b) {
      if (a < classStart || a >= classStart + classSize) return;
      ++edges;
      ++degree[a - classStart];
      ++degree[b - classStart];
    });
    std::uint64_t colored = 0;
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (std::uint64_t x = 0; x < classSize; ++x) {
      const double col = faces.contains(classStart + x) ? 1.0 : 0.0;
      const double d = degree[x];
      colored += col > 0.0;
      sx += col;
      sy += d;
      sxx += col * col;
      syy += d * d;
      sxy += col * d;
    }
    const double m = static_cast<double>(classSize);
    const double cov = sxy - sx * sy / m;
    const double vx = sxx - sx * sx / m;
    const double vy = syy - sy * sy / m;
    double r = 0.0;
    if (vx > 0.0 && vy > 0.0) {
      r = cov / std::sqrt(vx * vy);
    } else {
      ++report.degenerateCorrelationTrials;
    }
    edgeFreq.push_back(static_cast<double>(edges) / static_cast<double>(candidateEdges));
    colorFreq.push_back(static_cast<double>(colored) / m);
    corr.push_back(r);
  }
  report.edgeFrequency = summarize(edgeFreq);
  report.colorFrequency = summarize(colorFreq);
  report.colorDegreeCorrelation = summarize(corr);
  return report;
}

}  // namespace cubetop
