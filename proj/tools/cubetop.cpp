// cubetop: sampling, contraction, homology and Monte Carlo experiments on
// random 2-dimensional cubical complexes Q2(n, p).
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 I/O or format error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "cubetop/complex.hpp"
#include "cubetop/contraction.hpp"
#include "cubetop/errors.hpp"
#include "cubetop/experiments.hpp"
#include "cubetop/homology.hpp"
#include "cubetop/witness.hpp"

using namespace cubetop;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  int n = 10;
  double p = 0.5;
  std::optional<double> pStart, pEnd;
  double pStep = 0.05;
  double c = 0.0;
  std::uint64_t trials = 100;
  std::uint64_t seed = 1;
  std::string stat = "maximal-count";
  std::string in;
  std::string out;
  std::string format = "json";
  int threads = 0;
  int maxStages = 16;
  std::string check;
  std::string name = "torus";
};

void writeOutput(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw IoError("cannot open " + o.out + " for writing");
  f << text;
  if (!f) throw IoError("write failed for " + o.out);
}

Complex loadOrSample(const Options& o) {
  if (!o.in.empty()) {
    try {
      return loadQcx(o.in);
    } catch (const FormatError&) {
      throw;
    } catch (const std::runtime_error& e) {
      throw IoError(e.what());
    }
  }
  return sample(o.n, o.p, o.seed);
}

int threadsOf(const Options& o) { return o.threads > 0 ? o.threads : defaultThreadCount(); }

std::string csvLine(std::initializer_list<std::pair<std::string, std::string>> fields) {
  std::string head, row;
  for (const auto& [k, v] : fields) {
    head += (head.empty() ? "" : ",") + k;
    row += (row.empty() ? "" : ",") + v;
  }
  return head + "\n" + row + "\n";
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

int cmdSample(const Options& o) {
  const Complex c = sample(o.n, o.p, o.seed);
  if (o.out.empty()) throw std::invalid_argument("sample needs --out FILE");
  try {
    saveQcx(o.out, c);
  } catch (const std::runtime_error& e) {
    throw IoError(e.what());
  }
  std::cout << json{{"n", c.dimension()}, {"p", c.p()}, {"seed", c.seed()}, {"faces", c.faceCount()},
                    {"out", o.out}}.dump()
            << "\n";
  return kExitOk;
}

int cmdStats(const Options& o) {
  const auto r = statsReport(loadOrSample(o));
  if (o.format == "csv") {
    writeOutput(o, csvLine({{"n", std::to_string(r.n)},
                            {"p", num(r.p)},
                            {"seed", std::to_string(r.seed)},
                            {"faces", std::to_string(r.faces)},
                            {"maximal_edges", std::to_string(r.maximalEdges)},
                            {"m_p", r.thresholdsDefined ? std::to_string(r.thresholds.mp) : ""},
                            {"light_edges", r.thresholdsDefined ? std::to_string(r.lightEdges) : ""},
                            {"beta1_f2", std::to_string(r.beta1)}}));
  } else {
    writeOutput(o, toJson(r).dump(2) + "\n");
  }
  return kExitOk;
}

int cmdContract(const Options& o) {
  const Complex c = loadOrSample(o);
  const auto trace = runContraction(c, {o.maxStages, false});
  long long light = 0;
  if (c.p() > 0.0 && c.p() < 1.0) light = computeThresholds(c.p()).mp;
  writeOutput(o, toJson(trace, survivorReport(trace, light)).dump(2) + "\n");
  return kExitOk;
}

int cmdHomology(const Options& o) {
  const auto chain = ChainComplex::fromComplex(loadOrSample(o));
  const auto h = summarizeHomology(chain, chain.edgeCount() <= kSmithEdgeCap);
  writeOutput(o, toJson(h).dump(2) + "\n");
  return kExitOk;
}

int cmdSweep(const Options& o) {
  ExperimentConfig cfg;
  cfg.n = o.n;
  cfg.pStart = o.pStart.value_or(o.p);
  cfg.pEnd = o.pEnd.value_or(cfg.pStart);
  cfg.pStep = o.pStep;
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  const auto stat = parseStatistic(o.stat);
  if (!stat) throw std::invalid_argument("unknown statistic: " + o.stat);
  cfg.stat = *stat;
  cfg.threads = threadsOf(o);
  cfg.maxStages = o.maxStages;
  const auto rows = sweep(cfg);
  if (o.format == "csv") {
    writeOutput(o, sweepCsv(rows));
    if (!o.out.empty()) {
      Options script = o;
      script.out = o.out + ".plot.py";
      writeOutput(script, plotScript(o.out, o.stat));
    }
  } else {
    writeOutput(o, sweepJson(rows).dump(2) + "\n");
  }
  return kExitOk;
}

int cmdPoisson(const Options& o) {
  const auto r = poissonExperiment(o.n, o.c, o.trials, o.seed, threadsOf(o));
  writeOutput(o, toJson(r).dump(2) + "\n");
  return kExitOk;
}

int cmdVerify(const Options& o) {
  std::vector<std::string> checks;
  if (o.check.empty() || o.check == "all")
    for (auto c : verifyCheckNames()) checks.emplace_back(c);
  else
    checks.push_back(o.check);
  json reports = json::array();
  bool pass = true;
  for (const auto& name : checks) {
    const auto r = runVerify(name, threadsOf(o));
    pass = pass && r.pass();
    reports.push_back(toJson(r));
    for (const auto& l : r.lines)
      std::cerr << (l.pass ? "PASS " : "FAIL ") << r.check << ": " << l.name << " -- " << l.detail << "\n";
  }
  writeOutput(o, reports.dump(2) + "\n");
  return pass ? kExitOk : kExitVerifyFailed;
}

int cmdWitness(const Options& o, bool nGiven) {
  const auto w = buildWitness(o.name);
  if (o.format == "qcx") {
    if (o.out.empty()) throw std::invalid_argument("--format qcx needs --out FILE");
    const int target = nGiven ? o.n : w.n;
    const Complex c = embedWitness(w, Embedding::standard(w.n, target));
    try {
      saveQcx(o.out, c);
    } catch (const std::runtime_error& e) {
      throw IoError(e.what());
    }
    return kExitOk;
  }
  json faces = json::array();
  for (const auto& s : w.squares) faces.push_back(formatStarTuple(toFace(s), w.n));
  const auto h = integerHomology(ChainComplex::fromSquares(w.n, w.squares, false));
  writeOutput(o, json{{"name", w.name},
                      {"n", w.n},
                      {"squares", faces},
                      {"edge_count", w.edgeCount()},
                      {"threshold", w.threshold()},
                      {"free_rank", h.freeRank},
                      {"torsion", h.torsion}}
                         .dump(2) +
                     "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random 2-dimensional cubical complexes: sampling, contraction, homology, experiments"};
  app.require_subcommand(1);
  Options o;

  auto addCommon = [&](CLI::App* sub) {
    sub->add_option("--n", o.n, "ambient cube dimension")->check(CLI::Range(1, kMaxDimension));
    sub->add_option("--p", o.p, "2-face probability")->check(CLI::Range(0.0, 1.0));
    sub->add_option("--seed", o.seed, "master seed");
    sub->add_option("--out", o.out, "output file (default: stdout)");
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv", "qcx"}));
    sub->add_option("--threads", o.threads, "worker threads (default: CUBETOP_THREADS or hardware)");
  };

  auto* sampleCmd = app.add_subcommand("sample", "sample Q2(n,p) and write a .qcx file");
  addCommon(sampleCmd);
  auto* statsCmd = app.add_subcommand("stats", "face count, maximal and light edges, beta1 over F2");
  addCommon(statsCmd);
  auto* contractCmd = app.add_subcommand("contract", "run the parallel contraction to its fixpoint");
  addCommon(contractCmd);
  contractCmd->add_option("--max-stages", o.maxStages)->check(CLI::PositiveNumber);
  auto* homologyCmd = app.add_subcommand("homology", "beta0, beta1 over F2, torsion for small complexes");
  addCommon(homologyCmd);
  for (auto* sub : {statsCmd, contractCmd, homologyCmd}) sub->add_option("--in", o.in, "read a .qcx file");

  std::vector<std::string> statNames;
  for (auto s : statisticNames()) statNames.emplace_back(s);
  auto* sweepCmd = app.add_subcommand("sweep", "statistic means over a range of p");
  addCommon(sweepCmd);
  sweepCmd->add_option("--p-start", o.pStart)->check(CLI::Range(0.0, 1.0));
  sweepCmd->add_option("--p-end", o.pEnd)->check(CLI::Range(0.0, 1.0));
  sweepCmd->add_option("--p-step", o.pStep);
  sweepCmd->add_option("--trials", o.trials)->check(CLI::PositiveNumber);
  sweepCmd->add_option("--stat", o.stat, "statistic")->check(CLI::IsMember(statNames));
  sweepCmd->add_option("--max-stages", o.maxStages)->check(CLI::PositiveNumber);

  auto* poissonCmd = app.add_subcommand("poisson", "maximal-edge counts at p = (1 + (ln n + c)/n)/2");
  addCommon(poissonCmd);
  poissonCmd->add_option("--c", o.c);
  poissonCmd->add_option("--trials", o.trials)->check(CLI::PositiveNumber);

  auto* verifyCmd = app.add_subcommand("verify", "run a property suite with fixed seeds");
  addCommon(verifyCmd);
  verifyCmd->add_option("--check", o.check, "partition, edge-prob, gs, witness, soundness or all");

  auto* witnessCmd = app.add_subcommand("witness", "export a torus / rp2 / klein complex");
  addCommon(witnessCmd);
  witnessCmd->add_option("--name", o.name)->check(CLI::IsMember({"torus", "rp2", "klein"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*sampleCmd) return cmdSample(o);
    if (*statsCmd) return cmdStats(o);
    if (*contractCmd) return cmdContract(o);
    if (*homologyCmd) return cmdHomology(o);
    if (*sweepCmd) return cmdSweep(o);
    if (*poissonCmd) return cmdPoisson(o);
    if (*verifyCmd) return cmdVerify(o);
    if (*witnessCmd) return cmdWitness(o, witnessCmd->count("--n") > 0);
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return kExitIo;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
