#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sqrange/closest_pair.hpp"
#include "sqrange/cone_queries.hpp"
#include "sqrange/io.hpp"
#include "sqrange/min_weight.hpp"
#include "sqrange/oracle.hpp"
#include "sqrange/random.hpp"
#include "sqrange/rmw_baseline.hpp"
#include "sqrange/staircase.hpp"
#include "sqrange/svg.hpp"

using namespace sqrange;
using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitInput = 2;

/// Bad user input: I/O, format, validation.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

io::PointSet load_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open points file '" + path + "'");
  return io::read_points(in);
}

std::vector<io::Query> load_workload(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open workload file '" + path + "'");
  return io::read_workload(in);
}

// Writes to `path`, or stdout for "-".
template <class F>
void with_output(const std::string& path, F&& write) {
  if (path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open output file '" + path + "'");
  write(out);
  if (!out) throw InputError("failed writing '" + path + "'");
}

std::size_t thread_count() {
  const char* env = std::getenv("SQRANGE_THREADS");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 1024) throw InputError("SQRANGE_THREADS must be an integer in 1..1024");
  return static_cast<std::size_t>(v);
}

Json ids_json(std::span<const Point> pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(p.id);
  return a;
}

std::vector<PointId> sorted_ids(std::span<const Point> pts) {
  std::vector<PointId> ids;
  for (const auto& p : pts) ids.push_back(p.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

// ---------------------------------------------------------------- generate

io::Query random_query(DeterministicRng& rng, Coord range, std::size_t max_c, bool weighted) {
  io::Query q;
  const auto kinds = weighted ? 5u : 4u;
  q.kind = static_cast<io::QueryKind>(rng.below(kinds));
  const Coord margin = range / 10;
  auto coord = [&] { return rng.between(-margin, range + margin); };
  auto side = [&] { return 1 + static_cast<Coord>(rng.below(static_cast<std::uint64_t>(std::max<Coord>(1, range)))); };
  switch (q.kind) {
    case io::QueryKind::kClosestC:
      q.point = {coord(), coord()};
      q.c = 1 + rng.below(max_c);
      break;
    case io::QueryKind::kAnchoredSquare:
      q.point = {coord(), coord()};
      q.c = 1 + rng.below(max_c);
      q.orientation = kAllOrientations[rng.below(4)];
      break;
    case io::QueryKind::kSparseReport:
      q.square = Square(coord(), coord(), side());
      q.c = rng.below(max_c + 1);
      break;
    case io::QueryKind::kRcp: q.square = Square(coord(), coord(), side()); break;
    case io::QueryKind::kRmw:
      q.square = Square(coord(), coord(), side());
      q.method = rng.below(2) == 0 ? io::RmwMethod::kBaseline : io::RmwMethod::kFromClosestPair;
      break;
  }
  return q;
}

struct GenerateArgs {
  std::size_t n = 0;
  Coord range = 1'000'000;
  std::uint64_t seed = 1;
  bool weighted = false;
  std::string out = "-";
  std::string workload_out;
  std::size_t queries = 1000;
  std::size_t c = 5;
};

int cmd_generate(const GenerateArgs& a) {
  if (a.range > kClosestPairCoordLimit) throw InputError("--range must not exceed 2^59");
  if (a.c < 1) throw InputError("--c must be at least 1");
  DeterministicRng rng(a.seed);
  io::PointSet s;
  try {
    s.points = random_general_position(a.n, a.range, rng);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  s.weighted = a.weighted;
  if (a.weighted)
    for (std::size_t i = 0; i < a.n; ++i) s.weights.push_back(static_cast<double>(rng.below(1'000'000)));
  with_output(a.out, [&](std::ostream& o) { io::write_points(o, s); });

  if (!a.workload_out.empty()) {
    std::vector<io::Query> qs;
    for (std::size_t i = 0; i < a.queries; ++i) qs.push_back(random_query(rng, a.range, a.c, a.weighted));
    with_output(a.workload_out, [&](std::ostream& o) { io::write_workload(o, qs); });
  }
  return kExitOk;
}

// ---------------------------------------------------------------- build

struct BuildArgs {
  std::string points;
  std::string structure = "staircase";
  std::size_t c = 1;
  std::string backend = "rcp";
};

int cmd_build(const BuildArgs& a) {
  const auto s = load_points(a.points);
  Json report;
  report["structure"] = a.structure;
  report["n"] = s.points.size();
  bool bounds_ok = true;
  const auto start = Clock::now();
  if (a.structure == "staircase") {
    if (!s.points.empty() && (a.c < 1 || a.c > s.points.size()))
      throw InputError("--c must lie in 1..n");
    StaircaseIndex index(s.points, a.c);
    report["build_ms"] = elapsed_ms(start);
    report["c"] = a.c;
    report["cells"] = index.cell_count();
    report["edges"] = index.edge_count();
    report["cell_bound"] = index.cell_bound();
    report["edge_bound"] = index.edge_bound();
    const bool cells_ok = index.cell_count() <= index.cell_bound();
    const bool edges_ok = index.edge_count() <= index.edge_bound();
    report["cells_within_bound"] = cells_ok;
    report["edges_within_bound"] = edges_ok;
    bounds_ok = cells_ok && edges_ok;
    report["memory_bytes"] = index.memory_bytes();
  } else if (a.structure == "rcp") {
    ClosestPairIndex<> index(s.points);
    report["build_ms"] = elapsed_ms(start);
    Json sizes = Json::array();
    for (int k = 1; k <= 4; ++k) sizes.push_back(index.yao_subset_size(k));
    report["yao_subset_sizes"] = sizes;
    report["memory_bytes"] = index.memory_bytes();
  } else if (a.structure == "rmw-baseline") {
    if (!s.weighted) throw InputError("rmw structures need a weighted points file");
    LayeredRangeTree<double> index(s.weighted_points());
    report["build_ms"] = elapsed_ms(start);
    report["memory_bytes"] = index.memory_bytes();
  } else if (a.structure == "rmw-from-cp") {
    if (!s.weighted) throw InputError("rmw structures need a weighted points file");
    report["backend"] = a.backend;
    if (a.backend == "rcp") {
      MinWeightIndex<ClosestPairIndex<>> index(s.weighted_points());
      report["build_ms"] = elapsed_ms(start);
      report["doubled_points"] = index.doubled_set().points.size();
      report["memory_bytes"] = index.closest_pair_backend().memory_bytes();
    } else if (a.backend == "brute") {
      MinWeightIndex<ScanClosestPair> index(s.weighted_points());
      report["build_ms"] = elapsed_ms(start);
      report["doubled_points"] = index.doubled_set().points.size();
      report["memory_bytes"] = index.closest_pair_backend().memory_bytes();
    } else {
      throw InputError("--backend must be brute or rcp");
    }
  } else {
    throw InputError("unknown structure '" + a.structure + "'");
  }
  std::cout << report.dump() << '\n';
  return bounds_ok ? kExitOk : kExitMismatch;
}

// ---------------------------------------------------------------- query

/// Indexes needed by a workload, built once before answering.
class Engine {
 public:
  Engine(const io::PointSet& s, const std::vector<io::Query>& queries) : set_(s) {
    if (s.weighted) weighted_ = s.weighted_points();
    for (const auto& q : queries) prepare(q);
  }

  Json answer(const io::Query& q, bool verify, bool& match) const {
    Json r;
    match = true;
    const auto& pts = set_.points;
    switch (q.kind) {
      case io::QueryKind::kClosestC: {
        const auto got = staircase_.at(clamp_c(q.c)).closest_c(q.point);
        r["points"] = ids_json(got);
        if (verify) {
          const auto want = oracle::brute_closest_c(pts, q.point, q.c);
          match = got.size() == want.size() && std::equal(got.begin(), got.end(), want.begin(),
                                                          [](auto& x, auto& y) { return x.id == y.id; });
        }
        break;
      }
      case io::QueryKind::kAnchoredSquare: {
        const auto got = anchored_.at({q.c, q.orientation}).smallest_square(q.point);
        if (is_insufficient(got)) {
          r["insufficient"] = true;
        } else {
          const auto& sq = std::get<SquareWithPoints>(got);
          r["side"] = sq.side;
          r["points"] = ids_json(sq.points);
          r["defining_point"] = sq.defining_point.id;
        }
        if (verify) {
          const auto want = oracle::brute_anchored_square(pts, q.point, q.c, q.orientation);
          match = got.index() == want.index();
          if (match && !is_insufficient(want)) {
            const auto& g = std::get<SquareWithPoints>(got);
            const auto& w = std::get<SquareWithPoints>(want);
            match = g.side == w.side && sorted_ids(g.points) == sorted_ids(w.points);
          }
        }
        break;
      }
      case io::QueryKind::kSparseReport: {
        const auto got = sparse_.at(q.c).report(q.square);
        if (is_more_than_c(got)) r["more_than_c"] = true;
        else r["points"] = sorted_ids(std::get<std::vector<Point>>(got));
        if (verify) {
          const auto want = oracle::brute_sparse_report(pts, q.square, q.c);
          match = is_more_than_c(got) == is_more_than_c(want);
          if (match && !is_more_than_c(want))
            match = sorted_ids(std::get<std::vector<Point>>(got)) ==
                    sorted_ids(std::get<std::vector<Point>>(want));
        }
        break;
      }
      case io::QueryKind::kRcp: {
        const auto got = rcp_->query(q.square);
        if (got) {
          r["pair"] = {got->first.id, got->second.id};
          r["distance_sq"] = to_string(got->distance_sq);
        } else {
          r["pair"] = nullptr;
        }
        if (verify) {
          const auto want = oracle::brute_closest_pair_in_range(pts, q.square);
          match = got.has_value() == want.has_value() && (!want || got->distance_sq == want->distance_sq);
        }
        break;
      }
      case io::QueryKind::kRmw: {
        const auto got = q.method == io::RmwMethod::kBaseline ? rmw_baseline_->query(q.square)
                                                              : rmw_from_cp_->query(q.square);
        if (got) {
          r["point"] = got->point.id;
          r["weight"] = got->weight;
        } else {
          r["point"] = nullptr;
        }
        if (verify) {
          const auto want = oracle::brute_min_weight_in_range<double>(weighted_, q.square);
          match = got.has_value() == want.has_value() && (!want || got->weight == want->weight);
        }
        break;
      }
    }
    return r;
  }

 private:
  std::size_t clamp_c(std::size_t c) const {
    return set_.points.empty() ? c : std::min(c, set_.points.size());
  }

  void prepare(const io::Query& q) {
    switch (q.kind) {
      case io::QueryKind::kClosestC:
        if (!staircase_.count(clamp_c(q.c)))
          staircase_.emplace(clamp_c(q.c), StaircaseIndex(set_.points, clamp_c(q.c)));
        break;
      case io::QueryKind::kAnchoredSquare:
        if (!anchored_.count({q.c, q.orientation}))
          anchored_.emplace(std::pair{q.c, q.orientation}, AnchoredSquareIndex(set_.points, q.c, q.orientation));
        break;
      case io::QueryKind::kSparseReport:
        if (!sparse_.count(q.c)) sparse_.emplace(q.c, SparseReportIndex(set_.points, q.c));
        break;
      case io::QueryKind::kRcp:
        if (!rcp_) rcp_.emplace(set_.points);
        break;
      case io::QueryKind::kRmw:
        if (!set_.weighted) throw InputError("rmw query on an unweighted points file");
        if (q.method == io::RmwMethod::kBaseline && !rmw_baseline_) rmw_baseline_.emplace(weighted_);
        if (q.method == io::RmwMethod::kFromClosestPair && !rmw_from_cp_) rmw_from_cp_.emplace(weighted_);
        break;
    }
  }

  const io::PointSet& set_;
  std::vector<WeightedPoint<double>> weighted_;
  std::map<std::size_t, StaircaseIndex> staircase_;
  std::map<std::pair<std::size_t, Orientation>, AnchoredSquareIndex> anchored_;
  std::map<std::size_t, SparseReportIndex> sparse_;
  std::optional<ClosestPairIndex<>> rcp_;
  std::optional<LayeredRangeTree<double>> rmw_baseline_;
  std::optional<MinWeightIndex<ClosestPairIndex<>>> rmw_from_cp_;
};

struct QueryArgs {
  std::string points;
  std::string workload;
  bool verify = false;
  std::string out = "-";
  std::string summary;
};

double percentile(std::vector<double> v, double q) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const auto at = static_cast<std::size_t>(q * static_cast<double>(v.size() - 1) + 0.5);
  return v[std::min(at, v.size() - 1)];
}

int cmd_query(const QueryArgs& a) {
  const auto s = load_points(a.points);
  const auto queries = load_workload(a.workload);
  const Engine engine(s, queries);

  std::vector<std::string> lines(queries.size());
  std::vector<double> micros(queries.size(), 0.0);
  std::vector<char> matches(queries.size(), 1);
  const std::size_t threads = std::min(thread_count(), std::max<std::size_t>(1, queries.size()));
  std::vector<std::exception_ptr> errors(threads);
  auto work = [&](std::size_t t) {
    try {
      for (std::size_t i = t; i < queries.size(); i += threads) {
        bool match = true;
        const auto start = Clock::now();
        Json result = engine.answer(queries[i], a.verify, match);
        micros[i] = std::chrono::duration<double, std::micro>(Clock::now() - start).count();
        Json line;
        line["i"] = i;
        line["query"] = io::format_query(queries[i]);
        line["result"] = std::move(result);
        if (a.verify) line["match"] = match;
        matches[i] = match ? 1 : 0;
        lines[i] = line.dump();
      }
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(work, t);
  work(0);
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  with_output(a.out, [&](std::ostream& o) {
    for (const auto& line : lines) o << line << '\n';
  });

  std::size_t mismatches = 0;
  std::ostringstream csv;
  csv << "kind,queries,mismatches,mean_us,p99_us\n";
  auto row = [&](const std::string& name, auto&& keep) {
    std::vector<double> t;
    std::size_t bad = 0;
    for (std::size_t i = 0; i < queries.size(); ++i) {
      if (!keep(queries[i])) continue;
      t.push_back(micros[i]);
      bad += matches[i] ? 0 : 1;
    }
    if (t.empty() && name != "all") return bad;
    double mean = 0;
    for (double v : t) mean += v;
    mean = t.empty() ? 0.0 : mean / static_cast<double>(t.size());
    csv << name << ',' << t.size() << ',' << bad << ',' << mean << ',' << percentile(t, 0.99) << '\n';
    return bad;
  };
  for (auto kind : {io::QueryKind::kClosestC, io::QueryKind::kAnchoredSquare, io::QueryKind::kSparseReport,
                    io::QueryKind::kRcp, io::QueryKind::kRmw})
    row(io::to_string(kind), [&](const io::Query& q) { return q.kind == kind; });
  mismatches = row("all", [](const io::Query&) { return true; });
  if (a.summary.empty()) std::cerr << csv.str();
  else with_output(a.summary, [&](std::ostream& o) { o << csv.str(); });

  if (a.verify && mismatches > 0) {
    std::cerr << "verification failed: " << mismatches << " mismatching queries\n";
    return kExitMismatch;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  std::size_t n_min = 1024;
  std::size_t n_max = 65536;
  std::size_t factor = 2;
  std::size_t c = 3;
  std::size_t queries = 20000;
  std::uint64_t seed = 1;
  std::string out = "-";
};

struct BenchRow {
  std::size_t n, cells, edges;
  double build_ms, mean_us, p99_us;
};

BenchRow bench_one(std::size_t n, std::size_t c, std::size_t queries, std::uint64_t seed) {
  const Coord range = std::max<Coord>(Coord{1} << 30, 16 * static_cast<Coord>(n));
  DeterministicRng rng(seed ^ (0x9e3779b97f4a7c15ULL * n));
  const auto pts = random_general_position(n, range, rng);
  const auto start = Clock::now();
  StaircaseIndex index(pts, std::min(c, std::max<std::size_t>(1, n)));
  const double build_ms = elapsed_ms(start);

  std::vector<Point> probes;
  for (std::size_t i = 0; i < queries; ++i) probes.push_back({rng.between(0, range), rng.between(0, range)});
  std::vector<double> each;
  each.reserve(queries);
  std::size_t sink = 0;
  for (int rep = 0; rep < 2; ++rep) {  // first pass warms caches
    each.clear();
    for (const auto& p : probes) {
      const auto t0 = Clock::now();
      sink += index.closest_c(p).size();
      each.push_back(std::chrono::duration<double, std::micro>(Clock::now() - t0).count());
    }
  }
  const auto t0 = Clock::now();
  for (const auto& p : probes) sink += index.closest_c(p).size();
  const double mean_us =
      probes.empty() ? 0.0 : std::chrono::duration<double, std::micro>(Clock::now() - t0).count() /
                                 static_cast<double>(probes.size());
  if (sink == 1) std::cerr << "";  // keep the loop observable
  return {n, index.cell_count(), index.edge_count(), build_ms, mean_us, percentile(each, 0.99)};
}

int cmd_bench(const BenchArgs& a) {
  if (a.n_min < 1 || a.n_max < a.n_min) throw InputError("need 1 <= --n-min <= --n-max");
  if (a.factor < 2) throw InputError("--factor must be at least 2");
  if (a.c < 1) throw InputError("--c must be at least 1");
  std::ostringstream csv;
  csv << "n,build_ms,mean_query_us,p99_query_us,cells,edges\n";
  for (std::size_t n = a.n_min; n <= a.n_max; n *= a.factor) {
    const auto r = bench_one(n, a.c, a.queries, a.seed);
    csv << r.n << ',' << r.build_ms << ',' << r.mean_us << ',' << r.p99_us << ',' << r.cells << ','
        << r.edges << '\n';
  }
  with_output(a.out, [&](std::ostream& o) { o << csv.str(); });
  return kExitOk;
}

// ---------------------------------------------------------------- dump-svg

int cmd_dump_svg(const std::string& points, std::size_t c, const std::string& out) {
  const auto s = load_points(points);
  if (!s.points.empty() && (c < 1 || c > s.points.size())) throw InputError("--c must lie in 1..n");
  StaircaseIndex index(s.points, c);
  with_output(out, [&](std::ostream& o) { write_svg(o, index); });
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Square range queries: staircase closest-c index, closest-pair and minimum-weight reductions"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Random point set in general position (and optional workload)");
  g->add_option("--n", gen.n, "Number of points")->required();
  g->add_option("--range", gen.range, "Coordinates are drawn from [0, range)")->check(CLI::PositiveNumber);
  g->add_option("--seed", gen.seed, "Random seed");
  g->add_flag("--weighted", gen.weighted, "Attach a weight to every point");
  g->add_option("--out", gen.out, "Points file ('-' for stdout)");
  g->add_option("--workload-out", gen.workload_out, "Also write a random workload here");
  g->add_option("--queries", gen.queries, "Workload size");
  g->add_option("--c", gen.c, "Largest c used in the workload");

  BuildArgs build;
  auto* b = app.add_subcommand("build", "Build one structure and report its size and build time");
  b->add_option("--points", build.points, "Points file")->required();
  b->add_option("--structure", build.structure, "staircase | rcp | rmw-baseline | rmw-from-cp")
      ->check(CLI::IsMember({"staircase", "rcp", "rmw-baseline", "rmw-from-cp"}));
  b->add_option("--c", build.c, "Staircase parameter c");
  b->add_option("--backend", build.backend, "Closest-pair backend for rmw-from-cp: brute | rcp")
      ->check(CLI::IsMember({"brute", "rcp"}));

  QueryArgs query;
  auto* q = app.add_subcommand("query", "Answer a workload (JSON lines) with an optional oracle check");
  q->add_option("--points", query.points, "Points file")->required();
  q->add_option("--workload", query.workload, "Workload file")->required();
  q->add_flag("--verify", query.verify, "Check every answer against brute force");
  q->add_option("--out", query.out, "Results file ('-' for stdout)");
  q->add_option("--summary", query.summary, "Summary CSV file (default: stderr)");

  BenchArgs bench;
  auto* be = app.add_subcommand("bench", "Closest-c query time over a sweep of n");
  be->add_option("--n-min", bench.n_min, "Smallest n");
  be->add_option("--n-max", bench.n_max, "Largest n");
  be->add_option("--factor", bench.factor, "Growth factor between sizes");
  be->add_option("--c", bench.c, "Parameter c");
  be->add_option("--queries", bench.queries, "Queries per size");
  be->add_option("--seed", bench.seed, "Random seed");
  be->add_option("--out", bench.out, "CSV file ('-' for stdout)");

  std::string svg_points, svg_out = "-";
  std::size_t svg_c = 1;
  auto* d = app.add_subcommand("dump-svg", "Render the subdivision with cell depths");
  d->add_option("--points", svg_points, "Points file")->required();
  d->add_option("--c", svg_c, "Parameter c");
  d->add_option("--out", svg_out, "SVG file ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*g) return cmd_generate(gen);
    if (*b) return cmd_build(build);
    if (*q) return cmd_query(query);
    if (*be) return cmd_bench(bench);
    if (*d) return cmd_dump_svg(svg_points, svg_c, svg_out);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const io::FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitMismatch;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
