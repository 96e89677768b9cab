// Command-line harness: generate graphs, run the coloring algorithms in the
// simulation engine, verify outputs, and sweep benchmark matrices.
//
// Exit codes: 0 success / all bound checks pass, 1 verification failure or
// runtime error, 2 usage or configuration error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dcolor/coloring.hpp"
#include "dcolor/cover_free.hpp"
#include "dcolor/defective.hpp"
#include "dcolor/delta.hpp"
#include "dcolor/engine.hpp"
#include "dcolor/graph.hpp"
#include "dcolor/kw.hpp"
#include "dcolor/mis.hpp"
#include "dcolor/numeric.hpp"
#include "dcolor/recolor.hpp"
#include "dcolor/refine.hpp"
#include "dcolor/tradeoff.hpp"
#include "dcolor/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", x);
  return buf;
}

std::string json_str(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += ch;
    }
  }
  out += "\"";
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::int64_t parse_int(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw dcolor::GraphError("bad " + what + ": " + s);
  }
  if (pos != s.size()) throw dcolor::GraphError("bad " + what + ": " + s);
  return v;
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw dcolor::GraphError("bad " + what + ": " + s);
  }
  if (pos != s.size()) throw dcolor::GraphError("bad " + what + ": " + s);
  return v;
}

// Graph sources: a "kind:args" spec string (cycle:n, path:n, star:n, grid:n,
// complete:n, gnp:n:prob[:seed], regular:n:d[:seed]) or a path to an
// edge-list file.  Anything containing ':' is treated as a spec.
bool looks_like_spec(const std::string& src) {
  return src.find(':') != std::string::npos;
}

dcolor::GraphSpec parse_spec_string(const std::string& src) {
  auto parts = split(src, ':');
  dcolor::GraphSpec sp;
  sp.kind = dcolor::parse_graph_kind(parts[0]);
  auto want = [&](std::size_t lo, std::size_t hi) {
    if (parts.size() < lo + 1 || parts.size() > hi + 1)
      throw dcolor::GraphError("bad graph spec: " + src);
  };
  switch (sp.kind) {
    case dcolor::GraphKind::Gnp:
      want(2, 3);
      sp.n = static_cast<dcolor::VertexId>(parse_int(parts[1], "graph size"));
      sp.edge_prob = parse_double(parts[2], "edge probability");
      if (parts.size() == 4) sp.seed = static_cast<std::uint64_t>(parse_int(parts[3], "seed"));
      break;
    case dcolor::GraphKind::Regular:
      want(2, 3);
      sp.n = static_cast<dcolor::VertexId>(parse_int(parts[1], "graph size"));
      sp.degree = static_cast<int>(parse_int(parts[2], "degree"));
      if (parts.size() == 4) sp.seed = static_cast<std::uint64_t>(parse_int(parts[3], "seed"));
      break;
    default:
      want(1, 1);
      sp.n = static_cast<dcolor::VertexId>(parse_int(parts[1], "graph size"));
      break;
  }
  return sp;
}

dcolor::Graph resolve_graph(const std::string& src, std::optional<std::uint64_t> seed) {
  if (looks_like_spec(src)) {
    dcolor::GraphSpec sp = parse_spec_string(src);
    if (seed) sp.seed = *seed;
    return dcolor::generate(sp);
  }
  return dcolor::load_graph_file(src);
}

struct AlgoParams {
  std::optional<std::int64_t> p, q, t;
  std::optional<int> depth;
  double eps = 0.25;
};

// Everything a run or bench cell produces.  `report` carries the bound
// checks that decide pass/fail; `total` sums every engine phase the
// algorithm needed (seed colorings included).
struct AlgoOutcome {
  dcolor::BoundReport report;
  dcolor::Coloring coloring;
  std::vector<char> mis; // nonempty only for algo "mis"
  dcolor::RunResult total;
  std::string stats_json = "{}";
};

dcolor::RunResult add_runs(const dcolor::RunResult& a, const dcolor::RunResult& b) {
  dcolor::RunResult out;
  out.rounds_used = a.rounds_used + b.rounds_used;
  out.messages_sent = a.messages_sent + b.messages_sent;
  out.max_message_bits = std::max(a.max_message_bits, b.max_message_bits);
  out.halted = a.halted && b.halted;
  out.outputs = b.outputs;
  return out;
}

std::int64_t require(const std::optional<std::int64_t>& v, const char* flag,
                     const char* algo) {
  if (!v)
    throw UsageError(std::string(flag) + " is required for --algo " + algo);
  return *v;
}

AlgoOutcome run_linial(const dcolor::Graph& g) {
  AlgoOutcome out;
  dcolor::LinialResult lr = dcolor::linial_coloring(g);
  dcolor::BoundReport& r = out.report;
  r.algorithm = "linial";
  r.n = g.n();
  r.max_degree = g.max_degree();
  r.rounds = lr.run.rounds_used;
  r.palette = lr.coloring.palette;
  r.defect = dcolor::check_defect(g, lr.coloring).defect;
  r.messages = lr.run.messages_sent;
  r.max_bits = lr.run.max_message_bits;
  r.add_check("monochromatic_edges==0",
              static_cast<double>(dcolor::check_legal(g, lr.coloring).size()), 0.0);
  dcolor::BoundParams bp;
  bp.n = g.n();
  bp.max_degree = g.max_degree();
  for (const auto& b : dcolor::bound_formulas("linial", bp)) {
    double measured = b.tag == "palette<=chain_end" ? static_cast<double>(r.palette)
                                                    : static_cast<double>(r.rounds);
    r.add_check(b.tag, measured, b.value);
  }
  std::ostringstream st;
  st << "{\"iterations\":" << lr.iterations << ",\"c\":" << fmt_double(lr.c) << "}";
  out.stats_json = st.str();
  out.total = lr.run;
  out.coloring = std::move(lr.coloring);
  return out;
}

AlgoOutcome run_refine(const dcolor::Graph& g, const AlgoParams& ap) {
  std::int64_t p = require(ap.p, "--p", "refine");
  dcolor::Coloring seed = dcolor::greedy_reference_coloring(g);
  dcolor::RefineResult rr = dcolor::refine(g, seed, static_cast<int>(p));
  AlgoOutcome out;
  dcolor::BoundReport& r = out.report;
  r.algorithm = "refine";
  r.params = "p=" + std::to_string(p) + ";chi=" + std::to_string(seed.palette) +
             ";seed=greedy";
  r.n = g.n();
  r.max_degree = g.max_degree();
  r.rounds = rr.run.rounds_used;
  r.palette = rr.coloring.palette;
  r.defect = dcolor::check_defect(g, rr.coloring).defect;
  r.messages = rr.run.messages_sent;
  r.max_bits = rr.run.max_message_bits;
  dcolor::BoundParams bp;
  bp.n = g.n();
  bp.max_degree = g.max_degree();
  bp.chi = seed.palette;
  bp.p = p;
  bp.defect_in = seed.defect_bound;
  for (const auto& b : dcolor::bound_formulas("refine", bp)) {
    double measured = static_cast<double>(r.rounds);
    if (b.tag == "palette<=p^2") measured = static_cast<double>(r.palette);
    if (b.tag == "defect<=seed+floor(maxdeg/p)") measured = static_cast<double>(r.defect);
    r.add_check(b.tag, measured, b.value);
  }
  out.total = rr.run;
  out.coloring = std::move(rr.coloring);
  return out;
}

AlgoOutcome run_defective(const dcolor::Graph& g, const AlgoParams& ap) {
  std::int64_t p = require(ap.p, "--p", "defective");
  std::int64_t q = require(ap.q, "--q", "defective");
  dcolor::Coloring seed = dcolor::greedy_reference_coloring(g);
  dcolor::DefectiveResult dr = dcolor::defective_color(g, p, q, seed);
  AlgoOutcome out;
  dcolor::BoundReport& r = out.report;
  r.algorithm = "defective";
  r.params = "p=" + std::to_string(p) + ";q=" + std::to_string(q) +
             ";chi=" + std::to_string(seed.palette) + ";seed=greedy";
  r.n = g.n();
  r.max_degree = g.max_degree();
  r.rounds = dr.run.rounds_used;
  r.palette = dr.coloring.palette;
  r.defect = dcolor::check_defect(g, dr.coloring).defect;
  r.messages = dr.run.messages_sent;
  r.max_bits = dr.run.max_message_bits;
  dcolor::BoundParams bp;
  bp.n = g.n();
  bp.max_degree = g.max_degree();
  bp.chi = seed.palette;
  bp.p = p;
  bp.q = q;
  bp.defect_in = seed.defect_bound;
  const auto iters = static_cast<double>(dr.plan.iters.size());
  for (const auto& b : dcolor::bound_formulas("defective", bp)) {
    double measured = static_cast<double>(r.rounds);
    if (b.tag == "palette<=p^2") measured = static_cast<double>(r.palette);
    if (b.tag == "iterations<=ceil(log_{q/p^2}(chi))") measured = iters;
    if (b.tag == "defect<=seed+iters*floor(maxdeg/p)") measured = static_cast<double>(r.defect);
    r.add_check(b.tag, measured, b.value);
  }
  std::ostringstream st;
  st << "{\"iterations\":" << dr.plan.iters.size()
     << ",\"final_palette\":" << dr.plan.final_palette << "}";
  out.stats_json = st.str();
  out.total = dr.run;
  out.coloring = std::move(dr.coloring);
  return out;
}

AlgoOutcome run_kw(const dcolor::Graph& g) {
  dcolor::LinialResult lr = dcolor::linial_coloring(g);
  dcolor::ReduceResult kr = dcolor::kw_reduce(g, lr.coloring, g.max_degree());
  AlgoOutcome out;
  dcolor::BoundReport& r = out.report;
  r.algorithm = "kw";
  r.params = "m=" + std::to_string(lr.coloring.palette) + ";seed=linial";
  r.n = g.n();
  r.max_degree = g.max_degree();
  r.rounds = kr.run.rounds_used;
  r.palette = kr.coloring.palette;
  r.defect = dcolor::check_defect(g, kr.coloring).defect;
  r.messages = kr.run.messages_sent;
  r.max_bits = kr.run.max_message_bits;
  r.add_check("monochromatic_edges==0",
              static_cast<double>(dcolor::check_legal(g, kr.coloring).size()), 0.0);
  dcolor::BoundParams bp;
  bp.n = g.n();
  bp.max_degree = g.max_degree();
  bp.chi = lr.coloring.palette;
  for (const auto& b : dcolor::bound_formulas("kw", bp)) {
    double measured = b.tag == "palette<=maxdeg+1" ? static_cast<double>(r.palette)
                                                   : static_cast<double>(r.rounds);
    r.add_check(b.tag, measured, b.value);
  }
  std::ostringstream st;
  st << "{\"stages\":" << kr.stages << ",\"seed_palette\":" << lr.coloring.palette
     << ",\"seed_rounds\":" << lr.run.rounds_used << "}";
  out.stats_json = st.str();
  out.total = add_runs(lr.run, kr.run);
  out.coloring = std::move(kr.coloring);
  return out;
}

std::string delta_stats_json(const dcolor::DeltaStats& st, const dcolor::LinialResult& lin) {
  std::ostringstream os;
  os << "{\"degenerate\":" << (st.degenerate ? "true" : "false")
     << ",\"k\":" << st.k << ",\"q\":" << st.q << ",\"d\":" << st.d
     << ",\"levels\":" << st.levels
     << ",\"planned_rounds\":" << st.planned_rounds
     << ",\"planned_palette\":" << st.planned_palette
     << ",\"seed_palette\":" << lin.coloring.palette
     << ",\"seed_rounds\":" << lin.run.rounds_used << "}";
  return os.str();
}

AlgoOutcome run_delta(const dcolor::Graph& g, const AlgoParams& ap) {
  AlgoOutcome out;
  if (!ap.depth) {
    dcolor::DeltaPlusOneResult res = dcolor::color_delta_plus_one(g, ap.eps);
    out.report = res.report;
    out.stats_json = delta_stats_json(res.stats, res.linial);
    out.total = res.run;
    out.coloring = std::move(res.coloring);
    return out;
  }
  // Explicit recursion depth: same composition, depth from the flag.
  dcolor::LinialResult lin = dcolor::linial_coloring(g);
  dcolor::DeltaResult dr =
      dcolor::delta_color(g, g.max_degree(), *ap.depth, lin.coloring, ap.eps);
  out.total = add_runs(lin.run, dr.run);
  dcolor::BoundReport& r = out.report;
  r.algorithm = "delta";
  r.params = "eps=" + fmt_double(ap.eps) + ";depth=" + std::to_string(*ap.depth);
  r.n = g.n();
  r.max_degree = g.max_degree();
  r.rounds = out.total.rounds_used;
  r.palette = dr.coloring.palette;
  r.defect = dcolor::check_defect(g, dr.coloring).defect;
  r.messages = out.total.messages_sent;
  r.max_bits = out.total.max_message_bits;
  r.add_check("monochromatic_edges==0",
              static_cast<double>(dcolor::check_legal(g, dr.coloring).size()), 0.0);
  dcolor::BoundParams bp;
  bp.n = g.n();
  bp.max_degree = g.max_degree();
  bp.depth = *ap.depth;
  for (const auto& b : dcolor::bound_formulas("delta", bp)) {
    double measured = b.tag == "palette<=maxdeg+1" ? static_cast<double>(r.palette)
                                                   : static_cast<double>(r.rounds);
    r.add_check(b.tag, measured, b.value);
  }
  out.stats_json = delta_stats_json(dr.stats, lin);
  out.coloring = std::move(dr.coloring);
  return out;
}

AlgoOutcome run_tradeoff(const dcolor::Graph& g, const AlgoParams& ap) {
  std::int64_t t = require(ap.t, "--t", "tradeoff");
  dcolor::TradeoffResult res = dcolor::tradeoff_color(g, t, ap.eps);
  AlgoOutcome out;
  out.report = res.report;
  std::ostringstream st;
  st << "{\"branch\":" << res.stats.branch << ",\"p\":" << res.stats.p
     << ",\"q\":" << res.stats.q << ",\"levels_full\":" << res.stats.levels_full
     << ",\"p_prime\":" << res.stats.p_prime
     << ",\"lambda_z\":" << res.stats.lambda_z
     << ",\"classes\":" << res.stats.classes
     << ",\"planned_rounds\":" << res.stats.planned_rounds
     << ",\"planned_palette\":" << res.stats.planned_palette << "}";
  out.stats_json = st.str();
  out.total = res.run;
  out.coloring = std::move(res.coloring);
  return out;
}

AlgoOutcome run_mis(const dcolor::Graph& g, const AlgoParams& ap) {
  dcolor::DeltaPlusOneResult seed = dcolor::color_delta_plus_one(g, ap.eps);
  dcolor::MisRunResult mr = dcolor::mis_from_coloring(g, seed.coloring);
  AlgoOutcome out;
  dcolor::BoundReport& r = out.report;
  r.algorithm = "mis";
  r.params = "input_palette=" + std::to_string(seed.coloring.palette) + ";seed=delta";
  r.n = g.n();
  r.max_degree = g.max_degree();
  r.rounds = mr.run.rounds_used;
  r.palette = seed.coloring.palette;
  r.defect = 0;
  r.messages = mr.run.messages_sent;
  r.max_bits = mr.run.max_message_bits;
  r.add_check("mis_violations==0",
              static_cast<double>(dcolor::check_mis(g, mr.member).size()), 0.0);
  dcolor::BoundParams bp;
  bp.n = g.n();
  bp.max_degree = g.max_degree();
  bp.chi = seed.coloring.palette;
  for (const auto& b : dcolor::bound_formulas("mis", bp)) {
    double measured = b.tag == "rounds<=input_palette"
                          ? static_cast<double>(r.rounds)
                          : static_cast<double>(seed.coloring.palette);
    r.add_check(b.tag, measured, b.value);
  }
  std::size_t members = 0;
  for (std::size_t v = 1; v < mr.member.size(); ++v) members += mr.member[v] ? 1 : 0;
  std::ostringstream st;
  st << "{\"members\":" << members << ",\"input_palette\":" << seed.coloring.palette
     << ",\"input_rounds\":" << seed.run.rounds_used << "}";
  out.stats_json = st.str();
  out.total = add_runs(seed.run, mr.run);
  out.coloring = std::move(seed.coloring);
  out.mis = std::move(mr.member);
  return out;
}

AlgoOutcome run_algorithm(const dcolor::Graph& g, const std::string& algo,
                          const AlgoParams& ap) {
  if (algo == "linial") return run_linial(g);
  if (algo == "refine") return run_refine(g, ap);
  if (algo == "defective") return run_defective(g, ap);
  if (algo == "kw") return run_kw(g);
  if (algo == "delta") return run_delta(g, ap);
  if (algo == "tradeoff") return run_tradeoff(g, ap);
  if (algo == "mis") return run_mis(g, ap);
  throw UsageError("unknown algorithm: " + algo);
}

void save_mis_file(const std::vector<char>& member, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "vertex,member\n";
  for (std::size_t v = 1; v < member.size(); ++v)
    out << v << "," << (member[v] ? 1 : 0) << "\n";
  if (!out.good()) throw std::runtime_error("write failed: " + path);
}

std::vector<char> load_mis_file(const std::string& path, dcolor::VertexId n) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::string line;
  if (!std::getline(in, line) || line != "vertex,member")
    throw std::runtime_error(path + ": expected header vertex,member");
  std::vector<char> member(static_cast<std::size_t>(n) + 1, 0);
  dcolor::VertexId expect = 1;
  while (std::getline(in, line)) {
    auto parts = split(line, ',');
    if (parts.size() != 2) throw std::runtime_error(path + ": bad row: " + line);
    dcolor::VertexId v = static_cast<dcolor::VertexId>(parse_int(parts[0], "vertex"));
    if (v != expect || v > n) throw std::runtime_error(path + ": bad vertex id: " + line);
    member[v] = parse_int(parts[1], "member") != 0;
    ++expect;
  }
  if (expect != n + 1) throw std::runtime_error(path + ": expected " +
                                                std::to_string(n) + " rows");
  return member;
}

// ---- subcommand state ----

struct GenArgs {
  std::string type;
  std::int64_t n = 0;
  int degree = 0;
  double prob = 0.0;
  std::uint64_t seed = 0;
  std::string out;
};

struct RunArgs {
  std::string config_path;
  std::string graph;
  std::string algo;
  AlgoParams params;
  std::optional<std::uint64_t> seed;
  std::string trace;
  int max_rounds = 0; // 0 = engine default
  std::string out;
  std::string order = "forward";
};

struct VerifyArgs {
  std::string graph;
  std::string coloring;
  std::string mis;
  std::optional<std::uint64_t> seed;
  std::int64_t palette_bound = 0; // 0 = no bound
  int defect_bound = -1;          // -1 = require legal
};

struct BenchArgs {
  std::string config_path;
  std::string graph;
  std::string algo;
  AlgoParams params;
  std::optional<std::uint64_t> seed;
  std::string out;
};

std::string default_out_dir() {
  const char* env = std::getenv("DCOLOR_OUT");
  return env && *env ? env : ".";
}

int cmd_gen(const GenArgs& a) {
  dcolor::GraphSpec sp;
  sp.kind = dcolor::parse_graph_kind(a.type);
  sp.n = static_cast<dcolor::VertexId>(a.n);
  sp.degree = a.degree;
  sp.edge_prob = a.prob;
  sp.seed = a.seed;
  dcolor::Graph g = dcolor::generate(sp);
  if (a.out.empty()) {
    dcolor::save_graph(g, std::cout);
  } else {
    dcolor::save_graph_file(g, a.out);
    std::cout << a.out << ": n=" << g.n() << " m=" << g.m()
              << " max_degree=" << g.max_degree() << "\n";
  }
  return 0;
}

void write_metrics(const std::string& path, const std::string& graph_src,
                   const dcolor::Graph& g, const RunArgs& a, const AlgoOutcome& res) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "{\n";
  out << "  \"command\": \"run\",\n";
  out << "  \"graph\": {\"source\": " << json_str(graph_src) << ", \"n\": " << g.n()
      << ", \"m\": " << g.m() << ", \"max_degree\": " << g.max_degree() << "},\n";
  out << "  \"algorithm\": " << json_str(a.algo) << ",\n";
  out << "  \"params\": " << json_str(res.report.params) << ",\n";
  out << "  \"run\": {\"rounds\": " << res.total.rounds_used
      << ", \"messages\": " << res.total.messages_sent
      << ", \"max_bits\": " << res.total.max_message_bits
      << ", \"halted\": " << (res.total.halted ? "true" : "false") << "},\n";
  out << "  \"stats\": " << res.stats_json << ",\n";
  out << "  \"report\": " << res.report.to_json() << "\n";
  out << "}\n";
  if (!out.good()) throw std::runtime_error("write failed: " + path);
}

void write_failure(const std::string& dir, const std::string& type,
                   const std::string& what) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  std::ofstream out(dir + "/metrics.json", std::ios::binary);
  if (!out) return; // best effort; the exit code carries the failure
  out << "{\n  \"error\": {\"type\": " << json_str(type) << ", \"what\": "
      << json_str(what) << "}\n}\n";
}

void apply_run_config(RunArgs& a, const CLI::App* cmd) {
  if (a.config_path.empty()) return;
  std::ifstream in(a.config_path);
  if (!in) throw UsageError("cannot read config: " + a.config_path);
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(a.config_path + ": " + e.what());
  }
  // Flags given on the command line override config file values.
  auto unset = [&](const char* flag) { return cmd->count(flag) == 0; };
  if (cfg.contains("graph") && unset("--graph")) a.graph = cfg["graph"].get<std::string>();
  if (cfg.contains("algo") && unset("--algo")) a.algo = cfg["algo"].get<std::string>();
  if (cfg.contains("p") && unset("--p")) a.params.p = cfg["p"].get<std::int64_t>();
  if (cfg.contains("q") && unset("--q")) a.params.q = cfg["q"].get<std::int64_t>();
  if (cfg.contains("t") && unset("--t")) a.params.t = cfg["t"].get<std::int64_t>();
  if (cfg.contains("eps") && unset("--eps")) a.params.eps = cfg["eps"].get<double>();
  if (cfg.contains("depth") && unset("--depth")) a.params.depth = cfg["depth"].get<int>();
  if (cfg.contains("seed") && unset("--seed")) a.seed = cfg["seed"].get<std::uint64_t>();
  if (cfg.contains("trace") && unset("--trace")) a.trace = cfg["trace"].get<std::string>();
  if (cfg.contains("max_rounds") && unset("--max-rounds"))
    a.max_rounds = cfg["max_rounds"].get<int>();
  if (cfg.contains("out") && unset("--out")) a.out = cfg["out"].get<std::string>();
  if (cfg.contains("order") && unset("--order")) a.order = cfg["order"].get<std::string>();
}

int cmd_run(RunArgs& a, const CLI::App* cmd) {
  apply_run_config(a, cmd);
  if (a.graph.empty()) throw UsageError("--graph is required");
  if (a.algo.empty()) throw UsageError("--algo is required");
  if (a.order != "forward" && a.order != "reverse")
    throw UsageError("--order must be forward or reverse");

  dcolor::Graph g = resolve_graph(a.graph, a.seed);

  dcolor::RunConfig& defaults = dcolor::engine_defaults();
  defaults.order = a.order == "reverse" ? dcolor::StepOrder::Reverse
                                        : dcolor::StepOrder::Forward;
  if (a.max_rounds > 0) defaults.max_rounds = a.max_rounds;
  std::ofstream trace_out;
  if (!a.trace.empty()) {
    trace_out.open(a.trace, std::ios::binary);
    if (!trace_out) throw UsageError("cannot write trace: " + a.trace);
    defaults.trace = &trace_out;
  }

  const std::string dir = a.out.empty() ? default_out_dir() : a.out;
  fs::create_directories(dir);

  AlgoOutcome res;
  try {
    res = run_algorithm(g, a.algo, a.params);
  } catch (const dcolor::EngineError& e) {
    write_failure(dir, "EngineError", e.what());
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const UsageError&) {
    throw;
  } catch (const std::logic_error&) {
    throw; // usage and internal-contract errors keep their exit code
  } catch (const std::runtime_error& e) {
    write_failure(dir, "RuntimeError", e.what());
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  defaults.trace = nullptr;

  dcolor::save_coloring_file(res.coloring, dir + "/coloring.csv");
  if (!res.mis.empty()) save_mis_file(res.mis, dir + "/mis.csv");
  write_metrics(dir + "/metrics.json", a.graph, g, a, res);

  bool pass = res.report.all_pass();
  std::cout << a.algo << " n=" << g.n() << " max_degree=" << g.max_degree()
            << " rounds=" << res.report.rounds << " palette=" << res.report.palette
            << " defect=" << res.report.defect << " pass=" << (pass ? 1 : 0) << "\n";
  return pass ? 0 : 1;
}

int cmd_verify(const VerifyArgs& a) {
  dcolor::Graph g = resolve_graph(a.graph, a.seed);
  dcolor::Coloring c = dcolor::load_coloring_file(a.coloring);
  if (c.n != g.n())
    throw UsageError("coloring has " + std::to_string(c.n) + " vertices, graph has " +
                     std::to_string(g.n()));
  auto violations = dcolor::check_legal(g, c);
  auto info = dcolor::check_defect(g, c);
  bool ok = true;
  std::ostringstream body;
  body << "{\n  \"n\": " << g.n() << ",\n  \"max_degree\": " << g.max_degree()
       << ",\n  \"palette\": " << c.palette << ",\n  \"palette_used\": "
       << info.palette_used << ",\n  \"defect\": " << info.defect
       << ",\n  \"monochromatic_edges\": " << violations.size();
  if (!violations.empty())
    body << ",\n  \"first_violation\": [" << violations.front().u << ", "
         << violations.front().v << "]";
  if (a.defect_bound >= 0) {
    if (info.defect > a.defect_bound) ok = false;
  } else if (!violations.empty()) {
    ok = false;
  }
  if (a.palette_bound > 0 && c.palette > a.palette_bound) ok = false;
  if (!a.mis.empty()) {
    auto member = load_mis_file(a.mis, g.n());
    auto mis_violations = dcolor::check_mis(g, member);
    body << ",\n  \"mis_violations\": " << mis_violations.size();
    if (!mis_violations.empty()) {
      const auto& v = mis_violations.front();
      body << ",\n  \"first_mis_violation\": " << json_str(v.what);
      ok = ok && false;
    }
  }
  body << ",\n  \"pass\": " << (ok ? "true" : "false") << "\n}\n";
  std::cout << body.str();
  return ok ? 0 : 1;
}

struct BenchRow {
  std::string key;
  std::string line;
};

int cmd_bench(BenchArgs& a, const CLI::App* cmd) {
  std::vector<json> cells;
  if (!a.config_path.empty()) {
    std::ifstream in(a.config_path);
    if (!in) throw UsageError("cannot read config: " + a.config_path);
    json cfg;
    try {
      cfg = json::parse(in);
    } catch (const json::exception& e) {
      throw UsageError(a.config_path + ": " + e.what());
    }
    if (!cfg.contains("cells") || !cfg["cells"].is_array())
      throw UsageError(a.config_path + ": expected top-level \"cells\" array");
    for (const auto& cell : cfg["cells"]) cells.push_back(cell);
  } else {
    if (a.graph.empty() || a.algo.empty())
      throw UsageError("bench needs --config, or --graph and --algo for a single cell");
    cells.push_back(json::object());
  }

  auto set = [&](const char* flag) { return cmd->count(flag) > 0; };
  std::vector<BenchRow> rows;
  bool all_pass = true;
  for (json cell : cells) {
    // Command-line flags override the corresponding field in every cell.
    if (set("--graph")) cell["graph"] = a.graph;
    if (set("--algo")) cell["algo"] = a.algo;
    if (set("--p")) cell["p"] = *a.params.p;
    if (set("--q")) cell["q"] = *a.params.q;
    if (set("--t")) cell["t"] = *a.params.t;
    if (set("--eps")) cell["eps"] = a.params.eps;
    if (set("--depth")) cell["depth"] = *a.params.depth;
    if (set("--seed")) cell["seed"] = *a.seed;

    std::string graph_src = cell.value("graph", std::string());
    std::string algo = cell.value("algo", std::string());
    if (graph_src.empty() || algo.empty())
      throw UsageError("bench cell missing graph or algo: " + cell.dump());
    AlgoParams ap;
    if (cell.contains("p")) ap.p = cell["p"].get<std::int64_t>();
    if (cell.contains("q")) ap.q = cell["q"].get<std::int64_t>();
    if (cell.contains("t")) ap.t = cell["t"].get<std::int64_t>();
    if (cell.contains("eps")) ap.eps = cell["eps"].get<double>();
    if (cell.contains("depth")) ap.depth = cell["depth"].get<int>();
    std::optional<std::uint64_t> seed;
    if (cell.contains("seed")) seed = cell["seed"].get<std::uint64_t>();

    BenchRow row;
    try {
      dcolor::Graph g = resolve_graph(graph_src, seed);
      AlgoOutcome res = run_algorithm(g, algo, ap);
      const auto& r = res.report;
      bool pass = r.all_pass();
      all_pass = all_pass && pass;
      char num[32];
      std::snprintf(num, sizeof(num), "%012lld|%06d|", static_cast<long long>(r.n),
                    r.max_degree);
      std::ostringstream key, line;
      key << num << algo << "|" << r.params;
      line << r.n << "," << r.max_degree << "," << algo << "," << r.params << ","
           << r.rounds << "," << r.palette << "," << r.defect << "," << r.messages
           << "," << r.max_bits << "," << (pass ? 1 : 0);
      row = {key.str(), line.str()};
    } catch (const std::exception& e) {
      // Per-cell failure: the row records the cell and pass=0, the sweep
      // continues.
      all_pass = false;
      std::ostringstream key, line;
      key << "000000000000|000000|" << algo << "|error";
      line << "0,0," << algo << ",error,0,0,0,0,0,0";
      row = {key.str(), line.str()};
      std::cerr << "cell " << cell.dump() << ": " << e.what() << "\n";
    }
    rows.push_back(std::move(row));
  }

  std::stable_sort(rows.begin(), rows.end(),
                   [](const BenchRow& x, const BenchRow& y) { return x.key < y.key; });
  std::ostringstream csv;
  csv << "n,max_degree,algorithm,params,rounds,palette,defect,messages,max_bits,pass\n";
  for (const auto& row : rows) csv << row.line << "\n";

  if (a.out.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(a.out, std::ios::binary);
    if (!out) throw UsageError("cannot write " + a.out);
    out << csv.str();
    if (!out.good()) throw std::runtime_error("write failed: " + a.out);
  }
  return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed coloring toolbox: generate graphs, run the "
               "round-synchronous coloring algorithms, verify outputs, sweep "
               "benchmark matrices."};
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* cgen = app.add_subcommand("gen", "Generate a graph edge list");
  cgen->add_option("--type", gen.type,
                   "cycle | path | star | grid | complete | gnp | regular")->required();
  cgen->add_option("--n", gen.n, "vertex count")->required();
  cgen->add_option("--d", gen.degree, "degree (regular)");
  cgen->add_option("--prob", gen.prob, "edge probability (gnp)");
  cgen->add_option("--seed", gen.seed, "generator seed (gnp, regular)");
  cgen->add_option("--out", gen.out, "output file (default stdout)");

  RunArgs run;
  CLI::App* crun = app.add_subcommand("run", "Run one algorithm and verify its bounds");
  crun->add_option("--config", run.config_path, "JSON config; flags override its values");
  crun->add_option("--graph", run.graph, "edge-list file or spec like cycle:64, "
                   "regular:1024:8:7, gnp:256:0.05:3");
  crun->add_option("--algo", run.algo,
                   "linial | refine | defective | kw | delta | tradeoff | mis");
  crun->add_option("--p", run.params.p, "refinement arity (refine, defective)");
  crun->add_option("--q", run.params.q, "set width (defective)");
  crun->add_option("--t", run.params.t, "tradeoff parameter");
  crun->add_option("--eps", run.params.eps, "recursion exponent in (0,1), default 0.25");
  crun->add_option("--depth", run.params.depth, "recursion depth override (delta)");
  crun->add_option("--seed", run.seed, "graph seed override for spec sources");
  crun->add_option("--trace", run.trace, "write engine trace CSV here");
  crun->add_option("--max-rounds", run.max_rounds, "engine round cap");
  crun->add_option("--out", run.out, "output directory (default $DCOLOR_OUT or .)");
  crun->add_option("--order", run.order, "within-round step order: forward | reverse");

  VerifyArgs ver;
  CLI::App* cver = app.add_subcommand("verify", "Check a coloring or MIS file");
  cver->add_option("--graph", ver.graph, "edge-list file or spec")->required();
  cver->add_option("--coloring", ver.coloring, "coloring CSV")->required();
  cver->add_option("--mis", ver.mis, "membership CSV to check against the graph");
  cver->add_option("--seed", ver.seed, "graph seed override for spec sources");
  cver->add_option("--palette-bound", ver.palette_bound, "fail if palette exceeds this");
  cver->add_option("--defect-bound", ver.defect_bound,
                   "allow this defect instead of requiring a legal coloring");

  BenchArgs bench;
  CLI::App* cbench = app.add_subcommand("bench", "Run a matrix of cells, emit CSV");
  cbench->add_option("--config", bench.config_path, "JSON config with a cells array");
  cbench->add_option("--graph", bench.graph, "graph override for every cell");
  cbench->add_option("--algo", bench.algo, "algorithm override for every cell");
  cbench->add_option("--p", bench.params.p, "p override");
  cbench->add_option("--q", bench.params.q, "q override");
  cbench->add_option("--t", bench.params.t, "t override");
  cbench->add_option("--eps", bench.params.eps, "eps override");
  cbench->add_option("--depth", bench.params.depth, "depth override");
  cbench->add_option("--seed", bench.seed, "seed override");
  cbench->add_option("--out", bench.out, "output CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (cgen->parsed()) return cmd_gen(gen);
    if (crun->parsed()) return cmd_run(run, crun);
    if (cver->parsed()) return cmd_verify(ver);
    if (cbench->parsed()) return cmd_bench(bench, cbench);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const dcolor::GraphError& e) {
    std::cerr << "graph error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
