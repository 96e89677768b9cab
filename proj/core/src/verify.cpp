#include "dcolor/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "dcolor/numeric.hpp"
#include "dcolor/recolor.hpp"

namespace dcolor {

std::vector<EdgeViolation> check_legal(const Graph& g, const Coloring& c) {
  if (c.n != g.n())
    throw std::invalid_argument("check_legal: coloring size mismatch");
  std::vector<EdgeViolation> out;
  for (const auto& e : g.edges()) {
    if (c[e.first] == c[e.second])
      out.push_back({e.first, e.second});
  }
  return out;
}

DefectInfo check_defect(const Graph& g, const Coloring& c) {
  if (c.n != g.n())
    throw std::invalid_argument("check_defect: coloring size mismatch");
  DefectInfo info;
  std::vector<Color> seen;
  for (VertexId v = 1; v <= g.n(); ++v) {
    int same = 0;
    for (VertexId u : g.neighbors(v)) {
      if (c[u] == c[v])
        ++same;
    }
    info.defect = std::max(info.defect, same);
    seen.push_back(c[v]);
  }
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  info.palette_used = static_cast<std::int64_t>(seen.size());
  return info;
}

std::vector<MisViolation> check_mis(const Graph& g, const std::vector<char>& member) {
  if (member.size() != static_cast<std::size_t>(g.n()) + 1)
    throw std::invalid_argument("check_mis: member vector size mismatch");
  std::vector<MisViolation> out;
  for (const auto& e : g.edges()) {
    if (member[static_cast<std::size_t>(e.first)] &&
        member[static_cast<std::size_t>(e.second)])
      out.push_back({"adjacent members", e.first, e.second});
  }
  for (VertexId v = 1; v <= g.n(); ++v) {
    if (member[static_cast<std::size_t>(v)])
      continue;
    bool covered = false;
    for (VertexId u : g.neighbors(v)) {
      if (member[static_cast<std::size_t>(u)]) {
        covered = true;
        break;
      }
    }
    if (!covered)
      out.push_back({"uncovered vertex", v, 0});
  }
  return out;
}

namespace {

// Saturating n-choose-k, used only to enforce the enumeration cap.
std::int64_t choose_sat(std::int64_t m, std::int64_t k, std::int64_t cap) {
  if (k < 0 || k > m)
    return 0;
  long double acc = 1.0L;
  for (std::int64_t i = 1; i <= k; ++i) {
    acc = acc * static_cast<long double>(m - k + i) / static_cast<long double>(i);
    if (acc > static_cast<long double>(cap) * 4)
      return cap * 4;
  }
  return static_cast<std::int64_t>(acc);
}

struct CoverFreeScan {
  const std::vector<std::vector<std::int64_t>>* sets = nullptr;
  int A = 0;
  std::size_t target = 0;
  std::vector<int> mark; // multiset union of the chosen sets

  bool contained() const {
    for (std::int64_t e : (*sets)[target]) {
      if (mark[static_cast<std::size_t>(e)] == 0)
        return false;
    }
    return true;
  }

  // True iff some choice of `remaining` further sets covers the target.
  bool covered(std::size_t start, int remaining) {
    if (remaining == 0)
      return contained();
    for (std::size_t j = start; j < sets->size(); ++j) {
      if (j == target)
        continue;
      for (std::int64_t e : (*sets)[j])
        ++mark[static_cast<std::size_t>(e)];
      bool hit = covered(j + 1, remaining - 1);
      for (std::int64_t e : (*sets)[j])
        --mark[static_cast<std::size_t>(e)];
      if (hit)
        return true;
    }
    return false;
  }
};

} // namespace

bool check_cover_free(const std::vector<std::vector<std::int64_t>>& sets, int A) {
  if (A < 1)
    throw std::invalid_argument("check_cover_free: A must be >= 1");
  const std::int64_t cap = 1000000;
  std::int64_t nsets = static_cast<std::int64_t>(sets.size());
  std::int64_t tuples = choose_sat(nsets - 1, A, cap);
  if (nsets > 0 && tuples > cap / nsets) {
    std::ostringstream os;
    os << "check_cover_free: " << nsets << " sets with A=" << A
       << " needs more than " << cap << " tuples";
    throw std::invalid_argument(os.str());
  }
  std::int64_t maxel = 0;
  for (const auto& s : sets) {
    for (std::int64_t e : s) {
      if (e < 0)
        throw std::invalid_argument("check_cover_free: negative element");
      maxel = std::max(maxel, e);
    }
  }
  CoverFreeScan scan;
  scan.sets = &sets;
  scan.A = A;
  scan.mark.assign(static_cast<std::size_t>(maxel) + 1, 0);
  for (scan.target = 0; scan.target < sets.size(); ++scan.target) {
    if (scan.covered(0, A))
      return false;
  }
  return true;
}

bool check_cover_free(const CoverFreeFamily& f, int A) {
  std::vector<std::vector<std::int64_t>> sets;
  sets.reserve(static_cast<std::size_t>(f.set_count));
  for (std::int64_t i = 1; i <= f.set_count; ++i)
    sets.push_back(f.set(i));
  return check_cover_free(sets, A);
}

Coloring greedy_reference_coloring(const Graph& g) {
  Coloring c;
  c.n = g.n();
  c.color.assign(static_cast<std::size_t>(g.n()) + 1, 0);
  Color maxc = 0;
  std::vector<char> used(static_cast<std::size_t>(g.max_degree()) + 2, 0);
  for (VertexId v = 1; v <= g.n(); ++v) {
    for (VertexId u : g.neighbors(v)) {
      Color cu = c.color[static_cast<std::size_t>(u)];
      if (cu >= 1 && cu < static_cast<Color>(used.size()))
        used[static_cast<std::size_t>(cu)] = 1;
    }
    Color pick = 1;
    while (used[static_cast<std::size_t>(pick)])
      ++pick;
    c.color[static_cast<std::size_t>(v)] = pick;
    maxc = std::max(maxc, pick);
    for (VertexId u : g.neighbors(v)) {
      Color cu = c.color[static_cast<std::size_t>(u)];
      if (cu >= 1 && cu < static_cast<Color>(used.size()))
        used[static_cast<std::size_t>(cu)] = 0;
    }
  }
  c.palette = maxc;
  c.defect_bound = 0;
  return c;
}

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char ch : s) {
    switch (ch) {
    case '"': out += "\\\""; break;
    case '\\': out += "\\\\"; break;
    case '\n': out += "\\n"; break;
    case '\t': out += "\\t"; break;
    case '\r': out += "\\r"; break;
    default:
      if (static_cast<unsigned char>(ch) < 0x20) {
        char buf[8];
        std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
        out += buf;
      } else {
        out += ch;
      }
    }
  }
  return out;
}

// Integral values print as integers so reports diff cleanly.
std::string json_number(double v) {
  if (std::floor(v) == v && std::fabs(v) < 9e15) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
    return buf;
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

} // namespace

void BoundReport::add_check(const std::string& tag, double measured, double bound) {
  BoundCheck c;
  c.tag = tag;
  c.measured = measured;
  c.bound = bound;
  c.pass = measured <= bound + 1e-9;
  checks.push_back(c);
}

bool BoundReport::all_pass() const {
  for (const auto& c : checks) {
    if (!c.pass)
      return false;
  }
  return true;
}

std::string BoundReport::to_json() const {
  std::ostringstream os;
  os << "{\"algorithm\":\"" << json_escape(algorithm) << "\""
     << ",\"params\":\"" << json_escape(params) << "\""
     << ",\"n\":" << n
     << ",\"max_degree\":" << max_degree
     << ",\"rounds\":" << rounds
     << ",\"palette\":" << palette
     << ",\"defect\":" << defect
     << ",\"messages\":" << messages
     << ",\"max_bits\":" << max_bits
     << ",\"checks\":[";
  for (std::size_t i = 0; i < checks.size(); ++i) {
    if (i)
      os << ",";
    os << "{\"tag\":\"" << json_escape(checks[i].tag) << "\""
       << ",\"measured\":" << json_number(checks[i].measured)
       << ",\"bound\":" << json_number(checks[i].bound)
       << ",\"pass\":" << (checks[i].pass ? "true" : "false") << "}";
  }
  os << "],\"all_pass\":" << (all_pass() ? "true" : "false") << "}";
  return os.str();
}

namespace {

// Smallest I >= 0 with (q/p^2)^I >= chi, the defective iteration budget.
std::int64_t defective_iteration_bound(std::int64_t chi, std::int64_t p, std::int64_t q) {
  if (chi <= p * p)
    return 0;
  long double ratio = static_cast<long double>(q) / static_cast<long double>(p * p);
  long double cover = 1.0L;
  std::int64_t I = 0;
  while (cover < static_cast<long double>(chi) && I < 512) {
    cover *= ratio;
    ++I;
  }
  return I;
}

} // namespace

std::vector<NamedBound> bound_formulas(const std::string& algorithm, const BoundParams& bp) {
  std::vector<NamedBound> out;
  if (algorithm == "linial") {
    out.push_back({"rounds<=log*(n)+3",
                   static_cast<double>(log_star(bp.n) + 3)});
    auto chain = linial_palette_chain(bp.max_degree, bp.n);
    out.push_back({"palette<=chain_end", static_cast<double>(chain.back())});
    return out;
  }
  if (algorithm == "refine") {
    out.push_back({"rounds<=chi+1", static_cast<double>(bp.chi + 1)});
    out.push_back({"palette<=p^2", static_cast<double>(bp.p * bp.p)});
    out.push_back({"defect<=seed+floor(maxdeg/p)",
                   static_cast<double>(bp.defect_in + bp.max_degree / bp.p)});
    return out;
  }
  if (algorithm == "defective") {
    std::int64_t I = defective_iteration_bound(bp.chi, bp.p, bp.q);
    out.push_back({"palette<=p^2", static_cast<double>(bp.p * bp.p)});
    out.push_back({"iterations<=ceil(log_{q/p^2}(chi))", static_cast<double>(I)});
    out.push_back({"defect<=seed+iters*floor(maxdeg/p)",
                   static_cast<double>(bp.defect_in + I * (bp.max_degree / bp.p))});
    out.push_back({"rounds<=iters*(2q+1)", static_cast<double>(I * (2 * bp.q + 1))});
    return out;
  }
  if (algorithm == "kw") {
    std::int64_t t = bp.max_degree + 1;
    std::int64_t S = ceil_log2_ratio(bp.chi, t);
    out.push_back({"rounds<=(maxdeg+1)*ceil(log2(chi/(maxdeg+1)))",
                   static_cast<double>(t * S)});
    out.push_back({"palette<=maxdeg+1", static_cast<double>(t)});
    return out;
  }
  if (algorithm == "delta") {
    double c = std::max(2.0, std::max(bp.c1, bp.c2));
    double il = bp.max_degree >= 1
                    ? iterated_log_real(bp.depth, static_cast<double>(bp.max_degree))
                    : 0.0;
    double tau = (c + 2.0) * static_cast<double>(bp.max_degree + 1) * std::max(2.0, il);
    out.push_back({"palette<=maxdeg+1", static_cast<double>(bp.max_degree + 1)});
    out.push_back({"rounds<=tau", tau});
    return out;
  }
  if (algorithm == "tradeoff") {
    double kb = 2.2 * static_cast<double>(bp.max_degree) * static_cast<double>(bp.t);
    out.push_back({"palette<=K*maxdeg*t", std::max(1.0, kb)});
    return out;
  }
  if (algorithm == "mis") {
    out.push_back({"rounds<=input_palette", static_cast<double>(bp.chi)});
    out.push_back({"input_palette<=maxdeg+1", static_cast<double>(bp.max_degree + 1)});
    return out;
  }
  throw std::invalid_argument("bound_formulas: unknown algorithm " + algorithm);
}

} // namespace dcolor
