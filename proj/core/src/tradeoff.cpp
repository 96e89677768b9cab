#include "dcolor/tradeoff.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "dcolor/numeric.hpp"
#include "pipeline.hpp"

namespace dcolor {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::int64_t floor_pow(double base, double exp) {
  return static_cast<std::int64_t>(std::floor(std::pow(base, exp) + 1e-9));
}

} // namespace

TradeoffResult tradeoff_color(const Graph& g, std::int64_t t, double eps) {
  if (eps <= 0.0 || eps >= 1.0)
    throw std::invalid_argument("tradeoff_color: eps must lie in (0,1)");
  const int maxdeg = g.max_degree();

  TradeoffResult out;
  out.linial = linial_coloring(g);
  pipeline::OpProgram P;
  TradeoffStats& st = out.stats;

  if (maxdeg == 0) {
    pipeline::Op op;
    op.kind = pipeline::Op::Kind::ResultFromLambda;
    P.ops.push_back(op);
    P.out_palette = 1; // edgeless: the initial coloring is already all ones
    st.branch = 0;
    st.classes = 1;
  } else {
    const std::int64_t tmax = floor_pow(maxdeg, 1.0 - eps);
    if (t < 2 || t > tmax)
      throw std::invalid_argument("tradeoff_color: t=" + std::to_string(t) +
                                  " outside 2.." + std::to_string(tmax));
    const std::int64_t chi0 = out.linial.coloring.palette;
    const std::int64_t t4 = floor_pow(maxdeg, 0.25);
    const double narrow = std::min(static_cast<double>(t),
                                   static_cast<double>(maxdeg) / static_cast<double>(t));
    const std::int64_t p_raw =
        static_cast<std::int64_t>(std::floor(std::cbrt(narrow) + 1e-9));
    // On the boundary t == floor(maxdeg^(1/4)) the nested branch only
    // applies when it yields a usable split width.
    const bool small_t = t < t4 || (t == t4 && p_raw < 2);

    int n_tr = 0;
    if (small_t) {
      st.branch = 1;
      st.p = t;
      st.q = floor_pow(maxdeg, 0.75);
      if (st.q <= st.p * st.p)
        throw std::logic_error("tradeoff_color: wide split width not above p^2");
      pipeline::append_def_level(P, chi0, st.p, st.q, /*seed_slot=*/-1, chi0);
      n_tr = 1;
    } else {
      st.branch = 2;
      if (p_raw < 2) {
        // Degenerate cube root; fall back to the smallest working split and
        // widen the window so the plan stays valid.
        st.p = 2;
        st.q = std::max(std::min<std::int64_t>(t, maxdeg / t), 2 * st.p * st.p);
      } else {
        st.p = p_raw;
        st.q = std::min<std::int64_t>(t, maxdeg / t);
      }
      if (st.q <= st.p * st.p)
        throw std::logic_error("tradeoff_color: nested split width not above p^2");
      std::int64_t pw = st.p;
      int L = 0;
      while (pw <= t) {
        ++L;
        pw *= st.p;
      }
      st.levels_full = L;
      for (int l = 0; l < L; ++l)
        pipeline::append_def_level(P, chi0, st.p, st.q, /*seed_slot=*/-1, chi0);
      std::int64_t pL = 1;
      for (int l = 0; l < L; ++l)
        pL *= st.p;
      st.p_prime = (t + pL - 1) / pL;
      if (st.p_prime >= 2) {
        pipeline::append_def_level(P, chi0, st.p_prime, st.q, /*seed_slot=*/-1, chi0);
      } else {
        // The residual width is 1: one more split pass seeded by the class
        // color just built collapses each class to a single color.
        pipeline::append_def_level(P, st.p * st.p, 1, st.q,
                                   /*seed_slot=*/L - 1, st.p * st.p);
      }
      n_tr = L + 1;
    }

    st.lambda_z = std::min<std::int64_t>(
        maxdeg, std::max<std::int64_t>(1, (2 * static_cast<std::int64_t>(maxdeg) + t - 1) / t));
    const int iz = std::max(1, log_star(st.lambda_z));
    pipeline::compile_delta_level(P, st.lambda_z, iz, chi0, eps);

    pipeline::Op sh;
    sh.kind = pipeline::Op::Kind::Shift;
    sh.stride = st.lambda_z + 1;
    sh.slot_begin = 0;
    sh.slot_count = n_tr;
    P.ops.push_back(sh);

    std::int64_t classes = 1;
    for (int s = 0; s < n_tr; ++s)
      classes *= P.slot_radix[static_cast<std::size_t>(s)];
    st.classes = classes;
    P.out_palette = classes * (st.lambda_z + 1);
  }

  P.finish();
  st.planned_rounds = P.total_rounds;
  st.planned_palette = P.out_palette;

  RunResult pr = pipeline::run_pipeline(g, P, out.linial.coloring);
  if (pr.rounds_used != P.total_rounds)
    throw std::logic_error("tradeoff_color: schedule mismatch, planned " +
                           std::to_string(P.total_rounds) + " rounds, ran " +
                           std::to_string(pr.rounds_used));
  out.run = pipeline::combine_runs(out.linial.run, pr);

  out.coloring.n = g.n();
  out.coloring.color.assign(static_cast<std::size_t>(g.n()) + 1, 0);
  for (VertexId v = 1; v <= g.n(); ++v)
    out.coloring[v] = pr.outputs[static_cast<std::size_t>(v)];
  out.coloring.palette = P.out_palette;
  out.coloring.defect_bound = 0;

  BoundReport& r = out.report;
  r.algorithm = "tradeoff";
  r.params = "t=" + std::to_string(t) + ";eps=" + fmt_double(eps);
  r.n = g.n();
  r.max_degree = maxdeg;
  r.rounds = out.run.rounds_used;
  r.palette = out.coloring.palette;
  r.defect = check_defect(g, out.coloring).defect;
  r.messages = out.run.messages_sent;
  r.max_bits = out.run.max_message_bits;
  r.add_check("monochromatic_edges==0",
              static_cast<double>(check_legal(g, out.coloring).size()), 0.0);
  BoundParams bp;
  bp.n = g.n();
  bp.max_degree = maxdeg;
  bp.t = t;
  for (const auto& b : bound_formulas("tradeoff", bp))
    r.add_check(b.tag, static_cast<double>(r.palette), b.value);
  return out;
}

} // namespace dcolor
