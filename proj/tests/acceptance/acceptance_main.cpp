// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
//   fingeo_acceptance [--catalogue DIR] [--cli PATH] [--slow]
//
// The slow tier of criterion 6 (cone in PG(3,49)) runs only with --slow or
// FINGEO_SLOW=1.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "fingeo/blockingset.hpp"
#include "fingeo/error.hpp"
#include "fingeo/harness.hpp"
#include "fingeo/io.hpp"
#include "fingeo/linearset.hpp"
#include "fingeo/parallel.hpp"
#include "fingeo/reconstruct.hpp"

using namespace fingeo;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Options {
  std::string catalogue = FINGEO_SOURCE_DIR "/catalogue";
  std::string cli = FINGEO_CLI;
  bool slow = false;
};

const CatalogueEntry& entry(const std::string& name) {
  static const auto entries = catalogue_entries();
  for (const auto& e : entries)
    if (e.meta.name == name) return e;
  throw std::runtime_error("no catalogue entry " + name);
}

const LemmaCheck* cell(const SuiteResult& r, const std::string& id) {
  for (const auto& c : r.checks)
    if (c.id == id) return &c;
  return nullptr;
}

std::string describe(const LemmaCheck& c) {
  std::string s = c.id + " " + to_string(c.observed) + " " + c.relation + " " + to_string(c.bound) + " " + to_string(c.verdict);
  if (c.exploratory) s += std::string(" (exploratory ") + (*c.exploratory ? "holds" : "fails") + ")";
  return s;
}

// Each (p0+1)-secant count per point of b, from the secant report.
std::pair<std::size_t, std::size_t> secant_count_range(const SecantReport& r) {
  std::size_t lo = SIZE_MAX, hi = 0;
  for (const auto& p : r.points) {
    if (p.p0_secants == 0) continue;
    lo = std::min(lo, p.p0_secants);
    hi = std::max(hi, p.p0_secants);
  }
  return {lo, hi};
}

Outcome counting_identities_check() {
  std::ostringstream d;
  bool ok = true;
  for (auto [n, dim] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}}) {
    const auto r = counting_identities(3, 2, n, dim, 100, 20240601u + n * 10 + dim);
    ok = ok && r.ok() && r.trials == 100;
    d << "PG(" << n << ",9) dim " << dim << ": " << r.trials - r.failures << "/" << r.trials << "; ";
    if (!r.ok()) d << "first failure " << r.first_failure << "; ";
  }
  return {ok, d.str()};
}

Outcome baer_check() {
  const auto inst = build_catalogue_instance(entry("baer_pg2_9"));
  const auto& b = inst.points;
  std::ostringstream d;
  bool ok = b.size() == 13;
  const auto sp = spectrum(b, 1);
  for (const auto& [i, n] : sp.x) ok = ok && (i == 0 || i == 1 || i == 4);
  const auto e = exponent(b, 1);
  const bool direct = is_minimal(b, 1, MinimalityMethod::Direct).minimal;
  const bool crit = is_minimal(b, 1, MinimalityMethod::Criterion).minimal;
  const bool small = smallness(b, 1);
  const bool redei = is_redei(b, 1).redei;
  const auto sec = secant_analysis(b, 1, 3);
  bool four = sec.points.size() == 13;
  for (const auto& p : sec.points) four = four && p.p0_secants == 4 && p.sizes.size() == 1;
  const auto run = run_suite({inst}, {"sziklai_i"});
  const auto* sz = cell(run, "sziklai_i");
  const bool bound_ok = sz && sz->bound == 2 && sz->observed >= sz->bound;
  ok = ok && e == 1 && direct && crit && small && redei && four && bound_ok;
  d << "|B|=" << b.size() << " line sizes {";
  for (const auto& [i, n] : sp.x) d << i << ":" << n << ",";
  d << "} e=" << e << " minimal(direct,criterion)=" << direct << crit << " small=" << small << " redei=" << redei
    << " four 4-secants per point=" << four;
  if (sz) d << "; " << describe(*sz);
  return {ok, d.str()};
}

Outcome reconstruction_check() {
  std::ostringstream d;
  bool ok = true;
  for (const auto& [name, want] : std::vector<std::pair<std::string, int>>{{"baer_pg2_9", 2}, {"rank4_pg2_27", 3}}) {
    const auto inst = build_catalogue_instance(entry(name));
    const auto& ctx = *inst.witness->ctx;
    const auto first = reconstruct(inst.points, 1, ctx, PointPolicy::First);
    const auto all = reconstruct(inst.points, 1, ctx, PointPolicy::All);
    bool all_ok = true;
    for (const auto& r : all) all_ok = all_ok && r.success() && ctx.linear_set_of(r.w) == inst.points;
    const bool first_ok = first[0].dim_w == want && ctx.linear_set_of(first[0].w) == inst.points;
    ok = ok && first_ok && all_ok;
    d << name << ": dim W=" << first[0].dim_w << " (want " << want << "), B(W)=B " << first_ok << ", all " << all.size()
      << " base points reproduce B " << all_ok << "; ";
  }
  return {ok, d.str()};
}

Outcome f7_subplane_check() {
  const auto inst = build_catalogue_instance(entry("subplane_pg2_49"));
  const auto& b = inst.points;
  const auto& ctx = *inst.witness->ctx;
  std::ostringstream d;
  const bool small = b.size() == 57 && smallness(b, 1) && 57 < 75;
  bool one_mod = true;
  for (const auto& [i, n] : spectrum(b, 1).x) one_mod = one_mod && (i == 0 || i % 7 == 1);
  const auto run = run_suite({inst}, {"grootte_bound"});
  const auto* g = cell(run, "grootte_bound");
  const bool grootte = g && g->bound == 55 && g->observed == 57 && g->verdict == Verdict::Holds;
  const auto sec = secant_analysis(b, 1, 7);
  const auto [lo, hi] = secant_count_range(sec);
  const auto lemma_bound = secant_count_bound(7, 2, 1);
  const bool counts = lo != SIZE_MAX && Rational(lo) >= lemma_bound && lemma_bound == 4 && lo >= 6;
  const auto rec = reconstruct(b, 1, ctx);
  const bool rec_ok = rec[0].success() && rec[0].dim_w == 2;
  d << "|B|=57 small " << small << ", spectrum 0 or 1 mod 7 " << one_mod << "; " << (g ? describe(*g) : "no cell")
    << "; 8-secants per point " << lo << ".." << hi << " (bounds 4 and 6); dim W=" << rec[0].dim_w;
  return {small && one_mod && grootte && counts && rec_ok, d.str()};
}

Outcome subline_check() {
  std::ostringstream d;
  bool ok = true;
  for (const auto& name : {"baer_pg2_9", "rank4_pg2_27"}) {
    const auto inst = build_catalogue_instance(entry(name));
    const auto rep = subline_meet_check(*inst.witness);
    bool sizes_ok = rep.violations.empty();
    for (const auto& [s, n] : rep.sizes) sizes_ok = sizes_ok && s <= 4;
    ok = ok && sizes_ok && rep.sublines > 0;
    d << name << ": " << rep.sublines << " sublines on " << rep.lines << " secants, sizes {";
    for (const auto& [s, n] : rep.sizes) d << s << ":" << n << ",";
    d << "}; ";
  }
  return {ok, d.str()};
}

Outcome cone_fast_check() {
  const auto inst = build_catalogue_instance(entry("cone_pg3_9"));
  const auto& b = inst.points;
  const auto& s = *b.space();
  std::uint64_t lines = 0, blocked = 0;
  s.for_each_subspace(1, [&](const Subspace& l) {
    ++lines;
    blocked += b.count_in(l) > 0;
    return true;
  });
  const bool blocking = is_k_blocking(b, 2).blocking;
  const auto e = exponent(b, 2);
  // planes through a tangent line
  std::optional<Subspace> tangent;
  for (auto p : b.ranks()) {
    tangent = find_tangent_space(b, p, 1);
    if (tangent) break;
  }
  const bool one_mod = one_mod_spectrum(spectrum(b, 1), 3);
  std::uint64_t planes = 0, applicable = 0, gaps = 0, small = 0, large = 0;
  if (tangent) {
    s.for_each_subspace_through(*tangent, 2, [&](const Subspace& pi) {
      ++planes;
      const auto rep = classify_report(b, 2, 3, 2, pi, one_mod);
      if (rep.applicable) {
        ++applicable;
        gaps += rep.side == SizeSide::Gap;
      }
      small += rep.side == SizeSide::Small;
      large += rep.side == SizeSide::Large;
      return true;
    });
  }
  std::ostringstream d;
  d << blocked << "/" << lines << " lines blocked, exponent " << e << ", " << planes << " planes through a tangent line: "
    << small << " small, " << large << " large, " << applicable << " within p0 >= 7, " << gaps << " gap violations";
  return {lines == 7462 && blocked == lines && blocking && e >= 1 && tangent && planes == 10 && gaps == 0, d.str()};
}

Outcome cone_slow_check() {
  const auto inst = build_catalogue_instance(entry("cone_pg3_49"));
  const auto run = run_suite({inst}, {"large_count", "hypervlakken_i", "aantalsecanten"});
  bool ok = true;
  std::ostringstream d;
  for (const auto& c : run.checks) {
    ok = ok && c.verdict == Verdict::Holds;
    d << describe(c) << "; ";
  }
  return {ok, d.str()};
}

Outcome nonsecant_check() {
  const auto inst = build_catalogue_instance(entry("subplane_in_plane_pg3_49"));
  const auto run = run_suite({inst}, {"lemma6_nonsecant"});
  const auto* c = cell(run, "lemma6_nonsecant");
  const auto sec = secant_analysis(inst.points, 1, 7);
  std::ostringstream d;
  if (!c) return {false, "no cell"};
  d << describe(*c) << "; direct count " << sec.points_off_secants;
  if (c->sharp_bound) d << "; sharp variant " << to_string(*c->sharp_bound);
  return {c->verdict == Verdict::Holds && c->observed == Rational(sec.points_off_secants) && c->observed >= c->bound,
          d.str()};
}

Outcome projection_check_criterion() {
  const auto inst = build_catalogue_instance(entry("subplane_in_plane_pg3_49"));
  const auto pc = projection_check(inst.points, 1);
  std::ostringstream d;
  d << "centre " << (pc.center ? std::to_string(*pc.center) : "none") << " off secants " << pc.off_secants << ", |B|="
    << pc.source_size << " |image|=" << pc.image_size << ", blocking " << pc.blocking << " small " << pc.small
    << " minimal " << pc.minimal;
  return {pc.ok() && pc.off_secants && pc.image_size == pc.source_size, d.str()};
}

int run_cli(const std::string& cli, const std::string& args) {
  const std::string cmd = "'" + cli + "' " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome controls_check(const Options& o) {
  const auto inst = build_catalogue_instance(entry("mutated_baer_pg2_9"));
  const auto& b = inst.points;
  const auto ctx = SpreadContext::make(b.space(), 1);
  const auto sec = secant_linearity_check(b, 1, *ctx);
  bool image_differs = false;
  try {
    for (const auto& r : reconstruct(b, 1, *ctx, PointPolicy::All, false)) image_differs = image_differs || !r.image_equal;
  } catch (const Error&) {
    image_differs = true;
  }
  const bool linear = is_linear(b, ctx, LinearityStrategy::Exhaustive).linear;
  const auto run = run_suite({inst});
  bool witnesses = true;
  std::size_t violated = 0;
  for (const auto& c : run.checks) {
    if (c.verdict != Verdict::Violated) continue;
    ++violated;
    witnesses = witnesses && c.witness.is_object() && c.witness.contains("instance");
  }
  const int code = run_cli(o.cli, "harness run --catalogue '" + o.catalogue + "/controls'");
  std::ostringstream d;
  d << "non-subline secants " << sec.failures.size() << ", reconstruct image differs " << image_differs << ", is_linear "
    << linear << "; " << violated << " violated cells with witnesses " << witnesses << "; CLI exit " << code;
  const bool detected = !sec.failures.empty() || image_differs || !linear;
  return {detected && violated > 0 && witnesses && code == 1, d.str()};
}

Outcome determinism_check(const Options& o) {
  const auto insts = load_catalogue(o.catalogue, false);
  const auto a = io::dump(scorecard(run_suite(insts)));
  const auto b = io::dump(scorecard(run_suite(insts)));
  const unsigned saved = thread_count();
  set_thread_count(1);
  const auto c = io::dump(scorecard(run_suite(insts)));
  set_thread_count(saved);
  std::ostringstream d;
  d << insts.size() << " instances, scorecard " << a.size() << " bytes; rerun identical " << (a == b)
    << ", single-thread identical " << (a == c);
  return {a == b && a == c, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  if (const char* s = std::getenv("FINGEO_SLOW"); s && std::string(s) == "1") o.slow = true;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--slow") {
      o.slow = true;
    } else if (a == "--catalogue" && i + 1 < argc) {
      o.catalogue = argv[++i];
    } else if (a == "--cli" && i + 1 < argc) {
      o.cli = argv[++i];
    } else {
      std::cerr << "usage: fingeo_acceptance [--catalogue DIR] [--cli PATH] [--slow]\n";
      return 2;
    }
  }

  struct Criterion {
    std::string id;
    std::string name;
    double limit_s;
    std::function<Outcome()> fn;
  };
  std::vector<Criterion> criteria = {
      {"1", "counting identities", 30, counting_identities_check},
      {"2", "Baer subplane of PG(2,9)", 5, baer_check},
      {"3", "reconstruction", 60, reconstruction_check},
      {"4", "F_7-subplane of PG(2,49)", 30, f7_subplane_check},
      {"5", "subline intersections", 60, subline_check},
      {"6", "k=2 cone in PG(3,9)", 60, cone_fast_check},
      {"7", "non-secant count in PG(3,49)", 60, nonsecant_check},
      {"8", "projection from a non-secant point", 30, projection_check_criterion},
      {"9", "negative controls", 30, [&] { return controls_check(o); }},
      {"10", "determinism", 600, [&] { return determinism_check(o); }},
  };
  if (o.slow) criteria.insert(criteria.begin() + 6, {"6-slow", "k=2 cone in PG(3,49) bounds", 600, cone_slow_check});

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.fn();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.limit_s;
    const bool pass = out.pass && in_time;
    failed += !pass;
    std::printf("%s %-6s %-36s %7.2fs (limit %gs%s) | %s\n", pass ? "PASS" : "FAIL", c.id.c_str(), c.name.c_str(), secs,
                c.limit_s, in_time ? "" : ", exceeded", out.detail.c_str());
    std::fflush(stdout);
  }
  if (!o.slow) std::printf("SKIP 6-slow  k=2 cone in PG(3,49) bounds (run with --slow or FINGEO_SLOW=1)\n");
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
