// fingeo: command-line front end for the blocking-set and linear-set tools.
//
// Exit codes: 0 success, 1 mathematical failure or violation, 2 usage or
// invalid parameters, 3 I/O or parse error. Errors print a single line
// "error: <Code>: <detail>" on stderr.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fingeo/blockingset.hpp"
#include "fingeo/error.hpp"
#include "fingeo/field.hpp"
#include "fingeo/fieldreduction.hpp"
#include "fingeo/harness.hpp"
#include "fingeo/io.hpp"
#include "fingeo/linearset.hpp"
#include "fingeo/parallel.hpp"
#include "fingeo/reconstruct.hpp"

namespace fs = std::filesystem;
using namespace fingeo;

namespace {

constexpr int kOk = 0;
constexpr int kMath = 1;
constexpr int kUsage = 2;
constexpr int kIo = 3;

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError:
    case ErrorCode::IoError:
      return kIo;
    case ErrorCode::NotPrime:
    case ErrorCode::NoTableEntry:
    case ErrorCode::BadDivisor:
    case ErrorCode::RangeError:
    case ErrorCode::BadParams:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::SpecMismatch:
    case ErrorCode::ReduciblePolynomial:
      return kUsage;
    default:
      return kMath;
  }
}

void emit(const io::Json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << io::dump(j);
  } else {
    io::write_json_file(out, j);
  }
}

// The subfield exponent e with p^e = p0, e | t.
std::uint32_t subfield_exponent(const ProjectiveSpace& space, std::uint32_t p0) {
  std::uint64_t pe = 1;
  for (std::uint32_t e = 1; e <= space.field().t(); ++e) {
    pe *= space.field().p();
    if (pe == p0) {
      if (space.field().t() % e != 0) break;
      return e;
    }
  }
  throw Error(ErrorCode::BadParams, "p0 = " + std::to_string(p0) + " is not the order of a subfield of " +
                                        space.field().name());
}

void check_k(const PointSet& b, int k) {
  const int n = static_cast<int>(b.space()->n());
  if (k < 1 || k > n - 1) {
    throw Error(ErrorCode::RangeError, "k = " + std::to_string(k) + " outside 1.." + std::to_string(n - 1));
  }
}

std::vector<Elem> parse_coefficients(const std::string& s) {
  std::vector<Elem> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(static_cast<Elem>(v));
    } catch (const std::exception&) {
      throw Error(ErrorCode::BadParams, "bad coefficient '" + tok + "'");
    }
  }
  return out;
}

struct GenArgs {
  FamilyParams f;
  std::string out;
  std::string name;
  int k = 1;
};

struct FileArgs {
  std::string file;
  int k = 1;
  std::uint32_t p0 = 0;
  std::string out;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blocking sets, linear sets and field reduction over finite projective spaces"};
  app.set_version_flag("--version", std::string("fingeo 1.0.0 (conway table ") + conway_table_version() + ")");
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = all cores)");

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Build a point set from a family and write it with its metadata");
  g->add_option("family", gen.f.family, "subgeometry | redei_trace | cone | subspace | random_rank_r")->required();
  g->add_option("--p", gen.f.p, "Characteristic")->required();
  g->add_option("--t", gen.f.t, "Field degree, q = p^t")->required();
  g->add_option("--n", gen.f.n, "Projective dimension")->required();
  g->add_option("--e", gen.f.e, "Subfield GF(p^e)")->default_val(1);
  auto* gm = g->add_option("--m", gen.f.m, "Subgeometry / base / subspace dimension (subgeometry default: n)");
  g->add_option("--vertex-dim", gen.f.vertex_dim, "Cone vertex dimension");
  g->add_option("--r", gen.f.r, "Rank for random_rank_r");
  g->add_option("--seed", gen.f.seed, "Seed for random_rank_r");
  g->add_option("--k", gen.k, "Blocking dimension recorded in the metadata (redei_trace also uses it)")->default_val(1);
  g->add_option("--name", gen.name, "Instance name (default: output file stem)");
  g->add_option("--out", gen.out, "Point-set file; metadata goes to <stem>.meta.json")->required();

  FileArgs chk;
  auto* c = app.add_subcommand("check", "Blocking, smallness, exponent, minimality and Redei report");
  c->add_option("file", chk.file)->required();
  c->add_option("--k", chk.k)->required();
  c->add_option("--p0", chk.p0, "Also test the 1 mod p0 property and the main hypotheses");

  FileArgs rec;
  bool all_points = false;
  auto* r = app.add_subcommand("reconstruct", "Rebuild pi with B(pi) = B from the (p0+1)-secants through a point");
  r->add_option("file", rec.file)->required();
  r->add_option("--k", rec.k)->required();
  r->add_option("--p0", rec.p0)->required();
  r->add_flag("--all-points", all_points, "Use every point on a (p0+1)-secant as base point");

  FileArgs lin;
  bool exhaustive = false;
  auto* l = app.add_subcommand("islinear", "Decide whether the set is GF(p0)-linear (exit 1 when it is not)");
  l->add_option("file", lin.file)->required();
  l->add_option("--p0", lin.p0)->required();
  l->add_option("--k", lin.k, "Blocking dimension; caps the exhaustive search (0 = no cap)")->default_val(0);
  l->add_flag("--exhaustive", exhaustive, "Skip the reconstruction attempt");

  std::string catalogue_dir;
  std::string scorecard_out;
  std::vector<std::string> only;
  bool slow = false;
  auto* h = app.add_subcommand("harness", "Run the statement checks on a catalogue");
  h->require_subcommand(1);
  auto* hr = h->add_subcommand("run", "Write the scorecard (exit 1 if any check is violated)");
  hr->add_option("--catalogue", catalogue_dir)->required();
  hr->add_flag("--slow", slow, "Include the slow/ tier");
  hr->add_option("--only", only, "Restrict to these check ids")->delimiter(',');
  hr->add_option("--out", scorecard_out, "Scorecard path (default: stdout)");
  auto* hl = h->add_subcommand("list", "Print the check ids");

  FileArgs sec;
  bool tangents = false;
  auto* s = app.add_subcommand("secants", "Secant statistics per point");
  s->add_option("file", sec.file)->required();
  s->add_option("--k", sec.k)->required();
  s->add_option("--p0", sec.p0)->required();
  s->add_flag("--tangents", tangents, "Also search a tangent (n-k)-space at each point");

  FileArgs prj;
  std::optional<PointRank> center;
  std::string hyperplane;
  auto* pj = app.add_subcommand("project", "Project from a point onto a hyperplane and write the image");
  pj->add_option("file", prj.file)->required();
  pj->add_option("--point", center, "Centre rank (default: first point on no secant)");
  pj->add_option("--hyperplane", hyperplane, "Coefficients a_0,...,a_n of sum a_i X_i = 0 (default: first missing the centre)");
  pj->add_option("--out", prj.out, "Image point-set file (default: stdout)");

  std::uint32_t sp = 0, st = 0, sn = 0, se = 1;
  std::string spread_out;
  auto* sd = app.add_subcommand("spread", "Desarguesian spread of a field reduction");
  sd->require_subcommand(1);
  auto* sdd = sd->add_subcommand("dump", "Spread elements as small-side point ranks");
  sdd->add_option("--p", sp)->required();
  sdd->add_option("--t", st)->required();
  sdd->add_option("--n", sn)->required();
  sdd->add_option("--e", se)->default_val(1);
  sdd->add_option("--out", spread_out);

  std::string cat_out;
  bool cat_slow = false;
  auto* cg = app.add_subcommand("catalogue", "Regenerate the instance catalogue");
  cg->add_option("--out", cat_out)->required();
  cg->add_flag("--slow", cat_slow, "Also write the slow/ tier");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: Usage: " << e.what() << "\n";
    return kUsage;
  }

  try {
    set_thread_count(threads);

    if (*g) {
      CatalogueEntry e;
      e.params = gen.f;
      e.params.k = gen.k;
      if (gen.f.family == "subgeometry" && gm->count() == 0) e.params.m = static_cast<int>(gen.f.n);
      const fs::path out(gen.out);
      e.meta.name = gen.name.empty() ? out.stem().string() : gen.name;
      e.meta.family = gen.f.family;
      e.meta.k = gen.k;
      std::uint32_t p0 = 1;
      for (std::uint32_t i = 0; i < gen.f.e; ++i) p0 *= gen.f.p;
      e.meta.p0 = p0;
      e.meta.claims_linear = true;
      if (gen.f.family == "random_rank_r") e.meta.seed = gen.f.seed;
      e.meta.params = family_params_json(e.params);
      const auto in = build_catalogue_instance(e);
      io::write_pointset_file(out, in.points);
      auto meta_path = out;
      meta_path.replace_extension(".meta.json");
      io::write_json_file(meta_path, io::meta_to_json(in.meta));
      return kOk;
    }

    if (*c) {
      const auto b = io::read_pointset_file(chk.file);
      check_k(b, chk.k);
      const auto rep = analyze(b, chk.k);
      auto j = io::blocking_report_to_json(b, rep);
      if (chk.p0 != 0) {
        const auto ctx = SpreadContext::make(b.space(), subfield_exponent(*b.space(), chk.p0));
        j["p0"] = chk.p0;
        j["one_mod_p0"] = rep.is_blocking && one_mod_spectrum(rep.spectrum, chk.p0);
        std::string why;
        j["main_hypotheses"] = rep.is_blocking && within_main_hypotheses(b, chk.k, *ctx, &why);
        if (!why.empty()) j["main_hypotheses_note"] = why;
      }
      emit(j, "");
      return kOk;
    }

    if (*r) {
      const auto b = io::read_pointset_file(rec.file);
      check_k(b, rec.k);
      const auto ctx = SpreadContext::make(b.space(), subfield_exponent(*b.space(), rec.p0));
      const auto res = reconstruct(b, rec.k, *ctx, all_points ? PointPolicy::All : PointPolicy::First);
      io::Json arr = io::Json::array();
      bool ok = true;
      for (const auto& x : res) {
        arr.push_back(io::reconstruction_to_json(x));
        ok = ok && x.success();
      }
      emit(all_points ? arr : arr.front(), "");
      return ok ? kOk : kMath;
    }

    if (*l) {
      const auto b = io::read_pointset_file(lin.file);
      const auto ctx = SpreadContext::make(b.space(), subfield_exponent(*b.space(), lin.p0));
      const auto res =
          is_linear(b, ctx, exhaustive ? LinearityStrategy::Exhaustive : LinearityStrategy::ReconstructFirst, lin.k);
      emit(io::linearity_to_json(res), "");
      return res.linear ? kOk : kMath;
    }

    if (*hl) {
      for (const auto& id : check_ids()) std::cout << id << "\n";
      return kOk;
    }

    if (*hr) {
      const auto instances = load_catalogue(catalogue_dir, slow);
      const auto result = run_suite(instances, only);
      emit(scorecard(result), scorecard_out);
      return any_violated(result) ? kMath : kOk;
    }

    if (*s) {
      const auto b = io::read_pointset_file(sec.file);
      check_k(b, sec.k);
      emit(io::secant_report_to_json(secant_analysis(b, sec.k, sec.p0, tangents)), "");
      return kOk;
    }

    if (*pj) {
      const auto b = io::read_pointset_file(prj.file);
      const auto& space = *b.space();
      PointRank q = 0;
      if (center) {
        if (*center >= space.num_points()) throw Error(ErrorCode::RangeError, "point rank out of range");
        q = *center;
      } else {
        const auto off = point_off_secants(b);
        if (!off) throw Error(ErrorCode::NotFound, "every point outside the set lies on a secant");
        q = *off;
      }
      Subspace hp;
      if (!hyperplane.empty()) {
        const auto coeffs = parse_coefficients(hyperplane);
        if (coeffs.size() != space.coords()) throw Error(ErrorCode::DimensionMismatch, "hyperplane needs n+1 coefficients");
        hp = space.hyperplane(coeffs);
      } else {
        space.for_each_subspace(static_cast<int>(space.n()) - 1, [&](const Subspace& x) {
          if (space.contains(x, q)) return true;
          hp = x;
          return false;
        });
      }
      const auto image = restrict_to(project(b, q, hp), hp);
      if (prj.out.empty()) {
        io::write_pointset(std::cout, image);
      } else {
        io::write_pointset_file(prj.out, image);
      }
      return kOk;
    }

    if (*sdd) {
      const auto big = ProjectiveSpace::make(Field::make(sp, st), sn);
      if (se == 0 || st % se != 0) throw Error(ErrorCode::BadDivisor, "e must divide t");
      const auto ctx = SpreadContext::make(big, se);
      io::Json elements = io::Json::array();
      for (PointRank x = 0; x < big->num_points(); ++x) {
        const auto pts = ctx->element_points(x);
        elements.push_back(std::vector<PointRank>(pts.begin(), pts.end()));
      }
      emit(io::Json{{"p", sp},
                    {"t", st},
                    {"n", sn},
                    {"e", se},
                    {"h", ctx->h()},
                    {"small_n", ctx->small()->n()},
                    {"elements", std::move(elements)}},
           spread_out);
      return kOk;
    }

    if (*cg) {
      write_catalogue(cat_out, cat_slow);
      return kOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.detail() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << "\n";
    return kMath;
  }
  return kUsage;
}
