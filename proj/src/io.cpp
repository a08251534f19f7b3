#include "fingeo/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "fingeo/error.hpp"

namespace fingeo::io {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::uint64_t parse_uint(const std::string& tok, std::size_t lineno) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": expected a non-negative integer, got '" + tok + "'");
  }
  return v;
}

std::uint32_t to_u32(std::uint64_t v, std::size_t lineno) {
  if (v > 0xffffffffu) throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": value out of range");
  return static_cast<std::uint32_t>(v);
}

}  // namespace

PointSet read_pointset(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<SpacePtr> space;
  std::optional<std::uint64_t> count;
  std::vector<PointRank> ranks;
  std::vector<Elem> v;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tok = split(line);
    if (tok.empty() || tok[0][0] == '#') continue;
    if (!space) {
      if (tok.size() != 4 || tok[0] != "space") {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": expected 'space <p> <t> <n>'");
      }
      auto field = Field::make(to_u32(parse_uint(tok[1], lineno), lineno), to_u32(parse_uint(tok[2], lineno), lineno));
      space = ProjectiveSpace::make(field, to_u32(parse_uint(tok[3], lineno), lineno));
      continue;
    }
    if (!count) {
      if (tok.size() != 2 || tok[0] != "points") {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": expected 'points <count>'");
      }
      count = parse_uint(tok[1], lineno);
      continue;
    }
    const auto& sp = **space;
    if (tok.size() != sp.coords()) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": expected " + std::to_string(sp.coords()) +
                                             " coordinates, got " + std::to_string(tok.size()));
    }
    v.assign(sp.coords(), 0);
    for (std::size_t i = 0; i < tok.size(); ++i) {
      const auto c = parse_uint(tok[i], lineno);
      if (c >= sp.field().q()) throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": coordinate outside the field");
      v[i] = static_cast<Elem>(c);
    }
    if (!sp.normalize(v)) throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": zero vector");
    ranks.push_back(sp.rank_normalized(v));
  }
  if (!space) throw Error(ErrorCode::ParseError, "missing 'space' header");
  if (!count) throw Error(ErrorCode::ParseError, "missing 'points' header");
  if (ranks.size() != *count) {
    throw Error(ErrorCode::ParseError, "header announces " + std::to_string(*count) + " points, file has " + std::to_string(ranks.size()));
  }
  return PointSet(*space, std::move(ranks));
}

PointSet read_pointset_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return read_pointset(in);
}

void write_pointset(std::ostream& out, const PointSet& b) {
  const auto& sp = *b.space();
  out << "# fingeo point set\n";
  out << "space " << sp.field().p() << ' ' << sp.field().t() << ' ' << sp.n() << '\n';
  out << "points " << b.size() << '\n';
  std::vector<Elem> v(sp.coords());
  for (const PointRank r : b.ranks()) {
    sp.point_into(r, v);
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
    out << '\n';
  }
}

void write_pointset_file(const std::filesystem::path& path, const PointSet& b) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  write_pointset(out, b);
  if (!out) throw Error(ErrorCode::IoError, "write failed: " + path.string());
}

Json subspace_to_json(const Subspace& s) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < s.vector_dim(); ++i) {
    const auto r = s.row(i);
    rows.push_back(std::vector<Elem>(r.begin(), r.end()));
  }
  return rows;
}

Json rational_to_json(const Rational& r) { return to_string(r); }
Json bigint_to_json(const BigInt& v) { return to_string(v); }

Json witness_to_json(const LinearSetWitness& w) {
  const auto& big = *w.ctx->big();
  Json j;
  j["p"] = big.field().p();
  j["t"] = big.field().t();
  j["n"] = big.n();
  j["e"] = w.ctx->subfield().e;
  j["rows"] = subspace_to_json(w.pi);
  return j;
}

LinearSetWitness witness_from_json(const Json& j) {
  try {
    auto field = Field::make(j.at("p").get<std::uint32_t>(), j.at("t").get<std::uint32_t>());
    auto space = ProjectiveSpace::make(field, j.at("n").get<std::uint32_t>());
    auto ctx = SpreadContext::make(space, j.at("e").get<std::uint32_t>());
    const auto& small = *ctx->small();
    std::vector<Elem> rows;
    for (const auto& row : j.at("rows")) {
      auto r = row.get<std::vector<Elem>>();
      if (r.size() != small.coords()) throw Error(ErrorCode::ParseError, "witness row has the wrong length");
      for (const Elem c : r) {
        if (c >= ctx->p0()) throw Error(ErrorCode::ParseError, "witness entry outside the subfield");
      }
      rows.insert(rows.end(), r.begin(), r.end());
    }
    return build_linear_set(ctx, small.subspace(std::move(rows)));
  } catch (const nlohmann::json::exception& err) {
    throw Error(ErrorCode::ParseError, std::string("witness: ") + err.what());
  }
}

Json meta_to_json(const InstanceMeta& m) {
  Json j;
  j["schema"] = "fingeo-instance/1";
  j["name"] = m.name;
  j["family"] = m.family;
  j["description"] = m.description;
  j["k"] = m.k;
  j["p0"] = m.p0;
  j["claims_linear"] = m.claims_linear;
  j["slow"] = m.slow;
  j["params"] = m.params;
  j["hypotheses"] = m.hypotheses;
  j["seed"] = m.seed ? Json(*m.seed) : Json(nullptr);
  j["witness"] = m.witness ? *m.witness : Json(nullptr);
  j["excluded"] = m.excluded;
  return j;
}

InstanceMeta meta_from_json(const Json& j) {
  try {
    if (j.value("schema", "") != "fingeo-instance/1") throw Error(ErrorCode::ParseError, "unknown instance schema");
    InstanceMeta m;
    m.name = j.at("name").get<std::string>();
    m.family = j.value("family", "");
    m.description = j.value("description", "");
    m.k = j.at("k").get<int>();
    m.p0 = j.at("p0").get<std::uint32_t>();
    m.claims_linear = j.value("claims_linear", false);
    m.slow = j.value("slow", false);
    m.params = j.value("params", Json::object());
    m.hypotheses = j.value("hypotheses", Json::object());
    if (j.contains("seed") && !j["seed"].is_null()) m.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("witness") && !j["witness"].is_null()) m.witness = j["witness"];
    if (j.contains("excluded")) m.excluded = j["excluded"].get<std::map<std::string, std::string>>();
    return m;
  } catch (const nlohmann::json::exception& err) {
    throw Error(ErrorCode::ParseError, std::string("instance metadata: ") + err.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& err) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + err.what());
  }
}

InstanceMeta read_meta_file(const std::filesystem::path& path) { return meta_from_json(read_json_file(path)); }

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << dump(j);
  if (!out) throw Error(ErrorCode::IoError, "write failed: " + path.string());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json spectrum_to_json(const IntersectionSpectrum& s) {
  Json j;
  j["dim"] = s.dim;
  j["total"] = s.total;
  // [i, x_i] pairs rather than an object so the order stays numeric.
  Json pairs = Json::array();
  for (const auto& [i, c] : s.x) pairs.push_back({i, c});
  j["x"] = pairs;
  return j;
}

Json blocking_report_to_json(const PointSet& b, const BlockingReport& r) {
  const auto& sp = *b.space();
  Json j;
  j["space"] = {{"p", sp.field().p()}, {"t", sp.field().t()}, {"n", sp.n()}, {"q", sp.field().q()}};
  j["k"] = r.k;
  j["size"] = r.size;
  j["blocking"] = r.is_blocking;
  j["small"] = r.is_small;
  j["exponent"] = r.exponent;
  j["minimal"] = r.is_minimal;
  j["redei"] = r.is_redei;
  j["spectrum"] = spectrum_to_json(r.spectrum);
  Json w = Json::object();
  if (r.uncovered) w["uncovered"] = subspace_to_json(*r.uncovered);
  if (r.removable) w["removable"] = *r.removable;
  if (r.redei_hyperplane) w["redei_hyperplane"] = subspace_to_json(*r.redei_hyperplane);
  j["witness"] = w;
  return j;
}

Json reconstruction_to_json(const ReconstructionResult& r) {
  Json j;
  j["base_point"] = r.base_point;
  j["x"] = r.x;
  j["secants_used"] = r.secants_used;
  j["skipped"] = r.skipped;
  Json tr = Json::array();
  for (const auto& l : r.transversals) tr.push_back(subspace_to_json(l));
  j["transversals"] = tr;
  j["w"] = subspace_to_json(r.w);
  j["dim_w"] = r.dim_w;
  j["expected_dim"] = r.expected_dim;
  j["image_equal"] = r.image_equal;
  j["status"] = to_string(r.status);
  j["success"] = r.success();
  return j;
}

Json secant_report_to_json(const SecantReport& r) {
  Json j;
  j["kappa"] = bigint_to_json(r.kappa);
  j["points_off_secants"] = r.points_off_secants;
  Json sizes = Json::array();
  for (const auto& [s, c] : r.line_sizes) sizes.push_back({s, c});
  j["line_sizes"] = sizes;
  Json pts = Json::array();
  for (const auto& ps : r.points) {
    Json e;
    e["point"] = ps.point;
    Json m = Json::array();
    for (const auto& [s, c] : ps.sizes) m.push_back({s, c});
    e["secant_sizes"] = m;
    e["tangent_lines"] = ps.tangent_lines;
    e["p0_secants"] = ps.p0_secants;
    if (ps.tangent_space) e["tangent_space"] = subspace_to_json(*ps.tangent_space);
    pts.push_back(e);
  }
  j["points"] = pts;
  return j;
}

Json linearity_to_json(const LinearityResult& r) {
  Json j;
  j["linear"] = r.linear;
  j["method"] = r.method;
  j["rank_cap"] = r.rank_cap;
  j["examined"] = r.examined;
  j["certificate"] = r.certificate;
  if (r.witness) {
    j["witness"] = witness_to_json(*r.witness);
    j["rank"] = r.witness->rank();
  }
  return j;
}

}  // namespace fingeo::io
