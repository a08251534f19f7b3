#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "json.hpp"

#include "fingeo/blockingset.hpp"
#include "fingeo/linearset.hpp"
#include "fingeo/projspace.hpp"
#include "fingeo/reconstruct.hpp"

namespace fingeo::io {

using Json = nlohmann::json;

/// Point-set text format:
///
///   # any comment lines
///   space <p> <t> <n>
///   points <count>
///   <x_0> ... <x_n>        one normalized point per line, ascending rank
///
/// Field elements are written as their integer encodings (base-p digits of
/// the polynomial-basis coefficients).
PointSet read_pointset(std::istream& in);
PointSet read_pointset_file(const std::filesystem::path& path);
void write_pointset(std::ostream& out, const PointSet& b);
void write_pointset_file(const std::filesystem::path& path, const PointSet& b);

/// {"p", "t", "n", "e", "rows"}: the spread context and pi's canonical basis
/// over GF(p0), entries in 0..p0-1.
Json witness_to_json(const LinearSetWitness& w);
LinearSetWitness witness_from_json(const Json& j);

Json subspace_to_json(const Subspace& s);
Json rational_to_json(const Rational& r);
Json bigint_to_json(const BigInt& v);

/// Sidecar metadata stored next to each catalogue point set.
struct InstanceMeta {
  std::string name;
  std::string family;
  std::string description;
  int k = 1;
  std::uint32_t p0 = 0;
  bool claims_linear = false;
  bool slow = false;
  std::optional<std::uint64_t> seed;
  Json params = Json::object();
  std::optional<Json> witness;
  Json hypotheses = Json::object();         // flags recorded at generation time
  std::map<std::string, std::string> excluded;  // check id -> reason
};

Json meta_to_json(const InstanceMeta& m);
InstanceMeta meta_from_json(const Json& j);
InstanceMeta read_meta_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);
Json read_json_file(const std::filesystem::path& path);

Json spectrum_to_json(const IntersectionSpectrum& s);
Json blocking_report_to_json(const PointSet& b, const BlockingReport& r);
Json reconstruction_to_json(const ReconstructionResult& r);
Json secant_report_to_json(const SecantReport& r);
Json linearity_to_json(const LinearityResult& r);

/// Sorted-key JSON with two-space indentation and a trailing newline.
std::string dump(const Json& j);

}  // namespace fingeo::io
