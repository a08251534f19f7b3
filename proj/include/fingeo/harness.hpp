#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fingeo/exact.hpp"
#include "fingeo/io.hpp"
#include "fingeo/linearset.hpp"
#include "fingeo/projspace.hpp"

namespace fingeo {

enum class Verdict { Holds, Violated, NotApplicable };
std::string to_string(Verdict v);

struct Hypothesis {
  std::string name;
  bool met = false;
};

/// One (instance, statement) cell of the scorecard. Bounds and observations
/// are exact; `relation` says how they are compared. When a hypothesis fails
/// the comparison is still made and kept in `exploratory`.
struct LemmaCheck {
  std::string instance;
  std::string id;
  std::vector<Hypothesis> hypotheses;
  bool hypotheses_met = false;
  std::string relation;  // ">=", "<=", "==", ">"
  Rational bound;
  Rational observed;
  std::optional<Rational> sharp_bound;
  Verdict verdict = Verdict::NotApplicable;
  std::optional<bool> exploratory;
  std::string detail;
  io::Json witness;  // null unless the comparison failed
};

struct Instance {
  std::string name;
  PointSet points;
  int k = 1;
  std::uint32_t p0 = 0;
  std::optional<LinearSetWitness> witness;
  io::InstanceMeta meta;
};

/// Loads `<name>.pts` with its `<name>.meta.json` sidecar.
Instance load_instance(const std::filesystem::path& pts_path);

/// Instances of a catalogue directory in name order: the top level, then
/// slow/ when `slow` is set. Negative controls live in controls/ and are
/// loaded by pointing at that directory.
std::vector<Instance> load_catalogue(const std::filesystem::path& dir, bool slow);

/// Per-instance facts shown at the top of the scorecard.
struct InstanceFacts {
  std::string name;
  std::string family;
  std::string space;  // "PG(n,q)"
  int k = 1;
  std::uint32_t p0 = 0;
  std::size_t size = 0;
  bool blocking = false;
  bool small = false;
  bool minimal = false;
  std::uint32_t exponent = 0;
  bool nontrivial = false;
  bool redei = false;
  bool one_mod_p0 = false;
  bool claims_linear = false;
  bool main_hypotheses = false;  // blocking, small, minimal, p^e = p0 >= 7
};

struct SuiteResult {
  std::vector<InstanceFacts> instances;
  std::vector<LemmaCheck> checks;
};

/// Identifiers of every statement the suite can check, in scorecard order.
const std::vector<std::string>& check_ids();

/// Runs the selected checks (all when empty) on every instance; cells are
/// ordered by instance, then by check id order. Unknown ids throw BadParams.
SuiteResult run_suite(const std::vector<Instance>& instances, const std::vector<std::string>& ids = {});

/// Versioned scorecard; contains no timings, so reruns are byte-identical.
io::Json scorecard(const SuiteResult& result);
bool any_violated(const SuiteResult& result);

struct IdentityCheck {
  std::uint32_t trials = 0;
  std::uint32_t failures = 0;
  std::string first_failure;
  bool ok() const { return failures == 0; }
};

/// Sum x_i, sum i x_i and sum i(i-1) x_i against their Gaussian-binomial
/// values for `trials` seeded random subsets of PG(n, p^t), with the
/// dim-spectrum counted by full enumeration.
IdentityCheck counting_identities(std::uint32_t p, std::uint32_t t, std::uint32_t n, int dim, std::uint32_t trials,
                                  std::uint64_t seed);

/// Right-hand sides of the three identities for a set of `size` points in
/// PG(n, q) and its dim-subspaces.
struct IdentityValues {
  BigInt subspaces;
  BigInt incidences;
  BigInt pair_incidences;
};
IdentityValues identity_values(std::uint32_t n, int dim, std::uint64_t q, std::uint64_t size);

struct ProjectionCheck {
  std::optional<PointRank> center;
  bool off_secants = false;  // the centre lies on no secant, so sizes must agree
  std::optional<Subspace> hyperplane;
  std::size_t source_size = 0;
  std::size_t image_size = 0;
  bool blocking = false;
  bool small = false;
  bool minimal = false;
  bool ok() const {
    return center && blocking && small && minimal && (!off_secants || image_size == source_size);
  }
};

/// Projects b from the first point off all secants (or, failing that, the
/// first point outside b) onto the first hyperplane missing it, and analyzes
/// the image inside that hyperplane. Throws RangeError unless 1 <= k <= n-2.
ProjectionCheck projection_check(const PointSet& b, int k);

/// The shipped catalogue: names, families and parameters.
struct CatalogueEntry {
  std::string dir;  // "", "controls" or "slow"
  io::InstanceMeta meta;
  FamilyParams params;
  bool mutate = false;
};
std::vector<CatalogueEntry> catalogue_entries();

/// The family parameters that matter for `f.family`, as stored in metadata.
io::Json family_params_json(const FamilyParams& f);

/// Builds one entry's point set (and witness when the construction is linear).
Instance build_catalogue_instance(const CatalogueEntry& e);

/// Writes every entry into `dir` (and its subdirectories).
void write_catalogue(const std::filesystem::path& dir, bool include_slow);

/// Moves one point of b off a (p0+1)-secant M onto another point of M, so
/// that M carries p0+2 points.
PointSet mutate_off_secant(const PointSet& b, std::uint32_t p0);

}  // namespace fingeo
