#include "fingeo/harness.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "fingeo/blockingset.hpp"
#include "fingeo/error.hpp"
#include "fingeo/reconstruct.hpp"

namespace fingeo {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Violated: return "violated";
    case Verdict::NotApplicable: return "not_applicable";
  }
  return "?";
}

namespace {

using io::Json;

Rational R(std::uint64_t v) { return Rational(BigInt(v)); }

std::uint64_t u64(const BigInt& v) { return static_cast<std::uint64_t>(v); }

std::size_t count_at_least(const Rational& threshold) { return static_cast<std::size_t>(u64(ceil(threshold))); }

bool compare(const Rational& observed, const std::string& relation, const Rational& bound) {
  if (relation == ">=") return observed >= bound;
  if (relation == "<=") return observed <= bound;
  if (relation == ">") return observed > bound;
  return observed == bound;
}

// Lazily computed facts about one instance, shared by its checks.
class Ctx {
 public:
  explicit Ctx(const Instance& in) : in_(in), b_(in.points), space_(*in.points.space()) {
    n_ = static_cast<int>(space_.n());
    k_ = in.k;
    p_ = space_.field().p();
    t_ = space_.field().t();
    q_ = space_.field().q();
    p0_ = in.p0;
    std::uint64_t pe = 1;
    for (std::uint32_t e = 1; e <= t_; ++e) {
      pe *= p_;
      if (pe == p0_ && t_ % e == 0) {
        h_ = t_ / e;
        spread_ = SpreadContext::make(in.points.space(), e);
      }
    }
  }

  const Instance& in() const { return in_; }
  const PointSet& b() const { return b_; }
  const ProjectiveSpace& space() const { return space_; }
  int n() const { return n_; }
  int k() const { return k_; }
  std::uint32_t p() const { return p_; }
  std::uint32_t t() const { return t_; }
  std::uint64_t q() const { return q_; }
  std::uint64_t p0() const { return p0_; }
  std::uint32_t h() const { return h_; }
  const SpreadPtr& spread() const { return spread_; }
  bool k_valid() const { return k_ >= 1 && k_ <= n_ - 1; }

  const IntersectionSpectrum& spec(int dim) {
    auto it = spectra_.find(dim);
    if (it == spectra_.end()) {
      if (dim == 1) {
        it = spectra_.emplace(dim, line_spectrum(b_, secants())).first;
      } else {
        it = spectra_.emplace(dim, spectrum(b_, dim)).first;
      }
    }
    return it->second;
  }

  const SecantLines& secants() {
    if (!secants_) secants_ = secant_lines(b_);
    return *secants_;
  }

  // Indices of the (p0+1)-secants and, per point of b, those through it.
  const std::vector<std::size_t>& p0_secants() {
    if (!p0_secants_) {
      p0_secants_.emplace();
      const auto& s = secants();
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.members(i).size() != p0_ + 1) continue;
        p0_secants_->push_back(i);
        for (const PointRank r : s.members(i)) through_[r].push_back(i);
      }
    }
    return *p0_secants_;
  }
  const std::vector<std::size_t>& p0_secants_through(PointRank r) {
    p0_secants();
    static const std::vector<std::size_t> none;
    const auto it = through_.find(r);
    return it == through_.end() ? none : it->second;
  }

  bool blocking() {
    if (!blocking_) blocking_ = k_valid() && is_k_blocking(b_, k_).blocking;
    return *blocking_;
  }
  std::uint32_t exponent_value() {
    if (!exponent_) exponent_ = blocking() ? exponent_from_spectrum(spec(n_ - k_), p_, t_) : 0;
    return *exponent_;
  }
  bool small() { return k_valid() && smallness(b_, k_); }
  bool minimal() {
    if (!minimal_) minimal_ = blocking() && is_minimal(b_, k_).minimal;
    return *minimal_;
  }
  bool nontrivial() {
    if (!nontrivial_) nontrivial_ = k_valid() && !find_contained_subspace(b_, k_).has_value();
    return *nontrivial_;
  }
  bool exp_match() {
    const auto e = exponent_value();
    if (e == 0) return false;
    std::uint64_t pe = 1;
    for (std::uint32_t i = 0; i < e; ++i) pe *= p_;
    return pe == p0_;
  }
  bool one_mod_p0() { return blocking() && p0_ > 1 && one_mod_spectrum(spec(n_ - k_), p0_); }
  bool main_hypotheses() { return blocking() && small() && minimal() && exp_match() && p0_ >= 7; }

  bool flag(const std::string& name) {
    if (name == "blocking") return blocking();
    if (name == "small") return small();
    if (name == "minimal") return minimal();
    if (name == "nontrivial") return nontrivial();
    if (name == "exponent e >= 1") return exponent_value() >= 1;
    if (name == "p^e = p0 for the exponent e") return exp_match();
    if (name == "p0 >= 7") return p0_ >= 7;
    if (name == "k = 1") return k_ == 1;
    if (name == "k > 1") return k_ > 1;
    if (name == "n = 2") return n_ == 2;
    if (name == "n >= 2k+1") return n_ >= 2 * k_ + 1;
    if (name == "k <= n-2") return k_ >= 1 && k_ <= n_ - 2;
    if (name == "(n-k)-spaces meet B in 1 mod p0 points") return one_mod_p0();
    if (name == "linear witness recorded") return in_.witness.has_value();
    if (name == "claimed linear") return in_.meta.claims_linear;
    if (name == "claimed linear, or within the main hypotheses") {
      return in_.meta.claims_linear || main_hypotheses();
    }
    // Hypothesis (H): smaller blocking dimensions are linear. It cannot be
    // checked on one instance, so it is recorded as assumed.
    if (name == "(H) assumed") return true;
    throw Error(ErrorCode::BadParams, "unknown hypothesis " + name);
  }

 private:
  const Instance& in_;
  const PointSet& b_;
  const ProjectiveSpace& space_;
  int n_ = 0;
  int k_ = 0;
  std::uint32_t p_ = 0;
  std::uint32_t t_ = 0;
  std::uint64_t q_ = 0;
  std::uint64_t p0_ = 0;
  std::uint32_t h_ = 0;
  SpreadPtr spread_;
  std::map<int, IntersectionSpectrum> spectra_;
  std::optional<SecantLines> secants_;
  std::optional<std::vector<std::size_t>> p0_secants_;
  std::map<PointRank, std::vector<std::size_t>> through_;
  std::optional<bool> blocking_;
  std::optional<std::uint32_t> exponent_;
  std::optional<bool> minimal_;
  std::optional<bool> nontrivial_;
};

LemmaCheck start(Ctx& c, const std::string& id, std::initializer_list<const char*> hyps, const std::string& relation) {
  LemmaCheck out;
  out.instance = c.in().name;
  out.id = id;
  out.relation = relation;
  out.hypotheses_met = true;
  for (const char* h : hyps) {
    const bool met = c.flag(h);
    out.hypotheses.push_back({h, met});
    out.hypotheses_met = out.hypotheses_met && met;
  }
  return out;
}

void settle(LemmaCheck& c, Json witness = nullptr) {
  const bool ok = compare(c.observed, c.relation, c.bound);
  if (c.hypotheses_met) {
    c.verdict = ok ? Verdict::Holds : Verdict::Violated;
  } else {
    c.verdict = Verdict::NotApplicable;
    c.exploratory = ok;
  }
  if (!ok) {
    if (witness.is_null()) witness = Json::object();
    witness["instance"] = c.instance;
    c.witness = std::move(witness);
  }
}

// The check cannot be evaluated at all on this instance.
void skip(LemmaCheck& c, const std::string& why) {
  c.verdict = Verdict::NotApplicable;
  c.exploratory.reset();
  c.detail = why;
}

Json points_json(std::span<const PointRank> pts) { return Json(std::vector<PointRank>(pts.begin(), pts.end())); }

std::vector<PointRank> points_in(const PointSet& b, const Subspace& s) {
  std::vector<PointRank> out;
  for (const PointRank r : b.space()->points_of(s)) {
    if (b.contains(r)) out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Maps rows given in the coordinates of h's canonical basis back to the
// ambient space.
Subspace to_global(const ProjectiveSpace& space, const Subspace& h, const Subspace& local) {
  const auto& f = space.field();
  const std::size_t nc = space.coords();
  std::vector<Elem> rows;
  rows.reserve(local.vector_dim() * nc);
  for (std::size_t i = 0; i < local.vector_dim(); ++i) {
    std::vector<Elem> g(nc, 0);
    const auto a = local.row(i);
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (a[j] == 0) continue;
      const auto hr = h.row(j);
      for (std::size_t c = 0; c < nc; ++c) g[c] = f.add(g[c], f.mul(a[j], hr[c]));
    }
    rows.insert(rows.end(), g.begin(), g.end());
  }
  return space.subspace(std::move(rows));
}

// For every hyperplane Pi of one of `spaces` with keep(|Pi cap b|), the
// number of the given spaces containing it.
std::map<Subspace, std::uint32_t> tally_hyperplanes(const PointSet& b, const std::vector<Subspace>& spaces,
                                                    const std::function<bool(std::size_t)>& keep) {
  std::map<Subspace, std::uint32_t> tally;
  for (const auto& h : spaces) {
    const PointSet local = restrict_to(b, h);
    local.space()->for_each_subspace(h.dim() - 1, [&](const Subspace& s) {
      if (keep(local.count_in(s))) ++tally[to_global(*b.space(), h, s)];
      return true;
    });
  }
  return tally;
}

std::vector<Subspace> large_spaces(const PointSet& b, int dim, const Rational& small_bound) {
  std::vector<Subspace> out;
  const std::size_t min_count = count_at_least(small_bound);
  if (min_count > b.size()) return out;
  for (auto& [s, count] : subspaces_meeting(b, dim, std::max<std::size_t>(min_count, 1))) {
    (void)count;
    out.push_back(std::move(s));
  }
  return out;
}

// Largest number of large (n-k+1)-spaces through an (n-k)-space meeting b in
// exactly `meet` points.
void check_large_through(Ctx& c, LemmaCheck& out, std::size_t meet) {
  const int dim = c.n() - c.k() + 1;
  if (dim > c.n()) {
    skip(out, "no (n-k+1)-spaces");
    return;
  }
  const auto large = large_spaces(c.b(), dim, small_threshold(c.p0(), c.h(), 1));
  const auto tally = tally_hyperplanes(c.b(), large, [&](std::size_t count) { return count == meet; });
  const Subspace* worst = nullptr;
  std::uint32_t most = 0;
  for (const auto& [pi, count] : tally) {
    if (count > most) {
      most = count;
      worst = &pi;
    }
  }
  out.observed = R(most);
  std::ostringstream d;
  d << large.size() << " large (n-k+1)-spaces; " << tally.size() << " (n-k)-spaces meeting B in " << meet
    << " points lie in one";
  out.detail = d.str();
  Json w;
  if (worst) {
    w["pi"] = io::subspace_to_json(*worst);
    w["pi_points"] = points_json(points_in(c.b(), *worst));
    Json hs = Json::array();
    for (const auto& h : large) {
      if (h.contains(c.space().field(), *worst)) {
        hs.push_back({{"space", io::subspace_to_json(h)}, {"count", c.b().count_in(h)}});
      }
    }
    w["large_spaces"] = std::move(hs);
  }
  settle(out, std::move(w));
}

// ---------------------------------------------------------------------------
// Individual checks.

LemmaCheck szonyi_i(Ctx& c) {
  auto out = start(c, "szonyi_i", {"blocking", "small", "minimal"}, "==");
  out.bound = 0;
  std::uint64_t bad = 0;
  Json w;
  std::ostringstream d;
  d << "subspaces meeting B in neither 0 nor 1 mod p points, dims 1.." << c.n() - 1;
  for (int dim = 1; dim <= c.n() - 1; ++dim) {
    for (const auto& [i, count] : c.spec(dim).x) {
      if (i == 0 || i % c.p() == 1 % c.p()) continue;
      if (w.is_null()) {
        const auto s = find_subspace_with_count(c.b(), dim, i);
        w["dim"] = dim;
        w["count"] = i;
        if (s) w["subspace"] = io::subspace_to_json(*s);
      }
      bad += count;
    }
  }
  out.detail = d.str();
  out.observed = R(bad);
  settle(out, std::move(w));
  return out;
}

LemmaCheck szonyi_iii(Ctx& c) {
  auto out = start(c, "szonyi_iii", {"blocking", "small", "minimal", "k <= n-2"}, "==");
  out.bound = 1;
  if (!(c.k() >= 1 && c.k() <= c.n() - 2)) {
    skip(out, "the image would not be a k-blocking set of a smaller space");
    return out;
  }
  const auto pc = projection_check(c.b(), c.k());
  out.observed = pc.ok() ? 1 : 0;
  std::ostringstream d;
  d << "image of " << pc.image_size << " points; blocking " << pc.blocking << ", small " << pc.small << ", minimal "
    << pc.minimal << (pc.off_secants ? ", centre off all secants" : ", centre on a secant");
  out.detail = d.str();
  Json w;
  if (pc.center) w["center"] = *pc.center;
  if (pc.hyperplane) w["hyperplane"] = io::subspace_to_json(*pc.hyperplane);
  w["image_size"] = pc.image_size;
  settle(out, std::move(w));
  return out;
}

LemmaCheck rechte1modp(Ctx& c) {
  auto out = start(c, "rechte1modp", {"blocking", "small", "minimal", "exponent e >= 1"}, "==");
  out.bound = 0;
  const std::uint32_t e = c.exponent_value();
  std::uint64_t m = 1;
  for (std::uint32_t i = 0; i < e; ++i) m *= c.p();
  std::uint64_t bad = 0;
  std::optional<std::uint64_t> first;
  for (const auto& [i, count] : c.spec(1).x) {
    if (i == 0 || i % m == 1 % m) continue;
    if (!first) first = i;
    bad += count;
  }
  out.observed = R(bad);
  out.detail = "lines meeting B in neither 0 nor 1 mod p^e points, e = " + std::to_string(e);
  Json w;
  if (first) {
    w["count"] = *first;
    if (const auto s = find_subspace_with_count(c.b(), 1, *first)) w["line"] = io::subspace_to_json(*s);
  }
  settle(out, std::move(w));
  return out;
}

LemmaCheck size_bound(Ctx& c, const std::string& id) {
  auto out = start(c, id, {"blocking", "nontrivial", "exponent e >= 1"}, ">=");
  const std::uint32_t e = c.exponent_value();
  out.observed = R(c.b().size());
  if (e == 0) {
    skip(out, "B has no exponent");
    return out;
  }
  const std::int64_t tk = static_cast<std::int64_t>(c.t()) * c.k();
  if (id == "grootte_bound") {
    out.bound = rpow(c.p(), tk) + rpow(c.p(), tk - e) - rpow(c.p(), tk - 2 * static_cast<std::int64_t>(e));
  } else {
    const Rational pe = rpow(c.p(), e);
    const Rational inner = (rpow(c.p(), tk) / pe + 1) / (pe + 1);
    out.bound = rpow(c.p(), tk) + 1 + pe * Rational(ceil(inner));
  }
  out.detail = "|B| against the lower bound, e = " + std::to_string(e);
  settle(out, Json{{"size", c.b().size()}});
  return out;
}

LemmaCheck groottes_gap(Ctx& c) {
  auto out = start(c, "groottes_gap", {"p0 >= 7", "(n-k)-spaces meet B in 1 mod p0 points"}, "==");
  out.bound = 0;
  if (c.h() == 0 || !c.k_valid()) {
    skip(out, "p0 is not the order of a subfield");
    return out;
  }
  std::uint64_t gaps = 0;
  Json w;
  std::ostringstream d;
  for (int s = 0; s < c.k(); ++s) {
    const int dim = c.n() - c.k() + s;
    const Rational lo = small_threshold(c.p0(), c.h(), s);
    const Rational hi = large_threshold(c.p0(), c.h(), s);
    std::uint64_t here = 0;
    for (const auto& [i, count] : c.spec(dim).x) {
      if (R(i) < lo || R(i) > hi) continue;
      here += count;
      if (w.is_null()) {
        w["s"] = s;
        w["count"] = i;
        if (const auto sub = find_subspace_with_count(c.b(), dim, i)) w["subspace"] = io::subspace_to_json(*sub);
      }
    }
    d << "s=" << s << ": " << here << " in the gap; ";
    gaps += here;
  }
  const Rational top = small_threshold(c.p0(), c.h(), c.k());
  const bool size_ok = R(c.b().size()) < top;
  if (!size_ok) {
    ++gaps;
    if (w.is_null()) w["size"] = c.b().size();
  }
  d << "|B| = " << c.b().size() << " against " << to_string(top);
  out.detail = d.str();
  out.observed = R(gaps);
  settle(out, std::move(w));
  return out;
}

LemmaCheck e_tangent(Ctx& c) {
  auto out = start(c, "e_tangent", {"blocking", "small", "minimal"}, "==");
  out.bound = 0;
  const auto& s = c.secants();
  std::set<std::size_t> sizes_done;
  std::uint64_t failures = 0;
  std::uint64_t tried = 0;
  Json w;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const std::size_t size = s.members(i).size();
    if (size >= c.q() + 1 || !sizes_done.insert(size).second) continue;
    const Subspace l = s.line(c.space(), i);
    for (int dim = 1; dim <= c.n() - c.k(); ++dim) {
      ++tried;
      try {
        tangent_extension(c.b(), c.k(), l, dim);
      } catch (const Error& err) {
        if (err.code() != ErrorCode::NotFound) throw;
        ++failures;
        if (w.is_null()) {
          w["line"] = io::subspace_to_json(l);
          w["dim"] = dim;
        }
      }
    }
  }
  out.observed = R(failures);
  out.detail = std::to_string(tried) + " (line, dimension) pairs, one line per secant size";
  settle(out, std::move(w));
  return out;
}

LemmaCheck sziklai_i(Ctx& c) {
  auto out = start(c, "sziklai_i", {"n = 2", "k = 1", "blocking", "small", "minimal", "p^e = p0 for the exponent e"},
                   ">=");
  const Rational kappa = R(c.b().size()) - R(c.q());
  out.bound = R(c.q()) / R(c.p0()) - 3 * (kappa - 1) / R(c.p0()) + 2;
  std::optional<std::size_t> least;
  PointRank at = 0;
  std::map<PointRank, std::size_t> per_point;
  for (const auto i : c.p0_secants()) {
    for (const PointRank r : c.secants().members(i)) ++per_point[r];
  }
  for (const auto& [r, count] : per_point) {
    if (!least || count < *least) {
      least = count;
      at = r;
    }
  }
  if (!least) {
    out.observed = out.bound;
    out.detail = "vacuous: no point lies on a (p0+1)-secant";
  } else {
    out.observed = R(*least);
    out.detail = "fewest (p0+1)-secants through a point on one";
  }
  settle(out, Json{{"point", at}});
  return out;
}

LemmaCheck subline_thm(Ctx& c) {
  auto out = start(c, "subline_thm", {"linear witness recorded"}, "==");
  out.bound = 0;
  if (!c.in().witness) {
    skip(out, "no linear witness");
    return out;
  }
  const auto rep = subline_meet_check(*c.in().witness);
  out.observed = R(rep.violations.size());
  std::ostringstream d;
  d << "rank " << rep.rank << "; " << rep.sublines << " sublines on " << rep.lines << " secant lines; sizes";
  for (const auto& [size, count] : rep.sizes) d << " " << size << ":" << count;
  out.detail = d.str();
  Json w;
  if (!rep.violations.empty()) w["subline"] = points_json(rep.violations.front());
  settle(out, std::move(w));
  return out;
}

LemmaCheck lemma6_nonsecant(Ctx& c) {
  auto out = start(
      c, "lemma6_nonsecant",
      {"blocking", "small", "minimal", "p^e = p0 for the exponent e", "p0 >= 7", "n >= 2k+1"}, ">=");
  if (c.h() == 0) {
    skip(out, "p0 is not the order of a subfield");
    return out;
  }
  const std::int64_t h = c.h();
  const std::int64_t hk = h * c.k();
  const std::uint64_t p0 = c.p0();
  const Rational tail = (rpow(p0, 2 * hk - 2) + 2 * rpow(p0, 2 * hk - 3)) * (rpow(p0, h) + 1) + rpow(p0, hk) +
                        rpow(p0, hk - 1) + rpow(p0, hk - 2) + 3 * rpow(p0, hk - 3);
  const Rational top = rpow(p0, h * (c.n() + 1)) - 1;
  out.bound = top / (rpow(p0, h) + 1) - tail;
  out.sharp_bound = top / (rpow(p0, h) - 1) - tail;
  const auto rep = secant_analysis(c.b(), c.k(), c.p0());
  out.observed = R(rep.points_off_secants);
  const Rational hyperplane_points = (R(c.q()) == 1) ? Rational(0) : (rpow(c.q(), c.n()) - 1) / (R(c.q()) - 1);
  out.detail = "points outside B on no secant; PG(n-1,q) has " + to_string(hyperplane_points) + " points";
  settle(out, Json{{"points_off_secants", rep.points_off_secants}});
  // The second claim: the count also exceeds |PG(n-1,q)|.
  if (out.observed <= hyperplane_points) {
    if (out.hypotheses_met) {
      out.verdict = Verdict::Violated;
    } else {
      out.exploratory = false;
    }
    if (out.witness.is_null()) out.witness = Json{{"instance", out.instance}};
    out.witness["hyperplane_points"] = to_string(hyperplane_points);
  }
  return out;
}

LemmaCheck fewest_secants(Ctx& c, const std::string& id) {
  const bool k1 = id == "lemma1_secants";
  auto out = k1 ? start(c, id, {"k = 1", "blocking", "small", "minimal", "p^e = p0 for the exponent e", "p0 >= 7"}, ">=")
                : start(c, id, {"k > 1", "blocking", "small", "minimal", "p^e = p0 for the exponent e", "p0 >= 7"}, ">=");
  if (c.h() == 0) {
    skip(out, "p0 is not the order of a subfield");
    return out;
  }
  out.bound = secant_count_bound(c.p0(), c.h(), k1 ? 1 : c.k());
  std::map<PointRank, std::size_t> per_point;
  for (const auto i : c.p0_secants()) {
    for (const PointRank r : c.secants().members(i)) ++per_point[r];
  }
  std::optional<std::size_t> least;
  PointRank at = 0;
  for (const auto& [r, count] : per_point) {
    if (!least || count < *least) {
      least = count;
      at = r;
    }
  }
  if (!least) {
    out.observed = out.bound;
    out.detail = "vacuous: no point lies on a (p0+1)-secant";
  } else {
    out.observed = R(*least);
    out.detail = "fewest (p0+1)-secants through a point on one, over " + std::to_string(per_point.size()) + " points";
  }
  settle(out, Json{{"point", at}});
  return out;
}

LemmaCheck large_count(Ctx& c) {
  auto out = start(c, "large_count",
                   {"k > 1", "blocking", "small", "minimal", "p^e = p0 for the exponent e", "p0 >= 7"}, "<=");
  if (c.h() == 0 || !c.k_valid()) {
    skip(out, "p0 is not the order of a subfield");
    return out;
  }
  const std::int64_t hk = static_cast<std::int64_t>(c.h()) * c.k();
  out.bound = 3 * rpow(c.p0(), hk - c.h() - 3);
  check_large_through(c, out, c.p0() + 1);
  return out;
}

LemmaCheck hypervlakken_i(Ctx& c) {
  auto out = start(c, "hypervlakken_i",
                   {"k > 1", "blocking", "small", "minimal", "p^e = p0 for the exponent e", "p0 >= 7"}, "<=");
  if (c.h() == 0 || !c.k_valid()) {
    skip(out, "p0 is not the order of a subfield");
    return out;
  }
  const std::int64_t e = static_cast<std::int64_t>(c.h()) * c.k() - c.h();
  out.bound = rpow(c.p0(), e - 2) + 4 * rpow(c.p0(), e - 3) - 1;
  check_large_through(c, out, 1);
  return out;
}

LemmaCheck pplus1k(Ctx& c) {
  auto out = start(c, "pplus1k", {"blocking", "small", "minimal", "p^e = p0 for the exponent e", "p0 >= 7"}, "==");
  out.bound = 0;
  if (!c.spread()) {
    skip(out, "p0 is not the order of a subfield");
    return out;
  }
  const auto rep = secant_linearity_check(c.b(), c.k(), *c.spread(), c.main_hypotheses());
  out.observed = R(rep.failures.size());
  out.detail = std::to_string(rep.secants) + " (p0+1)-secants, each trace tested for being a subline";
  Json w;
  if (!rep.failures.empty()) w["trace"] = points_json(rep.failures.front());
  settle(out, std::move(w));
  return out;
}

// Search for P on a (p0+1)-secant and a tangent (n-k)-space Pi at P with
// many small (n-k+1)-spaces through Pi holding a (p0+1)-secant through P.
// Points are tried in ascending rank, tangent spaces in enumeration order.
LemmaCheck situatie(Ctx& c) {
  auto out = start(c, "situatie",
                   {"nontrivial", "k > 1", "blocking", "small", "minimal", "p^e = p0 for the exponent e", "p0 >= 7"},
                   ">=");
  if (c.h() == 0 || !c.k_valid()) {
    skip(out, "p0 is not the order of a subfield");
    return out;
  }
  const std::int64_t e = static_cast<std::int64_t>(c.h()) * c.k() - c.h();
  out.bound = rpow(c.p0(), e) - 5 * rpow(c.p0(), e - 1);
  const Rational small_bound = small_threshold(c.p0(), c.h(), 1);
  const auto& space = c.space();
  const int pi_dim = c.n() - c.k();

  std::set<PointRank> candidates;
  for (const auto i : c.p0_secants()) {
    for (const PointRank r : c.secants().members(i)) candidates.insert(r);
  }
  std::int64_t best = -1;
  Json w;
  std::uint64_t tangents = 0;
  bool found = false;
  for (const PointRank p : candidates) {
    const Subspace at = space.span_points(std::span<const PointRank>(&p, 1));
    std::vector<PointRank> partners;
    for (const auto i : c.p0_secants_through(p)) {
      for (const PointRank r : c.secants().members(i)) {
        if (r != p) {
          partners.push_back(r);
          break;
        }
      }
    }
    space.for_each_subspace_through(at, pi_dim, [&](const Subspace& pi) {
      if (c.b().count_in(pi) != 1) return true;
      ++tangents;
      std::int64_t good = 0;
      if (pi_dim + 1 <= c.n()) {
        space.for_each_subspace_through(pi, pi_dim + 1, [&](const Subspace& h) {
          if (!(R(c.b().count_in(h)) < small_bound)) return true;
          for (const PointRank r : partners) {
            if (space.contains(h, r)) {
              ++good;
              break;
            }
          }
          return true;
        });
      }
      if (good > best) {
        best = good;
        w = Json{{"point", p}, {"pi", io::subspace_to_json(pi)}, {"spaces", good}};
      }
      if (R(static_cast<std::uint64_t>(good)) >= out.bound) {
        found = true;
        return false;
      }
      return true;
    });
    if (found) break;
  }
  if (best < 0) {
    out.observed = 0;
    out.detail = "no tangent (n-k)-space at a point on a (p0+1)-secant";
  } else {
    out.observed = R(static_cast<std::uint64_t>(best));
    out.detail = "best configuration after " + std::to_string(tangents) + " tangent spaces";
  }
  if (best < 0 && out.bound <= 0) out.observed = out.bound;
  settle(out, std::move(w));
  return out;
}

LemmaCheck handig_i(Ctx& c) {
  auto out = start(c, "handig_i",
                   {"nontrivial", "k > 1", "blocking", "small", "minimal", "p^e = p0 for the exponent e", "p0 >= 7",
                    "(H) assumed"},
                   "<=");
  if (c.h() == 0 || !c.k_valid()) {
    skip(out, "p0 is not the order of a subfield");
    return out;
  }
  if (c.k() < 2) {
    skip(out, "no s with 1 <= s < k");
    return out;
  }
  std::ostringstream d;
  bool set = false;
  for (int s = 1; s < c.k(); ++s) {
    const Rational lo = small_threshold(c.p0(), c.h(), s);
    const Rational bound = (rpow(c.p0(), static_cast<std::int64_t>(c.h()) * s + 1) - 1) / (R(c.p0()) - 1);
    std::uint64_t most = 0;
    for (const auto& [i, count] : c.spec(c.n() - c.k() + s).x) {
      (void)count;
      if (R(i) < lo) most = std::max(most, i);
    }
    d << "s=" << s << ": largest small intersection " << most << " against " << to_string(bound) << "; ";
    if (!set || R(most) > bound) {
      out.bound = bound;
      out.observed = R(most);
      set = R(most) > bound;
    }
  }
  out.detail = d.str();
  settle(out, Json::object());
  return out;
}

LemmaCheck handig_iv(Ctx& c) {
  auto out = start(c, "handig_iv",
                   {"nontrivial", "k > 1", "blocking", "small", "minimal", "p^e = p0 for the exponent e", "p0 >= 7",
                    "(H) assumed"},
                   "<=");
  if (c.h() == 0 || !c.k_valid()) {
    skip(out, "p0 is not the order of a subfield");
    return out;
  }
  out.bound = 4 * rpow(c.p0(), static_cast<std::int64_t>(c.h()) - 3);
  if (c.k() < 2) {
    skip(out, "no small (n-2)-space in the sense of the gap for k = 1");
    return out;
  }
  const Rational lo = small_threshold(c.p0(), c.h(), c.k() - 2);
  if (lo <= R(c.p0() + 1)) {
    out.observed = 0;
    out.detail = "vacuous: a small (n-2)-space meets B in fewer than " + to_string(lo) +
                 " points, so it holds no (p0+1)-secant";
    settle(out);
    return out;
  }
  const auto large = large_spaces(c.b(), c.n() - 1, small_threshold(c.p0(), c.h(), c.k() - 1));
  const auto tally = tally_hyperplanes(c.b(), large, [&](std::size_t count) { return R(count) < lo && count > c.p0(); });
  std::uint32_t most = 0;
  const Subspace* worst = nullptr;
  for (const auto& [pi, count] : tally) {
    bool has_secant = false;
    for (const auto i : c.p0_secants()) {
      const auto m = c.secants().members(i);
      if (c.space().contains(pi, m[0]) && c.space().contains(pi, m[1])) {
        has_secant = true;
        break;
      }
    }
    if (has_secant && count > most) {
      most = count;
      worst = &pi;
    }
  }
  out.observed = R(most);
  out.detail = std::to_string(large.size()) + " large (n-1)-spaces";
  Json w;
  if (worst) w["pi"] = io::subspace_to_json(*worst);
  settle(out, std::move(w));
  return out;
}

LemmaCheck ess_subset(Ctx& c) {
  auto out = start(c, "ess_subset",
                   {"nontrivial", "k > 1", "blocking", "small", "minimal", "p^e = p0 for the exponent e", "p0 >= 7",
                    "(H) assumed"},
                   "==");
  out.bound = 0;
  if (!c.spread() || !c.k_valid() || !c.blocking()) {
    skip(out, c.spread() ? "B is not k-blocking" : "p0 is not the order of a subfield");
    return out;
  }
  const auto& ctx = *c.spread();
  const auto& space = c.space();
  std::optional<PointRank> p;
  for (const auto i : c.p0_secants()) {
    const PointRank r = c.secants().members(i)[0];
    if (!p || r < *p) p = r;
  }
  if (!p) {
    skip(out, "no (p0+1)-secant");
    return out;
  }
  const auto tangent = find_tangent_space(c.b(), *p, c.n() - c.k());
  if (!tangent) {
    skip(out, "no tangent (n-k)-space at P");
    return out;
  }
  const PointRank x = ctx.element_points(*p).front();
  const int hdim = c.n() - c.k() + 1;
  std::vector<Subspace> pis;
  std::uint64_t spaces = 0;
  if (hdim <= c.n()) {
    space.for_each_subspace_through(*tangent, hdim, [&](const Subspace& h) {
      ++spaces;
      std::vector<Subspace> transversals;
      for (const auto i : c.p0_secants_through(*p)) {
        const auto m = c.secants().members(i);
        bool inside = true;
        for (const PointRank r : m) inside = inside && space.contains(h, r);
        if (!inside) continue;
        try {
          transversals.push_back(ctx.transversal_line(m, x));
        } catch (const Error& e) {
          if (e.code() != ErrorCode::NotASubline) throw;
        }
      }
      if (transversals.empty()) return true;
      const Subspace pi = ctx.small()->span(transversals);
      if (pi.dim() != static_cast<int>(c.h())) return true;
      if (ctx.linear_set_ranks(pi) != points_in(c.b(), h)) return true;
      pis.push_back(pi);
      return true;
    });
  }
  std::uint64_t pairs = 0;
  std::uint64_t failing = 0;
  Json w;
  for (std::size_t i = 0; i < pis.size(); ++i) {
    for (std::size_t j = i + 1; j < pis.size(); ++j) {
      ++pairs;
      const auto img = ctx.linear_set_ranks(ctx.small()->span(pis[i], pis[j]));
      std::optional<PointRank> outside;
      for (const PointRank r : img) {
        if (!c.b().contains(r)) {
          outside = r;
          break;
        }
      }
      if (outside) {
        ++failing;
        if (w.is_null()) {
          w = Json{{"point", *p},
                   {"x", x},
                   {"pi_1", io::subspace_to_json(pis[i])},
                   {"pi_2", io::subspace_to_json(pis[j])},
                   {"outside", *outside}};
        }
      }
    }
  }
  out.observed = R(failing);
  out.detail = std::to_string(pis.size()) + " of " + std::to_string(spaces) +
               " (n-k+1)-spaces through the tangent space are B(pi) with pi an h-space through x; " +
               std::to_string(pairs) + " pairs";
  settle(out, std::move(w));
  return out;
}

LemmaCheck reconstruct_check(Ctx& c) {
  auto out = start(c, "reconstruct", {"nontrivial", "claimed linear, or within the main hypotheses"}, "==");
  out.bound = 1;
  if (!c.spread() || !c.k_valid()) {
    skip(out, "p0 is not the order of a subfield");
    return out;
  }
  Json w;
  try {
    const auto res = reconstruct(c.b(), c.k(), *c.spread(), PointPolicy::First, false);
    const auto& r = res.front();
    out.observed = r.success() ? 1 : 0;
    out.detail = "status " + to_string(r.status) + ", dim W " + std::to_string(r.dim_w) + " of " +
                 std::to_string(r.expected_dim) + ", " + std::to_string(r.secants_used.size()) + " secants used";
    w = io::reconstruction_to_json(r);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::BadParams) {
      skip(out, e.detail());
      return out;
    }
    if (e.code() != ErrorCode::NoSublineSecant) throw;
    out.observed = 0;
    out.detail = std::string(to_string(e.code())) + ": " + e.detail();
    w = Json{{"error", std::string(to_string(e.code()))}};
  }
  settle(out, std::move(w));
  return out;
}

LemmaCheck linearity_claim(Ctx& c) {
  auto out = start(c, "linearity_claim", {"claimed linear"}, "==");
  out.bound = 1;
  if (!c.spread()) {
    skip(out, "p0 is not the order of a subfield");
    return out;
  }
  Json w;
  bool witness_ok = true;
  if (c.in().witness) {
    witness_ok = c.in().witness->points == c.b();
    if (!witness_ok) {
      std::vector<PointRank> diff;
      std::set_symmetric_difference(c.in().witness->points.ranks().begin(), c.in().witness->points.ranks().end(),
                                    c.b().ranks().begin(), c.b().ranks().end(), std::back_inserter(diff));
      w["witness_mismatch"] = diff;
    }
  }
  try {
    // The rank cap only holds for non-trivial sets; a k-space needs rank h(k+1).
    const auto res = is_linear(c.b(), c.spread(), LinearityStrategy::ReconstructFirst, c.nontrivial() ? c.k() : 0);
    out.observed = (res.linear && witness_ok) ? 1 : 0;
    out.detail = (res.linear ? "linear via " : "not linear: ") + (res.linear ? res.method : res.certificate);
    if (!res.linear) w["search"] = io::linearity_to_json(res);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::TooLarge) throw;
    skip(out, "inconclusive: " + e.detail());
    return out;
  }
  if (out.observed != 1) {
    for (std::size_t i = 0; i < c.secants().size(); ++i) {
      const auto m = c.secants().members(i);
      if (m.size() == c.p0() + 2) {
        w["line_with_p0_plus_2_points"] = points_json(m);
        break;
      }
    }
  }
  settle(out, std::move(w));
  return out;
}

using CheckFn = LemmaCheck (*)(Ctx&);

const std::vector<std::pair<std::string, CheckFn>>& registry() {
  static const std::vector<std::pair<std::string, CheckFn>> r = {
      {"szonyi_i", szonyi_i},
      {"szonyi_iii", szonyi_iii},
      {"rechte1modp", rechte1modp},
      {"grootte_bound", [](Ctx& c) { return size_bound(c, "grootte_bound"); }},
      {"szonyi_iv", [](Ctx& c) { return size_bound(c, "szonyi_iv"); }},
      {"groottes_gap", groottes_gap},
      {"e_tangent", e_tangent},
      {"sziklai_i", sziklai_i},
      {"subline_thm", subline_thm},
      {"lemma6_nonsecant", lemma6_nonsecant},
      {"lemma1_secants", [](Ctx& c) { return fewest_secants(c, "lemma1_secants"); }},
      {"large_count", large_count},
      {"aantalsecanten", [](Ctx& c) { return fewest_secants(c, "aantalsecanten"); }},
      {"pplus1k", pplus1k},
      {"hypervlakken_i", hypervlakken_i},
      {"situatie", situatie},
      {"handig_i", handig_i},
      {"handig_iv", handig_iv},
      {"ess_subset", ess_subset},
      {"reconstruct", reconstruct_check},
      {"linearity_claim", linearity_claim},
  };
  return r;
}

InstanceFacts facts_of(Ctx& c) {
  InstanceFacts f;
  f.name = c.in().name;
  f.family = c.in().meta.family;
  f.space = "PG(" + std::to_string(c.n()) + "," + std::to_string(c.q()) + ")";
  f.k = c.k();
  f.p0 = static_cast<std::uint32_t>(c.p0());
  f.size = c.b().size();
  f.blocking = c.blocking();
  f.small = c.small();
  f.minimal = c.minimal();
  f.exponent = c.exponent_value();
  f.nontrivial = c.nontrivial();
  f.redei = f.minimal && is_redei(c.b(), c.k()).redei;
  f.one_mod_p0 = c.one_mod_p0();
  f.claims_linear = c.in().meta.claims_linear;
  f.main_hypotheses = c.main_hypotheses();
  return f;
}

Json facts_json(const InstanceFacts& f) {
  return Json{{"name", f.name},
              {"family", f.family},
              {"space", f.space},
              {"k", f.k},
              {"p0", f.p0},
              {"size", f.size},
              {"blocking", f.blocking},
              {"small", f.small},
              {"minimal", f.minimal},
              {"exponent", f.exponent},
              {"nontrivial", f.nontrivial},
              {"redei", f.redei},
              {"one_mod_p0", f.one_mod_p0},
              {"claims_linear", f.claims_linear},
              {"main_hypotheses", f.main_hypotheses}};
}

Json check_json(const LemmaCheck& c) {
  Json hyps = Json::array();
  for (const auto& h : c.hypotheses) hyps.push_back({{"name", h.name}, {"met", h.met}});
  Json j{{"instance", c.instance},
         {"id", c.id},
         {"hypotheses", std::move(hyps)},
         {"hypotheses_met", c.hypotheses_met},
         {"relation", c.relation},
         {"bound", io::rational_to_json(c.bound)},
         {"observed", io::rational_to_json(c.observed)},
         {"verdict", to_string(c.verdict)},
         {"detail", c.detail}};
  if (c.sharp_bound) j["sharp_bound"] = io::rational_to_json(*c.sharp_bound);
  if (c.exploratory) j["exploratory"] = *c.exploratory ? "holds" : "fails";
  if (!c.witness.is_null()) j["witness"] = c.witness;
  return j;
}

}  // namespace

const std::vector<std::string>& check_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& [id, fn] : registry()) out.push_back(id);
    return out;
  }();
  return ids;
}

SuiteResult run_suite(const std::vector<Instance>& instances, const std::vector<std::string>& ids) {
  std::set<std::string> wanted(ids.begin(), ids.end());
  for (const auto& id : wanted) {
    if (std::find(check_ids().begin(), check_ids().end(), id) == check_ids().end()) {
      throw Error(ErrorCode::BadParams, "unknown check id " + id);
    }
  }
  SuiteResult result;
  for (const auto& in : instances) {
    Ctx ctx(in);
    result.instances.push_back(facts_of(ctx));
    for (const auto& [id, fn] : registry()) {
      if (!wanted.empty() && !wanted.count(id)) continue;
      const auto excluded = in.meta.excluded.find(id);
      if (excluded != in.meta.excluded.end()) {
        LemmaCheck c;
        c.instance = in.name;
        c.id = id;
        c.detail = "excluded: " + excluded->second;
        result.checks.push_back(std::move(c));
        continue;
      }
      try {
        result.checks.push_back(fn(ctx));
      } catch (const Error& e) {
        LemmaCheck c;
        c.instance = in.name;
        c.id = id;
        c.detail = "error: " + std::string(to_string(e.code())) + ": " + e.detail();
        result.checks.push_back(std::move(c));
      }
    }
  }
  return result;
}

io::Json scorecard(const SuiteResult& result) {
  Json instances = Json::array();
  for (const auto& f : result.instances) instances.push_back(facts_json(f));
  Json checks = Json::array();
  std::map<std::string, std::uint64_t> summary{{"holds", 0}, {"violated", 0}, {"not_applicable", 0}};
  for (const auto& c : result.checks) {
    checks.push_back(check_json(c));
    ++summary[to_string(c.verdict)];
  }
  return Json{{"schema", "fingeo-scorecard/1"},
              {"conway_table", conway_table_version()},
              {"instances", std::move(instances)},
              {"checks", std::move(checks)},
              {"summary", summary}};
}

bool any_violated(const SuiteResult& result) {
  return std::any_of(result.checks.begin(), result.checks.end(),
                     [](const LemmaCheck& c) { return c.verdict == Verdict::Violated; });
}

// ---------------------------------------------------------------------------

IdentityValues identity_values(std::uint32_t n, int dim, std::uint64_t q, std::uint64_t size) {
  IdentityValues v;
  v.subspaces = gaussian_binomial(n + 1, dim + 1, q);
  v.incidences = BigInt(size) * gaussian_binomial(n, dim, q);
  v.pair_incidences = dim == 0 ? BigInt(0) : BigInt(size) * BigInt(size == 0 ? 0 : size - 1) * gaussian_binomial(n - 1, dim - 1, q);
  return v;
}

IdentityCheck counting_identities(std::uint32_t p, std::uint32_t t, std::uint32_t n, int dim, std::uint32_t trials,
                                  std::uint64_t seed) {
  const auto space = ProjectiveSpace::make(Field::make(p, t), n);
  std::mt19937_64 gen(seed);
  std::vector<PointRank> all(space->num_points());
  std::iota(all.begin(), all.end(), PointRank{0});
  IdentityCheck out;
  for (std::uint32_t trial = 0; trial < trials; ++trial) {
    const std::size_t m = static_cast<std::size_t>(gen() % (space->num_points() + 1));
    std::shuffle(all.begin(), all.end(), gen);
    std::vector<PointRank> pick(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(m));
    std::sort(pick.begin(), pick.end());
    const PointSet b(space, std::move(pick));
    const auto s = spectrum(b, dim, SpectrumMethod::Enumerate);
    const auto v = identity_values(n, dim, space->field().q(), m);
    ++out.trials;
    if (s.sum() != v.subspaces || s.sum_i() != v.incidences || s.sum_i_i1() != v.pair_incidences) {
      ++out.failures;
      if (out.first_failure.empty()) {
        std::ostringstream d;
        d << "trial " << trial << ", |B| = " << m << ": " << to_string(s.sum()) << "/" << to_string(v.subspaces)
          << ", " << to_string(s.sum_i()) << "/" << to_string(v.incidences) << ", " << to_string(s.sum_i_i1())
          << "/" << to_string(v.pair_incidences);
        out.first_failure = d.str();
      }
    }
  }
  return out;
}

ProjectionCheck projection_check(const PointSet& b, int k) {
  const auto& space = *b.space();
  const int n = static_cast<int>(space.n());
  if (k < 1 || k > n - 2) throw Error(ErrorCode::RangeError, "projection needs 1 <= k <= n-2");
  ProjectionCheck out;
  out.source_size = b.size();
  out.center = point_off_secants(b);
  out.off_secants = out.center.has_value();
  if (!out.center) {
    for (PointRank r = 0; r < space.num_points(); ++r) {
      if (!b.contains(r)) {
        out.center = r;
        break;
      }
    }
  }
  if (!out.center) return out;
  const PointRank q = *out.center;
  space.for_each_subspace(n - 1, [&](const Subspace& h) {
    if (space.contains(h, q)) return true;
    out.hyperplane = h;
    return false;
  });
  const PointSet image = restrict_to(project(b, q, *out.hyperplane), *out.hyperplane);
  out.image_size = image.size();
  out.blocking = is_k_blocking(image, k).blocking;
  out.small = smallness(image, k);
  out.minimal = out.blocking && is_minimal(image, k).minimal;
  return out;
}

// ---------------------------------------------------------------------------
// Catalogue.

io::Json family_params_json(const FamilyParams& f) {
  io::Json j{{"family", f.family}, {"p", f.p}, {"t", f.t}, {"n", f.n}, {"e", f.e}};
  if (f.family == "subgeometry" || f.family == "subspace") j["m"] = f.m;
  if (f.family == "redei_trace") j["k"] = f.k;
  if (f.family == "cone") {
    j["vertex_dim"] = f.vertex_dim;
    j["m"] = f.m;
  }
  if (f.family == "random_rank_r") {
    j["r"] = f.r;
    j["seed"] = f.seed;
  }
  return j;
}

namespace {

CatalogueEntry entry(std::string dir, std::string name, std::string description, FamilyParams f, int k,
                     std::uint32_t p0, bool claims_linear = true) {
  CatalogueEntry e;
  e.dir = std::move(dir);
  e.params = f;
  e.meta.name = std::move(name);
  e.meta.family = f.family;
  e.meta.description = std::move(description);
  e.meta.k = k;
  e.meta.p0 = p0;
  e.meta.claims_linear = claims_linear;
  e.meta.slow = e.dir == "slow";
  if (f.family == "random_rank_r") e.meta.seed = f.seed;
  e.meta.params = family_params_json(f);
  return e;
}

FamilyParams fam(std::string family, std::uint32_t p, std::uint32_t t, std::uint32_t n) {
  FamilyParams f;
  f.family = std::move(family);
  f.p = p;
  f.t = t;
  f.n = n;
  return f;
}

}  // namespace

std::vector<CatalogueEntry> catalogue_entries() {
  std::vector<CatalogueEntry> out;
  {
    auto f = fam("subgeometry", 3, 2, 2);
    f.m = 2;
    out.push_back(entry("", "baer_pg2_9", "Baer subplane PG(2,3) of PG(2,9)", f, 1, 3));
  }
  {
    auto f = fam("random_rank_r", 3, 3, 2);
    f.r = 4;
    f.seed = 1;
    out.push_back(entry("", "rank4_pg2_27", "F_3-linear set of rank 4 in PG(2,27), seed 1", f, 1, 3));
  }
  {
    auto f = fam("subgeometry", 7, 2, 2);
    f.m = 2;
    out.push_back(entry("", "subplane_pg2_49", "Baer subplane PG(2,7) of PG(2,49)", f, 1, 7));
  }
  {
    auto f = fam("subgeometry", 7, 2, 3);
    f.m = 2;
    out.push_back(entry("", "subplane_in_plane_pg3_49", "Baer subplane PG(2,7) inside a plane of PG(3,49)", f, 1, 7));
  }
  {
    auto f = fam("cone", 3, 2, 3);
    f.vertex_dim = 0;
    f.m = 2;
    out.push_back(entry("", "cone_pg3_9", "cone with a point vertex over a Baer subplane, PG(3,9)", f, 2, 3));
  }
  {
    auto f = fam("subspace", 3, 2, 2);
    f.m = 1;
    out.push_back(entry("", "line_pg2_9", "a line of PG(2,9) (trivial blocking set)", f, 1, 3));
  }
  {
    auto f = fam("redei_trace", 3, 3, 2);
    f.k = 1;
    out.push_back(entry("", "redei_trace_pg2_27", "trace-type F_3-linear blocking set in PG(2,27)", f, 1, 3));
  }
  {
    auto f = fam("random_rank_r", 3, 4, 2);
    f.r = 5;
    f.seed = 1;
    auto e = entry("", "nonredei_pg2_81", "F_3-linear set of rank 5 in PG(2,81), seed 1; not of Redei type", f, 1, 3);
    e.meta.excluded["subline_thm"] = "exhaustive subline enumeration over PG(2,81) secants is too slow for the fast tier";
    out.push_back(std::move(e));
  }
  {
    auto f = fam("subgeometry", 3, 2, 2);
    f.m = 2;
    auto e = entry("controls", "mutated_baer_pg2_9",
                   "Baer subplane of PG(2,9) with one point moved onto a 4-secant; claimed linear, which it is not", f,
                   1, 3);
    e.meta.family = "mutated_subgeometry";
    e.mutate = true;
    out.push_back(std::move(e));
  }
  {
    auto f = fam("cone", 7, 2, 3);
    f.vertex_dim = 0;
    f.m = 2;
    auto e = entry("slow", "cone_pg3_49", "cone with a point vertex over a Baer subplane, PG(3,49)", f, 2, 7);
    e.meta.excluded["subline_thm"] = "rank-5 linear set over GF(7): subline enumeration takes hours";
    out.push_back(std::move(e));
  }
  return out;
}

Instance build_catalogue_instance(const CatalogueEntry& e) {
  auto w = build_family(e.params);
  Instance in;
  in.name = e.meta.name;
  in.k = e.meta.k;
  in.p0 = e.meta.p0;
  in.meta = e.meta;
  if (e.mutate) {
    in.points = mutate_off_secant(w.points, e.meta.p0);
  } else {
    in.points = w.points;
    in.meta.witness = io::witness_to_json(w);
    in.witness = std::move(w);
  }
  Ctx c(in);
  in.meta.hypotheses = Json{{"blocking", c.blocking()},
                            {"small", c.small()},
                            {"minimal", c.minimal()},
                            {"exponent", c.exponent_value()},
                            {"nontrivial", c.nontrivial()},
                            {"p0_at_least_7", c.p0() >= 7},
                            {"main_hypotheses", c.main_hypotheses()}};
  return in;
}

void write_catalogue(const std::filesystem::path& dir, bool include_slow) {
  for (const auto& e : catalogue_entries()) {
    if (e.meta.slow && !include_slow) continue;
    const auto sub = e.dir.empty() ? dir : dir / e.dir;
    std::error_code ec;
    std::filesystem::create_directories(sub, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create " + sub.string());
    const auto in = build_catalogue_instance(e);
    io::write_pointset_file(sub / (e.meta.name + ".pts"), in.points);
    io::write_json_file(sub / (e.meta.name + ".meta.json"), io::meta_to_json(in.meta));
  }
}

Instance load_instance(const std::filesystem::path& pts_path) {
  Instance in;
  in.points = io::read_pointset_file(pts_path);
  auto meta_path = pts_path;
  meta_path.replace_extension(".meta.json");
  in.meta = io::read_meta_file(meta_path);
  in.name = in.meta.name;
  in.k = in.meta.k;
  in.p0 = in.meta.p0;
  if (in.meta.witness) in.witness = io::witness_from_json(*in.meta.witness);
  return in;
}

std::vector<Instance> load_catalogue(const std::filesystem::path& dir, bool slow) {
  const auto list = [](const std::filesystem::path& d) {
    std::vector<std::filesystem::path> out;
    if (!std::filesystem::is_directory(d)) return out;
    for (const auto& ent : std::filesystem::directory_iterator(d)) {
      if (ent.is_regular_file() && ent.path().extension() == ".pts") out.push_back(ent.path());
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  if (!std::filesystem::is_directory(dir)) throw Error(ErrorCode::IoError, "no catalogue directory " + dir.string());
  std::vector<Instance> out;
  for (const auto& p : list(dir)) out.push_back(load_instance(p));
  if (slow) {
    for (const auto& p : list(dir / "slow")) out.push_back(load_instance(p));
  }
  return out;
}

PointSet mutate_off_secant(const PointSet& b, std::uint32_t p0) {
  const auto& space = *b.space();
  const auto secants = secant_lines(b);
  for (std::size_t i = 0; i < secants.size(); ++i) {
    const auto m = secants.members(i);
    if (m.size() != p0 + 1) continue;
    const Subspace line = secants.line(space, i);
    std::optional<PointRank> moved;
    for (auto it = b.ranks().rbegin(); it != b.ranks().rend(); ++it) {
      if (!space.contains(line, *it)) {
        moved = *it;
        break;
      }
    }
    std::optional<PointRank> target;
    auto pts = space.points_of(line);
    std::sort(pts.begin(), pts.end());
    for (const PointRank r : pts) {
      if (!b.contains(r)) {
        target = r;
        break;
      }
    }
    if (!moved || !target) continue;
    std::vector<PointRank> out;
    for (const PointRank r : b.ranks()) {
      if (r != *moved) out.push_back(r);
    }
    out.push_back(*target);
    std::sort(out.begin(), out.end());
    return PointSet(b.space(), std::move(out));
  }
  throw Error(ErrorCode::NotFound, "no (p0+1)-secant with a free point and a point of b off it");
}

}  // namespace fingeo
