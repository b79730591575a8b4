// Command-line front end for stabhyp. `dispatch` is kept separate from main()
// so the tests can drive it with captured streams.
#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "stabhyp.hpp"

namespace stabhyp::cli {

using nlohmann::json;

enum ExitCode { ok = 0, property_false = 1, input_error = 2 };

inline constexpr std::size_t default_budget = 200;

/// Budget from STABHYP_BUDGET, or the default.
inline std::size_t env_budget() {
  if (const char* s = std::getenv("STABHYP_BUDGET")) {
    try {
      const long v = std::stol(s);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    throw std::invalid_argument(std::string("STABHYP_BUDGET must be a positive integer, got '") + s + "'");
  }
  return default_budget;
}

// ---- JSON rendering ----

inline json to_json(const Scalar& s) { return s.str(); }

inline json to_json(const Vector& v) {
  json j = json::array();
  for (const auto& e : v.entries()) j.push_back(e.str());
  return j;
}

inline json to_json(const Flat& f) {
  json eqs = json::array();
  for (std::size_t i = 0; i < f.codim(); ++i) eqs.push_back(f.equation(i));
  return {{"codim", f.codim()}, {"equations", eqs}};
}

inline json to_json(const Arrangement& a) {
  json hs = json::array();
  for (const auto& h : a) hs.push_back(h.str());
  return {{"field", a.field().modulus()}, {"dim", a.dim()}, {"hyperplanes", hs}};
}

inline json to_json(const LinearSubspace& w) {
  json basis = json::array();
  for (const auto& b : w.basis()) basis.push_back(to_json(b));
  return {{"dim", w.dim()}, {"basis", basis}};
}

inline json to_json(const FamilyDescriptor& d) {
  json alphas = json::array(), omega = json::array();
  for (const auto& a : d.alphas) alphas.push_back(a.str());
  for (const auto& w : d.omega_prime) omega.push_back(w.str());
  json j = {{"n", d.n}, {"m", d.m}, {"r", d.r()}, {"alphas", alphas}, {"variant", to_string(d.variant)}};
  if (d.n == 2) j["omega_prime"] = omega;
  return j;
}

inline json to_json(const Reduction& r) {
  return {{"i", r.i + 1}, {"j", r.j + 1}, {"a", r.a.str()}, {"b", r.b.str()}};
}

inline json to_json(const CoordTransform& t) {
  json perm = json::array(), scales = json::array(), shifts = json::array();
  for (std::size_t k = 0; k < t.dim(); ++k) {
    perm.push_back(t.perm[k] + 1);
    scales.push_back(t.scales[k].str());
    shifts.push_back(t.shifts[k].str());
  }
  return {{"perm", perm}, {"scales", scales}, {"shifts", shifts}, {"text", t.str()}};
}

inline json to_json(const AffineChange& c) {
  json rows = json::array(), shift = json::array();
  for (std::size_t i = 0; i < c.dim(); ++i) {
    json r = json::array();
    for (const auto& x : c.matrix[i]) r.push_back(x.str());
    rows.push_back(r);
    shift.push_back(c.shift[i].str());
  }
  return {{"matrix", rows}, {"shift", shift}, {"identity", c.is_identity()}};
}

inline json to_json(const FactorVerdict& v) {
  json block = json::array(), reds = json::array();
  for (std::size_t b : v.block) block.push_back(b + 1);
  for (const auto& r : v.reductions) reds.push_back(to_json(r));
  json j = {{"verdict", to_string(v.kind)}, {"block", block}, {"factor", to_json(v.factor)},
            {"reductions", reds},          {"reduced", to_json(v.reduced)}};
  if (v.family) j["family"] = to_json(*v.family);
  if (v.normalization) j["normalization"] = to_json(*v.normalization);
  if (!v.diagnostic.empty()) j["diagnostic"] = v.diagnostic;
  return j;
}

inline json to_json(const ClassificationReport& r) {
  json vs = json::array();
  for (const auto& v : r.verdicts) vs.push_back(to_json(v));
  return {{"coordinates", to_json(r.coordinates)}, {"axis_stable", r.axis_stable}, {"factors", vs}};
}

// ---- text rendering ----

inline std::string join_indices(const std::vector<std::size_t>& xs, std::size_t offset = 1) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + std::to_string(xs[i] + offset);
  return s;
}

inline void print_verdict(std::ostream& out, const FactorVerdict& v) {
  out << "block {" << join_indices(v.block) << "}: " << to_string(v.kind) << "\n";
  for (const auto& r : v.reductions) out << "  reduction: " << r.str() << "\n";
  if (v.family) out << "  family: " << v.family->str() << "\n";
  if (v.normalization) out << "  coordinates: " << v.normalization->str() << "\n";
  if (!v.diagnostic.empty()) out << "  note: " << v.diagnostic << "\n";
}

struct Context {
  std::ostream& out;
  std::ostream& err;
  bool json_out = false;
  std::vector<std::string> warnings;

  void emit(const json& j) const { out << j.dump(2) << "\n"; }
};

inline Arrangement load(Context& ctx, const std::string& path) {
  Arrangement a = read_arrangement_file(path, &ctx.warnings);
  for (const auto& w : ctx.warnings) ctx.err << "warning: " << w << "\n";
  ctx.warnings.clear();
  return a;
}

inline Vector parse_vector(const std::string& text, const Arrangement& a) {
  std::vector<Scalar> v;
  try {
    v = parse_scalar_list(text, a.field());
  } catch (const ParseError& e) {
    throw InputError("--v", 1, e.column(), e.what());
  }
  if (v.size() != a.dim())
    throw InputError("--v", 1, 1,
                     "vector has " + std::to_string(v.size()) + " entries, arrangement lives in C^" +
                         std::to_string(a.dim()));
  try {
    return Vector(std::move(v));
  } catch (const std::invalid_argument& e) {
    throw InputError("--v", 1, 1, e.what());
  }
}

/// `x3=0,x4=1` -> {2: 0, 3: 1}
inline std::map<std::size_t, Scalar> parse_fix(const std::string& text, const Arrangement& a) {
  std::map<std::size_t, Scalar> out;
  for (auto [offset, piece] : split_top_level(text, ',')) {
    const auto eq = piece.find('=');
    if (eq == std::string_view::npos) throw InputError("--fix", 1, offset + 1, "expected x<k>=<value>");
    AffineForm lhs;
    try {
      lhs = parse_affine(piece.substr(0, eq), a.field(), a.dim());
    } catch (const ParseError& e) {
      throw InputError("--fix", 1, offset + e.column(), e.what());
    }
    std::size_t hits = 0, var = 0;
    bool unit = true;
    for (std::size_t k = 0; k < lhs.linear.size(); ++k) {
      if (lhs.linear[k].is_zero()) continue;
      ++hits;
      var = k;
      unit = unit && lhs.linear[k].is_one();
    }
    if (hits != 1 || !unit || !lhs.constant.is_zero())
      throw InputError("--fix", 1, offset + 1, "left side must be a single coordinate x<k>");
    try {
      if (!out.emplace(var, parse_scalar(piece.substr(eq + 1), a.field())).second)
        throw InputError("--fix", 1, offset + 1, "x" + std::to_string(var + 1) + " fixed twice");
    } catch (const ParseError& e) {
      throw InputError("--fix", 1, offset + eq + 1 + e.column(), e.what());
    }
  }
  return out;
}

// ---- subcommands ----

inline int cmd_poset(Context& ctx, const std::string& path) {
  const Arrangement a = load(ctx, path);
  const IntersectionPoset p = build_poset(a);
  if (ctx.json_out) {
    json strata = json::array();
    for (std::size_t k = 0; k < p.levels(); ++k) {
      json level = json::array();
      for (const auto& f : p.stratum(k)) {
        json jf = to_json(f);
        json th = json::array();
        for (std::size_t h : p.through(f)) th.push_back(h + 1);
        jf["through"] = th;
        level.push_back(jf);
      }
      strata.push_back({{"codim", k}, {"flats", level}});
    }
    ctx.emit({{"arrangement", to_json(a)}, {"strata", strata}, {"size", p.size()}});
    return ok;
  }
  for (std::size_t k = 0; k < p.levels(); ++k) {
    ctx.out << "L" << k << " (" << p.stratum(k).size() << ")\n";
    for (const auto& f : p.stratum(k)) ctx.out << "  " << f.str() << "  through: " << join_indices(p.through(f)) << "\n";
  }
  return ok;
}

inline int cmd_convolve(Context& ctx, const std::string& path, const std::string& vtext) {
  const Arrangement a = load(ctx, path);
  const Vector v = parse_vector(vtext, a);
  const Arrangement c = convolution(a, v);
  std::vector<Hyperplane> added(c.hyperplanes().begin() + static_cast<std::ptrdiff_t>(a.size()), c.hyperplanes().end());
  if (ctx.json_out) {
    json j = json::array();
    for (const auto& h : added) j.push_back(h.str());
    ctx.emit({{"vector", to_json(v)}, {"result", to_json(c)}, {"added", j}});
    return ok;
  }
  ctx.out << "field M=" << c.field().modulus() << "\ndim n=" << c.dim() << "\n";
  for (const auto& h : a) ctx.out << h.str() << "\n";
  for (const auto& h : added) ctx.out << h.str() << "  # added\n";
  return ok;
}

inline int cmd_closed(Context& ctx, const std::string& path, const std::string& vtext) {
  const Arrangement a = load(ctx, path);
  const Vector v = parse_vector(vtext, a);
  const ClosednessResult r = is_v_closed(a, v);
  if (ctx.json_out) {
    json j = {{"vector", to_json(v)}, {"closed", r.closed}};
    if (r.witness) {
      j["witness"] = to_json(*r.witness);
      j["cylinder"] = cylinder(v, *r.witness).hyperplane().str();
    }
    ctx.emit(j);
  } else if (r.closed) {
    ctx.out << "closed along " << v.str() << "\n";
  } else {
    ctx.out << "not closed along " << v.str() << "\n";
    ctx.out << "witness: " << r.witness->str() << "\n";
    ctx.out << "cylinder: " << cylinder(v, *r.witness).hyperplane().str() << " is not in the arrangement\n";
  }
  return r.closed ? ok : property_false;
}

inline int cmd_valid_dirs(Context& ctx, const std::string& path) {
  const Arrangement a = load(ctx, path);
  const DirectionFamily fam = valid_directions(a);
  if (ctx.json_out) {
    json ms = json::array();
    for (const auto& w : fam.members()) ms.push_back(to_json(w));
    ctx.emit({{"members", ms}, {"span_dim", fam.span_dim()}});
    return ok;
  }
  if (fam.empty()) ctx.out << "no valid directions\n";
  for (const auto& w : fam.members()) ctx.out << w.str() << "\n";
  ctx.out << "span dimension " << fam.span_dim() << " of " << a.dim() << "\n";
  return ok;
}

inline int cmd_stable(Context& ctx, const std::string& path) {
  const Arrangement a = load(ctx, path);
  const StabilityResult r = is_stable(a);
  if (ctx.json_out) {
    json basis = json::array();
    for (const auto& v : r.basis) basis.push_back(to_json(v));
    ctx.emit({{"stable", r.stable}, {"span_dim", r.span_dim}, {"basis", basis}});
  } else if (r.stable) {
    ctx.out << "stable\nbasis:";
    for (const auto& v : r.basis) ctx.out << " " << v.str();
    ctx.out << "\n";
  } else {
    ctx.out << "not stable: valid directions span dimension " << r.span_dim << " of " << a.dim() << "\n";
  }
  return r.stable ? ok : property_false;
}

inline int cmd_axis_stable(Context& ctx, const std::string& path) {
  const Arrangement a = load(ctx, path);
  const AxisStability r = axis_stability(a, codim_two_flats(a));
  if (ctx.json_out) {
    json j = {{"axis_stable", r.stable}};
    if (!r.stable) {
      j["failing_axis"] = r.failing_axis + 1;
      j["witness"] = to_json(*r.witness);
    }
    ctx.emit(j);
  } else if (r.stable) {
    ctx.out << "axis-stable\n";
  } else {
    ctx.out << "not axis-stable: fails along x" << r.failing_axis + 1 << " at " << r.witness->str() << "\n";
  }
  return r.stable ? ok : property_false;
}

inline int cmd_closure(Context& ctx, const std::string& path, std::optional<std::size_t> budget) {
  const Arrangement a = load(ctx, path);
  const std::size_t b = budget ? *budget : env_budget();
  if (b < a.size()) throw std::invalid_argument("budget " + std::to_string(b) + " is below |A| = " + std::to_string(a.size()));
  const ClosureReport r = axis_closure(a, b);
  if (ctx.json_out) {
    json j = {{"rounds", r.rounds}, {"growth", r.growth}, {"diverged", r.diverged()}, {"budget", b}};
    if (r.result) j["result"] = to_json(*r.result);
    ctx.emit(j);
    return ok;
  }
  ctx.out << "# rounds " << r.rounds << ", growth";
  for (auto g : r.growth) ctx.out << " " << g;
  ctx.out << "\n";
  if (r.diverged()) {
    ctx.out << "# diverged: more than " << b << " hyperplanes\n";
  } else {
    write_arrangement(ctx.out, *r.result);
  }
  return ok;
}

inline int cmd_decompose(Context& ctx, const std::string& path) {
  const Arrangement a = load(ctx, path);
  const Decomposition d = decompose(a);
  if (ctx.json_out) {
    json bs = json::array();
    for (std::size_t k = 0; k < d.blocks.size(); ++k) {
      json idx = json::array();
      for (auto i : d.blocks[k]) idx.push_back(i + 1);
      bs.push_back({{"coordinates", idx}, {"factor", to_json(d.factors[k])}});
    }
    ctx.emit({{"blocks", bs}, {"indecomposable", d.indecomposable()}});
    return ok;
  }
  ctx.out << (d.indecomposable() ? "indecomposable" : "decomposable") << ", " << d.blocks.size() << " block(s)\n";
  for (std::size_t k = 0; k < d.blocks.size(); ++k) {
    ctx.out << "block {" << join_indices(d.blocks[k]) << "}\n";
    for (const auto& h : d.factors[k]) ctx.out << "  " << h.str() << "\n";
  }
  return ok;
}

inline int cmd_reduce(Context& ctx, const std::string& path) {
  const Arrangement a = load(ctx, path);
  auto [red, steps] = reduce_fully(a);
  if (ctx.json_out) {
    json js = json::array();
    for (const auto& s : steps) js.push_back(to_json(s));
    ctx.emit({{"reductions", js}, {"result", to_json(red)}});
    return ok;
  }
  if (steps.empty()) ctx.out << "# already reduced\n";
  for (const auto& s : steps) ctx.out << "# " << s.str() << "\n";
  write_arrangement(ctx.out, red);
  return ok;
}

inline int cmd_specialize(Context& ctx, const std::string& path, const std::string& fix) {
  const Arrangement a = load(ctx, path);
  const Arrangement s = specialize(a, parse_fix(fix, a));
  if (ctx.json_out) {
    ctx.emit({{"result", to_json(s)}});
    return ok;
  }
  write_arrangement(ctx.out, s);
  return ok;
}

inline int cmd_classify(Context& ctx, const std::string& path) {
  const Arrangement a = load(ctx, path);
  const ClassificationReport r = classify(a);
  if (ctx.json_out) {
    ctx.emit(to_json(r));
    return ok;
  }
  if (r.axis_stable) {
    ctx.out << "coordinates: given axes\n";
  } else if (!r.coordinates.is_identity()) {
    ctx.out << "coordinates: x = P y with columns";
    for (std::size_t j = 0; j < r.coordinates.dim(); ++j) {
      std::vector<Scalar> col;
      for (std::size_t i = 0; i < r.coordinates.dim(); ++i) col.push_back(r.coordinates.matrix[i][j]);
      ctx.out << " " << Vector(col).str();
    }
    ctx.out << "\n";
  }
  for (const auto& v : r.verdicts) print_verdict(ctx.out, v);
  return ok;
}

struct FamilyArgs {
  std::size_t n = 0;
  unsigned m = 1;
  std::optional<std::size_t> r;
  std::string alphas, omega_prime, variant = "full";
  std::optional<unsigned> field;
};

inline int cmd_family(Context& ctx, const FamilyArgs& fa) {
  const Field& field = Field::get(fa.field ? *fa.field : fa.m);
  FamilyDescriptor d;
  d.n = fa.n;
  d.m = fa.m;
  if (fa.variant == "full") d.variant = FamilyVariant::full;
  else if (fa.variant == "a-prime-only") d.variant = FamilyVariant::a_prime_only;
  else throw std::invalid_argument("--variant must be 'full' or 'a-prime-only'");
  try {
    if (!fa.alphas.empty()) d.alphas = parse_scalar_list(fa.alphas, field);
  } catch (const ParseError& e) {
    throw InputError("--alphas", 1, e.column(), e.what());
  }
  if (fa.r) {
    if (fa.alphas.empty()) {
      for (std::size_t j = 1; j <= *fa.r; ++j) d.alphas.emplace_back(static_cast<long>(j));
    } else if (d.alphas.size() != *fa.r) {
      throw std::invalid_argument("--r " + std::to_string(*fa.r) + " but " + std::to_string(d.alphas.size()) +
                                  " alphas given");
    }
  }
  if (d.n == 2) {
    try {
      d.omega_prime = fa.omega_prime.empty() ? std::vector<Scalar>{Scalar(1)} : parse_scalar_list(fa.omega_prime, field);
    } catch (const ParseError& e) {
      throw InputError("--omega-prime", 1, e.column(), e.what());
    }
  } else if (!fa.omega_prime.empty()) {
    throw std::invalid_argument("--omega-prime only applies when n=2");
  }
  const Arrangement a = make_family(d, field);
  if (ctx.json_out) {
    ctx.emit({{"descriptor", to_json(d)}, {"arrangement", to_json(a)}});
    return ok;
  }
  write_arrangement(ctx.out, a);
  return ok;
}

inline int cmd_pfaff(Context& ctx, const std::string& path, const std::string& residues) {
  const Arrangement a = load(ctx, path);
  const LogConnection c = read_residues_file(residues, a);
  const auto vs = check_integrability(c);
  if (ctx.json_out) {
    json j = json::array();
    for (const auto& v : vs) {
      json hs = json::array();
      for (auto h : v.hyperplanes) hs.push_back(h + 1);
      j.push_back({{"flat", to_json(v.flat)}, {"hyperplanes", hs}});
    }
    ctx.emit({{"integrable", vs.empty()}, {"violations", j}});
    return ok;
  }
  if (vs.empty()) ctx.out << "integrable: residue condition holds at every codim-2 flat\n";
  for (const auto& v : vs)
    ctx.out << "violation at " << v.flat.str() << ": [A_H, sum] != 0 for H = " << join_indices(v.hyperplanes) << "\n";
  return ok;
}

struct CensusArgs {
  std::string pool;
  std::string filters = "axis-stable,indecomposable,reduced,nontrivial";
  std::size_t min_size = 1, max_size = 20;
  bool list = false;
};

inline int cmd_census(Context& ctx, const CensusArgs& ca) {
  const Arrangement pool = load(ctx, ca.pool);
  PoolSpec spec;
  spec.n = pool.dim();
  spec.field = &pool.field();
  spec.pool = pool.hyperplanes();
  spec.min_size = ca.min_size;
  spec.max_size = ca.max_size;
  spec.require_axis_stable = spec.require_indecomposable = spec.require_reduced = spec.require_nontrivial = false;
  for (auto [off, f] : split_top_level(ca.filters, ',')) {
    if (f == "axis-stable") spec.require_axis_stable = true;
    else if (f == "indecomposable") spec.require_indecomposable = true;
    else if (f == "reduced") spec.require_reduced = true;
    else if (f == "nontrivial") spec.require_nontrivial = true;
    else if (!f.empty()) throw InputError("--filters", 1, off + 1, "unknown filter '" + std::string(f) + "'");
  }
  const Census c = enumerate_axis_stable(spec);
  if (ctx.json_out) {
    json es = json::array();
    for (const auto& e : c.entries) {
      json members = json::array();
      for (auto m : e.members) members.push_back(m + 1);
      es.push_back({{"members", members}, {"report", to_json(e.report)}});
    }
    ctx.emit({{"examined", c.examined},
              {"survivors", c.entries.size()},
              {"family", c.count(VerdictKind::family)},
              {"trivial", c.count(VerdictKind::trivial)},
              {"unrecognized", c.count(VerdictKind::unrecognized)},
              {"entries", es}});
    return ok;
  }
  ctx.out << "examined " << c.examined << " subsets, " << c.entries.size() << " survive the filters\n";
  ctx.out << "verdicts: family " << c.count(VerdictKind::family) << ", trivial " << c.count(VerdictKind::trivial)
          << ", not-stable " << c.count(VerdictKind::not_stable) << ", unrecognized "
          << c.count(VerdictKind::unrecognized) << "\n";
  for (const auto& e : c.entries) {
    bool interesting = ca.list;
    for (const auto& v : e.report.verdicts) interesting = interesting || v.kind == VerdictKind::unrecognized;
    if (!interesting) continue;
    ctx.out << "{" << join_indices(e.members) << "}\n";
    for (const auto& v : e.report.verdicts) print_verdict(ctx.out, v);
  }
  return ok;
}

struct OrbitArgs {
  std::string a1, a2, a3 = "0", z = "1";
  std::size_t budget = 512;
  unsigned field = 1;
};

inline int cmd_orbit(Context& ctx, const OrbitArgs& oa) {
  const Field& field = Field::get(oa.field);
  auto scalar = [&](const std::string& name, const std::string& text) {
    try {
      return parse_scalar(text, field);
    } catch (const ParseError& e) {
      throw InputError(name, 1, e.column(), e.what());
    }
  };
  const OrbitReport r = orbit_closure(scalar("--a1", oa.a1), scalar("--a2", oa.a2), scalar("--a3", oa.a3),
                                      scalar("--z", oa.z), oa.budget);
  if (ctx.json_out) {
    json j = {{"finite", r.finite()}, {"budget", oa.budget}};
    if (r.closure) {
      json f = json::array();
      for (const auto& x : *r.closure) f.push_back(x.str());
      j["closure"] = f;
      j["shift_vanishes"] = r.shift_vanishes;
      j["contains_rotations"] = r.contains_rotations;
      if (r.m) j["m"] = *r.m;
    }
    ctx.emit(j);
    return ok;
  }
  if (!r.finite()) {
    ctx.out << "orbit exceeds " << oa.budget << " points\n";
    return ok;
  }
  ctx.out << "orbit (" << r.closure->size() << "):";
  for (const auto& x : *r.closure) ctx.out << " " << x.str();
  ctx.out << "\n";
  if (r.m) ctx.out << "m = " << *r.m << "\n";
  ctx.out << "a3 = 0: " << (r.shift_vanishes ? "yes" : "no") << "; contains all rotations: "
          << (r.contains_rotations ? "yes" : "no") << "\n";
  return ok;
}

/// Runs one command line (without the program name).
inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx{out, err, false, {}};
  CLI::App app{"Exact toolkit for affine hyperplane arrangements", "stabhyp"};
  app.require_subcommand(1);
  app.add_flag("--json", ctx.json_out, "Structured output");

  std::string file, vec, fix, residues;
  std::optional<std::size_t> budget;
  FamilyArgs fa;
  CensusArgs ca;
  OrbitArgs oa;
  std::function<int()> run;

  auto with_file = [&](const char* name, const char* help) {
    auto* sc = app.add_subcommand(name, help);
    sc->add_option("file", file, "Arrangement file")->required();
    sc->add_flag("--json", ctx.json_out, "Structured output");
    return sc;
  };

  with_file("poset", "Intersection poset by codimension")->callback([&] { run = [&] { return cmd_poset(ctx, file); }; });
  auto* conv = with_file("convolve", "Convolution along a vector");
  conv->add_option("--v", vec, "Direction, comma-separated scalars")->required();
  conv->callback([&] { run = [&] { return cmd_convolve(ctx, file, vec); }; });
  auto* closed = with_file("closed", "Test closedness along a vector (exit 1 if not)");
  closed->add_option("--v", vec, "Direction, comma-separated scalars")->required();
  closed->callback([&] { run = [&] { return cmd_closed(ctx, file, vec); }; });
  with_file("valid-dirs", "All directions along which the arrangement is closed")->callback([&] {
    run = [&] { return cmd_valid_dirs(ctx, file); };
  });
  with_file("stable", "Stability for some basis (exit 1 if not)")->callback([&] {
    run = [&] { return cmd_stable(ctx, file); };
  });
  with_file("axis-stable", "Stability along the given axes (exit 1 if not)")->callback([&] {
    run = [&] { return cmd_axis_stable(ctx, file); };
  });
  auto* clo = with_file("closure", "Iterate coordinate convolutions to a fixpoint");
  clo->add_option("--budget", budget, "Maximum number of hyperplanes (default 200 or STABHYP_BUDGET)");
  clo->callback([&] { run = [&] { return cmd_closure(ctx, file, budget); }; });
  with_file("decompose", "Split into coordinate blocks")->callback([&] {
    run = [&] { return cmd_decompose(ctx, file); };
  });
  with_file("reduce", "Merge coordinates until reduced")->callback([&] { run = [&] { return cmd_reduce(ctx, file); }; });
  auto* spec = with_file("specialize", "Restrict to a coordinate section");
  spec->add_option("--fix", fix, "Fixed coordinates, e.g. \"x3=0,x4=1\"")->required();
  spec->callback([&] { run = [&] { return cmd_specialize(ctx, file, fix); }; });
  with_file("classify", "Match against the normal-form families")->callback([&] {
    run = [&] { return cmd_classify(ctx, file); };
  });
  auto* fam = app.add_subcommand("family", "Emit a normal-form family as an arrangement file");
  fam->add_flag("--json", ctx.json_out, "Structured output");
  fam->add_option("--n", fa.n, "Dimension")->required();
  fam->add_option("--m", fa.m, "Order of the root-of-unity group")->required();
  fam->add_option("--r", fa.r, "Number of constants (alphas default to 1..r)");
  fam->add_option("--alphas", fa.alphas, "Constants, comma-separated scalars");
  fam->add_option("--omega-prime", fa.omega_prime, "Ratios of the slanted lines when n=2 (default 1)");
  fam->add_option("--variant", fa.variant, "full or a-prime-only");
  fam->add_option("--field", fa.field, "Field modulus M (default m)");
  fam->callback([&] { run = [&] { return cmd_family(ctx, fa); }; });
  auto* pf = with_file("pfaff-check", "Integrability of a logarithmic connection");
  pf->add_option("--residues", residues, "Residue file")->required();
  pf->callback([&] { run = [&] { return cmd_pfaff(ctx, file, residues); }; });

  auto* orc = app.add_subcommand("oracle", "Brute-force enumerators");
  orc->require_subcommand(1);
  auto* cen = orc->add_subcommand("census", "Classify every filtered subset of a hyperplane pool");
  cen->add_flag("--json", ctx.json_out, "Structured output");
  cen->add_option("--pool", ca.pool, "Pool as an arrangement file")->required();
  cen->add_option("--filters", ca.filters, "Comma list of axis-stable, indecomposable, reduced, nontrivial");
  cen->add_option("--min-size", ca.min_size, "Smallest subset size");
  cen->add_option("--max-size", ca.max_size, "Largest subset size");
  cen->add_flag("--list", ca.list, "Print every surviving subset");
  cen->callback([&] { run = [&] { return cmd_census(ctx, ca); }; });
  auto* orb = orc->add_subcommand("orbit", "Closure of a point under x -> a1 x and x -> a2 x + a3");
  orb->add_flag("--json", ctx.json_out, "Structured output");
  orb->add_option("--a1", oa.a1, "Multiplier of the first map")->required();
  orb->add_option("--a2", oa.a2, "Multiplier of the second map")->required();
  orb->add_option("--a3", oa.a3, "Shift of the second map (default 0)");
  orb->add_option("--z", oa.z, "Starting point (default 1)");
  orb->add_option("--budget", oa.budget, "Maximum orbit size (default 512)");
  orb->add_option("--field", oa.field, "Field modulus M (default 1)");
  orb->callback([&] { run = [&] { return cmd_orbit(ctx, oa); }; });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  }
  if (!run) {
    err << "error: no subcommand\n";
    return input_error;
  }
  try {
    return run();
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const ParseError& e) {
    err << "error: column " << e.column() << ": " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
  }
  return input_error;
}

}  // namespace stabhyp::cli
