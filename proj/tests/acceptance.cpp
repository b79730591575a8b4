// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any selected criterion fails.
#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>

#include "family_gen.hpp"
#include "flat_checks.hpp"
#include "support.hpp"

using namespace stabhyp;
using namespace testing_support;

namespace {

using Clock = std::chrono::steady_clock;

std::string sample(const std::string& name) { return std::string(STABHYP_SAMPLES) + "/" + name; }

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("failed: " + what);
    }
  }
  void info(const std::string& what) { notes.push_back(what); }
};

Arrangement three_lines() { return read_arrangement_file(sample("example3.arr")); }

// 1. Three-line example: L^2 and the axis-1 convolution.
Outcome three_line_example() {
  Outcome o;
  const auto t0 = Clock::now();
  const Arrangement a = three_lines();
  const auto p = build_poset(a);
  const std::set<Flat> l2(p.stratum(2).begin(), p.stratum(2).end());
  o.expect(l2 == std::set<Flat>{flat_of(2, {"x1 = 1/2", "x2 = 1/2"}), flat_of(2, {"x1 = 1", "x2 = 1"})},
           "L^2 is {(1/2,1/2), (1,1)}");
  const Arrangement m = convolution(a, vec({1, 0}));
  std::set<Hyperplane> added;
  for (const auto& h : m)
    if (!a.contains(h)) added.insert(h);
  o.expect(added == std::set<Hyperplane>{hp("x2 = 1/2", 2), hp("x2 = 1", 2)}, "convolution adds {x2 = 1/2, x2 = 1}");
  const double dt = seconds_since(t0);
  o.expect(dt < 1.0, "runtime under 1 s");
  o.info("runtime " + std::to_string(dt) + " s");
  return o;
}

// 2. Stability verdicts for braid, B and D arrangements.
Outcome stability_verdicts() {
  Outcome o;
  const auto t0 = Clock::now();
  for (std::size_t n = 2; n <= 5; ++n) o.expect(is_stable(braid(n)).stable, "braid n=" + std::to_string(n) + " stable");
  for (std::size_t n = 3; n <= 4; ++n)
    o.expect(is_stable(mirrors_bd(n, true)).stable, "B n=" + std::to_string(n) + " stable");
  o.expect(!is_stable(mirrors_bd(4, false)).stable, "D4 not stable");
  const double dt = seconds_since(t0);
  o.expect(dt < 10.0, "runtime under 10 s");
  o.info("runtime " + std::to_string(dt) + " s");
  return o;
}

// 3. Valid directions of the normal forms.
Outcome family_directions() {
  Outcome o;
  auto predicted = [](const FamilyDescriptor& d) {
    const std::size_t n = d.n;
    const Vector all(std::vector<Scalar>(n, Scalar(1)));
    std::set<LinearSubspace> out;
    if (d.variant == FamilyVariant::a_prime_only) {
      for (std::size_t i = 0; i < n; ++i) out.insert(LinearSubspace::span(n, {Vector::axis(n, i), all}));
      return out;
    }
    for (std::size_t i = 0; i < n; ++i) out.insert(LinearSubspace::span(n, {Vector::axis(n, i)}));
    if (d.m == 1 && d.r() == 0) out.insert(LinearSubspace::span(n, {all}));
    return out;
  };
  auto check = [&](const FamilyDescriptor& d) {
    const auto fam = valid_directions(make_family(d, field_for(d.m)));
    const std::set<LinearSubspace> got(fam.members().begin(), fam.members().end());
    o.expect(got == predicted(d), d.str());
  };
  std::size_t cases = 0;
  for (std::size_t n : {3u, 4u})
    for (unsigned m = 1; m <= 3; ++m)
      for (std::size_t r = 0; r <= 2; ++r) {
        FamilyDescriptor d;
        d.n = n;
        d.m = m;
        for (std::size_t k = 0; k < r; ++k) d.alphas.emplace_back(static_cast<long>(k + 1));
        check(d);
        ++cases;
      }
  FamilyDescriptor braid_only;
  braid_only.n = 4;
  braid_only.m = 1;
  braid_only.variant = FamilyVariant::a_prime_only;
  check(braid_only);
  o.info(std::to_string(cases + 1) + " descriptors");
  return o;
}

// 4. Census over the plane and space pools.
Outcome census() {
  Outcome o;
  for (const char* file : {"pool2.arr", "pool3.arr"}) {
    const Arrangement pool = read_arrangement_file(sample(file));
    PoolSpec spec;
    spec.n = pool.dim();
    spec.field = &pool.field();
    spec.pool.assign(pool.begin(), pool.end());
    const Census c = enumerate_axis_stable(spec);
    o.expect(c.count(VerdictKind::unrecognized) == 0, std::string(file) + ": no unrecognized verdicts");
    o.expect(c.count(VerdictKind::family) == c.entries.size(), std::string(file) + ": every survivor is a family");
    for (const auto& e : c.entries)
      for (const auto& v : e.report.verdicts) {
        if (v.kind != VerdictKind::family) continue;
        o.expect(v.normalization->apply(v.reduced) == make_family(*v.family, pool.field()),
                 std::string(file) + ": " + v.family->str() + " reproduces its factor");
      }
    o.info(std::string(file) + ": examined " + std::to_string(c.examined) + ", survivors " +
           std::to_string(c.entries.size()) + ", families " + std::to_string(c.count(VerdictKind::family)));
  }
  return o;
}

// 5. Recognition of normal forms moved by random coordinate changes.
Outcome round_trip() {
  Outcome o;
  std::mt19937 rng(20261018);
  std::size_t ok = 0;
  const std::size_t total = 200;
  for (std::size_t t = 0; t < total; ++t) {
    const FamilyDescriptor d = random_descriptor(rng, 4, 4, 2);
    const Field& f = field_for(d.m);
    const CoordTransform tr = random_transform(rng, d.n, f);
    const Arrangement moved = tr.apply(make_family(d, f));
    const auto rep = classify(moved);
    bool good = rep.verdicts.size() == 1 && rep.verdicts[0].kind == VerdictKind::family;
    if (good) {
      const auto& v = rep.verdicts[0];
      good = rep.coordinates.is_identity() && v.reductions.empty() &&
             v.normalization->apply(moved) == make_family(*v.family, f);
    }
    if (good)
      ++ok;
    else
      o.expect(false, d.str() + " via " + tr.str());
  }
  o.info(std::to_string(ok) + "/" + std::to_string(total) + " recovered");
  return o;
}

// 6. Poset and direction clauses on random arrangements.
Outcome direction_properties() {
  Outcome o;
  std::mt19937 rng(61);
  flat_checks::Violations bad;
  const std::size_t total = 600;
  for (std::size_t t = 0; t < total; ++t) {
    const std::size_t n = 1 + rng() % 3;
    const Arrangement a = random_arrangement(rng, n, 6, -2, 2);
    flat_checks::covering_pairs(build_poset(a), bad);
    flat_checks::direction_clauses(a, random_vector(rng, n, -2, 2), bad);
    const Vector v = random_vector(rng, n, -1, 1);
    flat_checks::direction_clauses(convolution(a, v), v, bad);
  }
  o.expect(bad.empty(), std::to_string(bad.size()) + " violations");
  for (std::size_t k = 0; k < bad.size() && k < 5; ++k) o.info(bad[k]);
  o.info(std::to_string(total) + " arrangements");
  return o;
}

// 7. Literal identity for the flats of an axis convolution.
Outcome projection_identity() {
  Outcome o;
  std::mt19937 rng(67);
  std::size_t literal = 0, contains = 0, closure = 0, axis_form = 0;
  const std::size_t total = 100;
  for (std::size_t t = 0; t < total; ++t) {
    const Arrangement a = random_arrangement(rng, 2 + rng() % 2, 5, -1, 1);
    const auto r = flat_checks::projection_identity(a);
    literal += r.literal;
    contains += r.contains;
    closure += r.closure;
    axis_form += r.axis_form;
  }
  auto frac = [&](std::size_t k) { return std::to_string(k) + "/" + std::to_string(total); };
  o.expect(literal == total, "literal identity holds on " + frac(literal));
  const auto lhs = flat_checks::all_flats(convolution(three_lines(), vec({1, 0})));
  const auto rhs = flat_checks::with_cylinders(three_lines(), 0);
  o.expect(lhs == rhs, "literal identity on the three-line example");
  if (lhs != rhs) o.info("three-line example: (3/2,1/2) and (0,1) are flats of the convolution only");
  o.info("containment holds on " + frac(contains));
  o.info("intersection closure holds on " + frac(closure));
  o.info("axis-stable iff cylinders lie in L holds on " + frac(axis_form));
  return o;
}

// 8. Poset builder against subset enumeration.
Outcome oracle_equivalence() {
  Outcome o;
  std::vector<std::pair<std::string, Arrangement>> cases;
  for (const auto& entry : std::filesystem::directory_iterator(STABHYP_SAMPLES))
    if (entry.path().extension() == ".arr")
      cases.emplace_back(entry.path().filename().string(), read_arrangement_file(entry.path().string()));
  for (std::size_t n = 2; n <= 5; ++n) cases.emplace_back("braid" + std::to_string(n), braid(n));
  cases.emplace_back("B3", mirrors_bd(3, true));
  cases.emplace_back("D4", mirrors_bd(4, false));
  std::mt19937 rng(79);
  for (int t = 0; t < 200; ++t) cases.emplace_back("random", random_arrangement(rng, 2 + rng() % 3, 8, -2, 2));
  std::size_t checked = 0;
  for (const auto& [name, a] : cases) {
    if (a.size() > 12) continue;
    o.expect(same_poset(build_poset(a), brute_force_poset(a)), name);
    ++checked;
  }
  o.info(std::to_string(checked) + " arrangements");
  return o;
}

// Hyperplanes through a single codim-2 flat.
Arrangement pencil(std::mt19937& rng, std::size_t n) {
  for (;;) {
    const Hyperplane h = random_hyperplane(rng, n), g = random_hyperplane(rng, n);
    auto s = intersect(Flat::from(h), g);
    if (!s || s->codim() != 2) continue;
    Arrangement a(n);
    a.add(h);
    a.add(g);
    for (std::size_t k = rng() % 3; k > 0; --k) {
      Row r = h.row();
      const Scalar x = nonzero_rational(rng), y = nonzero_rational(rng);
      bool any = false;
      for (std::size_t c = 0; c < r.size(); ++c) {
        r[c] = x * r[c] + y * g.row()[c];
        any = any || (c + 1 < r.size() && !r[c].is_zero());
      }
      if (any) a.add(Hyperplane::from_row(r));
    }
    return a;
  }
}

// 9. Closure behaviour.
Outcome closure() {
  Outcome o;
  const auto div = axis_closure(three_lines(), 50);
  o.expect(div.diverged(), "three-line closure exceeds 50 hyperplanes");
  std::string growth;
  for (auto g : div.growth) growth += " " + std::to_string(g);
  o.info("three-line growth:" + growth);

  const Arrangement a2 = read_arrangement_file(sample("example28_a2.arr"));
  const auto fixed = axis_closure(a2, 50);
  o.expect(!fixed.diverged() && *fixed.result == a2, "single-flat example is a fixpoint");

  std::vector<Arrangement> trivial{a2, braid(3), arr(2, {"x1 = x2", "x1 = 0", "x2 = 0"})};
  std::mt19937 rng(73);
  for (int t = 0; t < 150; ++t) trivial.push_back(pencil(rng, 2 + t % 3));
  std::size_t tested = 0;
  for (const auto& a : trivial) {
    const auto l2 = codim_two_flats(a);
    if (l2.flats.size() != 1) continue;
    ++tested;
    const Flat& s = l2.flats.front();
    for (int k = 0; k < 3; ++k)
      for (const auto& h : convolution(a, random_vector(rng, a.dim())))
        o.expect(contains(h, s), "convolution hyperplane " + h.str() + " misses " + s.str());
    const auto rep = axis_closure(a, 100);
    o.expect(!rep.diverged(), "single-flat closure terminates");
    if (rep.diverged()) continue;
    for (const auto& h : *rep.result) o.expect(contains(h, s), "closure hyperplane " + h.str() + " misses " + s.str());
  }
  o.info(std::to_string(tested) + " single-flat inputs");
  return o;
}

// 10. Integrability of logarithmic connections.
Outcome pfaffian() {
  Outcome o;
  const Arrangement b3 = read_arrangement_file(sample("braid3.arr"));
  o.expect(check_integrability(read_residues_file(sample("braid3_transpositions.res"), b3)).empty(),
           "braid transpositions integrable");
  const Arrangement bo = read_arrangement_file(sample("boolean2.arr"));
  o.expect(check_integrability(read_residues_file(sample("diag_e12.res"), bo)).size() == 1,
           "diag/E12 has exactly one violation");

  std::mt19937 rng(107);
  std::size_t failing = 0;
  for (int t = 0; t < 100; ++t) {
    const LogConnection c = random_connection(rng, 2 + rng() % 2, 2 + rng() % 2, t % 3 == 0);
    const auto base = check_integrability(c);
    failing += !base.empty();
    std::map<std::size_t, Scalar> lambdas;
    for (std::size_t h = 0; h < c.arrangement().size(); ++h) lambdas.emplace(h, nonzero_rational(rng));
    o.expect(check_integrability(apply_addition(c, lambdas)) == base, "addition invariance, case " + std::to_string(t));
    o.expect(check_integrability(conjugate(c, random_invertible(rng, c.size()))) == base,
             "conjugation invariance, case " + std::to_string(t));
  }
  o.info("100 random connections, " + std::to_string(failing) + " not integrable");
  return o;
}

const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
    {"three-line example", three_line_example},
    {"stability verdicts", stability_verdicts},
    {"normal form directions", family_directions},
    {"census", census},
    {"round-trip recognition", round_trip},
    {"poset and direction clauses", direction_properties},
    {"literal projection identity", projection_identity},
    {"poset oracle", oracle_equivalence},
    {"closure", closure},
    {"integrability", pfaffian},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app("acceptance checks");
  std::vector<std::size_t> which;
  app.add_option("--criterion", which, "criteria to run (default: all)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);
  if (which.empty())
    for (std::size_t k = 1; k <= criteria.size(); ++k) which.push_back(k);

  bool all = true;
  for (std::size_t k : which) {
    const auto& [name, run] = criteria[k - 1];
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.info(std::string("exception: ") + e.what());
    }
    std::cout << "criterion " << k << " " << (o.pass ? "PASS" : "FAIL") << ": " << name << "\n";
    for (const auto& n : o.notes) std::cout << "  " << n << "\n";
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
