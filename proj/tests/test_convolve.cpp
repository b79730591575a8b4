#include <gtest/gtest.h>

#include <random>
#include <set>

#include "flat_checks.hpp"
#include "support.hpp"

using namespace stabhyp;
using namespace testing_support;

namespace {

Arrangement three_lines() { return arr(2, {"x1 = x2", "x1 + x2 = 1", "x1 + x2 = 2"}); }

std::set<LinearSubspace> members(const DirectionFamily& f) { return {f.members().begin(), f.members().end()}; }

LinearSubspace span(std::size_t n, std::vector<Vector> gens) { return LinearSubspace::span(n, gens); }

// Hyperplanes through a common codim-2 flat, built from two generators.
Arrangement pencil(std::mt19937& rng, std::size_t n) {
  for (;;) {
    const Hyperplane h = random_hyperplane(rng, n), g = random_hyperplane(rng, n);
    auto s = intersect(Flat::from(h), g);
    if (!s || s->codim() != 2) continue;
    Arrangement a(n);
    a.add(h);
    a.add(g);
    const std::size_t extra = rng() % 3;
    for (std::size_t k = 0; k < extra; ++k) {
      Row r = h.row();
      const Scalar x = nonzero_rational(rng), y = nonzero_rational(rng);
      for (std::size_t c = 0; c < r.size(); ++c) r[c] = x * r[c] + y * g.row()[c];
      std::vector<Scalar> lin(r.begin(), r.end() - 1);
      bool any = false;
      for (const auto& c : lin) any = any || !c.is_zero();
      if (any) a.add(Hyperplane::from_row(r));
    }
    return a;
  }
}

}  // namespace

TEST(Convolution, Examples) {
  const Arrangement a = three_lines();
  const Arrangement m = convolution(a, vec({1, 0}));
  Arrangement want = a;
  want.add(hp("x2 = 1/2", 2));
  want.add(hp("x2 = 1", 2));
  EXPECT_EQ(m, want);

  EXPECT_EQ(convolution(braid(3), vec({1, 0, 0})), braid(3));
  const Arrangement one = arr(3, {"x1 + x2 = 4"});
  EXPECT_EQ(convolution(one, vec({1, 2, 3})), one);
  EXPECT_THROW(convolution(one, Vector({Scalar(0), Scalar(0), Scalar(0)})), std::invalid_argument);
}

TEST(VClosed, Examples) {
  const auto r = is_v_closed(three_lines(), vec({1, 0}));
  EXPECT_FALSE(r.closed);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(*r.witness, flat_of(2, {"x1 = 1/2", "x2 = 1/2"}));

  EXPECT_TRUE(is_v_closed(mirrors_bd(3, false), vec({1, -1, 1})).closed);
  EXPECT_TRUE(is_v_closed(braid(4), vec({1, 1, 1, 1})).closed);
}

TEST(ValidDirections, ThreeLinesAgainstGrid) {
  const Arrangement a = three_lines();
  const auto fam = valid_directions(a);
  EXPECT_EQ(members(fam), (std::set<LinearSubspace>{span(2, {vec({1, 1})}), span(2, {vec({1, -1})})}));
  const auto l2 = codim_two_flats(a);
  for (long x = -3; x <= 3; ++x)
    for (long y = -3; y <= 3; ++y) {
      if (x == 0 && y == 0) continue;
      const Vector v = vec({x, y});
      bool per_flat = true;
      for (std::size_t s = 0; s < l2.flats.size(); ++s) {
        bool any = false;
        for (std::size_t h : l2.through[s]) any = any || direction_contains(a[h], v);
        per_flat = per_flat && any;
      }
      EXPECT_EQ(is_v_closed(a, v).closed, fam.contains(v)) << v.str();
      EXPECT_EQ(per_flat, fam.contains(v)) << v.str();
    }
}

TEST(ValidDirections, BraidFour) {
  std::set<LinearSubspace> want;
  for (std::size_t i = 0; i < 4; ++i) want.insert(span(4, {Vector::axis(4, i), vec({1, 1, 1, 1})}));
  EXPECT_EQ(members(valid_directions(braid(4))), want);
}

TEST(ValidDirections, BTwo) {
  const Arrangement a = arr(2, {"x1 = x2", "x1 = -x2", "x1 = 0", "x2 = 0"});
  const auto fam = valid_directions(a);
  EXPECT_EQ(members(fam), (std::set<LinearSubspace>{span(2, {vec({1, 0})}), span(2, {vec({0, 1})}),
                                                    span(2, {vec({1, 1})}), span(2, {vec({1, -1})})}));
  for (const auto& w : fam.members())
    for (const auto& b : w.basis()) EXPECT_TRUE(is_v_closed(a, b).closed);
}

TEST(Stability, Examples) {
  for (std::size_t n = 2; n <= 5; ++n) EXPECT_TRUE(is_stable(braid(n)).stable) << n;
  EXPECT_FALSE(is_stable(mirrors_bd(4, false)).stable);
  EXPECT_TRUE(is_stable(mirrors_bd(4, true)).stable);
  EXPECT_TRUE(is_stable(mirrors_bd(3, true)).stable);

  EXPECT_FALSE(is_axis_stable(three_lines()));
  EXPECT_TRUE(is_axis_stable(braid(3)));
  EXPECT_TRUE(is_axis_stable(arr(2, {"x1 = x2", "x1 = 0", "x2 = 0"})));
  const auto st = is_stable(three_lines());
  EXPECT_TRUE(st.stable);
  EXPECT_EQ(st.basis.size(), 2u);
}

TEST(Stability, AgreesWithExhaustiveBasisSearch) {
  std::mt19937 rng(53);
  for (int t = 0; t < 150; ++t) {
    const std::size_t n = 2 + rng() % 2;
    const Arrangement a = random_arrangement(rng, n, 6, -1, 1);
    const auto fam = valid_directions(a);
    std::vector<Vector> pool;
    for (const auto& w : fam.members())
      for (const auto& b : w.basis()) pool.push_back(b);
    bool found = false;
    const std::size_t k = pool.size();
    // choose n of the pooled vectors; check independence and closedness directly
    std::vector<std::size_t> idx(n);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t from) {
      if (found) return;
      if (depth == n) {
        std::vector<Row> rows;
        for (std::size_t i : idx) {
          Row r(pool[i].entries().begin(), pool[i].entries().end());
          r.push_back(Scalar(0));
          rows.push_back(r);
        }
        if (Flat::from_rows(n, rows)->codim() != n) return;
        for (std::size_t i : idx)
          if (!is_v_closed(a, pool[i]).closed) return;
        found = true;
        return;
      }
      for (std::size_t i = from; i < k; ++i) {
        idx[depth] = i;
        rec(depth + 1, i + 1);
      }
    };
    rec(0, 0);
    const auto st = is_stable(a);
    EXPECT_EQ(st.stable, found);
    for (const auto& v : st.basis) EXPECT_TRUE(is_v_closed(a, v).closed);
  }
}

TEST(Convolution, Monotone) {
  std::mt19937 rng(59);
  for (int t = 0; t < 200; ++t) {
    const Arrangement a = random_arrangement(rng, 3, 5);
    const Vector v = random_vector(rng, 3);
    const Arrangement m = convolution(a, v);
    for (const auto& h : a) EXPECT_TRUE(m.contains(h));
    EXPECT_EQ(is_v_closed(a, v).closed, m == a);
  }
}

TEST(Convolution, PosetAndDirectionProperties) {
  std::mt19937 rng(61);
  flat_checks::Violations bad;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng() % 2;
    const Arrangement a = random_arrangement(rng, n, 6, -1, 1);
    flat_checks::covering_pairs(build_poset(a), bad);
    flat_checks::direction_clauses(a, random_vector(rng, n, -1, 1), bad);
    // a v-closed case so the last clause has something to check
    flat_checks::direction_clauses(convolution(a, Vector::axis(n, 0)), Vector::axis(n, 0), bad);
  }
  EXPECT_TRUE(bad.empty()) << bad.front();
}

TEST(ProjectionIdentity, LiteralFormFailsOnThreeLines) {
  // L(mc A) picks up (3/2,1/2) = {x2 = 1/2} ∩ {x1 + x2 = 2}, which is neither a
  // flat of A nor a cylinder over one
  const Arrangement a = three_lines();
  const auto lhs = flat_checks::all_flats(convolution(a, vec({1, 0})));
  const auto rhs = flat_checks::with_cylinders(a, 0);
  const Flat extra = flat_of(2, {"x1 = 3/2", "x2 = 1/2"});
  EXPECT_TRUE(lhs.count(extra));
  EXPECT_FALSE(rhs.count(extra));
  EXPECT_TRUE(lhs.count(flat_of(2, {"x1 = 0", "x2 = 1"})));
  EXPECT_FALSE(rhs.count(flat_of(2, {"x1 = 0", "x2 = 1"})));
  EXPECT_EQ(lhs, flat_checks::intersection_closure(rhs));
}

TEST(ProjectionIdentity, CorrectedForms) {
  std::mt19937 rng(67);
  for (int t = 0; t < 150; ++t) {
    const Arrangement a = random_arrangement(rng, 2 + rng() % 2, 5, -1, 1);
    const auto r = flat_checks::projection_identity(a);
    EXPECT_TRUE(r.contains);
    EXPECT_TRUE(r.closure);
    EXPECT_TRUE(r.axis_form);
  }
}

TEST(AxisClosure, Examples) {
  const Arrangement a2 = arr(3, {"x1 + x2 + x3 = 0", "x1 = x2", "2*x1 + x3 = 0", "2*x2 + x3 = 0"});
  const auto fixed = axis_closure(a2, 50);
  ASSERT_FALSE(fixed.diverged());
  EXPECT_EQ(*fixed.result, a2);
  EXPECT_EQ(fixed.rounds, 1u);
  EXPECT_TRUE(is_stable(a2).stable);

  const auto div = axis_closure(three_lines(), 50);
  EXPECT_TRUE(div.diverged());
  EXPECT_GT(div.growth.back(), 50u);
  EXPECT_THROW(axis_closure(three_lines(), 2), std::invalid_argument);
}

TEST(AxisClosure, FixpointIsAxisStable) {
  std::mt19937 rng(71);
  for (int t = 0; t < 100; ++t) {
    const Arrangement a = random_arrangement(rng, 2, 4, -1, 1);
    const auto rep = axis_closure(a, 60);
    if (rep.diverged()) continue;
    EXPECT_TRUE(is_axis_stable(*rep.result));
    for (const auto& h : a) EXPECT_TRUE(rep.result->contains(h));
  }
}

TEST(AxisClosure, SingleCodimTwoFlat) {
  // every added hyperplane contains the one codim-2 flat
  std::mt19937 rng(73);
  for (int t = 0; t < 100; ++t) {
    const Arrangement a = pencil(rng, 3);
    const auto l2 = codim_two_flats(a);
    ASSERT_EQ(l2.flats.size(), 1u);
    const Flat s = l2.flats.front();
    const Vector v = random_vector(rng, 3);
    for (const auto& h : convolution(a, v)) EXPECT_TRUE(contains(h, s));
    const auto rep = axis_closure(a, 100);
    ASSERT_FALSE(rep.diverged());
    EXPECT_LE(rep.rounds, 2u);
    for (const auto& h : *rep.result) EXPECT_TRUE(contains(h, s));
  }
}
