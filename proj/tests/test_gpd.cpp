#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "common.hpp"

using namespace testing_support;

namespace {

// Element orbits of G under conjugation, computed independently of FinGroup.
std::vector<std::size_t> class_sizes_bruteforce(const FinGroup& g) {
  std::vector<std::size_t> sizes;
  std::vector<bool> done(g.order(), false);
  for (Elem x = 0; x < g.order(); ++x) {
    if (done[x]) continue;
    std::set<Elem> orbit;
    for (Elem h = 0; h < g.order(); ++h) orbit.insert(g.mul(g.mul(h, x), g.inv(h)));
    for (auto e : orbit) done[e] = true;
    sizes.push_back(orbit.size());
  }
  return sizes;
}

std::multiset<std::size_t> aut_orders(const Groupoid& g) {
  std::multiset<std::size_t> out;
  for (const auto& o : g) out.insert(o.aut.order());
  return out;
}

// Orbits of Aut(c) under (h,k)·m = f(h) m g(k)^{-1}, counted by brute force.
std::size_t double_coset_count(const GroupHom& f, const GroupHom& g) {
  std::set<std::set<Elem>> orbits;
  const auto& c = f.target;
  for (Elem m = 0; m < c.order(); ++m) {
    std::set<Elem> o;
    for (Elem h = 0; h < f.source.order(); ++h)
      for (Elem k = 0; k < g.source.order(); ++k) o.insert(c.mul(c.mul(f(h), m), c.inv(g(k))));
    orbits.insert(o);
  }
  return orbits.size();
}

}  // namespace

TEST(Group, ValidateTrivialAndZ2) {
  EXPECT_EQ(validate_group({{0}}).order(), 1u);
  EXPECT_EQ(validate_group({{0, 1}, {1, 0}}).order(), 2u);
}

TEST(Group, ValidateRejectsNonPermutationRow) {
  try {
    validate_group({{0, 1}, {1, 1}});
    FAIL();
  } catch (const AxiomViolation& e) {
    EXPECT_NE(std::string(e.what()).find("inverse"), std::string::npos);
  }
}

TEST(Group, ValidateRejectsBadIdentityAndAssociativity) {
  EXPECT_THROW(validate_group({{1, 0}, {0, 1}}), AxiomViolation);
  // A Latin square with identity 0 that is not associative (order 5 loop).
  Table loop = {{0, 1, 2, 3, 4},
                {1, 0, 3, 4, 2},
                {2, 4, 0, 1, 3},
                {3, 2, 4, 0, 1},
                {4, 3, 1, 2, 0}};
  try {
    validate_group(loop);
    FAIL();
  } catch (const AxiomViolation& e) {
    EXPECT_NE(std::string(e.what()).find("associativity"), std::string::npos);
  }
}

TEST(Group, ConjugacyClasses) {
  EXPECT_EQ(conjugacy_classes(FinGroup::trivial()), (std::vector<std::vector<Elem>>{{0}}));
  EXPECT_EQ(conjugacy_classes(FinGroup::cyclic(2)), (std::vector<std::vector<Elem>>{{0}, {1}}));
  const auto& cls = conjugacy_classes(s3());
  ASSERT_EQ(cls.size(), 3u);
  std::vector<std::size_t> sizes;
  for (const auto& c : cls) sizes.push_back(c.size());
  EXPECT_EQ(sizes, class_sizes_bruteforce(s3()));
  EXPECT_EQ(sizes, (std::vector<std::size_t>{1, 3, 2}));
}

TEST(Group, ClassSizesSumToOrder) {
  for (const auto& g : {FinGroup::trivial(), FinGroup::cyclic(5), s3(), FinGroup::symmetric(4),
                        direct_product(FinGroup::cyclic(2), s3())}) {
    std::size_t total = 0;
    for (std::size_t i = 0; i < g.classes().size(); ++i) {
      EXPECT_EQ(g.classes()[i].front(), *std::min_element(g.classes()[i].begin(), g.classes()[i].end()));
      if (i) {
        EXPECT_LT(g.classes()[i - 1].front(), g.classes()[i].front());
      }
      total += g.classes()[i].size();
    }
    EXPECT_EQ(total, g.order());
  }
}

TEST(Group, PermutationClosureAndCap) {
  EXPECT_EQ(FinGroup::symmetric(4).order(), 24u);
  EXPECT_THROW(FinGroup::from_permutations({{1, 0, 2, 3}, {1, 2, 3, 0}}, 10), AxiomViolation);
}

TEST(Group, HomomorphismsAndSubgroups) {
  EXPECT_EQ(homomorphisms(FinGroup::cyclic(2), s3()).size(), 4u);  // e and three transpositions
  EXPECT_EQ(homomorphisms(s3(), FinGroup::cyclic(2)).size(), 2u);
  EXPECT_EQ(subgroups(s3()).size(), 6u);
  EXPECT_THROW(make_hom(FinGroup::cyclic(3), FinGroup::cyclic(2), {0, 1, 1}), AxiomViolation);
}

TEST(Cardinality, Examples) {
  EXPECT_EQ(groupoid_cardinality(Groupoid{}), Rational(0));
  EXPECT_EQ(groupoid_cardinality(Groupoid::delooping(FinGroup::cyclic(2))), Rational(1, 2));
  const Groupoid mixed({{"a", FinGroup::trivial()}, {"b", FinGroup::cyclic(2)}, {"c", s3()}});
  EXPECT_EQ(groupoid_cardinality(mixed), Rational(5, 3));
  EXPECT_EQ(to_string(groupoid_cardinality(mixed)), "5/3");
}

TEST(Cardinality, AdditiveOverDisjointUnion) {
  const Groupoid a({{"a", FinGroup::cyclic(3)}, {"b", s3()}});
  const Groupoid b({{"c", FinGroup::cyclic(4)}});
  EXPECT_EQ(groupoid_cardinality(disjoint_union(a, b)),
            groupoid_cardinality(a) + groupoid_cardinality(b));
}

TEST(Groupoid, DuplicateNamesRejected) {
  EXPECT_THROW(Groupoid::discrete({"a", "a"}), AxiomViolation);
}

TEST(Functor, CheckRejectsWrongGroups) {
  auto f = deloop(z2_in_s3());
  f.hom_maps[0] = identity_hom(FinGroup::cyclic(2));
  EXPECT_THROW(check_functor(f), InvalidFunctor);
}

TEST(WeakPullback, IdentityOnPoint) {
  const auto id = identity_functor(Groupoid::terminal());
  const auto pb = weak_pullback(id, id);
  ASSERT_EQ(pb.apex.size(), 1u);
  EXPECT_EQ(pb.apex.aut(0).order(), 1u);
}

TEST(WeakPullback, TranspositionSubgroupTwice) {
  const auto f = deloop(z2_in_s3());
  const auto pb = weak_pullback(f, f);
  ASSERT_EQ(pb.apex.size(), 2u);
  EXPECT_EQ(aut_orders(pb.apex), (std::multiset<std::size_t>{1, 2}));
  EXPECT_EQ(groupoid_cardinality(pb.apex), Rational(3, 2));
  EXPECT_EQ(pb.apex.size(), double_coset_count(z2_in_s3(), z2_in_s3()));
  EXPECT_EQ(pb.objects[0].mediating, 0u);
  check_functor(pb.proj_left);
  check_functor(pb.proj_right);
}

TEST(WeakPullback, DisjointImagesGiveEmpty) {
  const auto pts = Groupoid::discrete({"p", "q"});
  const auto one = Groupoid::terminal("o");
  const auto f = set_map(one, pts, {0});
  const auto g = set_map(one, pts, {1});
  EXPECT_TRUE(weak_pullback(f, g).apex.empty());
}

TEST(WeakPullback, TargetMismatch) {
  EXPECT_THROW(weak_pullback(deloop(z2_in_s3()), deloop(z4_onto_z2())), TargetMismatch);
}

TEST(WeakPullback, OrbitStabiliserForAllSubgroupPairsOfS3) {
  const auto g = s3();
  for (const auto& h : subgroups(g))
    for (const auto& k : subgroups(g)) {
      const auto pb = weak_pullback(deloop(subgroup_inclusion(g, h)), deloop(subgroup_inclusion(g, k)));
      EXPECT_EQ(groupoid_cardinality(pb.apex),
                Rational(6, static_cast<std::int64_t>(h.size() * k.size())));
      EXPECT_EQ(pb.apex.size(), double_coset_count(subgroup_inclusion(g, h), subgroup_inclusion(g, k)));
    }
}

TEST(WeakPullback, FibredProductIsStabiliser) {
  const auto f = z2_in_s3();
  const auto g = z3_in_s3();
  for (Elem m = 0; m < 6; ++m) {
    const auto fp = fibred_product(f, g, m);
    std::size_t brute = 0;
    for (Elem h = 0; h < 2; ++h)
      for (Elem k = 0; k < 3; ++k) brute += s3().mul(f(h), m) == s3().mul(m, g(k));
    EXPECT_EQ(fp.group.order(), brute);
    EXPECT_EQ(fp.elements.front(), (ElemPair{0, 0}));
    EXPECT_TRUE(std::is_sorted(fp.elements.begin(), fp.elements.end()));
  }
}

TEST(ComposeSpans, UnitLaw) {
  const auto x = make_span(deloop(z2_in_s3(), "a", "b"), to_terminal(Groupoid::delooping(FinGroup::cyclic(2), "a")));
  const auto left = compose_spans(identity_span(x.source()), x);
  const auto right = compose_spans(x, identity_span(x.target()));
  EXPECT_EQ(aut_orders(left.apex()), aut_orders(x.apex()));
  EXPECT_EQ(aut_orders(right.apex()), aut_orders(x.apex()));
  EXPECT_EQ(left.left.object_map, x.left.object_map);
}

TEST(ComposeSpans, Fig1WithReverse) {
  const auto x = fig1();
  const auto c = compose_spans(x, reverse_span(x));
  // Oracle: pairs of apex points with the same image in Z.
  std::size_t pairs = 0;
  for (auto a : x.right.object_map)
    for (auto b : x.right.object_map) pairs += a == b;
  EXPECT_EQ(c.apex().size(), pairs);
  EXPECT_EQ(c.apex().size(), 8u);
  for (const auto& o : c.apex()) EXPECT_EQ(o.aut.order(), 1u);
  // reverse ∘ fig1 is over Y: fiber product over Z.
  const auto d = compose_spans(reverse_span(x), x);
  std::size_t pairs_y = 0;
  for (auto a : x.left.object_map)
    for (auto b : x.left.object_map) pairs_y += a == b;
  EXPECT_EQ(d.apex().size(), pairs_y);
  EXPECT_EQ(d.apex().size(), 6u);
}

TEST(ComposeSpans, TerminalLegs) {
  const auto bz2 = Groupoid::delooping(FinGroup::cyclic(2));
  const auto one = Groupoid::terminal();
  const auto x = make_span(to_terminal(bz2, one), to_terminal(bz2, one));
  const auto c = compose_spans(reverse_span(x), x);
  ASSERT_EQ(c.apex().size(), 1u);
  EXPECT_EQ(c.apex().aut(0).order(), 4u);
}

TEST(ComposeSpans, ReverseIsInvolution) {
  const auto x = fig1();
  EXPECT_EQ(reverse_span(reverse_span(x)), x);
  EXPECT_TRUE(identity_span(Groupoid{}).apex().empty());
}

TEST(ComposeSpans, AssociativeOnIsoClassData) {
  const auto bs3 = Groupoid::delooping(s3(), "s");
  const auto bz2 = Groupoid::delooping(FinGroup::cyclic(2), "t");
  const auto bz3 = Groupoid::delooping(FinGroup::cyclic(3), "u");
  const auto x = make_span(to_terminal(bz2), deloop(z2_in_s3(), "t", "s"));
  const auto xp = make_span(deloop(z3_in_s3(), "u", "s"), to_terminal(bz3, Groupoid::terminal("p")));
  const auto xpp = make_span(identity_functor(Groupoid::terminal("p")),
                             to_terminal(Groupoid::terminal("p"), Groupoid::terminal("q")));
  const auto a = compose_spans(compose_spans(x, xp), xpp);
  const auto b = compose_spans(x, compose_spans(xp, xpp));
  EXPECT_EQ(aut_orders(a.apex()), aut_orders(b.apex()));
  EXPECT_EQ(groupoid_cardinality(a.apex()), groupoid_cardinality(b.apex()));
  (void)bs3;
}

TEST(SpanMap, StrictnessEnforced) {
  const auto bz2 = Groupoid::delooping(FinGroup::cyclic(2));
  const auto one = Groupoid::terminal();
  const auto top = make_span(to_terminal(bz2, one), to_terminal(bz2, one));
  const auto bottom = top;
  auto up = identity_functor(bz2);
  auto down = up;
  down.hom_maps[0] = trivial_hom(bz2.aut(0), bz2.aut(0));
  // Both composites land in the trivial group, so this is strict.
  EXPECT_NO_THROW(make_spanmap(top, bottom, up, down));
  const auto top2 = make_span(identity_functor(bz2), identity_functor(bz2));
  EXPECT_THROW(make_spanmap(top2, top2, up, down), StrictnessViolation);
}

TEST(SpanMap, EssentialPreimage) {
  EXPECT_EQ(essential_preimage_cardinality(over_point(Groupoid::delooping(FinGroup::cyclic(2))), 0, 0),
            Rational(1, 2));
  const Groupoid two({{"a", FinGroup::cyclic(2)}, {"b", FinGroup::cyclic(3)}});
  EXPECT_EQ(essential_preimage_cardinality(over_point(two), 0, 0), Rational(5, 6));
  EXPECT_EQ(essential_preimage_cardinality(over_point(Groupoid{}), 0, 0), Rational(0));
  EXPECT_THROW(essential_preimage_cardinality(over_point(two), 1, 0), IndexOutOfRange);
}

TEST(VerticalCompose, IdentityIsUnit) {
  const Groupoid y({{"a", FinGroup::cyclic(2)}, {"b", FinGroup::cyclic(3)}});
  const auto sm = over_point(y);
  const auto c = vertical_compose_spanmaps(sm, identity_spanmap(sm.bottom));
  EXPECT_EQ(aut_orders(c.apex()), aut_orders(y));
  const auto d = vertical_compose_spanmaps(identity_spanmap(sm.top), sm);
  EXPECT_EQ(aut_orders(d.apex()), aut_orders(y));
}

TEST(VerticalCompose, SetsGiveFibreProduct) {
  // Top = bottom = fig1; Y and Y' are sets over the fig1 apex.
  const auto x = fig1();
  const auto y_apex = Groupoid::discrete({"u1", "u2", "u3", "u4", "u5"});
  const std::vector<std::size_t> ymap = {0, 1, 1, 2, 3};
  const auto y = make_spanmap(x, x, set_map(y_apex, x.apex(), ymap), set_map(y_apex, x.apex(), ymap));
  const auto yp_apex = Groupoid::discrete({"v1", "v2", "v3"});
  const std::vector<std::size_t> ypmap = {1, 1, 3};
  const auto yp = make_spanmap(x, x, set_map(yp_apex, x.apex(), ypmap), set_map(yp_apex, x.apex(), ypmap));
  const auto c = vertical_compose_spanmaps(y, yp);
  std::size_t expected = 0;
  for (auto a : ymap)
    for (auto b : ypmap) expected += a == b;
  EXPECT_EQ(c.apex().size(), expected);
}

TEST(VerticalCompose, MismatchedMiddle) {
  const auto a = over_point(Groupoid::terminal());
  const auto b = identity_spanmap(fig1());
  EXPECT_THROW(vertical_compose_spanmaps(a, b), SpanMismatch);
}

TEST(VerticalCompose, NonStrictCompositeRejected) {
  // Middle span 1 <- BZ2 -> BZ2 with Y, Y' trivial: every mediating morphism
  // acts nontrivially on the right foot.
  const auto one = Groupoid::terminal();
  const auto bz2 = Groupoid::delooping(FinGroup::cyclic(2), "b");
  const auto x2 = make_span(to_terminal(bz2, one), identity_functor(bz2));
  const auto x1 = make_span(identity_functor(one), set_map(one, bz2, {0}));
  const auto pt = Groupoid::terminal("y");
  const auto y = make_spanmap(x1, x2, set_map(pt, one, {0}), set_map(pt, bz2, {0}));
  const auto yp = make_spanmap(x2, x1, set_map(pt, bz2, {0}), set_map(pt, one, {0}));
  EXPECT_THROW(vertical_compose_spanmaps(y, yp), StrictnessViolation);
}

TEST(HorizontalCompose, IdentityOnIdentitySpan) {
  const Groupoid y({{"a", FinGroup::cyclic(2)}, {"b", s3()}});
  const auto sm = over_point(y);
  const auto id = identity_spanmap(identity_span(Groupoid::terminal()));
  const auto c = horizontal_compose_spanmaps(sm, id);
  EXPECT_EQ(aut_orders(c.apex()), aut_orders(y));
  EXPECT_EQ(c.up.object_map.size(), y.size());
}

TEST(HorizontalCompose, SetsGiveFibreProductOverMiddle) {
  const auto x = fig1();
  const auto xr = reverse_span(x);
  const auto c = horizontal_compose_spanmaps(identity_spanmap(x), identity_spanmap(xr));
  std::size_t expected = 0;
  for (auto a : x.right.object_map)
    for (auto b : xr.left.object_map) expected += a == b;
  EXPECT_EQ(c.apex().size(), expected);
}

TEST(HorizontalCompose, Incompatible) {
  EXPECT_THROW(horizontal_compose_spanmaps(identity_spanmap(fig1()), identity_spanmap(fig1())),
               SpanMismatch);
}
