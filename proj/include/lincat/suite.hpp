#pragma once

// Verification suites for Λ: collections of groupoids, spans, span maps and
// homomorphisms, and the checks run over every composable configuration.

#include <array>
#include <chrono>
#include <exception>
#include <map>
#include <cstdint>
#include <algorithm>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "lincat/adjunction.hpp"
#include "lincat/lambda.hpp"
#include "lincat/pullback.hpp"

namespace lincat::suite {

using gpd::FinGroup;
using gpd::Groupoid;
using gpd::GroupoidFunctor;
using gpd::GroupHom;
using gpd::Span;
using gpd::SpanMap;
using rep::Config;

/// BG → BH for a homomorphism G → H.
inline GroupoidFunctor delooping_functor(const GroupHom& f, const std::string& src,
                                         const std::string& tgt) {
  return gpd::make_functor(Groupoid::delooping(f.source, src), Groupoid::delooping(f.target, tgt),
                           {0}, {f});
}

/// Functor determined by an object map, with trivial homomorphisms. Valid
/// whenever every target automorphism group is hit only from trivial groups
/// or the caller accepts the trivial homomorphism.
inline GroupoidFunctor trivial_on_morphisms(const Groupoid& src, const Groupoid& tgt,
                                            std::vector<std::size_t> object_map) {
  GroupoidFunctor f{src, tgt, std::move(object_map), {}};
  for (std::size_t i = 0; i < src.size(); ++i)
    f.hom_maps.push_back(gpd::trivial_hom(src.aut(i), tgt.aut(f.object_map.at(i))));
  gpd::check_functor(f);
  return f;
}

/// Span of sets with one apex point per (source, target) pair.
inline Span set_span(const Groupoid& a, const Groupoid& b,
                     const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  std::vector<std::string> names;
  std::vector<std::size_t> l, r;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    names.push_back("x" + std::to_string(i + 1));
    l.push_back(pairs[i].first);
    r.push_back(pairs[i].second);
  }
  const auto apex = Groupoid::discrete(names);
  return gpd::make_span(trivial_on_morphisms(apex, a, l), trivial_on_morphisms(apex, b, r));
}

/// The span of sets Y ← X → Z with fibres (y1,z1), (y2,z1), (y2,z2), (y3,z2).
inline Span fig1_span() {
  return set_span(Groupoid::discrete({"y1", "y2", "y3"}), Groupoid::discrete({"z1", "z2"}),
                  {{0, 0}, {1, 0}, {1, 1}, {2, 1}});
}

/// Span map between identity spans on the terminal groupoid with apex y.
inline SpanMap over_point(const Groupoid& y) {
  const auto one = Groupoid::terminal();
  const auto id = gpd::identity_span(one);
  return gpd::make_spanmap(id, id, gpd::to_terminal(y, one), gpd::to_terminal(y, one));
}

enum class Filling { trivial, equalizer };

/// A strict span map top ⇒ bottom with one apex object over each compatible
/// pair (x1, x2). Its automorphism group is either trivial or the full
/// equalizer {(h,k) : s1(h)=s2(k), t1(h)=t2(k)} ⊂ Aut(x1)×Aut(x2).
inline SpanMap fill_spanmap(const Span& top, const Span& bottom, Filling mode) {
  std::vector<gpd::GroupoidObject> objs;
  std::vector<std::size_t> up_obj, down_obj;
  std::vector<GroupHom> up_hom, down_hom;
  for (std::size_t x1 = 0; x1 < top.apex().size(); ++x1)
    for (std::size_t x2 = 0; x2 < bottom.apex().size(); ++x2) {
      if (top.left.object_map[x1] != bottom.left.object_map[x2] ||
          top.right.object_map[x1] != bottom.right.object_map[x2])
        continue;
      const auto name = "y(" + top.apex()[x1].name + "," + bottom.apex()[x2].name + ")";
      const auto& g1 = top.apex().aut(x1);
      const auto& g2 = bottom.apex().aut(x2);
      if (mode == Filling::trivial) {
        objs.push_back({name, FinGroup::trivial()});
        up_hom.push_back(gpd::trivial_hom(FinGroup::trivial(), g1));
        down_hom.push_back(gpd::trivial_hom(FinGroup::trivial(), g2));
      } else {
        const auto& s1 = top.left.hom_maps[x1];
        const auto& t1 = top.right.hom_maps[x1];
        const auto& s2 = bottom.left.hom_maps[x2];
        const auto& t2 = bottom.right.hom_maps[x2];
        const auto prod = gpd::direct_product(g1, g2);
        std::vector<gpd::Elem> elems;
        for (gpd::Elem e = 0; e < prod.order(); ++e) {
          const auto h = e / g2.order(), k = e % g2.order();
          if (s1(h) == s2(k) && t1(h) == t2(k)) elems.push_back(e);
        }
        const auto inc = gpd::subgroup_inclusion(prod, elems);
        std::vector<gpd::Elem> p1, p2;
        for (auto e : elems) {
          p1.push_back(e / g2.order());
          p2.push_back(e % g2.order());
        }
        objs.push_back({name, inc.source});
        up_hom.push_back(GroupHom{inc.source, g1, p1});
        down_hom.push_back(GroupHom{inc.source, g2, p2});
      }
      up_obj.push_back(x1);
      down_obj.push_back(x2);
    }
  const Groupoid apex(std::move(objs));
  return gpd::make_spanmap(top, bottom, GroupoidFunctor{apex, top.apex(), up_obj, up_hom},
                           GroupoidFunctor{apex, bottom.apex(), down_obj, down_hom});
}

struct Suite {
  std::vector<Span> spans;
  std::vector<SpanMap> spanmaps;
  std::vector<GroupHom> homs;

  friend bool operator==(const Suite&, const Suite&) = default;
};

/// Groupoids 1, BZ2, BZ3, BS3 and a 3-point set; spans among them built from
/// inclusions and maps to the terminal groupoid; FIG1 and its reverse; span
/// maps filled over parallel pairs; the fixture homomorphisms.
inline Suite default_suite() {
  const auto s3 = FinGroup::symmetric(3);
  const auto z2 = FinGroup::cyclic(2), z3 = FinGroup::cyclic(3);
  const auto one = Groupoid::terminal("1");
  const auto bz2 = Groupoid::delooping(z2, "bz2");
  const auto bz3 = Groupoid::delooping(z3, "bz3");
  const auto bs3 = Groupoid::delooping(s3, "bs3");
  const auto pts = Groupoid::discrete({"p0", "p1", "p2"});
  const auto z2_in_s3 = gpd::subgroup_inclusion(s3, gpd::generate(s3, {1}));
  const auto z3_in_s3 = gpd::subgroup_inclusion(s3, gpd::generate(s3, {2}));
  const auto inc2 = delooping_functor(z2_in_s3, "bz2", "bs3");
  const auto inc3 = delooping_functor(z3_in_s3, "bz3", "bs3");
  const auto bz2_to_1 = gpd::to_terminal(bz2, one);
  const auto bz3_to_1 = gpd::to_terminal(bz3, one);
  const auto mixed = Groupoid({{"m0", z2}, {"m1", s3}});

  Suite s;
  const auto add = [&](const Span& x) { s.spans.push_back(x); };
  add(gpd::make_span(bz2_to_1, bz2_to_1));                           // 1 ← BZ2 → 1
  add(gpd::make_span(bz2_to_1, inc2));                               // 1 ← BZ2 → BS3
  add(gpd::make_span(inc2, bz2_to_1));                               // BS3 ← BZ2 → 1
  add(gpd::make_span(bz3_to_1, inc3));                               // 1 ← BZ3 → BS3
  add(gpd::make_span(inc3, bz3_to_1));                               // BS3 ← BZ3 → 1
  add(gpd::make_span(inc2, inc2));                                   // BS3 ← BZ2 → BS3
  add(gpd::make_span(gpd::identity_functor(bz2), inc2));             // BZ2 ← BZ2 → BS3
  add(gpd::identity_span(bs3));
  add(gpd::identity_span(one));
  add(gpd::make_span(gpd::identity_functor(pts), gpd::to_terminal(pts, one)));  // P ← P → 1
  add(gpd::make_span(gpd::to_terminal(pts, one), gpd::identity_functor(pts)));  // 1 ← P → P
  add(gpd::make_span(
      GroupoidFunctor{mixed, pts, {0, 1}, {gpd::trivial_hom(z2, pts.aut(0)), gpd::trivial_hom(s3, pts.aut(1))}},
      GroupoidFunctor{mixed, bs3, {0, 0}, {z2_in_s3, gpd::identity_hom(s3)}}));  // P ← mixed → BS3
  add(fig1_span());
  add(gpd::reverse_span(fig1_span()));

  for (const auto& x : s.spans) s.spanmaps.push_back(gpd::identity_spanmap(x));
  for (std::size_t i = 0; i < s.spans.size(); ++i)
    for (std::size_t j = 0; j < s.spans.size(); ++j) {
      const auto& a = s.spans[i];
      const auto& b = s.spans[j];
      if (a.source() != b.source() || a.target() != b.target()) continue;
      s.spanmaps.push_back(fill_spanmap(a, b, Filling::trivial));
      s.spanmaps.push_back(fill_spanmap(a, b, Filling::equalizer));
    }
  for (const auto& y : {bz2, bz3, bs3, pts, Groupoid({{"a", FinGroup::trivial()}, {"b", z2}, {"c", s3}})})
    s.spanmaps.push_back(over_point(y));

  s.homs = {z2_in_s3, z3_in_s3,
            gpd::make_hom(FinGroup::cyclic(4), z2, {0, 1, 0, 1}),
            gpd::trivial_hom(z2, FinGroup::trivial()),
            gpd::identity_hom(s3)};
  return s;
}

/// Bounds for randomly generated suites.
struct RandomBounds {
  std::size_t max_group_order = 24;
  std::size_t max_objects = 4;
  std::size_t max_apex_objects = 6;
  std::size_t spans = 6;
};

inline Suite random_suite(std::uint64_t seed, const RandomBounds& bounds = {}) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  std::vector<FinGroup> pool;
  for (const auto& g : {FinGroup::trivial(), FinGroup::cyclic(2), FinGroup::cyclic(3), FinGroup::cyclic(4),
                        FinGroup::symmetric(3), gpd::direct_product(FinGroup::cyclic(2), FinGroup::cyclic(2))})
    if (g.order() <= bounds.max_group_order) pool.push_back(g);

  auto random_groupoid = [&](const std::string& prefix, std::size_t max_objects) {
    std::vector<gpd::GroupoidObject> objs;
    const auto n = 1 + pick(max_objects);
    for (std::size_t i = 0; i < n; ++i) objs.push_back({prefix + std::to_string(i), pool[pick(pool.size())]});
    return Groupoid(std::move(objs));
  };
  auto random_functor = [&](const Groupoid& src, const Groupoid& tgt, const std::vector<std::size_t>& objects) {
    GroupoidFunctor f{src, tgt, objects, {}};
    for (std::size_t i = 0; i < src.size(); ++i) {
      const auto homs = gpd::homomorphisms(src.aut(i), tgt.aut(objects[i]));
      f.hom_maps.push_back(homs[pick(homs.size())]);
    }
    return f;
  };

  const std::array<Groupoid, 3> feet = {random_groupoid("a", bounds.max_objects),
                                        random_groupoid("b", bounds.max_objects),
                                        random_groupoid("c", bounds.max_objects)};
  Suite s;
  for (std::size_t k = 0; k < bounds.spans; ++k) {
    const std::size_t from = k % 3, to = (from + 1) % 3;
    const auto apex = random_groupoid("x" + std::to_string(k) + "_", bounds.max_apex_objects);
    std::vector<std::size_t> l, r;
    for (std::size_t i = 0; i < apex.size(); ++i) {
      l.push_back(pick(feet[from].size()));
      r.push_back(pick(feet[to].size()));
    }
    s.spans.push_back(gpd::make_span(random_functor(apex, feet[from], l), random_functor(apex, feet[to], r)));
  }
  for (const auto& x : s.spans) s.spanmaps.push_back(gpd::identity_spanmap(x));
  for (std::size_t i = 0; i < s.spans.size(); ++i)
    for (std::size_t j = 0; j < s.spans.size(); ++j)
      if (s.spans[i].source() == s.spans[j].source() && s.spans[i].target() == s.spans[j].target())
        s.spanmaps.push_back(fill_spanmap(s.spans[i], s.spans[j], i == j ? Filling::equalizer : Filling::trivial));
  for (const auto& x : s.spans)
    for (const auto* leg : {&x.left, &x.right})
      for (const auto& h : leg->hom_maps)
        if (std::find(s.homs.begin(), s.homs.end(), h) == s.homs.end()) s.homs.push_back(h);
  return s;
}

struct CheckResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t skipped = 0;
  std::size_t failures = 0;
  double max_deviation = 0;
  double seconds = 0;
  std::string detail;

  bool passed() const { return failures == 0; }
};

struct Report {
  std::vector<CheckResult> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed(); });
  }
  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

/// Bound on the condition numbers of γ and β accepted as invertible.
inline constexpr double kConditionBound = 1e6;

namespace detail {

inline twovect::DimMatrix transpose(const twovect::DimMatrix& m, std::size_t cols) {
  auto out = twovect::zero_dims(cols, m.size());
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) out[c][r] = m[r][c];
  return out;
}

// Residual of b after projection onto the span of an orthonormal family.
inline double residual(const Matrix& b, const std::vector<Matrix>& basis) {
  Matrix r = b;
  for (const auto& e : basis) r -= lambda::detail::frobenius(e, b) * e;
  return max_abs(r);
}

class Runner {
 public:
  explicit Runner(Report& report) : report_(report) {}

  template <class Body>
  void run(const std::string& name, Body body) {
    CheckResult c;
    c.name = name;
    const auto start = std::chrono::steady_clock::now();
    try {
      body(c);
    } catch (const std::exception& e) {
      ++c.failures;
      c.detail += std::string(c.detail.empty() ? "" : "; ") + e.what();
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report_.checks.push_back(std::move(c));
  }

 private:
  Report& report_;
};

inline void note(CheckResult& c, const std::string& msg) {
  ++c.failures;
  if (c.detail.size() < 400) c.detail += std::string(c.detail.empty() ? "" : "; ") + msg;
}

}  // namespace detail

/// Runs every check over the suite:
///   beta          dims of Λ(X'∘X) = Λ(X')Λ(X), γ and β invertible and exact
///   associativity dims agree for both bracketings of composable triples
///   unitors       composing with identity spans preserves Λ
///   identity_2cells Λ of an identity span map is the identity 2-morphism
///   vertical      Λ(Y'·Y) = Λ(Y')·Λ(Y)
///   horizontal    Λ(Y'∘Y)·β = β·(Λ(Y) ∘ Λ(Y'))
///   dual_path     closed form and unit/counit evaluation of Λ(Y) agree
///   dagger        Λ(X†) = Λ(X)† on dims and hom spaces
///   zigzag        triangle identities for both adjunctions on suite homs
/// Composites of span maps that cannot be represented strictly are counted
/// as skipped.
inline Report verify_functoriality(const Suite& s, const Config& cfg = {}) {
  Report report;
  detail::Runner run(report);
  const double tol = cfg.tol.eq;

  std::vector<lambda::LambdaSpanResult> spans;
  for (const auto& x : s.spans) spans.push_back(lambda::lambda_span(x, cfg));
  auto composable = [&](std::size_t i, std::size_t j) { return s.spans[i].target() == s.spans[j].source(); };

  run.run("beta", [&](CheckResult& c) {
    for (std::size_t i = 0; i < s.spans.size(); ++i)
      for (std::size_t j = 0; j < s.spans.size(); ++j) {
        if (!composable(i, j)) continue;
        ++c.cases;
        try {
          const auto b = lambda::beta_compositor(s.spans[i], s.spans[j], cfg);
          c.max_deviation = std::max(c.max_deviation, b.max_gamma_defect);
          if (b.max_gamma_defect > tol) detail::note(c, "gamma defect " + std::to_string(b.max_gamma_defect));
          if (b.max_gamma_condition >= kConditionBound || b.max_beta_condition >= kConditionBound)
            detail::note(c, "compositor ill-conditioned for pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
        } catch (const DimensionMismatch& e) {
          detail::note(c, "pair (" + std::to_string(i) + "," + std::to_string(j) + "): " + e.what());
        }
      }
  });

  run.run("associativity", [&](CheckResult& c) {
    for (std::size_t i = 0; i < s.spans.size(); ++i)
      for (std::size_t j = 0; j < s.spans.size(); ++j) {
        if (!composable(i, j)) continue;
        const auto ij = gpd::compose_spans(s.spans[i], s.spans[j]);
        for (std::size_t k = 0; k < s.spans.size(); ++k) {
          if (!composable(j, k)) continue;
          ++c.cases;
          const auto left = lambda::lambda_span(gpd::compose_spans(ij, s.spans[k]), cfg).map.dims;
          const auto right =
              lambda::lambda_span(gpd::compose_spans(s.spans[i], gpd::compose_spans(s.spans[j], s.spans[k])), cfg)
                  .map.dims;
          const auto prod = twovect::compose_2linear(twovect::compose_2linear(spans[i].map, spans[j].map),
                                                     spans[k].map).dims;
          if (left != right || left != prod)
            detail::note(c, "triple (" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")");
        }
      }
  });

  run.run("unitors", [&](CheckResult& c) {
    for (std::size_t i = 0; i < s.spans.size(); ++i) {
      const auto& x = s.spans[i];
      ++c.cases;
      const auto l = lambda::lambda_span(gpd::compose_spans(gpd::identity_span(x.source()), x), cfg).map.dims;
      const auto r = lambda::lambda_span(gpd::compose_spans(x, gpd::identity_span(x.target())), cfg).map.dims;
      const auto idl = twovect::compose_2linear(twovect::identity_2linear(spans[i].source.basis), spans[i].map).dims;
      if (l != spans[i].map.dims || r != spans[i].map.dims || idl != spans[i].map.dims)
        detail::note(c, "span " + std::to_string(i));
    }
  });

  std::vector<lambda::LambdaSpanMapResult> maps;
  run.run("dual_path", [&](CheckResult& c) {
    for (const auto& y : s.spanmaps) {
      ++c.cases;
      maps.push_back(lambda::lambda_spanmap(y, cfg, false));
      auto& m = maps.back();
      m.dual_path_deviation = twovect::block_deviation(m.morphism.blocks, lambda::unit_counit_blocks(y, m.top, m.bottom));
      c.max_deviation = std::max(c.max_deviation, m.dual_path_deviation);
      if (!(m.dual_path_deviation <= tol)) detail::note(c, "span map over " + y.apex()[0].name);
    }
  });
  if (maps.size() != s.spanmaps.size()) return report;

  run.run("identity_2cells", [&](CheckResult& c) {
    for (std::size_t i = 0; i < s.spans.size(); ++i) {
      ++c.cases;
      const auto m = lambda::lambda_spanmap(gpd::identity_spanmap(s.spans[i]), cfg, false);
      const double d = twovect::block_deviation(m.morphism.blocks, twovect::identity_2morph(spans[i].map).blocks);
      c.max_deviation = std::max(c.max_deviation, d);
      if (!(d <= tol)) detail::note(c, "span " + std::to_string(i));
    }
  });

  run.run("vertical", [&](CheckResult& c) {
    for (std::size_t i = 0; i < s.spanmaps.size(); ++i)
      for (std::size_t j = 0; j < s.spanmaps.size(); ++j) {
        if (!(s.spanmaps[i].bottom == s.spanmaps[j].top)) continue;
        gpd::SpanMap z;
        try {
          z = gpd::vertical_compose_spanmaps(s.spanmaps[i], s.spanmaps[j]);
        } catch (const StrictnessViolation&) {
          ++c.skipped;
          continue;
        }
        ++c.cases;
        const auto lz = lambda::lambda_spanmap(z, cfg, false);
        const auto prod = twovect::vcompose_2morph(maps[i].morphism, maps[j].morphism);
        const double d = twovect::block_deviation(lz.morphism.blocks, prod.blocks);
        c.max_deviation = std::max(c.max_deviation, d);
        if (!(d <= tol)) detail::note(c, "pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
  });

  run.run("horizontal", [&](CheckResult& c) {
    std::vector<gpd::Span> seen;
    auto id = [&](const gpd::Span& a) {
      for (std::size_t k = 0; k < seen.size(); ++k)
        if (seen[k] == a) return k;
      seen.push_back(a);
      return seen.size() - 1;
    };
    std::map<std::pair<std::size_t, std::size_t>, std::pair<gpd::ComposedSpan, lambda::LambdaSpanResult>> composites;
    auto composite = [&](const gpd::Span& a, const gpd::Span& b) -> const auto& {
      const auto key = std::make_pair(id(a), id(b));
      auto it = composites.find(key);
      if (it == composites.end()) {
        auto cs = gpd::compose_spans_detailed(a, b);
        auto l = lambda::lambda_span(cs.span, cfg);
        it = composites.emplace(key, std::make_pair(std::move(cs), std::move(l))).first;
      }
      return it->second;
    };
    for (std::size_t i = 0; i < s.spanmaps.size(); ++i)
      for (std::size_t j = 0; j < s.spanmaps.size(); ++j) {
        const auto& y = s.spanmaps[i];
        const auto& yp = s.spanmaps[j];
        if (!(y.top.target() == yp.top.source())) continue;
        gpd::SpanMap z;
        try {
          z = gpd::horizontal_compose_spanmaps(y, yp);
        } catch (const StrictnessViolation&) {
          ++c.skipped;
          continue;
        }
        ++c.cases;
        const auto& top = composite(y.top, yp.top);
        const auto& bottom = composite(y.bottom, yp.bottom);
        const auto lz = lambda::lambda_spanmap(z, cfg, false);
        const auto h = twovect::hcompose_2morph(maps[i].morphism, maps[j].morphism);
        const auto b1 = lambda::beta_hom(maps[i].top, maps[j].top, top.first, top.second);
        const auto b2 = lambda::beta_hom(maps[i].bottom, maps[j].bottom, bottom.first, bottom.second);
        double d = 0;
        for (std::size_t r = 0; r < h.blocks.size(); ++r)
          for (std::size_t col = 0; col < h.blocks[r].size(); ++col)
            d = std::max(d, max_abs(lz.morphism.blocks[r][col] * b1[r][col] - b2[r][col] * h.blocks[r][col]));
        c.max_deviation = std::max(c.max_deviation, d);
        if (!(d <= tol)) detail::note(c, "pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
  });

  run.run("dagger", [&](CheckResult& c) {
    for (std::size_t i = 0; i < s.spans.size(); ++i) {
      ++c.cases;
      const auto rev = lambda::lambda_span(gpd::reverse_span(s.spans[i]), cfg);
      if (rev.map.dims != detail::transpose(spans[i].map.dims, spans[i].map.domain.size())) {
        detail::note(c, "dims of span " + std::to_string(i));
        continue;
      }
      // Entry (r, col) of Λ(X) transposes to (col, r) of Λ(X†), apex object by apex object.
      const auto& hb = *spans[i].map.hom_bases;
      const auto& hr = *rev.map.hom_bases;
      for (std::size_t r = 0; r < hb.size(); ++r)
        for (std::size_t col = 0; col < hb[r].size(); ++col)
          for (const auto& w : spans[i].witnesses[r][col]) {
            const auto* wr = rev.witness(col, r, w.apex_object);
            if (!wr || wr->count != w.count) {
              detail::note(c, "witnesses of span " + std::to_string(i));
              continue;
            }
            const std::vector<Matrix> target(hr[col][r].begin() + static_cast<std::ptrdiff_t>(wr->offset),
                                             hr[col][r].begin() + static_cast<std::ptrdiff_t>(wr->offset + wr->count));
            for (std::size_t k = 0; k < w.count; ++k) {
              const double d = detail::residual(hb[r][col][w.offset + k].adjoint(), target);
              c.max_deviation = std::max(c.max_deviation, d);
              if (!(d <= tol)) detail::note(c, "hom space of span " + std::to_string(i));
            }
          }
    }
  });

  run.run("zigzag", [&](CheckResult& c) {
    for (const auto& f : s.homs) {
      std::vector<rep::RepModel> probes;
      for (const auto* g : {&f.source, &f.target}) {
        for (const auto& w : *rep::cached_irreps(*g, cfg)) probes.push_back(w.model());
        probes.push_back(rep::regular_rep(*g));
      }
      const auto z = rep::verify_zigzag(f, probes);
      c.cases += z.probes;
      c.max_deviation = std::max(c.max_deviation, z.max());
      if (!z.ok(cfg.tol)) detail::note(c, "homomorphism of order " + std::to_string(f.source.order()) + " → " +
                                              std::to_string(f.target.order()));
    }
  });
  return report;
}

}  // namespace lincat::suite
