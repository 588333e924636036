#pragma once

// Weak pullbacks (comma categories) of skeletal groupoids and the
// compositions of spans and span maps built from them.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lincat/error.hpp"
#include "lincat/group.hpp"
#include "lincat/groupoid.hpp"

namespace lincat::gpd {

using ElemPair = std::pair<Elem, Elem>;

/// Stabiliser of m under (h,k)·m = f(h) m g(k)^{-1}: the pairs with
/// f(h)·m = m·g(k), ordered lexicographically, as an explicit group.
struct FibredProduct {
  FinGroup group;
  std::vector<ElemPair> elements;
};

inline FibredProduct fibred_product(const GroupHom& f, const GroupHom& g, Elem m) {
  if (f.target != g.target) throw TargetMismatch("fibred product over different groups");
  const auto& c = f.target;
  FibredProduct fp;
  std::map<ElemPair, Elem> index;
  for (Elem h = 0; h < f.source.order(); ++h)
    for (Elem k = 0; k < g.source.order(); ++k)
      if (c.mul(f(h), m) == c.mul(m, g(k))) {
        index[{h, k}] = fp.elements.size();
        fp.elements.emplace_back(h, k);
      }
  const std::size_t n = fp.elements.size();
  Table t(n, std::vector<Elem>(n));
  for (Elem i = 0; i < n; ++i)
    for (Elem j = 0; j < n; ++j) {
      const auto [h1, k1] = fp.elements[i];
      const auto [h2, k2] = fp.elements[j];
      t[i][j] = index.at({f.source.mul(h1, h2), g.source.mul(k1, k2)});
    }
  fp.group = gpd::closed_table(std::move(t));
  return fp;
}

/// The orbit f(A)·m·g(B) of m, sorted.
inline std::vector<Elem> double_coset(const GroupHom& f, const GroupHom& g, Elem m) {
  const auto& c = f.target;
  std::vector<bool> in(c.order(), false);
  for (Elem h = 0; h < f.source.order(); ++h)
    for (Elem k = 0; k < g.source.order(); ++k) in[c.mul(c.mul(f(h), m), c.inv(g(k)))] = true;
  std::vector<Elem> out;
  for (Elem e = 0; e < c.order(); ++e)
    if (in[e]) out.push_back(e);
  return out;
}

struct PullbackObject {
  std::size_t left;    // object of dom f
  std::size_t right;   // object of dom g
  Elem mediating;      // m in Aut(f(left)) = Aut(g(right))
  bool preferred = true;
  std::vector<ElemPair> aut_elements;
};

/// Skeleton of the comma category (f ↓ g) with its two projections.
struct WeakPullback {
  Groupoid apex;
  GroupoidFunctor proj_left;
  GroupoidFunctor proj_right;
  std::vector<PullbackObject> objects;
};

/// Optional rule for choosing double-coset representatives: the smallest
/// orbit element accepted by the predicate wins, falling back to the smallest
/// element overall (and marking the object as not preferred).
using RepresentativeRule = std::function<bool(std::size_t left, std::size_t right, Elem m)>;

inline WeakPullback weak_pullback(const GroupoidFunctor& f, const GroupoidFunctor& g,
                                  const RepresentativeRule& prefer = {}) {
  if (f.target != g.target) throw TargetMismatch("weak pullback legs have different targets");
  WeakPullback pb;
  std::vector<GroupoidObject> objs;
  for (std::size_t a = 0; a < f.source.size(); ++a)
    for (std::size_t b = 0; b < g.source.size(); ++b) {
      if (f.object_map[a] != g.object_map[b]) continue;
      const auto& fa = f.hom_maps[a];
      const auto& gb = g.hom_maps[b];
      const auto& c = fa.target;
      std::vector<bool> seen(c.order(), false);
      for (Elem m = 0; m < c.order(); ++m) {
        if (seen[m]) continue;
        const auto orbit = double_coset(fa, gb, m);
        for (auto e : orbit) seen[e] = true;
        PullbackObject po{a, b, m, true, {}};
        if (prefer) {
          po.preferred = false;
          for (auto e : orbit)
            if (prefer(a, b, e)) {
              po.mediating = e;
              po.preferred = true;
              break;
            }
        }
        auto fp = fibred_product(fa, gb, po.mediating);
        po.aut_elements = fp.elements;
        objs.push_back({"(" + f.source[a].name + "," + std::to_string(po.mediating) + "," +
                            g.source[b].name + ")",
                        fp.group});
        pb.objects.push_back(std::move(po));
      }
    }
  pb.apex = Groupoid(std::move(objs));
  pb.proj_left = GroupoidFunctor{pb.apex, f.source, {}, {}};
  pb.proj_right = GroupoidFunctor{pb.apex, g.source, {}, {}};
  for (std::size_t i = 0; i < pb.objects.size(); ++i) {
    const auto& po = pb.objects[i];
    std::vector<Elem> ml, mr;
    for (auto [h, k] : po.aut_elements) {
      ml.push_back(h);
      mr.push_back(k);
    }
    pb.proj_left.object_map.push_back(po.left);
    pb.proj_left.hom_maps.push_back(GroupHom{pb.apex.aut(i), f.source.aut(po.left), ml});
    pb.proj_right.object_map.push_back(po.right);
    pb.proj_right.hom_maps.push_back(GroupHom{pb.apex.aut(i), g.source.aut(po.right), mr});
  }
  return pb;
}

struct ComposedSpan {
  Span span;
  WeakPullback pullback;
};

/// x' ∘ x, keeping the pullback data that labels the composite apex.
inline ComposedSpan compose_spans_detailed(const Span& x, const Span& xp) {
  if (x.target() != xp.source()) throw TargetMismatch("spans are not composable");
  auto pb = weak_pullback(x.right, xp.left);
  Span s{compose(x.left, pb.proj_left), compose(xp.right, pb.proj_right)};
  return {std::move(s), std::move(pb)};
}

/// x' ∘ x : apply x, then x'.
inline Span compose_spans(const Span& x, const Span& xp) {
  return compose_spans_detailed(x, xp).span;
}

/// y' ∘ y for y : X1 ⇒ X2 and y' : X2 ⇒ X3. Mediating morphisms are chosen so
/// that the comparison isomorphisms of the composite are identities; a
/// double coset with no such element makes the composite non-strict.
inline SpanMap vertical_compose_spanmaps(const SpanMap& y, const SpanMap& yp) {
  if (y.bottom != yp.top) throw SpanMismatch("middle spans of the vertical composite differ");
  const auto& middle = y.bottom;
  auto pb = weak_pullback(y.down, yp.up, [&](std::size_t a, std::size_t, Elem m) {
    const auto x2 = y.down.object_map[a];
    return middle.left.hom_maps[x2](m) == 0 && middle.right.hom_maps[x2](m) == 0;
  });
  for (const auto& po : pb.objects)
    if (!po.preferred)
      throw StrictnessViolation("vertical composite object over (" + y.apex()[po.left].name +
                                "," + yp.apex()[po.right].name +
                                ") has no mediating morphism acting trivially on the feet");
  SpanMap out{y.top, yp.bottom, compose(y.up, pb.proj_left), compose(yp.down, pb.proj_right)};
  check_spanmap(out);
  return out;
}

namespace detail {

// Pairs (a,b) with t(a)·m·s(b)^{-1} = target, lexicographic.
inline std::vector<ElemPair> conjugators(const GroupHom& t, const GroupHom& s, Elem m, Elem target) {
  const auto& c = t.target;
  std::vector<ElemPair> out;
  for (Elem a = 0; a < t.source.order(); ++a)
    for (Elem b = 0; b < s.source.order(); ++b)
      if (c.mul(c.mul(t(a), m), c.inv(s(b))) == target) out.emplace_back(a, b);
  return out;
}

inline std::size_t locate(const WeakPullback& pb, std::size_t left, std::size_t right,
                          const GroupHom& t, const GroupHom& s, Elem m) {
  for (std::size_t i = 0; i < pb.objects.size(); ++i) {
    const auto& po = pb.objects[i];
    if (po.left != left || po.right != right) continue;
    const auto orbit = double_coset(t, s, po.mediating);
    if (std::binary_search(orbit.begin(), orbit.end(), m)) return i;
  }
  throw IndexOutOfRange("no composite object over the given pair");
}

}  // namespace detail

/// Horizontal composite y' ∘ y for y : X1 ⇒ X2 (spans A1 → A2) and
/// y' : X1' ⇒ X2' (spans A2 → A3). The apex is the weak pullback over A2 of
/// the induced legs; each apex object (y, m, y') is sent to the composite-span
/// object of class (s(y), m, s'(y')), conjugated into its skeletal
/// representative.
inline SpanMap horizontal_compose_spanmaps(const SpanMap& y, const SpanMap& yp) {
  if (y.top.target() != yp.top.source())
    throw SpanMismatch("span maps are not horizontally composable");
  const auto tau = compose(y.top.right, y.up);
  const auto sigma = compose(yp.top.left, yp.up);
  const auto pb = weak_pullback(tau, sigma);
  const auto c1 = compose_spans_detailed(y.top, yp.top);
  const auto c2 = compose_spans_detailed(y.bottom, yp.bottom);

  GroupoidFunctor up{pb.apex, c1.span.apex(), {}, {}};
  GroupoidFunctor down{pb.apex, c2.span.apex(), {}, {}};

  for (std::size_t p = 0; p < pb.objects.size(); ++p) {
    const auto& po = pb.objects[p];
    const std::size_t x1 = y.up.object_map[po.left], x1p = yp.up.object_map[po.right];
    const std::size_t x2 = y.down.object_map[po.left], x2p = yp.down.object_map[po.right];
    const auto& t1 = y.top.right.hom_maps[x1];
    const auto& s1p = yp.top.left.hom_maps[x1p];
    const auto& t2 = y.bottom.right.hom_maps[x2];
    const auto& s2p = yp.bottom.left.hom_maps[x2p];
    const auto i1 = detail::locate(c1.pullback, x1, x1p, t1, s1p, po.mediating);
    const auto i2 = detail::locate(c2.pullback, x2, x2p, t2, s2p, po.mediating);
    const auto l1 = detail::conjugators(t1, s1p, po.mediating, c1.pullback.objects[i1].mediating);
    const auto l2 = detail::conjugators(t2, s2p, po.mediating, c2.pullback.objects[i2].mediating);

    const auto& s1 = y.top.left.hom_maps[x1];
    const auto& s2 = y.bottom.left.hom_maps[x2];
    const auto& t1p = yp.top.right.hom_maps[x1p];
    const auto& t2p = yp.bottom.right.hom_maps[x2p];
    std::optional<std::pair<ElemPair, ElemPair>> choice;
    for (const auto& u : l1) {
      for (const auto& d : l2)
        if (s1(u.first) == s2(d.first) && t1p(u.second) == t2p(d.second)) {
          choice = {u, d};
          break;
        }
      if (choice) break;
    }
    if (!choice)
      throw StrictnessViolation("horizontal composite object " + pb.apex[p].name +
                                " admits no strictly commuting conjugation");

    auto leg = [&](const ComposedSpan& cs, std::size_t target_obj, ElemPair conj,
                   const GroupHom& left_hom, const GroupHom& right_hom, GroupoidFunctor& out) {
      const auto& cpo = cs.pullback.objects[target_obj];
      std::map<ElemPair, Elem> index;
      for (Elem e = 0; e < cpo.aut_elements.size(); ++e) index[cpo.aut_elements[e]] = e;
      const auto& gl = left_hom.target;
      const auto& gr = right_hom.target;
      std::vector<Elem> m;
      for (auto [h, k] : po.aut_elements) {
        ElemPair img{gl.mul(gl.mul(conj.first, left_hom(h)), gl.inv(conj.first)),
                     gr.mul(gr.mul(conj.second, right_hom(k)), gr.inv(conj.second))};
        m.push_back(index.at(img));
      }
      out.object_map.push_back(target_obj);
      out.hom_maps.push_back(GroupHom{pb.apex.aut(p), cs.span.apex().aut(target_obj), m});
    };
    leg(c1, i1, choice->first, y.up.hom_maps[po.left], yp.up.hom_maps[po.right], up);
    leg(c2, i2, choice->second, y.down.hom_maps[po.left], yp.down.hom_maps[po.right], down);
  }
  SpanMap out{c1.span, c2.span, std::move(up), std::move(down)};
  check_spanmap(out);
  return out;
}

}  // namespace lincat::gpd
