#pragma once

// Skeletal finite groupoids, functors between them, spans, and spans of
// span maps.

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lincat/error.hpp"
#include "lincat/group.hpp"
#include "lincat/rational.hpp"

namespace lincat::gpd {

struct GroupoidObject {
  std::string name;
  FinGroup aut;

  friend bool operator==(const GroupoidObject&, const GroupoidObject&) = default;
};

/// A skeletal groupoid: one entry per isomorphism class, each carrying its
/// automorphism group. Distinct entries are non-isomorphic.
class Groupoid {
 public:
  Groupoid() = default;
  explicit Groupoid(std::vector<GroupoidObject> objects) : objects_(std::move(objects)) {
    std::set<std::string> names;
    for (const auto& o : objects_)
      if (!names.insert(o.name).second)
        throw AxiomViolation("duplicate groupoid object name '" + o.name + "'");
  }

  std::size_t size() const { return objects_.size(); }
  bool empty() const { return objects_.empty(); }
  const GroupoidObject& operator[](std::size_t i) const { return objects_[i]; }
  const FinGroup& aut(std::size_t i) const { return objects_.at(i).aut; }
  const std::vector<GroupoidObject>& objects() const { return objects_; }
  auto begin() const { return objects_.begin(); }
  auto end() const { return objects_.end(); }

  std::size_t index_of(const std::string& name) const {
    for (std::size_t i = 0; i < objects_.size(); ++i)
      if (objects_[i].name == name) return i;
    throw IndexOutOfRange("no object named '" + name + "'");
  }

  friend bool operator==(const Groupoid&, const Groupoid&) = default;

  /// The groupoid with a single object and trivial automorphism group.
  static Groupoid terminal(const std::string& name = "*") {
    return Groupoid({{name, FinGroup::trivial()}});
  }
  /// One object with automorphism group `g` (the delooping BG).
  static Groupoid delooping(const FinGroup& g, const std::string& name = "*") {
    return Groupoid({{name, g}});
  }
  /// A finite set viewed as a discrete groupoid.
  static Groupoid discrete(const std::vector<std::string>& names) {
    std::vector<GroupoidObject> objs;
    for (const auto& n : names) objs.push_back({n, FinGroup::trivial()});
    return Groupoid(std::move(objs));
  }

 private:
  std::vector<GroupoidObject> objects_;
};

inline Rational groupoid_cardinality(const Groupoid& x) {
  Rational sum(0);
  for (const auto& o : x) sum += Rational(1, static_cast<std::int64_t>(o.aut.order()));
  return sum;
}

inline Groupoid disjoint_union(const Groupoid& a, const Groupoid& b) {
  auto objs = a.objects();
  objs.insert(objs.end(), b.begin(), b.end());
  return Groupoid(std::move(objs));
}

/// A functor between skeletal groupoids: a map on objects plus, for every
/// source object, a homomorphism from its automorphism group to that of its
/// image.
struct GroupoidFunctor {
  Groupoid source;
  Groupoid target;
  std::vector<std::size_t> object_map;
  std::vector<GroupHom> hom_maps;

  friend bool operator==(const GroupoidFunctor&, const GroupoidFunctor&) = default;
};

inline void check_functor(const GroupoidFunctor& f) {
  if (f.object_map.size() != f.source.size() || f.hom_maps.size() != f.source.size())
    throw InvalidFunctor("object/hom tables do not match the source groupoid");
  for (std::size_t i = 0; i < f.source.size(); ++i) {
    if (f.object_map[i] >= f.target.size())
      throw InvalidFunctor("object " + f.source[i].name + " maps outside the target");
    if (f.hom_maps[i].source != f.source.aut(i) ||
        f.hom_maps[i].target != f.target.aut(f.object_map[i]))
      throw InvalidFunctor("hom map at object " + f.source[i].name +
                           " has the wrong source or target group");
  }
}

inline GroupoidFunctor make_functor(Groupoid source, Groupoid target,
                                    std::vector<std::size_t> object_map,
                                    std::vector<GroupHom> hom_maps) {
  GroupoidFunctor f{std::move(source), std::move(target), std::move(object_map),
                    std::move(hom_maps)};
  check_functor(f);
  return f;
}

inline GroupoidFunctor identity_functor(const Groupoid& a) {
  GroupoidFunctor f{a, a, {}, {}};
  for (std::size_t i = 0; i < a.size(); ++i) {
    f.object_map.push_back(i);
    f.hom_maps.push_back(identity_hom(a.aut(i)));
  }
  return f;
}

/// The unique functor to the terminal groupoid.
inline GroupoidFunctor to_terminal(const Groupoid& a, const Groupoid& terminal = Groupoid::terminal()) {
  if (terminal.size() != 1 || terminal.aut(0).order() != 1)
    throw InvalidFunctor("target is not a terminal groupoid");
  GroupoidFunctor f{a, terminal, std::vector<std::size_t>(a.size(), 0), {}};
  for (const auto& o : a) f.hom_maps.push_back(trivial_hom(o.aut, terminal.aut(0)));
  return f;
}

/// outer ∘ inner
inline GroupoidFunctor compose(const GroupoidFunctor& outer, const GroupoidFunctor& inner) {
  if (inner.target != outer.source) throw TargetMismatch("cannot compose functors");
  GroupoidFunctor f{inner.source, outer.target, {}, {}};
  for (std::size_t i = 0; i < inner.source.size(); ++i) {
    const auto j = inner.object_map[i];
    f.object_map.push_back(outer.object_map[j]);
    f.hom_maps.push_back(compose(outer.hom_maps[j], inner.hom_maps[i]));
  }
  return f;
}

/// A span  source <-left- apex -right-> target.
struct Span {
  GroupoidFunctor left;
  GroupoidFunctor right;

  const Groupoid& apex() const { return left.source; }
  const Groupoid& source() const { return left.target; }
  const Groupoid& target() const { return right.target; }

  friend bool operator==(const Span&, const Span&) = default;
};

inline Span make_span(GroupoidFunctor left, GroupoidFunctor right) {
  check_functor(left);
  check_functor(right);
  if (left.source != right.source) throw SpanMismatch("span legs have different apexes");
  return Span{std::move(left), std::move(right)};
}

inline Span identity_span(const Groupoid& a) {
  return Span{identity_functor(a), identity_functor(a)};
}

inline Span reverse_span(const Span& x) { return Span{x.right, x.left}; }

/// A span of span maps  top <-up- apex -down-> bottom  between two parallel
/// spans. Only strictly commuting diagrams are representable.
struct SpanMap {
  Span top;
  Span bottom;
  GroupoidFunctor up;
  GroupoidFunctor down;

  const Groupoid& apex() const { return up.source; }

  friend bool operator==(const SpanMap&, const SpanMap&) = default;
};

inline void check_strict(const GroupoidFunctor& a, const GroupoidFunctor& b, const char* what) {
  if (a.object_map != b.object_map)
    throw StrictnessViolation(std::string(what) + " legs disagree on objects");
  for (std::size_t i = 0; i < a.hom_maps.size(); ++i)
    if (a.hom_maps[i].map != b.hom_maps[i].map)
      throw StrictnessViolation(std::string(what) + " legs disagree on morphisms at object " +
                                a.source[i].name);
}

inline void check_spanmap(const SpanMap& y) {
  if (y.top.source() != y.bottom.source() || y.top.target() != y.bottom.target())
    throw SpanMismatch("top and bottom spans are not parallel");
  check_functor(y.up);
  check_functor(y.down);
  if (y.up.source != y.down.source) throw SpanMismatch("span map legs have different apexes");
  if (y.up.target != y.top.apex()) throw SpanMismatch("up leg does not land in the top apex");
  if (y.down.target != y.bottom.apex())
    throw SpanMismatch("down leg does not land in the bottom apex");
  check_strict(compose(y.top.left, y.up), compose(y.bottom.left, y.down), "source-side");
  check_strict(compose(y.top.right, y.up), compose(y.bottom.right, y.down), "target-side");
}

inline SpanMap make_spanmap(Span top, Span bottom, GroupoidFunctor up, GroupoidFunctor down) {
  SpanMap y{std::move(top), std::move(bottom), std::move(up), std::move(down)};
  check_spanmap(y);
  return y;
}

inline SpanMap identity_spanmap(const Span& x) {
  return SpanMap{x, x, identity_functor(x.apex()), identity_functor(x.apex())};
}

/// Σ 1/#Aut(y) over apex objects y lying over (x1, x2).
inline Rational essential_preimage_cardinality(const SpanMap& sm, std::size_t x1, std::size_t x2) {
  if (x1 >= sm.top.apex().size() || x2 >= sm.bottom.apex().size())
    throw IndexOutOfRange("object index outside the top/bottom apex");
  Rational sum(0);
  for (std::size_t y = 0; y < sm.apex().size(); ++y)
    if (sm.up.object_map[y] == x1 && sm.down.object_map[y] == x2)
      sum += Rational(1, static_cast<std::int64_t>(sm.apex().aut(y).order()));
  return sum;
}

}  // namespace lincat::gpd
