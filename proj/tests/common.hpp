#pragma once

// Shared builders for the test binaries.

#include <string>
#include <utility>
#include <vector>

#include "lincat/lincat.hpp"

namespace testing_support {

using namespace lincat;
using namespace lincat::gpd;

inline FinGroup s3() { return FinGroup::symmetric(3); }

// In symmetric(3), element 1 is a transposition and element 2 a 3-cycle.
inline GroupHom z2_in_s3() { return subgroup_inclusion(s3(), generate(s3(), {1})); }
inline GroupHom z3_in_s3() { return subgroup_inclusion(s3(), generate(s3(), {2})); }
inline GroupHom z4_onto_z2() {
  return make_hom(FinGroup::cyclic(4), FinGroup::cyclic(2), {0, 1, 0, 1});
}
inline GroupHom z2_onto_1() { return trivial_hom(FinGroup::cyclic(2), FinGroup::trivial()); }

inline GroupoidFunctor deloop(const GroupHom& f, const std::string& src = "*",
                              const std::string& tgt = "*") {
  return suite::delooping_functor(f, src, tgt);
}

inline GroupoidFunctor set_map(const Groupoid& src, const Groupoid& tgt, std::vector<std::size_t> m) {
  return suite::trivial_on_morphisms(src, tgt, std::move(m));
}

using suite::over_point;
using suite::set_span;

inline Span fig1() { return suite::fig1_span(); }

}  // namespace testing_support
