#pragma once

// The 2-linearization Λ: groupoids to 2-vector spaces, spans to 2-linear maps,
// spans of span maps to 2-morphisms, plus degroupoidification and the
// compositor comparing Λ(X'∘X) with Λ(X')∘Λ(X).

#include <algorithm>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "lincat/adjunction.hpp"
#include "lincat/error.hpp"
#include "lincat/groupoid.hpp"
#include "lincat/pullback.hpp"
#include "lincat/rational.hpp"
#include "lincat/rep.hpp"
#include "lincat/twovect.hpp"

namespace lincat::lambda {

using gpd::Elem;
using gpd::Groupoid;
using gpd::GroupHom;
using gpd::Span;
using gpd::SpanMap;
using rep::Config;
using twovect::BlockMatrix;
using twovect::DimMatrix;
using twovect::TwoBasis;
using twovect::TwoLinearMap;
using twovect::TwoMorphism;

/// Λ(A): one basis element per (object, irrep of its automorphism group).
struct LambdaObject {
  Groupoid groupoid;
  TwoBasis basis;
  std::vector<rep::IrrepCache::Entry> irrep_tables;
  std::vector<std::size_t> offsets;

  std::size_t index(std::size_t obj, std::size_t irrep) const { return offsets[obj] + irrep; }
  std::size_t irrep_count(std::size_t obj) const { return irrep_tables[obj]->size(); }
  const rep::Irrep& irrep(std::size_t obj, std::size_t r) const { return (*irrep_tables[obj])[r]; }
};

inline LambdaObject lambda_object(const Groupoid& a, const Config& cfg = {}) {
  LambdaObject out{a, {}, {}, {}};
  std::vector<twovect::BasisLabel> labels;
  for (std::size_t i = 0; i < a.size(); ++i) {
    out.offsets.push_back(labels.size());
    out.irrep_tables.push_back(rep::cached_irreps(a.aut(i), cfg));
    for (std::size_t r = 0; r < out.irrep_tables.back()->size(); ++r)
      labels.push_back({a[i].name, r, (*out.irrep_tables.back())[r].dim});
  }
  out.basis = twovect::make_basis(std::move(labels));
  return out;
}

/// The hom-basis elements of a matrix entry contributed by one apex object.
struct Witness {
  std::size_t apex_object;
  std::size_t offset;
  std::size_t count;
};
using WitnessTable = std::vector<std::vector<std::vector<Witness>>>;

struct LambdaSpanResult {
  Span span;
  LambdaObject source;
  LambdaObject target;
  TwoLinearMap map;
  WitnessTable witnesses;

  const Witness* witness(std::size_t row, std::size_t col, std::size_t x) const {
    for (const auto& w : witnesses[row][col])
      if (w.apex_object == x) return &w;
    return nullptr;
  }
};

/// Λ(X) = t_* s^*. Entry ((a2,W2),(a1,W1)) is ⊕_x Hom_{Aut x}(s_x* W1, t_x* W2)
/// over apex objects x lying over (a1,a2), with intertwiner bases in apex
/// order. Each count is cross-checked against the multiplicity of W2 in
/// (t_x)_*(s_x)^* W1.
inline LambdaSpanResult lambda_span(const Span& x, const Config& cfg = {}) {
  LambdaSpanResult out{x, lambda_object(x.source(), cfg), lambda_object(x.target(), cfg), {}, {}};
  const auto rows = out.target.basis.size(), cols = out.source.basis.size();
  out.map = TwoLinearMap{out.source.basis, out.target.basis, twovect::zero_dims(rows, cols),
                         twovect::HomBases(rows, std::vector<std::vector<Matrix>>(cols))};
  out.witnesses.assign(rows, std::vector<std::vector<Witness>>(cols));
  auto& hb = *out.map.hom_bases;
  for (std::size_t p = 0; p < x.apex().size(); ++p) {
    const auto a1 = x.left.object_map[p], a2 = x.right.object_map[p];
    const auto& s = x.left.hom_maps[p];
    const auto& t = x.right.hom_maps[p];
    for (std::size_t i = 0; i < out.source.irrep_count(a1); ++i) {
      const auto v1 = rep::restrict_rep(s, out.source.irrep(a1, i).model());
      const auto induced = rep::character(rep::induce_rep(t, v1));
      for (std::size_t j = 0; j < out.target.irrep_count(a2); ++j) {
        const auto& w2 = out.target.irrep(a2, j);
        const auto basis = rep::intertwiner_basis(v1, rep::restrict_rep(t, w2.model()), cfg.tol);
        const auto check = rep::hom_dim(induced, w2.character, cfg.tol);
        if (check != basis.size())
          throw DimensionMismatch("apex object " + x.apex()[p].name + ": " +
                                  std::to_string(basis.size()) + " intertwiners but induced multiplicity " +
                                  std::to_string(check));
        if (basis.empty()) continue;
        const auto r = out.target.index(a2, j), c = out.source.index(a1, i);
        out.witnesses[r][c].push_back({p, out.map.dims[r][c], basis.size()});
        out.map.dims[r][c] += basis.size();
        for (const auto& b : basis) hb[r][c].push_back(b);
      }
    }
  }
  return out;
}

/// Matrix over iso classes, entry [target k][source i] = Σ_x #Aut(i)/#Aut(x)
/// over apex classes x lying over (i, k).
inline std::vector<std::vector<Rational>> degroupoidify(const Span& x) {
  std::vector<std::vector<Rational>> m(x.target().size(), std::vector<Rational>(x.source().size(), Rational(0)));
  for (std::size_t p = 0; p < x.apex().size(); ++p) {
    const auto i = x.left.object_map[p], k = x.right.object_map[p];
    m[k][i] += Rational(static_cast<std::int64_t>(x.source().aut(i).order()),
                        static_cast<std::int64_t>(x.apex().aut(p).order()));
  }
  return m;
}

/// Matrix over (bottom apex, top apex) classes, entry #Aut(x1)·Σ_y 1/#Aut(y)
/// over y lying over (x1, x2).
inline std::vector<std::vector<Rational>> degroupoidify_2cell(const SpanMap& y) {
  const auto& top = y.top.apex();
  const auto& bottom = y.bottom.apex();
  std::vector<std::vector<Rational>> m(bottom.size(), std::vector<Rational>(top.size(), Rational(0)));
  for (std::size_t x2 = 0; x2 < bottom.size(); ++x2)
    for (std::size_t x1 = 0; x1 < top.size(); ++x1)
      m[x2][x1] = gpd::essential_preimage_cardinality(y, x1, x2) *
                  Rational(static_cast<std::int64_t>(top.aut(x1).order()));
  return m;
}

struct BlockCoefficient {
  std::size_t x1;
  std::size_t x2;
  Rational value;
};

struct LambdaSpanMapResult {
  SpanMap spanmap;
  LambdaSpanResult top;
  LambdaSpanResult bottom;
  TwoMorphism morphism;
  std::vector<std::vector<std::vector<BlockCoefficient>>> coefficients;
  double dual_path_deviation = 0;
};

namespace detail {

inline cplx frobenius(const Matrix& a, const Matrix& b) { return (a.adjoint() * b).trace(); }

// (1/|G|) Σ_g ρ2(g)^{-1} f ρ1(g) for representations given by homs into the
// automorphism groups carrying w1, w2.
inline Matrix average(const GroupHom& h1, const rep::Irrep& w1, const GroupHom& h2,
                      const rep::Irrep& w2, const Matrix& f) {
  const auto& g = h1.source;
  Matrix out = Matrix::Zero(f.rows(), f.cols());
  for (Elem x = 0; x < g.order(); ++x) out += w2.matrices[h2(g.inv(x))] * f * w1.matrices[h1(x)];
  return out / static_cast<double>(g.order());
}

}  // namespace detail

/// The 2-cell of Y evaluated through units and counits: for each witness pair
/// (x1, x2) and each y over it, the composite
///   t1_* s1^* ─η_R─▶ t1_* s_* s^* s1^* ≅ t2_* t_* t^* s2^* ─ε_L─▶ t2_* s2^*
/// acts on matrix elements Hom(Λ(X)W1, W2) by precomposition. Returned
/// blocks are the Hilbert adjoints of that action, mapping top hom bases to
/// bottom ones, so they are directly comparable with the closed form.
inline BlockMatrix unit_counit_blocks(const SpanMap& y, const LambdaSpanResult& top,
                                      const LambdaSpanResult& bottom) {
  const auto& x1s = y.top;
  const auto& x2s = y.bottom;
  const auto rows = top.target.basis.size(), cols = top.source.basis.size();
  BlockMatrix blocks(rows, std::vector<Matrix>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      blocks[r][c] = Matrix::Zero(bottom.map.dims[r][c], top.map.dims[r][c]);

  for (std::size_t yi = 0; yi < y.apex().size(); ++yi) {
    const auto x1 = y.up.object_map[yi], x2 = y.down.object_map[yi];
    const auto a1 = x1s.left.object_map[x1], a2 = x1s.right.object_map[x1];
    const auto& s1 = x1s.left.hom_maps[x1];
    const auto& t1 = x1s.right.hom_maps[x1];
    const auto& s2 = x2s.left.hom_maps[x2];
    const auto& t2 = x2s.right.hom_maps[x2];
    const auto& sy = y.up.hom_maps[yi];
    const auto& ty = y.down.hom_maps[yi];
    for (std::size_t i = 0; i < top.source.irrep_count(a1); ++i) {
      const auto& w1 = top.source.irrep(a1, i);
      const auto c = top.source.index(a1, i);
      const auto v = rep::restrict_rep(s1, w1.model());
      const auto vp = rep::restrict_rep(s2, w1.model());
      const auto u = rep::restrict_rep(sy, v);

      const auto ms = rep::induce(sy, u);
      const auto a = rep::induce(t1, v);
      const auto b = rep::induce(t1, ms.model);
      const auto comp = rep::induce(gpd::compose(t1, sy), u);
      const auto mt = rep::induce(ty, u);
      const auto d = rep::induce(t2, mt.model);
      const auto e = rep::induce(t2, vp);
      const Matrix theta = rep::induce_map(d, e, rep::eps_L(mt, vp)) *
                           rep::transitivity(d, mt, comp).inverse() * rep::transitivity(b, ms, comp) *
                           rep::induce_map(a, b, rep::eta_R(ms, v));

      for (std::size_t j = 0; j < top.target.irrep_count(a2); ++j) {
        const auto r = top.target.index(a2, j);
        const auto* wt = top.witness(r, c, x1);
        const auto* wb = bottom.witness(r, c, x2);
        if (!wt || !wb) continue;
        const auto& w2 = top.target.irrep(a2, j);
        const auto& b1 = (*top.map.hom_bases)[r][c];
        const auto& b2 = (*bottom.map.hom_bases)[r][c];
        for (std::size_t q = 0; q < wb->count; ++q) {
          const Matrix& f2 = b2[wb->offset + q];
          Matrix phi(w2.dim, e.model.dim);
          for (std::size_t h = 0; h < e.coset_reps.size(); ++h)
            phi.middleCols(h * e.block(), e.block()) = w2.matrices[e.coset_reps[h]] * f2 * e.invariants;
          const Matrix f1 = phi * theta * rep::eta_L(a);
          for (std::size_t p = 0; p < wt->count; ++p)
            blocks[r][c](static_cast<Eigen::Index>(wb->offset + q), static_cast<Eigen::Index>(wt->offset + p)) +=
                std::conj(detail::frobenius(b1[wt->offset + p], f1));
        }
      }
    }
  }
  return blocks;
}

/// Λ(Y): block ((a2,W2),(a1,W1)) sends the top basis element f at witness x1
/// to c(x1,x2)·P_{x2}(f) at each bottom witness x2, with
/// c(x1,x2) = #Aut(x1)·Σ_{y over (x1,x2)} 1/#Aut(y) and P_{x2} the average
/// over Aut(x2). The unit/counit evaluation is computed alongside and must
/// agree within tolerance.
inline LambdaSpanMapResult lambda_spanmap(const SpanMap& y, const Config& cfg = {},
                                          bool dual_path = true) {
  gpd::check_spanmap(y);
  LambdaSpanMapResult out{y, lambda_span(y.top, cfg), lambda_span(y.bottom, cfg), {}, {}, 0};
  const auto& top = out.top;
  const auto& bottom = out.bottom;
  const auto rows = top.target.basis.size(), cols = top.source.basis.size();
  out.morphism = TwoMorphism{top.map, bottom.map, BlockMatrix(rows, std::vector<Matrix>(cols))};
  out.coefficients.assign(rows, std::vector<std::vector<BlockCoefficient>>(cols));
  const auto coeff = degroupoidify_2cell(y);

  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      Matrix blk = Matrix::Zero(bottom.map.dims[r][c], top.map.dims[r][c]);
      const auto& lbl1 = top.source.basis[c];
      const auto& lbl2 = top.target.basis[r];
      const auto a1 = y.top.source().index_of(lbl1.object);
      const auto a2 = y.top.target().index_of(lbl2.object);
      const auto& w1 = top.source.irrep(a1, lbl1.irrep);
      const auto& w2 = top.target.irrep(a2, lbl2.irrep);
      for (const auto& wt : top.witnesses[r][c])
        for (const auto& wb : bottom.witnesses[r][c]) {
          const Rational k = coeff[wb.apex_object][wt.apex_object];
          if (k == Rational(0)) continue;
          out.coefficients[r][c].push_back({wt.apex_object, wb.apex_object, k});
          const auto& s2 = y.bottom.left.hom_maps[wb.apex_object];
          const auto& t2 = y.bottom.right.hom_maps[wb.apex_object];
          for (std::size_t p = 0; p < wt.count; ++p) {
            const Matrix proj = detail::average(s2, w1, t2, w2, (*top.map.hom_bases)[r][c][wt.offset + p]);
            for (std::size_t q = 0; q < wb.count; ++q)
              blk(static_cast<Eigen::Index>(wb.offset + q), static_cast<Eigen::Index>(wt.offset + p)) =
                  to_double(k) * detail::frobenius((*bottom.map.hom_bases)[r][c][wb.offset + q], proj);
          }
        }
      out.morphism.blocks[r][c] = std::move(blk);
    }

  if (dual_path) {
    out.dual_path_deviation =
        twovect::block_deviation(out.morphism.blocks, unit_counit_blocks(y, top, bottom));
    if (!(out.dual_path_deviation <= cfg.tol.eq))
      throw IntertwinerProjectionFailure("closed form and unit/counit evaluation differ by " +
                                         std::to_string(out.dual_path_deviation));
  }
  return out;
}

/// γ_{x,x'}: ⊕_p Ind_{P'_p} Res_{P_p} V → Res_{s'_{x'}} Ind_{t_x} V,
/// k ⊗ v ↦ s'(k)·m_p⁻¹ ⊗ v, for one probe V of Aut(x).
struct GammaCheck {
  std::size_t x;
  std::size_t xp;
  std::size_t irrep;
  std::size_t dim;
  double condition;
  double equivariance_defect;
  double well_defined_defect;
};

struct BetaReport {
  LambdaSpanResult first;      // Λ(X)
  LambdaSpanResult second;     // Λ(X')
  LambdaSpanResult composite;  // Λ(X'∘X)
  TwoLinearMap product;        // Λ(X')∘Λ(X)
  std::vector<GammaCheck> gammas;
  BlockMatrix beta_hom;  // per entry: product hom basis → composite hom basis
  double max_gamma_condition = 1;
  double max_gamma_defect = 0;
  double max_beta_condition = 1;
};

inline std::vector<GammaCheck> gamma_checks(const Span& x, const Span& xp,
                                            const gpd::ComposedSpan& cs, const Config& cfg = {}) {
  std::vector<GammaCheck> out;
  const auto& pb = cs.pullback;
  for (std::size_t xi = 0; xi < x.apex().size(); ++xi)
    for (std::size_t xj = 0; xj < xp.apex().size(); ++xj) {
      if (x.right.object_map[xi] != xp.left.object_map[xj]) continue;
      std::vector<std::size_t> ps;
      for (std::size_t p = 0; p < pb.objects.size(); ++p)
        if (pb.objects[p].left == xi && pb.objects[p].right == xj) ps.push_back(p);
      const auto& t = x.right.hom_maps[xi];
      const auto& sp = xp.left.hom_maps[xj];
      const auto& ga = t.target;
      const auto& gx = sp.source;
      const auto table = rep::cached_irreps(x.apex().aut(xi), cfg);
      for (std::size_t vi = 0; vi < table->size(); ++vi) {
        const auto v = (*table)[vi].model();
        const auto m = rep::induce(t, v);
        std::vector<rep::InducedModel> parts;
        std::size_t cols = 0;
        for (auto p : ps) {
          parts.push_back(rep::induce(pb.proj_right.hom_maps[p], rep::restrict_rep(pb.proj_left.hom_maps[p], v)));
          cols += parts.back().model.dim;
        }
        Matrix gamma = Matrix::Zero(m.model.dim, cols);
        std::vector<std::size_t> offs;
        std::size_t off = 0;
        for (std::size_t q = 0; q < ps.size(); ++q) {
          offs.push_back(off);
          const auto& mp = parts[q];
          const Elem minv = ga.inv(pb.objects[ps[q]].mediating);
          for (std::size_t i = 0; i < mp.coset_reps.size(); ++i)
            gamma.middleCols(off + i * mp.block(), mp.block()) =
                m.embed_matrix(ga.mul(sp(mp.coset_reps[i]), minv)) * mp.invariants;
          off += mp.model.dim;
        }
        GammaCheck g{xi, xj, vi, cols, 0, 0, 0};
        g.condition = gamma.rows() == gamma.cols() ? condition_number(gamma)
                                                   : std::numeric_limits<double>::infinity();
        for (Elem k = 0; k < gx.order(); ++k) {
          Matrix src = Matrix::Zero(cols, cols);
          for (std::size_t q = 0; q < ps.size(); ++q)
            src.block(offs[q], offs[q], parts[q].model.dim, parts[q].model.dim) = parts[q].model.matrices[k];
          g.equivariance_defect =
              std::max(g.equivariance_defect, max_abs(m.model.matrices[sp(k)] * gamma - gamma * src));
          for (std::size_t q = 0; q < ps.size(); ++q) {
            Matrix lifted = Matrix::Zero(cols, v.dim);
            lifted.middleRows(offs[q], parts[q].model.dim) = parts[q].embed_matrix(k);
            const Elem minv = ga.inv(pb.objects[ps[q]].mediating);
            g.well_defined_defect = std::max(
                g.well_defined_defect, max_abs(gamma * lifted - m.embed_matrix(ga.mul(sp(k), minv))));
          }
        }
        out.push_back(g);
      }
    }
  return out;
}

/// Per matrix entry, the map from the product hom space
/// ⊕_{w2} E(X)_{w2,w1} ⊗ E(X')_{w3,w2} to E(X'∘X)_{w3,w1} sending ι ⊗ ι' to
/// |Aut(x)·m·Aut(x')| ι'·ρ_{W2}(m)⁻¹·ι on every composite class (x, m, x')
/// over the witnesses. The double-coset weight matches the normalisation of
/// Λ on span maps, making β natural for horizontal composition.
inline BlockMatrix beta_hom(const LambdaSpanResult& first, const LambdaSpanResult& second,
                            const gpd::ComposedSpan& cs, const LambdaSpanResult& composite) {
  const auto& pb = cs.pullback;
  const auto nw1 = first.source.basis.size(), nw2 = first.target.basis.size(),
             nw3 = second.target.basis.size();
  auto owners = [](const std::vector<Witness>& ws) {
    std::vector<std::size_t> o;
    for (const auto& w : ws) o.insert(o.end(), w.count, w.apex_object);
    return o;
  };
  BlockMatrix out(nw3, std::vector<Matrix>(nw1));
  for (std::size_t w3 = 0; w3 < nw3; ++w3)
    for (std::size_t w1 = 0; w1 < nw1; ++w1) {
      std::size_t cols = 0;
      for (std::size_t w2 = 0; w2 < nw2; ++w2) cols += first.map.dims[w2][w1] * second.map.dims[w3][w2];
      Matrix blk = Matrix::Zero(composite.map.dims[w3][w1], cols);
      const auto& comp_basis = (*composite.map.hom_bases)[w3][w1];
      std::size_t col = 0;
      for (std::size_t w2 = 0; w2 < nw2; ++w2) {
        const auto ox = owners(first.witnesses[w2][w1]);
        const auto oxp = owners(second.witnesses[w3][w2]);
        const auto& lbl = first.target.basis[w2];
        const auto a2 = first.target.groupoid.index_of(lbl.object);
        const auto& w2rep = first.target.irrep(a2, lbl.irrep);
        for (std::size_t a = 0; a < ox.size(); ++a)
          for (std::size_t b = 0; b < oxp.size(); ++b, ++col)
            for (const auto& wp : composite.witnesses[w3][w1]) {
              const auto& po = pb.objects[wp.apex_object];
              if (po.left != ox[a] || po.right != oxp[b]) continue;
              const auto& ga = first.target.groupoid.aut(a2);
              const double weight = static_cast<double>(first.span.apex().aut(ox[a]).order() *
                                                        second.span.apex().aut(oxp[b]).order()) /
                                    static_cast<double>(po.aut_elements.size());
              const Matrix j = weight * (*second.map.hom_bases)[w3][w2][b] *
                               w2rep.matrices[ga.inv(po.mediating)] * (*first.map.hom_bases)[w2][w1][a];
              for (std::size_t r = 0; r < wp.count; ++r)
                blk(static_cast<Eigen::Index>(wp.offset + r), static_cast<Eigen::Index>(col)) =
                    detail::frobenius(comp_basis[wp.offset + r], j);
            }
      }
      out[w3][w1] = std::move(blk);
    }
  return out;
}

/// Compares Λ(X'∘X) with Λ(X')∘Λ(X): dimensions entrywise, γ on induced
/// models for every witness pair and irrep probe, and the hom-level β.
inline BetaReport beta_compositor(const Span& x, const Span& xp, const Config& cfg = {}) {
  const auto cs = gpd::compose_spans_detailed(x, xp);
  BetaReport rep{lambda_span(x, cfg), lambda_span(xp, cfg), lambda_span(cs.span, cfg), {}, {}, {}, 1, 0, 1};
  rep.product = twovect::compose_2linear(rep.first.map, rep.second.map);
  if (rep.product.dims != rep.composite.map.dims)
    throw DimensionMismatch("dims of the composite span differ from the product of dims");
  rep.gammas = gamma_checks(x, xp, cs, cfg);
  for (const auto& g : rep.gammas) {
    rep.max_gamma_condition = std::max(rep.max_gamma_condition, g.condition);
    rep.max_gamma_defect = std::max({rep.max_gamma_defect, g.equivariance_defect, g.well_defined_defect});
  }
  rep.beta_hom = beta_hom(rep.first, rep.second, cs, rep.composite);
  for (const auto& row : rep.beta_hom)
    for (const auto& b : row) rep.max_beta_condition = std::max(rep.max_beta_condition, condition_number(b));
  return rep;
}

}  // namespace lincat::lambda
