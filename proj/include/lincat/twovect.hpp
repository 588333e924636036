#pragma once

// Skeletal Kapranov–Voevodsky 2-vector spaces: bases of simple objects,
// 2-linear maps as matrices of dimensions (optionally with explicit hom-space
// bases), and 2-morphisms as block matrices of linear maps.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

#include "lincat/error.hpp"
#include "lincat/group.hpp"
#include "lincat/linalg.hpp"

namespace lincat::twovect {

struct BasisLabel {
  std::string object;
  std::size_t irrep = 0;
  std::size_t dim = 1;

  std::string name() const { return object + ":" + std::to_string(irrep); }
  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

struct TwoBasis {
  std::vector<BasisLabel> labels;

  std::size_t size() const { return labels.size(); }
  const BasisLabel& operator[](std::size_t i) const { return labels[i]; }
  friend bool operator==(const TwoBasis&, const TwoBasis&) = default;
};

inline TwoBasis make_basis(std::vector<BasisLabel> labels) {
  std::set<std::pair<std::string, std::size_t>> seen;
  for (const auto& l : labels)
    if (!seen.insert({l.object, l.irrep}).second)
      throw BasisMismatch("duplicate basis label " + l.name());
  return TwoBasis{std::move(labels)};
}

using DimMatrix = std::vector<std::vector<std::size_t>>;
/// hom_bases[row][col] lists a basis of the (row, col) hom space.
using HomBases = std::vector<std::vector<std::vector<Matrix>>>;
using BlockMatrix = std::vector<std::vector<Matrix>>;

/// A 2-linear map domain → codomain; dims is codomain.size() × domain.size().
struct TwoLinearMap {
  TwoBasis domain;
  TwoBasis codomain;
  DimMatrix dims;
  std::optional<HomBases> hom_bases;
};

/// A 2-morphism source ⇒ target; blocks[r][c] is target.dims[r][c] × source.dims[r][c].
struct TwoMorphism {
  TwoLinearMap source;
  TwoLinearMap target;
  BlockMatrix blocks;
};

inline DimMatrix zero_dims(std::size_t rows, std::size_t cols) {
  return DimMatrix(rows, std::vector<std::size_t>(cols, 0));
}

inline void check_2linear(const TwoLinearMap& t) {
  if (t.dims.size() != t.codomain.size())
    throw ShapeMismatch("dimension matrix has the wrong number of rows");
  for (const auto& row : t.dims)
    if (row.size() != t.domain.size())
      throw ShapeMismatch("dimension matrix has the wrong number of columns");
  if (!t.hom_bases) return;
  const auto& hb = *t.hom_bases;
  if (hb.size() != t.dims.size()) throw ShapeMismatch("hom bases have the wrong number of rows");
  for (std::size_t r = 0; r < hb.size(); ++r) {
    if (hb[r].size() != t.domain.size())
      throw ShapeMismatch("hom bases have the wrong number of columns");
    for (std::size_t c = 0; c < hb[r].size(); ++c)
      if (hb[r][c].size() != t.dims[r][c])
        throw ShapeMismatch("hom basis at (" + t.codomain[r].name() + ", " + t.domain[c].name() +
                            ") has " + std::to_string(hb[r][c].size()) + " elements, expected " +
                            std::to_string(t.dims[r][c]));
  }
}

inline void check_2morph(const TwoMorphism& m) {
  check_2linear(m.source);
  check_2linear(m.target);
  if (!(m.source.domain == m.target.domain) || !(m.source.codomain == m.target.codomain))
    throw BasisMismatch("source and target 2-linear maps are not parallel");
  if (m.blocks.size() != m.source.dims.size()) throw ShapeMismatch("block rows");
  for (std::size_t r = 0; r < m.blocks.size(); ++r) {
    if (m.blocks[r].size() != m.source.domain.size()) throw ShapeMismatch("block columns");
    for (std::size_t c = 0; c < m.blocks[r].size(); ++c)
      if (static_cast<std::size_t>(m.blocks[r][c].rows()) != m.target.dims[r][c] ||
          static_cast<std::size_t>(m.blocks[r][c].cols()) != m.source.dims[r][c])
        throw ShapeMismatch("block at (" + std::to_string(r) + "," + std::to_string(c) +
                            ") has the wrong shape");
  }
}

inline TwoLinearMap identity_2linear(const TwoBasis& b) {
  TwoLinearMap t{b, b, zero_dims(b.size(), b.size()), HomBases(b.size(), std::vector<std::vector<Matrix>>(b.size()))};
  for (std::size_t i = 0; i < b.size(); ++i) {
    t.dims[i][i] = 1;
    (*t.hom_bases)[i][i].push_back(identity(1));
  }
  return t;
}

inline TwoMorphism identity_2morph(const TwoLinearMap& t) {
  TwoMorphism m{t, t, BlockMatrix(t.dims.size())};
  for (std::size_t r = 0; r < t.dims.size(); ++r)
    for (std::size_t c = 0; c < t.domain.size(); ++c) m.blocks[r].push_back(identity(t.dims[r][c]));
  return m;
}

/// Apply a, then b. dims = b.dims · a.dims; when both carry hom bases the
/// composite entry (w,u) = ⊕_v a(v,u) ⊗ b(w,v) gets the Kronecker basis in
/// lexicographic order (v, a-index, b-index).
inline TwoLinearMap compose_2linear(const TwoLinearMap& a, const TwoLinearMap& b) {
  if (!(a.codomain == b.domain)) throw BasisMismatch("2-linear maps are not composable");
  const std::size_t nu = a.domain.size(), nv = a.codomain.size(), nw = b.codomain.size();
  TwoLinearMap out{a.domain, b.codomain, zero_dims(nw, nu), std::nullopt};
  const bool bases = a.hom_bases && b.hom_bases;
  if (bases) out.hom_bases = HomBases(nw, std::vector<std::vector<Matrix>>(nu));
  for (std::size_t w = 0; w < nw; ++w)
    for (std::size_t u = 0; u < nu; ++u)
      for (std::size_t v = 0; v < nv; ++v) {
        out.dims[w][u] += b.dims[w][v] * a.dims[v][u];
        if (!bases) continue;
        for (const auto& p : (*a.hom_bases)[v][u])
          for (const auto& q : (*b.hom_bases)[w][v])
            (*out.hom_bases)[w][u].push_back(Eigen::kroneckerProduct(p, q).eval());
      }
  return out;
}

/// The adjoint 2-linear map: transposed dims, hom bases replaced by their
/// conjugate transposes.
inline TwoLinearMap dagger(const TwoLinearMap& t) {
  const std::size_t rows = t.dims.size(), cols = t.domain.size();
  TwoLinearMap out{t.codomain, t.domain, zero_dims(cols, rows), std::nullopt};
  if (t.hom_bases) out.hom_bases = HomBases(cols, std::vector<std::vector<Matrix>>(rows));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      out.dims[c][r] = t.dims[r][c];
      if (t.hom_bases)
        for (const auto& m : (*t.hom_bases)[r][c]) (*out.hom_bases)[c][r].push_back(m.adjoint());
    }
  return out;
}

inline bool same_dims(const TwoLinearMap& a, const TwoLinearMap& b) {
  return a.domain == b.domain && a.codomain == b.codomain && a.dims == b.dims;
}

/// b ∘ a for a: S ⇒ T and b: T ⇒ U, blockwise.
inline TwoMorphism vcompose_2morph(const TwoMorphism& a, const TwoMorphism& b) {
  if (!same_dims(a.target, b.source))
    throw ShapeMismatch("vertical composite of non-adjacent 2-morphisms");
  TwoMorphism out{a.source, b.target, BlockMatrix(a.blocks.size())};
  for (std::size_t r = 0; r < a.blocks.size(); ++r)
    for (std::size_t c = 0; c < a.blocks[r].size(); ++c) out.blocks[r].push_back(b.blocks[r][c] * a.blocks[r][c]);
  return out;
}

/// Horizontal composite for a between maps U → V and b between maps V → W:
/// each block is the direct sum over the middle basis v of a(v,u) ⊗ b(w,v).
inline TwoMorphism hcompose_2morph(const TwoMorphism& a, const TwoMorphism& b) {
  if (!(a.source.codomain == b.source.domain))
    throw ShapeMismatch("horizontal composite of non-adjacent 2-morphisms");
  TwoMorphism out{compose_2linear(a.source, b.source), compose_2linear(a.target, b.target), {}};
  const std::size_t nu = a.source.domain.size(), nv = a.source.codomain.size(),
                    nw = b.source.codomain.size();
  out.blocks.assign(nw, std::vector<Matrix>(nu));
  for (std::size_t w = 0; w < nw; ++w)
    for (std::size_t u = 0; u < nu; ++u) {
      Matrix blk = Matrix::Zero(out.target.dims[w][u], out.source.dims[w][u]);
      Eigen::Index r0 = 0, c0 = 0;
      for (std::size_t v = 0; v < nv; ++v) {
        const Matrix k = Eigen::kroneckerProduct(a.blocks[v][u], b.blocks[w][v]).eval();
        blk.block(r0, c0, k.rows(), k.cols()) = k;
        r0 += k.rows();
        c0 += k.cols();
      }
      out.blocks[w][u] = std::move(blk);
    }
  return out;
}

/// max over blocks of the entrywise difference; infinity on shape mismatch.
inline double block_deviation(const BlockMatrix& a, const BlockMatrix& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double d = 0;
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (a[r].size() != b[r].size()) return std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < a[r].size(); ++c) {
      if (a[r][c].rows() != b[r][c].rows() || a[r][c].cols() != b[r][c].cols())
        return std::numeric_limits<double>::infinity();
      d = std::max(d, max_abs(a[r][c] - b[r][c]));
    }
  }
  return d;
}

/// (v ⋆ w)_h = Σ_{g·g' = h} v_g · w_{g'}: the product of the group 2-algebra
/// on dimension vectors.
inline std::vector<std::size_t> graded_convolution(const gpd::FinGroup& g,
                                                   const std::vector<std::size_t>& v,
                                                   const std::vector<std::size_t>& w) {
  if (v.size() != g.order() || w.size() != g.order())
    throw GroupMismatch("dimension vectors are not graded by the given group");
  std::vector<std::size_t> out(g.order(), 0);
  for (gpd::Elem a = 0; a < g.order(); ++a)
    for (gpd::Elem b = 0; b < g.order(); ++b) out[g.mul(a, b)] += v[a] * w[b];
  return out;
}

}  // namespace lincat::twovect
