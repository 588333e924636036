#pragma once

// Complex representations of finite groups: characters, irreducible
// representations, restriction and induction along homomorphisms, and
// intertwiner bases.

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "lincat/error.hpp"
#include "lincat/group.hpp"
#include "lincat/linalg.hpp"

namespace lincat::rep {

using gpd::Elem;
using gpd::FinGroup;
using gpd::GroupHom;

inline constexpr std::uint64_t kDefaultSeed = 1729;

/// Knobs shared by every numerical routine.
struct Config {
  Tolerance tol;
  std::uint64_t seed = kDefaultSeed;
};

/// Class function, one value per conjugacy class in class order.
struct Character {
  FinGroup group;
  std::vector<cplx> values;

  cplx at(Elem g) const { return values[group.class_of(g)]; }
};

/// A representation with explicit matrices in a distinguished basis.
struct RepModel {
  FinGroup group;
  std::size_t dim = 0;
  std::vector<Matrix> matrices;
  std::vector<std::string> basis_labels;
};

inline std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t j = 0; j < n; ++j) labels.push_back("e" + std::to_string(j));
  return labels;
}

struct Irrep {
  FinGroup group;
  std::size_t dim = 0;
  std::vector<Matrix> matrices;
  Character character;

  RepModel model() const { return RepModel{group, dim, matrices, default_labels(dim)}; }
};

inline Character character(const RepModel& r) {
  Character c{r.group, {}};
  for (const auto& cls : r.group.classes()) c.values.push_back(r.matrices[cls.front()].trace());
  return c;
}

/// (1/|G|) Σ_g a(g)·conj(b(g)).
inline cplx inner_product(const Character& a, const Character& b) {
  if (a.group != b.group) throw GroupMismatch("characters of different groups");
  cplx sum = 0;
  const auto& cls = a.group.classes();
  for (std::size_t i = 0; i < cls.size(); ++i)
    sum += static_cast<double>(cls[i].size()) * a.values[i] * std::conj(b.values[i]);
  return sum / static_cast<double>(a.group.order());
}

inline std::size_t hom_dim(const Character& a, const Character& b, const Tolerance& tol = {}) {
  const cplx v = inner_product(a, b);
  const double r = std::round(v.real());
  if (std::abs(v - cplx(r, 0)) > tol.integer || r < 0)
    throw NonIntegralMultiplicity("inner product " + std::to_string(v.real()) + "+" +
                                  std::to_string(v.imag()) + "i is not a nonnegative integer");
  return static_cast<std::size_t>(r);
}

inline RepModel trivial_rep(const FinGroup& g) {
  return RepModel{g, 1, std::vector<Matrix>(g.order(), identity(1)), {"e0"}};
}

/// C[G] with basis the group elements; g acts by left multiplication.
inline RepModel regular_rep(const FinGroup& g) {
  const auto n = g.order();
  RepModel r{g, n, {}, {}};
  for (Elem a = 0; a < n; ++a) {
    Matrix m = Matrix::Zero(n, n);
    for (Elem h = 0; h < n; ++h) m(g.mul(a, h), h) = 1;
    r.matrices.push_back(std::move(m));
    r.basis_labels.push_back("g" + std::to_string(a));
  }
  return r;
}

inline RepModel direct_sum(const RepModel& a, const RepModel& b) {
  if (a.group != b.group) throw GroupMismatch("direct sum of representations of different groups");
  RepModel r{a.group, a.dim + b.dim, {}, a.basis_labels};
  for (const auto& l : b.basis_labels) r.basis_labels.push_back(l + "'");
  for (Elem g = 0; g < a.group.order(); ++g) {
    Matrix m = Matrix::Zero(r.dim, r.dim);
    m.topLeftCorner(a.dim, a.dim) = a.matrices[g];
    m.bottomRightCorner(b.dim, b.dim) = b.matrices[g];
    r.matrices.push_back(std::move(m));
  }
  return r;
}

/// max over (a,b) of |ρ(ab) − ρ(a)ρ(b)|, together with |ρ(e) − 1|.
inline double homomorphism_defect(const RepModel& r) {
  double d = max_abs(r.matrices[0] - identity(r.dim));
  for (Elem a = 0; a < r.group.order(); ++a)
    for (Elem b = 0; b < r.group.order(); ++b)
      d = std::max(d, max_abs(r.matrices[r.group.mul(a, b)] - r.matrices[a] * r.matrices[b]));
  return d;
}

inline double unitarity_defect(const RepModel& r) {
  double d = 0;
  for (const auto& m : r.matrices) d = std::max(d, max_abs(m.adjoint() * m - identity(r.dim)));
  return d;
}

namespace detail {

inline double character_norm(const std::vector<Matrix>& rho) {
  double s = 0;
  for (const auto& m : rho) s += std::norm(m.trace());
  return s / static_cast<double>(rho.size());
}

inline std::vector<Matrix> compress(const std::vector<Matrix>& big, const Matrix& q) {
  std::vector<Matrix> out;
  out.reserve(big.size());
  for (const auto& m : big) out.push_back(q.adjoint() * m * q);
  return out;
}

// Splits the invariant subspace spanned by the orthonormal columns of q into
// irreducible pieces using eigenspaces of random equivariant operators.
inline void split(const std::vector<Matrix>& reg, const Matrix& q, std::mt19937_64& rng,
                  std::vector<Matrix>& out, const Tolerance& tol) {
  const auto rho = compress(reg, q);
  if (std::abs(character_norm(rho) - 1.0) < tol.integer) {
    out.push_back(q);
    return;
  }
  const Eigen::Index k = q.cols();
  std::normal_distribution<double> gauss;
  for (int attempt = 0; attempt < 8; ++attempt) {
    Matrix h(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = 0; j < k; ++j) h(i, j) = cplx(gauss(rng), gauss(rng));
    h = (h + h.adjoint()).eval();
    Matrix avg = Matrix::Zero(k, k);
    for (const auto& m : rho) avg += m * h * m.adjoint();
    avg /= static_cast<double>(rho.size());
    Eigen::SelfAdjointEigenSolver<Matrix> es(avg);
    const auto& ev = es.eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters;
    Eigen::Index start = 0;
    for (Eigen::Index i = 1; i <= k; ++i)
      if (i == k || ev(i) - ev(i - 1) > 1e-6 * scale) {
        clusters.emplace_back(start, i - start);
        start = i;
      }
    if (clusters.size() < 2) continue;
    for (auto [s, len] : clusters) split(reg, q * es.eigenvectors().middleCols(s, len), rng, out, tol);
    return;
  }
  throw NumericalFailure("equivariant operator failed to split a reducible subspace");
}

inline bool same_character(const std::vector<cplx>& a, const std::vector<cplx>& b, double tol) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol) return false;
  return true;
}

// Descending in (real, imag) per class, so the trivial character leads.
inline bool character_before(const std::vector<cplx>& a, const std::vector<cplx>& b, double tol) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i].real() - b[i].real()) > tol) return a[i].real() > b[i].real();
    if (std::abs(a[i].imag() - b[i].imag()) > tol) return a[i].imag() > b[i].imag();
  }
  return false;
}

}  // namespace detail

/// Complete list of irreducible unitary representations, obtained by
/// splitting the regular representation. Ordered by dimension, then by
/// character values (class order, real part before imaginary, descending).
inline std::vector<Irrep> irreps(const FinGroup& g, const Config& cfg = {}) {
  const auto reg = regular_rep(g).matrices;
  std::mt19937_64 rng(cfg.seed);
  std::vector<Matrix> pieces;
  detail::split(reg, identity(g.order()), rng, pieces, cfg.tol);

  std::vector<Irrep> out;
  for (const auto& q : pieces) {
    Irrep ir{g, static_cast<std::size_t>(q.cols()), detail::compress(reg, q), {}};
    ir.character = character(ir.model());
    bool dup = false;
    for (const auto& o : out)
      dup = dup || (o.dim == ir.dim &&
                    detail::same_character(o.character.values, ir.character.values, cfg.tol.integer));
    if (!dup) out.push_back(std::move(ir));
  }
  std::sort(out.begin(), out.end(), [&](const Irrep& a, const Irrep& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return detail::character_before(a.character.values, b.character.values, cfg.tol.integer);
  });
  std::size_t total = 0;
  for (const auto& ir : out) total += ir.dim * ir.dim;
  if (total != g.order() || out.size() != g.classes().size())
    throw NumericalFailure("irreducible decomposition incomplete: sum of squared dimensions " +
                           std::to_string(total) + " for a group of order " +
                           std::to_string(g.order()));
  return out;
}

/// Irrep tables keyed by (seed, multiplication table). Lookups take a shared
/// lock; a miss computes outside the lock and inserts under an exclusive one.
class IrrepCache {
 public:
  using Entry = std::shared_ptr<const std::vector<Irrep>>;

  Entry get(const FinGroup& g, const Config& cfg = {}) {
    const Key key{cfg.seed, g.table()};
    {
      std::shared_lock lock(mu_);
      if (auto it = map_.find(key); it != map_.end()) return it->second;
    }
    auto value = std::make_shared<const std::vector<Irrep>>(irreps(g, cfg));
    std::unique_lock lock(mu_);
    return map_.try_emplace(key, std::move(value)).first->second;
  }

 private:
  using Key = std::pair<std::uint64_t, gpd::Table>;
  std::shared_mutex mu_;
  std::map<Key, Entry> map_;
};

inline IrrepCache& default_irrep_cache() {
  static IrrepCache cache;
  return cache;
}

inline IrrepCache::Entry cached_irreps(const FinGroup& g, const Config& cfg = {}) {
  return default_irrep_cache().get(g, cfg);
}

/// f*r: the same space with g acting as r(f(g)).
inline RepModel restrict_rep(const GroupHom& f, const RepModel& r) {
  if (r.group != f.target) throw GroupMismatch("restriction along a hom with a different target");
  RepModel out{f.source, r.dim, {}, r.basis_labels};
  out.matrices.reserve(f.source.order());
  for (Elem g = 0; g < f.source.order(); ++g) out.matrices.push_back(r.matrices[f(g)]);
  return out;
}

/// C[H] ⊗_{C[G]} V for f: G → H, realised on V^{ker f} ⊗ (left cosets of
/// im f). Coset representatives and the section of f are minimal indices.
struct InducedModel {
  static constexpr Elem npos = static_cast<Elem>(-1);

  GroupHom f;
  RepModel source;
  Matrix invariants;                   // orthonormal basis Q of V^{ker f}
  std::vector<Elem> coset_reps;        // h_i
  std::vector<std::size_t> coset_of;   // h ∈ h_i·im f
  std::vector<Elem> right_coset_reps;  // k_l with H = ⊔ im f·k_l
  std::vector<std::size_t> right_coset_of;
  std::vector<Elem> section;  // minimal preimage, npos off the image
  RepModel model;

  std::size_t block() const { return static_cast<std::size_t>(invariants.cols()); }

  /// The linear map v ↦ k ⊗ v from V into the model.
  Matrix embed_matrix(Elem k) const {
    const auto& h = f.target;
    const std::size_t i = coset_of[k];
    const Elem u = h.mul(h.inv(coset_reps[i]), k);
    Matrix out = Matrix::Zero(model.dim, source.dim);
    out.middleRows(i * block(), block()) = invariants.adjoint() * source.matrices[section[u]];
    return out;
  }

  Vector embed(Elem k, const Vector& v) const { return embed_matrix(k) * v; }
};

inline InducedModel induce(const GroupHom& f, const RepModel& v) {
  if (v.group != f.source) throw GroupMismatch("induction of a representation of another group");
  const auto& h = f.target;
  InducedModel m{f, v, {}, {}, {}, {}, {}, {}, {}};

  Matrix avg = Matrix::Zero(v.dim, v.dim);
  const auto ker = gpd::kernel(f);
  for (auto g : ker) avg += v.matrices[g];
  avg /= static_cast<double>(ker.size());
  m.invariants = orthonormal_columns(avg);
  const double rank = avg.trace().real();
  if (std::abs(rank - static_cast<double>(m.invariants.cols())) > 1e-6)
    throw NumericalFailure("kernel-invariant subspace has unstable rank");

  m.section.assign(h.order(), InducedModel::npos);
  for (Elem g = f.source.order(); g-- > 0;) m.section[f(g)] = g;
  const auto im = gpd::image(f);
  m.coset_of.assign(h.order(), h.order());
  m.right_coset_of.assign(h.order(), h.order());
  for (Elem k = 0; k < h.order(); ++k) {
    if (m.coset_of[k] == h.order()) {
      for (auto u : im) m.coset_of[h.mul(k, u)] = m.coset_reps.size();
      m.coset_reps.push_back(k);
    }
    if (m.right_coset_of[k] == h.order()) {
      for (auto u : im) m.right_coset_of[h.mul(u, k)] = m.right_coset_reps.size();
      m.right_coset_reps.push_back(k);
    }
  }

  const std::size_t q = m.block(), n = m.coset_reps.size();
  m.model = RepModel{h, n * q, {}, {}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < q; ++j)
      m.model.basis_labels.push_back("h" + std::to_string(m.coset_reps[i]) + "⊗e" + std::to_string(j));
  for (Elem x = 0; x < h.order(); ++x) {
    Matrix mat = Matrix::Zero(n * q, n * q);
    for (std::size_t i = 0; i < n; ++i) {
      const Elem k = h.mul(x, m.coset_reps[i]);
      const std::size_t t = m.coset_of[k];
      const Elem u = h.mul(h.inv(m.coset_reps[t]), k);
      mat.block(t * q, i * q, q, q) =
          m.invariants.adjoint() * v.matrices[m.section[u]] * m.invariants;
    }
    m.model.matrices.push_back(std::move(mat));
  }
  return m;
}

inline RepModel induce_rep(const GroupHom& f, const RepModel& v) { return induce(f, v).model; }

/// Orthonormal (Frobenius) basis of Hom_G(r1, r2), obtained by group-averaging
/// the matrix units in column-major order and orthonormalising. Each element
/// is an r2.dim × r1.dim matrix.
inline std::vector<Matrix> intertwiner_basis(const RepModel& r1, const RepModel& r2,
                                             const Tolerance& tol = {}) {
  if (r1.group != r2.group) throw GroupMismatch("intertwiners between different groups");
  const auto expected = hom_dim(character(r1), character(r2), tol);
  if (expected == 0) return {};
  const auto& g = r1.group;
  const auto n1 = static_cast<Eigen::Index>(r1.dim), n2 = static_cast<Eigen::Index>(r2.dim);
  Matrix proj = Matrix::Zero(n1 * n2, n1 * n2);
  for (Elem x = 0; x < g.order(); ++x)
    proj += Eigen::kroneckerProduct(r1.matrices[x].transpose(), r2.matrices[g.inv(x)]).eval();
  proj /= static_cast<double>(g.order());
  const Matrix cols = orthonormal_columns(proj, 1e-7);
  if (static_cast<std::size_t>(cols.cols()) != expected)
    throw RankMismatch("intertwiner projection has rank " + std::to_string(cols.cols()) +
                       ", characters predict " + std::to_string(expected));
  std::vector<Matrix> out;
  for (Eigen::Index c = 0; c < cols.cols(); ++c)
    out.push_back(Eigen::Map<const Matrix>(cols.col(c).data(), n2, n1));
  return out;
}

/// max over g and basis elements of |r2(g)·B − B·r1(g)|.
inline double equivariance_defect(const RepModel& r1, const RepModel& r2, const Matrix& b) {
  double d = 0;
  for (Elem x = 0; x < r1.group.order(); ++x)
    d = std::max(d, max_abs(r2.matrices[x] * b - b * r1.matrices[x]));
  return d;
}

}  // namespace lincat::rep
