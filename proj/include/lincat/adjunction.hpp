#pragma once

// The two-sided adjunction between restriction f* and induction f_* along a
// group homomorphism f: G → H, with explicit unit and counit matrices in the
// distinguished bases of InducedModel.

#include <array>
#include <string>
#include <vector>

#include "lincat/error.hpp"
#include "lincat/rep.hpp"

namespace lincat::rep {

namespace detail {

inline bool same_matrices(const RepModel& a, const RepModel& b) {
  if (a.group != b.group || a.dim != b.dim) return false;
  for (std::size_t g = 0; g < a.matrices.size(); ++g)
    if (max_abs(a.matrices[g] - b.matrices[g]) > 1e-12) return false;
  return true;
}

// m must be induce(f, restrict(f, w)).
inline void require_restriction_model(const InducedModel& m, const RepModel& w) {
  if (!same_matrices(m.source, restrict_rep(m.f, w)))
    throw ModelMismatch("induced model was not built from the restriction of the given representation");
}

}  // namespace detail

/// Ind(φ) for a G-map φ: V1 → V2, from model a = induce(f,V1) to b = induce(f,V2).
inline Matrix induce_map(const InducedModel& a, const InducedModel& b, const Matrix& phi) {
  if (!(a.f == b.f)) throw ModelMismatch("induced models along different homomorphisms");
  if (static_cast<std::size_t>(phi.rows()) != b.source.dim ||
      static_cast<std::size_t>(phi.cols()) != a.source.dim)
    throw ModelMismatch("map shape does not match the induced models");
  Matrix out = Matrix::Zero(b.model.dim, a.model.dim);
  const std::size_t q = a.block();
  for (std::size_t i = 0; i < a.coset_reps.size(); ++i)
    out.middleCols(i * q, q) = b.embed_matrix(a.coset_reps[i]) * phi * a.invariants;
  return out;
}

/// The canonical isomorphism f1_* f2_* U → (f1∘f2)_* U,
/// h ⊗ (g ⊗ u) ↦ h·f1(g) ⊗ u, for outer = induce(f1, inner.model),
/// inner = induce(f2, U) and comp = induce(f1∘f2, U).
inline Matrix transitivity(const InducedModel& outer, const InducedModel& inner,
                           const InducedModel& comp) {
  if (!detail::same_matrices(outer.source, inner.model) ||
      !detail::same_matrices(inner.source, comp.source) ||
      !(gpd::compose(outer.f, inner.f) == comp.f))
    throw ModelMismatch("models do not form an iterated induction");
  const auto& h = outer.f.target;
  const std::size_t qi = inner.block(), qo = outer.block();
  Matrix out(comp.model.dim, outer.model.dim);
  for (std::size_t i = 0; i < outer.coset_reps.size(); ++i) {
    Matrix mi(comp.model.dim, inner.model.dim);
    for (std::size_t l = 0; l < inner.coset_reps.size(); ++l)
      mi.middleCols(l * qi, qi) =
          comp.embed_matrix(h.mul(outer.coset_reps[i], outer.f(inner.coset_reps[l]))) * inner.invariants;
    out.middleCols(i * qo, qo) = mi * outer.invariants;
  }
  return out;
}

/// η_L: V → f* f_* V,  v ↦ e ⊗ v.
inline Matrix eta_L(const InducedModel& m) { return m.embed_matrix(0); }

/// ε_L: f_* f* W → W,  h_i ⊗ v ↦ ρ_W(h_i) v.
inline Matrix eps_L(const InducedModel& m, const RepModel& w) {
  detail::require_restriction_model(m, w);
  const std::size_t q = m.block();
  Matrix out(w.dim, m.model.dim);
  for (std::size_t i = 0; i < m.coset_reps.size(); ++i)
    out.middleCols(i * q, q) = w.matrices[m.coset_reps[i]] * m.invariants;
  return out;
}

/// η_R: W → f_* f* W,  v ↦ (1/#G) Σ_{k∈H} k⁻¹ ⊗ ρ_W(k) v.
inline Matrix eta_R(const InducedModel& m, const RepModel& w) {
  detail::require_restriction_model(m, w);
  const auto& h = m.f.target;
  Matrix out = Matrix::Zero(m.model.dim, w.dim);
  for (Elem k = 0; k < h.order(); ++k) out += m.embed_matrix(h.inv(k)) * w.matrices[k];
  return out / static_cast<double>(m.f.source.order());
}

/// ε_R: f* f_* V → V,  h ⊗ v ↦ Σ_{g ∈ f⁻¹(h)} ρ_V(g) v. On the distinguished
/// basis only the coset im f (representative e) contributes, each term
/// ρ_V(g)v equal to v on kernel invariants, giving #ker f · v.
inline Matrix eps_R(const InducedModel& m) {
  Matrix out = Matrix::Zero(m.source.dim, m.model.dim);
  const double ker = static_cast<double>(gpd::kernel(m.f).size());
  out.leftCols(m.block()) = ker * m.invariants;
  return out;
}

/// Evaluation scaled by #G/#H, the normalisation that agrees with eps_R
/// exactly when f is surjective.
inline Matrix eps_R_group_ratio(const InducedModel& m) {
  Matrix out = Matrix::Zero(m.source.dim, m.model.dim);
  const double ratio =
      static_cast<double>(m.f.source.order()) / static_cast<double>(m.f.target.order());
  out.leftCols(m.block()) = ratio * m.invariants;
  return out;
}

/// Hom_{C[G]}(C[H], V) as functions φ on H with φ(f(g)k) = ρ(g)φ(k), basis
/// φ_{l,j}: φ(k_l) = Q e_j on right coset representatives k_l.
struct HomModel {
  RepModel model;
  const InducedModel* tensor = nullptr;

  /// The value φ(k) ∈ V as a map from hom-model coordinates.
  Matrix evaluate(Elem k) const {
    const auto& m = *tensor;
    const auto& h = m.f.target;
    const std::size_t l = m.right_coset_of[k];
    const Elem u = h.mul(k, h.inv(m.right_coset_reps[l]));
    Matrix out = Matrix::Zero(m.source.dim, model.dim);
    out.middleCols(l * m.block(), m.block()) = m.source.matrices[m.section[u]] * m.invariants;
    return out;
  }
};

inline HomModel hom_model(const InducedModel& m) {
  HomModel hm{RepModel{m.f.target, m.right_coset_reps.size() * m.block(), {}, {}}, &m};
  for (std::size_t l = 0; l < m.right_coset_reps.size(); ++l)
    for (std::size_t j = 0; j < m.block(); ++j)
      hm.model.basis_labels.push_back("k" + std::to_string(m.right_coset_reps[l]) + "↦e" +
                                      std::to_string(j));
  // (x·φ)(k) = φ(k x)
  const auto& h = m.f.target;
  const std::size_t q = m.block();
  for (Elem x = 0; x < h.order(); ++x) {
    Matrix mat = Matrix::Zero(hm.model.dim, hm.model.dim);
    for (std::size_t l = 0; l < m.right_coset_reps.size(); ++l)
      mat.middleRows(l * q, q) = m.invariants.adjoint() * hm.evaluate(h.mul(m.right_coset_reps[l], x));
    hm.model.matrices.push_back(std::move(mat));
  }
  return hm;
}

/// The Nakayama map N: Hom_{C[G]}(C[H], V) → C[H] ⊗_{C[G]} V,
/// φ ↦ (1/#G) Σ_{k∈H} k⁻¹ ⊗ φ(k).
inline Matrix nakayama(const InducedModel& m, const Tolerance& tol = {}) {
  const auto hm = hom_model(m);
  const auto& h = m.f.target;
  Matrix out = Matrix::Zero(m.model.dim, hm.model.dim);
  for (Elem k = 0; k < h.order(); ++k) out += m.embed_matrix(h.inv(k)) * hm.evaluate(k);
  out /= static_cast<double>(m.f.source.order());
  if (out.rows() != out.cols() || condition_number(out) > 1.0 / tol.eq)
    throw SingularMap("Nakayama map is not invertible");
  return out;
}

inline Matrix nakayama(const GroupHom& f, const RepModel& v, const Tolerance& tol = {}) {
  return nakayama(induce(f, v), tol);
}

/// can: W → Hom_{C[G]}(C[H], f* W), v ↦ (k ↦ ρ_W(k) v), in hom-model coordinates.
inline Matrix canonical_map(const InducedModel& m, const RepModel& w) {
  detail::require_restriction_model(m, w);
  const std::size_t q = m.block();
  Matrix out(m.right_coset_reps.size() * q, w.dim);
  for (std::size_t l = 0; l < m.right_coset_reps.size(); ++l)
    out.middleRows(l * q, q) = m.invariants.adjoint() * w.matrices[m.right_coset_reps[l]];
  return out;
}

/// Evaluation at the identity, ev: Hom_{C[G]}(C[H], V) → V.
inline Matrix evaluation_map(const InducedModel& m) {
  Matrix out = Matrix::Zero(m.source.dim, m.right_coset_reps.size() * m.block());
  out.leftCols(m.block()) = m.invariants;
  return out;
}

/// Maximal deviations from the identity of the four triangle composites:
///   [0] ε_L(f_*V) ∘ f_*(η_L V)     on f_*V
///   [1] f*(ε_L W) ∘ η_L(f*W)       on f*W
///   [2] f_*(ε_R V) ∘ η_R(f_*V)     on f_*V
///   [3] ε_R(f*W) ∘ f*(η_R W)       on f*W
/// Probes over the source group exercise [0] and [2]; probes over the target
/// group exercise [1] and [3].
struct ZigzagReport {
  std::array<double, 4> deviation{0, 0, 0, 0};
  std::size_t probes = 0;

  double max() const { return *std::max_element(deviation.begin(), deviation.end()); }
  bool ok(const Tolerance& tol = {}) const { return max() < tol.eq; }
};

inline ZigzagReport verify_zigzag(const GroupHom& f, const std::vector<RepModel>& probes) {
  ZigzagReport rep;
  auto dev = [](const Matrix& m) { return max_abs(m - identity(static_cast<std::size_t>(m.rows()))); };
  for (const auto& p : probes) {
    bool used = false;
    if (p.group == f.source) {
      const auto a = induce(f, p);
      const auto b = induce(f, restrict_rep(f, a.model));
      const Matrix left = eps_L(b, a.model) * induce_map(a, b, eta_L(a));
      const Matrix right = induce_map(b, a, eps_R(a)) * eta_R(b, a.model);
      rep.deviation[0] = std::max(rep.deviation[0], dev(left));
      rep.deviation[2] = std::max(rep.deviation[2], dev(right));
      used = true;
    }
    if (p.group == f.target) {
      const auto a = induce(f, restrict_rep(f, p));
      rep.deviation[1] = std::max(rep.deviation[1], dev(eps_L(a, p) * eta_L(a)));
      rep.deviation[3] = std::max(rep.deviation[3], dev(eps_R(a) * eta_R(a, p)));
      used = true;
    }
    if (!used) throw GroupMismatch("probe is a representation of neither end of the homomorphism");
    ++rep.probes;
  }
  return rep;
}

}  // namespace lincat::rep
