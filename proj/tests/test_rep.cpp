#include <gtest/gtest.h>

#include <thread>

#include "common.hpp"

using namespace testing_support;
using namespace lincat::rep;

namespace {

std::vector<GroupHom> fixture_homs() {
  return {z2_in_s3(), z3_in_s3(), z4_onto_z2(), z2_onto_1(), identity_hom(s3())};
}

std::vector<FinGroup> fixture_groups() {
  return {FinGroup::trivial(), FinGroup::cyclic(2), FinGroup::cyclic(3), FinGroup::cyclic(4), s3(),
          FinGroup::symmetric(4), direct_product(FinGroup::cyclic(2), FinGroup::cyclic(2))};
}

// Character of C[H] ⊗_{C[G]} V from the coset formula, independent of any model.
std::vector<cplx> induced_character(const GroupHom& f, const Character& chi) {
  const auto& h = f.target;
  std::vector<cplx> out;
  for (const auto& cls : h.classes()) {
    const Elem x = cls.front();
    cplx s = 0;
    for (Elem k = 0; k < h.order(); ++k) {
      const Elem c = h.mul(h.mul(k, x), h.inv(k));
      for (Elem g = 0; g < f.source.order(); ++g)
        if (f(g) == c) s += chi.at(g);
    }
    out.push_back(s / static_cast<double>(f.source.order()));
  }
  return out;
}

double frobenius_gram_defect(const std::vector<Matrix>& basis) {
  double d = 0;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const cplx ip = (basis[i].adjoint() * basis[j]).trace();
      d = std::max(d, std::abs(ip - cplx(i == j ? 1.0 : 0.0, 0)));
    }
  return d;
}

}  // namespace

TEST(Irreps, TrivialGroup) {
  const auto irr = irreps(FinGroup::trivial());
  ASSERT_EQ(irr.size(), 1u);
  EXPECT_EQ(irr[0].dim, 1u);
}

TEST(Irreps, Z2MatchesRegularDecomposition) {
  const auto irr = irreps(FinGroup::cyclic(2));
  ASSERT_EQ(irr.size(), 2u);
  EXPECT_NEAR(std::abs(irr[0].character.values[1] - cplx(1, 0)), 0, 1e-10);
  EXPECT_NEAR(std::abs(irr[1].character.values[1] - cplx(-1, 0)), 0, 1e-10);
  // Regular character = Σ dim·χ.
  const auto reg = character(regular_rep(FinGroup::cyclic(2)));
  EXPECT_NEAR(std::abs(reg.values[0] - (irr[0].character.values[0] + irr[1].character.values[0])), 0, 1e-10);
  EXPECT_NEAR(std::abs(reg.values[1] - (irr[0].character.values[1] + irr[1].character.values[1])), 0, 1e-10);
}

TEST(Irreps, S3Dimensions) {
  const auto irr = irreps(s3());
  ASSERT_EQ(irr.size(), 3u);
  EXPECT_EQ(irr[0].dim, 1u);
  EXPECT_EQ(irr[1].dim, 1u);
  EXPECT_EQ(irr[2].dim, 2u);
  EXPECT_NEAR(irr[0].character.values[1].real(), 1.0, 1e-10);   // trivial first
  EXPECT_NEAR(irr[1].character.values[1].real(), -1.0, 1e-10);  // sign
}

TEST(Irreps, CompletenessOrthogonalityAndUnitarity) {
  for (const auto& g : fixture_groups()) {
    const auto irr = irreps(g);
    std::size_t total = 0;
    for (std::size_t i = 0; i < irr.size(); ++i) {
      total += irr[i].dim * irr[i].dim;
      EXPECT_LT(homomorphism_defect(irr[i].model()), 1e-8);
      EXPECT_LT(unitarity_defect(irr[i].model()), 1e-8);
      for (std::size_t j = 0; j < irr.size(); ++j)
        EXPECT_NEAR(std::abs(inner_product(irr[i].character, irr[j].character) - cplx(i == j, 0)), 0, 1e-8);
    }
    EXPECT_EQ(total, g.order());
  }
}

TEST(Irreps, DeterministicForFixedSeed) {
  const auto a = irreps(FinGroup::symmetric(4));
  const auto b = irreps(FinGroup::symmetric(4));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t g = 0; g < a[i].matrices.size(); ++g)
      EXPECT_EQ(a[i].matrices[g], b[i].matrices[g]);
}

TEST(Irreps, CacheIsSafeUnderConcurrentReaders) {
  IrrepCache cache;
  std::vector<std::thread> threads;
  std::vector<std::size_t> counts(8);
  for (std::size_t t = 0; t < counts.size(); ++t)
    threads.emplace_back([&, t] { counts[t] = cache.get(t % 2 ? s3() : FinGroup::cyclic(4))->size(); });
  for (auto& th : threads) th.join();
  for (std::size_t t = 0; t < counts.size(); ++t) EXPECT_EQ(counts[t], t % 2 ? 3u : 4u);
  EXPECT_EQ(cache.get(s3()).get(), cache.get(s3()).get());
}

TEST(HomDim, Examples) {
  const auto z2 = irreps(FinGroup::cyclic(2));
  EXPECT_EQ(hom_dim(z2[0].character, z2[0].character), 1u);
  EXPECT_EQ(hom_dim(z2[0].character, z2[1].character), 0u);
  const auto reg = character(regular_rep(s3()));
  for (const auto& w : irreps(s3())) EXPECT_EQ(hom_dim(reg, w.character), w.dim);
  EXPECT_THROW(hom_dim(z2[0].character, reg), GroupMismatch);
  Character half{FinGroup::cyclic(2), {cplx(0.5, 0), cplx(0.5, 0)}};
  EXPECT_THROW(hom_dim(half, z2[0].character), NonIntegralMultiplicity);
}

TEST(Restrict, Examples) {
  const auto irr = irreps(s3());
  const auto r = restrict_rep(z2_in_s3(), irr[2].model());
  const auto z2 = irreps(FinGroup::cyclic(2));
  EXPECT_EQ(hom_dim(character(r), z2[0].character), 1u);
  EXPECT_EQ(hom_dim(character(r), z2[1].character), 1u);
  const auto same = restrict_rep(identity_hom(s3()), irr[2].model());
  EXPECT_EQ(same.matrices, irr[2].matrices);
  const auto triv = restrict_rep(trivial_hom(FinGroup::cyclic(2), FinGroup::trivial()),
                                 RepModel{FinGroup::trivial(), 3, {identity(3)}, default_labels(3)});
  EXPECT_EQ(hom_dim(character(triv), z2[0].character), 3u);
  EXPECT_THROW(restrict_rep(z2_in_s3(), z2[0].model()), GroupMismatch);
}

TEST(Induce, Examples) {
  const auto s = irreps(s3());
  const auto ind = induce(z2_in_s3(), trivial_rep(FinGroup::cyclic(2)));
  EXPECT_EQ(ind.model.dim, 3u);
  EXPECT_EQ(ind.model.basis_labels.size(), 3u);
  EXPECT_LT(homomorphism_defect(ind.model), 1e-10);
  const auto chi = character(ind.model);
  EXPECT_EQ(hom_dim(chi, s[0].character), 1u);
  EXPECT_EQ(hom_dim(chi, s[1].character), 0u);
  EXPECT_EQ(hom_dim(chi, s[2].character), 1u);
  const auto oracle = induced_character(z2_in_s3(), character(trivial_rep(FinGroup::cyclic(2))));
  for (std::size_t i = 0; i < oracle.size(); ++i) EXPECT_NEAR(std::abs(chi.values[i] - oracle[i]), 0, 1e-10);

  const auto sign = irreps(FinGroup::cyclic(2))[1].model();
  EXPECT_EQ(induce_rep(z2_onto_1(), sign).dim, 0u);
  const auto id = induce_rep(identity_hom(s3()), s[2].model());
  EXPECT_EQ(id.dim, 2u);
}

TEST(Induce, DimensionLawAndCharacterOracle) {
  for (const auto& f : fixture_homs())
    for (const auto& v : irreps(f.source)) {
      const auto m = induce(f, v.model());
      // dim V^{ker f} = multiplicity of the trivial rep of ker in V.
      cplx s = 0;
      const auto ker = gpd::kernel(f);
      for (auto g : ker) s += v.character.at(g);
      const auto inv = static_cast<std::size_t>(std::lround(s.real() / static_cast<double>(ker.size())));
      const std::size_t index = f.target.order() / gpd::image(f).size();
      EXPECT_EQ(m.model.dim, index * inv);
      EXPECT_LT(homomorphism_defect(m.model), 1e-8);
      const auto oracle = induced_character(f, v.character);
      const auto chi = character(m.model);
      for (std::size_t i = 0; i < oracle.size(); ++i) EXPECT_NEAR(std::abs(chi.values[i] - oracle[i]), 0, 1e-8);
    }
}

TEST(FrobeniusReciprocity, AllFixtureHoms) {
  for (const auto& f : fixture_homs())
    for (const auto& v : irreps(f.source))
      for (const auto& w : irreps(f.target))
        EXPECT_EQ(hom_dim(character(induce_rep(f, v.model())), w.character),
                  hom_dim(v.character, character(restrict_rep(f, w.model()))));
}

TEST(Intertwiners, Examples) {
  for (const auto& w : irreps(s3())) {
    const auto b = intertwiner_basis(w.model(), w.model());
    ASSERT_EQ(b.size(), 1u);
    const Matrix scaled = b[0] * std::sqrt(static_cast<double>(w.dim));
    EXPECT_LT(max_abs(scaled / scaled(0, 0) - identity(w.dim)), 1e-8);
  }
  const auto reg = regular_rep(FinGroup::cyclic(2));
  EXPECT_EQ(intertwiner_basis(reg, reg).size(), 2u);
  const auto z2 = irreps(FinGroup::cyclic(2));
  EXPECT_TRUE(intertwiner_basis(z2[0].model(), z2[1].model()).empty());
}

TEST(Intertwiners, EquivariantAndOrthonormal) {
  const auto g = s3();
  const auto a = direct_sum(regular_rep(g), irreps(g)[2].model());
  const auto b = induce_rep(z2_in_s3(), trivial_rep(FinGroup::cyclic(2)));
  const auto basis = intertwiner_basis(a, b);
  EXPECT_EQ(basis.size(), hom_dim(character(a), character(b)));
  for (const auto& m : basis) EXPECT_LT(equivariance_defect(a, b, m), 1e-8);
  EXPECT_LT(frobenius_gram_defect(basis), 1e-8);
}

TEST(Nakayama, Examples) {
  const auto one = nakayama(identity_hom(FinGroup::trivial()), trivial_rep(FinGroup::trivial()));
  ASSERT_EQ(one.rows(), 1);
  EXPECT_NEAR(std::abs(one(0, 0) - cplx(1, 0)), 0, 1e-12);
  const auto z2 = nakayama(identity_hom(FinGroup::cyclic(2)), trivial_rep(FinGroup::cyclic(2)));
  ASSERT_EQ(z2.rows(), 1);
  EXPECT_GT(std::abs(z2(0, 0)), 1e-3);
  const auto s = nakayama(z2_in_s3(), trivial_rep(FinGroup::cyclic(2)));
  ASSERT_EQ(s.rows(), 3);
  Eigen::FullPivLU<Matrix> lu(s);
  EXPECT_EQ(lu.rank(), 3);
  EXPECT_LT(condition_number(s), 1e6);
}

TEST(Nakayama, IsEquivariant) {
  for (const auto& f : fixture_homs())
    for (const auto& v : irreps(f.source)) {
      const auto m = induce(f, v.model());
      const auto hm = hom_model(m);
      EXPECT_LT(homomorphism_defect(hm.model), 1e-8);
      EXPECT_LT(equivariance_defect(hm.model, m.model, nakayama(m)), 1e-8);
    }
}

TEST(Units, IdentityHomGivesIdentities) {
  const auto id = identity_hom(s3());
  for (const auto& w : irreps(s3())) {
    const auto m = induce(id, w.model());
    EXPECT_LT(max_abs(eta_L(m) - identity(w.dim)), 1e-10);
    EXPECT_LT(max_abs(eps_L(m, w.model()) - identity(w.dim)), 1e-10);
    EXPECT_LT(max_abs(eta_R(m, w.model()) - identity(w.dim)), 1e-10);
    EXPECT_LT(max_abs(eps_R(m) - identity(w.dim)), 1e-10);
  }
}

TEST(Units, EtaLIsUnitVectorInclusion) {
  const auto m = induce(z2_in_s3(), trivial_rep(FinGroup::cyclic(2)));
  const auto e = eta_L(m);
  ASSERT_EQ(e.rows(), 3);
  EXPECT_NEAR(std::abs(e(0, 0) - cplx(1, 0)), 0, 1e-12);
  EXPECT_NEAR(e.bottomRows(2).norm(), 0, 1e-12);
}

TEST(Units, RightUnitIsNakayamaAfterCanonical) {
  for (const auto& f : fixture_homs())
    for (const auto& w : irreps(f.target)) {
      const auto m = induce(f, restrict_rep(f, w.model()));
      EXPECT_LT(max_abs(eta_R(m, w.model()) - nakayama(m) * canonical_map(m, w.model())), 1e-10);
    }
}

TEST(Units, RightCounitIsEvaluationAfterInverseNakayama) {
  for (const auto& f : fixture_homs())
    for (const auto& v : irreps(f.source)) {
      const auto m = induce(f, v.model());
      if (m.model.dim == 0) continue;
      const Matrix n = nakayama(m);
      EXPECT_LT(max_abs(eps_R(m) - evaluation_map(m) * n.inverse()), 1e-10);
    }
}

TEST(Units, GroupRatioNormalisationOnlyForSurjections) {
  const auto v = trivial_rep(FinGroup::cyclic(4));
  const auto onto = induce(z4_onto_z2(), v);
  EXPECT_LT(max_abs(eps_R(onto) - eps_R_group_ratio(onto)), 1e-12);
  const auto into = induce(z2_in_s3(), trivial_rep(FinGroup::cyclic(2)));
  EXPECT_GT(max_abs(eps_R(into) - eps_R_group_ratio(into)), 0.1);
}

TEST(Units, ModelMismatchDetected) {
  const auto w = irreps(s3())[2].model();
  const auto wrong = induce(z2_in_s3(), trivial_rep(FinGroup::cyclic(2)));
  EXPECT_THROW(eps_L(wrong, w), ModelMismatch);
  EXPECT_THROW(eta_R(wrong, w), ModelMismatch);
}

TEST(Zigzag, Examples) {
  EXPECT_EQ(verify_zigzag(identity_hom(s3()), {regular_rep(s3())}).max(), 0.0);
  EXPECT_LT(verify_zigzag(z2_in_s3(), {trivial_rep(FinGroup::cyclic(2))}).max(), 1e-8);
  EXPECT_LT(verify_zigzag(z2_onto_1(), {regular_rep(FinGroup::cyclic(2))}).max(), 1e-8);
}

TEST(Zigzag, AllFixtureHomsAndIrreps) {
  for (const auto& f : fixture_homs()) {
    std::vector<RepModel> probes;
    for (const auto& v : irreps(f.source)) probes.push_back(v.model());
    for (const auto& w : irreps(f.target)) probes.push_back(w.model());
    probes.push_back(regular_rep(f.source));
    probes.push_back(regular_rep(f.target));
    const auto r = verify_zigzag(f, probes);
    EXPECT_TRUE(r.ok()) << r.max();
  }
}
