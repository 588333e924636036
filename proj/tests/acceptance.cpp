// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "lincat/lincat.hpp"

using namespace lincat;
using namespace lincat::gpd;

namespace {

constexpr double kNumericTol = 1e-8;
constexpr double kConditionLimit = 1e6;

std::string fixture(const std::string& name) { return std::string(LINCAT_SOURCE_DIR) + "/fixtures/" + name; }

template <class T>
T load(const std::string& name) {
  return std::get<T>(io::parse_file(fixture(name)).value);
}

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail.str(what);
    ok = ok && cond;
  }
};

bool criterion(int id, const std::string& title, double limit_seconds, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_seconds > 0) out.require(secs < limit_seconds, "time " + std::to_string(secs) + " s over limit");
  std::printf("%s  [%d] %s (%.3f s%s)%s%s\n", out.ok ? "PASS" : "FAIL", id, title.c_str(), secs,
              limit_seconds > 0 ? (", limit " + std::to_string(static_cast<int>(limit_seconds)) + " s").c_str() : "",
              out.detail.str().empty() ? "" : ": ", out.detail.str().c_str());
  std::fflush(stdout);
  return out.ok;
}

Rational card_oracle(const Groupoid& g) {
  Rational sum(0);
  for (std::size_t i = 0; i < g.size(); ++i) sum += Rational(1, static_cast<long>(g[i].aut.order()));
  return sum;
}

struct Fixtures {
  suite::Suite suite = load<suite::Suite>("suite.json");
  std::vector<Span> spans() const {
    std::vector<Span> out{load<Span>("fig1.json"), load<Span>("fig1_reverse.json")};
    out.insert(out.end(), suite.spans.begin(), suite.spans.end());
    return out;
  }
  std::vector<SpanMap> spanmaps() const {
    std::vector<SpanMap> out{load<SpanMap>("groupoidification_bs3.json")};
    out.insert(out.end(), suite.spanmaps.begin(), suite.spanmaps.end());
    return out;
  }
};

}  // namespace

int main() {
  const Fixtures fx;
  const auto def = suite::default_suite();
  rep::Config cfg;
  cfg.tol.eq = kNumericTol;
  bool all = true;

  all &= criterion(1, "set-span reduction on fig1", 1, [&](Outcome& o) {
    const auto x = load<Span>("fig1.json");
    const std::vector<std::vector<Rational>> expected = {{1, 1, 0}, {0, 1, 1}};
    o.require(lambda::degroupoidify(x) == expected, "degroupoidify mismatch");
    o.require(lambda::lambda_span(x, cfg).map.dims == twovect::DimMatrix{{1, 1, 0}, {0, 1, 1}}, "dims mismatch");
  });

  all &= criterion(2, "groupoidification blocks equal groupoid cardinalities", 5, [&](Outcome& o) {
    const std::vector<std::pair<Groupoid, Rational>> cases = {
        {Groupoid::delooping(FinGroup::cyclic(2)), Rational(1, 2)},
        {Groupoid::delooping(FinGroup::cyclic(3)), Rational(1, 3)},
        {Groupoid::delooping(FinGroup::symmetric(3)), Rational(1, 6)},
        {Groupoid::discrete({"p", "q", "r"}), Rational(3)},
        {Groupoid({{"a", FinGroup::trivial()}, {"b", FinGroup::cyclic(2)}, {"c", FinGroup::symmetric(3)}}),
         Rational(5, 3)},
    };
    for (const auto& [y, expected] : cases) {
      const auto name = "apex of cardinality " + to_string(expected);
      o.require(card_oracle(y) == expected, name + ": oracle disagrees");
      o.require(groupoid_cardinality(y) == expected, name + ": groupoid_cardinality");
      const auto r = lambda::lambda_spanmap(suite::over_point(y), cfg);
      o.require(r.morphism.blocks.size() == 1 && r.morphism.blocks[0].size() == 1 &&
                    r.morphism.blocks[0][0].rows() == 1 && r.morphism.blocks[0][0].cols() == 1,
                name + ": block shape");
      if (!o.ok) return;
      Rational exact(0);
      for (const auto& c : r.coefficients[0][0]) exact += c.value;
      o.require(exact == expected, name + ": exact coefficient " + to_string(exact));
      o.require(std::abs(r.morphism.blocks[0][0](0, 0) - to_double(expected)) < kNumericTol, name + ": numeric block");
    }
  });

  all &= criterion(3, "irreps complete and orthogonal, Frobenius reciprocity", 30, [&](Outcome& o) {
    for (const auto* file : {"trivial.json", "z2.json", "z3.json", "z4.json", "z2xz2.json", "s3.json", "d4.json",
                             "q8.json", "a4.json", "s4.json"}) {
      const auto g = load<FinGroup>(file);
      if (g.order() > 24) continue;
      const auto irr = rep::irreps(g, cfg);
      std::size_t sum = 0;
      for (const auto& w : irr) sum += w.dim * w.dim;
      o.require(sum == g.order(), std::string(file) + ": sum of squared dims");
      for (std::size_t i = 0; i < irr.size(); ++i)
        for (std::size_t j = 0; j < irr.size(); ++j) {
          const double want = i == j ? 1.0 : 0.0;
          o.require(std::abs(rep::inner_product(irr[i].character, irr[j].character) - want) < kNumericTol,
                    std::string(file) + ": orthogonality");
        }
    }
    o.require(fx.suite.homs.size() == 4, "expected four fixture homs");
    for (const auto& f : fx.suite.homs)
      for (const auto& v : rep::irreps(f.source, cfg))
        for (const auto& w : rep::irreps(f.target, cfg))
          o.require(rep::hom_dim(rep::character(rep::induce_rep(f, v.model())), w.character, cfg.tol) ==
                        rep::hom_dim(v.character, rep::character(rep::restrict_rep(f, w.model())), cfg.tol),
                    "Frobenius reciprocity");
  });

  all &= criterion(4, "zig-zag identities on fixture homs", 10, [&](Outcome& o) {
    double worst = 0;
    for (const auto& f : fx.suite.homs) {
      std::vector<rep::RepModel> probes;
      for (const auto* g : {&f.source, &f.target}) {
        for (const auto& w : rep::irreps(*g, cfg)) probes.push_back(w.model());
        probes.push_back(rep::regular_rep(*g));
      }
      const auto z = rep::verify_zigzag(f, probes);
      worst = std::max(worst, z.max());
      o.require(z.probes == probes.size(), "probe not exercised");
    }
    o.require(worst < kNumericTol, "deviation " + std::to_string(worst));
  });

  all &= criterion(5, "compositor dims and conditioning on the default suite", 60, [&](Outcome& o) {
    std::size_t pairs = 0;
    for (const auto& x : def.spans)
      for (const auto& xp : def.spans) {
        if (!(x.target() == xp.source())) continue;
        ++pairs;
        const auto b = lambda::beta_compositor(x, xp, cfg);
        o.require(b.product.dims == b.composite.map.dims, "dims of composite differ from product");
        for (const auto& g : b.gammas) {
          o.require(g.condition < kConditionLimit, "gamma condition " + std::to_string(g.condition));
          o.require(g.equivariance_defect < kNumericTol && g.well_defined_defect < kNumericTol, "gamma defect");
        }
        o.require(b.max_beta_condition < kConditionLimit, "beta condition " + std::to_string(b.max_beta_condition));
      }
    o.require(pairs > 0, "no composable pairs");
  });

  all &= criterion(6, "vertical and horizontal composition on the default suite", 60, [&](Outcome& o) {
    const auto report = suite::verify_functoriality(def, cfg);
    for (const auto* name : {"vertical", "horizontal"}) {
      const auto* c = report.find(name);
      o.require(c != nullptr, std::string(name) + " missing");
      if (!c) return;
      o.require(c->passed() && c->cases > 0 && c->max_deviation < kNumericTol,
                std::string(name) + ": " + std::to_string(c->failures) + " failures, " + c->detail);
      if (o.ok)
        o.detail << (std::string(name) == "vertical" ? "" : "; ") << name << " " << c->cases << " cases, "
                 << c->skipped << " non-strict skipped, max deviation " << c->max_deviation;
    }
  });

  all &= criterion(7, "dagger duality on fixture spans", 5, [&](Outcome& o) {
    auto spans = fx.spans();
    spans.insert(spans.end(), def.spans.begin(), def.spans.end());
    for (const auto& x : spans) {
      const auto d = lambda::lambda_span(x, cfg).map.dims;
      const auto r = lambda::lambda_span(reverse_span(x), cfg).map.dims;
      const std::size_t cols = d.empty() ? lambda::lambda_object(x.source(), cfg).basis.size() : d[0].size();
      twovect::DimMatrix t(cols, std::vector<std::size_t>(d.size()));
      for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) t[j][i] = d[i][j];
      o.require(r == t, "dims of reverse are not the transpose");
    }
  });

  all &= criterion(8, "closed form and unit/counit evaluations agree", 0, [&](Outcome& o) {
    auto maps = fx.spanmaps();
    maps.insert(maps.end(), def.spanmaps.begin(), def.spanmaps.end());
    double worst = 0;
    for (const auto& y : maps) worst = std::max(worst, lambda::lambda_spanmap(y, cfg).dual_path_deviation);
    o.require(worst < kNumericTol, "deviation " + std::to_string(worst));
  });

  return all ? 0 : 1;
}
