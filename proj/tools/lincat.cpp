// Command-line front end: reads JSON documents, runs one computation, and
// prints a table or a JSON report.
//
// Exit codes: 0 success, 1 verification failure, 2 input error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lincat/io.hpp"
#include "lincat/lincat.hpp"

namespace {

using lincat::io::json;
namespace gpd = lincat::gpd;
namespace lam = lincat::lambda;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kInputError = 2;

struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string output = "table";
  std::optional<std::uint64_t> seed;
  double tolerance = lincat::Tolerance{}.eq;

  bool as_json() const { return output == "json"; }

  lincat::rep::Config config() const {
    lincat::rep::Config cfg;
    cfg.tol.eq = tolerance;
    if (seed)
      cfg.seed = *seed;
    else if (const char* env = std::getenv("LINCAT_SEED"))
      cfg.seed = std::stoull(env);
    return cfg;
  }
};

// Numbers in tables use the JSON spelling so both formats agree digit for digit.
std::string num(double x) { return json(x).dump(); }
std::string num(const lincat::cplx& z) {
  if (z.imag() == 0) return num(z.real());
  return num(z.real()) + (z.imag() < 0 ? "-" : "+") + num(std::abs(z.imag())) + "i";
}

std::string dims_string(const lincat::twovect::DimMatrix& d) { return json(d).dump(); }

const gpd::Groupoid& need_groupoid(const lincat::io::Document& d, gpd::Groupoid& storage) {
  if (auto* g = std::get_if<gpd::Groupoid>(&d.value)) return *g;
  if (auto* g = std::get_if<gpd::FinGroup>(&d.value)) return storage = gpd::Groupoid::delooping(*g);
  throw lincat::SchemaError("/kind: expected a groupoid or group document");
}

template <class T>
const T& need(const lincat::io::Document& d, const char* what) {
  if (auto* v = std::get_if<T>(&d.value)) return *v;
  throw lincat::SchemaError(std::string("/kind: expected a ") + what + " document");
}

json basis_json(const lincat::twovect::TwoBasis& b) {
  json out = json::array();
  for (const auto& l : b.labels) out.push_back({{"object", l.object}, {"irrep", l.irrep}, {"dim", l.dim}});
  return out;
}

int cmd_card(const Options& o, const std::string& path) {
  gpd::Groupoid g;
  const auto& a = need_groupoid(lincat::io::parse_file(path), g);
  const auto c = gpd::groupoid_cardinality(a);
  if (o.as_json())
    std::cout << json{{"cardinality", lincat::io::to_json(c)}}.dump() << "\n";
  else
    std::cout << lincat::to_string(c) << "\n";
  return kOk;
}

int cmd_basis(const Options& o, const std::string& path) {
  gpd::Groupoid g;
  const auto& a = need_groupoid(lincat::io::parse_file(path), g);
  const auto obj = lam::lambda_object(a, o.config());
  if (o.as_json()) {
    std::cout << json{{"basis", basis_json(obj.basis)}}.dump() << "\n";
    return kOk;
  }
  std::cout << "index  object  irrep  dim\n";
  for (std::size_t i = 0; i < obj.basis.size(); ++i)
    std::cout << i << "  " << obj.basis[i].object << "  " << obj.basis[i].irrep << "  " << obj.basis[i].dim << "\n";
  return kOk;
}

json witnesses_json(const lam::LambdaSpanResult& r) {
  json out = json::array();
  for (std::size_t row = 0; row < r.witnesses.size(); ++row)
    for (std::size_t col = 0; col < r.witnesses[row].size(); ++col)
      for (const auto& w : r.witnesses[row][col])
        out.push_back({{"row", row}, {"col", col}, {"apex_object", r.span.apex()[w.apex_object].name},
                       {"count", w.count}});
  return out;
}

void print_span(const Options& o, const lam::LambdaSpanResult& r) {
  if (o.as_json()) {
    std::cout << json{{"dims", r.map.dims},
                      {"source", basis_json(r.source.basis)},
                      {"target", basis_json(r.target.basis)},
                      {"witnesses", witnesses_json(r)}}
                     .dump()
              << "\n";
    return;
  }
  std::cout << dims_string(r.map.dims) << "\n";
  for (std::size_t row = 0; row < r.witnesses.size(); ++row)
    for (std::size_t col = 0; col < r.witnesses[row].size(); ++col)
      for (const auto& w : r.witnesses[row][col])
        std::cout << "  (" << r.target.basis[row].name() << " <- " << r.source.basis[col].name()
                  << "): " << w.count << " via " << r.span.apex()[w.apex_object].name << "\n";
}

int cmd_span(const Options& o, const std::string& path) {
  const auto x = need<gpd::Span>(lincat::io::parse_file(path), "span");
  print_span(o, lam::lambda_span(x, o.config()));
  return kOk;
}

int cmd_compose(const Options& o, const std::string& first, const std::string& second, bool verify_beta) {
  const auto x = need<gpd::Span>(lincat::io::parse_file(first), "span");
  const auto xp = need<gpd::Span>(lincat::io::parse_file(second), "span");
  const auto composite = gpd::compose_spans(x, xp);
  const auto cfg = o.config();
  json report{{"composite", lincat::io::to_json(lincat::io::Document{lincat::io::kFormatVersion, composite})},
              {"dims", lam::lambda_span(composite, cfg).map.dims}};
  bool ok = true;
  if (verify_beta) {
    try {
      const auto b = lam::beta_compositor(x, xp, cfg);
      ok = b.max_gamma_condition < lincat::suite::kConditionBound &&
           b.max_beta_condition < lincat::suite::kConditionBound && b.max_gamma_defect <= cfg.tol.eq;
      report["beta"] = {{"product_dims", b.product.dims},
                        {"gamma_maps", b.gammas.size()},
                        {"max_gamma_condition", b.max_gamma_condition},
                        {"max_gamma_defect", b.max_gamma_defect},
                        {"max_beta_condition", b.max_beta_condition},
                        {"passed", ok}};
    } catch (const lincat::DimensionMismatch& e) {
      ok = false;
      report["beta"] = {{"passed", false}, {"error", e.what()}};
    }
  }
  if (o.as_json()) {
    std::cout << report.dump() << "\n";
  } else {
    std::cout << "composite apex:";
    for (const auto& obj : composite.apex()) std::cout << " " << obj.name << "[" << obj.aut.order() << "]";
    std::cout << "\ndims " << report["dims"].dump() << "\n";
    if (verify_beta) {
      const auto& b = report["beta"];
      if (b.contains("error"))
        std::cout << "beta FAIL: " << b["error"].get<std::string>() << "\n";
      else
        std::cout << "beta " << (ok ? "PASS" : "FAIL") << ": " << b["gamma_maps"] << " gamma maps, condition <= "
                  << num(b["max_gamma_condition"].get<double>()) << ", defect "
                  << num(b["max_gamma_defect"].get<double>()) << ", beta condition <= "
                  << num(b["max_beta_condition"].get<double>()) << "\n";
    }
  }
  return ok ? kOk : kVerifyFailed;
}

int cmd_twomorph(const Options& o, const std::string& path) {
  const auto y = need<gpd::SpanMap>(lincat::io::parse_file(path), "spanmap");
  lam::LambdaSpanMapResult r;
  try {
    r = lam::lambda_spanmap(y, o.config());
  } catch (const lincat::IntertwinerProjectionFailure& e) {
    throw VerificationFailure(e.what());
  }
  const auto& m = r.morphism;
  if (o.as_json()) {
    json blocks = json::array();
    for (std::size_t row = 0; row < m.blocks.size(); ++row)
      for (std::size_t col = 0; col < m.blocks[row].size(); ++col) {
        if (m.blocks[row][col].size() == 0) continue;
        json coeffs = json::array();
        for (const auto& c : r.coefficients[row][col])
          coeffs.push_back({{"top", y.top.apex()[c.x1].name}, {"bottom", y.bottom.apex()[c.x2].name},
                            {"value", lincat::io::to_json(c.value)}});
        blocks.push_back({{"row", row}, {"col", col}, {"matrix", lincat::io::to_json(m.blocks[row][col])},
                          {"coefficients", coeffs}});
      }
    std::cout << json{{"source_dims", m.source.dims},
                      {"target_dims", m.target.dims},
                      {"blocks", blocks},
                      {"dual_path_deviation", r.dual_path_deviation}}
                     .dump()
              << "\n";
    return kOk;
  }
  std::cout << "source dims " << dims_string(m.source.dims) << "\ntarget dims " << dims_string(m.target.dims) << "\n";
  for (std::size_t row = 0; row < m.blocks.size(); ++row)
    for (std::size_t col = 0; col < m.blocks[row].size(); ++col) {
      const auto& b = m.blocks[row][col];
      if (b.size() == 0) continue;
      std::cout << "block (" << m.source.codomain[row].name() << " <- " << m.source.domain[col].name() << ")";
      for (const auto& c : r.coefficients[row][col])
        std::cout << "  c(" << y.top.apex()[c.x1].name << "," << y.bottom.apex()[c.x2].name
                  << ")=" << lincat::to_string(c.value);
      std::cout << "\n";
      for (Eigen::Index i = 0; i < b.rows(); ++i) {
        std::cout << "   ";
        for (Eigen::Index j = 0; j < b.cols(); ++j) std::cout << " " << num(b(i, j));
        std::cout << "\n";
      }
    }
  std::cout << "dual path deviation " << num(r.dual_path_deviation) << "\n";
  return kOk;
}

int cmd_degroupoidify(const Options& o, const std::string& path) {
  const auto doc = lincat::io::parse_file(path);
  std::vector<std::vector<lincat::Rational>> m;
  if (auto* x = std::get_if<gpd::Span>(&doc.value))
    m = lam::degroupoidify(*x);
  else if (auto* y = std::get_if<gpd::SpanMap>(&doc.value))
    m = lam::degroupoidify_2cell(*y);
  else
    throw lincat::SchemaError("/kind: expected a span or spanmap document");
  if (o.as_json()) {
    std::cout << json{{"matrix", lincat::io::to_json(m)}}.dump() << "\n";
    return kOk;
  }
  std::cout << "[";
  for (std::size_t r = 0; r < m.size(); ++r) {
    std::cout << (r ? ",[" : "[");
    for (std::size_t c = 0; c < m[r].size(); ++c) std::cout << (c ? "," : "") << lincat::to_string(m[r][c]);
    std::cout << "]";
  }
  std::cout << "]\n";
  return kOk;
}

int cmd_verify(const Options& o, const std::string& which) {
  const auto cfg = o.config();
  lincat::suite::Suite s;
  if (which == "default")
    s = lincat::suite::default_suite();
  else if (which == "random")
    s = lincat::suite::random_suite(cfg.seed);
  else
    s = need<lincat::suite::Suite>(lincat::io::parse_file(which), "suite");
  const auto report = lincat::suite::verify_functoriality(s, cfg);
  if (o.as_json()) {
    json checks = json::array();
    for (const auto& c : report.checks)
      checks.push_back({{"name", c.name},
                        {"passed", c.passed()},
                        {"cases", c.cases},
                        {"skipped", c.skipped},
                        {"failures", c.failures},
                        {"max_deviation", c.max_deviation},
                        {"detail", c.detail}});
    std::cout << json{{"passed", report.passed()}, {"seed", cfg.seed}, {"tolerance", cfg.tol.eq}, {"checks", checks}}
                     .dump()
              << "\n";
  } else {
    for (const auto& c : report.checks) {
      std::cout << (c.passed() ? "PASS " : "FAIL ") << c.name << ": " << c.cases << " cases";
      if (c.skipped) std::cout << ", " << c.skipped << " skipped (not strictly composable)";
      std::cout << ", max deviation " << num(c.max_deviation);
      if (!c.detail.empty()) std::cout << " [" << c.detail << "]";
      std::cout << "\n";
    }
  }
  return report.passed() ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2-linearization of spans of finite groupoids"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opts;
  app.add_option("--output", opts.output, "table or json")->check(CLI::IsMember({"table", "json"}));
  app.add_option("--seed", opts.seed, "seed for irrep computation and random suites (default: LINCAT_SEED or 1729)");
  app.add_option("--tolerance", opts.tolerance, "equality tolerance")->check(CLI::PositiveNumber);

  std::string file, file2, suite_name = "default";
  bool verify_beta = false;
  auto* card = app.add_subcommand("card", "groupoid cardinality as an exact rational");
  card->add_option("file", file, "groupoid or group document")->required();
  auto* basis = app.add_subcommand("basis", "basis of the 2-vector space of a groupoid");
  basis->add_option("file", file, "groupoid or group document")->required();
  auto* span = app.add_subcommand("span", "dimension matrix and witnesses of a span");
  span->add_option("file", file, "span document")->required();
  auto* compose = app.add_subcommand("compose", "composite of two spans, first then second");
  compose->add_option("first", file, "span document")->required();
  compose->add_option("second", file2, "span document")->required();
  compose->add_flag("--verify-beta", verify_beta, "compare the composite with the product of dimension matrices");
  auto* twomorph = app.add_subcommand("twomorph", "blocks of the 2-morphism of a span map");
  twomorph->add_option("file", file, "spanmap document")->required();
  auto* degroup = app.add_subcommand("degroupoidify", "rational matrix of a span or span map");
  degroup->add_option("file", file, "span or spanmap document")->required();
  auto* verify = app.add_subcommand("verify", "run the functoriality and zig-zag checks");
  verify->add_option("--suite", suite_name, "default, random, or a suite document");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*card) return cmd_card(opts, file);
    if (*basis) return cmd_basis(opts, file);
    if (*span) return cmd_span(opts, file);
    if (*compose) return cmd_compose(opts, file, file2, verify_beta);
    if (*twomorph) return cmd_twomorph(opts, file);
    if (*degroup) return cmd_degroupoidify(opts, file);
    if (*verify) return cmd_verify(opts, suite_name);
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kVerifyFailed;
  } catch (const lincat::Error& e) {
    std::cerr << e.what() << "\n";
    return kInputError;
  } catch (const std::logic_error& e) {
    std::cerr << "invalid LINCAT_SEED: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
