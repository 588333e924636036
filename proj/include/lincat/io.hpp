#pragma once

// JSON documents for groups, groupoids, functors, spans, span maps and
// suites, plus encoders for computation results.
//
// A document is an object
//   { "format_version": "1.0", "kind": <kind>, "value": <payload>,
//     "groups": {name: group}, "groupoids": {name: groupoid},
//     "spans": {name: span} }
// where the dictionaries are optional and payloads may reference their
// entries by name.

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "lincat/error.hpp"
#include "lincat/groupoid.hpp"
#include "lincat/linalg.hpp"
#include "lincat/rational.hpp"
#include "lincat/suite.hpp"

namespace lincat::io {

using nlohmann::json;
using gpd::FinGroup;
using gpd::Groupoid;
using gpd::GroupoidFunctor;
using gpd::GroupHom;
using gpd::Span;
using gpd::SpanMap;

inline constexpr const char* kFormatVersion = "1.0";

enum class Kind { group, groupoid, functor, span, spanmap, suite };

inline const char* kind_name(Kind k) {
  switch (k) {
    case Kind::group: return "group";
    case Kind::groupoid: return "groupoid";
    case Kind::functor: return "functor";
    case Kind::span: return "span";
    case Kind::spanmap: return "spanmap";
    case Kind::suite: return "suite";
  }
  return "";
}

using Value = std::variant<FinGroup, Groupoid, GroupoidFunctor, Span, SpanMap, suite::Suite>;

struct Document {
  std::string format_version = kFormatVersion;
  Value value;

  Kind kind() const { return static_cast<Kind>(value.index()); }
  friend bool operator==(const Document&, const Document&) = default;
};

struct ParseOptions {
  std::size_t permutation_cap = 500;
};

namespace detail {

// First line on which each JSON pointer's value starts.
inline std::map<std::string, std::size_t> line_index(const std::string& text) {
  std::map<std::string, std::size_t> out;
  struct Frame {
    bool object;
    std::size_t next = 0;
    std::string key;
  };
  std::vector<Frame> stack;
  std::size_t line = 1;
  auto escape = [](const std::string& s) {
    std::string r;
    for (char c : s) r += c == '~' ? "~0" : c == '/' ? "~1" : std::string(1, c);
    return r;
  };
  auto pointer = [&] {
    std::string p;
    for (const auto& f : stack) p += "/" + (f.object ? escape(f.key) : std::to_string(f.next));
    return p;
  };
  bool expect_key = false;
  auto at_value = [&] {
    if (!out.count(pointer())) out[pointer()] = line;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
    } else if (c == '"') {
      const std::size_t start = i++;
      while (i < text.size() && text[i] != '"') i += text[i] == '\\' ? 2 : 1;
      if (expect_key) {
        try {
          stack.back().key = json::parse(text.substr(start, i - start + 1)).get<std::string>();
        } catch (const json::exception&) {
          return out;
        }
        expect_key = false;
      } else {
        at_value();
      }
    } else if (c == '{' || c == '[') {
      at_value();
      stack.push_back({c == '{', 0, {}});
      expect_key = c == '{';
    } else if (c == '}' || c == ']') {
      if (stack.empty()) return out;
      stack.pop_back();
      expect_key = false;
    } else if (c == ',') {
      if (stack.empty()) return out;
      if (stack.back().object)
        expect_key = true;
      else
        ++stack.back().next;
    } else if (c != ':' && c != ' ' && c != '\t' && c != '\r') {
      at_value();
      while (i + 1 < text.size() && std::string(",]}\n \t\r").find(text[i + 1]) == std::string::npos) ++i;
    }
  }
  return out;
}

class Reader {
 public:
  Reader(const json& root, std::map<std::string, std::size_t> lines, ParseOptions opts)
      : root_(root), lines_(std::move(lines)), opts_(opts) {}

  [[noreturn]] void fail(const std::string& ptr, const std::string& msg) const {
    std::string where = ptr.empty() ? "/" : ptr;
    auto it = lines_.find(ptr);
    if (it != lines_.end()) where += " (line " + std::to_string(it->second) + ")";
    throw SchemaError(where + ": " + msg);
  }

  const json& at(const json& j, const std::string& ptr, const char* key) const {
    if (!j.is_object()) fail(ptr, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(ptr, std::string("missing field '") + key + "'");
    return *it;
  }

  std::size_t index(const json& j, const std::string& ptr) const {
    if (!j.is_number_unsigned()) fail(ptr, "expected a non-negative integer");
    return j.get<std::size_t>();
  }

  std::vector<std::size_t> index_list(const json& j, const std::string& ptr) const {
    if (!j.is_array()) fail(ptr, "expected an array");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(index(j[i], ptr + "/" + std::to_string(i)));
    return out;
  }

  FinGroup group(const json& j, const std::string& ptr) const {
    if (j.is_string()) return named_group(j.get<std::string>(), ptr);
    if (!j.is_object()) fail(ptr, "expected a group object or a group name");
    try {
      if (j.contains("table")) {
        const auto& t = j["table"];
        if (!t.is_array()) fail(ptr + "/table", "expected an array of rows");
        gpd::Table table;
        for (std::size_t r = 0; r < t.size(); ++r) table.push_back(index_list(t[r], ptr + "/table/" + std::to_string(r)));
        return gpd::validate_group(table);
      }
      if (j.contains("permutation_generators")) {
        const auto& g = j["permutation_generators"];
        if (!g.is_array()) fail(ptr + "/permutation_generators", "expected an array of permutations");
        std::vector<std::vector<std::size_t>> gens;
        for (std::size_t i = 0; i < g.size(); ++i)
          gens.push_back(index_list(g[i], ptr + "/permutation_generators/" + std::to_string(i)));
        return FinGroup::from_permutations(gens, opts_.permutation_cap);
      }
    } catch (const AxiomViolation& e) {
      fail(ptr, e.what());
    }
    fail(ptr, "group needs 'table' or 'permutation_generators'");
  }

  Groupoid groupoid(const json& j, const std::string& ptr) const {
    if (j.is_string()) return named_groupoid(j.get<std::string>(), ptr);
    const auto& objs = at(j, ptr, "objects");
    if (!objs.is_array()) fail(ptr + "/objects", "expected an array");
    std::vector<gpd::GroupoidObject> out;
    for (std::size_t i = 0; i < objs.size(); ++i) {
      const auto p = ptr + "/objects/" + std::to_string(i);
      const auto& name = at(objs[i], p, "name");
      if (!name.is_string()) fail(p + "/name", "expected a string");
      const FinGroup g = objs[i].contains("group") ? group(objs[i]["group"], p + "/group") : FinGroup::trivial();
      out.push_back({name.get<std::string>(), g});
    }
    try {
      return Groupoid(std::move(out));
    } catch (const AxiomViolation& e) {
      fail(ptr, e.what());
    }
  }

  GroupHom hom(const json& j, const FinGroup& source, const FinGroup& target, const std::string& ptr) const {
    try {
      return gpd::make_hom(source, target, index_list(j, ptr));
    } catch (const AxiomViolation& e) {
      fail(ptr, e.what());
    }
  }

  /// Object map by target names (or indices), hom tables optional: omitted
  /// entries are trivial homomorphisms.
  GroupoidFunctor functor_body(const json& j, const Groupoid& src, const Groupoid& tgt, const std::string& ptr) const {
    const auto& objs = at(j, ptr, "objects");
    if (!objs.is_array() || objs.size() != src.size())
      fail(ptr + "/objects", "expected one target object per source object (" + std::to_string(src.size()) + ")");
    GroupoidFunctor f{src, tgt, {}, {}};
    for (std::size_t i = 0; i < objs.size(); ++i) {
      const auto p = ptr + "/objects/" + std::to_string(i);
      std::size_t k = 0;
      if (objs[i].is_string()) {
        try {
          k = tgt.index_of(objs[i].get<std::string>());
        } catch (const IndexOutOfRange&) {
          throw UnresolvedReference(p + ": no object '" + objs[i].get<std::string>() + "' in the target groupoid");
        }
      } else {
        k = index(objs[i], p);
        if (k >= tgt.size()) fail(p, "object index out of range");
      }
      f.object_map.push_back(k);
    }
    const json* homs = j.contains("homs") ? &j["homs"] : nullptr;
    if (homs && (!homs->is_array() || homs->size() != src.size()))
      fail(ptr + "/homs", "expected one homomorphism table per source object");
    for (std::size_t i = 0; i < src.size(); ++i) {
      const auto& a = src.aut(i);
      const auto& b = tgt.aut(f.object_map[i]);
      if (homs && !(*homs)[i].is_null())
        f.hom_maps.push_back(hom((*homs)[i], a, b, ptr + "/homs/" + std::to_string(i)));
      else
        f.hom_maps.push_back(gpd::trivial_hom(a, b));
    }
    return f;
  }

  GroupoidFunctor functor(const json& j, const std::string& ptr) const {
    const auto src = groupoid(at(j, ptr, "source"), ptr + "/source");
    const auto tgt = groupoid(at(j, ptr, "target"), ptr + "/target");
    return functor_body(j, src, tgt, ptr);
  }

  Span span(const json& j, const std::string& ptr) const {
    if (j.is_string()) return named_span(j.get<std::string>(), ptr);
    const auto src = groupoid(at(j, ptr, "source"), ptr + "/source");
    const auto tgt = groupoid(at(j, ptr, "target"), ptr + "/target");
    const auto apex = groupoid(at(j, ptr, "apex"), ptr + "/apex");
    return Span{functor_body(at(j, ptr, "left"), apex, src, ptr + "/left"),
                functor_body(at(j, ptr, "right"), apex, tgt, ptr + "/right")};
  }

  SpanMap spanmap(const json& j, const std::string& ptr) const {
    const auto top = span(at(j, ptr, "top"), ptr + "/top");
    const auto bottom = span(at(j, ptr, "bottom"), ptr + "/bottom");
    const auto apex = groupoid(at(j, ptr, "apex"), ptr + "/apex");
    SpanMap y{top, bottom, functor_body(at(j, ptr, "up"), apex, top.apex(), ptr + "/up"),
              functor_body(at(j, ptr, "down"), apex, bottom.apex(), ptr + "/down")};
    try {
      gpd::check_spanmap(y);
    } catch (const StrictnessViolation& e) {
      fail(ptr, e.what());
    } catch (const SpanMismatch& e) {
      fail(ptr, e.what());
    }
    return y;
  }

  suite::Suite suite_value(const json& j, const std::string& ptr) const {
    suite::Suite s;
    auto list = [&](const char* key) -> const json& {
      static const json empty = json::array();
      if (!j.contains(key)) return empty;
      if (!j[key].is_array()) fail(ptr + "/" + key, "expected an array");
      return j[key];
    };
    const auto& spans = list("spans");
    for (std::size_t i = 0; i < spans.size(); ++i) s.spans.push_back(span(spans[i], ptr + "/spans/" + std::to_string(i)));
    const auto& maps = list("spanmaps");
    for (std::size_t i = 0; i < maps.size(); ++i) s.spanmaps.push_back(spanmap(maps[i], ptr + "/spanmaps/" + std::to_string(i)));
    const auto& homs = list("homs");
    for (std::size_t i = 0; i < homs.size(); ++i) {
      const auto p = ptr + "/homs/" + std::to_string(i);
      s.homs.push_back(hom(at(homs[i], p, "map"), group(at(homs[i], p, "source"), p + "/source"),
                           group(at(homs[i], p, "target"), p + "/target"), p + "/map"));
    }
    return s;
  }

 private:
  const json& lookup(const char* dict, const std::string& name, const std::string& ptr) const {
    if (!root_.contains(dict) || !root_[dict].contains(name))
      throw UnresolvedReference(ptr + ": no entry '" + name + "' in '" + dict + "'");
    return root_[dict][name];
  }
  // Named entries may refer to other named entries; the depth cap stops cycles.
  FinGroup named_group(const std::string& name, const std::string& ptr) const {
    Guard g(depth_, ptr, *this);
    return group(lookup("groups", name, ptr), "/groups/" + name);
  }
  Groupoid named_groupoid(const std::string& name, const std::string& ptr) const {
    Guard g(depth_, ptr, *this);
    return groupoid(lookup("groupoids", name, ptr), "/groupoids/" + name);
  }
  Span named_span(const std::string& name, const std::string& ptr) const {
    Guard g(depth_, ptr, *this);
    return span(lookup("spans", name, ptr), "/spans/" + name);
  }

  struct Guard {
    std::size_t& d;
    Guard(std::size_t& depth, const std::string& ptr, const Reader& r) : d(depth) {
      if (++d > 32) r.fail(ptr, "reference chain too deep");
    }
    ~Guard() { --d; }
  };

  const json& root_;
  std::map<std::string, std::size_t> lines_;
  ParseOptions opts_;
  mutable std::size_t depth_ = 0;
};

}  // namespace detail

inline Document parse(const std::string& text, const ParseOptions& opts = {}) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) line += text[i] == '\n';
    throw SchemaError("line " + std::to_string(line) + ": malformed JSON (" + e.what() + ")");
  }
  detail::Reader r(root, detail::line_index(text), opts);
  const auto& version = r.at(root, "", "format_version");
  if (!version.is_string()) r.fail("/format_version", "expected a string");
  if (version.get<std::string>().rfind("1.", 0) != 0)
    r.fail("/format_version", "unsupported version " + version.get<std::string>());
  const auto& kind = r.at(root, "", "kind");
  const auto& v = r.at(root, "", "value");
  Document doc{version.get<std::string>(), FinGroup::trivial()};
  const auto k = kind.is_string() ? kind.get<std::string>() : std::string();
  if (k == "group")
    doc.value = r.group(v, "/value");
  else if (k == "groupoid")
    doc.value = r.groupoid(v, "/value");
  else if (k == "functor") {
    auto f = r.functor(v, "/value");
    try {
      gpd::check_functor(f);
    } catch (const InvalidFunctor& e) {
      r.fail("/value", e.what());
    }
    doc.value = std::move(f);
  } else if (k == "span")
    doc.value = r.span(v, "/value");
  else if (k == "spanmap")
    doc.value = r.spanmap(v, "/value");
  else if (k == "suite")
    doc.value = r.suite_value(v, "/value");
  else
    r.fail("/kind", "expected one of group, groupoid, functor, span, spanmap, suite");
  return doc;
}

inline Document parse_file(const std::string& path, const ParseOptions& opts = {}) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse(ss.str(), opts);
  } catch (const SchemaError& e) {
    throw SchemaError(path + ": " + std::string(e.what()).substr(std::string("SchemaError: ").size()));
  }
}

// Encoders. Everything is written inline, so parse(serialize(d)) == d.

inline json to_json(const Rational& r) { return {{"num", r.numerator()}, {"den", r.denominator()}}; }
inline json to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

inline json to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json to_json(const std::vector<std::vector<Rational>>& m) {
  json rows = json::array();
  for (const auto& row : m) {
    json out = json::array();
    for (const auto& x : row) out.push_back(to_json(x));
    rows.push_back(std::move(out));
  }
  return rows;
}

inline json to_json(const FinGroup& g) { return {{"table", g.table()}}; }

inline json to_json(const Groupoid& a) {
  json objs = json::array();
  for (const auto& o : a) objs.push_back({{"name", o.name}, {"group", to_json(o.aut)}});
  return {{"objects", objs}};
}

inline json functor_body(const GroupoidFunctor& f) {
  json objs = json::array(), homs = json::array();
  for (std::size_t i = 0; i < f.source.size(); ++i) {
    objs.push_back(f.target[f.object_map[i]].name);
    homs.push_back(f.hom_maps[i].map);
  }
  return {{"objects", objs}, {"homs", homs}};
}

inline json to_json(const GroupoidFunctor& f) {
  auto j = functor_body(f);
  j["source"] = to_json(f.source);
  j["target"] = to_json(f.target);
  return j;
}

inline json to_json(const Span& x) {
  return {{"source", to_json(x.source())}, {"target", to_json(x.target())}, {"apex", to_json(x.apex())},
          {"left", functor_body(x.left)}, {"right", functor_body(x.right)}};
}

inline json to_json(const SpanMap& y) {
  return {{"top", to_json(y.top)}, {"bottom", to_json(y.bottom)}, {"apex", to_json(y.apex())},
          {"up", functor_body(y.up)}, {"down", functor_body(y.down)}};
}

inline json to_json(const suite::Suite& s) {
  json spans = json::array(), maps = json::array(), homs = json::array();
  for (const auto& x : s.spans) spans.push_back(to_json(x));
  for (const auto& y : s.spanmaps) maps.push_back(to_json(y));
  for (const auto& h : s.homs)
    homs.push_back({{"source", to_json(h.source)}, {"target", to_json(h.target)}, {"map", h.map}});
  return {{"spans", spans}, {"spanmaps", maps}, {"homs", homs}};
}

inline json to_json(const Document& d) {
  return {{"format_version", d.format_version},
          {"kind", kind_name(d.kind())},
          {"value", std::visit([](const auto& v) { return to_json(v); }, d.value)}};
}

inline std::string serialize(const Document& d, int indent = 2) { return to_json(d).dump(indent); }

}  // namespace lincat::io
