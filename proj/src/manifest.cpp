#include "wpg/manifest.hpp"

#include <fmt/format.h>

#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "wpg/random.hpp"

namespace wpg {
namespace {

using json = nlohmann::json;

void only_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items())
    if (!ok.contains(key)) throw SchemaError(path.empty() ? key : path + "." + key, "unknown field");
}

const json& require(const json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) throw SchemaError(path.empty() ? key : path + "." + key, "missing required field");
  return j.at(key);
}

const json& require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  return j;
}

const json& require_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected a list");
  return j;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  return j.get<double>();
}

/// Expressions may be given as strings or plain numbers.
std::string expression_text(const json& j, const std::string& path) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number()) return number_text(j.get<double>());
  throw SchemaError(path, "expected an expression string or number");
}

std::vector<std::string> expression_list(const json& j, const std::string& path) {
  require_array(j, path);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(expression_text(j[i], fmt::format("{}[{}]", path, i)));
  return out;
}

Factor factor_name(const json& j, const std::string& path) {
  if (j == "base") return Factor::Base;
  if (j == "fiber") return Factor::Fiber;
  throw SchemaError(path, "expected \"base\" or \"fiber\"");
}

ChartSpec chart_spec(const json& j, const std::string& path) {
  require_object(j, path);
  only_keys(j, path, {"dim", "coords", "metric", "signature", "box"});
  ChartSpec c;
  const json& coords = require_array(require(j, path, "coords"), path + ".coords");
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (!coords[i].is_string()) throw SchemaError(fmt::format("{}.coords[{}]", path, i), "expected a name");
    c.coords.push_back(coords[i].get<std::string>());
  }
  const std::size_t n = c.coords.size();
  if (n == 0) throw SchemaError(path + ".coords", "a chart needs at least one coordinate");
  if (j.contains("dim")) {
    const json& d = j.at("dim");
    if (!d.is_number_integer() || d.get<long long>() != static_cast<long long>(n))
      throw SchemaError(path + ".dim", fmt::format("does not match the {} coordinates", n));
  }

  const json& metric = require_array(require(j, path, "metric"), path + ".metric");
  if (metric.size() != n) throw SchemaError(path + ".metric", fmt::format("expected {} rows", n));
  for (std::size_t i = 0; i < n; ++i) {
    const std::string row_path = fmt::format("{}.metric[{}]", path, i);
    auto row = expression_list(metric[i], row_path);
    if (row.size() != n && row.size() != n - i)
      throw SchemaError(row_path, fmt::format("expected {} entries (full row) or {} (upper triangle)", n, n - i));
    c.metric.push_back(std::move(row));
  }

  if (j.contains("signature")) {
    const json& sig = require_array(j.at("signature"), path + ".signature");
    if (sig.size() != n) throw SchemaError(path + ".signature", fmt::format("expected {} entries", n));
    for (std::size_t i = 0; i < n; ++i) {
      if (sig[i] != 1 && sig[i] != -1) throw SchemaError(fmt::format("{}.signature[{}]", path, i), "expected +1 or -1");
      c.signature.push_back(sig[i].get<int>());
    }
  } else {
    c.signature.assign(n, 1);
  }

  const json& box = require_array(require(j, path, "box"), path + ".box");
  if (box.size() != n) throw SchemaError(path + ".box", fmt::format("expected {} intervals", n));
  for (std::size_t i = 0; i < n; ++i) {
    const std::string iv_path = fmt::format("{}.box[{}]", path, i);
    if (!box[i].is_array() || box[i].size() != 2) throw SchemaError(iv_path, "expected [lo, hi]");
    const Interval iv{number(box[i][0], iv_path + "[0]"), number(box[i][1], iv_path + "[1]")};
    if (!(iv.lo < iv.hi)) throw SchemaError(iv_path, "empty interval");
    c.box.push_back(iv);
  }
  return c;
}

FieldSpec field_spec(const json& j, const std::string& path) {
  require_object(j, path);
  only_keys(j, path, {"on", "components"});
  return FieldSpec{factor_name(require(j, path, "on"), path + ".on"),
                   expression_list(require(j, path, "components"), path + ".components")};
}

json chart_json(const ChartSpec& c) {
  json box = json::array();
  for (const auto& iv : c.box) box.push_back({iv.lo, iv.hi});
  return json{{"dim", c.coords.size()}, {"coords", c.coords}, {"metric", c.metric}, {"signature", c.signature},
              {"box", box}};
}

json field_json(const FieldSpec& f) { return json{{"on", std::string(to_string(f.on))}, {"components", f.components}}; }

ChartManifold make_chart(const ChartSpec& c, const std::string& path) {
  for (std::size_t i = 0; i < c.metric.size(); ++i)
    for (std::size_t k = 0; k < c.metric[i].size(); ++k) {
      try {
        parse(c.metric[i][k], c.coords);
      } catch (const Error& e) {
        throw SchemaError(fmt::format("{}.metric[{}][{}]", path, i, k), e.what());
      }
    }
  try {
    return ChartManifold::from_text(c.coords, c.metric, c.signature);
  } catch (const Error& e) {
    throw SchemaError(path, e.what());
  }
}

FieldPlacement make_field(const WarpedProduct& wp, const FieldSpec& f, const std::string& path) {
  const ChartManifold& chart = wp.factor(f.on);
  if (static_cast<Eigen::Index>(f.components.size()) != chart.dim())
    throw SchemaError(path + ".components",
                      fmt::format("expected {} components for the {}", chart.dim(), to_string(f.on)));
  FieldPlacement out{f.on, {}};
  for (std::size_t i = 0; i < f.components.size(); ++i) {
    try {
      out.components.push_back(parse(f.components[i], chart.coords()));
    } catch (const Error& e) {
      throw SchemaError(fmt::format("{}.components[{}]", path, i), e.what());
    }
  }
  return out;
}

}  // namespace

Problem instantiate(const Manifest& m) {
  ChartManifold base = make_chart(m.base, "base");
  ChartManifold fiber = make_chart(m.fiber, "fiber");
  if (m.base.box.size() != m.base.coords.size()) throw SchemaError("base.box", "one interval per coordinate");
  if (m.fiber.box.size() != m.fiber.coords.size()) throw SchemaError("fiber.box", "one interval per coordinate");

  std::optional<WarpedProduct> wp;
  try {
    wp.emplace(build(std::move(base), std::move(fiber), std::string_view(m.warping)));
  } catch (const Error& e) {
    throw SchemaError("warping", e.what());
  }

  Problem out{*wp, FieldPlacement::zero(*wp, Factor::Base), {}, m.qe.has_value(), {}};
  if (m.p) out.p = make_field(*wp, *m.p, "P");
  if (m.u2 && !m.u1) throw SchemaError("generators", "U2 needs U1");
  if (m.u1) out.qe.u1 = make_field(*wp, *m.u1, m.u2 ? "generators.U1" : "generators.U");
  if (m.u2) out.qe.u2 = make_field(*wp, *m.u2, "generators.U2");
  if (m.qe) {
    out.qe.a = m.qe->a;
    out.qe.b = m.qe->b;
    out.qe.c = m.qe->c;
  }
  out.box = m.base.box;
  out.box.insert(out.box.end(), m.fiber.box.begin(), m.fiber.box.end());
  return out;
}

Manifest parse_manifest(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaError("(document)", e.what());
  }
  require_object(j, "(document)");
  only_keys(j, "", {"name", "base", "fiber", "warping", "P", "generators", "qe", "tolerances", "sampling"});

  Manifest m;
  if (j.contains("name")) {
    if (!j.at("name").is_string()) throw SchemaError("name", "expected a string");
    m.name = j.at("name").get<std::string>();
  }
  m.base = chart_spec(require(j, "", "base"), "base");
  m.fiber = chart_spec(require(j, "", "fiber"), "fiber");
  if (j.contains("warping")) m.warping = expression_text(j.at("warping"), "warping");
  if (j.contains("P") && !j.at("P").is_null()) m.p = field_spec(j.at("P"), "P");

  if (j.contains("generators")) {
    const json& g = require_object(j.at("generators"), "generators");
    only_keys(g, "generators", {"U", "U1", "U2"});
    if (g.contains("U") && (g.contains("U1") || g.contains("U2")))
      throw SchemaError("generators", "give either U or U1, U2");
    if (g.contains("U")) m.u1 = field_spec(g.at("U"), "generators.U");
    if (g.contains("U1")) m.u1 = field_spec(g.at("U1"), "generators.U1");
    if (g.contains("U2")) m.u2 = field_spec(g.at("U2"), "generators.U2");
    if (m.u2 && !m.u1) throw SchemaError("generators.U1", "missing required field");
  }

  if (j.contains("qe")) {
    const json& q = require_object(j.at("qe"), "qe");
    only_keys(q, "qe", {"a", "b", "c"});
    QECoefficients c;
    c.a = number(require(q, "qe", "a"), "qe.a");
    if (q.contains("b")) c.b = number(q.at("b"), "qe.b");
    if (q.contains("c")) c.c = number(q.at("c"), "qe.c");
    m.qe = c;
  }

  if (j.contains("tolerances")) {
    const json& t = require_object(j.at("tolerances"), "tolerances");
    only_keys(t, "tolerances", {"identity", "fit"});
    if (t.contains("identity")) m.tolerances.identity = number(t.at("identity"), "tolerances.identity");
    if (t.contains("fit")) m.tolerances.fit = number(t.at("fit"), "tolerances.fit");
    if (!(m.tolerances.identity > 0)) throw SchemaError("tolerances.identity", "must be positive");
    if (!(m.tolerances.fit > 0)) throw SchemaError("tolerances.fit", "must be positive");
  }

  if (j.contains("sampling")) {
    const json& s = require_object(j.at("sampling"), "sampling");
    only_keys(s, "sampling", {"points", "seed"});
    if (s.contains("points")) {
      if (!s.at("points").is_number_integer() || s.at("points").get<long long>() < 1)
        throw SchemaError("sampling.points", "expected a positive integer");
      m.sampling.points = s.at("points").get<int>();
    }
    if (s.contains("seed")) {
      if (!s.at("seed").is_number_unsigned()) throw SchemaError("sampling.seed", "expected an unsigned integer");
      m.sampling.seed = s.at("seed").get<std::uint64_t>();
    }
  }

  instantiate(m);  // validate every expression before any computation
  return m;
}

Manifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument(fmt::format("cannot read manifest '{}'", path.string()));
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str());
}

std::string to_json(const Manifest& m) {
  json j;
  j["name"] = m.name;
  j["base"] = chart_json(m.base);
  j["fiber"] = chart_json(m.fiber);
  j["warping"] = m.warping;
  if (m.p) j["P"] = field_json(*m.p);
  if (m.u1 && !m.u2) j["generators"] = json{{"U", field_json(*m.u1)}};
  if (m.u1 && m.u2) j["generators"] = json{{"U1", field_json(*m.u1)}, {"U2", field_json(*m.u2)}};
  if (m.qe) j["qe"] = json{{"a", m.qe->a}, {"b", m.qe->b}, {"c", m.qe->c}};
  j["tolerances"] = json{{"identity", m.tolerances.identity}, {"fit", m.tolerances.fit}};
  j["sampling"] = json{{"points", m.sampling.points}, {"seed", m.sampling.seed}};
  return j.dump(2);
}

}  // namespace wpg
