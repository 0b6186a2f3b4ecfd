#include "projsum/cert_json.hpp"

namespace projsum {

using nlohmann::json;

json coefficient_to_json(const Coefficient& c) {
  if (c.is_exact()) return c.exact_value().to_string();
  return c.to_double();
}

Coefficient coefficient_from_json(const json& j) {
  if (j.is_string()) {
    try {
      return BigRational::parse(j.get<std::string>());
    } catch (const std::exception& e) {
      throw SchemaError("bad coefficient '" + j.get<std::string>() + "': " + e.what());
    }
  }
  if (j.is_number()) return Coefficient::approx(j.get<double>());
  throw SchemaError("coefficient must be a string or a number");
}

namespace {

json class_to_json(const KClass& k) { return k.residues(); }

KClass class_from_json(const KGroup& g, const json& j) {
  if (!j.is_array()) throw SchemaError("class must be an array of integers");
  std::vector<std::int64_t> r;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw SchemaError("class must be an array of integers");
    r.push_back(x.get<std::int64_t>());
  }
  try {
    return g.element(r);
  } catch (const std::exception& e) {
    throw SchemaError(e.what());
  }
}

json matrix_to_json(const FactoredProjection& f) {
  json entries = json::array();
  for (const auto& e : f.entries) entries.push_back(json::array({e.row, e.col, e.value}));
  return {{"dim", f.dim}, {"rank", f.rank}, {"factor", std::move(entries)}};
}

FactoredProjection matrix_from_json(const json& j) {
  FactoredProjection f;
  f.dim = j.at("dim").get<std::size_t>();
  f.rank = j.at("rank").get<std::size_t>();
  for (const auto& e : j.at("factor")) {
    if (!e.is_array() || e.size() != 3) throw SchemaError("factor entries are [row, col, value]");
    f.entries.push_back({e[0].get<std::uint32_t>(), e[1].get<std::uint32_t>(), e[2].get<double>()});
  }
  return f;
}

json origin_to_json(const Origin& o) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, RootOrigin>) return {{"root", v.index}};
        else if constexpr (std::is_same_v<T, SplitOrigin>) return {{"split", v.parent}, {"branch", v.branch}};
        else return {{"claim", v.claim}, {"output", v.output}};
      },
      o);
}

// Node table for readers of the file; the verifier rebuilds it from the claims.
json nodes_to_json(const Certificate& cert) {
  json nodes = json::array();
  for (std::size_t i = 0; i < cert.input.size(); ++i)
    nodes.push_back({{"id", i}, {"class", class_to_json(cert.input[i].kclass)}, {"origin", {{"root", i}}}});
  for (const auto& claim : cert.claims) {
    if (const auto* s = std::get_if<NodeSplit>(&claim)) {
      for (std::uint32_t b = 0; b < s->children.size(); ++b)
        nodes.push_back({{"id", s->children[b].id},
                         {"class", class_to_json(s->children[b].kclass)},
                         {"origin", origin_to_json(SplitOrigin{s->parent, b})}});
    } else if (const auto* m = std::get_if<MatrixClaim>(&claim); m && !m->terminal) {
      for (std::uint32_t j = 0; j < m->outputs.size(); ++j)
        nodes.push_back({{"id", m->outputs[j]}, {"origin", origin_to_json(OutputOrigin{m->id, j})}});
    }
  }
  return nodes;
}

json claim_to_json(const Claim& claim) {
  return std::visit(
      [](const auto& c) -> json {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, CoeffSplit>) {
          json into = json::array();
          for (const auto& x : c.into) into.push_back(coefficient_to_json(x));
          return {{"type", "coeff_split"}, {"node", c.node}, {"from", coefficient_to_json(c.from)}, {"into", into}};
        } else if constexpr (std::is_same_v<T, NodeSplit>) {
          json children = json::array();
          for (const auto& ch : c.children) children.push_back({{"id", ch.id}, {"class", class_to_json(ch.kclass)}});
          return {{"type", "node_split"}, {"parent", c.parent}, {"children", children}};
        } else if constexpr (std::is_same_v<T, MatrixClaim>) {
          json alphas = json::array();
          for (const auto& a : c.alphas) alphas.push_back(coefficient_to_json(a));
          json matrices = json::array();
          for (const auto& f : c.matrices) matrices.push_back(matrix_to_json(f));
          json j = {{"type", "matrix"},   {"id", c.id},          {"strategy", c.strategy},
                    {"slots", c.slots},   {"alphas", alphas},    {"scale", coefficient_to_json(c.scale)},
                    {"matrices", matrices}};
          if (c.terminal) j["outputs"] = "terminal";
          else j["outputs"] = c.outputs;
          return j;
        } else {
          return {{"type", "discharge"}, {"node", c.node}};
        }
      },
      claim);
}

Claim claim_from_json(const KGroup& g, const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "coeff_split") {
    CoeffSplit c{j.at("node").get<NodeId>(), coefficient_from_json(j.at("from")), {}};
    for (const auto& x : j.at("into")) c.into.push_back(coefficient_from_json(x));
    return c;
  }
  if (type == "node_split") {
    NodeSplit s{j.at("parent").get<NodeId>(), {}};
    for (const auto& ch : j.at("children"))
      s.children.push_back({ch.at("id").get<NodeId>(), class_from_json(g, ch.at("class"))});
    return s;
  }
  if (type == "matrix") {
    MatrixClaim m;
    m.id = j.at("id").get<std::uint32_t>();
    m.strategy = j.value("strategy", "");
    m.slots = j.at("slots").get<std::vector<NodeId>>();
    for (const auto& a : j.at("alphas")) m.alphas.push_back(coefficient_from_json(a));
    m.scale = coefficient_from_json(j.at("scale"));
    for (const auto& f : j.at("matrices")) m.matrices.push_back(matrix_from_json(f));
    const auto& out = j.at("outputs");
    if (out.is_string()) {
      if (out.get<std::string>() != "terminal") throw SchemaError("outputs must be \"terminal\" or a list of ids");
      m.terminal = true;
    } else {
      m.terminal = false;
      m.outputs = out.get<std::vector<NodeId>>();
    }
    return m;
  }
  if (type == "discharge") return Discharge{j.at("node").get<NodeId>()};
  throw SchemaError("unknown claim type '" + type + "'");
}

}  // namespace

json certificate_to_json(const Certificate& cert) {
  json input = json::array();
  for (const auto& b : cert.input)
    input.push_back({{"coeff", coefficient_to_json(b.coeff)}, {"class", class_to_json(b.kclass)}});
  json claims = json::array();
  for (const auto& c : cert.claims) claims.push_back(claim_to_json(c));
  return {{"version", kCertificateVersion},
          {"k0", cert.group.moduli()},
          {"input", std::move(input)},
          {"nodes", nodes_to_json(cert)},
          {"claims", std::move(claims)},
          {"claimed_count", cert.claimed_count},
          {"tolerance", cert.tolerance},
          {"coeff_tolerance", cert.coeff_tolerance}};
}

Certificate certificate_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("certificate must be a JSON object");
  if (!j.contains("version") || j["version"] != kCertificateVersion)
    throw SchemaError(std::string("expected version \"") + kCertificateVersion + "\"");
  try {
    Certificate cert;
    try {
      cert.group = KGroup(j.at("k0").get<std::vector<std::int64_t>>());
    } catch (const std::invalid_argument& e) {
      throw SchemaError(e.what());
    }
    for (const auto& b : j.at("input"))
      cert.input.push_back({coefficient_from_json(b.at("coeff")), class_from_json(cert.group, b.at("class"))});
    if (j.contains("nodes") && !j["nodes"].is_array()) throw SchemaError("nodes must be an array");
    for (const auto& c : j.at("claims")) cert.claims.push_back(claim_from_json(cert.group, c));
    cert.claimed_count = j.at("claimed_count").get<std::size_t>();
    cert.tolerance = j.at("tolerance").get<double>();
    cert.coeff_tolerance = j.value("coeff_tolerance", kDefaultCoeffTol);
    return cert;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed certificate: ") + e.what());
  }
}

json report_to_json(const Report& r) {
  json errors = json::array();
  for (const auto& e : r.errors) {
    json je = {{"kind", to_string(e.kind)}, {"message", e.message}};
    je["claim"] = e.claim ? json(*e.claim) : json(nullptr);
    errors.push_back(std::move(je));
  }
  return {{"valid", r.valid}, {"projections", r.projections}, {"max_residual", r.max_residual}, {"errors", errors}};
}

}  // namespace projsum
