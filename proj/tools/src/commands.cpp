#include "projsum_cli/commands.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <regex>
#include <sstream>

#include "projsum/cert_json.hpp"
#include "projsum/element_spec.hpp"
#include "projsum/strategies.hpp"
#include "projsum/verifier.hpp"

namespace projsum::cli {

using nlohmann::json;

std::size_t resolve_dim_cap(std::optional<std::size_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("PROJSUM_DIM_CAP"); env && *env) {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(env, &pos);
    if (env[pos] != '\0') throw std::invalid_argument(std::string("bad PROJSUM_DIM_CAP '") + env + "'");
    return static_cast<std::size_t>(v);
  }
  return kDefaultDimensionCap;
}

namespace {

void parse_failure(std::ostream& err, const std::string& what, const std::string& text, std::size_t pos) {
  err << "parse error: " << what << "\n  " << text << "\n  " << std::string(std::min(pos, text.size()), ' ')
      << "^\n";
}

}  // namespace

int cmd_decompose(const DecomposeArgs& args, std::ostream& out, std::ostream& err) {
  StrategyOptions opts;
  try {
    opts.dimension_cap = resolve_dim_cap(args.dim_cap);
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kMalformed;
  }
  if (args.tol) {
    if (!(*args.tol > 0)) {
      err << "--tol must be positive\n";
      return kMalformed;
    }
    opts.matrix_tol = *args.tol;
  }

  KGroup group;
  try {
    group = KGroup::parse(args.k0);
  } catch (const ParseError& e) {
    parse_failure(err, std::string("group: ") + e.what(), args.k0, e.position());
    return kMalformed;
  }
  SpectralElement element;
  try {
    element = parse_element(group, args.element);
  } catch (const ParseError& e) {
    parse_failure(err, std::string("element: ") + e.what(), args.element, e.position());
    return kMalformed;
  }

  Certificate cert;
  try {
    cert = strat_spectral(element, opts);
  } catch (const NotDecomposable& e) {
    err << e.what() << "\n";
    out << json{{"error", "NotDecomposable"}, {"reason", e.reason()}}.dump() << "\n";
    return kNotDecomposable;
  } catch (const DimensionCapExceeded& e) {
    err << e.what() << " (raise --dim-cap or PROJSUM_DIM_CAP)\n";
    out << json{{"error", "DimensionCapExceeded"}, {"dimension", e.dimension()}, {"cap", e.cap()}}.dump() << "\n";
    return kDimensionCap;
  } catch (const NegativeCoefficient& e) {
    err << e.what() << "\n";
    return kMalformed;
  }

  const Report report = verify_certificate(cert);
  err << "projections: " << report.projections << ", max residual: " << report.max_residual
      << (report.valid ? ", replay ok" : ", replay FAILED") << "\n";
  const std::string text = certificate_to_json(cert).dump(1);
  if (args.out.empty()) {
    out << text << "\n";
  } else {
    std::ofstream f(args.out);
    if (!(f << text << "\n")) {
      err << "cannot write " << args.out << "\n";
      return kMalformed;
    }
  }
  return report.valid ? kOk : kInvalidCertificate;
}

int cmd_verify(const std::string& path, std::ostream& out, std::ostream& err) {
  std::ifstream f(path);
  if (!f) {
    err << "cannot open " << path << "\n";
    return kMalformed;
  }
  Certificate cert;
  try {
    cert = certificate_from_json(json::parse(f));
  } catch (const json::exception& e) {
    err << "malformed JSON: " << e.what() << "\n";
    return kMalformed;
  } catch (const SchemaError& e) {
    err << "malformed certificate: " << e.what() << "\n";
    return kMalformed;
  }
  const Report report = verify_certificate(cert);
  out << report_to_json(report).dump(1) << "\n";
  for (const auto& e : report.errors)
    err << to_string(e.kind) << (e.claim ? " at claim " + std::to_string(*e.claim) : std::string()) << ": "
        << e.message << "\n";
  return report.valid ? kOk : kInvalidCertificate;
}

namespace {

struct DemoItem {
  std::string name;
  std::function<Certificate()> build;
};

// Roots with the given coefficients, all of class zero, handed to `body`.
Certificate on_theta_roots(const KGroup& g, const std::vector<Coefficient>& coeffs,
                           const std::function<void(CertificateBuilder&, const std::vector<NodeId>&)>& body) {
  CertificateBuilder b(g);
  std::vector<NodeId> roots;
  for (const auto& c : coeffs) roots.push_back(b.add_root(c, g.zero()));
  body(b, roots);
  return std::move(b).finish();
}

std::vector<DemoItem> battery(const KGroup& g) {
  std::vector<DemoItem> items;
  for (const char* gamma : {"3/2", "7/4", "2", "13/5", "3"}) {
    const Coefficient c(BigRational::parse(gamma));
    items.push_back({std::string("big gamma=") + gamma, [g, c] {
                       return on_theta_roots(g, {c}, [&](CertificateBuilder& b, const std::vector<NodeId>& r) {
                         strat_big(b, c, r[0], Coefficient(1));
                       });
                     }});
  }
  items.push_back({"rational 7/5 + 3/5", [g] {
                     const BigRational a(7, 5), be(3, 5);
                     return on_theta_roots(g, {a, be}, [&](CertificateBuilder& b, const std::vector<NodeId>& r) {
                       strat_rational(b, a, be, r[0], r[1]);
                     });
                   }});
  std::vector<std::string> elements;
  if (g.order() == 1) {
    elements = {"1.3", "1.2; 0.5", "2.5; 1; 0.25"};
  } else {
    elements = {"3/2:(1)", "1.3:(1); 0.4:(0)"};
    if (g.moduli().front() > 2) elements.push_back("1.25:(2); 0.9:(1)");
  }
  for (const auto& text : elements)
    items.push_back({"spectral " + text, [g, text] { return strat_spectral(parse_element(g, text)); }});
  return items;
}

std::optional<long> preset_n(const std::string& preset) {
  std::smatch m;
  static const std::regex plain("o(\\d+)"), call("on\\((\\d+)\\)");
  if (std::regex_match(preset, m, plain) || std::regex_match(preset, m, call)) {
    const long n = std::stol(m[1]);
    if (n >= 2) return n;
  }
  return std::nullopt;
}

}  // namespace

int cmd_demo(const std::string& preset, std::ostream& out, std::ostream& err) {
  const auto n = preset_n(preset);
  if (!n) {
    err << "unknown preset '" << preset << "'; expected o2, o3, ..., oN or on(N) with N >= 2\n";
    return kMalformed;
  }
  const KGroup g = KGroup::cuntz(*n);
  json items = json::array();
  bool all_valid = true;
  for (const auto& item : battery(g)) {
    const auto t0 = std::chrono::steady_clock::now();
    const Certificate cert = item.build();
    const Certificate reread = certificate_from_json(json::parse(certificate_to_json(cert).dump()));
    const Report report = verify_certificate(reread);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    all_valid = all_valid && report.valid;
    err << (report.valid ? "ok   " : "FAIL ") << item.name << ": " << report.projections
        << " projections, residual " << report.max_residual << "\n";
    items.push_back({{"name", item.name},
                     {"valid", report.valid},
                     {"projections", report.projections},
                     {"max_residual", report.max_residual},
                     {"millis", ms}});
  }
  out << json{{"preset", preset}, {"k0", g.moduli()}, {"items", items}, {"valid", all_valid}}.dump(1) << "\n";
  return all_valid ? kOk : kInvalidCertificate;
}

}  // namespace projsum::cli
