#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "projsum/cert_json.hpp"
#include "projsum/element_spec.hpp"
#include "projsum_cli/commands.hpp"

using namespace projsum;
using namespace projsum::cli;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run decompose(const std::string& k0, const std::string& element, std::optional<std::size_t> cap = {},
              const std::string& out_path = "") {
  std::ostringstream out, err;
  DecomposeArgs a{k0, element, std::nullopt, cap, out_path};
  const int code = cmd_decompose(a, out, err);
  return {code, out.str(), err.str()};
}

Run verify(const std::string& path) {
  std::ostringstream out, err;
  const int code = cmd_verify(path, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("projsum_test_" + name);
}

}  // namespace

TEST_CASE("element grammar") {
  const SpectralElement e = parse_element("2,3", "1.3:(1,2); 2/5:(0,0)");
  REQUIRE(e.blocks.size() == 2);
  CHECK(e.blocks[0].coeff == Coefficient::exact(13, 10));
  CHECK(e.blocks[0].kclass.residues() == std::vector<std::int64_t>{1, 2});
  CHECK(e.blocks[1].coeff == Coefficient::exact(2, 5));
  CHECK(parse_element("", "1.5").blocks.size() == 1);
  CHECK(parse_element("", "1.5;").blocks.size() == 1);
  CHECK(parse_element("3", "1:(4)").blocks[0].kclass.residues() == std::vector<std::int64_t>{1});

  auto position = [](const std::string& g, const std::string& text) -> std::size_t {
    try {
      parse_element(g, text);
    } catch (const ParseError& e) {
      return e.position();
    }
    return static_cast<std::size_t>(-1);
  };
  CHECK(position("2", "1.3:(1);x:(0)") == 8);
  CHECK(position("2", "1.3:(1") == 6);
  CHECK(position("2", "1.3") == 3);
  CHECK(position("2", "1.3:(a)") == 5);
  CHECK(position("2", "1.3:(1,1)") == 0);
  CHECK(position("2", "") == 0);
  CHECK(position("2", "-1:(1)") == 0);
  CHECK_THROWS_AS(parse_element("0", "1.3:(1)"), ParseError);
}

TEST_CASE("decompose exit codes") {
  SUBCASE("ok") {
    const Run r = decompose("2", "1.3:(1)");
    CHECK(r.code == kOk);
    const Certificate cert = certificate_from_json(json::parse(r.out));
    CHECK(verify_certificate(cert).valid);
  }
  SUBCASE("not decomposable") {
    const Run r = decompose("2", "1.0:(1);0.5:(0)");
    CHECK(r.code == kNotDecomposable);
    CHECK(json::parse(r.out)["reason"] == "norm-le-1-not-projection");
  }
  SUBCASE("non-torsion group") { CHECK(decompose("0", "1.3:(1)").code == kMalformed); }
  SUBCASE("bad element") { CHECK(decompose("2", "1.3:(1").code == kMalformed); }
  SUBCASE("negative coefficient") { CHECK(decompose("2", "2:(1); -1:(0)").code == kMalformed); }
  SUBCASE("dimension cap flag") {
    const Run r = decompose("", "1.41421356", 5);
    CHECK(r.code == kDimensionCap);
    const json j = json::parse(r.out);
    CHECK(j["error"] == "DimensionCapExceeded");
    CHECK(j["dimension"].get<std::size_t>() > 5);
  }
  SUBCASE("dimension cap from the environment") {
    setenv("PROJSUM_DIM_CAP", "5", 1);
    CHECK(resolve_dim_cap(std::nullopt) == 5);
    CHECK(resolve_dim_cap(7) == 7);
    CHECK(decompose("", "1.41421356").code == kDimensionCap);
    setenv("PROJSUM_DIM_CAP", "many", 1);
    CHECK(decompose("", "1.41421356").code == kMalformed);
    unsetenv("PROJSUM_DIM_CAP");
    CHECK(resolve_dim_cap(std::nullopt) == kDefaultDimensionCap);
  }
}

TEST_CASE("verify exit codes") {
  const auto path = temp_file("cert.json");
  REQUIRE(decompose("2", "1.3:(1); 0.4:(0)", std::nullopt, path.string()).code == kOk);
  SUBCASE("fresh certificate") {
    const Run r = verify(path.string());
    CHECK(r.code == kOk);
    CHECK(json::parse(r.out)["valid"] == true);
  }
  SUBCASE("tampered count") {
    std::ifstream in(path);
    json j = json::parse(in);
    j["claimed_count"] = j["claimed_count"].get<int>() + 1;
    const auto bad = temp_file("tampered.json");
    std::ofstream(bad) << j.dump();
    const Run r = verify(bad.string());
    CHECK(r.code == kInvalidCertificate);
    CHECK(json::parse(r.out)["errors"][0]["kind"] == "CountMismatch");
  }
  SUBCASE("truncated file") {
    std::ifstream in(path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const auto bad = temp_file("truncated.json");
    std::ofstream(bad) << text.substr(0, text.size() / 2);
    CHECK(verify(bad.string()).code == kMalformed);
  }
  SUBCASE("missing file") { CHECK(verify(temp_file("absent.json").string()).code == kMalformed); }
}

TEST_CASE("demo presets") {
  for (const char* preset : {"o2", "o3", "on(5)"}) {
    CAPTURE(preset);
    std::ostringstream out, err;
    CHECK(cmd_demo(preset, out, err) == kOk);
    const json j = json::parse(out.str());
    CHECK(j["valid"] == true);
    CHECK(j["items"].size() >= 8);
  }
  std::ostringstream out, err;
  CHECK(cmd_demo("o1", out, err) == kMalformed);
  CHECK(cmd_demo("bogus", out, err) == kMalformed);
}
