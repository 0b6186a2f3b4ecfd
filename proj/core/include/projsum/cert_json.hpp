#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "projsum/certificate.hpp"
#include "projsum/verifier.hpp"

namespace projsum {

inline constexpr const char* kCertificateVersion = "projsum-cert/1";

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact coefficients as "p/q" strings, approximate ones as JSON numbers.
nlohmann::json coefficient_to_json(const Coefficient& c);
Coefficient coefficient_from_json(const nlohmann::json& j);

nlohmann::json certificate_to_json(const Certificate& cert);
/// Throws SchemaError on a wrong version or malformed content.
Certificate certificate_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const Report& report);

}  // namespace projsum
