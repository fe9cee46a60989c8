#pragma once

// JSON file formats: fans, morphisms, constructible functions, cycle classes,
// good-closure descriptors and report lines.

#include <filesystem>
#include <string>

#include "json.hpp"
#include "toricsm/csm.hpp"

namespace toricsm::io {

using nlohmann::json;

/// Parses without rejecting invalid fans (for validation reports).
FanPtr parse_fan_unchecked(const json& j);
/// Parses and requires a valid smooth fan; throws Parse or Validation.
FanPtr parse_fan(const json& j);
json fan_to_json(const Fan& fan);

std::string read_text(const std::filesystem::path& path);
json read_json(const std::filesystem::path& path);
FanPtr load_fan(const std::filesystem::path& path);

/// Fan references inside morphism/function files are resolved relative to
/// the referring file.
ToricMorphism load_morphism(const std::filesystem::path& path);
json morphism_to_json(const ToricMorphism& m, const std::string& source_ref, const std::string& target_ref);

/// `fan` overrides the file's own "fan" reference when non-null.
ConstructibleFunction load_function(const std::filesystem::path& path, FanPtr fan = nullptr);
ConstructibleFunction parse_function(const json& j, const FanPtr& fan);
json function_to_json(const ConstructibleFunction& phi, const std::string& fan_ref);

/// {"fan": "...", "class": {"": 1, "0": 2}}
CycleClass load_class(const std::filesystem::path& path, FanPtr fan = nullptr);
json class_to_json(const CycleClass& alpha, const std::string& fan_ref);

GoodClosure load_good_closure(const std::filesystem::path& path);

/// Cone-key -> integer object; integers beyond 64 bits are written as strings.
json coefficients_to_json(const ConeCoefficients& c);
ConeCoefficients coefficients_from_json(const json& j, const Fan& fan);
json integer_to_json(const Integer& v);
Integer integer_from_json(const json& j);

json check_to_json(const CheckResult& r);

/// FNV-1a 64-bit, hex; identifies input files in reports.
std::string digest(const std::string& bytes);

}  // namespace toricsm::io
