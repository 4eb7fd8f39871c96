#pragma once

#include <filesystem>
#include <string>

#include "core/analytic.hpp"
#include "core/bounds.hpp"
#include "core/forms.hpp"
#include "core/sieve.hpp"
#include "json.hpp"

namespace idoneal::report {

/// Significant digits for real-valued report fields unless overridden.
inline constexpr int kDefaultDisplayDigits = 12;

/// Number when it fits 64 bits, decimal string otherwise.
nlohmann::json integer_json(Int v);

nlohmann::json to_json(const forms::QuadForm& f);
nlohmann::json to_json(const forms::GenusReport& r);
nlohmann::json to_json(const analytic::IdentityReport& r, int digits = kDefaultDisplayDigits);
nlohmann::json to_json(const bounds::BoundReport& r, int digits = kDefaultDisplayDigits);
nlohmann::json to_json(const bounds::ThresholdReport& r, int digits = kDefaultDisplayDigits);
nlohmann::json summary_json(const sieve::SieveOutcome& outcome);

/// Sorted keys, two-space indent, trailing newline.
std::string dump(const nlohmann::json& j);

/// Writes `content` to path (or standard output for "-"); IoError names the path.
void write_report(const std::string& content, const std::filesystem::path& path);

}  // namespace idoneal::report
