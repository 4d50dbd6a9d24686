#pragma once

// JSON records for certificates and reports. Every top-level record carries
// schema_version; a generated_at timestamp is optional so that output can be
// made byte-identical across runs.

#include <json.hpp>

#include "corank/manifold.hpp"
#include "corank/spform.hpp"

namespace corank::serialize {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Adds schema_version and, when requested, an ISO-8601 UTC generated_at.
Json envelope(const std::string& kind, bool timestamp);

Json to_json(const spform::SeparatingTwistWord& word);
Json to_json(const spform::NonExtensionCertificate& cert);
Json to_json(const manifold::MappingTorusCertificate& cert);
Json to_json(const manifold::CorankReport& report);
Json to_json(const spform::SpanResult& span);

/// Reads a certificate record and recomputes sigma from its word; throws
/// ParseError on malformed input or when the stored table or verdict differ.
spform::NonExtensionCertificate certificate_from_json(const Json& j);

}  // namespace corank::serialize
