#pragma once

#include <string>

namespace cubex {

struct RunnerResult {
  std::string json;  // structured report; always present
  std::string csv;   // table report; empty when the command emits none
};

// Execute one experiment manifest: a JSON object naming a "command" plus its
// parameters (dimensions as integers, rationals as "num/den" strings, seeds
// for anything sampled, resource limits with safe defaults).  The manifest
// text is hashed into every artifact, and identical manifests produce
// byte-identical results.  No floating point reaches either output.
RunnerResult run_manifest(const std::string& manifest_json);

// FNV-1a over the canonical manifest dump, as 16 lowercase hex digits.
std::string manifest_hash(const std::string& canonical_dump);

}  // namespace cubex
