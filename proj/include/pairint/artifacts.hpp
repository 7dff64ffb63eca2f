#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "pairint/certify.hpp"
#include "pairint/recovery.hpp"
#include "pairint/relaxation.hpp"

namespace pairint {

using ordered_json = nlohmann::ordered_json;

// FNV-1a, printed as 16 hex digits; cheap and stable across runs.
std::uint64_t fnv1a64(const std::string& data);
std::string hash_hex(const std::string& data);

// Adds schema + config + content hash (computed over the document without the
// hash field) and writes the file.
void write_artifact(const std::string& path, ordered_json doc, const ordered_json& config);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

ordered_json relaxation_to_json(const RelaxationSolution& rel);
ordered_json certificate_to_json(const CertificateReport& rep);
ordered_json recovery_to_json(const RecoveryResult& rec);

}  // namespace pairint
