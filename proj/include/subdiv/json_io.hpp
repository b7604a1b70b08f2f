#pragma once

#include <string>

#include "json.hpp"
#include "subdiv/oracle.hpp"

namespace subdiv {

// {"branch": {"<pattern id>": host id, ...},
//  "paths": [{"from": x, "to": y, "vertices": [...]}, ...]}
nlohmann::json certificate_to_json(const SubdivisionCertificate& cert);
// Throws ParseError on schema violations.
SubdivisionCertificate certificate_from_json(const nlohmann::json& j);

void write_json_file(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::string& path);

}  // namespace subdiv
