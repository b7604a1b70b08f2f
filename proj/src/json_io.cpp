#include "subdiv/json_io.hpp"

#include <fstream>

namespace subdiv {

nlohmann::json certificate_to_json(const SubdivisionCertificate& cert) {
  nlohmann::json j;
  j["branch"] = nlohmann::json::object();
  for (std::size_t x = 0; x < cert.branch.size(); ++x) j["branch"][std::to_string(x)] = cert.branch[x];
  j["paths"] = nlohmann::json::array();
  for (const auto& cp : cert.paths)
    j["paths"].push_back({{"from", cp.from}, {"to", cp.to}, {"vertices", cp.path.vertices}});
  return j;
}

SubdivisionCertificate certificate_from_json(const nlohmann::json& j) {
  try {
    SubdivisionCertificate cert;
    const auto& branch = j.at("branch");
    if (!branch.is_object()) throw Error(ErrorKind::ParseError, "branch must be an object");
    cert.branch.assign(branch.size(), -1);
    for (auto it = branch.begin(); it != branch.end(); ++it) {
      std::size_t pos = 0;
      int x = std::stoi(it.key(), &pos);
      if (pos != it.key().size() || x < 0 || x >= static_cast<int>(branch.size()))
        throw Error(ErrorKind::ParseError, "bad pattern id '" + it.key() + "'");
      cert.branch[x] = it.value().get<Vertex>();
    }
    for (const auto& p : j.at("paths"))
      cert.paths.push_back({p.at("from").get<Vertex>(), p.at("to").get<Vertex>(),
                            Dipath(p.at("vertices").get<VertexList>())});
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("certificate JSON: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw Error(ErrorKind::ParseError, "certificate JSON: non-numeric pattern id");
  }
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::ParseError, "cannot write " + path);
  f << j.dump(2) << '\n';
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::ParseError, "cannot open " + path);
  try {
    return nlohmann::json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("invalid JSON in ") + path + ": " + e.what());
  }
}

}  // namespace subdiv
