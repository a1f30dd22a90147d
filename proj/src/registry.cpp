#include "derivkit/registry.hpp"

#include <fstream>
#include <sstream>

#include "derivkit/errors.hpp"
#include "derivkit/weitzenboeck.hpp"
#include "kernel_registry_data.hpp"

namespace derivkit {

const KernelRegistry& KernelRegistry::builtin() {
  static const KernelRegistry registry = from_json(Json::parse(kKernelRegistryJson));
  return registry;
}

KernelRegistry KernelRegistry::from_json(const Json& j) {
  KernelRegistry out;
  try {
    for (const auto& e : j.at("entries")) {
      RegistryEntry entry;
      entry.n = e.at("n").get<std::size_t>();
      entry.provenance = e.value("provenance", std::string("unspecified"));
      entry.oracle_degree = e.value("oracle_degree", 0U);
      for (const auto& g : e.at("generators")) {
        Poly p = poly_from_json(g);
        if (p.nvars() != entry.n) {
          throw ParseError("registry entry for n = " + std::to_string(entry.n) +
                           " holds a generator in " + std::to_string(p.nvars()) + " variables");
        }
        entry.generators.push_back(std::move(p));
      }
      if (entry.generators.empty()) {
        throw ParseError("registry entry for n = " + std::to_string(entry.n) + " is empty");
      }
      out.insert(std::move(entry));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("malformed registry: ") + ex.what());
  }
  return out;
}

KernelRegistry KernelRegistry::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open registry file " + path);
  try {
    return from_json(Json::parse(in));
  } catch (const nlohmann::json::parse_error& ex) {
    throw ParseError("registry file " + path + ": " + ex.what());
  }
}

const RegistryEntry& KernelRegistry::at(std::size_t n) const {
  auto it = entries_.find(n);
  if (it == entries_.end()) {
    throw RegistryError("no kernel generators registered for n = " + std::to_string(n));
  }
  return it->second;
}

std::vector<std::size_t> KernelRegistry::keys() const {
  std::vector<std::size_t> out;
  for (const auto& [n, e] : entries_) out.push_back(n);
  return out;
}

std::vector<std::string> KernelRegistry::validate(std::size_t n) const {
  const auto& entry = at(n);
  const Derivation d = weitzenboeck_derivation(n);
  std::vector<std::string> problems;
  for (std::size_t k = 0; k < entry.generators.size(); ++k) {
    const Poly& g = entry.generators[k];
    if (!d.apply(g).is_zero()) {
      problems.push_back("generator " + std::to_string(k + 1) + " (" + to_string(g) +
                         ") is not in Ker D");
    }
    if (!isobaric_weight(g)) {
      problems.push_back("generator " + std::to_string(k + 1) + " (" + to_string(g) +
                         ") is not isobaric");
    }
  }
  return problems;
}

void KernelRegistry::insert(RegistryEntry entry) {
  const std::size_t n = entry.n;
  entries_.insert_or_assign(n, std::move(entry));
}

Json KernelRegistry::to_json() const {
  Json entries = Json::array();
  for (const auto& [n, e] : entries_) {
    Json gens = Json::array();
    for (const auto& g : e.generators) gens.push_back(derivkit::to_json(g));
    Json item{{"n", n}, {"provenance", e.provenance}};
    if (e.oracle_degree > 0) item["oracle_degree"] = e.oracle_degree;
    item["generators"] = std::move(gens);
    entries.push_back(std::move(item));
  }
  return Json{{"entries", entries}};
}

}  // namespace derivkit
