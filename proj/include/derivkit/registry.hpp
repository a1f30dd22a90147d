#pragma once

// Algebra generators of Ker D for the basic Weitzenboeck derivation, keyed by
// the number of variables.
//
//   {"entries": [{"n": n, "provenance": "...", "oracle_degree": d,
//                 "generators": [Poly, ...]}, ...]}

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "derivkit/json_io.hpp"

namespace derivkit {

struct RegistryEntry {
  std::size_t n = 0;
  std::string provenance;  ///< "classical" or "oracle-derived"
  unsigned oracle_degree = 0;  ///< truncation degree of the derivation, 0 if none
  std::vector<Poly> generators;
};

class KernelRegistry {
 public:
  /// The entries shipped with the library (n = 2..6).
  static const KernelRegistry& builtin();
  /// Parses the JSON layout above. Membership in Ker D is not checked here;
  /// see validate(). Throws ParseError.
  static KernelRegistry from_json(const Json& j);
  static KernelRegistry from_file(const std::string& path);

  [[nodiscard]] bool contains(std::size_t n) const { return entries_.count(n) != 0; }
  /// Throws RegistryError for an unregistered n.
  [[nodiscard]] const RegistryEntry& at(std::size_t n) const;
  [[nodiscard]] std::vector<std::size_t> keys() const;

  /// One message per generator that is not killed by D or not isobaric.
  [[nodiscard]] std::vector<std::string> validate(std::size_t n) const;

  void insert(RegistryEntry entry);
  [[nodiscard]] Json to_json() const;

 private:
  std::map<std::size_t, RegistryEntry> entries_;
};

}  // namespace derivkit
