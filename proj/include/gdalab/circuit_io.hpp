#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "gdalab/circuit.hpp"
#include "gdalab/errors.hpp"

namespace gdalab {

/// Instance file format:
///   {"nodes": [...],
///    "gates": [{"type":"NOR","in":[u,v],"out":w},
///              {"type":"PURIFY","in":[u],"out":[v,w]},
///              {"type":"ORACLE","in":[u1,...,uN],"out":v}],
///    "oracle": {"kind":"truth_table","arity":N,"data":[0,1,...]}
///            | {"kind":"sperner","data":{"map":name,"M":M,"d":d,"eps":eps}}}
/// Truth tables are indexed with the first input as the low bit and are
/// limited to N <= 20. Malformed input throws ConfigError; structural problems
/// are left for validate_instance.
Circuit circuit_from_json(const nlohmann::json& j, LedgerPtr ledger);

/// Canonical form: gates ordered NOR, PURIFY, ORACLE and lexicographically by
/// node names within each type, so identical instances serialize identically.
nlohmann::json circuit_to_json(const Circuit& circuit);

Circuit load_circuit(const std::filesystem::path& path, LedgerPtr ledger);
void save_circuit(const std::filesystem::path& path, const Circuit& circuit);

/// Reads a JSON document, mapping I/O and parse failures to ConfigError.
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace gdalab
