#include "gdalab/circuit_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "gdalab/config.hpp"

namespace gdalab {

using nlohmann::json;

namespace {

std::vector<std::string> string_list(const json& j, const char* what) {
  if (j.is_string()) return {j.get<std::string>()};
  if (!j.is_array()) throw ConfigError(std::string(what) + " must be a node name or list of names");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw ConfigError(std::string(what) + " entries must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

BoolOracle oracle_from_json(const json& j, LedgerPtr ledger, OracleSpec& spec) {
  if (!j.is_object() || !j.contains("kind")) throw ConfigError("oracle must be an object with a kind");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "truth_table") {
    if (!j.contains("data")) throw ConfigError("truth_table oracle needs data");
    std::vector<std::uint8_t> table;
    const json& data = j.at("data");
    if (data.is_string()) {
      for (char c : data.get<std::string>()) {
        if (c != '0' && c != '1') throw ConfigError("truth table string must contain only 0/1");
        table.push_back(c == '1');
      }
    } else if (data.is_array()) {
      for (const auto& e : data) {
        if (!e.is_number_integer() || (e.get<int>() != 0 && e.get<int>() != 1)) {
          throw ConfigError("truth table entries must be 0 or 1");
        }
        table.push_back(static_cast<std::uint8_t>(e.get<int>()));
      }
    } else {
      throw ConfigError("truth table data must be an array or a 0/1 string");
    }
    int arity = 0;
    while ((std::size_t{1} << arity) < table.size()) ++arity;
    if ((std::size_t{1} << arity) != table.size()) throw ConfigError("truth table length must be a power of two");
    if (j.contains("arity") && j.at("arity").get<int>() != arity) {
      throw ConfigError("truth table arity does not match its length");
    }
    if (arity > tolerances().truth_table_max_arity) throw ConfigError("truth table oracles are limited to N <= 20");
    spec = TruthTableSpec{arity, table};
    return truth_table_oracle(arity, std::move(table), std::move(ledger));
  }
  if (kind == "sperner") {
    const json& data = j.contains("data") ? j.at("data") : j;
    SpernerOracleSpec s;
    try {
      s.map_name = data.at("map").get<std::string>();
      s.d = data.at("d").get<int>();
      s.eps = data.at("eps").get<double>();
      s.M = data.contains("M") ? data.at("M").get<int>() : sperner_grid_width(s.eps);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("sperner oracle: ") + e.what());
    }
    try {
      ContinuousMap F = registered_map(s.map_name, s.d, ledger);
      SpernerInstance lambda = brouwer_to_labeling(F, s.eps, ledger);
      if (lambda.M() != s.M) {
        throw ConfigError("sperner oracle: M=" + std::to_string(s.M) + " but eps=" + std::to_string(s.eps) +
                          " gives M=" + std::to_string(lambda.M()));
      }
      spec = s;
      return build_oracle_from_labeling(lambda, s.M, s.d, std::move(ledger));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("sperner oracle: ") + e.what());
    }
  }
  throw ConfigError("unknown oracle kind '" + kind + "'");
}

json oracle_to_json(const OracleSpec& spec) {
  if (const auto* tt = std::get_if<TruthTableSpec>(&spec)) {
    json data = json::array();
    for (auto v : tt->table) data.push_back(static_cast<int>(v));
    return {{"kind", "truth_table"}, {"arity", tt->arity}, {"data", std::move(data)}};
  }
  const auto& s = std::get<SpernerOracleSpec>(spec);
  return {{"kind", "sperner"}, {"data", {{"map", s.map_name}, {"M", s.M}, {"d", s.d}, {"eps", s.eps}}}};
}

}  // namespace

Circuit circuit_from_json(const json& j, LedgerPtr ledger) {
  if (!j.is_object()) throw ConfigError("circuit must be a JSON object");
  Circuit circuit;
  try {
    for (const auto& n : j.at("nodes")) circuit.add_node(n.get<std::string>());
    for (const auto& g : j.at("gates")) {
      const std::string type = g.at("type").get<std::string>();
      Gate gate;
      if (type == "NOR") {
        gate.type = GateType::Nor;
      } else if (type == "PURIFY") {
        gate.type = GateType::Purify;
      } else if (type == "ORACLE") {
        gate.type = GateType::Oracle;
      } else {
        throw ConfigError("unknown gate type '" + type + "'");
      }
      gate.inputs = string_list(g.at("in"), "gate inputs");
      gate.outputs = string_list(g.at("out"), "gate outputs");
      circuit.add_gate(std::move(gate));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("circuit: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("circuit: ") + e.what());
  }
  if (j.contains("oracle") && !j.at("oracle").is_null()) {
    OracleSpec spec;
    BoolOracle oracle = oracle_from_json(j.at("oracle"), std::move(ledger), spec);
    circuit.set_oracle(std::move(oracle), std::move(spec));
  }
  return circuit;
}

json circuit_to_json(const Circuit& circuit) {
  std::vector<Gate> gates = circuit.gates();
  std::stable_sort(gates.begin(), gates.end(), [](const Gate& a, const Gate& b) {
    if (a.type != b.type) return static_cast<int>(a.type) < static_cast<int>(b.type);
    if (a.inputs != b.inputs) return a.inputs < b.inputs;
    return a.outputs < b.outputs;
  });
  json jg = json::array();
  for (const auto& g : gates) {
    json entry = {{"type", std::string(to_string(g.type))}, {"in", g.inputs}};
    if (g.type == GateType::Purify) {
      entry["out"] = g.outputs;
    } else {
      entry["out"] = g.outputs.size() == 1 ? json(g.outputs[0]) : json(g.outputs);
    }
    jg.push_back(std::move(entry));
  }
  json out = {{"nodes", circuit.nodes()}, {"gates", std::move(jg)}};
  if (circuit.oracle_spec()) out["oracle"] = oracle_to_json(*circuit.oracle_spec());
  return out;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

Circuit load_circuit(const std::filesystem::path& path, LedgerPtr ledger) {
  return circuit_from_json(read_json_file(path), std::move(ledger));
}

void save_circuit(const std::filesystem::path& path, const Circuit& circuit) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << circuit_to_json(circuit).dump(2) << '\n';
}

}  // namespace gdalab
