#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "gdalab/boolinterp.hpp"
#include "gdalab/sperner.hpp"

namespace gdalab {

enum class GateType { Nor, Purify, Oracle };

std::string_view to_string(GateType type) noexcept;

/// Three-valued node value: a pure bit or bottom.
enum class Trit : std::uint8_t { Zero = 0, One = 1, Bottom = 2 };

char to_char(Trit t) noexcept;
inline bool is_pure(Trit t) noexcept { return t != Trit::Bottom; }

/// NOR: inputs {u, v}, outputs {w}.  PURIFY: inputs {u}, outputs {v, w}.
/// ORACLE: inputs {u_1..u_N}, outputs {v}.
struct Gate {
  GateType type;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
};

/// How an oracle was specified, kept so instances can be written back out.
struct TruthTableSpec {
  int arity = 0;
  std::vector<std::uint8_t> table;
};

struct SpernerOracleSpec {
  std::string map_name;
  int M = 0;
  int d = 0;
  double eps = 0.0;
};

using OracleSpec = std::variant<TruthTableSpec, SpernerOracleSpec>;

/// OraclePureCircuit instance. Nodes keep insertion order; that order is the
/// coordinate order of every vector-valued quantity built from the circuit.
class Circuit {
 public:
  /// Throws std::invalid_argument on duplicate or empty names.
  void add_node(const std::string& name);
  void add_nor(const std::string& u, const std::string& v, const std::string& w);
  void add_purify(const std::string& u, const std::string& v, const std::string& w);
  void add_oracle_gate(std::vector<std::string> inputs, const std::string& output);
  /// Appends a gate as-is; structure is only checked by validate_instance.
  void add_gate(Gate gate);

  void set_oracle(BoolOracle oracle, std::optional<OracleSpec> spec = std::nullopt);

  const std::vector<std::string>& nodes() const noexcept { return nodes_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }
  const std::optional<BoolOracle>& oracle() const noexcept { return oracle_; }
  const std::optional<OracleSpec>& oracle_spec() const noexcept { return oracle_spec_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  std::optional<std::size_t> node_index(const std::string& name) const;

 private:
  std::vector<std::string> nodes_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<Gate> gates_;
  std::optional<BoolOracle> oracle_;
  std::optional<OracleSpec> oracle_spec_;
};

enum class ViolationKind {
  UnknownNode,
  RepeatedMember,
  WrongShape,
  MultipleProducers,
  NoProducer,
  MissingOracle,
  OracleArity,
  OracleTooWide,
};

struct StructuralViolation {
  ViolationKind kind;
  std::string node;  // offending node when there is one
  std::optional<std::size_t> gate;
  std::string message;
};

/// Empty iff every node is the output of exactly one gate, gate members exist
/// and are distinct, and every ORACLE gate matches the oracle arity N <= |V|.
std::vector<StructuralViolation> validate_instance(const Circuit& circuit);

class InvalidInstance : public std::invalid_argument {
 public:
  explicit InvalidInstance(std::vector<StructuralViolation> violations);
  const std::vector<StructuralViolation>& violations() const noexcept { return violations_; }

 private:
  std::vector<StructuralViolation> violations_;
};

/// Gates with node references resolved to indices.
struct ResolvedGate {
  GateType type;
  std::vector<std::size_t> inputs;
  std::vector<std::size_t> outputs;
};

struct CircuitTopology {
  std::vector<ResolvedGate> gates;
  /// producer[v] = index of the unique gate with output v.
  std::vector<std::size_t> producer;
  /// consumers[q] = gates that read q.
  std::vector<std::vector<std::size_t>> consumers;
};

/// Throws InvalidInstance when validate_instance reports anything.
CircuitTopology compile(const Circuit& circuit);

/// Total map V -> {0, 1, bottom}, aligned with Circuit::nodes().
struct Assignment {
  std::vector<Trit> values;
  bool operator==(const Assignment&) const = default;
};

std::string to_string(const Assignment& b);

struct GateViolation {
  std::size_t gate;
  std::string reason;
};

/// Lists every gate whose rule b violates. ORACLE gates with a bottom input
/// are vacuous and cost no query; the rest cost exactly one.
std::vector<GateViolation> check_assignment(const Circuit& circuit, const Assignment& b);
std::vector<GateViolation> check_assignment(const Circuit& circuit, const CircuitTopology& topo,
                                            std::span<const Trit> values);

struct ConstantNodes {
  std::string zero_node;
  std::string one_node;
};

/// Appends the 12-node constant gadget under `prefix` (nodes prefix+"v1" ...
/// prefix+"v12"): every satisfying assignment has v9 = 0 and v12 = 1.
ConstantNodes add_constant_gadget(Circuit& circuit, const std::string& prefix = "");

struct ConstantGadget {
  Circuit circuit;
  ConstantNodes constants;
};

ConstantGadget build_constant_gadgets();

/// Unary block decode: min(max(popcount, 1), M).
int decode_unary(std::span<const std::uint8_t> block, int M);

/// Oracle L of arity N = M*d + d over input (z, t): when t is one-hot at i,
/// decode z blockwise in unary and return [lambda_i(z) = +1]; otherwise 0
/// without touching lambda.
BoolOracle build_oracle_from_labeling(const SpernerInstance& lambda, int M, int d, LedgerPtr ledger);

}  // namespace gdalab
