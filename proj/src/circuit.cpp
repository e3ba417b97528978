#include "gdalab/circuit.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace gdalab {

std::string_view to_string(GateType type) noexcept {
  switch (type) {
    case GateType::Nor: return "NOR";
    case GateType::Purify: return "PURIFY";
    case GateType::Oracle: return "ORACLE";
  }
  return "?";
}

char to_char(Trit t) noexcept {
  switch (t) {
    case Trit::Zero: return '0';
    case Trit::One: return '1';
    case Trit::Bottom: return '_';
  }
  return '?';
}

void Circuit::add_node(const std::string& name) {
  if (name.empty()) throw std::invalid_argument("node names must be nonempty");
  if (!index_.emplace(name, nodes_.size()).second) {
    throw std::invalid_argument("duplicate node '" + name + "'");
  }
  nodes_.push_back(name);
}

void Circuit::add_nor(const std::string& u, const std::string& v, const std::string& w) {
  gates_.push_back({GateType::Nor, {u, v}, {w}});
}

void Circuit::add_purify(const std::string& u, const std::string& v, const std::string& w) {
  gates_.push_back({GateType::Purify, {u}, {v, w}});
}

void Circuit::add_oracle_gate(std::vector<std::string> inputs, const std::string& output) {
  gates_.push_back({GateType::Oracle, std::move(inputs), {output}});
}

void Circuit::add_gate(Gate gate) { gates_.push_back(std::move(gate)); }

void Circuit::set_oracle(BoolOracle oracle, std::optional<OracleSpec> spec) {
  oracle_ = std::move(oracle);
  oracle_spec_ = std::move(spec);
}

std::optional<std::size_t> Circuit::node_index(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<StructuralViolation> validate_instance(const Circuit& circuit) {
  std::vector<StructuralViolation> out;
  std::vector<int> produced(circuit.size(), 0);
  bool has_oracle_gate = false;

  for (std::size_t g = 0; g < circuit.gates().size(); ++g) {
    const Gate& gate = circuit.gates()[g];
    const std::string label = std::string(to_string(gate.type)) + " gate #" + std::to_string(g);

    bool shape_ok = true;
    switch (gate.type) {
      case GateType::Nor:
        shape_ok = gate.inputs.size() == 2 && gate.outputs.size() == 1;
        break;
      case GateType::Purify:
        shape_ok = gate.inputs.size() == 1 && gate.outputs.size() == 2;
        break;
      case GateType::Oracle:
        shape_ok = gate.outputs.size() == 1;
        has_oracle_gate = true;
        break;
    }
    if (!shape_ok) {
      out.push_back({ViolationKind::WrongShape, "", g, label + " has the wrong number of inputs/outputs"});
    }

    std::set<std::string> members;
    auto visit = [&](const std::string& name) {
      if (!members.insert(name).second) {
        out.push_back({ViolationKind::RepeatedMember, name, g, label + " uses node '" + name + "' twice"});
      }
      if (!circuit.node_index(name)) {
        out.push_back({ViolationKind::UnknownNode, name, g, label + " references unknown node '" + name + "'"});
      }
    };
    for (const auto& n : gate.inputs) visit(n);
    for (const auto& n : gate.outputs) visit(n);
    for (const auto& n : gate.outputs) {
      if (auto idx = circuit.node_index(n)) ++produced[*idx];
    }

    if (gate.type == GateType::Oracle && circuit.oracle() &&
        gate.inputs.size() != static_cast<std::size_t>(circuit.oracle()->arity())) {
      out.push_back({ViolationKind::OracleArity, "", g,
                     label + " has " + std::to_string(gate.inputs.size()) + " inputs but the oracle has arity " +
                         std::to_string(circuit.oracle()->arity())});
    }
  }

  for (std::size_t v = 0; v < circuit.size(); ++v) {
    const std::string& name = circuit.nodes()[v];
    if (produced[v] == 0) {
      out.push_back({ViolationKind::NoProducer, name, std::nullopt, "node '" + name + "' is not the output of any gate"});
    } else if (produced[v] > 1) {
      out.push_back({ViolationKind::MultipleProducers, name, std::nullopt,
                     "node '" + name + "' is the output of " + std::to_string(produced[v]) + " gates"});
    }
  }

  if (has_oracle_gate && !circuit.oracle()) {
    out.push_back({ViolationKind::MissingOracle, "", std::nullopt, "ORACLE gates present but no oracle attached"});
  }
  if (circuit.oracle() && static_cast<std::size_t>(circuit.oracle()->arity()) > circuit.size()) {
    out.push_back({ViolationKind::OracleTooWide, "", std::nullopt, "oracle arity exceeds the number of nodes"});
  }
  return out;
}

namespace {

std::string summarize(const std::vector<StructuralViolation>& violations) {
  std::string msg = "invalid circuit instance:";
  for (const auto& v : violations) msg += "\n  " + v.message;
  return msg;
}

}  // namespace

InvalidInstance::InvalidInstance(std::vector<StructuralViolation> violations)
    : std::invalid_argument(summarize(violations)), violations_(std::move(violations)) {}

CircuitTopology compile(const Circuit& circuit) {
  auto violations = validate_instance(circuit);
  if (!violations.empty()) throw InvalidInstance(std::move(violations));
  CircuitTopology topo;
  topo.producer.assign(circuit.size(), 0);
  topo.consumers.assign(circuit.size(), {});
  for (std::size_t g = 0; g < circuit.gates().size(); ++g) {
    const Gate& gate = circuit.gates()[g];
    ResolvedGate rg{gate.type, {}, {}};
    for (const auto& n : gate.inputs) {
      const std::size_t idx = *circuit.node_index(n);
      rg.inputs.push_back(idx);
      topo.consumers[idx].push_back(g);
    }
    for (const auto& n : gate.outputs) {
      const std::size_t idx = *circuit.node_index(n);
      rg.outputs.push_back(idx);
      topo.producer[idx] = g;
    }
    topo.gates.push_back(std::move(rg));
  }
  return topo;
}

std::string to_string(const Assignment& b) {
  std::string s;
  s.reserve(b.values.size());
  for (Trit t : b.values) s.push_back(to_char(t));
  return s;
}

std::vector<GateViolation> check_assignment(const Circuit& circuit, const CircuitTopology& topo,
                                            std::span<const Trit> values) {
  if (values.size() != circuit.size()) throw std::invalid_argument("assignment is not total over V");
  std::vector<GateViolation> out;
  Bits bits;
  for (std::size_t g = 0; g < topo.gates.size(); ++g) {
    const ResolvedGate& gate = topo.gates[g];
    switch (gate.type) {
      case GateType::Nor: {
        const Trit u = values[gate.inputs[0]], v = values[gate.inputs[1]], w = values[gate.outputs[0]];
        if (u == Trit::Zero && v == Trit::Zero && w != Trit::One) {
          out.push_back({g, "NOR inputs are 0,0 but output is not 1"});
        } else if ((u == Trit::One || v == Trit::One) && w != Trit::Zero) {
          out.push_back({g, "NOR has an input 1 but output is not 0"});
        }
        break;
      }
      case GateType::Purify: {
        const Trit u = values[gate.inputs[0]], v = values[gate.outputs[0]], w = values[gate.outputs[1]];
        if (!is_pure(v) && !is_pure(w)) {
          out.push_back({g, "PURIFY outputs are both bottom"});
        } else if (is_pure(u) && (v != u || w != u)) {
          out.push_back({g, "PURIFY input is pure but outputs do not copy it"});
        }
        break;
      }
      case GateType::Oracle: {
        bits.clear();
        bool pure = true;
        for (std::size_t idx : gate.inputs) {
          const Trit t = values[idx];
          if (!is_pure(t)) {
            pure = false;
            break;
          }
          bits.push_back(t == Trit::One ? 1 : 0);
        }
        if (!pure) break;
        const bool expected = circuit.oracle()->query(bits);
        if (values[gate.outputs[0]] != (expected ? Trit::One : Trit::Zero)) {
          out.push_back({g, std::string("ORACLE output must be ") + (expected ? "1" : "0")});
        }
        break;
      }
    }
  }
  return out;
}

std::vector<GateViolation> check_assignment(const Circuit& circuit, const Assignment& b) {
  const CircuitTopology topo = compile(circuit);
  return check_assignment(circuit, topo, b.values);
}

ConstantNodes add_constant_gadget(Circuit& circuit, const std::string& prefix) {
  auto v = [&](int i) { return prefix + "v" + std::to_string(i); };
  for (int i = 1; i <= 12; ++i) circuit.add_node(v(i));
  // v1 feeds a PURIFY whose outputs are NORed; the result is PURIFIED back into
  // (v5, v1), which rules out a pure v1 and so forces v5 pure.
  circuit.add_purify(v(1), v(2), v(3));
  circuit.add_nor(v(2), v(3), v(4));
  circuit.add_purify(v(4), v(5), v(1));
  circuit.add_purify(v(5), v(6), v(7));
  circuit.add_nor(v(6), v(7), v(8));
  circuit.add_nor(v(5), v(8), v(9));
  // Constant 1 from constant 0.
  circuit.add_purify(v(9), v(10), v(11));
  circuit.add_nor(v(10), v(11), v(12));
  return {v(9), v(12)};
}

ConstantGadget build_constant_gadgets() {
  ConstantGadget gadget;
  gadget.constants = add_constant_gadget(gadget.circuit);
  return gadget;
}

int decode_unary(std::span<const std::uint8_t> block, int M) {
  int ones = 0;
  for (auto b : block) ones += b ? 1 : 0;
  return std::min(std::max(ones, 1), M);
}

BoolOracle build_oracle_from_labeling(const SpernerInstance& lambda, int M, int d, LedgerPtr ledger) {
  if (M < 1 || d < 1) throw std::invalid_argument("labeling oracle needs M >= 1 and d >= 1");
  if (lambda.M() != M || lambda.d() != d) {
    throw std::invalid_argument("labeling dimensions do not match (M, d)");
  }
  const int arity = M * d + d;
  auto fn = [lambda, M, d](std::span<const std::uint8_t> bits) {
    const auto t = bits.subspan(static_cast<std::size_t>(M) * d);
    int hot = -1;
    for (int i = 0; i < d; ++i) {
      if (!t[i]) continue;
      if (hot >= 0) return false;
      hot = i;
    }
    if (hot < 0) return false;
    GridPoint p(d);
    for (int i = 0; i < d; ++i) p[i] = decode_unary(bits.subspan(static_cast<std::size_t>(i) * M, M), M);
    return lambda.label(p)[hot] == 1;
  };
  return BoolOracle(arity, std::move(fn), std::move(ledger));
}

}  // namespace gdalab
