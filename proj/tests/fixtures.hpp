#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gdalab/circuit.hpp"

namespace fx {

using gdalab::Circuit;
using gdalab::LedgerPtr;

inline std::shared_ptr<Circuit> nodes(std::initializer_list<const char*> names) {
  auto c = std::make_shared<Circuit>();
  for (const char* n : names) c->add_node(n);
  return c;
}

// NOR(a,b->c), NOR(b,c->a), NOR(c,a->b)
inline std::shared_ptr<Circuit> nor_ring() {
  auto c = nodes({"a", "b", "c"});
  c->add_nor("a", "b", "c");
  c->add_nor("b", "c", "a");
  c->add_nor("c", "a", "b");
  return c;
}

// PURIFY(a->b,c), NOR(b,c->a)
inline std::shared_ptr<Circuit> purify_nor() {
  auto c = nodes({"a", "b", "c"});
  c->add_purify("a", "b", "c");
  c->add_nor("b", "c", "a");
  return c;
}

inline std::shared_ptr<Circuit> with_table(std::shared_ptr<Circuit> c, int arity, std::vector<std::uint8_t> table,
                                           const LedgerPtr& ledger) {
  c->set_oracle(gdalab::truth_table_oracle(arity, table, ledger), gdalab::TruthTableSpec{arity, table});
  return c;
}

// PURIFY(a->b,c), ORACLE(b,c->a) with the given 2-input table.
inline std::shared_ptr<Circuit> purify_oracle(const LedgerPtr& ledger, std::vector<std::uint8_t> table = {0, 1, 1, 0}) {
  auto c = nodes({"a", "b", "c"});
  c->add_purify("a", "b", "c");
  c->add_oracle_gate({"b", "c"}, "a");
  return with_table(c, 2, std::move(table), ledger);
}

// ORACLE(() -> a): a constant.
inline std::shared_ptr<Circuit> oracle_const(const LedgerPtr& ledger, bool value = true) {
  auto c = nodes({"a"});
  c->add_oracle_gate({}, "a");
  return with_table(c, 0, {static_cast<std::uint8_t>(value)}, ledger);
}

// ORACLE(a->b), ORACLE(b->a) with L = NOT.
inline std::shared_ptr<Circuit> oracle_not_ring(const LedgerPtr& ledger) {
  auto c = nodes({"a", "b"});
  c->add_oracle_gate({"a"}, "b");
  c->add_oracle_gate({"b"}, "a");
  return with_table(c, 1, {1, 0}, ledger);
}

// ORACLE(a->b), ORACLE(b->a) with L = identity.
inline std::shared_ptr<Circuit> oracle_copy_ring(const LedgerPtr& ledger) {
  auto c = nodes({"a", "b"});
  c->add_oracle_gate({"a"}, "b");
  c->add_oracle_gate({"b"}, "a");
  return with_table(c, 1, {0, 1}, ledger);
}

inline std::shared_ptr<Circuit> constant_gadget() {
  return std::make_shared<Circuit>(gdalab::build_constant_gadgets().circuit);
}

}  // namespace fx
