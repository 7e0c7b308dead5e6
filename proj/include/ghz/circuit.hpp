// Copyright 2026 The ghz-synth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Circuit intermediate representation: H, X, CX, Z-basis measurement into a
// classical bit, reset, and classically conditioned multi-target X.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "ghz/errors.hpp"

namespace ghz {

using Qubit = std::uint32_t;
using Cbit = std::uint32_t;

namespace op {

struct H {
  Qubit q;
  friend bool operator==(const H&, const H&) = default;
};

struct X {
  Qubit q;
  friend bool operator==(const X&, const X&) = default;
};

struct CX {
  Qubit control;
  Qubit target;
  friend bool operator==(const CX&, const CX&) = default;
};

struct MeasureZ {
  Qubit q;
  Cbit cbit;
  friend bool operator==(const MeasureZ&, const MeasureZ&) = default;
};

struct Reset {
  Qubit q;
  friend bool operator==(const Reset&, const Reset&) = default;
};

/// X on every target iff `cbit` reads 1.
struct CondX {
  std::vector<Qubit> targets;
  Cbit cbit;
  friend bool operator==(const CondX&, const CondX&) = default;
};

}  // namespace op

using Operation = std::variant<op::H, op::X, op::CX, op::MeasureZ, op::Reset, op::CondX>;

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

/// Qubits an operation acts on, in operand order.
inline std::vector<Qubit> touched_qubits(const Operation& operation) {
  return std::visit(Overloaded{
                        [](const op::H& o) { return std::vector<Qubit>{o.q}; },
                        [](const op::X& o) { return std::vector<Qubit>{o.q}; },
                        [](const op::CX& o) { return std::vector<Qubit>{o.control, o.target}; },
                        [](const op::MeasureZ& o) { return std::vector<Qubit>{o.q}; },
                        [](const op::Reset& o) { return std::vector<Qubit>{o.q}; },
                        [](const op::CondX& o) { return o.targets; },
                    },
                    operation);
}

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(std::size_t qubit_count, std::size_t cbit_count = 0)
      : qubit_count_(qubit_count), cbit_count_(cbit_count) {}

  std::size_t qubit_count() const { return qubit_count_; }
  std::size_t cbit_count() const { return cbit_count_; }
  const std::vector<Operation>& ops() const { return ops_; }

  Circuit& h(Qubit q) { return append(op::H{q}); }
  Circuit& x(Qubit q) { return append(op::X{q}); }
  Circuit& cx(Qubit control, Qubit target) { return append(op::CX{control, target}); }
  Circuit& reset(Qubit q) { return append(op::Reset{q}); }
  Circuit& cond_x(std::vector<Qubit> targets, Cbit cbit) {
    return append(op::CondX{std::move(targets), cbit});
  }

  /// Measures q into a freshly allocated classical bit and returns its index.
  Cbit measure(Qubit q) {
    const auto cbit = static_cast<Cbit>(cbit_count_++);
    append(op::MeasureZ{q, cbit});
    return cbit;
  }

  /// Appends without validation; call validate() before consuming.
  Circuit& append(Operation operation) {
    ops_.push_back(std::move(operation));
    return *this;
  }

  /// Throws MalformedCircuit unless every structural invariant holds:
  /// indices in range, CX control != target, CondX targets non-empty and
  /// distinct, each CondX reads a bit written by exactly one earlier
  /// MeasureZ, no bit written twice, and a measured qubit is untouched until
  /// it is reset.
  void validate() const {
    std::vector<char> written(cbit_count_, 0);
    std::vector<char> measured(qubit_count_, 0);
    auto fail = [](std::size_t index, const std::string& what) {
      throw MalformedCircuit("op " + std::to_string(index) + ": " + what);
    };
    for (std::size_t i = 0; i < ops_.size(); ++i) {
      const Operation& operation = ops_[i];
      for (Qubit q : touched_qubits(operation)) {
        if (q >= qubit_count_) fail(i, "qubit index " + std::to_string(q) + " out of range");
      }
      std::visit(Overloaded{
                     [&](const op::H& o) {
                       if (measured[o.q]) fail(i, "gate on measured qubit before reset");
                     },
                     [&](const op::X& o) {
                       if (measured[o.q]) fail(i, "gate on measured qubit before reset");
                     },
                     [&](const op::CX& o) {
                       if (o.control == o.target) fail(i, "CX control equals target");
                       if (measured[o.control] || measured[o.target]) {
                         fail(i, "gate on measured qubit before reset");
                       }
                     },
                     [&](const op::MeasureZ& o) {
                       if (o.cbit >= cbit_count_) fail(i, "classical bit out of range");
                       if (written[o.cbit]) fail(i, "classical bit written twice");
                       if (measured[o.q]) fail(i, "qubit measured twice without reset");
                       written[o.cbit] = 1;
                       measured[o.q] = 1;
                     },
                     [&](const op::Reset& o) { measured[o.q] = 0; },
                     [&](const op::CondX& o) {
                       if (o.targets.empty()) fail(i, "conditional X without targets");
                       if (o.cbit >= cbit_count_) fail(i, "classical bit out of range");
                       if (!written[o.cbit]) fail(i, "conditional X reads an unwritten bit");
                       std::vector<Qubit> sorted = o.targets;
                       std::sort(sorted.begin(), sorted.end());
                       if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
                         fail(i, "duplicate conditional X target");
                       }
                       for (Qubit q : o.targets) {
                         if (measured[q]) fail(i, "gate on measured qubit before reset");
                       }
                     },
                 },
                 operation);
    }
  }

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  std::size_t qubit_count_ = 0;
  std::size_t cbit_count_ = 0;
  std::vector<Operation> ops_;
};

/// ASAP layer of every operation (1-based). Each op sits one layer after the
/// latest op on any qubit it touches; a CondX also sits strictly after the
/// MeasureZ that wrote its bit.
inline std::vector<std::size_t> asap_layers(const Circuit& c) {
  c.validate();
  std::vector<std::size_t> qubit_layer(c.qubit_count(), 0);
  std::vector<std::size_t> cbit_layer(c.cbit_count(), 0);
  std::vector<std::size_t> layers;
  layers.reserve(c.ops().size());
  for (const Operation& operation : c.ops()) {
    const auto qubits = touched_qubits(operation);
    std::size_t layer = 0;
    for (Qubit q : qubits) layer = std::max(layer, qubit_layer[q]);
    if (const auto* cond = std::get_if<op::CondX>(&operation)) {
      layer = std::max(layer, cbit_layer[cond->cbit]);
    }
    ++layer;
    for (Qubit q : qubits) qubit_layer[q] = layer;
    if (const auto* m = std::get_if<op::MeasureZ>(&operation)) cbit_layer[m->cbit] = layer;
    layers.push_back(layer);
  }
  return layers;
}

inline std::size_t depth(const Circuit& c) {
  const auto layers = asap_layers(c);
  return layers.empty() ? 0 : *std::max_element(layers.begin(), layers.end());
}

inline std::size_t count_2q(const Circuit& c) {
  return static_cast<std::size_t>(std::count_if(c.ops().begin(), c.ops().end(), [](const Operation& o) {
    return std::holds_alternative<op::CX>(o);
  }));
}

inline std::size_t count_measurements(const Circuit& c) {
  return static_cast<std::size_t>(std::count_if(c.ops().begin(), c.ops().end(), [](const Operation& o) {
    return std::holds_alternative<op::MeasureZ>(o);
  }));
}

inline std::size_t count_resets(const Circuit& c) {
  return static_cast<std::size_t>(std::count_if(c.ops().begin(), c.ops().end(), [](const Operation& o) {
    return std::holds_alternative<op::Reset>(o);
  }));
}

/// OpenQASM 3 text. Output depends only on the circuit.
inline std::string export_qasm(const Circuit& c) {
  c.validate();
  std::ostringstream out;
  out << "OPENQASM 3.0;\n";
  out << "include \"stdgates.inc\";\n";
  out << "qubit[" << c.qubit_count() << "] q;\n";
  if (c.cbit_count() > 0) out << "bit[" << c.cbit_count() << "] c;\n";
  for (const Operation& operation : c.ops()) {
    std::visit(Overloaded{
                   [&](const op::H& o) { out << "h q[" << o.q << "];\n"; },
                   [&](const op::X& o) { out << "x q[" << o.q << "];\n"; },
                   [&](const op::CX& o) {
                     out << "cx q[" << o.control << "], q[" << o.target << "];\n";
                   },
                   [&](const op::MeasureZ& o) {
                     out << "c[" << o.cbit << "] = measure q[" << o.q << "];\n";
                   },
                   [&](const op::Reset& o) { out << "reset q[" << o.q << "];\n"; },
                   [&](const op::CondX& o) {
                     out << "if (c[" << o.cbit << "] == 1) {\n";
                     for (Qubit q : o.targets) out << "  x q[" << q << "];\n";
                     out << "}\n";
                   },
               },
               operation);
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// JSON: {"n": int, "cbits": int, "ops": [{"op": "h", "q": 0}, ...]}

inline nlohmann::json to_json(const Operation& operation) {
  return std::visit(
      Overloaded{
          [](const op::H& o) { return nlohmann::json{{"op", "h"}, {"q", o.q}}; },
          [](const op::X& o) { return nlohmann::json{{"op", "x"}, {"q", o.q}}; },
          [](const op::CX& o) {
            return nlohmann::json{{"op", "cx"}, {"control", o.control}, {"target", o.target}};
          },
          [](const op::MeasureZ& o) {
            return nlohmann::json{{"op", "measure"}, {"q", o.q}, {"cbit", o.cbit}};
          },
          [](const op::Reset& o) { return nlohmann::json{{"op", "reset"}, {"q", o.q}}; },
          [](const op::CondX& o) {
            return nlohmann::json{{"op", "cond_x"}, {"targets", o.targets}, {"cbit", o.cbit}};
          },
      },
      operation);
}

inline nlohmann::json to_json(const Circuit& c) {
  nlohmann::json ops = nlohmann::json::array();
  for (const Operation& o : c.ops()) ops.push_back(to_json(o));
  return {{"n", c.qubit_count()}, {"cbits", c.cbit_count()}, {"ops", std::move(ops)}};
}

inline Circuit circuit_from_json(const nlohmann::json& j) {
  try {
    Circuit c(j.at("n").get<std::size_t>(), j.at("cbits").get<std::size_t>());
    for (const auto& o : j.at("ops")) {
      const auto tag = o.at("op").get<std::string>();
      if (tag == "h") {
        c.append(op::H{o.at("q").get<Qubit>()});
      } else if (tag == "x") {
        c.append(op::X{o.at("q").get<Qubit>()});
      } else if (tag == "cx") {
        c.append(op::CX{o.at("control").get<Qubit>(), o.at("target").get<Qubit>()});
      } else if (tag == "measure") {
        c.append(op::MeasureZ{o.at("q").get<Qubit>(), o.at("cbit").get<Cbit>()});
      } else if (tag == "reset") {
        c.append(op::Reset{o.at("q").get<Qubit>()});
      } else if (tag == "cond_x") {
        c.append(op::CondX{o.at("targets").get<std::vector<Qubit>>(), o.at("cbit").get<Cbit>()});
      } else {
        throw MalformedCircuit("unknown operation tag '" + tag + "'");
      }
    }
    c.validate();
    return c;
  } catch (const nlohmann::json::exception& ex) {
    throw MalformedCircuit(std::string("invalid circuit JSON: ") + ex.what());
  }
}

}  // namespace ghz
