// Copyright 2026 The qsbo Authors
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

#include "qsbo/statevector.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace qsbo {

Gate Gate::adjoint() const {
    Gate g = *this;
    if (kind == GateKind::RY || kind == GateKind::Phase) {
        g.angle = -angle;
    }
    return g;
}

std::string Gate::name() const {
    std::string base;
    switch (kind) {
    case GateKind::X: base = "x"; break;
    case GateKind::H: base = "h"; break;
    case GateKind::Z: base = "z"; break;
    case GateKind::RY: base = "ry"; break;
    case GateKind::Phase: base = "p"; break;
    case GateKind::PhaseFlip: base = "flip"; break;
    }
    return std::string(controls.size(), 'c') + base;
}

namespace gates {

namespace {
Gate make(GateKind kind, Qubit target, double angle = 0.0, std::vector<Control> controls = {}) {
    Gate g;
    g.kind = kind;
    g.target = target;
    g.angle = angle;
    g.controls = std::move(controls);
    return g;
}
}  // namespace

Gate x(Qubit target) { return make(GateKind::X, target); }
Gate h(Qubit target) { return make(GateKind::H, target); }
Gate z(Qubit target) { return make(GateKind::Z, target); }
Gate ry(Qubit target, double angle) { return make(GateKind::RY, target, angle); }
Gate phase(Qubit target, double angle) { return make(GateKind::Phase, target, angle); }
Gate cx(Qubit control, Qubit target) { return make(GateKind::X, target, 0.0, {{control, true}}); }
Gate cry(Qubit control, Qubit target, double angle) {
    return make(GateKind::RY, target, angle, {{control, true}});
}
Gate cphase(Qubit control, Qubit target, double angle) {
    return make(GateKind::Phase, target, angle, {{control, true}});
}
Gate mcx(std::vector<Control> controls, Qubit target) {
    return make(GateKind::X, target, 0.0, std::move(controls));
}
Gate mcz(std::vector<Control> controls, Qubit target) {
    return make(GateKind::Z, target, 0.0, std::move(controls));
}
Gate mcry(std::vector<Control> controls, Qubit target, double angle) {
    return make(GateKind::RY, target, angle, std::move(controls));
}
Gate phase_flip(BasisPredicate predicate) {
    Gate g = make(GateKind::PhaseFlip, 0);
    g.predicate = std::make_shared<const BasisPredicate>(std::move(predicate));
    return g;
}
Gate with_control(Gate g, Control extra) {
    g.controls.insert(g.controls.begin(), extra);
    return g;
}

}  // namespace gates

Circuit::Circuit(unsigned num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits == 0 || num_qubits > 30) {
        throw std::invalid_argument("Circuit: qubit count must be in [1, 30]");
    }
}

Circuit &Circuit::add(Gate gate) {
    if (gate.kind == GateKind::PhaseFlip) {
        if (!gate.predicate) {
            throw std::invalid_argument("Circuit: phase flip without predicate");
        }
    } else if (gate.target >= num_qubits_) {
        throw std::out_of_range("Circuit: target qubit " + std::to_string(gate.target) +
                                " out of range for " + std::to_string(num_qubits_) + " qubits");
    }
    for (std::size_t i = 0; i < gate.controls.size(); ++i) {
        const Qubit q = gate.controls[i].qubit;
        if (q >= num_qubits_) {
            throw std::out_of_range("Circuit: control qubit " + std::to_string(q) + " out of range");
        }
        if (gate.kind != GateKind::PhaseFlip && q == gate.target) {
            throw std::invalid_argument("Circuit: control and target overlap on qubit " +
                                        std::to_string(q));
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (gate.controls[j].qubit == q) {
                throw std::invalid_argument("Circuit: duplicate control qubit " + std::to_string(q));
            }
        }
    }
    gates_.push_back(std::move(gate));
    return *this;
}

Circuit &Circuit::append(const Circuit &other) {
    if (other.num_qubits_ != num_qubits_) {
        throw std::invalid_argument("Circuit::append: width mismatch");
    }
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
    return *this;
}

Circuit &Circuit::append_mapped(const Circuit &other, std::span<const Qubit> mapping) {
    if (mapping.size() != other.num_qubits_) {
        throw std::invalid_argument("Circuit::append_mapped: mapping size mismatch");
    }
    std::vector<Qubit> map(mapping.begin(), mapping.end());
    for (std::size_t i = 0; i < map.size(); ++i) {
        if (map[i] >= num_qubits_) {
            throw std::out_of_range("Circuit::append_mapped: mapped qubit out of range");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (map[i] == map[j]) {
                throw std::invalid_argument("Circuit::append_mapped: mapping is not injective");
            }
        }
    }
    bool prefix = true;
    for (std::size_t i = 0; i < map.size(); ++i) {
        prefix = prefix && map[i] == i;
    }
    const BasisIndex prefix_mask = (BasisIndex{1} << map.size()) - 1;
    for (Gate g : other.gates_) {
        g.target = map[g.target];
        for (auto &c : g.controls) {
            c.qubit = map[c.qubit];
        }
        if (g.kind == GateKind::PhaseFlip) {
            auto inner = g.predicate;
            if (prefix) {
                g.predicate = std::make_shared<const BasisPredicate>(
                    [inner, prefix_mask](BasisIndex idx) { return (*inner)(idx & prefix_mask); });
            } else {
                g.predicate = std::make_shared<const BasisPredicate>([inner, map](BasisIndex idx) {
                    BasisIndex local = 0;
                    for (std::size_t i = 0; i < map.size(); ++i) {
                        local |= ((idx >> map[i]) & 1U) << i;
                    }
                    return (*inner)(local);
                });
            }
        }
        add(std::move(g));
    }
    return *this;
}

Circuit Circuit::adjoint() const {
    Circuit out(num_qubits_);
    out.gates_.reserve(gates_.size());
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
        out.gates_.push_back(it->adjoint());
    }
    return out;
}

Circuit Circuit::controlled(Control control) const {
    Circuit out(num_qubits_);
    for (const auto &g : gates_) {
        out.add(gates::with_control(g, control));
    }
    return out;
}

}  // namespace qsbo
