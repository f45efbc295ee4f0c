#pragma once

#include <map>
#include <string>
#include <vector>

#include "reflectron/tensor_core.hpp"

namespace reflectron {

enum class GateKind { CSwap, Swap, Hadamard, Phase, McPhase };
const char* gate_kind_name(GateKind kind);

// CSwap: controls = {c}, targets = {t1, t2}. Swap: targets = {a, b}.
// Hadamard and Phase: targets = {q}; Phase applies e^{i angle} to |1>.
// McPhase: controls = qubits, applies e^{i angle} when all of them are |0>.
struct Gate {
  GateKind kind;
  std::vector<int> targets;
  std::vector<int> controls;
  double angle = 0.0;
  bool operator==(const Gate& o) const = default;
};

// Qubit 0 is the most significant bit of a basis index. Ancilla qubits are
// 0..L-1, the system qubit is L and program qubits are L+1..L+n.
struct GateList {
  int ancilla = 0;
  int system = 1;
  int program = 0;
  std::vector<Gate> gates;
  int total_qubits() const { return ancilla + system + program; }
  bool operator==(const GateList& o) const = default;
};

// Transpositions (as slot pairs) whose sequential application realizes the
// permutation slot t -> perm[t], using k - (#cycles) swaps.
std::vector<std::pair<int, int>> swap_decomposition(std::span<const int> perm);

// Requires n + 1 = 2^L. Prepares the uniform ancilla state, applies
// controlled powers of the cyclic shift, the phase e^{i theta |s><s|}, the
// inverse controlled shifts, and returns the ancilla to |0...0>.
GateList build_rotation_circuit(int n, double theta);

// Minimal controlled-SWAP count 2 (L (n+1) - n) without building gates.
long long rotation_cswap_count(int n);

void apply_circuit(const GateList& g, Vector& state);
// Dense unitary; needs total_qubits <= 20 and at most 2^24 matrix entries.
DenseOperator circuit_to_dense(const GateList& g, int total_qubits);
// Block <0...0|_A U |0...0>_A on the system and program qubits.
Matrix projected_circuit(const GateList& g);

std::map<std::string, long long> gate_counts(const GateList& g);

std::string export_circuit(const GateList& g);
GateList parse_circuit(const std::string& text);

}  // namespace reflectron
