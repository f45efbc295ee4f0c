#include "reflectron/circuits.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "reflectron/errors.hpp"

namespace reflectron {

const char* gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::CSwap:
      return "cswap";
    case GateKind::Swap:
      return "swap";
    case GateKind::Hadamard:
      return "hadamard";
    case GateKind::Phase:
      return "phase";
    default:
      return "mcphase";
  }
}

std::vector<std::pair<int, int>> swap_decomposition(std::span<const int> perm) {
  if (!is_permutation(perm)) throw DomainError("not a permutation");
  std::vector<bool> seen(perm.size(), false);
  std::vector<std::pair<int, int>> out;
  for (std::size_t start = 0; start < perm.size(); ++start) {
    if (seen[start]) continue;
    seen[start] = true;
    // Cycle t0 -> t1 -> ... : swapping t0 with each successor in turn
    // carries every content one step forward.
    for (int t = perm[start]; t != static_cast<int>(start); t = perm[t]) {
      seen[t] = true;
      out.emplace_back(static_cast<int>(start), t);
    }
  }
  return out;
}

namespace {

int log2_exact(int n) {
  if (n < 1 || !std::has_single_bit(static_cast<unsigned>(n + 1)))
    throw DomainError("n + 1 must be a power of two");
  return std::countr_zero(static_cast<unsigned>(n + 1));
}

void check_gate(const Gate& gate, int q) {
  auto ok = [q](int i) { return i >= 0 && i < q; };
  std::size_t nt = 0, nc = 0;
  switch (gate.kind) {
    case GateKind::CSwap:
      nt = 2;
      nc = 1;
      break;
    case GateKind::Swap:
      nt = 2;
      break;
    case GateKind::Hadamard:
    case GateKind::Phase:
      nt = 1;
      break;
    case GateKind::McPhase:
      if (gate.controls.empty() || !gate.targets.empty()) throw DomainError("malformed MCPHASE");
      for (int c : gate.controls)
        if (!ok(c)) throw DomainError("gate index outside the registers");
      return;
  }
  if (gate.targets.size() != nt || gate.controls.size() != nc) throw DomainError("malformed gate");
  for (int t : gate.targets)
    if (!ok(t)) throw DomainError("gate index outside the registers");
  for (int c : gate.controls)
    if (!ok(c)) throw DomainError("gate index outside the registers");
  if (nt == 2 && gate.targets[0] == gate.targets[1]) throw DomainError("swap targets coincide");
}

}  // namespace

GateList build_rotation_circuit(int n, double theta) {
  const int L = log2_exact(n);
  GateList g;
  g.ancilla = L;
  g.program = n;
  const int k = n + 1;
  const int wire0 = L;
  std::vector<std::vector<std::pair<int, int>>> blocks(L);
  for (int j = 0; j < L; ++j) {
    Permutation perm(k);
    for (int t = 0; t < k; ++t) perm[t] = (t + (1 << j)) % k;
    blocks[j] = swap_decomposition(perm);
  }
  auto h_all = [&] {
    for (int a = 0; a < L; ++a) g.gates.push_back({GateKind::Hadamard, {a}, {}, 0.0});
  };
  h_all();
  for (int j = 0; j < L; ++j)
    for (const auto& [a, b] : blocks[j])
      g.gates.push_back({GateKind::CSwap, {wire0 + a, wire0 + b}, {j}, 0.0});
  h_all();
  std::vector<int> all(L);
  for (int a = 0; a < L; ++a) all[a] = a;
  g.gates.push_back({GateKind::McPhase, {}, all, theta});
  h_all();
  for (int j = L - 1; j >= 0; --j)
    for (auto it = blocks[j].rbegin(); it != blocks[j].rend(); ++it)
      g.gates.push_back({GateKind::CSwap, {wire0 + it->first, wire0 + it->second}, {j}, 0.0});
  h_all();
  return g;
}

long long rotation_cswap_count(int n) {
  const long long L = log2_exact(n);
  return 2 * (L * (n + 1LL) - n);
}

void apply_circuit(const GateList& g, Vector& state) {
  const int q = g.total_qubits();
  if (q > 30) throw BudgetError("circuit has more than 30 qubits");
  const std::size_t dim = std::size_t{1} << q;
  if (static_cast<std::size_t>(state.size()) != dim) throw DomainError("state dimension mismatch");
  auto bit = [q](int qubit) { return std::size_t{1} << (q - 1 - qubit); };
  const double r = 1.0 / std::sqrt(2.0);
  for (const Gate& gate : g.gates) {
    check_gate(gate, q);
    switch (gate.kind) {
      case GateKind::CSwap:
      case GateKind::Swap: {
        const std::size_t ba = bit(gate.targets[0]), bb = bit(gate.targets[1]);
        const std::size_t bc = gate.kind == GateKind::CSwap ? bit(gate.controls[0]) : 0;
        for (std::size_t i = 0; i < dim; ++i)
          if ((i & bc) == bc && (i & ba) && !(i & bb))
            std::swap(state(static_cast<Eigen::Index>(i)), state(static_cast<Eigen::Index>(i ^ ba ^ bb)));
        break;
      }
      case GateKind::Hadamard: {
        const std::size_t b = bit(gate.targets[0]);
        for (std::size_t i = 0; i < dim; ++i)
          if (!(i & b)) {
            const cplx x = state(static_cast<Eigen::Index>(i)), y = state(static_cast<Eigen::Index>(i | b));
            state(static_cast<Eigen::Index>(i)) = r * (x + y);
            state(static_cast<Eigen::Index>(i | b)) = r * (x - y);
          }
        break;
      }
      case GateKind::Phase: {
        const std::size_t b = bit(gate.targets[0]);
        const cplx ph = std::polar(1.0, gate.angle);
        for (std::size_t i = 0; i < dim; ++i)
          if (i & b) state(static_cast<Eigen::Index>(i)) *= ph;
        break;
      }
      case GateKind::McPhase: {
        std::size_t mask = 0;
        for (int c : gate.controls) mask |= bit(c);
        const cplx ph = std::polar(1.0, gate.angle);
        for (std::size_t i = 0; i < dim; ++i)
          if ((i & mask) == 0) state(static_cast<Eigen::Index>(i)) *= ph;
        break;
      }
    }
  }
}

DenseOperator circuit_to_dense(const GateList& g, int total_qubits) {
  if (total_qubits != g.total_qubits()) throw DomainError("qubit count does not match the registers");
  if (total_qubits > 20) throw BudgetError("circuit_to_dense supports at most 20 qubits");
  const std::size_t dim = std::size_t{1} << total_qubits;
  require_budget(dim, "circuit_to_dense");
  if (dim * dim > (std::size_t{1} << 24)) throw BudgetError("dense circuit exceeds 2^24 entries");
  Matrix u(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t c = 0; c < dim; ++c) {
    Vector e = Vector::Zero(static_cast<Eigen::Index>(dim));
    e(static_cast<Eigen::Index>(c)) = 1.0;
    apply_circuit(g, e);
    u.col(static_cast<Eigen::Index>(c)) = e;
  }
  return DenseOperator(std::move(u), 2, total_qubits);
}

Matrix projected_circuit(const GateList& g) {
  const int rest = g.system + g.program;
  const std::size_t sub = std::size_t{1} << rest;
  if (g.total_qubits() > 24) throw BudgetError("projected circuit has too many qubits");
  require_budget(sub, "projected_circuit");
  Matrix out(static_cast<Eigen::Index>(sub), static_cast<Eigen::Index>(sub));
  const std::size_t dim = std::size_t{1} << g.total_qubits();
  for (std::size_t c = 0; c < sub; ++c) {
    Vector e = Vector::Zero(static_cast<Eigen::Index>(dim));
    e(static_cast<Eigen::Index>(c)) = 1.0;
    apply_circuit(g, e);
    out.col(static_cast<Eigen::Index>(c)) = e.head(static_cast<Eigen::Index>(sub));
  }
  return out;
}

std::map<std::string, long long> gate_counts(const GateList& g) {
  std::map<std::string, long long> out{{"cswap", 0}, {"swap", 0}, {"hadamard", 0}, {"phase", 0}, {"mcphase", 0}};
  for (const Gate& gate : g.gates) ++out[gate_kind_name(gate.kind)];
  out["single_qubit"] = out["hadamard"] + out["phase"];
  return out;
}

std::string export_circuit(const GateList& g) {
  std::ostringstream os;
  os << "# registers: ancilla=" << g.ancilla << " system=" << g.system << " program=" << g.program << '\n';
  char buf[64];
  for (const Gate& gate : g.gates) {
    switch (gate.kind) {
      case GateKind::CSwap:
        os << "CSWAP " << gate.controls[0] << ' ' << gate.targets[0] << ' ' << gate.targets[1];
        break;
      case GateKind::Swap:
        os << "SWAP " << gate.targets[0] << ' ' << gate.targets[1];
        break;
      case GateKind::Hadamard:
        os << "H " << gate.targets[0];
        break;
      case GateKind::Phase:
        std::snprintf(buf, sizeof buf, "%.17g", gate.angle);
        os << "PHASE " << buf << ' ' << gate.targets[0];
        break;
      case GateKind::McPhase:
        std::snprintf(buf, sizeof buf, "%.17g", gate.angle);
        os << "MCPHASE " << buf;
        for (int c : gate.controls) os << ' ' << c;
        break;
    }
    os << '\n';
  }
  return os.str();
}

GateList parse_circuit(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  GateList g;
  if (!std::getline(is, line) ||
      std::sscanf(line.c_str(), "# registers: ancilla=%d system=%d program=%d", &g.ancilla, &g.system,
                  &g.program) != 3)
    throw DomainError("missing register header");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string op;
    ls >> op;
    Gate gate{GateKind::Hadamard, {}, {}, 0.0};
    int a, b, c;
    if (op == "CSWAP" && (ls >> c >> a >> b)) {
      gate = {GateKind::CSwap, {a, b}, {c}, 0.0};
    } else if (op == "SWAP" && (ls >> a >> b)) {
      gate = {GateKind::Swap, {a, b}, {}, 0.0};
    } else if (op == "H" && (ls >> a)) {
      gate = {GateKind::Hadamard, {a}, {}, 0.0};
    } else if (op == "PHASE" && (ls >> gate.angle >> a)) {
      gate = {GateKind::Phase, {a}, {}, gate.angle};
    } else if (op == "MCPHASE" && (ls >> gate.angle)) {
      gate.kind = GateKind::McPhase;
      while (ls >> a) gate.controls.push_back(a);
    } else {
      throw DomainError("unparseable gate line: " + line);
    }
    check_gate(gate, g.total_qubits());
    g.gates.push_back(std::move(gate));
  }
  return g;
}

}  // namespace reflectron
