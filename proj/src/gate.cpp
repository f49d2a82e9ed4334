#include "qpgate/gate.hpp"

#include <cmath>

namespace qpg {

int EncodingMap::level_for(int qutrit, int bit) const {
  if (qutrit < 1 || qutrit > n_qutrits) throw DimensionError("unknown site");
  if (bit != 0 && bit != 1) throw ConfigError("logical bit must be 0 or 1");
  if (bit == 0) return kG;
  return qutrit == 1 ? kF : kE;
}

std::size_t EncodingMap::qutrit_pattern_index(const std::string& bits) const {
  if (static_cast<int>(bits.size()) != n_qutrits) {
    throw ConfigError("bitstring length does not match qutrit count");
  }
  std::vector<int> levels(bits.size());
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (bits[j] != '0' && bits[j] != '1') {
      throw ConfigError("bitstring may contain only 0 and 1");
    }
    levels[j] = level_for(static_cast<int>(j) + 1, bits[j] - '0');
  }
  return qutrit_basis_index(levels);
}

int gate_sign(const std::string& bits) {
  if (bits.empty() || bits.front() == '0') return 1;
  int weight = 0;
  for (std::size_t j = 1; j < bits.size(); ++j) weight += bits[j] - '0';
  return (weight % 2 == 0) ? 1 : -1;
}

ComplexMatrix ideal_gate_matrix(int n) {
  if (n < 2) throw ConfigError("need at least two qubits");
  const std::size_t dim = std::size_t{1} << n;
  ComplexMatrix u(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    std::string bits(static_cast<std::size_t>(n), '0');
    for (int b = 0; b < n; ++b) {
      if (i & (std::size_t{1} << (n - 1 - b))) bits[static_cast<std::size_t>(b)] = '1';
    }
    u(i, i) = static_cast<double>(gate_sign(bits));
  }
  return u;
}

QuantumState encode(const std::string& bits, const HilbertSpace& space) {
  EncodingMap map{space.n_qutrits};
  const std::size_t pattern = map.qutrit_pattern_index(bits);
  return QuantumState::basis_state(space, pattern * space.cavity_dim());
}

ComplexMatrix closed_form_unitary(const SystemParams& params, int n, double t) {
  if (n < 2) throw ConfigError("need at least two qutrits");
  if (t < 0.0) throw ConfigError("evolution time must be non-negative");
  SystemParams p = params;
  p.n_qutrits = n;
  const DerivedParams d = derive(p);

  std::size_t dim = 1;
  for (int i = 0; i < n; ++i) dim *= 3;
  ComplexMatrix u(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (qutrit_level_of(i, 1, n) != kF) {
      u(i, i) = 1.0;
      continue;
    }
    // Matches exp(-i H_eff t) with H_eff supported on the encoded subspace;
    // outside it (a target in |f>) the diagonal reduction is not valid and
    // the phase is left trivial.
    bool encoded = true;
    int excited_targets = 0;
    for (int j = 2; j <= n; ++j) {
      const int level = qutrit_level_of(i, j, n);
      if (level == kF) encoded = false;
      if (level == kE) ++excited_targets;
    }
    if (!encoded) {
      u(i, i) = 1.0;
      continue;
    }
    u(i, i) = std::polar(1.0, -t * (d.stark_f1 + d.cross_shift * excited_targets));
  }
  return u;
}

QuantumState ideal_output_state(const QuantumState& input) {
  const HilbertSpace& space = input.space;
  const int n = space.n_qutrits;
  EncodingMap map{n};

  // Sign per encoded qutrit pattern; -1 marks non-encoded patterns.
  std::size_t qdim = 1;
  for (int i = 0; i < n; ++i) qdim *= 3;
  std::vector<int> sign(qdim, 0);
  const std::size_t n_bits = std::size_t{1} << n;
  for (std::size_t b = 0; b < n_bits; ++b) {
    std::string bits(static_cast<std::size_t>(n), '0');
    for (int j = 0; j < n; ++j) {
      if (b & (std::size_t{1} << (n - 1 - j))) bits[static_cast<std::size_t>(j)] = '1';
    }
    sign[map.qutrit_pattern_index(bits)] = gate_sign(bits);
  }

  QuantumState out{space, std::vector<cplx>(space.dim(), cplx{0.0, 0.0})};
  double stray_weight = 0.0;
  for (std::size_t i = 0; i < space.dim(); ++i) {
    const cplx amp = input.amplitudes[i];
    if (amp == cplx{0.0, 0.0}) continue;
    const int s = sign[i / space.cavity_dim()];
    if (s == 0) {
      stray_weight += std::norm(amp);
    } else {
      out.amplitudes[i] = static_cast<double>(s) * amp;
    }
  }
  if (stray_weight > 1e-9) throw ConfigError("input not encodable");
  return out;
}

QuantumState product_superposition_state(const HilbertSpace& space) {
  const int n = space.n_qutrits;
  QuantumState psi{space, std::vector<cplx>(space.dim(), cplx{0.0, 0.0})};
  const double amp = std::pow(0.5, 0.5 * n);
  EncodingMap map{n};
  const std::size_t n_bits = std::size_t{1} << n;
  for (std::size_t b = 0; b < n_bits; ++b) {
    std::string bits(static_cast<std::size_t>(n), '0');
    for (int j = 0; j < n; ++j) {
      if (b & (std::size_t{1} << (n - 1 - j))) bits[static_cast<std::size_t>(j)] = '1';
    }
    psi.amplitudes[map.qutrit_pattern_index(bits) * space.cavity_dim()] = amp;
  }
  return psi;
}

std::string truth_table(int n) {
  if (n < 2) throw ConfigError("need at least two qubits");
  std::string out;
  const std::size_t n_bits = std::size_t{1} << n;
  for (std::size_t b = 0; b < n_bits; ++b) {
    std::string bits(static_cast<std::size_t>(n), '0');
    for (int j = 0; j < n; ++j) {
      if (b & (std::size_t{1} << (n - 1 - j))) bits[static_cast<std::size_t>(j)] = '1';
    }
    out += bits;
    out += gate_sign(bits) > 0 ? " +1\n" : " -1\n";
  }
  return out;
}

}  // namespace qpg
