#pragma once

#include <string>

#include "qpgate/hilbert.hpp"
#include "qpgate/model.hpp"
#include "qpgate/params.hpp"

namespace qpg {

/// Asymmetric logical encoding: |0> -> |g> for every qutrit; |1> -> |f> for
/// qutrit 1 (the control) and |e> for qutrits 2..n (the targets).
struct EncodingMap {
  int n_qutrits = 0;

  /// Physical level storing the given logical bit on a 1-based qutrit.
  int level_for(int qutrit, int bit) const;
  /// 3^n product-basis index of an encoded bitstring (control bit first).
  std::size_t qutrit_pattern_index(const std::string& bits) const;
};

/// Diagonal +-1 gate over the 2^n logical basis, control bit most
/// significant: sign = +1 when the control is 0, else (-1)^(sum of target
/// bits).
ComplexMatrix ideal_gate_matrix(int n);
int gate_sign(const std::string& bits);

/// Encoded computational product ket with the cavity in vacuum.
QuantumState encode(const std::string& bits, const HilbertSpace& space);

/// Closed-form diagonal evolution operator on the 3^n qutrit space: a state
/// with qutrit 1 in |f> acquires exp(-i t (mu1^2/Delta_1 + lambda^2/delta *
/// #targets in |e>)), all other states are untouched.
ComplexMatrix closed_form_unitary(const SystemParams& params, int n, double t);

/// Applies the ideal gate signs through the encoding; the cavity factor is
/// untouched. Throws when more than 1e-9 of the weight lies outside the
/// encoded qutrit patterns.
QuantumState ideal_output_state(const QuantumState& input);

/// (|g>+|f>)/sqrt2 on the control, (|g>+|e>)/sqrt2 on each target, cavity
/// in vacuum.
QuantumState product_superposition_state(const HilbertSpace& space);

/// Plain-text truth table: one "<bits> <sign>" row per logical basis state,
/// lexicographic order.
std::string truth_table(int n);

}  // namespace qpg
