#include "qpgate/model.hpp"

#include <cmath>

namespace qpg {

ComplexMatrix TimeDependentHamiltonian::at(double t) const {
  ComplexMatrix h(dim, dim);
  for (const auto& term : terms) {
    const cplx phase = std::polar(1.0, term.omega * t);
    const auto& src = term.op.data();
    auto& dst = h.data();
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] += phase * src[i];
  }
  return h;
}

ComplexMatrix qutrit_sigma_plus() { return qutrit_transition(kF, kE); }
ComplexMatrix qutrit_sigma_minus() { return qutrit_transition(kE, kF); }

ComplexMatrix qutrit_projector(Level level) {
  ComplexMatrix p(3, 3);
  p(static_cast<std::size_t>(level), static_cast<std::size_t>(level)) = 1.0;
  return p;
}

ComplexMatrix qutrit_transition(Level to, Level from) {
  ComplexMatrix m(3, 3);
  m(static_cast<std::size_t>(to), static_cast<std::size_t>(from)) = 1.0;
  return m;
}

namespace {

/// kron chain over [qutrit 1, ..., qutrit n, cavity] with the given
/// per-qutrit operators (identity where empty) and cavity operator.
ComplexMatrix tensor_chain(const HilbertSpace& space,
                           const std::vector<const ComplexMatrix*>& qutrit_ops,
                           const ComplexMatrix* cavity_op) {
  ComplexMatrix out = ComplexMatrix::identity(1);
  for (int j = 0; j < space.n_qutrits; ++j) {
    const ComplexMatrix* op = qutrit_ops[static_cast<std::size_t>(j)];
    out = kron(out, op ? *op : ComplexMatrix::identity(3));
  }
  out = kron(out, cavity_op ? *cavity_op : ComplexMatrix::identity(space.cavity_dim()));
  return out;
}

ComplexMatrix two_site_cavity_op(const HilbertSpace& space, int qutrit,
                                 const ComplexMatrix& qop,
                                 const ComplexMatrix& cop) {
  std::vector<const ComplexMatrix*> slots(static_cast<std::size_t>(space.n_qutrits),
                                          nullptr);
  slots[static_cast<std::size_t>(qutrit - 1)] = &qop;
  return tensor_chain(space, slots, &cop);
}

ComplexMatrix two_qutrit_op(const HilbertSpace& space, int j, const ComplexMatrix& a,
                            int k, const ComplexMatrix& b) {
  std::vector<const ComplexMatrix*> slots(static_cast<std::size_t>(space.n_qutrits),
                                          nullptr);
  slots[static_cast<std::size_t>(j - 1)] = &a;
  slots[static_cast<std::size_t>(k - 1)] = &b;
  return tensor_chain(space, slots, nullptr);
}

void check_space(const SystemParams& params, const HilbertSpace& space) {
  params.validate();
  if (space.n_qutrits != params.n_qutrits || space.fock_cutoff != params.fock_cutoff) {
    throw DimensionError("space is inconsistent with the parameter record");
  }
  if (space.dim() > kMaxStateDim) throw DimensionError("dimension limit exceeded");
}

}  // namespace

TimeDependentHamiltonian make_full_hamiltonian(const SystemParams& params,
                                               const HilbertSpace& space) {
  check_space(params, space);
  const ComplexMatrix a = annihilation(space.fock_cutoff);
  const ComplexMatrix sp = qutrit_sigma_plus();
  const ComplexMatrix sm = qutrit_sigma_minus();
  const ComplexMatrix adag = adjoint(a);

  TimeDependentHamiltonian h;
  h.dim = space.dim();
  for (int k = 1; k <= params.n_qutrits; ++k) {
    const double g = (k == 1) ? params.mu1 : params.mu;
    const double detuning = (k == 1) ? params.delta1 : params.delta_cap;
    h.terms.push_back({detuning, cplx{g, 0.0} * two_site_cavity_op(space, k, sp, a)});
    h.terms.push_back(
        {-detuning, cplx{g, 0.0} * two_site_cavity_op(space, k, sm, adag)});
  }
  return h;
}

TimeDependentHamiltonian make_dispersive_hamiltonian(const SystemParams& params,
                                                     const HilbertSpace& space) {
  check_space(params, space);
  const DerivedParams d = derive(params);
  const ComplexMatrix a = annihilation(space.fock_cutoff);
  const ComplexMatrix num_op = adjoint(a) * a;      // a^+ a
  const ComplexMatrix anti_num = a * adjoint(a);    // a a^+ (truncated)
  const ComplexMatrix pe = qutrit_projector(kE);
  const ComplexMatrix pf = qutrit_projector(kF);
  const ComplexMatrix sp = qutrit_sigma_plus();
  const ComplexMatrix sm = qutrit_sigma_minus();

  const double chi = params.mu * params.mu / params.delta_cap;
  const double chi1 = params.mu1 * params.mu1 / params.delta1;

  ComplexMatrix static_part(space.dim(), space.dim());
  // Photon-dependent Stark shifts, control qutrit included.
  for (int k = 1; k <= params.n_qutrits; ++k) {
    const double c = (k == 1) ? chi1 : chi;
    static_part += cplx{-c, 0.0} * two_site_cavity_op(space, k, pe, num_op);
    static_part += cplx{c, 0.0} * two_site_cavity_op(space, k, pf, anti_num);
  }
  // Exchange among the target qutrits, one term per unordered pair.
  for (int k = 2; k <= params.n_qutrits; ++k) {
    for (int kp = k + 1; kp <= params.n_qutrits; ++kp) {
      static_part += cplx{chi, 0.0} * (two_qutrit_op(space, k, sp, kp, sm) +
                                       two_qutrit_op(space, k, sm, kp, sp));
    }
  }

  // Control-target flip-flop, detuned by delta.
  ComplexMatrix flip(space.dim(), space.dim());
  for (int k = 2; k <= params.n_qutrits; ++k) {
    flip += two_qutrit_op(space, 1, sp, k, sm);
  }
  flip *= cplx{d.lambda, 0.0};

  TimeDependentHamiltonian h;
  h.dim = space.dim();
  h.terms.push_back({0.0, std::move(static_part)});
  h.terms.push_back({d.delta_small, flip});
  h.terms.push_back({-d.delta_small, adjoint(flip)});
  return h;
}

ComplexMatrix build_full_hamiltonian(const SystemParams& params,
                                     const HilbertSpace& space, double t) {
  return make_full_hamiltonian(params, space).at(t);
}

ComplexMatrix build_dispersive_hamiltonian(const SystemParams& params,
                                           const HilbertSpace& space, double t) {
  return make_dispersive_hamiltonian(params, space).at(t);
}

std::size_t qutrit_basis_index(const std::vector<int>& levels) {
  std::size_t idx = 0;
  for (int q : levels) {
    if (q < 0 || q > 2) throw DimensionError("qutrit level out of range");
    idx = idx * 3 + static_cast<std::size_t>(q);
  }
  return idx;
}

int qutrit_level_of(std::size_t index, int qutrit, int n) {
  if (qutrit < 1 || qutrit > n) throw DimensionError("unknown site");
  for (int s = 0; s < n - qutrit; ++s) index /= 3;
  return static_cast<int>(index % 3);
}

namespace {

std::size_t pow3(int n) {
  std::size_t d = 1;
  for (int i = 0; i < n; ++i) d *= 3;
  return d;
}

}  // namespace

ComplexMatrix build_effective_hamiltonian_full(const SystemParams& params, int n) {
  if (n < 2) throw ConfigError("need at least two qutrits");
  SystemParams p = params;
  p.n_qutrits = n;
  const DerivedParams d = derive(p);
  const double chi = params.mu * params.mu / params.delta_cap;
  const std::size_t dim = pow3(n);
  if (dim > kMaxStateDim) throw DimensionError("dimension limit exceeded");

  ComplexMatrix h(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    std::vector<int> q(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) q[static_cast<std::size_t>(j - 1)] = qutrit_level_of(col, j, n);

    // Stark shifts.
    double diag = 0.0;
    if (q[0] == kF) diag += d.stark_f1;
    for (int j = 2; j <= n; ++j) {
      if (q[static_cast<std::size_t>(j - 1)] == kF) diag += chi;
    }
    // Control-conditioned diagonal pieces (j = k part of the double sum).
    for (int j = 2; j <= n; ++j) {
      const int qj = q[static_cast<std::size_t>(j - 1)];
      if (q[0] == kF && qj == kE) diag += d.cross_shift;
      if (q[0] == kE && qj == kF) diag -= d.cross_shift;
    }
    h(col, col) += diag;

    // Target-target exchange (mu^2/Delta per unordered pair).
    for (int j = 2; j <= n; ++j) {
      for (int k = 2; k <= n; ++k) {
        if (j == k) continue;
        // sigma_j^+ sigma_k^- : needs qutrit j in e, qutrit k in f.
        if (q[static_cast<std::size_t>(j - 1)] == kE &&
            q[static_cast<std::size_t>(k - 1)] == kF) {
          std::vector<int> out = q;
          out[static_cast<std::size_t>(j - 1)] = kF;
          out[static_cast<std::size_t>(k - 1)] = kE;
          h(qutrit_basis_index(out), col) += chi;
        }
      }
    }
    // Control-conditioned exchange (j != k part of the double sum):
    // |f1><f1| sigma_j^- sigma_k^+  -  |e1><e1| sigma_j^+ sigma_k^-.
    for (int j = 2; j <= n; ++j) {
      for (int k = 2; k <= n; ++k) {
        if (j == k) continue;
        const int qj = q[static_cast<std::size_t>(j - 1)];
        const int qk = q[static_cast<std::size_t>(k - 1)];
        if (q[0] == kF && qj == kF && qk == kE) {
          std::vector<int> out = q;
          out[static_cast<std::size_t>(j - 1)] = kE;
          out[static_cast<std::size_t>(k - 1)] = kF;
          h(qutrit_basis_index(out), col) += d.cross_shift;
        }
        if (q[0] == kE && qj == kE && qk == kF) {
          std::vector<int> out = q;
          out[static_cast<std::size_t>(j - 1)] = kF;
          out[static_cast<std::size_t>(k - 1)] = kE;
          h(qutrit_basis_index(out), col) -= d.cross_shift;
        }
      }
    }
  }
  return h;
}

ComplexMatrix build_effective_hamiltonian_encoded(const SystemParams& params, int n) {
  if (n < 2) throw ConfigError("need at least two qutrits");
  SystemParams p = params;
  p.n_qutrits = n;
  const DerivedParams d = derive(p);
  const std::size_t dim = pow3(n);
  if (dim > kMaxStateDim) throw DimensionError("dimension limit exceeded");

  ComplexMatrix h(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (qutrit_level_of(i, 1, n) != kF) continue;
    // Support is restricted to the encoded subspace (targets in g/e): the
    // reduction that produces this Hamiltonian is only valid there, and the
    // restriction is what makes P H4 P equal it exactly.
    bool encoded = true;
    int excited_targets = 0;
    for (int j = 2; j <= n; ++j) {
      const int level = qutrit_level_of(i, j, n);
      if (level == kF) encoded = false;
      if (level == kE) ++excited_targets;
    }
    if (!encoded) continue;
    h(i, i) = d.stark_f1 + d.cross_shift * excited_targets;
  }
  return h;
}

ComplexMatrix encoded_subspace_projector(int n) {
  if (n < 2) throw ConfigError("need at least two qutrits");
  const std::size_t dim = pow3(n);
  ComplexMatrix p(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (qutrit_level_of(i, 1, n) == kE) continue;
    bool ok = true;
    for (int j = 2; j <= n; ++j) {
      if (qutrit_level_of(i, j, n) == kF) {
        ok = false;
        break;
      }
    }
    if (ok) p(i, i) = 1.0;
  }
  return p;
}

}  // namespace qpg
