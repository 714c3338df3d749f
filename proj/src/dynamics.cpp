// Copyright 2026 The lambdadet Authors
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

#include "lambdadet/dynamics.hpp"

#include "lambdadet/errors.hpp"

#include <Eigen/LU>
#include <Eigen/QR>

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

namespace lambdadet {

namespace {

constexpr Complex kI{0.0, 1.0};

// Hierarchy components of a stable run stay O(1); anything near this bound
// means RK4 is outside its stability region.
constexpr double kBlowUp = 1e6;

bool bounded(const Matrix& m) { return m.allFinite() && m.cwiseAbs().maxCoeff() < kBlowUp; }

struct TimeGrid {
  long steps;
  double dt;
};

TimeGrid make_grid(double t_initial, double t_final, double dt) {
  if (!(t_final > t_initial)) {
    throw std::invalid_argument("evolve: t_initial must be < t_final");
  }
  if (!(dt > 0.0)) throw std::invalid_argument("evolve: dt must be positive");
  const long steps = std::max(1L, static_cast<long>(std::ceil((t_final - t_initial) / dt - 1e-9)));
  return {steps, (t_final - t_initial) / steps};
}

Complex envelope_at(const std::optional<PulseEnvelope>& f, double t) {
  return f && !f->is_zero() ? (*f)(t) : Complex{};
}

// Right-hand side of the hierarchy. The static frame Hamiltonian is diagonal,
// so the coherent part and the anti-commutator halves of both dissipators
// fold into one elementwise factor.
class HierarchyGenerator {
 public:
  HierarchyGenerator(const SystemParams& params, const EvolveSpec& spec)
      : space_(build_space(params.n_max)), order_(spec.order), spec_(spec) {
    const LadderOperators ops = embed_operators(space_);
    a_ = SparseOperator(ops.a.entries());
    a_dag_ = a_.adjoint();
    sigma_ = SparseOperator(ops.sigma.entries());
    sigma_dag_ = sigma_.adjoint();
    kappa_ = params.kappa;
    gamma_ = params.gamma;
    sqrt_kappa_prime_ = std::sqrt(params.kappa_prime);
    sqrt_gamma_prime_ = std::sqrt(params.gamma_prime);

    const Matrix h = hamiltonian_frame(params, spec.resonator_frame).entries();
    const int dim = space_.dim();
    Eigen::VectorXcd heff(dim);
    for (int i = 0; i < dim; ++i) {
      const BasisLabel l = space_.label(i);
      const double loss = kappa_ * l.photons + (l.qubit == Qubit::kExcited ? gamma_ : 0.0);
      heff(i) = h(i, i) - 0.5 * kI * loss;
    }
    decay_phase_.resize(dim, dim);
    for (int j = 0; j < dim; ++j) {
      for (int i = 0; i < dim; ++i) {
        decay_phase_(i, j) = -kI * (heff(i) - std::conj(heff(j)));
      }
    }

    for (int m = 0; m <= order_; ++m) {
      for (int n = m; n <= order_; ++n) pairs_.push_back({m, n});
    }
  }

  const HilbertSpace& space() const { return space_; }
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }

  void operator()(double t, const std::vector<Matrix>& rho, std::vector<Matrix>& out) const {
    const Complex drive = sqrt_gamma_prime_ * envelope_at(spec_.drive, t);
    const Complex classical = sqrt_kappa_prime_ * envelope_at(spec_.classical, t);
    const Complex signal = sqrt_kappa_prime_ * envelope_at(spec_.signal, t);

    for (std::size_t c = 0; c < pairs_.size(); ++c) {
      const auto [m, n] = pairs_[c];
      Matrix& o = out[c];
      const Matrix& r = rho[c];
      o.noalias() = decay_phase_.cwiseProduct(r);
      if (kappa_ != 0.0) a_.add_sandwich(o, kappa_, r);
      if (gamma_ != 0.0) sigma_.add_sandwich(o, gamma_, r);
      if (drive != 0.0) {
        sigma_dag_.add_commutator(o, -kI * drive, r);
        sigma_.add_commutator(o, -kI * std::conj(drive), r);
      }
      if (classical != 0.0) {
        a_dag_.add_commutator(o, -kI * classical, r);
        a_.add_commutator(o, -kI * std::conj(classical), r);
      }
      if (signal != 0.0) {
        if (n >= 1) {
          if (m <= n - 1) {
            a_dag_.add_commutator(o, -kI * signal, rho[index(m, n - 1)]);
          } else {
            // rho^{n,n-1} = (rho^{n-1,n})^dagger
            scratch_ = rho[index(n - 1, n)].adjoint();
            a_dag_.add_commutator(o, -kI * signal, scratch_);
          }
        }
        if (m >= 1) {
          a_.add_commutator(o, -kI * std::conj(signal), rho[index(m - 1, n)]);
        }
      }
    }
  }

 private:
  int index(int m, int n) const { return HierarchyState::stored_index(order_, m, n); }

  HilbertSpace space_;
  int order_;
  EvolveSpec spec_;
  SparseOperator a_, a_dag_, sigma_, sigma_dag_;
  double kappa_ = 0.0, gamma_ = 0.0;
  double sqrt_kappa_prime_ = 0.0, sqrt_gamma_prime_ = 0.0;
  Matrix decay_phase_;
  std::vector<std::pair<int, int>> pairs_;
  mutable Matrix scratch_;
};

struct DiagonalObservables {
  Eigen::VectorXd excitation;
  Eigen::VectorXd photons;
};

DiagonalObservables diagonal_observables(const HilbertSpace& space) {
  DiagonalObservables d{Eigen::VectorXd(space.dim()), Eigen::VectorXd(space.dim())};
  for (int i = 0; i < space.dim(); ++i) {
    const BasisLabel l = space.label(i);
    d.excitation(i) = l.qubit == Qubit::kExcited ? 1.0 : 0.0;
    d.photons(i) = l.photons;
  }
  return d;
}

Complex field_expectation(const SparseOperator& a, const Matrix& rho) {
  Complex sum{};
  for (const auto& e : a.entries()) sum += e.value * rho(e.col, e.row);
  return sum;
}

TrajectoryRecord make_record(const HierarchyState& state, const DiagonalObservables& diag,
                             const SparseOperator& a) {
  TrajectoryRecord rec;
  for (int k = 0; k <= state.order(); ++k) {
    const Matrix fock = reconstruct_fock(state, k);
    const Eigen::VectorXd pop = fock.diagonal().real();
    rec.excitation.push_back(diag.excitation.dot(pop));
    rec.photons.push_back(diag.photons.dot(pop));
    rec.field.push_back(field_expectation(a, state.stored()[HierarchyState::stored_index(
                                                 state.order(), 0, k)].matrix));
  }
  return rec;
}

}  // namespace

HierarchyState::HierarchyState(HilbertSpace space, int order, double time)
    : space_(space), order_(order), time_(time) {
  if (order < 0 || order > 2) {
    throw std::invalid_argument("HierarchyState: order must be 0, 1 or 2, got " +
                                std::to_string(order));
  }
  for (int m = 0; m <= order; ++m) {
    for (int n = m; n <= order; ++n) {
      stored_.push_back({space, Matrix::Zero(space.dim(), space.dim()), m, n});
    }
  }
}

int HierarchyState::stored_index(int order, int m, int n) {
  // rows m = 0..order hold order+1-m entries each
  return m * (order + 1) - m * (m - 1) / 2 + (n - m);
}

Matrix HierarchyState::component(int m, int n) const {
  if (m < 0 || n < 0 || m > order_ || n > order_) {
    throw std::invalid_argument("HierarchyState::component: index outside 0..order");
  }
  if (m <= n) return stored_[stored_index(order_, m, n)].matrix;
  return stored_[stored_index(order_, n, m)].matrix.adjoint();
}

Matrix reconstruct_fock(const HierarchyState& state, int photons) {
  if (photons < 0 || photons > state.order()) {
    throw std::invalid_argument("reconstruct_fock: photon number " + std::to_string(photons) +
                                " exceeds hierarchy order " + std::to_string(state.order()));
  }
  const auto& s = state.stored();
  const int order = state.order();
  switch (photons) {
    case 0:
      return s[0].matrix;
    case 1:
      return s[0].matrix + s[HierarchyState::stored_index(order, 1, 1)].matrix;
    default:
      return s[0].matrix + 2.0 * s[HierarchyState::stored_index(order, 1, 1)].matrix +
             2.0 * s[HierarchyState::stored_index(order, 2, 2)].matrix;
  }
}

Trajectory evolve_hierarchy(const SystemParams& params, const EvolveSpec& spec) {
  if (spec.order < 0 || spec.order > 2) {
    throw std::invalid_argument("evolve_hierarchy: order must be 0, 1 or 2, got " +
                                std::to_string(spec.order));
  }
  if (spec.record_stride < 1) {
    throw std::invalid_argument("evolve_hierarchy: record_stride must be >= 1");
  }
  const TimeGrid grid = make_grid(spec.t_initial, spec.t_final, params.dt);
  const HierarchyGenerator rhs(params, spec);
  const HilbertSpace& space = rhs.space();
  const int dim = space.dim();
  const std::size_t count = rhs.pairs().size();

  HierarchyState state(space, spec.order, spec.t_initial);
  const int start = space.index(spec.initial);
  state.stored()[0].matrix(start, start) = 1.0;

  std::vector<Matrix> y(count), k1(count, Matrix(dim, dim)), k2 = k1, k3 = k1, k4 = k1,
      tmp = k1;
  for (std::size_t c = 0; c < count; ++c) y[c] = state.stored()[c].matrix;

  const DiagonalObservables diag = diagonal_observables(space);
  const SparseOperator a(embed_operators(space).a.entries());

  Trajectory traj{{}, {}, state};
  const std::size_t expected = static_cast<std::size_t>(grid.steps / spec.record_stride + 2);
  traj.times.reserve(expected);
  traj.records.reserve(expected);
  traj.times.push_back(spec.t_initial);
  traj.records.push_back(make_record(state, diag, a));

  const double h = grid.dt;
  for (long step = 0; step < grid.steps; ++step) {
    const double t = spec.t_initial + step * h;
    rhs(t, y, k1);
    for (std::size_t c = 0; c < count; ++c) tmp[c] = y[c] + (0.5 * h) * k1[c];
    rhs(t + 0.5 * h, tmp, k2);
    for (std::size_t c = 0; c < count; ++c) tmp[c] = y[c] + (0.5 * h) * k2[c];
    rhs(t + 0.5 * h, tmp, k3);
    for (std::size_t c = 0; c < count; ++c) tmp[c] = y[c] + h * k3[c];
    rhs(t + h, tmp, k4);
    for (std::size_t c = 0; c < count; ++c) {
      y[c] += (h / 6.0) * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    }

    const long done = step + 1;
    const double t_next = done == grid.steps ? spec.t_final : spec.t_initial + done * h;
    for (std::size_t c = 0; c < count; ++c) {
      if (!bounded(y[c])) {
        std::ostringstream msg;
        msg << "evolve_hierarchy: rho^{" << rhs.pairs()[c].first << rhs.pairs()[c].second
            << "} blew up at t = " << t_next << " ns (step too coarse?)";
        throw DivergenceError(msg.str(), t_next);
      }
    }
    if (done % spec.record_stride == 0 || done == grid.steps) {
      for (std::size_t c = 0; c < count; ++c) state.stored()[c].matrix = y[c];
      state.set_time(t_next);
      traj.times.push_back(t_next);
      traj.records.push_back(make_record(state, diag, a));
    }
  }
  for (std::size_t c = 0; c < count; ++c) state.stored()[c].matrix = y[c];
  state.set_time(spec.t_final);
  traj.final_state = std::move(state);
  return traj;
}

namespace {

// Column-stacking vectorization: vec(A X B) = (B^T kron A) vec(X).
Matrix kron(const Matrix& x, const Matrix& y) {
  Matrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (int i = 0; i < x.rows(); ++i) {
    for (int j = 0; j < x.cols(); ++j) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return out;
}

Matrix liouvillian(const Matrix& h, const std::vector<std::pair<double, Matrix>>& jumps) {
  const int dim = static_cast<int>(h.rows());
  const Matrix id = Matrix::Identity(dim, dim);
  Matrix l = -kI * (kron(id, h) - kron(h.transpose(), id));
  for (const auto& [rate, op] : jumps) {
    const Matrix ldl = op.adjoint() * op;
    l += rate * (kron(op.conjugate(), op) - 0.5 * kron(id, ldl) - 0.5 * kron(ldl.transpose(), id));
  }
  return l;
}

// Solves L vec(X) = rhs with the (0,0) row replaced by tr(X) = trace_value.
Matrix solve_with_trace(Matrix l, Eigen::VectorXcd rhs, Complex trace_value, int dim) {
  l.row(0).setZero();
  for (int i = 0; i < dim; ++i) l(0, i + i * dim) = 1.0;
  rhs(0) = trace_value;
  const Eigen::FullPivLU<Matrix> lu(l);
  if (!lu.isInvertible()) {
    throw SolverError("steady state: Liouvillian with trace constraint is singular");
  }
  const Eigen::VectorXcd x = lu.solve(rhs);
  return Eigen::Map<const Matrix>(x.data(), dim, dim);
}

struct DrivenGenerator {
  Matrix liouvillian;
  LadderOperators ops;
  int dim;
};

DrivenGenerator driven_generator(const SystemParams& params, double drive, double frame) {
  const OperatorMatrix h0 = hamiltonian_frame(params, frame);
  LadderOperators ops = embed_operators(h0.space());
  const Matrix& s = ops.sigma.entries();
  const Matrix h = h0.entries() + drive * (s + s.adjoint());
  Matrix l = liouvillian(h, {{params.kappa, ops.a.entries()}, {params.gamma, s}});
  return {std::move(l), std::move(ops), h0.space().dim()};
}

}  // namespace

Matrix steady_state(const SystemParams& params, double drive, double resonator_frame) {
  const DrivenGenerator g = driven_generator(params, drive, resonator_frame);
  return solve_with_trace(g.liouvillian, Eigen::VectorXcd::Zero(g.dim * g.dim), 1.0, g.dim);
}

Complex steady_reflection(const SystemParams& params, double drive, double omega_s) {
  const DrivenGenerator g = driven_generator(params, drive, omega_s);
  const Matrix rho00 =
      solve_with_trace(g.liouvillian, Eigen::VectorXcd::Zero(g.dim * g.dim), 1.0, g.dim);
  // Stationary rho^{01} under a unit tone: L rho01 = i sqrt(kappa') [a', rho00].
  const Matrix& a = g.ops.a.entries();
  const Matrix ad = a.adjoint();
  const Matrix source = kI * std::sqrt(params.kappa_prime) * (ad * rho00 - rho00 * ad);
  const Eigen::VectorXcd rhs = Eigen::Map<const Eigen::VectorXcd>(source.data(), source.size());
  const Matrix rho01 = solve_with_trace(g.liouvillian, rhs, 0.0, g.dim);
  const Complex field = (a * rho01).trace();
  return 1.0 - kI * std::sqrt(params.kappa_prime) * field;
}

Matrix evolve_master_equation(const SystemParams& params, const EvolveSpec& spec,
                              Complex signal_amplitude) {
  const TimeGrid grid = make_grid(spec.t_initial, spec.t_final, params.dt);
  const OperatorMatrix h0 = hamiltonian_frame(params, spec.resonator_frame);
  const HilbertSpace space = h0.space();
  const LadderOperators ops = embed_operators(space);
  const Matrix& a = ops.a.entries();
  const Matrix& s = ops.sigma.entries();
  const double sqrt_kp = std::sqrt(params.kappa_prime);
  const double sqrt_gp = std::sqrt(params.gamma_prime);

  const auto derivative = [&](double t, const Matrix& rho) {
    const Complex drive = sqrt_gp * envelope_at(spec.drive, t);
    const Complex field = sqrt_kp * (envelope_at(spec.classical, t) +
                                     signal_amplitude * envelope_at(spec.signal, t));
    Matrix h = h0.entries() + drive * s.adjoint() + std::conj(drive) * s +
               field * a.adjoint() + std::conj(field) * a;
    const OperatorMatrix hamiltonian(space, std::move(h));
    return Matrix(apply_commutator(hamiltonian, rho) +
                  apply_lindblad_term(ops.a, params.kappa, rho) +
                  apply_lindblad_term(ops.sigma, params.gamma, rho));
  };

  Matrix rho = basis_projector(space, spec.initial);
  const double h = grid.dt;
  for (long step = 0; step < grid.steps; ++step) {
    const double t = spec.t_initial + step * h;
    const Matrix k1 = derivative(t, rho);
    const Matrix k2 = derivative(t + 0.5 * h, rho + 0.5 * h * k1);
    const Matrix k3 = derivative(t + 0.5 * h, rho + 0.5 * h * k2);
    const Matrix k4 = derivative(t + h, rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!bounded(rho)) {
      throw DivergenceError("evolve_master_equation: rho blew up", t + h);
    }
  }
  return rho;
}

AlphaExpansion small_alpha_oracle(const SystemParams& params, const EvolveSpec& spec,
                                  std::span<const double> alphas,
                                  const OperatorMatrix& observable) {
  const std::set<double> distinct(alphas.begin(), alphas.end());
  if (distinct.size() < 3) {
    throw std::invalid_argument("small_alpha_oracle: need at least three distinct alphas");
  }
  const int samples = static_cast<int>(alphas.size());
  Matrix design(samples, 3);
  Eigen::VectorXcd values(samples);
  for (int i = 0; i < samples; ++i) {
    const double a2 = alphas[i] * alphas[i];
    design(i, 0) = 1.0;
    design(i, 1) = a2;
    design(i, 2) = a2 * a2;
    // Averaging over alpha -> i^p alpha removes every term with m - n not a
    // multiple of four.
    static const Complex kPhases[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    Complex avg{};
    for (const Complex phase : kPhases) {
      const Complex amp = alphas[i] * phase;
      avg += expectation(observable, evolve_master_equation(params, spec, amp));
    }
    values(i) = 0.25 * avg;
  }
  const Eigen::VectorXcd c = design.colPivHouseholderQr().solve(values);
  return {c(0), c(1), c(2)};
}

}  // namespace lambdadet
