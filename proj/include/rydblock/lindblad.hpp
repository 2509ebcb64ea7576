#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rydblock/errors.hpp"

namespace rydblock {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Dense solver for few-level open quantum systems. Every model in this
// project has dim <= 16, so the dim^2 x dim^2 superoperator is built and
// solved densely.

struct Jump {
    Matrix op;
    double rate = 0.0; // GHz
};

struct LindbladModel {
    Matrix hamiltonian; // Hermitian, GHz rate units
    std::vector<Jump> jumps;

    Eigen::Index dim() const { return hamiltonian.rows(); }
};
void validate(const LindbladModel& model);

// Hermitian, unit-trace, positive-semidefinite state. Construction checks
// the invariants; `herm_tol`/`trace_tol` are absolute, `eig_floor` bounds
// the smallest eigenvalue of the symmetrized matrix from below.
class DensityMatrix {
public:
    static DensityMatrix ground(Eigen::Index dim);
    static DensityMatrix pure(const CVector& state);
    static DensityMatrix from_matrix(const Matrix& rho, double herm_tol = 1e-10,
                                     double trace_tol = 1e-10, double eig_floor = -1e-8);

    const Matrix& matrix() const { return rho_; }
    Eigen::Index dim() const { return rho_.rows(); }
    double population(Eigen::Index i) const { return rho_(i, i).real(); }
    Complex coherence(Eigen::Index i, Eigen::Index j) const { return rho_(i, j); }

private:
    explicit DensityMatrix(Matrix rho) : rho_(std::move(rho)) {}
    Matrix rho_;
};

// Matrix L with vec(rho_dot) = L vec(rho) for
// rho_dot = -i[H, rho] + sum_k rate_k (J rho J^dag - 1/2 {J^dag J, rho}),
// column-major vectorization.
Matrix build_liouvillian(const LindbladModel& model);

struct IntegratorOptions {
    double rtol = 1e-9;
    double atol = 1e-12;
};

// Adaptive Dormand-Prince 5(4) integration of the Liouvillian flow for an
// arbitrary operator seed, sampled at t_grid (ascending, starting >= 0).
// Step-size underflow raises NumericError with the failing time.
std::vector<Matrix> propagate(const LindbladModel& model, const Matrix& seed,
                              std::span<const double> t_grid,
                              const IntegratorOptions& opts = {});

// Same flow restricted to density matrices; outputs are symmetrized and
// re-checked (trace within 1e-8, smallest eigenvalue above -1e-6, which
// allows for integrator drift).
std::vector<DensityMatrix> evolve(const LindbladModel& model, const DensityMatrix& rho0,
                                  std::span<const double> t_grid,
                                  const IntegratorOptions& opts = {});

// Null vector of L with unit trace, via a least-squares solve of the stacked
// system [L; trace-row] = [0; 1]. A numerically degenerate null space
// (multiple steady states) raises NumericError, as does a residual above
// 1e-9 relative to the scale of L.
DensityMatrix steady_state(const LindbladModel& model);

// Quantum-regression two-time correlation C(tau) = Tr[A e^{L tau}(B rho_ss)].
std::vector<Complex> correlation(const LindbladModel& model, const Matrix& a,
                                 const Matrix& b, std::span<const double> tau_grid);

} // namespace rydblock
