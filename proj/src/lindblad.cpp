#include "rydblock/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace rydblock {

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

CVector vec(const Matrix& m) {
    return Eigen::Map<const CVector>(m.data(), m.size());
}

Matrix unvec(const CVector& v, Eigen::Index d) {
    return Eigen::Map<const Matrix>(v.data(), d, d);
}

double hermitian_defect(const Matrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const Matrix& m) {
    const Matrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

std::string format_time(double t) {
    std::ostringstream os;
    os << t;
    return os.str();
}

// Dormand-Prince 5(4) with step-size control on the mixed abs/rel error norm.
class Dopri5 {
public:
    Dopri5(const Matrix& generator, const IntegratorOptions& opts)
        : l_(generator), opts_(opts) {}

    // Advance y in place from t0 to t1.
    void advance(CVector& y, double t0, double t1) {
        if (t1 <= t0) return;
        if (h_ <= 0) h_ = initial_step(y, t1 - t0);
        double t = t0;
        while (t < t1) {
            const double h_min =
                16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), 1.0);
            if (t1 - t <= h_min) break; // sub-ulp remainder, the target is reached
            if (h_ < h_min)
                throw NumericError("integrator step size underflow at t = " + format_time(t));
            const double h = std::min(h_, t1 - t);

            const CVector k1 = l_ * y;
            const CVector k2 = l_ * (y + h * (a21 * k1));
            const CVector k3 = l_ * (y + h * (a31 * k1 + a32 * k2));
            const CVector k4 = l_ * (y + h * (a41 * k1 + a42 * k2 + a43 * k3));
            const CVector k5 = l_ * (y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
            const CVector k6 =
                l_ * (y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
            const CVector ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            const CVector k7 = l_ * ynew;
            const CVector edrift =
                h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

            double acc = 0.0;
            for (Eigen::Index i = 0; i < y.size(); ++i) {
                const double scale =
                    opts_.atol + opts_.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
                const double e = std::abs(edrift[i]) / scale;
                acc += e * e;
            }
            const double err = std::sqrt(acc / static_cast<double>(y.size()));

            if (std::isfinite(err) && err <= 1.0) {
                t += h;
                y = ynew;
            }
            double factor = 5.0;
            if (!std::isfinite(err))
                factor = 0.2; // diverging or ill-scaled step, back off hard
            else if (err > 0)
                factor = std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            h_ = h * factor;
        }
    }

private:
    double initial_step(const CVector& y, double span) const {
        const double d0 = y.norm();
        const double d1 = (l_ * y).norm();
        double h = d1 > 1e-300 ? 0.01 * d0 / d1 : 0.1 * span;
        return std::clamp(h, 1e-10 * std::max(span, 1.0), 0.5 * span);
    }

    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const Matrix& l_;
    IntegratorOptions opts_;
    double h_ = 0.0;
};

void check_grid(std::span<const double> t_grid) {
    if (t_grid.empty()) throw std::invalid_argument("time grid must be non-empty");
    if (t_grid.front() < 0) throw std::invalid_argument("time grid must start at t >= 0");
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        if (t_grid[i] < t_grid[i - 1])
            throw std::invalid_argument("time grid must be ascending");
}

} // namespace

void validate(const LindbladModel& model) {
    const auto d = model.hamiltonian.rows();
    if (d < 1 || model.hamiltonian.cols() != d)
        throw std::invalid_argument("model: hamiltonian must be square and non-empty");
    if (!model.hamiltonian.allFinite())
        throw std::invalid_argument("model: hamiltonian entries must be finite");
    if (hermitian_defect(model.hamiltonian) > 1e-10)
        throw std::invalid_argument("model: hamiltonian must be Hermitian within 1e-10");
    for (const auto& jump : model.jumps) {
        if (jump.op.rows() != d || jump.op.cols() != d)
            throw std::invalid_argument("model: jump operator dimension mismatch");
        if (!jump.op.allFinite())
            throw std::invalid_argument("model: jump operator entries must be finite");
        if (!(jump.rate >= 0)) throw std::invalid_argument("model: jump rates must be >= 0");
    }
}

DensityMatrix DensityMatrix::ground(Eigen::Index dim) {
    if (dim < 1) throw std::invalid_argument("density matrix: dim must be >= 1");
    Matrix rho = Matrix::Zero(dim, dim);
    rho(0, 0) = 1.0;
    return DensityMatrix(std::move(rho));
}

DensityMatrix DensityMatrix::pure(const CVector& state) {
    const double norm = state.norm();
    if (norm <= 0) throw std::invalid_argument("density matrix: zero state vector");
    const CVector unit = state / norm;
    return DensityMatrix(unit * unit.adjoint());
}

DensityMatrix DensityMatrix::from_matrix(const Matrix& rho, double herm_tol,
                                         double trace_tol, double eig_floor) {
    if (rho.rows() < 1 || rho.rows() != rho.cols())
        throw std::invalid_argument("density matrix: must be square and non-empty");
    if (!rho.allFinite())
        throw std::invalid_argument("density matrix: entries must be finite");
    if (hermitian_defect(rho) > herm_tol)
        throw std::invalid_argument("density matrix: not Hermitian within tolerance");
    const Complex tr = rho.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > trace_tol)
        throw std::invalid_argument("density matrix: trace must be 1 within tolerance");
    if (min_eigenvalue(rho) < eig_floor)
        throw std::invalid_argument("density matrix: negative eigenvalue below tolerance");
    return DensityMatrix(rho);
}

Matrix build_liouvillian(const LindbladModel& model) {
    validate(model);
    const auto d = model.dim();
    const Matrix id = Matrix::Identity(d, d);
    const Complex img(0.0, 1.0);

    Matrix l = -img * (kron(id, model.hamiltonian) - kron(model.hamiltonian.transpose(), id));
    for (const auto& jump : model.jumps) {
        const Matrix jdj = jump.op.adjoint() * jump.op;
        l += jump.rate * (kron(jump.op.conjugate(), jump.op) - 0.5 * kron(id, jdj) -
                          0.5 * kron(jdj.transpose(), id));
    }
    return l;
}

std::vector<Matrix> propagate(const LindbladModel& model, const Matrix& seed,
                              std::span<const double> t_grid, const IntegratorOptions& opts) {
    validate(model);
    check_grid(t_grid);
    const auto d = model.dim();
    if (seed.rows() != d || seed.cols() != d)
        throw std::invalid_argument("propagate: seed dimension mismatch");

    const Matrix l = build_liouvillian(model);
    Dopri5 stepper(l, opts);

    std::vector<Matrix> out;
    out.reserve(t_grid.size());
    CVector y = vec(seed);
    double t = 0.0;
    for (double target : t_grid) {
        stepper.advance(y, t, target);
        t = target;
        out.push_back(unvec(y, d));
    }
    return out;
}

std::vector<DensityMatrix> evolve(const LindbladModel& model, const DensityMatrix& rho0,
                                  std::span<const double> t_grid,
                                  const IntegratorOptions& opts) {
    if (rho0.dim() != model.dim())
        throw std::invalid_argument("evolve: state dimension mismatch");
    auto raw = propagate(model, rho0.matrix(), t_grid, opts);

    std::vector<DensityMatrix> out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const Matrix sym = 0.5 * (raw[i] + raw[i].adjoint());
        try {
            out.push_back(DensityMatrix::from_matrix(sym, 1e-8, 1e-8, -1e-6));
        } catch (const std::invalid_argument& e) {
            throw NumericError(std::string("evolve: invalid state at t = ") +
                               format_time(t_grid[i]) + ": " + e.what());
        }
    }
    return out;
}

DensityMatrix steady_state(const LindbladModel& model) {
    validate(model);
    const auto d = model.dim();
    const auto d2 = d * d;
    Matrix l = build_liouvillian(model);

    // Uniqueness: a second numerically-zero singular value means multiple
    // steady states.
    Eigen::JacobiSVD<Matrix> svd(l);
    const auto& sigma = svd.singularValues();
    const double sigma_max = sigma(0);
    const double null_tol = std::max(sigma_max * 1e-10, 1e-300);
    int null_dim = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i)
        if (sigma(i) <= null_tol) ++null_dim;
    if (sigma_max <= 0 || null_dim >= 2)
        throw NumericError("steady state: degenerate Liouvillian null space (dimension " +
                           std::to_string(null_dim) + ")");

    // Stacked least-squares [L; trace-row] x = [0; 1]; L is normalized so the
    // residual criterion is scale invariant.
    const double scale = std::max(1.0, l.cwiseAbs().maxCoeff());
    l /= scale;
    Matrix a = Matrix::Zero(d2 + 1, d2);
    a.topRows(d2) = l;
    for (Eigen::Index i = 0; i < d; ++i) a(d2, i * d + i) = 1.0;
    CVector b = CVector::Zero(d2 + 1);
    b(d2) = 1.0;

    const CVector x = a.colPivHouseholderQr().solve(b);
    Matrix rho = unvec(x, d);
    rho = 0.5 * (rho + rho.adjoint());
    const double tr = rho.trace().real();
    if (std::abs(tr) < 0.5)
        throw NumericError("steady state: trace constraint could not be satisfied");
    rho /= tr;

    const double residual = (l * vec(rho)).norm();
    if (residual > 1e-9)
        throw NumericError("steady state: residual " + format_time(residual) +
                           " exceeds 1e-9");
    return DensityMatrix::from_matrix(rho);
}

std::vector<Complex> correlation(const LindbladModel& model, const Matrix& a,
                                 const Matrix& b, std::span<const double> tau_grid) {
    const auto d = model.dim();
    if (a.rows() != d || a.cols() != d || b.rows() != d || b.cols() != d)
        throw std::invalid_argument("correlation: operator dimension mismatch");

    const DensityMatrix rho_ss = steady_state(model);
    const Matrix seed = b * rho_ss.matrix();
    const auto evolved = propagate(model, seed, tau_grid);

    std::vector<Complex> out;
    out.reserve(evolved.size());
    for (const auto& w : evolved) out.push_back((a * w).trace());
    return out;
}

} // namespace rydblock
