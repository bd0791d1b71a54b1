#include "rta/lindblad.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>

namespace rta {

namespace {

const Complex kImag(0.0, 1.0);

struct RhsContext {
    const LindbladGenerator& gen;
    std::vector<Operator> half_ldl;       // 1/2 L^dag L per jump
    std::optional<Operator> rho_e_const;  // Gibbs target when beta is fixed

    explicit RhsContext(const LindbladGenerator& g) : gen(g) {
        half_ldl.reserve(gen.jumps.size());
        for (const JumpOperator& j : gen.jumps) {
            half_ldl.push_back(0.5 * (j.matrix.adjoint() * j.matrix));
        }
        if (gen.rta && !gen.rta->beta_of_t) {
            rho_e_const = gibbs_state(gen.rta->spectrum, gen.rta->beta).matrix();
        }
    }

    Operator rta_target(double t) const {
        if (rho_e_const) return *rho_e_const;
        const RtaTerm& rta = *gen.rta;
        const RealVector w = gibbs_weights(rta.spectrum, (*rta.beta_of_t)(t));
        return rta.spectrum.basis * w.asDiagonal() * rta.spectrum.basis.adjoint();
    }

    Operator eval(double t, const Operator& rho) const {
        Operator out = -kImag * (gen.hamiltonian * rho - rho * gen.hamiltonian);
        for (std::size_t j = 0; j < gen.jumps.size(); ++j) {
            const Operator& l = gen.jumps[j].matrix;
            out += l * rho * l.adjoint();
            out -= half_ldl[j] * rho + rho * half_ldl[j];
        }
        if (gen.rta) {
            out += gen.rta->gamma0 * (rta_target(t) - rho);
        }
        return out;
    }
};

ComplexVector vec(const Operator& m) {
    return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

Operator kron(const Operator& a, const Operator& b) {
    Operator out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

}  // namespace

void LindbladGenerator::validate() const {
    const Eigen::Index n = hamiltonian.rows();
    if (hamiltonian.cols() != n || n < 1) {
        throw std::invalid_argument("LindbladGenerator: Hamiltonian must be square");
    }
    const double defect = hermiticity_defect(hamiltonian);
    if (defect > 1e-10 * std::max(1.0, hamiltonian.norm())) {
        throw std::invalid_argument("LindbladGenerator: Hamiltonian not Hermitian, defect " +
                                    std::to_string(defect));
    }
    for (const JumpOperator& j : jumps) {
        if (j.matrix.rows() != n || j.matrix.cols() != n) {
            throw std::invalid_argument("LindbladGenerator: jump dimension mismatch");
        }
    }
    if (rta) {
        if (!(rta->gamma0 > 0.0)) {
            throw std::invalid_argument("LindbladGenerator: gamma0 must be > 0");
        }
        if (rta->spectrum.dim() != n) {
            throw std::invalid_argument("LindbladGenerator: RTA spectrum dimension mismatch");
        }
    }
}

std::vector<JumpOperator> rta_jump_set(const Spectrum& spec, InverseTemperature beta,
                                       double gamma0) {
    if (!(gamma0 > 0.0)) {
        throw std::invalid_argument("rta_jump_set: gamma0 must be > 0");
    }
    if (beta.is_infinite()) {
        throw std::invalid_argument(
            "rta_jump_set: beta = +inf is not supported; use the compact RTA term "
            "(RtaTerm) for a zero-temperature environment");
    }
    const Eigen::Index n = spec.dim();
    const RealVector w = gibbs_weights(spec, beta);
    std::vector<JumpOperator> jumps;
    jumps.reserve(static_cast<std::size_t>(n) * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double c = std::sqrt(gamma0 * w(i));
        for (Eigen::Index j = 0; j < n; ++j) {
            jumps.push_back({c * (spec.basis.col(i) * spec.basis.col(j).adjoint())});
        }
    }
    return jumps;
}

Operator lindblad_rhs(const LindbladGenerator& gen, const DensityMatrix& rho) {
    gen.validate();
    if (rho.dim() != gen.dim()) {
        throw std::invalid_argument("lindblad_rhs: state dimension mismatch");
    }
    return RhsContext(gen).eval(0.0, rho.matrix());
}

double default_step(const LindbladGenerator& gen) {
    double step = 0.01 / std::max(1e-12, gen.hamiltonian.norm());
    if (gen.rta) step = std::min(step, 0.01 / gen.rta->gamma0);
    return step;
}

Trajectory evolve(const LindbladGenerator& gen, const DensityMatrix& rho0,
                  const std::vector<double>& times, double step) {
    gen.validate();
    if (rho0.dim() != gen.dim()) {
        throw std::invalid_argument("evolve: initial state dimension mismatch");
    }
    if (!(step > 0.0)) {
        throw std::invalid_argument("evolve: step must be > 0");
    }
    if (times.empty() || times.front() < 0.0) {
        throw std::invalid_argument("evolve: times must ascend from 0");
    }
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (times[i] <= times[i - 1]) {
            throw std::invalid_argument("evolve: times must be strictly ascending");
        }
    }

    const RhsContext ctx(gen);
    Trajectory traj;
    Operator rho = rho0.matrix();
    double t = 0.0;

    auto emit = [&traj](double time, const Operator& raw) {
        const double herm_drift = hermiticity_defect(raw);
        const double trace_drift = std::abs(raw.trace() - Complex(1.0, 0.0));
        traj.max_hermiticity_drift = std::max(traj.max_hermiticity_drift, herm_drift);
        traj.max_trace_drift = std::max(traj.max_trace_drift, trace_drift);
        Operator herm = 0.5 * (raw + raw.adjoint().eval());
        Eigen::SelfAdjointEigenSolver<Operator> es(herm, Eigen::EigenvaluesOnly);
        const double min_eig = es.eigenvalues().minCoeff();
        if (min_eig < -1e-6) {
            throw std::runtime_error(
                "evolve: integration instability, min eigenvalue " +
                std::to_string(min_eig) + " at t = " + std::to_string(time) +
                "; reduce the step size");
        }
        traj.raw_traces.push_back(herm.trace().real());
        herm /= herm.trace().real();
        traj.times.push_back(time);
        traj.states.emplace_back(std::move(herm), 1e-6);
    };

    for (double target : times) {
        const double dt = target - t;
        if (dt > 0.0) {
            const int nsub = std::max(1, static_cast<int>(std::ceil(dt / step)));
            const double h = dt / nsub;
            for (int s = 0; s < nsub; ++s) {
                const Operator k1 = ctx.eval(t, rho);
                const Operator k2 = ctx.eval(t + 0.5 * h, rho + (0.5 * h) * k1);
                const Operator k3 = ctx.eval(t + 0.5 * h, rho + (0.5 * h) * k2);
                const Operator k4 = ctx.eval(t + h, rho + h * k3);
                rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
                t += h;
            }
            t = target;
        }
        emit(target, rho);
    }
    return traj;
}

Superoperator superoperator(const LindbladGenerator& gen) {
    gen.validate();
    const Eigen::Index n = gen.dim();
    if (n * n > kMaxSuperoperatorDim) {
        throw std::invalid_argument("superoperator: N^2 = " + std::to_string(n * n) +
                                    " exceeds dense limit " +
                                    std::to_string(kMaxSuperoperatorDim));
    }
    const Operator id = Operator::Identity(n, n);
    // vec(H rho) = (I (x) H) vec(rho), vec(rho H) = (H^T (x) I) vec(rho)
    Operator a = -kImag * (kron(id, gen.hamiltonian) -
                           kron(gen.hamiltonian.transpose(), id));
    for (const JumpOperator& j : gen.jumps) {
        const Operator& l = j.matrix;
        const Operator ldl = l.adjoint() * l;
        a += kron(l.conjugate(), l);
        a -= 0.5 * kron(id, ldl);
        a -= 0.5 * kron(ldl.transpose(), id);
    }
    ComplexVector b = ComplexVector::Zero(n * n);
    if (gen.rta) {
        a -= gen.rta->gamma0 * Operator::Identity(n * n, n * n);
        b = gen.rta->gamma0 *
            vec(gibbs_state(gen.rta->spectrum, gen.rta->beta).matrix());
    }
    return Superoperator{std::move(a), std::move(b)};
}

DensityMatrix steady_state(const LindbladGenerator& gen) {
    const Superoperator sup = superoperator(gen);
    const Eigen::Index n = gen.dim();
    const Eigen::Index nn = n * n;

    if (sup.affine.norm() < 1e-14) {
        Eigen::BDCSVD<Operator> svd(sup.matrix);
        const double tol = 1e-10 * std::max(1.0, svd.singularValues()(0));
        Eigen::Index nullity = 0;
        for (Eigen::Index i = 0; i < nn; ++i) {
            if (svd.singularValues()(i) < tol) ++nullity;
        }
        if (nullity > 1) {
            throw std::runtime_error("steady_state: not unique, null-space dimension " +
                                     std::to_string(nullity));
        }
    }

    // stacked system: [A; vec(I)^T] x = [-b; 1]
    Operator stacked(nn + 1, nn);
    stacked.topRows(nn) = sup.matrix;
    Operator id = Operator::Identity(n, n);
    stacked.row(nn) = vec(id).transpose();
    ComplexVector rhs = ComplexVector::Zero(nn + 1);
    rhs.head(nn) = -sup.affine;
    rhs(nn) = 1.0;

    const ComplexVector x = stacked.colPivHouseholderQr().solve(rhs);
    const double residual = (sup.matrix * x + sup.affine).norm();
    if (residual >= 1e-9) {
        throw std::runtime_error("steady_state: residual " + std::to_string(residual) +
                                 " exceeds 1e-9");
    }
    Operator rho = Eigen::Map<const Operator>(x.data(), n, n);
    rho = 0.5 * (rho + rho.adjoint().eval());
    rho /= rho.trace().real();
    return DensityMatrix(std::move(rho), 1e-8);
}

}  // namespace rta
