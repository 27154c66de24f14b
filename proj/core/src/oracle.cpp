#include "chiralqb/oracle.hpp"

#include <cmath>
#include <string>

#include "chiralqb/analytic.hpp"
#include "chiralqb/errors.hpp"

namespace chiralqb {

namespace {

constexpr int kMaxDim = 4096;  // dense-representation budget per axis

Eigen::MatrixXcd annihilation(int levels) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(levels, levels);
    for (int n = 1; n < levels; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
    Eigen::MatrixXcd out(A.rows() * B.rows(), A.cols() * B.cols());
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j)
            out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) =
                A(i, j) * B;
    return out;
}

double real_checked(cplx z, double scale) {
    if (std::abs(z.imag()) > 1e-10 * std::max(1.0, scale)) {
        throw UnphysicalState("expected a real expectation value, got "
                              "imaginary part " +
                              std::to_string(z.imag()));
    }
    return z.real();
}

}  // namespace

void check_density_matrix(const DensityMatrix& rho, double herm_tol,
                          double trace_tol, double eig_tol) {
    const auto& r = rho.data;
    if ((r - r.adjoint()).cwiseAbs().maxCoeff() > herm_tol) {
        throw UnphysicalState("density matrix not Hermitian");
    }
    if (std::abs(r.trace().real() - 1.0) > trace_tol ||
        std::abs(r.trace().imag()) > trace_tol) {
        throw UnphysicalState("density matrix trace deviates from 1");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(r,
                                                       Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -eig_tol) {
        throw UnphysicalState("density matrix has a negative eigenvalue " +
                              std::to_string(es.eigenvalues().minCoeff()));
    }
}

Liouvillian::Liouvillian(const SystemParams& p, int cutoff)
    : cutoff_(cutoff),
      dim_((cutoff + 1) * (cutoff + 1)),
      nbar_(p.nbar),
      kappa_(p.kappa),
      gamma_L_(p.gamma_L),
      gamma_R_(p.gamma_R) {
    if (cutoff < 1) throw ValidationError("cutoff must be >= 1");
    if (dim_ > kMaxDim) {
        throw CutoffTooLarge("two-mode dimension " + std::to_string(dim_) +
                             " exceeds the dense budget of " +
                             std::to_string(kMaxDim));
    }
    const int levels = cutoff + 1;
    const Eigen::MatrixXcd a = annihilation(levels);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(levels, levels);
    m1_ = kron(a, id);  // mode-1 index major
    m2_ = kron(id, a);

    const cplx eip = std::polar(1.0, p.phase);
    M_L_ = m1_ + eip * m2_;
    M_R_ = m1_ + std::conj(eip) * m2_;

    // rotating frame at the resonant drive: the number terms drop out and
    // the drive becomes static
    const cplx I(0.0, 1.0);
    Eigen::MatrixXcd h =
        p.drive_amp * (m1_.adjoint() + m1_) -
        0.5 * I * p.gamma_L *
            (eip * m1_.adjoint() * m2_ - std::conj(eip) * m2_.adjoint() * m1_) -
        0.5 * I * p.gamma_R *
            (eip * m2_.adjoint() * m1_ - std::conj(eip) * m1_.adjoint() * m2_);

    Eigen::MatrixXcd damp =
        p.gamma_L * (M_L_.adjoint() * M_L_) +
        p.gamma_R * (M_R_.adjoint() * M_R_) +
        p.kappa * (p.nbar + 1.0) *
            (m1_.adjoint() * m1_ + m2_.adjoint() * m2_) +
        p.kappa * p.nbar * (m1_ * m1_.adjoint() + m2_ * m2_.adjoint());
    h_eff_ = h - 0.5 * I * damp;
}

Eigen::MatrixXcd Liouvillian::apply(const Eigen::MatrixXcd& rho) const {
    const cplx I(0.0, 1.0);
    Eigen::MatrixXcd out = -I * (h_eff_ * rho - rho * h_eff_.adjoint());
    if (gamma_L_ != 0.0) out.noalias() += gamma_L_ * (M_L_ * rho * M_L_.adjoint());
    if (gamma_R_ != 0.0) out.noalias() += gamma_R_ * (M_R_ * rho * M_R_.adjoint());
    if (kappa_ != 0.0) {
        out.noalias() += kappa_ * (nbar_ + 1.0) * (m1_ * rho * m1_.adjoint());
        out.noalias() += kappa_ * (nbar_ + 1.0) * (m2_ * rho * m2_.adjoint());
        if (nbar_ != 0.0) {
            out.noalias() += kappa_ * nbar_ * (m1_.adjoint() * rho * m1_);
            out.noalias() += kappa_ * nbar_ * (m2_.adjoint() * rho * m2_);
        }
    }
    return out;
}

Liouvillian build_generator(const SystemParams& p, int cutoff) {
    return Liouvillian(p, cutoff);
}

double tail_mass(const DensityMatrix& rho) {
    const int levels = rho.cutoff + 1;
    const int top = rho.cutoff;
    double mass = 0.0;
    for (int j = 0; j < levels; ++j) {
        mass += rho.data(top * levels + j, top * levels + j).real();
        mass += rho.data(j * levels + top, j * levels + top).real();
    }
    mass -= rho.data(top * levels + top, top * levels + top).real();
    return mass;
}

std::vector<DensityMatrix> oracle_evolve(const SystemParams& p, int cutoff,
                                         double t_end, int n_samples,
                                         const OracleOptions& opt) {
    if (!(t_end > 0.0)) throw ValidationError("t_end must be positive");
    if (n_samples < 2) throw ValidationError("n_samples must be >= 2");

    if (opt.check_gate) {
        // heuristic truncation-validity gate on the expected occupation
        try {
            auto [m1, m2] = steady_means(p);
            const double occ =
                std::max(std::norm(m1), std::norm(m2)) + p.nbar;
            if (occ > cutoff / 4.0) {
                throw ValidationError(
                    "expected steady occupation " + std::to_string(occ) +
                    " too large for cutoff " + std::to_string(cutoff) +
                    "; reduce the drive");
            }
        } catch (const SteadyStateUndefined&) {
            // no steady prediction available; the tail check still guards
        }
    }

    const Liouvillian gen(p, cutoff);
    const int dim = gen.dim();

    DensityMatrix rho;
    rho.cutoff = cutoff;
    rho.data = Eigen::MatrixXcd::Zero(dim, dim);
    rho.data(0, 0) = 1.0;  // two-mode vacuum

    std::vector<DensityMatrix> samples;
    samples.reserve(n_samples);
    samples.push_back(rho);

    const double sample_dt = t_end / (n_samples - 1);
    const double dt_target = opt.dt_alpha / p.alpha;
    const int steps_per_sample =
        std::max(1, static_cast<int>(std::ceil(sample_dt / dt_target)));
    const double dt = sample_dt / steps_per_sample;

    Eigen::MatrixXcd k1(dim, dim), k2(dim, dim), k3(dim, dim), k4(dim, dim);
    for (int s = 1; s < n_samples; ++s) {
        for (int step = 0; step < steps_per_sample; ++step) {
            k1 = gen.apply(rho.data);
            k2 = gen.apply(rho.data + 0.5 * dt * k1);
            k3 = gen.apply(rho.data + 0.5 * dt * k2);
            k4 = gen.apply(rho.data + dt * k3);
            rho.data += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        const double tail = tail_mass(rho);
        if (tail > opt.tail_threshold) {
            throw TailMassExceeded(
                "top-level population " + std::to_string(tail) + " at t = " +
                std::to_string(s * sample_dt) + "; truncation invalid");
        }
        samples.push_back(rho);
    }
    return samples;
}

MomentState oracle_moments(const DensityMatrix& rho) {
    const int levels = rho.cutoff + 1;
    const Eigen::MatrixXcd a = annihilation(levels);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(levels, levels);
    const Eigen::MatrixXcd m1 = kron(a, id);
    const Eigen::MatrixXcd m2 = kron(id, a);
    const auto& r = rho.data;

    auto expect = [&](const Eigen::MatrixXcd& op) {
        return (op * r).trace();
    };

    MomentState s;
    s.m1 = expect(m1);
    s.m2 = expect(m2);
    s.m1_sq = expect(m1 * m1);
    s.m2_sq = expect(m2 * m2);
    s.n1 = real_checked(expect(m1.adjoint() * m1), 1.0 + std::abs(s.m1));
    s.n2 = real_checked(expect(m2.adjoint() * m2), 1.0 + std::abs(s.m2));
    s.m1m2 = expect(m1 * m2);
    s.m1d_m2 = expect(m1.adjoint() * m2);
    return s;
}

Eigen::MatrixXcd reduced_charger(const DensityMatrix& rho) {
    const int levels = rho.cutoff + 1;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(levels, levels);
    for (int i = 0; i < levels; ++i)
        for (int k = 0; k < levels; ++k)
            for (int j = 0; j < levels; ++j)
                out(i, k) += rho.data(i * levels + j, k * levels + j);
    return out;
}

Eigen::MatrixXcd reduced_battery(const DensityMatrix& rho) {
    const int levels = rho.cutoff + 1;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(levels, levels);
    for (int j = 0; j < levels; ++j)
        for (int k = 0; k < levels; ++k)
            for (int i = 0; i < levels; ++i)
                out(j, k) += rho.data(i * levels + j, i * levels + k);
    return out;
}

double oracle_ergotropy_spectral(const Eigen::MatrixXcd& rho_mode,
                                 double omega0) {
    const int levels = static_cast<int>(rho_mode.rows());
    double e_mean = 0.0;
    for (int n = 0; n < levels; ++n) {
        e_mean += omega0 * (n + 0.5) * rho_mode(n, n).real();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_mode,
                                                       Eigen::EigenvaluesOnly);
    // eigenvalues ascend; the passive state pairs them descending with the
    // ascending level energies
    double e_passive = 0.0;
    for (int k = 0; k < levels; ++k) {
        const double lam = es.eigenvalues()(levels - 1 - k);
        e_passive += omega0 * (k + 0.5) * lam;
    }
    return e_mean - e_passive;
}

double oracle_coherence(const Eigen::MatrixXcd& rho_mode) {
    const int levels = static_cast<int>(rho_mode.rows());
    auto entropy_bits = [](double lam) {
        return (lam > 1e-15) ? -lam * std::log2(lam) : 0.0;
    };
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_mode,
                                                       Eigen::EigenvaluesOnly);
    double s_rho = 0.0;
    for (int k = 0; k < levels; ++k) s_rho += entropy_bits(es.eigenvalues()(k));
    double s_diag = 0.0;
    for (int n = 0; n < levels; ++n) {
        s_diag += entropy_bits(rho_mode(n, n).real());
    }
    const double c = s_diag - s_rho;
    return (c < 0.0) ? 0.0 : c;
}

}  // namespace chiralqb
