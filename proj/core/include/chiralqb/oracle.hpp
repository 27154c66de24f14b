#ifndef CHIRALQB_ORACLE_HPP
#define CHIRALQB_ORACLE_HPP

#include <Eigen/Dense>
#include <vector>

#include "chiralqb/moments.hpp"
#include "chiralqb/params.hpp"

namespace chiralqb {

// Two-mode density matrix truncated at Fock level `cutoff` per mode.
// Basis ordering is mode-1 major: index = i1*(cutoff+1) + i2.
struct DensityMatrix {
    int cutoff = 0;
    Eigen::MatrixXcd data;  // (cutoff+1)^2 x (cutoff+1)^2
};

// Hermiticity / unit trace / positivity, with the tolerances the evolved
// states are expected to hold.
void check_density_matrix(const DensityMatrix& rho, double herm_tol = 1e-12,
                          double trace_tol = 1e-10, double eig_tol = 1e-8);

// The full Liouvillian of the master equation in the rotating frame:
// commutator with Omega*(m1^dag + m1) + H_L + H_R, the two collective
// waveguide dissipators, and the local thermal ones.
class Liouvillian {
  public:
    Liouvillian(const SystemParams& p, int cutoff);

    int cutoff() const { return cutoff_; }
    int dim() const { return dim_; }

    // d(rho)/dt
    Eigen::MatrixXcd apply(const Eigen::MatrixXcd& rho) const;

    // single-mode annihilation operators embedded in the two-mode space
    const Eigen::MatrixXcd& mode1() const { return m1_; }
    const Eigen::MatrixXcd& mode2() const { return m2_; }

  private:
    int cutoff_;
    int dim_;
    double nbar_;
    double kappa_;
    double gamma_L_;
    double gamma_R_;
    Eigen::MatrixXcd m1_, m2_;        // annihilation ops
    Eigen::MatrixXcd M_L_, M_R_;      // collective jump ops
    Eigen::MatrixXcd h_eff_;          // H - (i/2) sum_k gamma_k L_k^dag L_k
};

// Throws CutoffTooLarge beyond the dense-representation budget.
Liouvillian build_generator(const SystemParams& p, int cutoff);

struct OracleOptions {
    double dt_alpha = 0.01;        // fixed step, units of 1/alpha
    double tail_threshold = 1e-6;  // max tolerated top-level population
    bool check_gate = true;        // enforce the occupation validity gate
};

// Fixed-step RK4 evolution of the vacuum state, sampled on a uniform grid
// of n_samples points. Each sample is tail-mass checked; throws
// TailMassExceeded when the truncation stops being trustworthy.
std::vector<DensityMatrix> oracle_evolve(const SystemParams& p, int cutoff,
                                         double t_end, int n_samples,
                                         const OracleOptions& opt = {});

// All eight moments by trace against operator matrices.
MomentState oracle_moments(const DensityMatrix& rho);

// Partial traces. Mode-1 index is major, so tracing out the charger sums
// over the leading index.
Eigen::MatrixXcd reduced_charger(const DensityMatrix& rho);
Eigen::MatrixXcd reduced_battery(const DensityMatrix& rho);

// Spectral (unitary-extraction) ergotropy of a single-mode state:
// E - sum_k lambda_k(desc) * omega0*(k + 1/2).
double oracle_ergotropy_spectral(const Eigen::MatrixXcd& rho_mode,
                                 double omega0);

// Relative entropy of coherence against the Fock-basis diagonal, in bits.
double oracle_coherence(const Eigen::MatrixXcd& rho_mode);

// Total population with either mode at the top retained Fock level.
double tail_mass(const DensityMatrix& rho);

}  // namespace chiralqb

#endif
