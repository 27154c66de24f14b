#ifndef CHIRALQB_MOMENTS_HPP
#define CHIRALQB_MOMENTS_HPP

#include <complex>
#include <vector>

namespace chiralqb {

using cplx = std::complex<double>;

// The eight operator moments that close under the model's equations of
// motion. Mode 1 is the charger, mode 2 the battery.
struct MomentState {
    cplx m1{};      // <m1>
    cplx m2{};      // <m2>
    cplx m1_sq{};   // <m1^2>
    cplx m2_sq{};   // <m2^2>
    double n1 = 0;  // <m1^dag m1>
    double n2 = 0;  // <m2^dag m2>
    cplx m1m2{};    // <m1 m2>
    cplx m1d_m2{};  // <m1^dag m2>; <m1 m2^dag> is its conjugate
};

struct Trajectory {
    std::vector<double> times;        // strictly increasing, times[0] == 0
    std::vector<MomentState> states;  // states[0] is the vacuum
};

}  // namespace chiralqb

#endif
