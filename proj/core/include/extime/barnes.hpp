#pragma once

#include "extime/special.hpp"

namespace extime {

// log of G(z + a; tau) / G(z + b; tau) where G is the Barnes double
// gamma normalized by G(u + 1; tau) = Gamma(u / tau) G(u; tau),
// G(1; tau) = 1.  Only ratios are exposed: the modular constants of G
// itself cancel and the ratio is what the Mellin closed forms consume.
// Arguments within 1e-9 of the zero lattice throw std::domain_error.
cplx log_barnes_g_ratio(cplx z, double a, double b, double tau);

}  // namespace extime
