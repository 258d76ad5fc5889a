#pragma once

#include <functional>

namespace extime {

struct QuadResult {
  double value = 0.0;
  double abs_error_est = 0.0;
  std::size_t evals = 0;
};

// Adaptive Gauss-Kronrod on a finite interval.
QuadResult integrate_line(const std::function<double(double)>& f, double a,
                          double b, double tol);

// Integral over (0, inf) of a function decaying at both ends.
QuadResult integrate_half_line(const std::function<double(double)>& f,
                               double tol);

// Integral over the whole real line (double-exponential decay assumed).
QuadResult integrate_real_line(const std::function<double(double)>& f,
                               double tol);

}  // namespace extime
