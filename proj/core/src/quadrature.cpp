#include "extime/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/sinh_sinh.hpp>

namespace extime {

namespace {
template <class F>
auto counted(const F& f, std::size_t& n) {
  return [&f, &n](double x) {
    ++n;
    return f(x);
  };
}
}  // namespace

QuadResult integrate_line(const std::function<double(double)>& f, double a,
                          double b, double tol) {
  QuadResult r;
  double err = 0.0;
  r.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      counted(f, r.evals), a, b, 12, tol, &err);
  r.abs_error_est = err;
  return r;
}

QuadResult integrate_half_line(const std::function<double(double)>& f,
                               double tol) {
  QuadResult r;
  boost::math::quadrature::exp_sinh<double> integrator;
  double err = 0.0, l1 = 0.0;
  r.value = integrator.integrate(counted(f, r.evals), tol, &err, &l1);
  r.abs_error_est = err * std::max(1.0, l1);
  return r;
}

QuadResult integrate_real_line(const std::function<double(double)>& f,
                               double tol) {
  QuadResult r;
  boost::math::quadrature::sinh_sinh<double> integrator;
  double err = 0.0, l1 = 0.0;
  r.value = integrator.integrate(counted(f, r.evals), tol, &err, &l1);
  r.abs_error_est = err * std::max(1.0, l1);
  return r;
}

}  // namespace extime
