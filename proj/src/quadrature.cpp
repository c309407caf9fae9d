#include "mdeconv/quadrature.hpp"

#include <cmath>

namespace mdeconv {

namespace {

using cdouble = std::complex<double>;
using Fn = std::function<cdouble(double)>;

struct Panel {
  cdouble value{0.0, 0.0};
  double error = 0.0;
};

// One level of Simpson refinement on [a, b]; whole = S(a,b), recurses until
// the classic |S2 - S| / 15 estimate meets tol.
Panel simpson_recurse(const Fn& f, double a, double b, cdouble fa, cdouble fb,
                      cdouble fm, cdouble whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const cdouble flm = f(lm);
  const cdouble frm = f(rm);
  const cdouble left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const cdouble right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const cdouble delta = left + right - whole;
  const double err = std::abs(delta) / 15.0;
  if (err <= tol || depth <= 0) {
    Panel p;
    p.value = left + right + delta / 15.0;
    p.error = err;
    if (depth <= 0 && err > tol)
      throw AccuracyError("adaptive quadrature failed to converge", err);
    return p;
  }
  const Panel pl = simpson_recurse(f, a, m, fa, fm, flm, left, 0.5 * tol, depth - 1);
  const Panel pr = simpson_recurse(f, m, b, fm, fb, frm, right, 0.5 * tol, depth - 1);
  Panel p;
  p.value = pl.value + pr.value;
  p.error = pl.error + pr.error;
  return p;
}

}  // namespace

QuadratureResult integrate_adaptive(const Fn& f, double a, double b, double abs_tol,
                                    int max_depth) {
  if (a == b) return {cdouble{0.0, 0.0}, 0.0};
  const double m = 0.5 * (a + b);
  const cdouble fa = f(a);
  const cdouble fb = f(b);
  const cdouble fm = f(m);
  const cdouble whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const Panel p = simpson_recurse(f, a, b, fa, fb, fm, whole, abs_tol, max_depth);
  return {p.value, p.error};
}

double integrate_adaptive_real(const std::function<double(double)>& f, double a,
                               double b, double abs_tol, int max_depth) {
  const auto wrapped = [&f](double x) { return cdouble{f(x), 0.0}; };
  return integrate_adaptive(wrapped, a, b, abs_tol, max_depth).value.real();
}

double trapezoid_uniform(const std::function<double(double)>& f, double a, double b,
                         std::size_t n) {
  const double h = (b - a) / static_cast<double>(n);
  double sum = 0.5 * (f(a) + f(b));
  for (std::size_t i = 1; i < n; ++i) sum += f(a + h * static_cast<double>(i));
  return sum * h;
}

}  // namespace mdeconv
