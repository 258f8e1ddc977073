#ifndef NLWAVE_CORE_HPP
#define NLWAVE_CORE_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nlwave {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

// Raised when a computation cannot deliver a trustworthy number.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Closed interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x) const { return x >= lo && x <= hi; }
  double length() const { return hi - lo; }
};

inline double japanese(double x) { return std::sqrt(1.0 + x * x); }

inline double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

inline void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

} // namespace nlwave

#endif
