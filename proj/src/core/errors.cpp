#include "oscspline/errors.hpp"

#include <sstream>

namespace oscspline {

namespace {
std::string describe_singular(double x, double xi) {
    std::ostringstream os;
    os.precision(17);
    os << "singular symbol: |phi| vanishes at (x=" << x << ", xi=" << xi << ")";
    return os.str();
}
}  // namespace

SingularSymbol::SingularSymbol(double x, double xi)
    : Error(describe_singular(x, xi)), x_(x), xi_(xi) {}

InterpolationUnstable::InterpolationUnstable(int k)
    : Error("interpolation unstable: symbol vanishes at frequency index k=" + std::to_string(k)),
      k_(k) {}

SingularJacobian::SingularJacobian(int iteration)
    : Error("singular Jacobian at Newton iteration " + std::to_string(iteration)),
      iteration_(iteration) {}

IntegrationFailure::IntegrationFailure(double time)
    : Error([time] {
          std::ostringstream os;
          os.precision(17);
          os << "integration produced a non-finite state at t=" << time;
          return os.str();
      }()),
      time_(time) {}

}  // namespace oscspline
