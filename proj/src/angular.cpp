#include "rydkick/angular.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_coupling.h>

#include "rydkick/errors.hpp"

namespace rydkick {

namespace {

// GSL aborts the process through its default handler; disable it once and
// check status codes instead.
const bool kGslHandlerOff = [] {
  gsl_set_error_handler_off();
  return true;
}();

} // namespace

double wigner3j(int l1, int l2, int l3, int m1, int m2, int m3) {
  (void)kGslHandlerOff;
  if (l1 < 0 || l2 < 0 || l3 < 0)
    throw DomainError("negative angular momentum in 3j symbol");
  gsl_sf_result res;
  // GSL takes doubled arguments to cover half-integer momenta.
  int status = gsl_sf_coupling_3j_e(2 * l1, 2 * l2, 2 * l3, 2 * m1, 2 * m2,
                                    2 * m3, &res);
  if (status == GSL_EDOM)
    return 0.0; // violated selection rules are a zero, not an error
  if (status != GSL_SUCCESS)
    throw DomainError(std::string("3j evaluation failed: ") +
                      gsl_strerror(status));
  return res.val;
}

bool multipole_allowed(int la, int lb, int L) {
  if ((la + lb + L) % 2 != 0)
    return false;
  return std::abs(la - lb) <= L && L <= la + lb;
}

double angular_coupling(int la, int lb, int L, int m) {
  if (la < 0 || lb < 0 || L < 0)
    throw DomainError("negative angular momentum in coupling factor");
  if (!multipole_allowed(la, lb, L))
    return 0.0;
  if (std::abs(m) > la || std::abs(m) > lb)
    return 0.0;
  double sign = (m % 2 == 0) ? 1.0 : -1.0;
  return sign * std::sqrt(double((2 * la + 1) * (2 * lb + 1))) *
         wigner3j(la, L, lb, 0, 0, 0) * wigner3j(la, L, lb, -m, 0, m);
}

} // namespace rydkick
