#pragma once

namespace rydkick {

// Wigner 3j symbol (l1 l2 l3; m1 m2 m3) for integer arguments.
// Throws DomainError on negative l.
double wigner3j(int l1, int l2, int l3, int m1, int m2, int m3);

// Angular factor of a multipole-L matrix element between (la, m) and (lb, m):
//   (-1)^m sqrt((2 la + 1)(2 lb + 1)) (la L lb; 0 0 0) (la L lb; -m 0 m).
// Vanishes unless the triangle rule holds and la + lb + L is even.
double angular_coupling(int la, int lb, int L, int m);

// True when the multipole channel (la, lb, L) is open for a z-directed
// impulse: triangle inequality plus parity (la + lb + L even).
bool multipole_allowed(int la, int lb, int L);

} // namespace rydkick
