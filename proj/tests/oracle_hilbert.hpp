#ifndef QMCERT_TEST_ORACLE_HILBERT_HPP
#define QMCERT_TEST_ORACLE_HILBERT_HPP

#include "qmcert/bigint.hpp"

namespace qmcert::testing {

/// Brute-force Q_p-solvability of z^2 = a x^2 + b y^2 (nontrivial solution),
/// independent of the Hilbert-symbol formulas: after dividing a and b by
/// squares of p, a primitive solution mod p^3 (odd p) or 2^6 lifts by Hensel,
/// and conversely.  The search enumerates x (resp. y) over units with the
/// other variable and z ranging mod p^k via square-bitmap lookups.
bool hilbert_brute_force(long a, long b, long p);

/// Brute-force solvability over R: z^2 = a x^2 + b y^2 nontrivially.
bool hilbert_brute_force_real(long a, long b);

}  // namespace qmcert::testing

#endif
