#ifndef QMCERT_QUATERNION_HPP
#define QMCERT_QUATERNION_HPP

#include <string>
#include <vector>

#include "qmcert/numberfield.hpp"

namespace qmcert {

/// A place of Q: a finite prime or the infinite place.
struct Place {
    bool infinite = false;
    Int p = 0;

    static Place at_infinity() { return {true, 0}; }
    static Place finite(Int prime) { return {false, std::move(prime)}; }
    bool operator==(const Place& o) const { return infinite == o.infinite && p == o.p; }
    bool operator<(const Place& o) const
    {
        if (infinite != o.infinite) return !infinite;  // finite places first
        return p < o.p;
    }
    std::string str() const { return infinite ? "infinity" : p.get_str(); }
};

/// Hilbert symbol (a, b)_v in {+1, -1} for nonzero rationals, by the
/// classical local formulas (valuations and Legendre symbols at odd p, the
/// epsilon/omega mod-8 formulas at 2, signs at infinity).
int hilbert_symbol(const Rat& a, const Rat& b, const Place& v);

/// Places where (a,b) ramifies; candidates are the primes dividing 2ab and
/// infinity.  The product formula (even cardinality) is asserted.
std::vector<Place> ramification_set(const Int& a, const Int& b);

struct QuaternionAlgebra {
    Int a, b;                   // presentation (a, b / Q)
    std::vector<Place> ram;     // derived ramified places
    Int d;                      // product of the finite ramified primes
    std::vector<Int> d_primes;  // those primes, sorted

    bool is_indefinite() const;
};

QuaternionAlgebra quaternion_from_presentation(const Int& a, const Int& b);

/// Deterministic (|a|+|b|, a, b)-ordered search for a presentation with
/// ramification set exactly the primes dividing d; the search bound starts
/// at `bound` and doubles until a presentation is found.
QuaternionAlgebra find_presentation(const Int& d, long bound = 200);

/// True iff B (x) Q(sqrt(-q)) is a division algebra, i.e. some prime
/// divisor of d splits in Q(sqrt(-q)).
bool nonsplit_over_imag_quad(const QuaternionAlgebra& B, const Int& q);

struct CongruenceClasses {
    Int modulus;                 // 8 * prod of odd primes dividing d
    std::vector<Int> residues;   // sorted; q nonsplit iff q mod modulus in list
};

/// The exact residue classes q mod (8 * prod odd p | d) on which
/// nonsplit_over_imag_quad is true, restricted to classes that can contain a
/// prime (units mod M, plus the primes dividing M themselves).
CongruenceClasses congruence_classes_nonsplit(const Int& d);

/// B (x) K splits iff at every prime p | d all local degrees e_i*f_i of K
/// above p are even (the local division algebra splits exactly over
/// even-degree extensions of Q_p).
bool splits_over_K(const QuaternionAlgebra& B, const NumberField& K);

}  // namespace qmcert

#endif
