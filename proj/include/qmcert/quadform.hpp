#ifndef QMCERT_QUADFORM_HPP
#define QMCERT_QUADFORM_HPP

#include <string>
#include <vector>

#include "qmcert/numberfield.hpp"

namespace qmcert {

/// Primitive positive-definite binary quadratic form a x^2 + b x y + c y^2.
struct QuadraticForm {
    Int a, b, c;
    Int discriminant() const { return b * b - 4 * a * c; }
    bool is_reduced() const;
    bool is_primitive() const;
    bool operator==(const QuadraticForm& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator<(const QuadraticForm& o) const;
};

/// Gauss reduction of a positive-definite form (disc < 0, a > 0).
QuadraticForm reduce_form(QuadraticForm f);

bool is_fundamental_discriminant(const Int& D);

/// All reduced primitive forms of fundamental discriminant D < 0, sorted.
std::vector<QuadraticForm> reduced_forms(const Int& D);

/// h(D) = number of reduced primitive forms; throws input_error when D is
/// not a negative fundamental discriminant.
Int class_number_imag(const Int& D);

/// Ramification index of p in the quadratic field Q(sqrt(m)), m squarefree,
/// decided by discriminant case analysis (p = 2 included).
unsigned quad_field_ramification(const Int& m, const Int& p);

// --- Hilbert class field containment -----------------------------------

enum class HcfOutcome { AllClear, ContainsHcf, Undetermined };

struct HcfVerdict {
    HcfOutcome outcome;
    Int subfield_m = 0;    // the F = Q(sqrt m) involved (ContainsHcf/Undetermined)
    std::string reason;

    struct SubfieldTrace {
        Int m;
        Int class_no;
        char branch;  // 'a'..'d' as in the case split
        bool cleared;
        std::string note;
    };
    std::vector<SubfieldTrace> trace;
};

/// Decides whether K contains the Hilbert class field of one of its
/// imaginary quadratic subfields, using exactly the case split:
///  (a) h(F) = 1: F is its own Hilbert class field and lies in K.
///  (b) 2h > [K:Q] or 2h does not divide [K:Q]: no room for H(F); cleared.
///  (c) 2h = [K:Q]: K could only be H(F) itself, which is unramified over F;
///      any prime with e_p(K) > e_p(F) clears F, otherwise Undetermined.
///  (d) 2h < [K:Q], 2h | [K:Q]: proper intermediate fields are not
///      enumerable here; Undetermined.
HcfVerdict hcf_containment_check(const NumberField& K);

}  // namespace qmcert

#endif
