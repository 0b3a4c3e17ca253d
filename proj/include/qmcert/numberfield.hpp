#ifndef QMCERT_NUMBERFIELD_HPP
#define QMCERT_NUMBERFIELD_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmcert/intmatrix.hpp"
#include "qmcert/intpoly.hpp"

namespace qmcert {

struct CheckResult {
    std::string name;
    bool passed;
    std::string detail;
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    std::vector<std::string> assumptions;

    bool ok() const;
    const CheckResult* find(const std::string& name) const;
    void add(const std::string& name, bool passed, const std::string& detail = "");
    std::string first_failure() const;
};

/// A field-spec invariant failed; carries the full report.
struct verification_error : input_error {
    explicit verification_error(VerificationReport r);
    VerificationReport report;
};

/// Raw, unverified field description as read from a spec file.
struct FieldSpecData {
    std::string name;
    IntPolynomial defining_poly;
    std::vector<std::vector<Rat>> integral_basis;  // rows = basis vectors in power coords
    std::vector<std::vector<Rat>> automorphisms;   // g_sigma coefficients, low degree first
    Int class_number = 1;

    struct ClassGen {
        Int q;
        Int root;
        std::vector<Rat> alpha;  // integral-basis coordinates
    };
    std::vector<ClassGen> class_generators;

    struct QuadSub {
        Int m;
        std::vector<Rat> witness;  // integral-basis coordinates, witness^2 = m
    };
    std::vector<QuadSub> quadratic_subfields;

    struct ClaimedFactor {
        std::vector<std::vector<Rat>> generators;  // elements, integral-basis coordinates
        unsigned e = 1;
    };
    struct PrimeFactorization {
        Int p;
        std::vector<ClaimedFactor> factors;
    };
    std::vector<PrimeFactorization> prime_factorizations;

    bool assume_maximal = true;
    std::string source_path;
    std::string source_sha256;
};

class NumberField;

/// Element of K in integral-basis coordinates.
class FieldElement {
public:
    FieldElement() = default;
    explicit FieldElement(std::vector<Rat> coords);

    const std::vector<Rat>& coords() const { return c_; }
    size_t size() const { return c_.size(); }
    bool is_zero() const;
    bool is_integral() const;  // all denominators 1
    std::vector<Int> integer_coords() const;  // throws internal_error when not integral

    bool operator==(const FieldElement& o) const { return c_ == o.c_; }

private:
    std::vector<Rat> c_;
};

/// Full-rank lattice inside the ring of integers, held in column-style HNF.
class IntegralIdeal {
public:
    IntegralIdeal() = default;
    explicit IntegralIdeal(IntMatrix h) : h_(std::move(h)) {}

    const IntMatrix& hnf_matrix() const { return h_; }
    Int norm() const;  // covolume = product of diagonal pivots
    bool contains(const std::vector<Int>& v) const { return hnf_contains(h_, v); }
    bool operator==(const IntegralIdeal& o) const { return h_ == o.h_; }

private:
    IntMatrix h_;
};

struct SplittingData {
    Int p;
    std::vector<std::pair<unsigned, unsigned>> factors;  // (e_i, f_i), sorted
    unsigned g = 0;
    bool user_supplied = false;

    unsigned sum_ef() const;
    bool is_uniform() const;  // all (e_i, f_i) equal (always true for Galois K)
    unsigned e() const;       // uniform only
    unsigned f() const;       // uniform only
    bool splits_completely(unsigned degree) const;
};

enum class MaximalityStatus { Certified, Assumed, Refuted };

/// A verified number field: all asserted invariants of the spec have been
/// machine-checked (or recorded as assumptions), and the arithmetic kernel
/// (multiplication table, automorphism composition table, class generators)
/// is ready for use.
class NumberField {
public:
    /// Runs every invariant check; throws verification_error when one fails.
    static NumberField verify(const FieldSpecData& data);

    const VerificationReport& report() const { return report_; }
    const std::vector<std::string>& assumptions() const { return report_.assumptions; }
    const FieldSpecData& spec() const { return spec_; }
    const std::string& name() const { return spec_.name; }

    unsigned degree() const { return n_; }
    const IntPolynomial& defining_poly() const { return f_; }
    const Int& poly_disc() const { return disc_f_; }
    const Int& basis_disc() const { return disc_basis_; }
    const Int& index_in_basis() const { return index_; }  // [O : Z[theta]]
    const Int& class_number() const { return h_; }

    // --- elements -----------------------------------------------------
    FieldElement zero() const;
    FieldElement one() const;
    FieldElement theta() const;
    FieldElement element(std::vector<Rat> coords) const;
    FieldElement from_power_coords(const std::vector<Rat>& power) const;
    std::vector<Rat> to_power_coords(const FieldElement& x) const;

    FieldElement add(const FieldElement& a, const FieldElement& b) const;
    FieldElement sub(const FieldElement& a, const FieldElement& b) const;
    FieldElement mul(const FieldElement& a, const FieldElement& b) const;
    FieldElement mul_int(const FieldElement& a, const Int& s) const;
    FieldElement pow(const FieldElement& a, const Int& e) const;

    Rat norm(const FieldElement& x) const;
    Int norm_integral(const FieldElement& x) const;  // x integral

    // --- automorphisms -------------------------------------------------
    unsigned automorphism_count() const { return n_; }
    unsigned identity_automorphism() const { return identity_idx_; }
    FieldElement apply_automorphism(unsigned idx, const FieldElement& x) const;
    unsigned compose(unsigned i, unsigned j) const { return comp_table_[i][j]; }
    const std::vector<std::vector<unsigned>>& composition_table() const { return comp_table_; }
    unsigned index2_subgroup_count() const;

    // --- splitting ------------------------------------------------------
    /// Throws input_error("index divisor: ...") when p divides [O : Z[theta]]
    /// and no verified user factorization was supplied.
    SplittingData splitting_data(const Int& p) const;
    bool splits_completely(const Int& q) const;
    /// e_p = common ramification index of p (Galois), via splitting_data.
    unsigned ramification_index(const Int& p) const;
    /// Primes dividing the discriminant of the verified basis.  When basis
    /// maximality is assumed rather than certified this is an upper bound
    /// for Ram(K) (a superset only enlarges the exceptional sets).
    std::vector<Int> ramified_primes() const;
    bool ramified_set_is_upper_bound() const;
    std::vector<Int> roots_of_f_mod(const Int& q) const;

    MaximalityStatus maximality_status() const { return maximality_; }
    const std::vector<Int>& maximality_assumed_at() const { return max_assumed_at_; }
    const std::vector<Int>& maximality_refuted_at() const { return max_refuted_at_; }

    // --- ideals ----------------------------------------------------------
    IntegralIdeal whole_ring() const;
    IntegralIdeal ideal_from_generators(const std::vector<FieldElement>& gens) const;
    /// Degree-1 prime above q from a root r of f mod q; norm verified = q.
    IntegralIdeal ideal_from_prime(const Int& q, const Int& r) const;
    IntegralIdeal ideal_multiply(const IntegralIdeal& a, const IntegralIdeal& b) const;
    IntegralIdeal ideal_power(const IntegralIdeal& a, const Int& k) const;
    bool ideal_contains(const IntegralIdeal& I, const FieldElement& x) const;
    /// alpha integral, nonzero; true iff alpha in I and |N(alpha)| = N(I),
    /// which together say I = alpha * O.
    bool verify_principal_generator(const IntegralIdeal& I, const FieldElement& alpha) const;

    struct ClaimedIdealFactor {
        IntegralIdeal ideal;
        unsigned e;
    };
    /// Checks prod I_i^{e_i} = pO, norms are p-powers, sum e_i f_i = n, and
    /// each quotient O/I_i is a field (certified by an element whose minimal
    /// polynomial over F_p is irreducible of the right degree).
    SplittingData verify_prime_factorization(const Int& p,
                                             const std::vector<ClaimedIdealFactor>& claimed) const;

    // --- verified class data ---------------------------------------------
    struct VerifiedClassGen {
        Int q;
        Int root;
        FieldElement alpha;
        IntegralIdeal prime_ideal;
    };
    const std::vector<VerifiedClassGen>& class_generators() const { return classgens_; }

    struct VerifiedQuadSub {
        Int m;
        FieldElement witness;
    };
    const std::vector<VerifiedQuadSub>& quadratic_subfields() const { return quadsubs_; }
    /// Witness for sqrt(m) in K, when one was supplied and verified.
    std::optional<FieldElement> sqrt_witness(const Int& m) const;

    bool has_real_place() const { return real_places_ > 0; }
    unsigned real_place_count() const { return real_places_; }

    /// Canonical serialization of the verified automorphism data (used for
    /// the certificate hash).
    std::string automorphism_table_canonical() const;

private:
    NumberField() = default;
    std::vector<Rat> reduce_power_poly(std::vector<Rat> poly) const;  // mod f
    std::vector<Rat> compose_polys(const std::vector<Rat>& outer,
                                   const std::vector<Rat>& inner) const;
    std::vector<Int> reduce_mod_ideal(const IntMatrix& h, std::vector<Int> v) const;
    bool certify_field_quotient(const IntegralIdeal& I, const Int& p, unsigned fdeg) const;

    FieldSpecData spec_;
    VerificationReport report_;
    unsigned n_ = 0;
    IntPolynomial f_;
    Int disc_f_, disc_basis_, index_, h_;
    unsigned real_places_ = 0;

    std::vector<std::vector<Rat>> basis_;      // rows = basis in power coords
    std::vector<std::vector<Rat>> basis_inv_;  // power coords -> basis coords
    std::vector<std::vector<std::vector<Int>>> multable_;  // b_i * b_j in basis coords

    std::vector<std::vector<Rat>> autos_;  // reduced g_sigma, degree < n
    std::vector<std::vector<unsigned>> comp_table_;
    unsigned identity_idx_ = 0;

    MaximalityStatus maximality_ = MaximalityStatus::Certified;
    std::vector<Int> max_assumed_at_, max_refuted_at_;
    std::vector<Int> ram_primes_;

    std::map<Int, SplittingData> user_splittings_;
    std::vector<VerifiedClassGen> classgens_;
    std::vector<VerifiedQuadSub> quadsubs_;
};

/// Non-throwing variant: run all checks and return the report (failed checks
/// included) instead of a verified field object.
VerificationReport verify_field_spec(const FieldSpecData& data);

}  // namespace qmcert

#endif
