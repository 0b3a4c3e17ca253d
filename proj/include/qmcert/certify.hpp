#ifndef QMCERT_CERTIFY_HPP
#define QMCERT_CERTIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "qmcert/boundsets.hpp"
#include "qmcert/jsonio.hpp"
#include "qmcert/quaternion.hpp"
#include "qmcert/shimura.hpp"

namespace qmcert {

struct CertifyOptions {
    bool gamma0 = false;        // also compute the unprimed sets and report
    bool skip_sets = false;     // hypothesis checks only; no enumeration
    Int budget = Int(10'000'000);
    uint64_t seed = 0;
    unsigned threads = 1;
    uint64_t rho_iterations = 200'000;
    Int q_ceiling = Int(1'000'000);
    std::optional<std::vector<unsigned>> eps_support;
};

struct QWitness {
    Int q;
    std::vector<Int> roots_mod_q;   // the linear factors of f mod q
    Int nonsplit_prime_of_d;        // a prime divisor of d splitting in Q(sqrt(-q))
};

/// Least prime q that splits completely in K with B (x) Q(sqrt(-q)) a
/// division algebra; nullopt when the ascending scan reaches the ceiling.
std::optional<QWitness> find_minimal_q(const NumberField& K, const QuaternionAlgebra& B,
                                       const Int& ceiling = Int(1'000'000));

/// Run the full hypothesis pipeline for (d, field spec) and assemble the
/// machine-readable certificate.  Failures degrade to partial certificates
/// with explicit failed-hypothesis reasons; the conclusion "finite" appears
/// only when the Galois verification, the Hilbert-class-field check and the
/// auxiliary-prime search all succeed.
Json certify(const Int& d, const FieldSpecData& field_data, const CertifyOptions& opts = {});

/// One row of the worked-example replay table.
struct ReplayRow {
    std::string name;
    bool pass;
    std::string expected;
    std::string got;
};

struct ReplayReport {
    std::vector<ReplayRow> rows;
    bool all_pass() const;
    Json to_json() const;
};

/// Re-runs every checkable claim of the worked-example section against
/// hard-coded values: splitting congruences, nonsplit congruence lists,
/// local-point emptiness primes, the (e,f,g) tables, Hasse verdicts for the
/// nine (d,K) pairs, the splitting-over-K table, the Hilbert-class-field
/// all-clears, minimal auxiliary primes, and the certified conclusions.
ReplayReport replay_paper_examples(const std::string& fields_dir);

}  // namespace qmcert

#endif
