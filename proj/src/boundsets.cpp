#include "qmcert/boundsets.hpp"

#include <algorithm>
#include <set>
#include <thread>

#include "qmcert/primes.hpp"

namespace qmcert {

std::vector<FrobeniusRoot> frobenius_roots(const Int& q)
{
    if (!is_prime(q)) throw input_error("frobenius_roots: q must be prime");
    Int bound = isqrt(4 * q);  // a^2 = 4q is impossible for prime q
    std::vector<FrobeniusRoot> out;
    for (Int a = -bound; a <= bound; ++a) out.push_back({a, q});
    return out;
}

Int beta_power_trace(const FrobeniusRoot& root, unsigned long m)
{
    Int t0 = 2, t1 = -root.a;
    if (m == 0) return t0;
    if (m == 1) return t1;
    for (unsigned long k = 1; k < m; ++k) {
        Int t2 = -root.a * t1 - root.q * t0;
        t0 = t1;
        t1 = t2;
    }
    return t1;
}

const std::vector<unsigned>& exponent_values(Variant v)
{
    static const std::vector<unsigned> primed{0, 4, 6, 8, 12};
    static const std::vector<unsigned> unprimed{0, 8, 12, 16, 24};
    return v == Variant::Primed ? primed : unprimed;
}

unsigned long weil_power(Variant v, const Int& h)
{
    if (!fits_ulong(h)) throw input_error("class number too large");
    unsigned long hl = mpz_get_ui(h.get_mpz_t());
    return (v == Variant::Primed ? 12ul : 24ul) * hl;
}

FieldElement alpha_power(const NumberField& K, const FieldElement& alpha,
                         const ExponentVector& eps)
{
    if (eps.a.size() != K.automorphism_count())
        throw input_error("exponent vector length mismatch");
    FieldElement result = K.one();
    for (unsigned i = 0; i < eps.a.size(); ++i) {
        if (eps.a[i] == 0) continue;
        FieldElement conj = K.apply_automorphism(i, alpha);
        result = K.mul(result, K.pow(conj, Int(eps.a[i])));
    }
    return result;
}

Int norm_value_for(const NumberField& K, const FieldElement& A, const FrobeniusRoot& root,
                   unsigned long m)
{
    Int t = beta_power_trace(root, m);
    Int qm = pow_ui(root.q, m);
    // A^2 - t*A + q^m
    FieldElement val = K.add(K.sub(K.mul(A, A), K.mul_int(A, t)), K.mul_int(K.one(), qm));
    return K.norm_integral(val);
}

Int norm_value(const NumberField& K, const FieldElement& alpha, const ExponentVector& eps,
               const FrobeniusRoot& root, unsigned long m)
{
    return norm_value_for(K, alpha_power(K, alpha, eps), root, m);
}

std::vector<Int> norm_value_split_factors(const NumberField& K, const FieldElement& A,
                                          const FrobeniusRoot& root, unsigned long m)
{
    // beta = (-a + s*sqrt(m0)) / 2 with a^2 - 4q = s^2 m0, m0 squarefree
    Int disc = root.a * root.a - 4 * root.q;
    Int s = 1, m0 = disc;
    // extract the square part
    auto fac = factorize(abs(disc));
    if (!fac.complete) throw internal_error("cannot factor root discriminant");
    for (const auto& [p, e] : fac.factors)
        for (unsigned i = 0; i < e / 2; ++i) s *= p;
    m0 = divexact(disc, s * s);

    auto wit = K.sqrt_witness(m0);
    if (!wit) return {};  // beta outside K: the zero product stays excluded

    std::vector<Int> out;
    for (int pm : {+1, -1}) {
        // beta = (-a +- s*w)/2
        FieldElement sw = K.mul_int(*wit, pm > 0 ? s : Int(-s));
        FieldElement num = K.sub(sw, K.mul_int(K.one(), root.a));
        std::vector<Rat> half(num.coords());
        for (auto& c : half) {
            c /= 2;
            c.canonicalize();
        }
        FieldElement beta = K.element(half);
        FieldElement betam = K.pow(beta, Int(static_cast<long>(m)));
        FieldElement factor = K.sub(A, betam);
        if (factor.is_zero()) continue;
        Rat nv = K.norm(factor);
        if (nv.get_den() != 1) throw internal_error("non-integral factor norm");
        out.push_back(Int(nv.get_num()));
    }
    return out;
}

// ---------------------------------------------------------------------------
// enumeration

namespace {

struct TupleValue {
    size_t flat_index;
    Int value;              // 0 when excluded
    std::vector<Int> split; // nonzero factor norms when the product vanished
    Int q;
    std::vector<unsigned> eps;
    Int a;
};

}  // namespace

EnumerationOutcome build_exceptional_sets(const NumberField& K, Variant variant,
                                          const EnumerationOptions& opts)
{
    EnumerationOutcome out;
    const auto& values = exponent_values(variant);
    const auto& gens = K.class_generators();
    if (gens.empty())
        throw input_error("build_exceptional_sets: the field spec supplies no class generators");

    std::vector<unsigned> support;
    if (opts.eps_support) {
        for (unsigned idx : *opts.eps_support) {
            if (idx >= K.automorphism_count())
                throw input_error("eps support index out of range");
            support.push_back(idx);
        }
        std::sort(support.begin(), support.end());
        support.erase(std::unique(support.begin(), support.end()), support.end());
    } else {
        for (unsigned i = 0; i < K.automorphism_count(); ++i) support.push_back(i);
    }

    // budget gate: |values|^|support|
    Int tuple_count = pow_ui(Int(static_cast<long>(values.size())), support.size());
    out.tuple_count = tuple_count;
    out.tuple_count_expr =
        std::to_string(values.size()) + "^" + std::to_string(support.size());
    if (tuple_count > opts.tuple_budget) {
        out.feasible = false;
        out.infeasible_reason = "enumeration infeasible at this degree: " +
                                out.tuple_count_expr + " = " + tuple_count.get_str() +
                                " exponent tuples exceed the budget " +
                                opts.tuple_budget.get_str();
        return out;
    }
    out.feasible = true;

    unsigned long m = weil_power(variant, K.class_number());
    unsigned long ntuples = mpz_get_ui(tuple_count.get_mpz_t());

    // per-generator root lists and flat index layout:
    // index = ((gen_idx * ntuples) + eps_idx) * nroots(gen) compressed below
    std::vector<std::vector<FrobeniusRoot>> roots;
    std::vector<size_t> offsets{0};
    for (const auto& g : gens) {
        roots.push_back(frobenius_roots(g.q));
        offsets.push_back(offsets.back() + ntuples * roots.back().size());
    }
    size_t total = offsets.back();

    auto decode = [&](size_t flat, size_t& gi, size_t& ei, size_t& ri) {
        gi = 0;
        while (flat >= offsets[gi + 1]) ++gi;
        size_t local = flat - offsets[gi];
        size_t nr = roots[gi].size();
        ei = local / nr;
        ri = local % nr;
    };

    auto eps_of = [&](size_t ei) {
        ExponentVector eps;
        eps.a.assign(K.automorphism_count(), 0);
        size_t rem = ei;
        for (size_t pos = 0; pos < support.size(); ++pos) {
            eps.a[support[pos]] = values[rem % values.size()];
            rem /= values.size();
        }
        return eps;
    };

    // pre-warm the shared sieve so worker threads never grow it concurrently
    primes_up_to(opts.trial_bound);

    unsigned nthreads = std::max(1u, opts.threads);
    std::vector<std::vector<TupleValue>> results(nthreads);
    auto worker = [&](unsigned tid) {
        // cache A = alpha^eps across the inner root loop
        size_t cached_gi = SIZE_MAX, cached_ei = SIZE_MAX;
        FieldElement A;
        for (size_t flat = tid; flat < total; flat += nthreads) {
            size_t gi, ei, ri;
            decode(flat, gi, ei, ri);
            if (gi != cached_gi || ei != cached_ei) {
                A = alpha_power(K, gens[gi].alpha, eps_of(ei));
                cached_gi = gi;
                cached_ei = ei;
            }
            const FrobeniusRoot& root = roots[gi][ri];
            TupleValue tv;
            tv.flat_index = flat;
            tv.q = gens[gi].q;
            tv.eps = eps_of(ei).a;
            tv.a = root.a;
            tv.value = norm_value_for(K, A, root, m);
            if (sign(tv.value) == 0) tv.split = norm_value_split_factors(K, A, root, m);
            results[tid].push_back(std::move(tv));
        }
    };
    if (nthreads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> threads;
        for (unsigned t = 0; t < nthreads; ++t) threads.emplace_back(worker, t);
        for (auto& t : threads) t.join();
    }

    // deterministic merge in flat-index order
    std::vector<TupleValue> merged(total);
    for (auto& chunk : results)
        for (auto& tv : chunk) merged[tv.flat_index] = std::move(tv);

    ExceptionalSets sets;
    sets.variant = variant;
    sets.restricted_support = support.size() != K.automorphism_count();
    sets.tuples_enumerated = static_cast<unsigned long>(total);

    FactorOptions fopts;
    fopts.trial_bound = opts.trial_bound;
    fopts.rho_iterations = opts.rho_iterations;
    fopts.seed = opts.seed;

    // many tuples share a value (the roots +-a give equal values since the
    // Weil power is even, and exponent tuples in one Galois orbit give
    // conjugate elements of equal norm); factor each distinct value once
    std::map<Int, Factorization> fcache;
    std::set<Int> n0;
    std::set<Int> probable;
    std::set<Int> incomplete_seen;
    for (const TupleValue& tv : merged) {
        std::vector<Int> to_factor;
        if (sign(tv.value) != 0)
            to_factor.push_back(tv.value);
        else if (!tv.split.empty())
            to_factor.insert(to_factor.end(), tv.split.begin(), tv.split.end());
        else
            ++sets.zero_values;
        for (const Int& v : to_factor) {
            Int key = abs(v);
            auto it = fcache.find(key);
            if (it == fcache.end()) it = fcache.emplace(key, factorize(v, fopts)).first;
            const Factorization& fac = it->second;
            if (!fac.complete) {
                sets.factorization_complete = false;
                if (incomplete_seen.insert(key).second) sets.incomplete_values.push_back(key);
            }
            for (const auto& [p, e] : fac.factors) {
                if (n0.insert(p).second)
                    sets.n0_witnesses[p] = PrimeWitness{tv.q, tv.eps, tv.a};
            }
            probable.insert(fac.probable_primes.begin(), fac.probable_primes.end());
        }
    }
    sets.N0.assign(n0.begin(), n0.end());
    sets.probable_primes.assign(probable.begin(), probable.end());

    std::set<Int> tset{Int(2), Int(3)};
    for (const auto& g : gens) tset.insert(g.q);
    sets.T.assign(tset.begin(), tset.end());

    sets.Ram = K.ramified_primes();

    std::set<Int> n1(n0.begin(), n0.end());
    n1.insert(tset.begin(), tset.end());
    n1.insert(sets.Ram.begin(), sets.Ram.end());
    sets.N1.assign(n1.begin(), n1.end());

    out.sets = std::move(sets);
    return out;
}

bool IrreducibilityBound::admits(const Int& p) const
{
    if (p <= four_q) return false;
    if (divisible(d, p)) return false;
    return !std::binary_search(excluded.begin(), excluded.end(), p);
}

IrreducibilityBound assemble_irreducibility_bound(const NumberField& K,
                                                  const QuaternionAlgebra& B,
                                                  const ExceptionalSets& primed, const Int& q)
{
    if (primed.variant != Variant::Primed)
        throw input_error("irreducibility bound needs the primed sets");
    IrreducibilityBound ib;
    ib.q = q;
    ib.four_q = 4 * q;
    ib.max_prime_of_d = B.d_primes.empty() ? Int(0) : B.d_primes.back();
    ib.max_N1 = primed.N1.empty() ? Int(0) : primed.N1.back();
    ib.constant = std::max({ib.four_q, ib.max_prime_of_d, ib.max_N1});
    ib.complete = primed.factorization_complete && !primed.restricted_support;
    ib.predicate = "p > " + ib.four_q.get_str() + ", p does not divide " + B.d.get_str() +
                   ", p not in N'1(K)";
    ib.d = B.d;
    ib.excluded = primed.N1;
    return ib;
}

bool Gamma0Report::admits(const Int& p) const
{
    if (p <= 4 * q || p < 11 || p == 13) return false;
    if (divisible(d, p)) return false;
    return !std::binary_search(excluded_union.begin(), excluded_union.end(), p);
}

Gamma0Report assemble_gamma0_report(const NumberField& K, const QuaternionAlgebra& B,
                                    const ExceptionalSets& primed,
                                    const ExceptionalSets& unprimed, const Int& q)
{
    if (primed.variant != Variant::Primed || unprimed.variant != Variant::Unprimed)
        throw input_error("gamma0 report needs both variants");
    Gamma0Report r;
    r.q = q;
    r.d = B.d;
    std::set<Int> uni(primed.N1.begin(), primed.N1.end());
    uni.insert(unprimed.N1.begin(), unprimed.N1.end());
    r.excluded_union.assign(uni.begin(), uni.end());
    r.b_splits_over_K = splits_over_K(B, K);
    r.predicate = "p > " + Int(4 * q).get_str() + ", p >= 11, p != 13, p does not divide " +
                  B.d.get_str() + ", p not in N1(K) | N'1(K)";
    r.conclusion = r.b_splits_over_K
                       ? "the Gamma0(p)-type curve has no K-points for such p"
                       : "K-points of the Gamma0(p)-type curve are elliptic points of order 2 "
                         "or 3 for such p";
    r.complete = primed.factorization_complete && unprimed.factorization_complete &&
                 !primed.restricted_support && !unprimed.restricted_support;
    return r;
}

}  // namespace qmcert
