#include "qmcert/primes.hpp"
#include <memory>

#include <algorithm>
#include <mutex>

namespace qmcert {

int jacobi_symbol(const Int& a_in, const Int& n_in)
{
    if (sign(n_in) <= 0 || divisible(n_in, 2)) throw input_error("jacobi_symbol: n must be odd and positive");
    Int a = mod_floor(a_in, n_in), n = n_in;
    int result = 1;
    while (sign(a) != 0) {
        while (divisible(a, 2)) {
            a = divexact(a, 2);
            unsigned long nm8 = mpz_fdiv_ui(n.get_mpz_t(), 8);
            if (nm8 == 3 || nm8 == 5) result = -result;
        }
        std::swap(a, n);
        if (mpz_fdiv_ui(a.get_mpz_t(), 4) == 3 && mpz_fdiv_ui(n.get_mpz_t(), 4) == 3)
            result = -result;
        a = mod_floor(a, n);
    }
    return n == 1 ? result : 0;
}

namespace {

bool miller_rabin_witness(const Int& n, const Int& base)
{
    // returns true when base proves n composite
    Int a = mod_floor(base, n);
    if (sign(a) == 0) return false;
    Int d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    Int x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (unsigned long i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == n - 1) return false;
        if (x == 1) return true;
    }
    return true;
}

// xorshift-based deterministic base generator for the probable-prime range
struct SplitMix64 {
    uint64_t s;
    explicit SplitMix64(uint64_t seed) : s(seed) {}
    uint64_t next()
    {
        uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

}  // namespace

PrimalityResult classify_prime(const Int& n)
{
    if (n < 2) return {false, true};
    static const unsigned long small[] = {2,  3,  5,  7,  11, 13, 17, 19,
                                          23, 29, 31, 37, 41, 43, 47};
    for (unsigned long p : small) {
        if (n == p) return {true, true};
        if (divisible(n, Int(p))) return {false, true};
    }
    Int two64 = pow_ui(Int(2), 64);
    if (n < two64) {
        // the first twelve primes are a deterministic witness set below 3.18e23
        static const unsigned long bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
        for (unsigned long b : bases)
            if (miller_rabin_witness(n, Int(b))) return {false, true};
        return {true, true};
    }
    SplitMix64 rng(0x716d636572740001ULL ^ mpz_fdiv_ui(n.get_mpz_t(), 0xffffffffULL));
    for (int round = 0; round < 40; ++round) {
        Int b = Int(rng.next()) % (n - 3) + 2;
        if (miller_rabin_witness(n, b)) return {false, true};
    }
    return {true, false};
}

bool is_prime(const Int& n) { return classify_prime(n).prime; }

Int next_prime(const Int& n)
{
    Int c = n < 1 ? Int(1) : n;
    ++c;
    if (divisible(c, 2) && c != 2) ++c;
    while (!is_prime(c)) c += 2;
    return c;
}

namespace {
std::mutex sieve_mutex;
std::vector<uint64_t> sieve_primes;
uint64_t sieve_limit = 0;
}  // namespace

std::vector<uint64_t> primes_up_to(uint64_t limit)
{
    std::lock_guard<std::mutex> lock(sieve_mutex);
    if (limit > sieve_limit) {
        std::vector<bool> comp(limit + 1, false);
        sieve_primes.clear();
        for (uint64_t i = 2; i <= limit; ++i) {
            if (!comp[i]) {
                sieve_primes.push_back(i);
                for (uint64_t j = i * i; j <= limit; j += i) comp[j] = true;
            }
        }
        sieve_limit = limit;
    }
    auto end = std::upper_bound(sieve_primes.begin(), sieve_primes.end(), limit);
    return std::vector<uint64_t>(sieve_primes.begin(), end);
}

namespace {

// primorial blocks for fast trial division via gcd
struct PrimorialBlocks {
    std::vector<uint64_t> primes;
    std::vector<Int> products;
    std::vector<std::pair<size_t, size_t>> ranges;  // [begin, end) indices into primes
};

std::shared_ptr<const PrimorialBlocks> blocks_for(uint64_t trial_bound)
{
    static std::mutex m;
    static uint64_t cached_bound = 0;
    static std::shared_ptr<const PrimorialBlocks> cached;
    std::lock_guard<std::mutex> lock(m);
    if (cached && cached_bound == trial_bound) return cached;
    auto blocks = std::make_shared<PrimorialBlocks>();
    blocks->primes = primes_up_to(trial_bound);
    const size_t chunk = 1024;
    for (size_t b = 0; b < blocks->primes.size(); b += chunk) {
        size_t e = std::min(b + chunk, blocks->primes.size());
        Int prod = 1;
        for (size_t i = b; i < e; ++i) prod *= Int(blocks->primes[i]);
        blocks->products.push_back(prod);
        blocks->ranges.emplace_back(b, e);
    }
    cached_bound = trial_bound;
    cached = blocks;
    return cached;
}

Int brent_rho(const Int& n, uint64_t max_iters, uint64_t seed)
{
    // deterministic Brent cycle detection within a total iteration budget;
    // returns 1 on failure
    uint64_t spent = 0;
    for (uint64_t attempt = 0; attempt < 8 && spent < max_iters; ++attempt) {
        SplitMix64 rng(seed * 0x9e3779b97f4a7c15ULL + attempt + 1);
        Int y = Int(rng.next()) % n;
        Int c = Int(rng.next()) % n;
        if (sign(c) == 0) c = 1;
        Int x, q = 1, g = 1, ys;
        uint64_t r = 1, iters = spent;
        const uint64_t batch = 128;
        while (g == 1 && iters < max_iters) {
            x = y;
            for (uint64_t i = 0; i < r && iters < max_iters; ++i, ++iters)
                y = (y * y + c) % n;
            uint64_t k = 0;
            while (k < r && g == 1 && iters < max_iters) {
                ys = y;
                uint64_t lim = std::min(batch, r - k);
                for (uint64_t i = 0; i < lim && iters < max_iters; ++i, ++iters) {
                    y = (y * y + c) % n;
                    Int d = x - y;
                    if (sign(d) < 0) d = -d;
                    q = q * d % n;
                }
                g = gcd(q, n);
                k += lim;
            }
            r *= 2;
        }
        spent = iters;
        if (g == n) {
            // backtrack
            g = 1;
            while (g == 1) {
                ys = (ys * ys + c) % n;
                Int d = x - ys;
                if (sign(d) < 0) d = -d;
                g = gcd(d, n);
            }
        }
        if (g != 1 && g != n) return g;
    }
    return 1;
}

void add_factor(Factorization& f, const Int& p, unsigned mult, bool proven)
{
    f.factors[p] += mult;
    if (!proven) f.probable_primes.push_back(p);
}

void factor_rec(Factorization& out, const Int& n, unsigned mult, const FactorOptions& opts)
{
    if (n == 1) return;
    if (is_perfect_square(n)) {
        factor_rec(out, isqrt(n), 2 * mult, opts);
        return;
    }
    auto pr = classify_prime(n);
    if (pr.prime) {
        add_factor(out, n, mult, pr.proven);
        return;
    }
    Int d = brent_rho(n, opts.rho_iterations, opts.seed);
    if (d == 1) {
        out.complete = false;
        out.cofactor *= pow_ui(n, mult);
        return;
    }
    factor_rec(out, d, mult, opts);
    factor_rec(out, divexact(n, d), mult, opts);
}

}  // namespace

Factorization factorize(const Int& n_in, const FactorOptions& opts)
{
    if (sign(n_in) == 0) throw input_error("factorize(0)");
    Factorization out;
    Int n = abs(n_in);
    if (n == 1) return out;

    auto blk_ptr = blocks_for(opts.trial_bound);
    const auto& blk = *blk_ptr;
    for (size_t bi = 0; bi < blk.products.size() && n != 1; ++bi) {
        Int g = gcd(n, blk.products[bi]);
        if (g == 1) continue;
        for (size_t i = blk.ranges[bi].first; i < blk.ranges[bi].second; ++i) {
            Int p(blk.primes[i]);
            if (!divisible(g, p)) continue;
            unsigned e = 0;
            while (divisible(n, p)) {
                n = divexact(n, p);
                ++e;
            }
            if (e) add_factor(out, p, e, true);
        }
    }
    if (n != 1) factor_rec(out, n, 1, opts);
    return out;
}

std::vector<Int> prime_divisors(const Int& n, const FactorOptions& opts)
{
    auto f = factorize(n, opts);
    if (!f.complete) throw input_error("factorize: incomplete factorization of " + abs(n).get_str());
    std::vector<Int> out;
    for (const auto& [p, e] : f.factors) out.push_back(p);
    return out;
}

bool is_squarefree(const Int& n, const FactorOptions& opts)
{
    if (sign(n) == 0) return false;
    auto f = factorize(n, opts);
    if (!f.complete) throw input_error("is_squarefree: incomplete factorization");
    for (const auto& [p, e] : f.factors)
        if (e > 1) return false;
    return true;
}

}  // namespace qmcert
