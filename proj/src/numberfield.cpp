#include "qmcert/numberfield.hpp"

#include <algorithm>
#include <sstream>

#include "qmcert/modpoly.hpp"
#include "qmcert/primes.hpp"

namespace qmcert {

// ---------------------------------------------------------------------------
// report plumbing

bool VerificationReport::ok() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* VerificationReport::find(const std::string& name) const
{
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

void VerificationReport::add(const std::string& name, bool passed, const std::string& detail)
{
    checks.push_back({name, passed, detail});
}

std::string VerificationReport::first_failure() const
{
    for (const auto& c : checks)
        if (!c.passed) return c.name + (c.detail.empty() ? "" : ": " + c.detail);
    return "";
}

namespace {
std::string report_message(const VerificationReport& r)
{
    std::string f = r.first_failure();
    return f.empty() ? "field spec verification failed" : "field spec check failed [" + f + "]";
}
}  // namespace

verification_error::verification_error(VerificationReport r)
    : input_error(report_message(r)), report(std::move(r))
{
}

// ---------------------------------------------------------------------------
// FieldElement

FieldElement::FieldElement(std::vector<Rat> coords) : c_(std::move(coords))
{
    for (auto& v : c_) v.canonicalize();
}

bool FieldElement::is_zero() const
{
    return std::all_of(c_.begin(), c_.end(), [](const Rat& v) { return sign(v) == 0; });
}

bool FieldElement::is_integral() const
{
    return std::all_of(c_.begin(), c_.end(),
                       [](const Rat& v) { return v.get_den() == 1; });
}

std::vector<Int> FieldElement::integer_coords() const
{
    std::vector<Int> out;
    out.reserve(c_.size());
    for (const auto& v : c_) {
        if (v.get_den() != 1) throw internal_error("element is not integral");
        out.push_back(v.get_num());
    }
    return out;
}

// ---------------------------------------------------------------------------
// SplittingData / IntegralIdeal

Int IntegralIdeal::norm() const
{
    Int n = 1;
    for (size_t i = 0; i < h_.rows(); ++i) n *= h_.at(i, i);
    return n;
}

unsigned SplittingData::sum_ef() const
{
    unsigned s = 0;
    for (auto [e, f] : factors) s += e * f;
    return s;
}

bool SplittingData::is_uniform() const
{
    for (const auto& ef : factors)
        if (ef != factors.front()) return false;
    return !factors.empty();
}

unsigned SplittingData::e() const
{
    if (!is_uniform()) throw internal_error("non-uniform splitting");
    return factors.front().first;
}

unsigned SplittingData::f() const
{
    if (!is_uniform()) throw internal_error("non-uniform splitting");
    return factors.front().second;
}

bool SplittingData::splits_completely(unsigned degree) const
{
    if (g != degree) return false;
    for (auto [e, f] : factors)
        if (e != 1 || f != 1) return false;
    return true;
}

// ---------------------------------------------------------------------------
// rational linear algebra helpers

namespace {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

Rat rat_canon(Rat v)
{
    v.canonicalize();
    return v;
}

// invert a square rational matrix by Gauss-Jordan; nullopt when singular
std::optional<RatMat> rat_inverse(const RatMat& m)
{
    size_t n = m.size();
    RatMat a(m);
    RatMat inv(n, RatVec(n, Rat(0)));
    for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && sign(a[piv][col]) == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Rat d = a[col][col];
        for (size_t j = 0; j < n; ++j) {
            a[col][j] = rat_canon(a[col][j] / d);
            inv[col][j] = rat_canon(inv[col][j] / d);
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == col || sign(a[r][col]) == 0) continue;
            Rat f = a[r][col];
            for (size_t j = 0; j < n; ++j) {
                a[r][j] = rat_canon(a[r][j] - f * a[col][j]);
                inv[r][j] = rat_canon(inv[r][j] - f * inv[col][j]);
            }
        }
    }
    return inv;
}

Rat rat_det(const RatMat& m)
{
    size_t n = m.size();
    RatMat a(m);
    Rat det(1);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && sign(a[piv][col]) == 0) ++piv;
        if (piv == n) return Rat(0);
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det = rat_canon(det * a[col][col]);
        Rat d = a[col][col];
        for (size_t r = col + 1; r < n; ++r) {
            if (sign(a[r][col]) == 0) continue;
            Rat f = rat_canon(a[r][col] / d);
            for (size_t j = col; j < n; ++j) a[r][j] = rat_canon(a[r][j] - f * a[col][j]);
        }
    }
    return det;
}

// row vector * matrix
RatVec vec_times_mat(const RatVec& v, const RatMat& m)
{
    size_t n = m.size();
    RatVec out(m[0].size(), Rat(0));
    for (size_t i = 0; i < n; ++i) {
        if (sign(v[i]) == 0) continue;
        for (size_t j = 0; j < out.size(); ++j) out[j] = rat_canon(out[j] + v[i] * m[i][j]);
    }
    return out;
}

std::vector<Int> divisors_of(const Int& n)
{
    auto fac = factorize(n);
    if (!fac.complete) throw input_error("divisor enumeration: incomplete factorization");
    std::vector<Int> divs{Int(1)};
    for (const auto& [p, e] : fac.factors) {
        size_t base = divs.size();
        Int pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

// Is f (monic, squarefree, degree 2..4) irreducible over Q?  Exhaustive
// search for monic integer factors of degree 1 and 2.
bool small_degree_irreducible(const IntPolynomial& f)
{
    int n = f.degree();
    const Int& f0 = f.coeff(0);
    if (sign(f0) == 0) return n == 1;  // x divides f
    // linear factors: integer roots divide f(0)
    for (const Int& d : divisors_of(f0)) {
        if (f.eval(d) == 0 || f.eval(Int(-d)) == 0) return false;
    }
    if (n <= 3) return true;
    // quadratic factors x^2 + a x + b: b divides f(0), |a| Mignotte-bounded
    Int norm2 = 0;
    for (const auto& c : f.coeffs()) norm2 += c * c;
    Int abound = 4 * (isqrt(norm2) + 1);
    for (const Int& babs : divisors_of(f0)) {
        for (int bs = 0; bs < 2; ++bs) {
            Int b = bs ? Int(-babs) : babs;
            for (Int a = -abound; a <= abound; ++a) {
                // trial division by x^2 + a x + b over Z
                IntPolynomial g({b, a, Int(1)});
                IntPolynomial rem = f;
                while (rem.degree() >= 2) {
                    int shift = rem.degree() - 2;
                    Int lead = rem.leading();
                    std::vector<Int> r(rem.coeffs());
                    for (int i = 0; i <= 2; ++i) r[shift + i] -= lead * g.coeff(i);
                    rem = IntPolynomial(std::move(r));
                }
                if (rem.is_zero()) return false;
            }
        }
    }
    return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// NumberField: construction-time verification

NumberField NumberField::verify(const FieldSpecData& data)
{
    NumberField K;
    K.spec_ = data;
    VerificationReport& rep = K.report_;

    const IntPolynomial& f = data.defining_poly;
    if (f.degree() < 1) {
        rep.add("defining polynomial", false, "degree must be >= 1");
        throw verification_error(rep);
    }
    if (f.leading() != 1) {
        rep.add("defining polynomial", false, "must be monic");
        throw verification_error(rep);
    }
    K.f_ = f;
    K.n_ = static_cast<unsigned>(f.degree());
    const unsigned n = K.n_;
    rep.add("defining polynomial", true, "monic, degree " + std::to_string(n));

    // --- irreducibility -----------------------------------------------
    {
        bool irred = false;
        std::string how;
        if (n == 1) {
            irred = true;
            how = "degree 1";
        } else if (!f.is_squarefree()) {
            irred = false;
            how = "not squarefree";
        } else {
            for (uint64_t p : primes_up_to(500)) {
                if (divisible(f.discriminant(), Int(p))) continue;
                auto fac = factor_mod_p(f, Int(p));
                if (fac.size() == 1 && fac[0].second == 1) {
                    irred = true;
                    how = "irreducible mod " + std::to_string(p);
                    break;
                }
            }
            if (!irred && n <= 4) {
                irred = small_degree_irreducible(f);
                how = irred ? "no integer factor of degree <= 2"
                            : "integer factor found";
            } else if (!irred) {
                how = "no mod-p witness below 500 and degree > 4";
            }
        }
        rep.add("defining polynomial irreducible", irred, how);
        if (!irred) throw verification_error(rep);
    }

    K.disc_f_ = n == 1 ? Int(1) : f.discriminant();
    K.real_places_ = static_cast<unsigned>(count_real_roots(f));

    // --- integral basis: shape, Z[theta] containment, ring closure ------
    {
        RatMat basis = data.integral_basis;
        if (basis.empty()) {  // default power basis
            basis.assign(n, RatVec(n, Rat(0)));
            for (unsigned i = 0; i < n; ++i) basis[i][i] = 1;
        }
        bool shape = basis.size() == n &&
                     std::all_of(basis.begin(), basis.end(),
                                 [n](const RatVec& r) { return r.size() == n; });
        rep.add("integral basis shape", shape, shape ? "" : "expected n x n rational matrix");
        if (!shape) throw verification_error(rep);
        K.basis_ = basis;

        auto inv = rat_inverse(basis);
        if (!inv) {
            rep.add("integral basis invertible", false, "basis matrix is singular");
            throw verification_error(rep);
        }
        K.basis_inv_ = *inv;
        rep.add("integral basis invertible", true);

        Rat det = rat_det(basis);
        // O contains Z[theta] as a finite-index subring, so det = +-1/index
        bool det_ok = det.get_num() == 1 || det.get_num() == -1;
        K.index_ = qmcert::abs(Int(det.get_den()));
        rep.add("basis contains Z[theta] with finite index", det_ok,
                det_ok ? "index " + K.index_.get_str()
                       : "det(basis) is not the reciprocal of an integer");
        if (!det_ok) throw verification_error(rep);

        // membership of 1 and theta
        auto in_lattice = [&](const RatVec& power_coords) {
            RatVec c = vec_times_mat(power_coords, K.basis_inv_);
            return std::all_of(c.begin(), c.end(), [](const Rat& v) { return v.get_den() == 1; });
        };
        RatVec onev(n, Rat(0)), thetav(n, Rat(0));
        onev[0] = 1;
        if (n > 1) thetav[1] = 1;
        bool has1 = in_lattice(onev);
        bool hasth = n == 1 || in_lattice(thetav);
        rep.add("basis lattice contains 1 and theta", has1 && hasth);
        if (!(has1 && hasth)) throw verification_error(rep);

        // ring closure: every product b_i * b_j has integer coordinates
        K.multable_.assign(n, std::vector<std::vector<Int>>(n));
        bool closed = true;
        for (unsigned i = 0; i < n && closed; ++i) {
            for (unsigned j = 0; j <= i && closed; ++j) {
                // multiply basis polys mod f
                std::vector<Rat> prod(2 * n - 1, Rat(0));
                for (unsigned a = 0; a < n; ++a) {
                    if (sign(basis[i][a]) == 0) continue;
                    for (unsigned b = 0; b < n; ++b)
                        prod[a + b] = rat_canon(prod[a + b] + basis[i][a] * basis[j][b]);
                }
                RatVec red = K.reduce_power_poly(std::move(prod));
                RatVec coords = vec_times_mat(red, K.basis_inv_);
                std::vector<Int> ic(n);
                for (unsigned k = 0; k < n; ++k) {
                    if (coords[k].get_den() != 1) {
                        closed = false;
                        break;
                    }
                    ic[k] = coords[k].get_num();
                }
                if (closed) {
                    K.multable_[i][j] = ic;
                    K.multable_[j][i] = std::move(ic);
                }
            }
        }
        rep.add("basis multiplicatively closed", closed,
                closed ? "" : "some b_i*b_j leaves the lattice");
        if (!closed) throw verification_error(rep);

        K.disc_basis_ = divexact(K.disc_f_, K.index_ * K.index_);
        bool disc_ok = K.disc_f_ == K.disc_basis_ * K.index_ * K.index_;
        rep.add("discriminant consistency", disc_ok,
                "disc(f) = index^2 * disc(basis), index = " + K.index_.get_str());
    }

    // --- maximality via Dedekind ---------------------------------------
    {
        std::vector<Int> assumed, refuted;
        bool consistent = true;
        if (n > 1) {
            auto dfac = factorize(qmcert::abs(K.disc_basis_));
            if (!dfac.complete) {
                rep.add("discriminant factorization", false, "cannot factor disc(basis)");
                throw verification_error(rep);
            }
            for (const auto& [p, e] : dfac.factors) {
                if (e < 2) continue;  // p-maximal automatically
                bool ded = dedekind_p_maximal(f, p);
                bool p_in_index = divisible(K.index_, p);
                if (!p_in_index && ded) continue;  // certified maximal at p
                if (p_in_index && ded) {
                    consistent = false;  // Dedekind proves p coprime to the full index
                    rep.add("maximality consistency", false,
                            "p = " + p.get_str() +
                                " divides the basis index but Dedekind certifies p-maximality of "
                                "Z[theta]");
                    break;
                }
                if (!p_in_index)
                    refuted.push_back(p);  // O has the same p-part as the non-maximal Z[theta]
                else
                    assumed.push_back(p);
            }
        }
        if (!consistent) throw verification_error(rep);
        K.max_assumed_at_ = assumed;
        K.max_refuted_at_ = refuted;
        if (!refuted.empty()) {
            K.maximality_ = MaximalityStatus::Refuted;
            std::string ps;
            for (const auto& p : refuted) ps += (ps.empty() ? "" : ",") + p.get_str();
            rep.add("basis maximality", true,
                    "NOT maximal at {" + ps + "}; ramified-prime set is a superset");
        } else if (!assumed.empty()) {
            K.maximality_ = MaximalityStatus::Assumed;
            std::string ps;
            for (const auto& p : assumed) ps += (ps.empty() ? "" : ",") + p.get_str();
            rep.add("basis maximality", true, "ASSUMED at {" + ps + "} (Dedekind inconclusive)");
            rep.assumptions.push_back("integral basis maximality at primes {" + ps + "}");
        } else {
            K.maximality_ = MaximalityStatus::Certified;
            rep.add("basis maximality", true, "certified by Dedekind at every candidate prime");
        }
    }

    // --- automorphisms ---------------------------------------------------
    {
        bool count_ok = data.automorphisms.size() == n;
        rep.add("Galois count", count_ok,
                "expected " + std::to_string(n) + " automorphisms, got " +
                    std::to_string(data.automorphisms.size()));
        if (!count_ok) throw verification_error(rep);

        for (const auto& g : data.automorphisms) K.autos_.push_back(K.reduce_power_poly(g));

        std::vector<Rat> fpoly;
        for (const auto& c : f.coeffs()) fpoly.emplace_back(c);
        bool distinct = true, roots_ok = true;
        for (unsigned i = 0; i < n; ++i) {
            for (unsigned j = i + 1; j < n; ++j)
                if (K.autos_[i] == K.autos_[j]) distinct = false;
            // f(g_sigma(theta)) = 0 mod f: sigma permutes the roots of f
            std::vector<Rat> res = K.compose_polys(fpoly, K.autos_[i]);
            bool zero = std::all_of(res.begin(), res.end(),
                                    [](const Rat& v) { return sign(v) == 0; });
            if (!zero) roots_ok = false;
        }
        rep.add("automorphisms distinct", distinct);
        rep.add("automorphisms permute roots of f", roots_ok,
                roots_ok ? "f(g_sigma(theta)) = 0 mod f for all sigma" : "some g_sigma is not a root map");
        if (!distinct || !roots_ok) throw verification_error(rep);

        // identity present
        std::vector<Rat> idpoly(n, Rat(0));
        if (n == 1)
            idpoly[0] = 0;  // theta = root of degree-1 f; identity sends theta -> theta
        if (n > 1) idpoly[1] = 1;
        // for n == 1 the reduced identity is the image of x mod f
        if (n == 1) {
            std::vector<Rat> x{Rat(0), Rat(1)};
            idpoly = K.reduce_power_poly(x);
        }
        bool has_id = false;
        for (unsigned i = 0; i < n; ++i)
            if (K.autos_[i] == idpoly) {
                has_id = true;
                K.identity_idx_ = i;
            }
        rep.add("automorphisms contain identity", has_id);
        if (!has_id) throw verification_error(rep);

        // closure under composition
        K.comp_table_.assign(n, std::vector<unsigned>(n, 0));
        bool closed = true;
        for (unsigned i = 0; i < n && closed; ++i) {
            for (unsigned j = 0; j < n && closed; ++j) {
                std::vector<Rat> comp = K.compose_polys(K.autos_[i], K.autos_[j]);
                bool found = false;
                for (unsigned k = 0; k < n; ++k)
                    if (K.autos_[k] == comp) {
                        K.comp_table_[i][j] = k;
                        found = true;
                        break;
                    }
                if (!found) closed = false;
            }
        }
        rep.add("automorphisms closed under composition", closed,
                closed ? "group of order " + std::to_string(n) + " verified (K/Q Galois)"
                       : "composition leaves the supplied set");
        if (!closed) throw verification_error(rep);
    }

    // --- quadratic subfields ----------------------------------------------
    {
        bool all_ok = true;
        std::string detail;
        std::vector<Int> seen;
        for (const auto& qs : data.quadratic_subfields) {
            if (qs.m == 0 || qs.m == 1 || !is_squarefree(qs.m)) {
                all_ok = false;
                detail = "m = " + qs.m.get_str() + " is not a squarefree non-unit";
                break;
            }
            if (std::find(seen.begin(), seen.end(), qs.m) != seen.end()) {
                all_ok = false;
                detail = "duplicate subfield m = " + qs.m.get_str();
                break;
            }
            seen.push_back(qs.m);
            FieldElement w = K.element(qs.witness);
            FieldElement sq = K.mul(w, w);
            FieldElement target = K.mul_int(K.one(), qs.m);
            if (!(sq == target)) {
                all_ok = false;
                detail = "witness^2 != " + qs.m.get_str();
                break;
            }
            K.quadsubs_.push_back({qs.m, w});
        }
        rep.add("quadratic subfield witnesses", all_ok, detail);
        if (!all_ok) throw verification_error(rep);

        unsigned expected = K.index2_subgroup_count();
        bool complete = data.quadratic_subfields.size() == expected;
        rep.add("quadratic subfield count", complete,
                "index-2 subgroups: " + std::to_string(expected) + ", supplied: " +
                    std::to_string(data.quadratic_subfields.size()));
        if (!complete) throw verification_error(rep);
    }

    // --- user-supplied prime factorizations (index divisors) ---------------
    {
        bool all_ok = true;
        std::string detail;
        for (const auto& pf : data.prime_factorizations) {
            if (!is_prime(pf.p)) {
                all_ok = false;
                detail = "p = " + pf.p.get_str() + " is not prime";
                break;
            }
            std::vector<ClaimedIdealFactor> claimed;
            try {
                for (const auto& cf : pf.factors) {
                    std::vector<FieldElement> gens;
                    for (const auto& g : cf.generators) gens.push_back(K.element(g));
                    claimed.push_back({K.ideal_from_generators(gens), cf.e});
                }
                SplittingData sd = K.verify_prime_factorization(pf.p, claimed);
                sd.user_supplied = true;
                K.user_splittings_[pf.p] = sd;
            } catch (const input_error& e) {
                all_ok = false;
                detail = "p = " + pf.p.get_str() + ": " + e.what();
                break;
            }
        }
        rep.add("supplied prime factorizations", all_ok, detail);
        if (!all_ok) throw verification_error(rep);
    }

    // --- ramified primes ----------------------------------------------------
    K.ram_primes_ = prime_divisors(K.disc_basis_ == 0 ? Int(1) : K.disc_basis_);

    // --- class data -----------------------------------------------------------
    {
        K.h_ = data.class_number;
        bool h_ok = sign(K.h_) > 0;
        rep.add("class number positive", h_ok);
        if (!h_ok) throw verification_error(rep);
        rep.assumptions.push_back("class number h_K = " + K.h_.get_str() + " is asserted, not computed");
        if (!data.class_generators.empty())
            rep.assumptions.push_back(
                "the supplied degree-1 primes S generate the ideal class group");

        bool all_ok = true;
        std::string detail;
        for (const auto& cg : data.class_generators) {
            if (!is_prime(cg.q)) {
                all_ok = false;
                detail = "q = " + cg.q.get_str() + " is not prime";
                break;
            }
            if (divisible(Int(6) * K.h_, cg.q)) {
                all_ok = false;
                detail = "q = " + cg.q.get_str() + " divides 6 h_K";
                break;
            }
            if (!K.splits_completely(cg.q)) {
                all_ok = false;
                detail = "q = " + cg.q.get_str() + " does not split completely";
                break;
            }
            try {
                IntegralIdeal frak_q = K.ideal_from_prime(cg.q, cg.root);
                IntegralIdeal qh = K.ideal_power(frak_q, K.h_);
                FieldElement alpha = K.element(cg.alpha);
                if (alpha.is_zero() || !alpha.is_integral()) {
                    all_ok = false;
                    detail = "alpha for q = " + cg.q.get_str() + " must be a nonzero algebraic integer";
                    break;
                }
                if (!K.verify_principal_generator(qh, alpha)) {
                    all_ok = false;
                    detail = "q^h_K != alpha*O for q = " + cg.q.get_str();
                    break;
                }
                K.classgens_.push_back({cg.q, cg.root, alpha, frak_q});
            } catch (const input_error& e) {
                all_ok = false;
                detail = std::string(e.what());
                break;
            }
        }
        rep.add("class generators principal relations", all_ok, detail);
        if (!all_ok) throw verification_error(rep);
    }

    return K;
}

// ---------------------------------------------------------------------------
// polynomial helpers over Q mod f

std::vector<Rat> NumberField::reduce_power_poly(std::vector<Rat> poly) const
{
    // reduce degree below n using monic f
    while (poly.size() > n_) {
        size_t d = poly.size() - 1;
        Rat lead = poly.back();
        poly.pop_back();
        if (sign(lead) == 0) continue;
        size_t shift = d - n_;
        for (unsigned i = 0; i < n_; ++i)
            poly[shift + i] = rat_canon(poly[shift + i] - lead * Rat(f_.coeff(i)));
    }
    poly.resize(n_, Rat(0));
    for (auto& v : poly) v.canonicalize();
    return poly;
}

std::vector<Rat> NumberField::compose_polys(const std::vector<Rat>& outer,
                                            const std::vector<Rat>& inner) const
{
    // outer(inner(x)) mod f by Horner
    std::vector<Rat> res(n_, Rat(0));
    for (size_t k = outer.size(); k-- > 0;) {
        std::vector<Rat> prod(2 * n_ - 1, Rat(0));
        for (unsigned a = 0; a < n_; ++a) {
            if (sign(res[a]) == 0) continue;
            for (unsigned b = 0; b < n_ && b < inner.size(); ++b)
                prod[a + b] = rat_canon(prod[a + b] + res[a] * inner[b]);
        }
        res = reduce_power_poly(std::move(prod));
        res[0] = rat_canon(res[0] + outer[k]);
    }
    return res;
}

// ---------------------------------------------------------------------------
// element arithmetic

FieldElement NumberField::zero() const { return FieldElement(std::vector<Rat>(n_, Rat(0))); }

FieldElement NumberField::one() const
{
    RatVec onev(n_, Rat(0));
    onev[0] = 1;
    return from_power_coords(onev);
}

FieldElement NumberField::theta() const
{
    RatVec v(n_, Rat(0));
    if (n_ > 1) v[1] = 1;
    else {
        // theta is the root of the degree-1 polynomial: x + c = 0
        v[0] = Rat(-f_.coeff(0));
    }
    return from_power_coords(v);
}

FieldElement NumberField::element(std::vector<Rat> coords) const
{
    if (coords.size() != n_) throw input_error("element coordinate count mismatch");
    return FieldElement(std::move(coords));
}

FieldElement NumberField::from_power_coords(const std::vector<Rat>& power) const
{
    RatVec p(power);
    p.resize(n_, Rat(0));
    return FieldElement(vec_times_mat(p, basis_inv_));
}

std::vector<Rat> NumberField::to_power_coords(const FieldElement& x) const
{
    return vec_times_mat(x.coords(), basis_);
}

FieldElement NumberField::add(const FieldElement& a, const FieldElement& b) const
{
    RatVec out(n_);
    for (unsigned i = 0; i < n_; ++i) out[i] = rat_canon(a.coords()[i] + b.coords()[i]);
    return FieldElement(std::move(out));
}

FieldElement NumberField::sub(const FieldElement& a, const FieldElement& b) const
{
    RatVec out(n_);
    for (unsigned i = 0; i < n_; ++i) out[i] = rat_canon(a.coords()[i] - b.coords()[i]);
    return FieldElement(std::move(out));
}

FieldElement NumberField::mul(const FieldElement& a, const FieldElement& b) const
{
    RatVec out(n_, Rat(0));
    for (unsigned i = 0; i < n_; ++i) {
        if (sign(a.coords()[i]) == 0) continue;
        for (unsigned j = 0; j < n_; ++j) {
            if (sign(b.coords()[j]) == 0) continue;
            Rat c = rat_canon(a.coords()[i] * b.coords()[j]);
            const auto& t = multable_[i][j];
            for (unsigned k = 0; k < n_; ++k) {
                if (sign(t[k]) == 0) continue;
                out[k] = rat_canon(out[k] + c * Rat(t[k]));
            }
        }
    }
    return FieldElement(std::move(out));
}

FieldElement NumberField::mul_int(const FieldElement& a, const Int& s) const
{
    RatVec out(n_);
    for (unsigned i = 0; i < n_; ++i) out[i] = rat_canon(a.coords()[i] * Rat(s));
    return FieldElement(std::move(out));
}

FieldElement NumberField::pow(const FieldElement& a, const Int& e) const
{
    if (sign(e) < 0) throw input_error("negative element power");
    FieldElement result = one();
    FieldElement base = a;
    Int k = e;
    while (sign(k) > 0) {
        if (mpz_odd_p(k.get_mpz_t())) result = mul(result, base);
        base = mul(base, base);
        mpz_tdiv_q_2exp(k.get_mpz_t(), k.get_mpz_t(), 1);
    }
    return result;
}

Rat NumberField::norm(const FieldElement& x) const
{
    // determinant of multiplication-by-x on the integral basis
    RatMat m(n_, RatVec(n_, Rat(0)));
    for (unsigned i = 0; i < n_; ++i) {
        // column i: x * b_i = sum_k x_k (b_k b_i)
        for (unsigned k = 0; k < n_; ++k) {
            if (sign(x.coords()[k]) == 0) continue;
            const auto& t = multable_[k][i];
            for (unsigned r = 0; r < n_; ++r)
                m[r][i] = rat_canon(m[r][i] + x.coords()[k] * Rat(t[r]));
        }
    }
    // clear denominators and use fraction-free integer elimination
    Int denom = 1;
    for (const auto& row : m)
        for (const auto& v : row) denom = lcm(denom, Int(v.get_den()));
    IntMatrix im(n_, n_);
    for (unsigned i = 0; i < n_; ++i)
        for (unsigned j = 0; j < n_; ++j) {
            Rat scaled = rat_canon(m[i][j] * Rat(denom));
            im.at(i, j) = scaled.get_num();
        }
    Rat result(im.det_bareiss(), pow_ui(denom, n_));
    result.canonicalize();
    return result;
}

Int NumberField::norm_integral(const FieldElement& x) const
{
    Rat r = norm(x);
    if (r.get_den() != 1) throw internal_error("norm of integral element is not an integer");
    return r.get_num();
}

// ---------------------------------------------------------------------------
// automorphisms

FieldElement NumberField::apply_automorphism(unsigned idx, const FieldElement& x) const
{
    if (idx >= n_) throw input_error("automorphism index out of range");
    std::vector<Rat> p = to_power_coords(x);
    std::vector<Rat> img = compose_polys(p, autos_[idx]);
    return from_power_coords(img);
}

unsigned NumberField::index2_subgroup_count() const
{
    // index-2 subgroups correspond to surjective characters G -> {+-1};
    // count = 2^r - 1 where r = rank of G / <squares, commutators>
    unsigned n = n_;
    std::vector<bool> in_n(n, false);
    std::vector<unsigned> stack;
    auto push = [&](unsigned g) {
        if (!in_n[g]) {
            in_n[g] = true;
            stack.push_back(g);
        }
    };
    push(identity_idx_);
    // inverses from the composition table
    std::vector<unsigned> inv(n, 0);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            if (comp_table_[i][j] == identity_idx_) inv[i] = j;
    for (unsigned g = 0; g < n; ++g) {
        push(comp_table_[g][g]);  // squares
        for (unsigned h = 0; h < n; ++h) {
            unsigned c = comp_table_[comp_table_[g][h]][comp_table_[inv[g]][inv[h]]];
            push(c);  // commutators
        }
    }
    // close the generated subgroup
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<unsigned> members;
        for (unsigned g = 0; g < n; ++g)
            if (in_n[g]) members.push_back(g);
        for (unsigned a : members)
            for (unsigned b : members) {
                unsigned c = comp_table_[a][b];
                if (!in_n[c]) {
                    in_n[c] = true;
                    grew = true;
                }
            }
    }
    unsigned sub = 0;
    for (unsigned g = 0; g < n; ++g)
        if (in_n[g]) ++sub;
    unsigned quotient = n / sub;  // elementary abelian 2-group of order 2^r
    unsigned count = quotient - 1;
    return count;
}

std::string NumberField::automorphism_table_canonical() const
{
    std::ostringstream os;
    for (unsigned i = 0; i < n_; ++i) {
        for (unsigned j = 0; j < n_; ++j) os << autos_[i][j].get_str() << (j + 1 < n_ ? "," : "");
        os << ";";
    }
    os << "|";
    for (unsigned i = 0; i < n_; ++i)
        for (unsigned j = 0; j < n_; ++j) os << comp_table_[i][j] << ",";
    return os.str();
}

// ---------------------------------------------------------------------------
// splitting

SplittingData NumberField::splitting_data(const Int& p) const
{
    if (!is_prime(p)) throw input_error("splitting_data: p is not prime");
    if (divisible(index_, p)) {
        auto it = user_splittings_.find(p);
        if (it != user_splittings_.end()) return it->second;
        throw input_error("index divisor: p = " + p.get_str() +
                          " divides [O : Z[theta]] and no verified factorization was supplied");
    }
    auto fac = factor_mod_p(f_, p);
    SplittingData sd;
    sd.p = p;
    for (const auto& [g, e] : fac)
        sd.factors.emplace_back(e, static_cast<unsigned>(g.degree()));
    std::sort(sd.factors.begin(), sd.factors.end());
    sd.g = static_cast<unsigned>(sd.factors.size());
    if (sd.sum_ef() != n_) throw internal_error("splitting_data: sum e_i f_i != n");
    return sd;
}

bool NumberField::splits_completely(const Int& q) const
{
    if (!is_prime(q)) throw input_error("splits_completely: q is not prime");
    if (divisible(index_, q)) return splitting_data(q).splits_completely(n_);
    return splits_into_distinct_linear(f_, q);
}

unsigned NumberField::ramification_index(const Int& p) const
{
    SplittingData sd = splitting_data(p);
    unsigned e = sd.factors.front().first;
    for (const auto& [ei, fi] : sd.factors)
        if (ei != e) throw internal_error("non-uniform ramification in a Galois field");
    return e;
}

std::vector<Int> NumberField::ramified_primes() const { return ram_primes_; }

bool NumberField::ramified_set_is_upper_bound() const
{
    return maximality_ != MaximalityStatus::Certified;
}

std::vector<Int> NumberField::roots_of_f_mod(const Int& q) const { return roots_mod_p(f_, q); }

// ---------------------------------------------------------------------------
// ideals

IntegralIdeal NumberField::whole_ring() const { return IntegralIdeal(IntMatrix::identity(n_)); }

IntegralIdeal NumberField::ideal_from_generators(const std::vector<FieldElement>& gens) const
{
    if (gens.empty()) throw input_error("ideal needs at least one generator");
    IntMatrix m(n_, gens.size() * n_);
    size_t col = 0;
    for (const auto& g : gens) {
        if (!g.is_integral()) throw input_error("ideal generators must be algebraic integers");
        for (unsigned i = 0; i < n_; ++i) {
            // g * b_i
            std::vector<Int> v(n_, Int(0));
            for (unsigned k = 0; k < n_; ++k) {
                if (sign(g.coords()[k]) == 0) continue;
                Int c = g.coords()[k].get_num();
                const auto& t = multable_[k][i];
                for (unsigned r = 0; r < n_; ++r) v[r] += c * t[r];
            }
            m.set_column(col++, v);
        }
    }
    IntMatrix h = hnf(m);
    if (h.cols() != n_) throw input_error("ideal lattice does not have full rank");
    IntegralIdeal I(h);
    // closure under multiplication by the basis (the defining invariant)
    for (unsigned j = 0; j < n_; ++j) {
        std::vector<Int> cj = h.column(j);
        RatVec coords(n_);
        for (unsigned i = 0; i < n_; ++i) coords[i] = Rat(cj[i]);
        FieldElement cje(coords);
        for (unsigned b = 0; b < n_; ++b) {
            RatVec bv(n_, Rat(0));
            bv[b] = 1;
            FieldElement prod = mul(cje, FieldElement(bv));
            if (!ideal_contains(I, prod))
                throw internal_error("ideal lattice not closed under ring multiplication");
        }
    }
    return I;
}

IntegralIdeal NumberField::ideal_from_prime(const Int& q, const Int& r) const
{
    if (!is_prime(q)) throw input_error("ideal_from_prime: q not prime");
    if (sign(mod_floor(f_.eval(r), q)) != 0)
        throw input_error("ideal_from_prime: f(r) != 0 mod q");
    FieldElement qe = mul_int(one(), q);
    FieldElement shift = sub(theta(), mul_int(one(), r));
    IntegralIdeal I = ideal_from_generators({qe, shift});
    if (I.norm() != q) throw internal_error("degree-1 prime ideal has wrong norm");
    return I;
}

IntegralIdeal NumberField::ideal_multiply(const IntegralIdeal& a, const IntegralIdeal& b) const
{
    IntMatrix m(n_, n_ * n_);
    size_t col = 0;
    for (unsigned i = 0; i < n_; ++i) {
        std::vector<Int> ai = a.hnf_matrix().column(i);
        for (unsigned j = 0; j < n_; ++j) {
            std::vector<Int> bj = b.hnf_matrix().column(j);
            std::vector<Int> v(n_, Int(0));
            for (unsigned s = 0; s < n_; ++s) {
                if (sign(ai[s]) == 0) continue;
                for (unsigned t = 0; t < n_; ++t) {
                    if (sign(bj[t]) == 0) continue;
                    Int c = ai[s] * bj[t];
                    const auto& tab = multable_[s][t];
                    for (unsigned r = 0; r < n_; ++r) v[r] += c * tab[r];
                }
            }
            m.set_column(col++, v);
        }
    }
    IntMatrix h = hnf(m);
    if (h.cols() != n_) throw internal_error("ideal product lost rank");
    return IntegralIdeal(h);
}

IntegralIdeal NumberField::ideal_power(const IntegralIdeal& a, const Int& k) const
{
    if (sign(k) < 0) throw input_error("negative ideal power");
    IntegralIdeal result = whole_ring();
    IntegralIdeal base = a;
    Int e = k;
    while (sign(e) > 0) {
        if (mpz_odd_p(e.get_mpz_t())) result = ideal_multiply(result, base);
        mpz_tdiv_q_2exp(e.get_mpz_t(), e.get_mpz_t(), 1);
        if (sign(e) > 0) base = ideal_multiply(base, base);
    }
    return result;
}

bool NumberField::ideal_contains(const IntegralIdeal& I, const FieldElement& x) const
{
    if (!x.is_integral()) return false;
    return I.contains(x.integer_coords());
}

bool NumberField::verify_principal_generator(const IntegralIdeal& I, const FieldElement& alpha) const
{
    if (alpha.is_zero() || !alpha.is_integral()) return false;
    if (!ideal_contains(I, alpha)) return false;
    return abs(norm_integral(alpha)) == I.norm();
}

std::vector<Int> NumberField::reduce_mod_ideal(const IntMatrix& h, std::vector<Int> v) const
{
    for (size_t ii = n_; ii-- > 0;) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), v[ii].get_mpz_t(), h.at(ii, ii).get_mpz_t());
        if (sign(q) != 0)
            for (size_t r = 0; r <= ii; ++r) v[r] -= q * h.at(r, ii);
    }
    return v;
}

SplittingData NumberField::verify_prime_factorization(
    const Int& p, const std::vector<ClaimedIdealFactor>& claimed) const
{
    if (claimed.empty()) throw input_error("empty factorization");
    // distinct ideals
    for (size_t i = 0; i < claimed.size(); ++i)
        for (size_t j = i + 1; j < claimed.size(); ++j)
            if (claimed[i].ideal == claimed[j].ideal)
                throw input_error("repeated prime ideal in factorization");

    // product check
    IntegralIdeal prod = whole_ring();
    for (const auto& cf : claimed) {
        if (cf.e == 0) throw input_error("zero exponent in factorization");
        prod = ideal_multiply(prod, ideal_power(cf.ideal, cf.e));
    }
    IntMatrix pO = IntMatrix::identity(n_);
    for (unsigned i = 0; i < n_; ++i) pO.at(i, i) = p;
    if (!(prod.hnf_matrix() == pO))
        throw input_error("product mismatch: prod I_i^{e_i} != p*O");

    SplittingData sd;
    sd.p = p;
    unsigned total = 0;
    for (const auto& cf : claimed) {
        Int nm = cf.ideal.norm();
        // nm must be p^f
        unsigned fdeg = 0;
        Int t = nm;
        while (t > 1) {
            if (!divisible(t, p)) throw input_error("ideal norm is not a power of p");
            t = divexact(t, p);
            ++fdeg;
        }
        if (fdeg == 0) throw input_error("trivial ideal in factorization");

        // field certificate for the quotient when dim > 1
        if (fdeg > 1) {
            // p*O must be inside I so that O/I is an F_p vector space
            for (unsigned i = 0; i < n_; ++i) {
                std::vector<Int> pb(n_, Int(0));
                pb[i] = p;
                if (!cf.ideal.contains(pb))
                    throw input_error("p*O not contained in claimed prime ideal");
            }
            if (!certify_field_quotient(cf.ideal, p, fdeg))
                throw input_error("quotient by claimed prime of norm p^" + std::to_string(fdeg) +
                                  " not certified as a field");
        }
        sd.factors.emplace_back(cf.e, fdeg);
        total += cf.e * fdeg;
    }
    if (total != n_) throw input_error("sum e_i f_i != n");
    std::sort(sd.factors.begin(), sd.factors.end());
    sd.g = static_cast<unsigned>(sd.factors.size());
    return sd;
}

bool NumberField::certify_field_quotient(const IntegralIdeal& I, const Int& p, unsigned fdeg) const
{
    const IntMatrix& h = I.hnf_matrix();
    // candidate generators: basis images, then pairwise sums
    std::vector<std::vector<Int>> candidates;
    for (unsigned i = 0; i < n_; ++i) {
        std::vector<Int> v(n_, Int(0));
        v[i] = 1;
        candidates.push_back(v);
    }
    for (unsigned i = 0; i < n_; ++i)
        for (unsigned j = i + 1; j < n_; ++j) {
            std::vector<Int> v(n_, Int(0));
            v[i] = 1;
            v[j] = 1;
            candidates.push_back(v);
        }

    for (const auto& cand : candidates) {
        // powers of the candidate reduced mod I, as F_p row vectors
        std::vector<std::vector<Int>> rows;  // w^0, w^1, ..., up to fdeg
        FieldElement w = [&] {
            RatVec c(n_);
            for (unsigned i = 0; i < n_; ++i) c[i] = Rat(cand[i]);
            return FieldElement(c);
        }();
        FieldElement acc = one();
        bool dep_before_f = false;
        std::vector<Int> minpoly;  // coefficients over F_p, low first, of the first dependency
        for (unsigned k = 0; k <= fdeg; ++k) {
            std::vector<Int> red = reduce_mod_ideal(h, acc.integer_coords());
            for (auto& v : red) v = mod_floor(v, p);
            rows.push_back(red);
            // Gaussian elimination to find a dependency among rows
            std::vector<std::vector<Int>> m(rows);
            size_t rcount = m.size();
            std::vector<std::vector<Int>> combo(rcount, std::vector<Int>(rcount, Int(0)));
            for (size_t i = 0; i < rcount; ++i) combo[i][i] = 1;
            size_t rank = 0;
            for (size_t col = 0; col < n_ && rank < rcount; ++col) {
                size_t piv = rank;
                while (piv < rcount && sign(m[piv][col]) == 0) ++piv;
                if (piv == rcount) continue;
                std::swap(m[piv], m[rank]);
                std::swap(combo[piv], combo[rank]);
                Int inv = invmod(m[rank][col], p);
                for (size_t j = 0; j < n_; ++j) m[rank][j] = mod_floor(m[rank][j] * inv, p);
                for (size_t j = 0; j < rcount; ++j)
                    combo[rank][j] = mod_floor(combo[rank][j] * inv, p);
                for (size_t rr = 0; rr < rcount; ++rr) {
                    if (rr == rank || sign(m[rr][col]) == 0) continue;
                    Int fmul = m[rr][col];
                    for (size_t j = 0; j < n_; ++j)
                        m[rr][j] = mod_floor(m[rr][j] - fmul * m[rank][j], p);
                    for (size_t j = 0; j < rcount; ++j)
                        combo[rr][j] = mod_floor(combo[rr][j] - fmul * combo[rank][j], p);
                }
                ++rank;
            }
            if (rank < rcount) {
                // dependency found: the last row reduced to zero
                size_t zr = 0;
                for (size_t rr = 0; rr < rcount; ++rr) {
                    bool zero = std::all_of(m[rr].begin(), m[rr].end(),
                                            [](const Int& v) { return sign(v) == 0; });
                    if (zero) zr = rr;
                }
                minpoly.assign(rcount, Int(0));
                for (size_t j = 0; j < rcount; ++j) minpoly[j] = combo[zr][j];
                if (k < fdeg) dep_before_f = true;
                break;
            }
            acc = mul(acc, w);
        }
        if (dep_before_f || minpoly.empty()) continue;  // generates too little; try next
        // minpoly has degree fdeg; test irreducibility over F_p
        std::vector<Int> mpc(minpoly);
        IntPolynomial mp(std::move(mpc));
        auto fac = factor_mod_p(mp, p);
        if (fac.size() == 1 && fac[0].second == 1 && fac[0].first.degree() == static_cast<int>(fdeg))
            return true;
    }
    return false;
}

// ---------------------------------------------------------------------------

std::optional<FieldElement> NumberField::sqrt_witness(const Int& m) const
{
    for (const auto& qs : quadsubs_)
        if (qs.m == m) return qs.witness;
    return std::nullopt;
}

VerificationReport verify_field_spec(const FieldSpecData& data)
{
    try {
        return NumberField::verify(data).report();
    } catch (const verification_error& e) {
        return e.report;
    }
}

}  // namespace qmcert

