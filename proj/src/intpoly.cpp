#include "qmcert/intpoly.hpp"

#include <algorithm>
#include <sstream>

namespace qmcert {

namespace {
const Int kZero = 0;
}

IntPolynomial::IntPolynomial(std::vector<Int> coeffs) : c_(std::move(coeffs)) { normalize(); }

IntPolynomial::IntPolynomial(std::initializer_list<long> coeffs)
{
    c_.reserve(coeffs.size());
    for (long v : coeffs) c_.emplace_back(v);
    normalize();
}

void IntPolynomial::normalize()
{
    while (!c_.empty() && sign(c_.back()) == 0) c_.pop_back();
}

IntPolynomial IntPolynomial::x_power(unsigned k)
{
    std::vector<Int> c(k + 1, Int(0));
    c[k] = 1;
    return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::constant(const Int& v)
{
    if (sign(v) == 0) return {};
    return IntPolynomial(std::vector<Int>{v});
}

const Int& IntPolynomial::coeff(size_t i) const { return i < c_.size() ? c_[i] : kZero; }

const Int& IntPolynomial::leading() const
{
    if (is_zero()) throw internal_error("leading coefficient of zero polynomial");
    return c_.back();
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const
{
    std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
    for (size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + o.coeff(i);
    return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const
{
    std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
    for (size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) - o.coeff(i);
    return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const
{
    if (is_zero() || o.is_zero()) return {};
    std::vector<Int> r(c_.size() + o.c_.size() - 1, Int(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::operator-() const
{
    std::vector<Int> r(c_);
    for (auto& v : r) v = -v;
    return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::scaled(const Int& s) const
{
    if (sign(s) == 0) return {};
    std::vector<Int> r(c_);
    for (auto& v : r) v *= s;
    return IntPolynomial(std::move(r));
}

Int IntPolynomial::eval(const Int& x) const
{
    Int r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
}

Rat IntPolynomial::eval(const Rat& x) const
{
    Rat r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        r = r * x + Rat(*it);
        r.canonicalize();
    }
    return r;
}

IntPolynomial IntPolynomial::derivative() const
{
    if (c_.size() <= 1) return {};
    std::vector<Int> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Int(static_cast<long>(i));
    return IntPolynomial(std::move(r));
}

Int IntPolynomial::content() const
{
    Int g = 0;
    for (const auto& v : c_) g = qmcert::gcd(g, v);
    return g;
}

IntPolynomial IntPolynomial::primitive_part() const
{
    if (is_zero()) return {};
    Int g = content();
    if (sign(leading()) < 0) g = -g;
    std::vector<Int> r(c_);
    for (auto& v : r) v = divexact(v, g);
    return IntPolynomial(std::move(r));
}

bool IntPolynomial::is_squarefree() const
{
    if (is_zero()) return false;
    if (degree() == 0) return true;
    return gcd(*this, derivative()).degree() == 0;
}

namespace {

// Pseudo-remainder: lc(B)^(deg A - deg B + 1) * A = Q*B + R, deg R < deg B.
// Each reduction pass scales by lc(B) once; when cancellation drops the
// degree by more than one the missing powers are applied at the end so the
// exact lc(B)^(delta+1) scaling holds.
IntPolynomial pseudo_rem(IntPolynomial a, const IntPolynomial& b)
{
    int db = b.degree();
    const Int& lb = b.leading();
    int needed = a.degree() - db + 1;
    int passes = 0;
    while (!a.is_zero() && a.degree() >= db) {
        int shift = a.degree() - db;
        Int la = a.leading();
        // a <- lb*a - la*x^shift*b
        std::vector<Int> r(a.coeffs().size(), Int(0));
        for (size_t i = 0; i < a.coeffs().size(); ++i) r[i] = a.coeff(i) * lb;
        for (int i = 0; i <= db; ++i) r[i + shift] -= la * b.coeff(i);
        a = IntPolynomial(std::move(r));
        ++passes;
    }
    if (passes < needed && !a.is_zero()) a = a.scaled(pow_ui(lb, needed - passes));
    return a;
}

}  // namespace

Int IntPolynomial::resultant(const IntPolynomial& f, const IntPolynomial& g)
{
    if (f.is_zero() || g.is_zero()) throw input_error("resultant of zero polynomial");
    IntPolynomial a = f, b = g;
    bool negate = false;
    if (a.degree() < b.degree()) {
        std::swap(a, b);
        if ((a.degree() & 1) && (b.degree() & 1)) negate = true;
    }
    if (b.degree() == 0) {
        Int r = pow_ui(b.leading(), a.degree());
        return negate ? Int(-r) : r;
    }
    // Strip contents; primitive_part() normalizes lc > 0, and
    // Res(eps*A, B) = eps^{deg B} Res(A, B) for eps = +-1.
    int sa = sign(a.leading()), sb = sign(b.leading());
    Int ca = a.content(), cb = b.content();
    if (sa < 0 && (b.degree() & 1)) negate = !negate;
    if (sb < 0 && (a.degree() & 1)) negate = !negate;
    Int t = pow_ui(ca, b.degree()) * pow_ui(cb, a.degree());
    a = a.primitive_part();
    b = b.primitive_part();

    Int gcoef = 1, h = 1;
    while (true) {
        int da = a.degree(), db = b.degree();
        int delta = da - db;
        if ((da & 1) && (db & 1)) negate = !negate;
        IntPolynomial r = pseudo_rem(a, b);
        a = b;
        if (r.is_zero()) return 0;
        Int div = gcoef * pow_ui(h, delta);
        {
            std::vector<Int> rc(r.coeffs());
            for (auto& v : rc) v = divexact(v, div);
            b = IntPolynomial(std::move(rc));
        }
        gcoef = a.leading();
        if (delta > 0) h = divexact(pow_ui(gcoef, delta), pow_ui(h, delta - 1));
        if (b.degree() <= 0) {
            if (b.is_zero()) return 0;
            // h' = lc(b)^{deg a} / h^{deg a - 1}
            Int res = divexact(pow_ui(b.leading(), a.degree()), pow_ui(h, a.degree() - 1));
            res *= t;
            return negate ? Int(-res) : res;
        }
    }
}

IntPolynomial IntPolynomial::gcd(const IntPolynomial& f, const IntPolynomial& g)
{
    if (f.is_zero() && g.is_zero()) return {};
    if (f.is_zero()) return g.primitive_part().scaled(qmcert::abs(g.content()));
    if (g.is_zero()) return f.primitive_part().scaled(qmcert::abs(f.content()));
    Int cont = qmcert::gcd(f.content(), g.content());
    IntPolynomial a = f.primitive_part(), b = g.primitive_part();
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        IntPolynomial r = pseudo_rem(a, b).primitive_part();
        a = b;
        b = r;
    }
    return a.primitive_part().scaled(cont);
}

Int IntPolynomial::discriminant() const
{
    if (degree() < 1) throw input_error("discriminant needs degree >= 1");
    if (degree() == 1) return 1;
    Int r = resultant(*this, derivative());
    int n = degree();
    Int d = divexact(r, leading());
    if (((static_cast<long>(n) * (n - 1) / 2) & 1) != 0) d = -d;
    return d;
}

std::string IntPolynomial::to_string(const std::string& var) const
{
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Int& c = coeff(i);
        if (sign(c) == 0) continue;
        Int a = qmcert::abs(c);
        if (first) {
            if (sign(c) < 0) os << "-";
            first = false;
        } else {
            os << (sign(c) < 0 ? " - " : " + ");
        }
        if (i == 0 || a != 1) os << a.get_str();
        if (i > 0) {
            if (a != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Sturm sequence root counting

namespace {

using RatPoly = std::vector<Rat>;  // low first, normalized

void rat_normalize(RatPoly& p)
{
    while (!p.empty() && sign(p.back()) == 0) p.pop_back();
}

RatPoly rat_rem(RatPoly a, const RatPoly& b)
{
    while (a.size() >= b.size() && !a.empty()) {
        Rat q = a.back() / b.back();
        q.canonicalize();
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) {
            a[i + shift] -= q * b[i];
            a[i + shift].canonicalize();
        }
        rat_normalize(a);
    }
    return a;
}

int variations(const std::vector<int>& signs)
{
    int v = 0, prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

}  // namespace

int count_real_roots(const IntPolynomial& f)
{
    if (f.is_zero()) throw input_error("count_real_roots: zero polynomial");
    if (!f.is_squarefree()) throw input_error("count_real_roots: polynomial is not squarefree");
    if (f.degree() == 0) return 0;

    std::vector<RatPoly> chain;
    RatPoly p0, p1;
    IntPolynomial fd = f.derivative();
    for (const auto& c : f.coeffs()) p0.emplace_back(c);
    for (const auto& c : fd.coeffs()) p1.emplace_back(c);
    chain.push_back(p0);
    chain.push_back(p1);
    while (chain.back().size() > 1) {
        RatPoly r = rat_rem(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;  // cannot happen for squarefree input
        for (auto& v : r) v = -v;
        chain.push_back(std::move(r));
    }

    std::vector<int> at_pos, at_neg;
    for (const auto& p : chain) {
        if (p.empty()) continue;
        int lc = sign(p.back());
        at_pos.push_back(lc);
        at_neg.push_back((p.size() - 1) % 2 == 0 ? lc : -lc);
    }
    return variations(at_neg) - variations(at_pos);
}

}  // namespace qmcert
