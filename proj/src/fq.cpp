#include "ramlab/fq.hpp"

#include <algorithm>
#include <sstream>

namespace ramlab {

namespace {

bool is_prime_u(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

// F_p[w]/(h): h is found by deterministic search (lexicographically first
// monic irreducible of degree f), so a given (p,f) always yields the same
// presentation and byte-identical downstream output.
Fq::Fq(unsigned p, unsigned f) : p_(p), f_(f) {
    if (!is_prime_u(p)) throw ConstructionError("p = " + std::to_string(p) + " is not prime");
    if (f < 1) throw ConstructionError("residue degree must be >= 1");
    if (f == 1) {
        h_ = {0, 1};  // h = w, unused
        return;
    }
    // search monic h = w^f + c_{f-1} w^{f-1} + ... + c_0 in lexicographic
    // order of (c_0, ..., c_{f-1}); tested with the one-off degree-f
    // irreducibility criterion below.
    Fq base(p, 1);
    std::vector<uint32_t> c(f, 0);
    for (;;) {
        if (c[0] != 0) {  // irreducible needs nonzero constant term
            FqPoly h;
            h.c.resize(f + 1);
            for (unsigned i = 0; i < f; ++i) h.c[i] = {c[i]};
            h.c[f] = {1};
            if (fqp_is_irreducible(base, h)) {
                h_.resize(f + 1);
                for (unsigned i = 0; i < f; ++i) h_[i] = c[i];
                h_[f] = 1;
                return;
            }
        }
        unsigned i = 0;
        while (i < f && ++c[i] == p) c[i++] = 0;
        if (i == f) throw ConstructionError("no irreducible polynomial found");  // unreachable
    }
}

uint64_t Fq::size() const {
    uint64_t s = 1;
    for (unsigned i = 0; i < f_; ++i) {
        if (s > UINT64_MAX / p_) throw DomainError("residue field too large to enumerate");
        s *= p_;
    }
    return s;
}

Fq::Elem Fq::one() const {
    Elem e(f_, 0);
    e[0] = 1;
    return e;
}

Fq::Elem Fq::gen() const {
    Elem e(f_, 0);
    if (f_ == 1)
        e[0] = 1;
    else
        e[1] = 1;
    return e;
}

Fq::Elem Fq::from_int(long n) const {
    long r = n % static_cast<long>(p_);
    if (r < 0) r += p_;
    Elem e(f_, 0);
    e[0] = static_cast<uint32_t>(r);
    return e;
}

bool Fq::is_zero(const Elem& a) const {
    for (auto v : a)
        if (v) return false;
    return true;
}

Fq::Elem Fq::add(const Elem& a, const Elem& b) const {
    Elem r(f_);
    for (unsigned i = 0; i < f_; ++i) r[i] = (a[i] + b[i]) % p_;
    return r;
}

Fq::Elem Fq::sub(const Elem& a, const Elem& b) const {
    Elem r(f_);
    for (unsigned i = 0; i < f_; ++i) r[i] = (a[i] + p_ - b[i]) % p_;
    return r;
}

Fq::Elem Fq::neg(const Elem& a) const {
    Elem r(f_);
    for (unsigned i = 0; i < f_; ++i) r[i] = a[i] ? p_ - a[i] : 0;
    return r;
}

Fq::Elem Fq::mul(const Elem& a, const Elem& b) const {
    std::vector<uint64_t> t(2 * f_ - 1, 0);
    for (unsigned i = 0; i < f_; ++i) {
        if (!a[i]) continue;
        for (unsigned j = 0; j < f_; ++j) t[i + j] += static_cast<uint64_t>(a[i]) * b[j];
    }
    // reduce by monic h
    for (long k = 2 * static_cast<long>(f_) - 2; k >= static_cast<long>(f_); --k) {
        uint64_t c = t[k] % p_;
        if (c) {
            uint64_t mc = p_ - c;
            for (unsigned i = 0; i < f_; ++i) t[k - f_ + i] += mc * h_[i];
        }
        t[k] = 0;
    }
    Elem r(f_);
    for (unsigned i = 0; i < f_; ++i) r[i] = static_cast<uint32_t>(t[i] % p_);
    return r;
}

Fq::Elem Fq::pow(Elem a, Int e) const {
    if (e < 0) {
        a = inv(a);
        e = -e;
    }
    Elem r = one();
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

Fq::Elem Fq::inv(const Elem& a) const {
    if (is_zero(a)) throw DomainError("inverse of zero in residue field");
    // a^(p^f - 2)
    Int e = int_pow(Int(p_), f_) - 2;
    return pow(a, e);
}

Fq::Elem Fq::frob_root(const Elem& a) const {
    // Frobenius x -> x^p has order f; inverse = x -> x^(p^(f-1))
    Int e = int_pow(Int(p_), f_ >= 1 ? f_ - 1 : 0);
    Elem copy = a;
    return pow(copy, e);
}

Fq::Elem Fq::from_index(uint64_t idx) const {
    Elem e(f_);
    for (unsigned i = 0; i < f_; ++i) {
        e[i] = static_cast<uint32_t>(idx % p_);
        idx /= p_;
    }
    return e;
}

uint64_t Fq::index(const Elem& a) const {
    uint64_t idx = 0;
    for (unsigned i = f_; i-- > 0;) idx = idx * p_ + a[i];
    return idx;
}

std::string Fq::to_string(const Elem& a) const {
    if (is_zero(a)) return "0";
    std::ostringstream os;
    bool first = true;
    for (unsigned i = 0; i < f_; ++i) {
        if (!a[i]) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0 || a[i] != 1) os << a[i];
        if (i == 0) continue;
        if (i >= 1 && a[i] != 1) os << "*";
        os << "w";
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

// ---------------------------------------------------------------- FqPoly

static void fqp_trim(const Fq& F, FqPoly& a) {
    while (!a.c.empty() && F.is_zero(a.c.back())) a.c.pop_back();
}

FqPoly fqp_make(const Fq& F, std::vector<Fq::Elem> coeffs) {
    FqPoly r{std::move(coeffs)};
    fqp_trim(F, r);
    return r;
}

FqPoly fqp_zero() { return FqPoly{}; }

FqPoly fqp_one(const Fq& F) { return FqPoly{{F.one()}}; }

FqPoly fqp_x(const Fq& F) { return FqPoly{{F.zero(), F.one()}}; }

bool fqp_equal(const Fq& F, const FqPoly& a, const FqPoly& b) {
    (void)F;
    return a.c == b.c;
}

FqPoly fqp_add(const Fq& F, const FqPoly& a, const FqPoly& b) {
    FqPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), F.zero());
    for (size_t i = 0; i < r.c.size(); ++i) {
        const Fq::Elem& x = i < a.c.size() ? a.c[i] : F.zero();
        if (i < a.c.size()) r.c[i] = x;
    }
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = F.add(r.c[i], b.c[i]);
    fqp_trim(F, r);
    return r;
}

FqPoly fqp_sub(const Fq& F, const FqPoly& a, const FqPoly& b) {
    FqPoly nb = b;
    for (auto& e : nb.c) e = F.neg(e);
    return fqp_add(F, a, nb);
}

FqPoly fqp_mul(const Fq& F, const FqPoly& a, const FqPoly& b) {
    if (a.is_zero() || b.is_zero()) return fqp_zero();
    FqPoly r;
    r.c.resize(a.c.size() + b.c.size() - 1, F.zero());
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (F.is_zero(a.c[i])) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = F.add(r.c[i + j], F.mul(a.c[i], b.c[j]));
    }
    fqp_trim(F, r);
    return r;
}

FqPoly fqp_scale(const Fq& F, const FqPoly& a, const Fq::Elem& s) {
    FqPoly r = a;
    for (auto& e : r.c) e = F.mul(e, s);
    fqp_trim(F, r);
    return r;
}

void fqp_divrem(const Fq& F, const FqPoly& a, const FqPoly& b, FqPoly& q, FqPoly& r) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    r = a;
    q = fqp_zero();
    long db = b.degree();
    Fq::Elem lc_inv = F.inv(b.c.back());
    if (r.degree() >= db) q.c.resize(r.degree() - db + 1, F.zero());
    while (!r.is_zero() && r.degree() >= db) {
        long k = r.degree() - db;
        Fq::Elem f = F.mul(r.c.back(), lc_inv);
        q.c[k] = f;
        for (long i = 0; i <= db; ++i) r.c[k + i] = F.sub(r.c[k + i], F.mul(f, b.c[i]));
        fqp_trim(F, r);
    }
    fqp_trim(F, q);
}

FqPoly fqp_mod(const Fq& F, const FqPoly& a, const FqPoly& b) {
    FqPoly q, r;
    fqp_divrem(F, a, b, q, r);
    return r;
}

FqPoly fqp_monic(const Fq& F, const FqPoly& a) {
    if (a.is_zero()) return a;
    return fqp_scale(F, a, F.inv(a.c.back()));
}

FqPoly fqp_gcd(const Fq& F, FqPoly a, FqPoly b) {
    while (!b.is_zero()) {
        FqPoly r = fqp_mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return fqp_monic(F, a);
}

void fqp_xgcd(const Fq& F, const FqPoly& a, const FqPoly& b, FqPoly& g, FqPoly& s, FqPoly& t) {
    FqPoly r0 = a, r1 = b;
    FqPoly s0 = fqp_one(F), s1 = fqp_zero();
    FqPoly t0 = fqp_zero(), t1 = fqp_one(F);
    while (!r1.is_zero()) {
        FqPoly q, r;
        fqp_divrem(F, r0, r1, q, r);
        r0 = std::move(r1);
        r1 = std::move(r);
        FqPoly ns = fqp_sub(F, s0, fqp_mul(F, q, s1));
        s0 = std::move(s1);
        s1 = std::move(ns);
        FqPoly nt = fqp_sub(F, t0, fqp_mul(F, q, t1));
        t0 = std::move(t1);
        t1 = std::move(nt);
    }
    if (!r0.is_zero()) {
        Fq::Elem lc_inv = F.inv(r0.c.back());
        r0 = fqp_scale(F, r0, lc_inv);
        s0 = fqp_scale(F, s0, lc_inv);
        t0 = fqp_scale(F, t0, lc_inv);
    }
    g = std::move(r0);
    s = std::move(s0);
    t = std::move(t0);
}

FqPoly fqp_derivative(const Fq& F, const FqPoly& a) {
    FqPoly r;
    if (a.c.size() <= 1) return r;
    r.c.resize(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i) {
        Fq::Elem k = F.from_int(static_cast<long>(i));
        r.c[i - 1] = F.mul(a.c[i], k);
    }
    fqp_trim(F, r);
    return r;
}

Fq::Elem fqp_eval(const Fq& F, const FqPoly& a, const Fq::Elem& x) {
    Fq::Elem acc = F.zero();
    for (size_t i = a.c.size(); i-- > 0;) acc = F.add(F.mul(acc, x), a.c[i]);
    return acc;
}

FqPoly fqp_powmod(const Fq& F, FqPoly base, Int e, const FqPoly& mod) {
    FqPoly r = fqp_one(F);
    base = fqp_mod(F, base, mod);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = fqp_mod(F, fqp_mul(F, r, base), mod);
        base = fqp_mod(F, fqp_mul(F, base, base), mod);
        e >>= 1;
    }
    return r;
}

std::vector<Fq::Elem> fqp_roots(const Fq& F, const FqPoly& a) {
    std::vector<Fq::Elem> roots;
    if (a.is_zero()) throw DomainError("roots of the zero polynomial");
    // restrict to gcd(a, X^q - X) so the scan only confirms candidates
    Int q = int_pow(Int(F.p()), F.f());
    FqPoly xq = fqp_powmod(F, fqp_x(F), q, a);
    FqPoly split = fqp_gcd(F, a, fqp_sub(F, xq, fqp_x(F)));
    if (split.degree() <= 0) return roots;
    uint64_t n = F.size();
    for (uint64_t i = 0; i < n; ++i) {
        Fq::Elem x = F.from_index(i);
        if (F.is_zero(fqp_eval(F, split, x))) {
            roots.push_back(x);
            if (roots.size() == static_cast<size_t>(split.degree())) break;
        }
    }
    return roots;
}

bool fqp_is_irreducible(const Fq& F, const FqPoly& a) {
    long d = a.degree();
    if (d <= 0) return false;
    if (d == 1) return true;
    // Rabin: X^(q^d) == X mod a, and X^(q^(d/l)) - X coprime to a for prime l | d
    Int q = int_pow(Int(F.p()), F.f());
    Int qd = 1;
    for (long i = 0; i < d; ++i) qd *= q;
    FqPoly x = fqp_x(F);
    FqPoly xqd = fqp_powmod(F, x, qd, a);
    if (!fqp_equal(F, xqd, fqp_mod(F, x, a))) return false;
    for (long l = 2; l <= d; ++l) {
        if (d % l != 0) continue;
        bool prime = true;
        for (long m = 2; m * m <= l; ++m)
            if (l % m == 0) prime = false;
        if (!prime) continue;
        Int qe = 1;
        for (long i = 0; i < d / l; ++i) qe *= q;
        FqPoly xe = fqp_powmod(F, x, qe, a);
        FqPoly g = fqp_gcd(F, a, fqp_sub(F, xe, x));
        if (g.degree() != 0) return false;
    }
    return true;
}

namespace {

// deterministic equal-degree splitting of a squarefree product of
// irreducibles of common degree d (McEliece/Cantor-Zassenhaus with a
// fixed enumeration of witness polynomials instead of random draws)
void edf(const Fq& F, const FqPoly& f, long d, std::vector<FqPoly>& out, uint64_t& counter) {
    if (f.degree() == d) {
        out.push_back(fqp_monic(F, f));
        return;
    }
    Int q = int_pow(Int(F.p()), F.f());
    Int qd = 1;
    for (long i = 0; i < d; ++i) qd *= q;
    for (;;) {
        // witness: next polynomial of degree < 2d from the deterministic counter
        ++counter;
        FqPoly w;
        uint64_t c = counter;
        w.c.resize(2 * d, F.zero());
        for (long i = 0; i < 2 * d && c; ++i) {
            w.c[i] = F.from_index(c % F.size());
            c /= F.size();
        }
        fqp_trim(F, w);
        if (w.degree() < 1) continue;
        FqPoly g = fqp_gcd(F, f, w);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            edf(F, g, d, out, counter);
            FqPoly quo, rem;
            fqp_divrem(F, f, g, quo, rem);
            edf(F, quo, d, out, counter);
            return;
        }
        FqPoly h;
        if (F.p() == 2) {
            // trace map: w + w^q + ... + w^(q^(d-1))
            h = fqp_mod(F, w, f);
            FqPoly acc = h;
            for (long i = 1; i < d; ++i) {
                h = fqp_powmod(F, h, q, f);
                acc = fqp_add(F, acc, h);
            }
            h = acc;
        } else {
            Int e = (qd - 1) / 2;
            h = fqp_sub(F, fqp_powmod(F, w, e, f), fqp_one(F));
        }
        g = fqp_gcd(F, f, h);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            edf(F, g, d, out, counter);
            FqPoly quo, rem;
            fqp_divrem(F, f, g, quo, rem);
            edf(F, quo, d, out, counter);
            return;
        }
    }
}

}  // namespace

std::vector<std::pair<FqPoly, unsigned>> fqp_factor(const Fq& F, const FqPoly& a) {
    std::vector<std::pair<FqPoly, unsigned>> result;
    if (a.degree() < 1) return result;
    FqPoly f = fqp_monic(F, a);

    // peel off content of X
    unsigned x_mult = 0;
    while (!f.c.empty() && F.is_zero(f.c[0])) {
        f.c.erase(f.c.begin());
        ++x_mult;
    }
    if (x_mult) result.push_back({fqp_x(F), x_mult});

    // squarefree split by repeated gcd with derivative, handling p-th powers
    std::vector<std::pair<FqPoly, unsigned>> stack{{f, 1}};
    std::vector<std::pair<FqPoly, unsigned>> squarefree;  // (squarefree factor, multiplicity)
    while (!stack.empty()) {
        auto [g, mult] = stack.back();
        stack.pop_back();
        if (g.degree() < 1) continue;
        FqPoly d = fqp_derivative(F, g);
        if (d.is_zero()) {
            // g = h(X^p): take p-th root of coefficients
            FqPoly h;
            h.c.resize(g.degree() / F.p() + 1, F.zero());
            for (size_t i = 0; i < h.c.size(); ++i) h.c[i] = F.frob_root(g.c[i * F.p()]);
            stack.push_back({h, mult * F.p()});
            continue;
        }
        FqPoly w = fqp_gcd(F, g, d);
        FqPoly sqf, rem;
        fqp_divrem(F, g, w, sqf, rem);
        unsigned m = mult;
        while (sqf.degree() > 0) {
            FqPoly y = fqp_gcd(F, sqf, w);
            FqPoly part, r2;
            fqp_divrem(F, sqf, y, part, r2);
            if (part.degree() > 0) squarefree.push_back({fqp_monic(F, part), m});
            FqPoly w2, r3;
            fqp_divrem(F, w, y, w2, r3);
            w = std::move(w2);
            sqf = std::move(y);
            m += mult;
        }
        if (w.degree() > 0) stack.push_back({w, mult});
    }

    // distinct-degree then equal-degree on each squarefree part
    Int q = int_pow(Int(F.p()), F.f());
    uint64_t counter = 0;
    for (auto& [sf, mult] : squarefree) {
        FqPoly g = sf;
        FqPoly xq = fqp_mod(F, fqp_x(F), g);
        for (long d = 1; g.degree() >= 1; ++d) {
            if (2 * d > g.degree()) {
                result.push_back({fqp_monic(F, g), mult});
                break;
            }
            xq = fqp_powmod(F, xq, q, g);
            FqPoly gd = fqp_gcd(F, g, fqp_sub(F, xq, fqp_x(F)));
            if (gd.degree() > 0) {
                std::vector<FqPoly> pieces;
                edf(F, gd, d, pieces, counter);
                for (auto& piece : pieces) result.push_back({piece, mult});
                FqPoly quo, rem;
                fqp_divrem(F, g, gd, quo, rem);
                g = std::move(quo);
                xq = fqp_mod(F, xq, g);
            }
        }
    }

    std::sort(result.begin(), result.end(), [&](const auto& x, const auto& y) {
        if (x.first.degree() != y.first.degree()) return x.first.degree() < y.first.degree();
        for (size_t i = x.first.c.size(); i-- > 0;) {
            uint64_t ix = F.index(x.first.c[i]), iy = F.index(y.first.c[i]);
            if (ix != iy) return ix < iy;
        }
        return false;
    });
    return result;
}

std::string fqp_to_string(const Fq& F, const FqPoly& a) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = a.c.size(); i-- > 0;) {
        if (F.is_zero(a.c[i])) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << F.to_string(a.c[i]) << ")";
        if (i >= 1) os << "*Y";
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

}  // namespace ramlab
