#include "ramlab/poly.hpp"

#include <sstream>

namespace ramlab {

namespace {

void poly_trim(DensePoly& a) {
    while (!a.c.empty() && a.c.back().exact_zero) a.c.pop_back();
}

}  // namespace

DensePoly poly_make(FieldPtr F, std::vector<TowerElem> coeffs) {
    for (const auto& c : coeffs)
        if (!c.valid() || c.F.get() != F.get())
            throw DomainError("polynomial coefficient over the wrong field");
    DensePoly a{std::move(F), std::move(coeffs)};
    poly_trim(a);
    return a;
}

DensePoly poly_zero(FieldPtr F) { return DensePoly{std::move(F), {}}; }

DensePoly poly_one(FieldPtr F) {
    TowerElem one = F->one();
    return DensePoly{std::move(F), {one}};
}

DensePoly poly_x(FieldPtr F) {
    std::vector<TowerElem> c{F->zero(), F->one()};
    return DensePoly{std::move(F), std::move(c)};
}

DensePoly poly_from_ints(FieldPtr F, const std::vector<long>& coeffs) {
    std::vector<TowerElem> c;
    c.reserve(coeffs.size());
    for (long v : coeffs) c.push_back(F->from_int(v));
    return poly_make(std::move(F), std::move(c));
}

DensePoly poly_add(const DensePoly& a, const DensePoly& b) {
    DensePoly r;
    r.F = a.F;
    const size_t n = std::max(a.c.size(), b.c.size());
    r.c.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        if (i < a.c.size() && i < b.c.size())
            r.c.push_back(add(a.c[i], b.c[i]));
        else if (i < a.c.size())
            r.c.push_back(a.c[i]);
        else
            r.c.push_back(b.c[i]);
    }
    poly_trim(r);
    return r;
}

DensePoly poly_neg(const DensePoly& a) {
    DensePoly r = a;
    for (auto& c : r.c) c = neg(c);
    return r;
}

DensePoly poly_sub(const DensePoly& a, const DensePoly& b) { return poly_add(a, poly_neg(b)); }

DensePoly poly_mul(const DensePoly& a, const DensePoly& b) {
    if (a.is_zero() || b.is_zero()) return poly_zero(a.F);
    DensePoly r;
    r.F = a.F;
    r.c.assign(a.c.size() + b.c.size() - 1, a.F->zero());
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i].exact_zero) continue;
        for (size_t j = 0; j < b.c.size(); ++j) {
            if (b.c[j].exact_zero) continue;
            r.c[i + j] = add(r.c[i + j], mul(a.c[i], b.c[j]));
        }
    }
    poly_trim(r);
    return r;
}

DensePoly poly_scale(const DensePoly& a, const TowerElem& s) {
    DensePoly r = a;
    for (auto& c : r.c) c = mul(c, s);
    poly_trim(r);
    return r;
}

void poly_divrem_monic(const DensePoly& a, const DensePoly& b, DensePoly& q, DensePoly& r) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    if (!is_zero_at_precision(sub(b.lc(), b.F->one())))
        throw DomainError("poly_divrem_monic: divisor is not monic");
    const long db = b.degree();
    r = a;
    q = poly_zero(a.F);
    if (a.degree() >= db) q.c.assign(a.degree() - db + 1, a.F->zero());
    while (!r.is_zero() && r.degree() >= db) {
        long k = r.degree() - db;
        TowerElem f = r.c.back();
        q.c[k] = f;
        for (long i = 0; i <= db; ++i) r.c[k + i] = sub(r.c[k + i], mul(f, b.c[i]));
        // the leading position is now an inexact zero; drop it explicitly
        r.c.pop_back();
        poly_trim(r);
    }
    poly_trim(q);
}

DensePoly poly_mod_monic(const DensePoly& a, const DensePoly& b) {
    DensePoly q, r;
    poly_divrem_monic(a, b, q, r);
    return r;
}

DensePoly poly_derivative(const DensePoly& a) {
    DensePoly r;
    r.F = a.F;
    if (a.c.size() <= 1) return r;
    r.c.reserve(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i) r.c.push_back(mul_int(a.c[i], Int(static_cast<long>(i))));
    poly_trim(r);
    return r;
}

TowerElem poly_eval(const DensePoly& a, const TowerElem& x) {
    TowerElem acc = a.F->zero();
    for (size_t i = a.c.size(); i-- > 0;) acc = add(mul(acc, x), a.c[i]);
    return acc;
}

DensePoly poly_taylor_shift(const DensePoly& a, const TowerElem& s) {
    // Horner over polynomials: ((c_d (X+s) + c_{d-1})(X+s) + ...)
    DensePoly acc = poly_zero(a.F);
    DensePoly xs = poly_make(a.F, {s, a.F->one()});
    for (size_t i = a.c.size(); i-- > 0;) {
        acc = poly_mul(acc, xs);
        if (!a.c[i].exact_zero) acc = poly_add(acc, poly_make(a.F, {a.c[i]}));
    }
    return acc;
}

DensePoly poly_scale_x(const DensePoly& a, const TowerElem& s) {
    DensePoly r = a;
    TowerElem pw = a.F->one();
    for (size_t i = 0; i < r.c.size(); ++i) {
        if (i) pw = mul(pw, s);
        r.c[i] = mul(r.c[i], pw);
    }
    poly_trim(r);
    return r;
}

DensePoly poly_monicize(const DensePoly& a) {
    if (a.is_zero()) throw DomainError("cannot monicize the zero polynomial");
    TowerElem li = inv(a.lc());
    DensePoly r = poly_scale(a, li);
    r.c.back() = a.F->one();
    return r;
}

DensePoly poly_embed(const DensePoly& a, const FieldPtr& L) {
    DensePoly r;
    r.F = L;
    r.c.reserve(a.c.size());
    for (const auto& c : a.c) r.c.push_back(L->embed(c));
    return r;
}

bool poly_equal_at_precision(const DensePoly& a, const DensePoly& b) {
    DensePoly d = poly_sub(a, b);
    for (const auto& c : d.c)
        if (!c.exact_zero && !is_zero_at_precision(c)) return false;
    return true;
}

Rat poly_min_val_pi(const DensePoly& a) {
    if (a.is_zero()) throw DomainError("valuation of the zero polynomial");
    bool have = false;
    Rat best;
    for (const auto& c : a.c) {
        if (c.exact_zero) continue;
        auto v = valuation_pi(c);
        Rat cand = v ? *v : c.prec * a.F->e();
        if (!have || cand < best) {
            best = cand;
            have = true;
        }
    }
    if (!have) throw DomainError("valuation of the zero polynomial");
    return best;
}

std::string poly_to_string(const DensePoly& a) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = a.c.size(); i-- > 0;) {
        if (a.c[i].exact_zero) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << to_string(a.c[i]) << ")";
        if (i) os << "*X";
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

}  // namespace ramlab
