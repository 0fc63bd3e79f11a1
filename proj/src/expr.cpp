#include "ramlab/expr.hpp"

#include <cctype>

namespace ramlab {

namespace {

struct Lexer {
    std::string s;
    size_t pos = 0;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip();
        return pos >= s.size();
    }
    bool accept(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c))
            throw DomainError("expression: expected '" + std::string(1, c) + "' in '" + s + "'");
    }
    bool peek_digit() {
        skip();
        return pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]));
    }
    Int integer() {
        skip();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) throw DomainError("expression: expected an integer in '" + s + "'");
        return Int(s.substr(start, pos - start));
    }
    std::string ident() {
        skip();
        size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        if (start == pos) throw DomainError("expression: expected a name in '" + s + "'");
        return s.substr(start, pos - start);
    }
};

// a parsed value remembers when it is syntactically an exact integer, so
// that rational powers of pure p-powers can be resolved canonically
struct Value {
    TowerElem elem;
    std::optional<Int> as_int;
};

struct Parser {
    Lexer lx;
    FieldPtr F;

    Value expr() {
        Value v = term();
        for (;;) {
            if (lx.accept('+'))
                v = combine(v, term(), '+');
            else if (lx.accept('-'))
                v = combine(v, term(), '-');
            else
                return v;
        }
    }

    Value term() {
        Value v = factor();
        for (;;) {
            if (lx.accept('*')) {
                v = combine(v, factor(), '*');
            } else if (lx.accept('/')) {
                Value w = factor();
                v.elem = div(v.elem, w.elem);
                v.as_int.reset();
            } else {
                return v;
            }
        }
    }

    Value combine(const Value& a, const Value& b, char op) {
        Value r;
        switch (op) {
            case '+': r.elem = add(a.elem, b.elem); break;
            case '-': r.elem = sub(a.elem, b.elem); break;
            default: r.elem = mul(a.elem, b.elem); break;
        }
        if (a.as_int && b.as_int) {
            switch (op) {
                case '+': r.as_int = *a.as_int + *b.as_int; break;
                case '-': r.as_int = *a.as_int - *b.as_int; break;
                default: r.as_int = *a.as_int * *b.as_int; break;
            }
        }
        return r;
    }

    Value factor() {
        if (lx.accept('-')) {
            Value v = factor();
            v.elem = neg(v.elem);
            if (v.as_int) v.as_int = -*v.as_int;
            return v;
        }
        Value v = atom();
        if (lx.accept('^')) {
            bool neg_exp = lx.accept('-');
            Int a, b = 1;
            if (lx.accept('(')) {
                bool neg2 = lx.accept('-');
                a = lx.integer();
                if (lx.accept('/')) b = lx.integer();
                lx.expect(')');
                if (neg2) a = -a;
            } else {
                a = lx.integer();
            }
            if (neg_exp) a = -a;
            v = power_rational(v, a, b);
        }
        return v;
    }

    Value power_rational(const Value& base, const Int& a, const Int& b) {
        if (b <= 0) throw DomainError("expression: exponent denominator must be positive");
        Value r;
        if (b == 1) {
            r.elem = pow_i(base.elem, to_long(a));
            if (base.as_int && a >= 0) {
                r.as_int = 1;
                for (Int i = 0; i < a; ++i) *r.as_int *= *base.as_int;
            }
            return r;
        }
        // rational exponent: the base must be +-(power of p); the result is
        // the canonical tower monomial of valuation (a/b) * v(base)
        if (!base.as_int)
            throw DomainError("expression: rational exponent on a non-integer base");
        Int n = *base.as_int;
        bool negative = n < 0;
        if (negative) n = -n;
        Int p(F->p());
        long k = 0;
        while (n > 1 && n % p == 0) {
            n /= p;
            ++k;
        }
        if (n != 1)
            throw DomainError("expression: rational exponent base is not a power of " +
                              std::to_string(F->p()));
        Rat target = rat(Int(k) * a * F->e(), b);
        if (!rat_is_int(target))
            throw DomainError("expression: valuation " + rat_str(rat(Int(k) * a, b)) +
                              " is not attained in this tower (e = " + std::to_string(F->e()) +
                              ")");
        r.elem = F->monomial(to_long(target.get_num()));
        if (negative) {
            if (mpz_even_p(b.get_mpz_t()))
                throw DomainError("expression: even root of a negative base");
            Int am;
            mpz_fdiv_r_ui(am.get_mpz_t(), a.get_mpz_t(), 2);
            if (am == 1) r.elem = neg(r.elem);
        }
        return r;
    }

    Value atom() {
        if (lx.accept('(')) {
            Value v = expr();
            lx.expect(')');
            return v;
        }
        if (lx.peek_digit()) {
            Value v;
            Int n = lx.integer();
            v.elem = F->from_int(n);
            v.as_int = n;
            return v;
        }
        std::string name = lx.ident();
        Value v;
        if (name == "p") {
            v.elem = F->p_elem();
            v.as_int = Int(F->p());
            return v;
        }
        v.elem = F->generator_by_name(name);
        return v;
    }
};

}  // namespace

TowerElem parse_element(const FieldPtr& F, const std::string& text) {
    Parser ps{Lexer{text}, F};
    Value v = ps.expr();
    if (!ps.lx.eof()) throw DomainError("expression: trailing input in '" + text + "'");
    return v.elem;
}

FieldPtr build_tower(const TowerSpec& spec) {
    FieldPtr F = TowerField::make_base(spec.p, spec.f_ur, spec.precision);
    size_t idx = 0;
    for (const StepSpec& st : spec.steps) {
        ++idx;
        if (std::holds_alternative<RadicalStepSpec>(st)) {
            const auto& rs = std::get<RadicalStepSpec>(st);
            std::string name = rs.name.empty() ? "g" + std::to_string(idx) : rs.name;
            F = F->extend_radical(rs.m, parse_element(F, rs.radicand), name);
        } else {
            const auto& es = std::get<EisensteinStepSpec>(st);
            std::string name = es.name.empty() ? "g" + std::to_string(idx) : es.name;
            std::vector<TowerElem> coeffs;
            coeffs.reserve(es.coeffs.size());
            for (const std::string& c : es.coeffs) coeffs.push_back(parse_element(F, c));
            F = F->extend_eisenstein(coeffs, name);
        }
    }
    return F;
}

}  // namespace ramlab
