#include "ramlab/tower.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ramlab {

namespace {

// p-adic valuation of n, capped at `cap`; cap for n == 0
long vp_capped(const Int& n, const Int& p, long cap) {
    if (n == 0) return cap;
    Int tmp;
    long v = static_cast<long>(mpz_remove(tmp.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
    return std::min(v, cap);
}

bool block_is_zero(const Int* a, size_t len) {
    for (size_t i = 0; i < len; ++i)
        if (mpz_sgn(a[i].get_mpz_t()) != 0) return false;
    return true;
}

void check_same_field(const TowerElem& a, const TowerElem& b) {
    if (!a.valid() || !b.valid() || a.F.get() != b.F.get())
        throw DomainError("operands belong to different fields");
}

// lower bound for the valuation of the true value
Rat vlb(const TowerElem& a) {
    auto v = valuation(a);
    return v ? *v : a.prec;
}

}  // namespace

// --------------------------------------------------------------- TowerField

FieldPtr TowerField::make_base(unsigned p, unsigned f_ur, long N) {
    if (N < 2) throw ConstructionError("coefficient precision must be >= 2");
    auto f = std::shared_ptr<TowerField>(new TowerField());
    f->p_ = p;
    f->f_ur_ = f_ur;
    f->N_ = N;
    f->e_ = 1;
    f->dim_ = f_ur;
    f->fq_ = std::make_shared<Fq>(p, f_ur);
    f->pN_ = int_pow(Int(p), static_cast<unsigned long>(N));
    f->hlift_.resize(f_ur + 1);
    for (unsigned i = 0; i <= f_ur; ++i) f->hlift_[i] = Int(f->fq_->modulus()[i]);
    f->slot_vals_ = {Rat(0)};
    f->chain_ = {f.get()};
    f->dims_chain_ = {f_ur};
    return f;
}

FieldPtr TowerField::extend_impl(std::vector<TowerElem> coeffs, long val_num, StepKind kind,
                                 const std::string& name) const {
    const long m = static_cast<long>(coeffs.size());
    if (m < 2) throw ConstructionError("step '" + name + "': degree must be >= 2");
    if (val_num < 1)
        throw ConstructionError("step '" + name + "': generator valuation must be positive");
    if (std::gcd(m, val_num) != 1)
        throw ConstructionError("step '" + name + "': generator valuation " +
                                std::to_string(val_num) + "/" + std::to_string(m) +
                                " (pi-units) shares a factor with the degree; the step is not "
                                "totally ramified of degree " + std::to_string(m));

    long min_prec = N_;  // field precision adapts to the least-known coefficient
    for (long i = 0; i < m; ++i) {
        const TowerElem& ci = coeffs[i];
        if (!ci.valid() || ci.F.get() != this)
            throw ConstructionError("step '" + name + "': coefficient not over the base field");
        if (ci.exact_zero) continue;
        min_prec = std::min(min_prec, to_long(rat_floor(ci.prec)));
        auto v = valuation_pi(ci);
        Rat bound = rat(val_num * (m - i), m);
        if (!v) {
            if (Rat(ci.prec * e_) <= bound)
                throw PrecisionError("step '" + name + "': coefficient " + std::to_string(i) +
                                     " undetermined at its Newton bound");
            continue;
        }
        if (*v < 0)
            throw ConstructionError("step '" + name + "': non-integral coefficient " +
                                    std::to_string(i));
        if (*v < bound || (i == 0 && *v != bound))
            throw ConstructionError("step '" + name + "': coefficient " + std::to_string(i) +
                                    " violates the Eisenstein/Newton condition (v_pi = " +
                                    rat_str(*v) + ", need " + (i == 0 ? "= " : ">= ") +
                                    rat_str(bound) + ")");
    }
    if (coeffs[0].exact_zero) throw ConstructionError("step '" + name + "': zero constant term");
    if (min_prec < 2)
        throw PrecisionError("step '" + name + "': defining coefficients carry no usable precision");

    auto f = std::shared_ptr<TowerField>(new TowerField());
    f->p_ = p_;
    f->f_ur_ = f_ur_;
    f->N_ = min_prec;
    f->e_ = e_ * m;
    f->dim_ = dim_ * m;
    f->fq_ = fq_;
    f->hlift_ = hlift_;
    f->pN_ = int_pow(Int(p_), static_cast<unsigned long>(min_prec));
    f->parent_ = shared_from_this();
    f->step_ = StepInfo{name, m, val_num, kind};
    f->step_coeffs_ = std::move(coeffs);
    f->chain_ = chain_;
    f->chain_.push_back(f.get());
    f->dims_chain_ = dims_chain_;
    f->dims_chain_.push_back(f->dim_);
    f->init_tables();
    return f;
}

FieldPtr TowerField::extend_eisenstein(const std::vector<TowerElem>& coeffs,
                                       const std::string& name) const {
    return extend_impl(coeffs, 1, StepKind::eisenstein, name);
}

FieldPtr TowerField::extend_radical(long m, const TowerElem& radicand, const std::string& name) const {
    if (!radicand.valid() || radicand.F.get() != this)
        throw ConstructionError("step '" + name + "': radicand not over the base field");
    if (m < 2) throw ConstructionError("step '" + name + "': degree must be >= 2");
    auto v = valuation_pi(radicand);
    if (!v) throw ConstructionError("step '" + name + "': radicand indistinguishable from 0");
    if (!rat_is_int(*v) || *v < 1)
        throw ConstructionError("step '" + name + "': radicand valuation " + rat_str(*v) +
                                " is not a positive integer in pi-units");
    long j = to_long(rat_floor(*v));
    std::vector<TowerElem> coeffs(static_cast<size_t>(m), zero());
    coeffs[0] = neg(radicand);
    return extend_impl(std::move(coeffs), j, StepKind::radical, name);
}

FieldPtr TowerField::extend_root(const std::vector<TowerElem>& coeffs, long val_num,
                                 const std::string& name) const {
    return extend_impl(coeffs, val_num, StepKind::root, name);
}

TowerElem TowerField::generator_pow_small(long t) const {
    if (is_base()) throw DomainError("base field has no ramified generator");
    TowerElem x;
    x.F = shared_from_this();
    x.c.assign(dim_, Int(0));
    x.pshift = 0;
    x.prec = Rat(N_);
    x.exact_zero = false;
    x.c[static_cast<size_t>(t) * parent_->dim_] = 1;
    return x;
}

void TowerField::init_tables() {
    const size_t nslots = dim_ / f_ur_;
    slot_vals_.assign(nslots, Rat(0));
    for (size_t r = 0; r < nslots; ++r) {
        size_t idx = r;
        Rat v = 0;
        for (size_t lvl = 1; lvl < chain_.size(); ++lvl) {
            const StepInfo& st = chain_[lvl]->step_;
            long i = static_cast<long>(idx % st.m);
            idx /= st.m;
            v += rat(i * st.val_num, chain_[lvl]->e_);
        }
        slot_vals_[r] = v;
    }
    if (is_base()) return;

    const long m = step_.m;
    const size_t sub = parent_->dim_;

    // integral parent element -> plain coordinate block mod p^N
    auto fold_coords = [&](const TowerElem& x) {
        std::vector<Int> out(sub, Int(0));
        if (x.exact_zero) return out;
        if (x.pshift < 0)
            throw ConstructionError("step '" + step_.name + "': non-integral coefficient");
        Int scale = int_pow(Int(p_), static_cast<unsigned long>(x.pshift));
        for (size_t i = 0; i < x.c.size(); ++i) {
            out[i] = x.c[i] * scale;
            mpz_fdiv_r(out[i].get_mpz_t(), out[i].get_mpz_t(), pN_.get_mpz_t());
        }
        return out;
    };

    // g^m = -(c_{m-1} g^{m-1} + ... + c_0); then g^{m+t} = g * g^{m+t-1}
    red_rows_.assign(static_cast<size_t>(m - 1), std::vector<Int>(dim_, Int(0)));
    {
        std::vector<Int>& gm = red_rows_[0];
        for (long i = 0; i < m; ++i) {
            TowerElem ci = step_coeffs_[i].exact_zero ? step_coeffs_[i] : neg(step_coeffs_[i]);
            if (ci.exact_zero) continue;
            auto blk = fold_coords(ci);
            std::copy(blk.begin(), blk.end(), gm.begin() + i * sub);
        }
    }
    if (m > 2) {
        std::vector<size_t> ws_off(chain_.size());
        size_t total = 0;
        for (size_t k = 0; k < chain_.size(); ++k) {
            ws_off[k] = total;
            if (k == 0)
                total += 2 * f_ur_;
            else
                total += (2 * static_cast<size_t>(chain_[k]->step_.m) - 1) * dims_chain_[k - 1] +
                         dims_chain_[k - 1];
        }
        std::vector<Int> ws(total, Int(0));
        std::vector<Int> prod(sub, Int(0));
        for (long t = 1; t <= m - 2; ++t) {
            const std::vector<Int>& prev = red_rows_[t - 1];
            std::vector<Int> cur(dim_, Int(0));
            for (long b = 0; b < m - 1; ++b)
                for (size_t i = 0; i < sub; ++i) cur[(b + 1) * sub + i] = prev[b * sub + i];
            const Int* top = prev.data() + (m - 1) * sub;
            if (!block_is_zero(top, sub)) {
                for (long s = 0; s < m; ++s) {
                    const Int* rowblk = red_rows_[0].data() + s * sub;
                    if (block_is_zero(rowblk, sub)) continue;
                    for (auto& w : prod) w = 0;
                    mul_rec(depth() - 1, top, rowblk, prod.data(), ws, ws_off);
                    for (size_t i = 0; i < sub; ++i) cur[s * sub + i] += prod[i];
                }
            }
            for (auto& x : cur) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), pN_.get_mpz_t());
            red_rows_[t] = std::move(cur);
        }
    }
}

std::string TowerField::describe() const {
    std::ostringstream os;
    os << "Q_" << p_ << "^ur(f=" << f_ur_ << ")";
    for (size_t lvl = 1; lvl < chain_.size(); ++lvl) {
        const StepInfo& st = chain_[lvl]->step_;
        os << " + " << st.name << "[deg " << st.m << ", v=" << st.val_num << "/" << chain_[lvl]->e_
           << "]";
    }
    os << " (e=" << e_ << ", N=" << N_ << ")";
    return os.str();
}

TowerElem TowerField::zero() const {
    TowerElem x;
    x.F = shared_from_this();
    x.c.assign(dim_, Int(0));
    x.pshift = 0;
    x.prec = Rat(N_);
    x.exact_zero = true;
    return x;
}

TowerElem TowerField::one() const { return from_int(1); }

TowerElem TowerField::from_int(const Int& n) const {
    TowerElem x = zero();
    if (n == 0) return x;
    x.exact_zero = false;
    x.c[0] = n;
    normalize(x);
    x.prec = Rat(x.pshift + N_);
    return x;
}

TowerElem TowerField::from_rational(const Rat& q) const {
    TowerElem num = from_int(q.get_num());
    if (q.get_den() == 1) return num;
    return div(num, from_int(q.get_den()));
}

TowerElem TowerField::from_residue(const Fq::Elem& r) const {
    TowerElem x = zero();
    bool nz = false;
    for (size_t i = 0; i < r.size() && i < f_ur_; ++i) {
        x.c[i] = Int(r[i]);
        if (r[i]) nz = true;
    }
    x.exact_zero = !nz;
    return x;
}

TowerElem TowerField::generator() const { return generator_pow_small(1); }

TowerElem TowerField::generator_at(size_t level) const {
    if (level < 1 || level > depth()) throw DomainError("generator level out of range");
    return embed(chain_[level]->generator_pow_small(1));
}

TowerElem TowerField::generator_by_name(const std::string& name) const {
    for (size_t lvl = 1; lvl < chain_.size(); ++lvl)
        if (chain_[lvl]->step_.name == name) return generator_at(lvl);
    throw DomainError("no step generator named '" + name + "'");
}

TowerElem TowerField::monomial(long k_pi) const {
    // peel the target valuation level by level; at each step the exponent
    // i = k * val_num^{-1} mod m is the unique one matching fractional parts
    TowerElem acc = one();
    long k = k_pi;
    for (size_t lvl = chain_.size(); lvl-- > 1;) {
        const StepInfo& st = chain_[lvl]->step_;
        long a = ((st.val_num % st.m) + st.m) % st.m;
        long ainv = 1;
        for (long t = 1; t < st.m; ++t)
            if ((a * t) % st.m == 1) {
                ainv = t;
                break;
            }
        long i = ((k % st.m) * ainv) % st.m;
        if (i < 0) i += st.m;
        if (i) acc = mul(acc, pow_i(generator_at(lvl), i));
        k = (k - i * st.val_num) / st.m;
    }
    if (k) {
        acc.pshift += k;
        acc.prec += k;
        normalize(acc);
    }
    return acc;
}

bool TowerField::is_ancestor_or_self(const TowerField* other) const {
    for (const TowerField* f : chain_)
        if (f == other) return true;
    return false;
}

TowerElem TowerField::embed(const TowerElem& x) const {
    if (!x.valid()) throw DomainError("embedding an invalid element");
    if (x.F.get() == this) return x;
    if (!is_ancestor_or_self(x.F.get()))
        throw DomainError("element field is not a subfield of the target tower");
    TowerElem y;
    y.F = shared_from_this();
    y.c.assign(dim_, Int(0));
    std::copy(x.c.begin(), x.c.end(), y.c.begin());
    y.pshift = x.pshift;
    y.prec = x.prec;
    y.exact_zero = x.exact_zero;
    normalize(y);
    if (!y.exact_zero) y.prec = std::min(y.prec, Rat(y.pshift + N_));
    return y;
}

FieldPtr TowerField::truncated(long N2) const {
    if (N2 >= N_) return shared_from_this();
    FieldPtr f = make_base(p_, f_ur_, N2);
    for (size_t lvl = 1; lvl < chain_.size(); ++lvl) {
        const TowerField* src = chain_[lvl];
        std::vector<TowerElem> coeffs;
        coeffs.reserve(src->step_coeffs_.size());
        for (const TowerElem& c : src->step_coeffs_) {
            TowerElem t;
            t.F = f;
            t.c.assign(f->dim(), Int(0));
            std::copy(c.c.begin(), c.c.end(), t.c.begin());
            t.pshift = c.pshift;
            t.prec = std::min(c.prec, Rat(c.pshift + N2));
            t.exact_zero = c.exact_zero;
            normalize(t);
            coeffs.push_back(std::move(t));
        }
        f = f->extend_impl(std::move(coeffs), src->step_.val_num, src->step_.kind, src->step_.name);
    }
    return f;
}

// ------------------------------------------------------- core multiplication

void TowerField::mul_rec(size_t lvl, const Int* a, const Int* b, Int* out, std::vector<Int>& ws,
                         const std::vector<size_t>& ws_off) const {
    if (lvl == 0) {
        const size_t f = f_ur_;
        Int* tmp = ws.data() + ws_off[0];
        for (size_t i = 0; i < 2 * f; ++i) tmp[i] = 0;
        for (size_t i = 0; i < f; ++i) {
            if (mpz_sgn(a[i].get_mpz_t()) == 0) continue;
            for (size_t j = 0; j < f; ++j) {
                if (mpz_sgn(b[j].get_mpz_t()) == 0) continue;
                mpz_addmul(tmp[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
            }
        }
        if (f > 1) {
            for (size_t k = 2 * f - 2; k >= f; --k) {
                if (mpz_sgn(tmp[k].get_mpz_t()) != 0) {
                    for (size_t i = 0; i < f; ++i)
                        if (hlift_[i] != 0)
                            mpz_submul(tmp[k - f + i].get_mpz_t(), tmp[k].get_mpz_t(),
                                       hlift_[i].get_mpz_t());
                    tmp[k] = 0;
                }
            }
        }
        for (size_t i = 0; i < f; ++i)
            mpz_add(out[i].get_mpz_t(), out[i].get_mpz_t(), tmp[i].get_mpz_t());
        return;
    }

    const TowerField* fld = chain_[lvl];
    const long m = fld->step_.m;
    const size_t sub = dims_chain_[lvl - 1];
    Int* blocks = ws.data() + ws_off[lvl];
    for (long t = 0; t < 2 * m - 1; ++t)
        for (size_t i = 0; i < sub; ++i) blocks[t * sub + i] = 0;

    for (long i = 0; i < m; ++i) {
        if (block_is_zero(a + i * sub, sub)) continue;
        for (long j = 0; j < m; ++j) {
            if (block_is_zero(b + j * sub, sub)) continue;
            mul_rec(lvl - 1, a + i * sub, b + j * sub, blocks + (i + j) * sub, ws, ws_off);
        }
    }
    for (long t = 2 * m - 2; t >= m; --t) {
        Int* blk = blocks + t * sub;
        if (block_is_zero(blk, sub)) continue;
        const std::vector<Int>& row = fld->red_rows_[t - m];
        for (long s = 0; s < m; ++s) {
            const Int* rowblk = row.data() + s * sub;
            if (block_is_zero(rowblk, sub)) continue;
            mul_rec(lvl - 1, blk, rowblk, blocks + s * sub, ws, ws_off);
        }
        for (size_t i = 0; i < sub; ++i) blk[i] = 0;
    }
    for (long t = 0; t < m; ++t)
        for (size_t i = 0; i < sub; ++i)
            mpz_add(out[t * sub + i].get_mpz_t(), out[t * sub + i].get_mpz_t(),
                    blocks[t * sub + i].get_mpz_t());
}

void TowerField::raw_mul(const std::vector<Int>& a, const std::vector<Int>& b,
                         std::vector<Int>& out) const {
    out.assign(dim_, Int(0));
    std::vector<size_t> ws_off(chain_.size());
    size_t total = 0;
    for (size_t k = 0; k < chain_.size(); ++k) {
        ws_off[k] = total;
        if (k == 0)
            total += 2 * f_ur_;
        else
            total += (2 * static_cast<size_t>(chain_[k]->step_.m) - 1) * dims_chain_[k - 1] +
                     dims_chain_[k - 1];
    }
    std::vector<Int> ws(total, Int(0));
    mul_rec(depth(), a.data(), b.data(), out.data(), ws, ws_off);
}

// ------------------------------------------------------- element operations

void normalize(TowerElem& x) {
    const TowerField& F = *x.F;
    const Int p(F.p());
    const long N = F.coeff_prec();
    // extract the common p-power from the exact coordinates FIRST: reducing
    // mod p^N beforehand would truncate digits the shift then falsely claims
    long k = N;
    for (const auto& c : x.c) {
        if (mpz_sgn(c.get_mpz_t()) == 0) continue;
        k = vp_capped(c, p, k);
        if (k == 0) break;
    }
    bool any = false;
    for (const auto& c : x.c)
        if (mpz_sgn(c.get_mpz_t()) != 0) any = true;
    if (any && k > 0) {
        Int pk = int_pow(p, static_cast<unsigned long>(k));
        for (auto& c : x.c)
            if (mpz_sgn(c.get_mpz_t()) != 0)
                mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pk.get_mpz_t());
        x.pshift += k;
    }
    for (auto& c : x.c) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), F.p_pow_N().get_mpz_t());
    if (!x.exact_zero && x.prec > Rat(x.pshift + N)) x.prec = Rat(x.pshift + N);
}

TowerElem add(const TowerElem& a, const TowerElem& b) {
    check_same_field(a, b);
    if (a.exact_zero) return b;
    if (b.exact_zero) return a;
    const TowerField& F = *a.F;
    TowerElem r;
    r.F = a.F;
    r.prec = std::min(a.prec, b.prec);
    r.pshift = std::min(a.pshift, b.pshift);
    r.c.assign(F.dim(), Int(0));
    Int pa = int_pow(Int(F.p()), static_cast<unsigned long>(a.pshift - r.pshift));
    Int pb = int_pow(Int(F.p()), static_cast<unsigned long>(b.pshift - r.pshift));
    for (size_t i = 0; i < F.dim(); ++i) r.c[i] = a.c[i] * pa + b.c[i] * pb;
    normalize(r);
    return r;
}

TowerElem neg(const TowerElem& a) {
    if (a.exact_zero) return a;
    TowerElem r = a;
    for (auto& c : r.c)
        if (mpz_sgn(c.get_mpz_t()) != 0) c = a.F->p_pow_N() - c;
    return r;
}

TowerElem sub(const TowerElem& a, const TowerElem& b) { return add(a, neg(b)); }

TowerElem mul(const TowerElem& a, const TowerElem& b) {
    check_same_field(a, b);
    const TowerField& F = *a.F;
    if (a.exact_zero || b.exact_zero) return F.zero();
    TowerElem r;
    r.F = a.F;
    r.pshift = a.pshift + b.pshift;
    r.prec = std::min(a.prec + vlb(b), b.prec + vlb(a));
    // step-reduction tables are stored mod p^N, so the product carries an
    // absolute error at level p^{pshift_a + pshift_b + N}; a p-power
    // extracted by normalize() must not raise the claim past that level
    Rat cap = Rat(r.pshift + F.coeff_prec());
    if (r.prec > cap) r.prec = cap;
    F.raw_mul(a.c, b.c, r.c);
    normalize(r);
    return r;
}

TowerElem mul_int(const TowerElem& a, const Int& n) {
    if (a.exact_zero) return a;
    if (n == 0) return a.F->zero();
    TowerElem r = a;
    for (auto& c : r.c) c *= n;
    r.prec = a.prec + vp_capped(n, Int(a.F->p()), a.F->coeff_prec());
    normalize(r);
    return r;
}

TowerElem inv(const TowerElem& a) {
    if (!a.valid()) throw DomainError("inverse of an invalid element");
    const TowerField& F = *a.F;
    if (a.exact_zero) throw DomainError("division by exact zero");
    auto v = valuation(a);
    if (!v)
        throw PrecisionError("division by an element indistinguishable from 0 (prec " +
                             rat_str(a.prec) + ")");
    Rat vpi = *v * F.e();
    long k = to_long(rat_floor(vpi));
    TowerElem mono_inv = k == 0 ? F.one() : F.monomial(-k);
    TowerElem u = k == 0 ? a : mul(a, mono_inv);
    Fq::Elem r0 = residue(u);
    TowerElem y = F.from_residue(F.residue_field().inv(r0));
    for (int i = 0; i < 64; ++i) {
        TowerElem err = sub(F.one(), mul(u, y));
        if (is_zero_at_precision(err)) break;
        y = add(y, mul(y, err));
    }
    return k == 0 ? y : mul(y, mono_inv);
}

TowerElem div(const TowerElem& a, const TowerElem& b) {
    check_same_field(a, b);
    if (a.exact_zero) return a;
    return mul(a, inv(b));
}

TowerElem pow_i(TowerElem a, long n) {
    if (!a.valid()) throw DomainError("power of an invalid element");
    const TowerField& F = *a.F;
    if (n == 0) return F.one();
    if (n < 0) {
        a = inv(a);
        n = -n;
    }
    TowerElem r = F.one();
    for (;;) {
        if (n & 1) r = mul(r, a);
        n >>= 1;
        if (!n) break;
        a = mul(a, a);
    }
    return r;
}

std::optional<Rat> valuation(const TowerElem& a) {
    if (!a.valid()) throw DomainError("valuation of an invalid element");
    if (a.exact_zero) return std::nullopt;
    const TowerField& F = *a.F;
    const Int p(F.p());
    const long N = F.coeff_prec();
    const size_t fdeg = F.f_ur();
    const auto& svals = F.slot_vals();
    std::optional<Rat> best;
    for (size_t r = 0; r < svals.size(); ++r) {
        long vmin = N;
        for (size_t i = 0; i < fdeg; ++i) {
            const Int& c = a.c[r * fdeg + i];
            if (mpz_sgn(c.get_mpz_t()) == 0) continue;
            vmin = vp_capped(c, p, vmin);
            if (vmin == 0) break;
        }
        if (vmin >= N) continue;
        Rat cand = Rat(static_cast<long>(a.pshift + vmin)) + svals[r];
        if (!best || cand < *best) best = cand;
    }
    if (!best || *best >= a.prec) return std::nullopt;
    return best;
}

Rat valuation_or_throw(const TowerElem& a) {
    auto v = valuation(a);
    if (!v) {
        if (a.exact_zero) throw DomainError("valuation of exact zero");
        throw PrecisionError("element indistinguishable from 0 at precision " + rat_str(a.prec));
    }
    return *v;
}

std::optional<Rat> valuation_pi(const TowerElem& a) {
    auto v = valuation(a);
    if (!v) return std::nullopt;
    return *v * a.F->e();
}

bool is_zero_at_precision(const TowerElem& a) { return !valuation(a).has_value(); }

bool equal_at_precision(const TowerElem& a, const TowerElem& b) {
    return is_zero_at_precision(sub(a, b));
}

Fq::Elem residue(const TowerElem& a) {
    const TowerField& F = *a.F;
    const Fq& k = F.residue_field();
    if (a.exact_zero) return k.zero();
    auto v = valuation(a);
    if (!v) {
        if (a.prec <= 0)
            throw PrecisionError("residue image undetermined (prec " + rat_str(a.prec) + ")");
        return k.zero();
    }
    if (*v < 0) throw DomainError("residue image of an element of negative valuation");
    if (*v > 0) return k.zero();
    Fq::Elem r = k.zero();
    Int pk = int_pow(Int(F.p()), static_cast<unsigned long>(-a.pshift));
    for (size_t i = 0; i < F.f_ur(); ++i) {
        Int q = a.c[i] / pk;
        mpz_fdiv_r_ui(q.get_mpz_t(), q.get_mpz_t(), F.p());
        r[i] = static_cast<uint32_t>(q.get_ui());
    }
    return r;
}

TowerElem truncate_to(const TowerElem& a, const FieldPtr& F2) {
    if (a.F->dim() != F2->dim() || a.F->e() != F2->e())
        throw DomainError("truncation target is not a clone of the element's field");
    TowerElem r;
    r.F = F2;
    r.c = a.c;
    r.pshift = a.pshift;
    r.exact_zero = a.exact_zero;
    r.prec = std::min(a.prec, Rat(a.pshift + F2->coeff_prec()));
    normalize(r);
    return r;
}

std::string to_string(const TowerElem& a) {
    if (!a.valid()) return "<invalid>";
    if (a.exact_zero) return "0";
    const TowerField& F = *a.F;
    std::ostringstream os;
    if (a.pshift) os << F.p() << "^" << a.pshift << "*";
    os << "[";
    bool first = true;
    const size_t fdeg = F.f_ur();
    for (size_t r = 0; r < F.dim() / fdeg; ++r) {
        bool nz = false;
        for (size_t i = 0; i < fdeg; ++i)
            if (mpz_sgn(a.c[r * fdeg + i].get_mpz_t()) != 0) nz = true;
        if (!nz) continue;
        if (!first) os << " + ";
        first = false;
        os << "(";
        bool f2 = true;
        for (size_t i = 0; i < fdeg; ++i) {
            if (mpz_sgn(a.c[r * fdeg + i].get_mpz_t()) == 0) continue;
            if (!f2) os << "+";
            f2 = false;
            os << a.c[r * fdeg + i].get_str();
            if (i) os << "w^" << i;
        }
        os << ")";
        if (r) os << "*m" << r;
    }
    if (first) os << "0";
    os << "]@" << rat_str(a.prec);
    return os.str();
}

}  // namespace ramlab
