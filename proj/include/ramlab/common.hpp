#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace ramlab {

using Int = mpz_class;
using Rat = mpq_class;

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Recoverable by rebuilding the scenario at higher precision / residue degree.
struct PrecisionError : Error {
    explicit PrecisionError(const std::string& msg) : Error("insufficient precision: " + msg) {}
};

struct ConstructionError : Error {
    explicit ConstructionError(const std::string& msg) : Error("construction error: " + msg) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// floor(a) for exact rationals
inline Int rat_floor(const Rat& a) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_num().get_mpz_t(), a.get_den().get_mpz_t());
    return q;
}

inline Int rat_ceil(const Rat& a) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_num().get_mpz_t(), a.get_den().get_mpz_t());
    return q;
}

inline bool rat_is_int(const Rat& a) { return a.get_den() == 1; }

inline long to_long(const Int& a) {
    if (!a.fits_slong_p()) throw DomainError("integer out of range: " + a.get_str());
    return a.get_si();
}

inline std::string rat_str(const Rat& a) {
    if (rat_is_int(a)) return a.get_num().get_str();
    return a.get_num().get_str() + "/" + a.get_den().get_str();
}

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

}  // namespace ramlab
