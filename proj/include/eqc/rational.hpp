#pragma once
#include <gmpxx.h>
#include <string>

#include "eqc/errors.hpp"

namespace eqc {

using Int = mpz_class;
using Rat = mpq_class;

// mpq_class does not canonicalize two-argument constructions on its own.
inline Rat canon(Rat x) {
    x.canonicalize();
    return x;
}

// p-adic valuation of a nonzero integer.
inline long val_p_int(const Int& n, long p) {
    if (n == 0) throw err::precondition_violated("val_p of 0");
    Int m = abs(n);
    long v = 0;
    Int q, r;
    for (;;) {
        mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(p));
        if (r != 0) break;
        m = q;
        ++v;
    }
    return v;
}

// p-adic valuation of a nonzero rational.
inline long val_p(const Rat& x, long p) {
    return val_p_int(x.get_num(), p) - val_p_int(x.get_den(), p);
}

// x lies in Z_(p): denominator coprime to p.
inline bool is_p_local(const Rat& x, long p) {
    if (x == 0) return true;
    return val_p_int(x.get_den(), p) == 0;
}

// Residue of a p-local rational in {0, ..., p-1}.
inline long mod_p(const Rat& x, long p) {
    if (x == 0) return 0;
    if (!is_p_local(x, p)) throw err::precondition_violated("mod_p of a non-p-local rational");
    Int pz(p), dinv;
    if (mpz_invert(dinv.get_mpz_t(), x.get_den().get_mpz_t(), pz.get_mpz_t()) == 0)
        throw err::precondition_violated("mod_p: denominator not invertible");
    Int r = (x.get_num() % pz * dinv) % pz;
    if (r < 0) r += pz;
    return static_cast<long>(r.get_si());
}

inline std::string rat_to_string(const Rat& x) {
    return x.get_str();
}

inline bool is_prime_small(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

} // namespace eqc
