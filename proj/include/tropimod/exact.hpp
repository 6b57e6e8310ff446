#pragma once

// Exact arithmetic aliases and small vector helpers shared by all modules.
// Everything geometric in this library is computed over the rationals; the
// GMP classes carry the bignum work.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tropimod {

using Int = mpz_class;
using Rat = mpq_class;
using IVec = std::vector<Int>;
using QVec = std::vector<Rat>;

inline Int dot(const IVec& a, const IVec& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rat dotq(const IVec& a, const QVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
    return s;
}

inline bool is_zero(const IVec& v) {
    for (const Int& x : v)
        if (x != 0) return false;
    return true;
}

// Divides by the gcd of the entries and makes the first nonzero entry
// positive when `fix_sign` is set. Zero vectors pass through unchanged.
inline void make_primitive(IVec& v, bool fix_sign = false) {
    Int g = 0;
    for (const Int& x : v) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    if (g > 1)
        for (Int& x : v) x /= g;
    if (fix_sign) {
        for (const Int& x : v) {
            if (x == 0) continue;
            if (x < 0)
                for (Int& y : v) y = -y;
            break;
        }
    }
}

// Scales a rational vector to a primitive integer vector (common denominator
// times gcd removal).
inline IVec clear_denominators(const QVec& v) {
    Int lcm = 1;
    for (const Rat& q : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
    IVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rat s = v[i] * Rat(lcm);
        out[i] = s.get_num();
    }
    make_primitive(out);
    return out;
}

inline std::string vec_to_string(const IVec& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ' ';
        s += v[i].get_str();
    }
    return s;
}

struct unsupported_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace tropimod
