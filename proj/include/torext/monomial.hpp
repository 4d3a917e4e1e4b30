#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "torext/ring.hpp"

namespace torext {

// Exponent vector with at most 8 variables; unused slots stay zero, so degree
// and grevlex comparisons never need the variable count.
struct Monomial {
    std::array<uint8_t, 8> e{};

    int deg() const {
        int d = 0;
        for (auto x : e) d += x;
        return d;
    }
    bool is_one() const {
        for (auto x : e)
            if (x) return false;
        return true;
    }
    static Monomial one() { return Monomial{}; }
    static Monomial var(int i, int k = 1) {
        Monomial m;
        m.e[i] = (uint8_t)k;
        return m;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a.e == b.e); }
};

// grevlex: larger degree wins; on ties the last differing exponent decides,
// smaller exponent there means larger monomial.
inline bool grevlex_greater(const Monomial& a, const Monomial& b) {
    int da = a.deg(), db = b.deg();
    if (da != db) return da > db;
    for (int i = 7; i >= 0; --i) {
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i];
    }
    return false;
}

inline bool grevlex_less(const Monomial& a, const Monomial& b) { return grevlex_greater(b, a); }

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (int i = 0; i < 8; ++i) {
        int s = a.e[i] + b.e[i];
        if (s > 255) fail(ErrorKind::Internal, "exponent overflow");
        m.e[i] = (uint8_t)s;
    }
    return m;
}

inline bool mono_divides(const Monomial& a, const Monomial& b) {
    // a | b
    for (int i = 0; i < 8; ++i)
        if (a.e[i] > b.e[i]) return false;
    return true;
}

inline Monomial mono_div(const Monomial& b, const Monomial& a) {
    Monomial m;
    for (int i = 0; i < 8; ++i) m.e[i] = (uint8_t)(b.e[i] - a.e[i]);
    return m;
}

inline Monomial mono_lcm(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (int i = 0; i < 8; ++i) m.e[i] = a.e[i] > b.e[i] ? a.e[i] : b.e[i];
    return m;
}

inline bool mono_coprime(const Monomial& a, const Monomial& b) {
    for (int i = 0; i < 8; ++i)
        if (a.e[i] && b.e[i]) return false;
    return true;
}

std::string mono_to_string(const Monomial& m, const Ring& R);

}  // namespace torext
