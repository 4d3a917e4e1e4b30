#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace torext {

// Error kinds mirror the CLI exit-code contract: math precondition failures
// exit 3, internal invariant breaches exit 4.
enum class ErrorKind {
    RingMismatch,
    ShapeError,
    HomogeneityError,
    ChainMapError,
    MinimalityError,
    AnnihilationError,
    LiftError,
    GenerationError,
    NotHighSyzygy,
    RegularityHypothesisFailed,
    Parse,
    Internal,
};

struct Error : std::runtime_error {
    ErrorKind kind;
    Error(ErrorKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

// Prime field F_p, elements stored as uint32_t in [0, p).
struct PrimeField {
    uint32_t p = 101;

    uint32_t add(uint32_t a, uint32_t b) const {
        uint32_t s = a + b;
        return s >= p ? s - p : s;
    }
    uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + p - b; }
    uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p - a; }
    uint32_t mul(uint32_t a, uint32_t b) const {
        return static_cast<uint32_t>((uint64_t)a * b % p);
    }
    uint32_t pow(uint32_t a, uint64_t e) const {
        uint32_t r = 1 % p;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    uint32_t inv(uint32_t a) const {
        if (a == 0) fail(ErrorKind::Internal, "division by zero in F_p");
        // extended Euclid
        int64_t t = 0, newt = 1, r = p, newr = a;
        while (newr != 0) {
            int64_t q = r / newr;
            int64_t tmp = t - q * newt;
            t = newt;
            newt = tmp;
            tmp = r - q * newr;
            r = newr;
            newr = tmp;
        }
        if (r != 1) fail(ErrorKind::Internal, "non-invertible element (p not prime?)");
        if (t < 0) t += p;
        return (uint32_t)t;
    }
    uint32_t of_int(long long v) const {
        long long m = v % (long long)p;
        if (m < 0) m += p;
        return (uint32_t)m;
    }
};

inline bool is_prime(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; (uint64_t)d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Standard-graded polynomial ring F_p[x_1,...,x_n].
struct Ring {
    PrimeField fp;
    int nvars = 0;
    std::vector<std::string> vars;

    static Ring make(uint32_t p, std::vector<std::string> names) {
        if (!is_prime(p)) fail(ErrorKind::Parse, "characteristic must be prime");
        if (p >= (1u << 20)) fail(ErrorKind::Parse, "characteristic must be below 2^20");
        Ring r;
        r.fp.p = p;
        r.nvars = (int)names.size();
        r.vars = std::move(names);
        if (r.nvars < 1 || r.nvars > 8) fail(ErrorKind::Parse, "supported variable count: 1..8");
        return r;
    }

    bool same_as(const Ring& o) const {
        return fp.p == o.fp.p && nvars == o.nvars && vars == o.vars;
    }
};

// Stable-address ring storage; values referenced by Polynomial/GradedMap must
// outlive them, so computations that make rings on the fly intern them here.
const Ring* intern_ring(const Ring& r);

}  // namespace torext
