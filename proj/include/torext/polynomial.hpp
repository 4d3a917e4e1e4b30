#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "torext/monomial.hpp"
#include "torext/ring.hpp"

namespace torext {

struct PTerm {
    Monomial m;
    uint32_t c;  // nonzero, in [1, p)
};

// Sparse multivariate polynomial; terms sorted grevlex-descending, no zero
// coefficients stored.
class Polynomial {
  public:
    Polynomial() : ring_(nullptr) {}
    explicit Polynomial(const Ring* R) : ring_(R) {}
    Polynomial(const Ring* R, std::vector<PTerm> terms) : ring_(R), t_(std::move(terms)) {
        normalize();
    }

    static Polynomial zero(const Ring* R) { return Polynomial(R); }
    static Polynomial constant(const Ring* R, long long v) {
        Polynomial f(R);
        uint32_t c = R->fp.of_int(v);
        if (c) f.t_.push_back({Monomial::one(), c});
        return f;
    }
    static Polynomial monomial(const Ring* R, const Monomial& m, uint32_t c = 1) {
        Polynomial f(R);
        c %= R->fp.p;
        if (c) f.t_.push_back({m, c});
        return f;
    }
    static Polynomial variable(const Ring* R, int i, int k = 1) {
        return monomial(R, Monomial::var(i, k));
    }

    const Ring* ring() const { return ring_; }
    bool is_zero() const { return t_.empty(); }
    size_t nterms() const { return t_.size(); }
    const std::vector<PTerm>& terms() const { return t_; }
    const PTerm& lead() const { return t_.front(); }

    bool is_homogeneous() const {
        if (t_.empty()) return true;
        int d = t_.front().m.deg();
        for (auto& tm : t_)
            if (tm.m.deg() != d) return false;
        return true;
    }
    // degree of a homogeneous polynomial; max term degree otherwise, -1 for 0
    int degree() const { return t_.empty() ? -1 : t_.front().m.deg(); }

    // coefficient of the degree-0 monomial
    uint32_t constant_term() const {
        if (!t_.empty() && t_.back().m.is_one()) return t_.back().c;
        return 0;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (a.t_.size() != b.t_.size()) return false;
        for (size_t i = 0; i < a.t_.size(); ++i)
            if (a.t_[i].m != b.t_[i].m || a.t_[i].c != b.t_[i].c) return false;
        return true;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;

    Polynomial scaled(uint32_t c) const;
    // this * c*m
    Polynomial times_term(const Monomial& m, uint32_t c) const;

    std::string str() const;

  private:
    const Ring* ring_;
    std::vector<PTerm> t_;

    void normalize();
    void check_same_ring(const Polynomial& o) const {
        if (ring_ == o.ring_) return;
        if (!ring_ || !o.ring_ || !ring_->same_as(*o.ring_))
            fail(ErrorKind::RingMismatch, "operands live in different rings");
    }
};

Polynomial poly_add(const Polynomial& a, const Polynomial& b);
Polynomial poly_sub(const Polynomial& a, const Polynomial& b);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);

}  // namespace torext
