#pragma once

// Exact coefficient arithmetic: arbitrary-precision rationals (backed by GMP)
// and prime fields GF(p) with residues in [0, p).

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "lpa/errors.hpp"

namespace lpa {

inline bool is_prime(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

struct FieldSpec {
    enum class Kind { Rationals, PrimeField };

    Kind kind = Kind::Rationals;
    unsigned long p = 0;

    static FieldSpec rationals() { return FieldSpec{}; }

    static FieldSpec prime_field(unsigned long p) {
        if (!is_prime(p))
            throw std::invalid_argument("GF(p) requires a prime modulus, got " +
                                        std::to_string(p));
        return FieldSpec{Kind::PrimeField, p};
    }

    bool finite() const { return kind == Kind::PrimeField; }

    bool operator==(const FieldSpec& o) const { return kind == o.kind && p == o.p; }
    bool operator!=(const FieldSpec& o) const { return !(*this == o); }

    std::string describe() const {
        return kind == Kind::Rationals ? "q" : "gf:" + std::to_string(p);
    }
};

class Scalar {
public:
    Scalar() : spec_(FieldSpec::rationals()), v_(0) {}

    static Scalar zero(const FieldSpec& f) { return Scalar(f, mpq_class(0)); }
    static Scalar one(const FieldSpec& f) { return Scalar(f, mpq_class(1)); }

    static Scalar from_integer(const FieldSpec& f, long n) {
        return Scalar(f, mpq_class(n));
    }

    static Scalar from_fraction(const FieldSpec& f, long num, long den) {
        if (den == 0) throw DivisionByZero();
        if (f.finite())
            return from_integer(f, num) / from_integer(f, den);
        mpq_class q(num, den);
        q.canonicalize();
        return Scalar(f, q);
    }

    // Accepts "3", "-7/4"; plain residues under GF(p).
    static Scalar parse(const FieldSpec& f, const std::string& text) {
        mpq_class q;
        if (q.set_str(text, 10) != 0)
            throw std::invalid_argument("bad scalar literal: " + text);
        q.canonicalize();
        if (q.get_den() == 0) throw DivisionByZero();
        if (f.finite()) {
            Scalar rn(f, mpq_class(q.get_num()));
            Scalar rd(f, mpq_class(q.get_den()));
            return rn / rd;
        }
        return Scalar(f, q);
    }

    const FieldSpec& field() const { return spec_; }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    Scalar operator+(const Scalar& o) const {
        check(o);
        Scalar r(spec_, v_ + o.v_);
        r.normalize();
        return r;
    }

    Scalar operator-(const Scalar& o) const {
        check(o);
        Scalar r(spec_, v_ - o.v_);
        r.normalize();
        return r;
    }

    Scalar operator*(const Scalar& o) const {
        check(o);
        Scalar r(spec_, v_ * o.v_);
        r.normalize();
        return r;
    }

    Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }

    Scalar operator-() const {
        Scalar r(spec_, -v_);
        r.normalize();
        return r;
    }

    Scalar inverse() const {
        if (is_zero()) throw DivisionByZero();
        if (!spec_.finite()) return Scalar(spec_, 1 / v_);
        mpz_class inv;
        mpz_class mod(spec_.p);
        mpz_class num(v_.get_num());
        if (mpz_invert(inv.get_mpz_t(), num.get_mpz_t(), mod.get_mpz_t()) == 0)
            throw DivisionByZero();
        return Scalar(spec_, mpq_class(inv));
    }

    Scalar pow(unsigned long e) const {
        Scalar r = one(spec_);
        for (unsigned long i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    bool operator==(const Scalar& o) const { return spec_ == o.spec_ && v_ == o.v_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    std::string str() const { return v_.get_str(); }

    // k^times in enumeration order: 1..p-1 over GF(p); 1, 2, 3, ... over the
    // rationals (an endless search order rather than an exhaustive list).
    static std::vector<Scalar> units(const FieldSpec& f, unsigned long limit) {
        std::vector<Scalar> out;
        unsigned long top = f.finite() ? f.p - 1 : limit;
        for (unsigned long n = 1; n <= top && n <= limit; ++n)
            out.push_back(from_integer(f, static_cast<long>(n)));
        return out;
    }

private:
    Scalar(const FieldSpec& f, mpq_class v) : spec_(f), v_(std::move(v)) {
        normalize();
    }

    void check(const Scalar& o) const {
        if (spec_ != o.spec_)
            throw FieldMismatch("scalars over " + spec_.describe() + " and " +
                                o.spec_.describe());
    }

    void normalize() {
        v_.canonicalize();
        if (spec_.finite()) {
            mpz_class r = v_.get_num() % static_cast<long>(spec_.p);
            if (r < 0) r += static_cast<long>(spec_.p);
            v_ = mpq_class(r);
        }
    }

    FieldSpec spec_;
    mpq_class v_;
};

}  // namespace lpa
