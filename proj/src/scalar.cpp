#include "qalg/scalar.hpp"

namespace qalg {

namespace {

bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::int64_t mod_reduce(std::int64_t v, std::int64_t p) {
    std::int64_t r = v % p;
    return r < 0 ? r + p : r;
}

std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::int64_t p) {
    return static_cast<std::int64_t>(static_cast<__int128>(a) * b % p);
}

// Extended Euclid; requires gcd(a, p) = 1.
std::int64_t mod_inv(std::int64_t a, std::int64_t p) {
    std::int64_t t = 0, new_t = 1, r = p, new_r = a;
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw DivisionByZeroError();
    return mod_reduce(t, p);
}

} // namespace

FieldTag FieldTag::prime_field(std::int64_t p) {
    if (!is_prime(p)) throw Error("field characteristic " + std::to_string(p) + " is not prime");
    return FieldTag{FieldKind::prime, p};
}

std::string FieldTag::str() const {
    return kind == FieldKind::rational ? "Q" : "F" + std::to_string(p);
}

Scalar Scalar::zero(FieldTag f) {
    Scalar s;
    s.tag_ = f;
    return s;
}

Scalar Scalar::one(FieldTag f) { return of_int(f, 1); }

Scalar Scalar::of_int(FieldTag f, std::int64_t v) {
    Scalar s;
    s.tag_ = f;
    if (f.kind == FieldKind::rational)
        s.q_ = mpq_class(static_cast<long>(v));
    else
        s.r_ = mod_reduce(v, f.p);
    return s;
}

Scalar Scalar::of_rational(mpq_class q) {
    Scalar s;
    s.tag_ = FieldTag::rationals();
    q.canonicalize();
    s.q_ = std::move(q);
    return s;
}

Scalar Scalar::of_fraction(std::int64_t num, std::int64_t den) {
    if (den == 0) throw DivisionByZeroError();
    mpq_class q(static_cast<long>(num), static_cast<long>(den));
    q.canonicalize();
    return of_rational(q);
}

Scalar Scalar::parse(FieldTag f, const std::string& text) {
    auto slash = text.find('/');
    std::int64_t num = std::stoll(text.substr(0, slash));
    std::int64_t den = 1;
    if (slash != std::string::npos) den = std::stoll(text.substr(slash + 1));
    if (den == 0) throw DivisionByZeroError();
    if (f.kind == FieldKind::rational) return of_fraction(num, den);
    Scalar n = of_int(f, num);
    return n / of_int(f, den);
}

bool Scalar::is_zero() const {
    return tag_.kind == FieldKind::rational ? q_ == 0 : r_ == 0;
}

bool Scalar::is_one() const {
    return tag_.kind == FieldKind::rational ? q_ == 1 : r_ == 1;
}

Scalar Scalar::operator-() const {
    Scalar s = *this;
    if (tag_.kind == FieldKind::rational)
        s.q_ = -q_;
    else
        s.r_ = r_ == 0 ? 0 : tag_.p - r_;
    return s;
}

Scalar Scalar::operator+(const Scalar& o) const {
    check(o);
    Scalar s = *this;
    if (tag_.kind == FieldKind::rational)
        s.q_ = q_ + o.q_;
    else
        s.r_ = mod_reduce(r_ + o.r_, tag_.p);
    return s;
}

Scalar Scalar::operator-(const Scalar& o) const {
    check(o);
    Scalar s = *this;
    if (tag_.kind == FieldKind::rational)
        s.q_ = q_ - o.q_;
    else
        s.r_ = mod_reduce(r_ - o.r_, tag_.p);
    return s;
}

Scalar Scalar::operator*(const Scalar& o) const {
    check(o);
    Scalar s = *this;
    if (tag_.kind == FieldKind::rational)
        s.q_ = q_ * o.q_;
    else
        s.r_ = mod_mul(r_, o.r_, tag_.p);
    return s;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw DivisionByZeroError();
    Scalar s = *this;
    if (tag_.kind == FieldKind::rational)
        s.q_ = 1 / q_;
    else
        s.r_ = mod_inv(r_, tag_.p);
    return s;
}

Scalar Scalar::operator/(const Scalar& o) const {
    check(o);
    return *this * o.inverse();
}

bool Scalar::operator==(const Scalar& o) const {
    if (tag_ != o.tag_) return false;
    return tag_.kind == FieldKind::rational ? q_ == o.q_ : r_ == o.r_;
}

std::string Scalar::str() const {
    if (tag_.kind == FieldKind::rational) return q_.get_str();
    return std::to_string(r_);
}

} // namespace qalg
