#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace qalg {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Arithmetic between scalars of different ground fields.
struct FieldMismatchError : Error {
    FieldMismatchError() : Error("mixed field tags in exact arithmetic") {}
};

struct DivisionByZeroError : Error {
    DivisionByZeroError() : Error("division by zero in exact field") {}
};

enum class FieldKind : std::uint8_t { rational, prime };

/// Ground field descriptor: the rationals or a prime field F_p.
struct FieldTag {
    FieldKind kind = FieldKind::rational;
    std::int64_t p = 0;

    static FieldTag rationals() { return FieldTag{FieldKind::rational, 0}; }
    static FieldTag prime_field(std::int64_t p);

    bool operator==(const FieldTag&) const = default;
    std::string str() const;
};

/// An exact field element. Rationals are kept in lowest terms with
/// arbitrary-precision integers; prime-field elements as residues in [0, p).
class Scalar {
public:
    Scalar() : tag_(FieldTag::rationals()) {}

    static Scalar zero(FieldTag f);
    static Scalar one(FieldTag f);
    static Scalar of_int(FieldTag f, std::int64_t v);
    static Scalar of_rational(mpq_class q);
    /// num/den over the rationals; den must be nonzero.
    static Scalar of_fraction(std::int64_t num, std::int64_t den);
    /// Parses "n" or "n/d" in the given field.
    static Scalar parse(FieldTag f, const std::string& text);

    FieldTag field() const { return tag_; }
    bool is_zero() const;
    bool is_one() const;

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar inverse() const;

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// "3", "-2/5", or the residue for prime fields.
    std::string str() const;

    /// Rational payload; only meaningful for the rational tag.
    const mpq_class& rational_value() const { return q_; }
    /// Residue payload; only meaningful for prime tags.
    std::int64_t residue() const { return r_; }

private:
    void check(const Scalar& o) const {
        if (tag_ != o.tag_) throw FieldMismatchError();
    }

    FieldTag tag_;
    mpq_class q_;
    std::int64_t r_ = 0;
};

} // namespace qalg
