#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace loopcoh::linalg {

/// Thrown when an exact integer or rational computation leaves the int64 range.
class ArithmeticOverflow : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// A coefficient. `den` is 1 except over the rationals, where num/den is in
/// lowest terms with den > 0. Over a prime field `num` lies in [0, p).
struct Scalar {
    std::int64_t num = 0;
    std::int64_t den = 1;

    friend bool operator==(const Scalar&, const Scalar&) = default;
    friend auto operator<=>(const Scalar&, const Scalar&) = default;
};

enum class RingKind { integers, rationals, prime_field };

/// Exact coefficient ring: Z, Q or F_p.
class Ring {
public:
    static Ring integers() { return Ring(RingKind::integers, 0); }
    static Ring rationals() { return Ring(RingKind::rationals, 0); }
    /// Throws std::invalid_argument unless p is prime.
    static Ring prime_field(std::int64_t p);

    RingKind kind() const { return kind_; }
    std::int64_t modulus() const { return p_; }
    bool is_field() const { return kind_ != RingKind::integers; }
    /// 0 for Z and Q, p for F_p.
    std::int64_t characteristic() const { return kind_ == RingKind::prime_field ? p_ : 0; }
    bool is_char2() const { return characteristic() == 2; }

    Scalar zero() const { return {0, 1}; }
    Scalar one() const { return {1, 1}; }
    Scalar from_int(std::int64_t v) const;
    Scalar from_fraction(std::int64_t num, std::int64_t den) const;

    bool is_zero(const Scalar& a) const { return a.num == 0; }
    bool is_one(const Scalar& a) const { return a.num == 1 && a.den == 1; }
    /// Units of Z are +-1; every nonzero field element is a unit.
    bool is_unit(const Scalar& a) const;

    Scalar add(const Scalar& a, const Scalar& b) const;
    Scalar sub(const Scalar& a, const Scalar& b) const;
    Scalar mul(const Scalar& a, const Scalar& b) const;
    Scalar neg(const Scalar& a) const;
    /// Multiplicative inverse; throws std::domain_error for zero or non-units.
    Scalar inv(const Scalar& a) const;
    /// (-1)^e
    Scalar sign(long long e) const { return (e & 1) ? neg(one()) : one(); }

    std::string to_string(const Scalar& a) const;
    /// "Z", "Q" or "F<p>".
    std::string name() const;

    friend bool operator==(const Ring&, const Ring&) = default;

private:
    Ring(RingKind k, std::int64_t p) : kind_(k), p_(p) {}
    Scalar make_rational(__int128 num, __int128 den) const;
    Scalar make_integer(__int128 v) const;

    RingKind kind_;
    std::int64_t p_;
};

bool is_prime(std::int64_t n);

}  // namespace loopcoh::linalg
