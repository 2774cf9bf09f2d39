#include "loopcoh/ring.hpp"

#include <limits>
#include <numeric>

namespace loopcoh::linalg {

namespace {

constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();
constexpr __int128 kMin = std::numeric_limits<std::int64_t>::min();

__int128 gcd128(__int128 a, __int128 b)
{
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

bool is_prime(std::int64_t n)
{
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Ring Ring::prime_field(std::int64_t p)
{
    if (!is_prime(p))
        throw std::invalid_argument("prime_field: " + std::to_string(p) + " is not prime");
    if (p > (std::int64_t{1} << 31))
        throw std::invalid_argument("prime_field: modulus too large");
    return Ring(RingKind::prime_field, p);
}

Scalar Ring::make_integer(__int128 v) const
{
    if (v > kMax || v < kMin) throw ArithmeticOverflow("integer coefficient overflow");
    return {static_cast<std::int64_t>(v), 1};
}

Scalar Ring::make_rational(__int128 num, __int128 den) const
{
    if (den == 0) throw std::domain_error("division by zero");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    __int128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (num == 0) den = 1;
    if (num > kMax || num < kMin || den > kMax) throw ArithmeticOverflow("rational coefficient overflow");
    return {static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
}

Scalar Ring::from_int(std::int64_t v) const
{
    if (kind_ == RingKind::prime_field) {
        std::int64_t r = v % p_;
        if (r < 0) r += p_;
        return {r, 1};
    }
    return {v, 1};
}

Scalar Ring::from_fraction(std::int64_t num, std::int64_t den) const
{
    switch (kind_) {
    case RingKind::integers:
        if (den == 0 || num % den != 0) throw std::domain_error("fraction is not an integer");
        return make_integer(static_cast<__int128>(num) / den);
    case RingKind::rationals:
        return make_rational(num, den);
    case RingKind::prime_field:
        return mul(from_int(num), inv(from_int(den)));
    }
    return zero();
}

bool Ring::is_unit(const Scalar& a) const
{
    if (kind_ == RingKind::integers) return a.num == 1 || a.num == -1;
    return a.num != 0;
}

Scalar Ring::add(const Scalar& a, const Scalar& b) const
{
    switch (kind_) {
    case RingKind::integers:
        return make_integer(static_cast<__int128>(a.num) + b.num);
    case RingKind::rationals:
        return make_rational(static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den,
                             static_cast<__int128>(a.den) * b.den);
    case RingKind::prime_field: {
        std::int64_t s = a.num + b.num;
        if (s >= p_) s -= p_;
        return {s, 1};
    }
    }
    return zero();
}

Scalar Ring::neg(const Scalar& a) const
{
    switch (kind_) {
    case RingKind::integers:
    case RingKind::rationals:
        if (a.num == std::numeric_limits<std::int64_t>::min()) throw ArithmeticOverflow("negation overflow");
        return {-a.num, a.den};
    case RingKind::prime_field:
        return {a.num == 0 ? 0 : p_ - a.num, 1};
    }
    return zero();
}

Scalar Ring::sub(const Scalar& a, const Scalar& b) const { return add(a, neg(b)); }

Scalar Ring::mul(const Scalar& a, const Scalar& b) const
{
    switch (kind_) {
    case RingKind::integers:
        return make_integer(static_cast<__int128>(a.num) * b.num);
    case RingKind::rationals:
        return make_rational(static_cast<__int128>(a.num) * b.num, static_cast<__int128>(a.den) * b.den);
    case RingKind::prime_field:
        return {static_cast<std::int64_t>((static_cast<__int128>(a.num) * b.num) % p_), 1};
    }
    return zero();
}

Scalar Ring::inv(const Scalar& a) const
{
    if (a.num == 0) throw std::domain_error("inverse of zero");
    switch (kind_) {
    case RingKind::integers:
        if (!is_unit(a)) throw std::domain_error("non-unit integer has no inverse");
        return a;
    case RingKind::rationals:
        return make_rational(a.den, a.num);
    case RingKind::prime_field: {
        // extended Euclid
        std::int64_t t = 0, new_t = 1, r = p_, new_r = a.num;
        while (new_r != 0) {
            std::int64_t q = r / new_r;
            std::int64_t tmp = t - q * new_t;
            t = new_t;
            new_t = tmp;
            tmp = r - q * new_r;
            r = new_r;
            new_r = tmp;
        }
        if (t < 0) t += p_;
        return {t, 1};
    }
    }
    return zero();
}

std::string Ring::to_string(const Scalar& a) const
{
    if (a.den == 1) return std::to_string(a.num);
    return std::to_string(a.num) + "/" + std::to_string(a.den);
}

std::string Ring::name() const
{
    switch (kind_) {
    case RingKind::integers: return "Z";
    case RingKind::rationals: return "Q";
    case RingKind::prime_field: return "F" + std::to_string(p_);
    }
    return "?";
}

}  // namespace loopcoh::linalg
