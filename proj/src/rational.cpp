#include "ultraharmonic/rational.hpp"

#include "ultraharmonic/error.hpp"

#include <algorithm>
#include <cmath>

namespace ultraharmonic {
namespace {

using Int = Fraction::Int;
using UInt = unsigned __int128;

UInt gcd128(UInt a, UInt b)
{
    while (b != 0) {
        if ((a >> 64) == 0 && (b >> 64) == 0) {
            auto x = static_cast<std::uint64_t>(a);
            auto y = static_cast<std::uint64_t>(b);
            while (y != 0) {
                auto r = x % y;
                x = y;
                y = r;
            }
            return x;
        }
        UInt r = a % b;
        a = b;
        b = r;
    }
    return a;
}

UInt magnitude(Int v) { return v < 0 ? static_cast<UInt>(-v) : static_cast<UInt>(v); }

std::string int128_to_string(Int v)
{
    if (v == 0) return "0";
    bool neg = v < 0;
    UInt m = magnitude(v);
    std::string s;
    while (m) {
        s.push_back(static_cast<char>('0' + static_cast<int>(m % 10)));
        m /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

// Binary splitting over [lo, hi): returns p/q = sum 1/(scale*(v+offset)).
void split(std::span<const Nat> v, Nat offset, Nat scale, std::size_t lo, std::size_t hi, mpz_class& p, mpz_class& q)
{
    if (hi - lo == 1) {
        p = 1;
        q = v[lo] + offset;
        if (scale != 1) q *= scale;
        return;
    }
    if (hi - lo == 2) {
        mpz_class a = v[lo] + offset;
        mpz_class b = v[lo + 1] + offset;
        if (scale != 1) {
            a *= scale;
            b *= scale;
        }
        p = a + b;
        q = a * b;
        return;
    }
    std::size_t mid = lo + (hi - lo) / 2;
    mpz_class p1, q1, p2, q2;
    split(v, offset, scale, lo, mid, p1, q1);
    split(v, offset, scale, mid, hi, p2, q2);
    p = p1 * q2 + p2 * q1;
    q = q1 * q2;
}

}  // namespace

Fraction::Fraction(Int num, Int den)
{
    if (den == 0) throw DomainError("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    UInt g = gcd128(magnitude(num), static_cast<UInt>(den));
    if (g > 1) {
        num /= static_cast<Int>(g);
        den /= static_cast<Int>(g);
    }
    num_ = num;
    den_ = den;
}

Fraction operator+(const Fraction& a, const Fraction& b)
{
    return Fraction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Fraction operator-(const Fraction& a, const Fraction& b)
{
    return Fraction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Fraction operator*(const Fraction& a, const Fraction& b) { return Fraction(a.num_ * b.num_, a.den_ * b.den_); }

bool operator<(const Fraction& a, const Fraction& b) { return a.num_ * b.den_ < b.num_ * a.den_; }

std::string Fraction::str() const
{
    if (den_ == 1) return int128_to_string(num_);
    return int128_to_string(num_) + "/" + int128_to_string(den_);
}

mpq_class exact_reciprocal_sum(std::span<const Nat> values) { return exact_reciprocal_sum(values, 0, 1); }

mpq_class exact_reciprocal_sum(std::span<const Nat> values, Nat offset, Nat scale)
{
    if (values.empty()) return mpq_class(0);
    mpz_class p, q;
    split(values, offset, scale, 0, values.size(), p, q);
    mpq_class r(p, q);
    r.canonicalize();
    return r;
}

double compensated_reciprocal_sum(std::span<const Nat> values)
{
    CompensatedSum s;
    for (Nat v : values) s.add(1.0 / static_cast<double>(v));
    return s.value();
}

std::string to_string(const mpq_class& q) { return q.get_str(); }

}  // namespace ultraharmonic
