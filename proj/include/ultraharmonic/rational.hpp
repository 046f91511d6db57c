#pragma once

#include "ultraharmonic/primes.hpp"

#include <gmpxx.h>

#include <cmath>
#include <span>
#include <string>

namespace ultraharmonic {

// Small exact rational on 128-bit integers, normalized (den > 0, coprime).
// Enough for identities whose operands stay below 2^63.
class Fraction {
public:
    using Int = __int128;

    Fraction() = default;
    Fraction(Int num, Int den = 1);

    Int num() const { return num_; }
    Int den() const { return den_; }

    friend Fraction operator+(const Fraction& a, const Fraction& b);
    friend Fraction operator-(const Fraction& a, const Fraction& b);
    friend Fraction operator*(const Fraction& a, const Fraction& b);
    friend bool operator==(const Fraction& a, const Fraction& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator<(const Fraction& a, const Fraction& b);

    std::string str() const;
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

private:
    Int num_ = 0;
    Int den_ = 1;
};

// Exact sum of 1/v over the values by binary splitting: the unreduced
// numerator/denominator tree is merged bottom-up and reduced once.
mpq_class exact_reciprocal_sum(std::span<const Nat> values);

// Same, but each term is 1/(v + offset).
mpq_class exact_reciprocal_sum(std::span<const Nat> values, Nat offset, Nat scale);

// Neumaier-compensated sum of 1/v.
double compensated_reciprocal_sum(std::span<const Nat> values);

class CompensatedSum {
public:
    void add(double term)
    {
        double t = sum_ + term;
        if (std::abs(sum_) >= std::abs(term)) comp_ += (sum_ - t) + term;
        else comp_ += (term - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

std::string to_string(const mpq_class& q);

}  // namespace ultraharmonic
