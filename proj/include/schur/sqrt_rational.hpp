#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "schur/rational.hpp"

namespace schur {

// sign * sqrt(radicand) with radicand a non-negative rational in lowest
// terms. Closed under multiplication; this is the exact form of every
// Clebsch-Gordan coefficient and isoscalar factor in the project.
class SqrtRational {
  public:
    SqrtRational() = default;  // zero
    SqrtRational(int sign, Rational radicand) : sign_(sign), rad_(radicand) {
        if (rad_.sign() < 0) throw std::domain_error("SqrtRational: negative radicand");
        if (rad_.is_zero()) sign_ = 0;
        if (sign_ == 0) rad_ = Rational(0);
        if (sign_ != -1 && sign_ != 0 && sign_ != 1)
            throw std::domain_error("SqrtRational: bad sign");
    }

    // value = r (exactly), stored as sign(r) * sqrt(r^2)
    static SqrtRational from_rational(const Rational& r) {
        return SqrtRational(r.sign(), r * r);
    }
    static SqrtRational sqrt_of(const Rational& r) { return SqrtRational(1, r); }
    static SqrtRational zero() { return SqrtRational(); }
    static SqrtRational one() { return SqrtRational(1, Rational(1)); }

    int sign() const { return sign_; }
    const Rational& radicand() const { return rad_; }
    bool is_zero() const { return sign_ == 0; }

    // value squared, with the sign discarded
    Rational squared() const { return rad_; }

    SqrtRational operator-() const {
        SqrtRational r = *this;
        r.sign_ = -r.sign_;
        return r;
    }
    friend SqrtRational operator*(const SqrtRational& a, const SqrtRational& b) {
        return SqrtRational(a.sign_ * b.sign_, a.rad_ * b.rad_);
    }
    SqrtRational& operator*=(const SqrtRational& b) { return *this = *this * b; }

    friend bool operator==(const SqrtRational& a, const SqrtRational& b) {
        return a.sign_ == b.sign_ && a.rad_ == b.rad_;
    }
    friend bool operator!=(const SqrtRational& a, const SqrtRational& b) {
        return !(a == b);
    }

    double to_double() const { return sign_ * std::sqrt(rad_.to_double()); }

    std::string str() const {
        if (sign_ == 0) return "0";
        std::string s = sign_ < 0 ? "-" : "";
        return s + "sqrt(" + rad_.str() + ")";
    }

  private:
    int sign_ = 0;
    Rational rad_ = Rational(0);
};

namespace detail {
// radicand = coeff^2 * kernel with kernel square-free (num and den separately).
// Values are tiny; trial division is plenty.
inline void square_free_split(std::int64_t v, std::int64_t& square, std::int64_t& kernel) {
    square = 1;
    kernel = 1;
    for (std::int64_t p = 2; p * p <= v; ++p) {
        int e = 0;
        while (v % p == 0) {
            v /= p;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i) square *= p;
        if (e % 2) kernel *= p;
    }
    kernel *= v;  // leftover prime
}
}  // namespace detail

// Sum of sqrt-rationals, canonicalised so that terms with commensurable
// radicands (ratio a square of a rational) are merged. General state
// amplitudes need this: distinct coupling routes to the same basis state
// interfere.
class SqrtSum {
  public:
    SqrtSum() = default;
    SqrtSum(const SqrtRational& t) { add(t); }

    void add(const SqrtRational& t) {
        if (t.is_zero()) return;
        // split radicand n/d = (n*d)/d^2 -> coeff 1/d, kernel-part n*d
        Rational rad = t.radicand();
        std::int64_t sq_n, ker_n;
        detail::square_free_split(rad.num() * rad.den(), sq_n, ker_n);
        Rational coeff = Rational(t.sign()) * Rational(sq_n, rad.den());
        for (auto& term : terms_) {
            if (term.kernel == ker_n) {
                term.coeff += coeff;
                if (term.coeff.is_zero()) {
                    term = terms_.back();
                    terms_.pop_back();
                }
                return;
            }
        }
        terms_.push_back({ker_n, coeff});
    }
    void add(const SqrtSum& s) {
        for (const auto& t : s.as_sqrt_terms()) add(t);
    }
    void add_scaled(const SqrtSum& s, const SqrtRational& f) {
        for (const auto& t : s.as_sqrt_terms()) add(t * f);
    }

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    // each term as sign*sqrt(coeff^2 * kernel)
    std::vector<SqrtRational> as_sqrt_terms() const {
        std::vector<SqrtRational> out;
        out.reserve(terms_.size());
        for (const auto& t : terms_)
            out.push_back(SqrtRational(t.coeff.sign(), t.coeff * t.coeff * Rational(t.kernel)));
        return out;
    }

    // True single-sqrt amplitude (the common case).
    bool is_single() const { return terms_.size() <= 1; }
    SqrtRational as_single() const {
        if (terms_.empty()) return SqrtRational::zero();
        if (terms_.size() != 1)
            throw std::logic_error("SqrtSum: amplitude is a nontrivial sum of radicals");
        return as_sqrt_terms()[0];
    }

    // term-by-term product; stays exact
    SqrtSum times(const SqrtSum& other) const {
        SqrtSum out;
        for (const auto& a : as_sqrt_terms())
            for (const auto& b : other.as_sqrt_terms()) out.add(a * b);
        return out;
    }

    // exact rational value; throws when an irrational term survives
    Rational to_rational() const {
        if (terms_.empty()) return Rational(0);
        if (terms_.size() != 1 || terms_[0].kernel != 1)
            throw std::logic_error("SqrtSum: value is irrational");
        return terms_[0].coeff;
    }

    // |this|^2 as an exact rational; the irrational cross terms must cancel
    // pairwise (they do for inner products of states in the same orthonormal
    // family), otherwise this throws.
    Rational norm_squared() const { return inner(*this); }

    // <this, other> assuming the result is rational (throws otherwise).
    Rational inner(const SqrtSum& other) const {
        Rational rational_part(0);
        std::vector<std::pair<std::int64_t, Rational>> irr;
        for (const auto& a : terms_)
            for (const auto& b : other.terms_) {
                std::int64_t prod = a.kernel * b.kernel;
                std::int64_t sq, ker;
                detail::square_free_split(prod, sq, ker);
                Rational c = a.coeff * b.coeff * Rational(sq);
                if (ker == 1) {
                    rational_part += c;
                } else {
                    bool found = false;
                    for (auto& e : irr)
                        if (e.first == ker) {
                            e.second += c;
                            found = true;
                            break;
                        }
                    if (!found) irr.push_back({ker, c});
                }
            }
        for (const auto& e : irr)
            if (!e.second.is_zero())
                throw std::logic_error("SqrtSum::inner: irrational inner product");
        return rational_part;
    }

    double to_double() const {
        double v = 0;
        for (const auto& t : terms_) v += t.coeff.to_double() * std::sqrt(double(t.kernel));
        return v;
    }

    friend bool operator==(const SqrtSum& a, const SqrtSum& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        for (const auto& t : a.terms_) {
            bool found = false;
            for (const auto& u : b.terms_)
                if (t.kernel == u.kernel && t.coeff == u.coeff) {
                    found = true;
                    break;
                }
            if (!found) return false;
        }
        return true;
    }
    friend bool operator!=(const SqrtSum& a, const SqrtSum& b) { return !(a == b); }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            const auto t = as_sqrt_terms()[i];
            if (i && t.sign() > 0) s += "+";
            s += t.str();
        }
        return s;
    }

  private:
    struct Term {
        std::int64_t kernel;  // square-free positive integer
        Rational coeff;       // nonzero rational coefficient
    };
    std::vector<Term> terms_;
};

}  // namespace schur
