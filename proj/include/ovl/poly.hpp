#pragma once

// Dense univariate polynomials with exact rational coefficients.
//
// Coefficients are stored lowest degree first and trailing zeros are trimmed,
// so equality of values is equality of representations.

#include "ovl/rational.hpp"

#include <complex>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace ovl {

class Poly {
  public:
    Poly() = default;
    Poly(std::initializer_list<Rational> coeffs_low_first) : c_(coeffs_low_first) { trim(); }
    explicit Poly(std::vector<Rational> coeffs_low_first) : c_(std::move(coeffs_low_first)) { trim(); }

    static Poly zero() { return Poly(); }
    static Poly constant(const Rational& a) { return Poly({a}); }
    static Poly x() { return Poly({Rational(0), Rational(1)}); }

    // -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    const Rational& coeff(int i) const {
        static const Rational kZero(0);
        if (i < 0 || i >= static_cast<int>(c_.size())) return kZero;
        return c_[static_cast<size_t>(i)];
    }
    const std::vector<Rational>& coeffs() const { return c_; }

    // True when every term has degree congruent to k mod 2.
    bool has_parity_of(int k) const {
        for (size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != 0 && (static_cast<int>(i) - k) % 2 != 0) return false;
        return true;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
        return Poly(std::move(r));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(r));
    }
    friend Poly operator*(const Rational& s, const Poly& p) {
        if (s == 0) return Poly();
        std::vector<Rational> r = p.c_;
        for (auto& v : r) v *= s;
        return Poly(std::move(r));
    }
    Poly operator-() const { return Rational(-1) * *this; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // p(x + s), exact.
    Poly shifted(const Rational& s) const {
        Poly result;
        Poly lin({s, Rational(1)});
        for (int i = degree(); i >= 0; --i) result = result * lin + Poly::constant(c_[static_cast<size_t>(i)]);
        return result;
    }

    Rational eval(const Rational& x) const {
        Rational r = 0;
        for (int i = degree(); i >= 0; --i) r = r * x + c_[static_cast<size_t>(i)];
        return r;
    }

    template <typename Scalar>
    Scalar eval_fp(const Scalar& x) const {
        Scalar r{};
        for (int i = degree(); i >= 0; --i) r = r * x + Scalar(to_double(c_[static_cast<size_t>(i)]));
        return r;
    }

    std::vector<double> coeffs_as_double() const {
        std::vector<double> r(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) r[i] = to_double(c_[i]);
        return r;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            const Rational& a = c_[static_cast<size_t>(i)];
            if (a == 0) continue;
            if (!first) os << " + ";
            os << a;
            if (i > 0) os << "*x^" << i;
            first = false;
        }
        return os.str();
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rational> c_;
};

}
