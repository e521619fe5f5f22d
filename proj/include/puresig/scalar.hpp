/*
 * Copyright 2026 The puresig Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef PURESIG_SCALAR_HPP
#define PURESIG_SCALAR_HPP
#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "puresig/errors.hpp"

namespace puresig {

using Rational = mpq_class;
using Complex = std::complex<double>;

/// Complex number with exact rational real and imaginary parts.
struct GaussRational {
  Rational re;
  Rational im;

  GaussRational() = default;
  GaussRational(long v) : re(v), im(0) {}  // NOLINT(google-explicit-constructor)
  GaussRational(const Rational& r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)
  GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static GaussRational i() { return {Rational(0), Rational(1)}; }

  GaussRational& operator+=(const GaussRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussRational& operator-=(const GaussRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussRational& operator*=(const GaussRational& o) {
    Rational r = re * o.re - im * o.im;
    Rational s = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(s);
    return *this;
  }
  GaussRational& operator/=(const GaussRational& o) {
    Rational den = o.re * o.re + o.im * o.im;
    if (sgn(den) == 0) throw DomainError("GaussRational: division by zero");
    Rational r = (re * o.re + im * o.im) / den;
    Rational s = (im * o.re - re * o.im) / den;
    re = std::move(r);
    im = std::move(s);
    return *this;
  }
  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend GaussRational operator-(const GaussRational& a) {
    return {Rational(-a.re), Rational(-a.im)};
  }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }
  friend std::ostream& operator<<(std::ostream& os, const GaussRational& z) {
    return os << "(" << z.re << "," << z.im << ")";
  }
};

inline GaussRational conj(const GaussRational& z) { return {z.re, Rational(-z.im)}; }

/// Parse "p/q", an integer, or a decimal literal ("0.25", "-1.5e-3") into an exact rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw DomainError("empty number");
  if (s.find('/') != std::string::npos) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw DomainError("malformed rational: " + s);
    if (sgn(q.get_den()) == 0) throw DomainError("zero denominator: " + s);
    q.canonicalize();
    return q;
  }
  bool neg = false;
  std::size_t pos = 0;
  if (s[pos] == '+' || s[pos] == '-') {
    neg = s[pos] == '-';
    ++pos;
  }
  std::string digits;
  long exponent = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) --exponent;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else if ((c == 'e' || c == 'E') && seen_digit) {
      try {
        std::size_t used = 0;
        exponent += std::stol(s.substr(pos + 1), &used);
        if (pos + 1 + used != s.size()) throw DomainError("malformed number: " + s);
      } catch (const std::logic_error&) {
        throw DomainError("malformed number: " + s);
      }
      pos = s.size();
      break;
    } else {
      throw DomainError("malformed number: " + s);
    }
  }
  if (!seen_digit) throw DomainError("malformed number: " + s);
  mpz_class num(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational q = exponent < 0 ? Rational(num, scale) : Rational(num * scale);
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

/// log(|q|) for a nonzero rational without overflowing double.
inline double log_abs(const Rational& q) {
  auto log_z = [](const mpz_class& z) {
    long exp2 = 0;
    double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
    return std::log(std::fabs(mant)) + static_cast<double>(exp2) * std::log(2.0);
  };
  return log_z(q.get_num()) - log_z(q.get_den());
}

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr bool is_complex = false;
  using Real = Rational;
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static Rational from_rational(const Rational& q) { return q; }
  static Rational from_int(long v) { return Rational(v); }
  static Real abs(const Rational& x) { return Rational(::abs(x)); }
  static Real norm2(const Rational& x) { return Rational(x * x); }
  static Rational conj(const Rational& x) { return x; }
  static Rational real_part(const Rational& x) { return x; }
  static double real_to_double(const Real& r) { return r.get_d(); }
  static Complex to_complex(const Rational& x) { return {x.get_d(), 0.0}; }
  static const char* name() { return "exact"; }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr bool is_complex = false;
  using Real = double;
  static bool is_zero(double x) { return x == 0.0; }
  static double from_rational(const Rational& q) { return q.get_d(); }
  static double from_int(long v) { return static_cast<double>(v); }
  static Real abs(double x) { return std::fabs(x); }
  static Real norm2(double x) { return x * x; }
  static double conj(double x) { return x; }
  static double real_part(double x) { return x; }
  static double real_to_double(Real r) { return r; }
  static Complex to_complex(double x) { return {x, 0.0}; }
  static const char* name() { return "floating"; }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static constexpr bool is_complex = true;
  using Real = double;
  static bool is_zero(const Complex& x) { return x == Complex(0.0, 0.0); }
  static Complex from_rational(const Rational& q) { return {q.get_d(), 0.0}; }
  static Complex from_int(long v) { return {static_cast<double>(v), 0.0}; }
  static Real abs(const Complex& x) { return std::abs(x); }
  static Real norm2(const Complex& x) { return std::norm(x); }
  static Complex conj(const Complex& x) { return std::conj(x); }
  static double real_part(const Complex& x) { return x.real(); }
  static double real_to_double(Real r) { return r; }
  static Complex to_complex(const Complex& x) { return x; }
  static const char* name() { return "floating-complex"; }
};

template <>
struct ScalarTraits<GaussRational> {
  static constexpr bool exact = true;
  static constexpr bool is_complex = true;
  using Real = Rational;
  static bool is_zero(const GaussRational& x) { return sgn(x.re) == 0 && sgn(x.im) == 0; }
  static GaussRational from_rational(const Rational& q) { return GaussRational(q); }
  static GaussRational from_int(long v) { return GaussRational(v); }
  // Moduli of Gaussian rationals are irrational; the l1 norm is real-only in exact mode.
  static Real abs(const GaussRational& x) {
    if (sgn(x.im) != 0) throw DomainError("exact l1 norm requires real coefficients");
    return Rational(::abs(x.re));
  }
  static Real norm2(const GaussRational& x) { return Rational(x.re * x.re + x.im * x.im); }
  static GaussRational conj(const GaussRational& x) { return puresig::conj(x); }
  static Rational real_part(const GaussRational& x) { return x.re; }
  static double real_to_double(const Real& r) { return r.get_d(); }
  static Complex to_complex(const GaussRational& x) { return {x.re.get_d(), x.im.get_d()}; }
  static const char* name() { return "exact-complex"; }
};

template <class S>
concept TensorScalar = requires { ScalarTraits<S>::exact; };

/// Convert between scalar modes. Exact -> floating rounds; floating -> exact is rejected.
template <class To, class From>
To scalar_cast(const From& x) {
  if constexpr (std::is_same_v<To, From>) {
    return x;
  } else if constexpr (std::is_same_v<From, Rational>) {
    return ScalarTraits<To>::from_rational(x);
  } else if constexpr (std::is_same_v<From, GaussRational> && std::is_same_v<To, Complex>) {
    return Complex(x.re.get_d(), x.im.get_d());
  } else if constexpr (std::is_same_v<From, double> && std::is_same_v<To, Complex>) {
    return Complex(x, 0.0);
  } else {
    static_assert(sizeof(To) == 0, "unsupported scalar conversion");
  }
}

}  // namespace puresig

#endif
