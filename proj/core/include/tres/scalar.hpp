#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tres {

// Exact rational scalar. mpq_rational keeps gcd(|num|,den)=1 and den>0
// after every operation, which is exactly the canonical form we need.
using Rational = boost::multiprecision::mpq_rational;

inline std::string to_string(const Rational& x) { return x.str(); }

// Accepts "p" or "p/q" with optional leading sign, arbitrary precision.
inline Rational parse_rational(const std::string& s) {
  auto is_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  const auto slash = s.find('/');
  if (slash == std::string::npos) {
    if (!is_int(s)) throw std::invalid_argument("not a rational: '" + s + "'");
    return Rational(boost::multiprecision::mpz_int(s));
  }
  const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  if (!is_int(num) || !is_int(den))
    throw std::invalid_argument("not a rational: '" + s + "'");
  const boost::multiprecision::mpz_int d(den);
  if (d == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
  return Rational(boost::multiprecision::mpz_int(num)) / Rational(d);
}

// Prime field F_p, p <= 2^31. The modulus is process-global and must be set
// (set_modulus) before any nonzero value is created; a default-constructed
// zero is always valid so containers work before setup.
struct Fp {
  static inline std::uint64_t modulus = 0;

  static void set_modulus(std::uint64_t p) {
    if (p < 2 || p > (std::uint64_t(1) << 31))
      throw std::invalid_argument("modulus out of range");
    for (std::uint64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) throw std::invalid_argument("modulus not prime");
    modulus = p;
  }

  std::uint64_t v = 0;

  Fp() = default;
  Fp(long long n) {  // NOLINT: implicit by design, mirrors Rational(int)
    if (modulus == 0) {
      if (n != 0) throw std::logic_error("Fp modulus unset");
      v = 0;
    } else {
      long long r = n % static_cast<long long>(modulus);
      if (r < 0) r += static_cast<long long>(modulus);
      v = static_cast<std::uint64_t>(r);
    }
  }

  friend Fp operator+(Fp a, Fp b) { return raw((a.v + b.v) % modulus); }
  friend Fp operator-(Fp a, Fp b) { return raw((a.v + modulus - b.v) % modulus); }
  friend Fp operator*(Fp a, Fp b) { return raw((a.v * b.v) % modulus); }
  friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
  Fp operator-() const { return v == 0 ? *this : raw(modulus - v); }
  Fp& operator+=(Fp b) { return *this = *this + b; }
  Fp& operator-=(Fp b) { return *this = *this - b; }
  Fp& operator*=(Fp b) { return *this = *this * b; }
  Fp& operator/=(Fp b) { return *this = *this / b; }
  friend bool operator==(Fp a, Fp b) { return a.v == b.v; }
  friend bool operator!=(Fp a, Fp b) { return a.v != b.v; }

  Fp inverse() const {
    if (v == 0) throw std::domain_error("division by zero in F_p");
    // extended Euclid on (v, p)
    std::int64_t t = 0, nt = 1, r = static_cast<std::int64_t>(modulus),
                 nr = static_cast<std::int64_t>(v);
    while (nr != 0) {
      const std::int64_t q = r / nr;
      t -= q * nt; std::swap(t, nt);
      r -= q * nr; std::swap(r, nr);
    }
    if (t < 0) t += static_cast<std::int64_t>(modulus);
    return raw(static_cast<std::uint64_t>(t));
  }

 private:
  static Fp raw(std::uint64_t x) {
    Fp f;
    f.v = x;
    return f;
  }
};

inline std::string to_string(const Fp& x) { return std::to_string(x.v); }

inline Fp parse_fp(const std::string& s) {
  const auto slash = s.find('/');
  auto parse_int = [](const std::string& t) {
    if (t.empty()) throw std::invalid_argument("empty number");
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i >= t.size()) throw std::invalid_argument("not an integer: '" + t + "'");
    long long acc = 0;
    const long long p = static_cast<long long>(Fp::modulus);
    for (; i < t.size(); ++i) {
      if (t[i] < '0' || t[i] > '9')
        throw std::invalid_argument("not an integer: '" + t + "'");
      acc = (acc * 10 + (t[i] - '0')) % p;
    }
    return Fp(t[0] == '-' ? -acc : acc);
  };
  if (slash == std::string::npos) return parse_int(s);
  return parse_int(s.substr(0, slash)) / parse_int(s.substr(slash + 1));
}

template <class K>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static std::string name() { return "QQ"; }
  static Rational parse(const std::string& s) { return parse_rational(s); }
};

template <>
struct FieldTraits<Fp> {
  static std::string name() { return "F_" + std::to_string(Fp::modulus); }
  static Fp parse(const std::string& s) { return parse_fp(s); }
};

template <class K>
bool is_zero(const K& x) {
  return x == K(0);
}

}  // namespace tres
