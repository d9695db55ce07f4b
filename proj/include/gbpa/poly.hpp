#pragma once

// Univariate polynomials over an exact field, used for eigenvalue search.
// Coefficients are stored lowest degree first.

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "gbpa/field.hpp"
#include "gbpa/matrix.hpp"

namespace gbpa::poly {

template <ExactField F>
using Poly = std::vector<typename F::value_type>;

template <ExactField F>
void trim(Poly<F>& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

template <ExactField F>
typename F::value_type evaluate(const F& field, const Poly<F>& p,
                                const typename F::value_type& x) {
  auto acc = field.zero();
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

template <ExactField F>
Poly<F> derivative(const F& field, const Poly<F>& p) {
  Poly<F> d;
  for (std::size_t i = 1; i < p.size(); ++i)
    d.push_back(p[i] * field.from_int(static_cast<std::int64_t>(i)));
  trim<F>(d);
  return d;
}

/// Remainder of a by b (b nonzero).
template <ExactField F>
Poly<F> remainder(Poly<F> a, const Poly<F>& b) {
  trim<F>(a);
  auto lead_inv = b.back().inverse();
  while (a.size() >= b.size() && !a.empty()) {
    auto c = a.back() * lead_inv;
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    a.pop_back();
    trim<F>(a);
  }
  return a;
}

template <ExactField F>
Poly<F> quotient(Poly<F> a, const Poly<F>& b) {
  trim<F>(a);
  if (a.size() < b.size()) return {};
  Poly<F> q(a.size() - b.size() + 1, a.front() - a.front());
  auto lead_inv = b.back().inverse();
  while (a.size() >= b.size() && !a.empty()) {
    auto c = a.back() * lead_inv;
    std::size_t shift = a.size() - b.size();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    a.pop_back();
    trim<F>(a);
  }
  return q;
}

template <ExactField F>
Poly<F> monic(Poly<F> p) {
  trim<F>(p);
  if (p.empty()) return p;
  auto inv = p.back().inverse();
  for (auto& c : p) c *= inv;
  return p;
}

template <ExactField F>
Poly<F> gcd(Poly<F> a, Poly<F> b) {
  trim<F>(a);
  trim<F>(b);
  while (!b.empty()) {
    auto r = remainder<F>(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic<F>(std::move(a));
}

/// Characteristic polynomial det(xI - A), division free (Berkowitz).
template <ExactField F>
Poly<F> charpoly(const Matrix<F>& a) {
  const F& field = a.field();
  const std::size_t n = a.rows();
  // Highest degree first while assembling.
  std::vector<typename F::value_type> p{field.one()};
  for (std::size_t k = n; k-- > 0;) {
    // Trailing principal block starting at k.
    const std::size_t m = n - k - 1;  // size of the block below row k
    std::vector<typename F::value_type> col{field.one(), -a(k, k)};
    std::vector<typename F::value_type> c(m), r(m);
    for (std::size_t i = 0; i < m; ++i) {
      c[i] = a(k + 1 + i, k);
      r[i] = a(k, k + 1 + i);
    }
    for (std::size_t t = 0; t < m; ++t) {
      auto s = field.zero();
      for (std::size_t i = 0; i < m; ++i) s += r[i] * c[i];
      col.push_back(-s);
      std::vector<typename F::value_type> next(m, field.zero());
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          if (!c[j].is_zero()) next[i] += a(k + 1 + i, k + 1 + j) * c[j];
      c = std::move(next);
    }
    // Toeplitz (m+2) x (m+1) times p (length m+1).
    std::vector<typename F::value_type> q(m + 2, field.zero());
    for (std::size_t i = 0; i < m + 2; ++i)
      for (std::size_t j = 0; j <= i && j < p.size(); ++j)
        if (i - j < col.size()) q[i] += col[i - j] * p[j];
    p = std::move(q);
  }
  return Poly<F>(p.rbegin(), p.rend());
}

inline std::optional<Rational> rational_near(long double x,
                                             std::int64_t max_den = 1000000) {
  if (!std::isfinite(x) || std::fabs(x) > 1e12L) return std::nullopt;
  // Continued fraction convergents.
  long double v = x;
  std::int64_t h0 = 1, h1 = 0, k0 = 0, k1 = 1;
  for (int it = 0; it < 40; ++it) {
    long double fl = std::floor(v);
    auto a = static_cast<std::int64_t>(fl);
    std::int64_t h2 = a * h0 + h1, k2 = a * k0 + k1;
    if (k2 > max_den) break;
    h1 = h0;
    h0 = h2;
    k1 = k0;
    k0 = k2;
    long double approx = static_cast<long double>(h0) / static_cast<long double>(k0);
    if (std::fabs(approx - x) <= 1e-9L * (1 + std::fabs(x))) break;
    long double frac = v - fl;
    if (frac < 1e-18L) break;
    v = 1 / frac;
  }
  if (k0 == 0) return std::nullopt;
  return Rational(h0) / Rational(k0);
}

/// Roots of p lying in the base field (each once). Exact for prime fields of
/// moderate size; numeric search with exact confirmation over Q.
inline std::vector<Rational> field_roots(const RationalField& field,
                                         const Poly<RationalField>& p_in) {
  auto p = p_in;
  trim<RationalField>(p);
  std::vector<Rational> roots;
  if (p.size() <= 1) return roots;
  auto d = derivative(field, p);
  auto g = gcd<RationalField>(p, d);
  auto s = monic<RationalField>(g.size() > 1 ? quotient<RationalField>(p, g) : p);
  const std::size_t n = s.size() - 1;
  if (n == 1) return {-s[0]};
  std::vector<std::complex<long double>> coeff(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    coeff[i] = static_cast<long double>(s[i].to_mpq().get_d());
  }
  auto eval = [&](std::complex<long double> z) {
    std::complex<long double> acc = 0;
    for (std::size_t i = s.size(); i-- > 0;) acc = acc * z + coeff[i];
    return acc;
  };
  long double bound = 1;
  for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, 1 + std::abs(coeff[i]));
  std::vector<std::complex<long double>> z(n);
  const std::complex<long double> seed(0.4L, 0.9L);
  for (std::size_t i = 0; i < n; ++i) z[i] = std::pow(seed, static_cast<int>(i)) * (bound / 2);
  for (int it = 0; it < 500; ++it) {
    long double delta = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::complex<long double> den = 1;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) den *= (z[i] - z[j]);
      if (std::abs(den) == 0) den = 1e-30L;
      auto step = eval(z[i]) / den;
      z[i] -= step;
      delta = std::max(delta, std::abs(step));
    }
    if (delta < 1e-17L) break;
  }
  for (const auto& r : z) {
    if (std::fabs(r.imag()) > 1e-6L * (1 + std::fabs(r.real()))) continue;
    auto c = rational_near(r.real());
    if (!c) continue;
    if (!evaluate(field, s, *c).is_zero()) continue;
    if (std::find(roots.begin(), roots.end(), *c) == roots.end()) roots.push_back(*c);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

inline std::vector<Fp> field_roots(const PrimeField& field,
                                   const Poly<PrimeField>& p_in) {
  auto p = p_in;
  trim<PrimeField>(p);
  std::vector<Fp> roots;
  if (p.size() <= 1) return roots;
  for (std::uint32_t c = 0; c < field.p; ++c) {
    auto x = field.from_int(c);
    if (evaluate(field, p, x).is_zero()) roots.push_back(x);
  }
  return roots;
}

}  // namespace gbpa::poly
