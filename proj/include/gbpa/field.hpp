#pragma once

// Exact scalar fields: the rationals (machine-word fast path with a GMP
// fallback) and prime fields F_p with a runtime modulus.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gbpa {

class field_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline unsigned __int128 uabs128(__int128 v) {
  return v < 0 ? static_cast<unsigned __int128>(-(v + 1)) + 1
               : static_cast<unsigned __int128>(v);
}

inline unsigned __int128 gcd128(unsigned __int128 a, unsigned __int128 b) {
  while (b != 0) {
    unsigned __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline bool fits64(__int128 v) {
  return v >= static_cast<__int128>(INT64_MIN) + 1 &&
         v <= static_cast<__int128>(INT64_MAX);
}

inline mpz_class to_mpz(std::int64_t v) {
  mpz_class z;
  mpz_set_si(z.get_mpz_t(), v);
  return z;
}

}  // namespace detail

/// Element of Q. Values whose numerator and denominator fit in a signed
/// 64-bit word are kept inline; anything larger spills to an mpq_class.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n) {  // NOLINT(implicit)
    if (n == INT64_MIN) {
      assign128(n, 1);
    } else {
      num_ = n;
    }
  }
  Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw field_error("rational with zero denominator");
    assign128(n, d);
  }
  explicit Rational(const mpq_class& q) { assign_big(q); }

  Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
  }
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& o) {
    if (this != &o) {
      num_ = o.num_;
      den_ = o.den_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rational& operator=(Rational&&) noexcept = default;

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  bool is_small() const { return !big_; }

  mpq_class to_mpq() const {
    if (big_) return *big_;
    mpq_class q(detail::to_mpz(num_), detail::to_mpz(den_));
    return q;
  }

  std::string to_string() const {
    if (big_) return big_->get_str();
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  static Rational parse(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw field_error("empty rational literal");
    for (char c : s) {
      if (!(c == '-' || c == '+' || c == '/' || (c >= '0' && c <= '9'))) {
        throw field_error("invalid rational literal '" + s + "'");
      }
    }
    mpq_class q;
    if (q.set_str(s, 10) != 0) {
      throw field_error("invalid rational literal '" + s + "'");
    }
    if (q.get_den() == 0) throw field_error("rational with zero denominator");
    q.canonicalize();
    return Rational(q);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.den_ == 1 && b.den_ == 1) {
        std::int64_t r;
        if (!__builtin_add_overflow(a.num_, b.num_, &r) && r != INT64_MIN) {
          return Rational(r);
        }
      }
      __int128 n = static_cast<__int128>(a.num_) * b.den_ +
                   static_cast<__int128>(b.num_) * a.den_;
      __int128 d = static_cast<__int128>(a.den_) * b.den_;
      Rational out;
      out.assign128(n, d);
      return out;
    }
    return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return a + (-b);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.den_ == 1 && b.den_ == 1) {
        std::int64_t r;
        if (!__builtin_mul_overflow(a.num_, b.num_, &r) && r != INT64_MIN) {
          return Rational(r);
        }
      }
      __int128 n = static_cast<__int128>(a.num_) * b.num_;
      __int128 d = static_cast<__int128>(a.den_) * b.den_;
      Rational out;
      out.assign128(n, d);
      return out;
    }
    return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw field_error("division by zero");
    return a * b.inverse();
  }
  Rational operator-() const {
    if (!big_) {
      Rational out;
      out.num_ = -num_;
      out.den_ = den_;
      return out;
    }
    return Rational(mpq_class(-*big_));
  }
  Rational inverse() const {
    if (is_zero()) throw field_error("division by zero");
    if (!big_) {
      Rational out;
      out.num_ = num_ < 0 ? -den_ : den_;
      out.den_ = num_ < 0 ? -num_ : num_;
      return out;
    }
    return Rational(mpq_class(1 / *big_));
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // canonical form: big values never fit in a word
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    if (!a.big_ && !b.big_) {
      __int128 l = static_cast<__int128>(a.num_) * b.den_;
      __int128 r = static_cast<__int128>(b.num_) * a.den_;
      return l <=> r;
    }
    int c = cmp(a.to_mpq(), b.to_mpq());
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

 private:
  void assign128(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (n == 0) {
      num_ = 0;
      den_ = 1;
      big_.reset();
      return;
    }
    unsigned __int128 g = detail::gcd128(detail::uabs128(n),
                                         static_cast<unsigned __int128>(d));
    if (g > 1) {
      n /= static_cast<__int128>(g);
      d /= static_cast<__int128>(g);
    }
    if (detail::fits64(n) && detail::fits64(d)) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
      big_.reset();
      return;
    }
    // Spill through decimal text; rare enough not to matter.
    auto to_text = [](__int128 v) {
      bool neg = v < 0;
      unsigned __int128 u = detail::uabs128(v);
      std::string s;
      do {
        s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
      } while (u != 0);
      return neg ? "-" + s : s;
    };
    mpq_class q(mpz_class(to_text(n)), mpz_class(to_text(d)));
    assign_big(q);
  }

  void assign_big(mpq_class q) {
    q.canonicalize();
    const mpz_class& n = q.get_num();
    const mpz_class& d = q.get_den();
    if (n.fits_slong_p() && d.fits_slong_p() && n.get_si() != INT64_MIN) {
      num_ = n.get_si();
      den_ = d.get_si();
      big_.reset();
    } else {
      num_ = 0;
      den_ = 1;
      big_ = std::make_unique<mpq_class>(std::move(q));
    }
  }

  static int cmp(const mpq_class& a, const mpq_class& b) {
    return ::cmp(a, b);
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

/// Element of F_p. The modulus travels with the value; a default-constructed
/// element is an unbound zero that adopts the modulus of its partner.
class Fp {
 public:
  Fp() = default;
  Fp(std::uint32_t value, std::uint32_t modulus)
      : v_(modulus ? value % modulus : 0), p_(modulus) {}

  std::uint32_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return p_ != 0 && v_ == 1; }

  std::string to_string() const { return std::to_string(v_); }

  friend Fp operator+(const Fp& a, const Fp& b) {
    std::uint32_t p = join(a, b);
    if (p == 0) return Fp();
    std::uint64_t s = static_cast<std::uint64_t>(a.v_) + b.v_;
    return Fp(static_cast<std::uint32_t>(s % p), p);
  }
  friend Fp operator-(const Fp& a, const Fp& b) { return a + (-b); }
  friend Fp operator*(const Fp& a, const Fp& b) {
    std::uint32_t p = join(a, b);
    if (p == 0) return Fp();
    std::uint64_t s = static_cast<std::uint64_t>(a.v_) * b.v_;
    return Fp(static_cast<std::uint32_t>(s % p), p);
  }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }
  Fp operator-() const {
    if (v_ == 0) return *this;
    return Fp(p_ - v_, p_);
  }
  Fp inverse() const {
    if (v_ == 0) throw field_error("division by zero");
    // Fermat: v^(p-2).
    std::uint64_t result = 1, base = v_, e = p_ - 2;
    while (e) {
      if (e & 1) result = result * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return Fp(static_cast<std::uint32_t>(result), p_);
  }
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  Fp& operator/=(const Fp& o) { return *this = *this / o; }

  friend bool operator==(const Fp& a, const Fp& b) {
    if (a.p_ && b.p_ && a.p_ != b.p_) return false;
    return a.v_ == b.v_;
  }
  friend std::ostream& operator<<(std::ostream& os, const Fp& x) {
    return os << x.v_;
  }

 private:
  static std::uint32_t join(const Fp& a, const Fp& b) {
    if (a.p_ && b.p_ && a.p_ != b.p_) {
      throw field_error("mixing elements of F_" + std::to_string(a.p_) +
                        " and F_" + std::to_string(b.p_));
    }
    return a.p_ ? a.p_ : b.p_;
  }

  std::uint32_t v_ = 0;
  std::uint32_t p_ = 0;
};

/// Field descriptor for Q.
struct RationalField {
  using value_type = Rational;

  value_type zero() const { return Rational(); }
  value_type one() const { return Rational(1); }
  value_type from_int(std::int64_t v) const { return Rational(v); }
  value_type parse(std::string_view text) const {
    return Rational::parse(text);
  }
  std::string format(const value_type& v) const { return v.to_string(); }
  std::string name() const { return "Q"; }
  std::uint32_t characteristic() const { return 0; }

  /// Small nonzero-biased integer sample in [-range, range].
  template <class Rng>
  value_type random(Rng& rng, std::int64_t range = 3) const {
    auto span = static_cast<std::uint64_t>(2 * range + 1);
    return Rational(static_cast<std::int64_t>(rng() % span) - range);
  }

  friend bool operator==(const RationalField&, const RationalField&) {
    return true;
  }
};

inline bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

/// Field descriptor for F_p.
struct PrimeField {
  using value_type = Fp;

  explicit PrimeField(std::uint32_t prime = 32003) : p(prime) {
    if (!is_prime(p)) {
      throw field_error(std::to_string(p) + " is not prime");
    }
    if (p > (1u << 31)) throw field_error("modulus too large");
  }

  value_type zero() const { return Fp(0, p); }
  value_type one() const { return Fp(1, p); }
  value_type from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    return Fp(static_cast<std::uint32_t>(r), p);
  }
  value_type parse(std::string_view text) const {
    Rational q = Rational::parse(text);
    mpq_class m = q.to_mpq();
    mpz_class num = m.get_num() % p;
    mpz_class den = m.get_den() % p;
    if (num < 0) num += p;
    if (den == 0) {
      throw field_error("denominator of '" + std::string(text) +
                        "' vanishes mod " + std::to_string(p));
    }
    return Fp(static_cast<std::uint32_t>(num.get_ui()), p) /
           Fp(static_cast<std::uint32_t>(den.get_ui()), p);
  }
  std::string format(const value_type& v) const { return v.to_string(); }
  std::string name() const { return "F" + std::to_string(p); }
  std::uint32_t characteristic() const { return p; }

  template <class Rng>
  value_type random(Rng& rng, std::int64_t range = 3) const {
    auto span = static_cast<std::uint64_t>(2 * range + 1);
    return from_int(static_cast<std::int64_t>(rng() % span) - range);
  }

  friend bool operator==(const PrimeField& a, const PrimeField& b) {
    return a.p == b.p;
  }

  std::uint32_t p;
};

template <class F>
concept ExactField = requires(const F& f, typename F::value_type a,
                              std::string_view s) {
  { f.zero() } -> std::same_as<typename F::value_type>;
  { f.one() } -> std::same_as<typename F::value_type>;
  { f.from_int(std::int64_t{1}) } -> std::same_as<typename F::value_type>;
  { f.parse(s) } -> std::same_as<typename F::value_type>;
  { f.format(a) } -> std::same_as<std::string>;
  { a + a } -> std::same_as<typename F::value_type>;
  { a * a } -> std::same_as<typename F::value_type>;
  { a / a } -> std::same_as<typename F::value_type>;
  { a.is_zero() } -> std::same_as<bool>;
};

static_assert(ExactField<RationalField>);
static_assert(ExactField<PrimeField>);

}  // namespace gbpa
