#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>

namespace boundaries {

// Exact rational with an int64 fast path; spills to GMP on overflow and
// drops back whenever the reduced value fits again.
class Rational {
public:
    Rational() = default;
    Rational(long long n) : n_(n) {}
    Rational(int n) : n_(n) {}
    Rational(long long n, long long d);
    explicit Rational(const mpq_class& q) { assign(q); }

    Rational(const Rational& o) : n_(o.n_), d_(o.d_) {
        if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
    }
    Rational(Rational&&) noexcept = default;
    Rational& operator=(const Rational& o) {
        if (this != &o) {
            n_ = o.n_;
            d_ = o.d_;
            big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
        }
        return *this;
    }
    Rational& operator=(Rational&&) noexcept = default;

    static Rational parse(const std::string& s);

    bool is_zero() const { return !big_ && n_ == 0; }
    int sign() const;
    bool is_integer() const;
    mpq_class to_mpq() const;
    double to_double() const;
    std::string str() const;
    // numerator/denominator are only meaningful on the fast path
    bool small() const { return !big_; }
    long long num() const { return n_; }
    long long den() const { return d_; }

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend int compare(const Rational& a, const Rational& b);
    friend bool operator==(const Rational& a, const Rational& b) { return compare(a, b) == 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return compare(a, b) != 0; }
    friend bool operator<(const Rational& a, const Rational& b) { return compare(a, b) < 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return compare(a, b) > 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return compare(a, b) <= 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return compare(a, b) >= 0; }

private:
    void assign(const mpq_class& q);
    void set_i128(__int128 n, __int128 d);

    long long n_ = 0;
    long long d_ = 1;
    std::unique_ptr<mpq_class> big_;
};

inline Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

// Prime field element; P must be prime.
template <std::uint32_t P>
struct Mod {
    static_assert(P >= 2);
    std::uint32_t v = 0;
    Mod() = default;
    Mod(long long x) {
        long long r = x % static_cast<long long>(P);
        v = static_cast<std::uint32_t>(r < 0 ? r + P : r);
    }
    Mod operator-() const { return Mod(v == 0 ? 0 : P - v); }
    Mod& operator+=(Mod o) { v = static_cast<std::uint32_t>((std::uint64_t(v) + o.v) % P); return *this; }
    Mod& operator-=(Mod o) { v = static_cast<std::uint32_t>((std::uint64_t(v) + P - o.v) % P); return *this; }
    Mod& operator*=(Mod o) { v = static_cast<std::uint32_t>((std::uint64_t(v) * o.v) % P); return *this; }
    Mod& operator/=(Mod o) { return *this *= o.inverse(); }
    friend Mod operator+(Mod a, Mod b) { return a += b; }
    friend Mod operator-(Mod a, Mod b) { return a -= b; }
    friend Mod operator*(Mod a, Mod b) { return a *= b; }
    friend Mod operator/(Mod a, Mod b) { return a /= b; }
    friend bool operator==(Mod a, Mod b) { return a.v == b.v; }
    friend bool operator!=(Mod a, Mod b) { return a.v != b.v; }
    Mod inverse() const {
        if (v == 0) throw std::domain_error("inverse of zero in prime field");
        std::uint64_t r = 1, b = v, e = P - 2;
        while (e) {
            if (e & 1) r = r * b % P;
            b = b * b % P;
            e >>= 1;
        }
        return Mod(static_cast<long long>(r));
    }
};

// Tolerance for float-ℝ zero tests. Scoped, thread-local; default 1e-9.
double real_tolerance();
class ToleranceScope {
public:
    explicit ToleranceScope(double eps);
    ~ToleranceScope();
    ToleranceScope(const ToleranceScope&) = delete;
    ToleranceScope& operator=(const ToleranceScope&) = delete;

private:
    double saved_;
};

template <class T>
struct field_traits;

template <>
struct field_traits<Rational> {
    using norm_type = Rational;
    static constexpr bool exact = true;
    static constexpr bool trivial_norm = false;
    static const char* name() { return "Q"; }
    static bool is_zero(const Rational& x) { return x.is_zero(); }
    static Rational abs(const Rational& x) { return boundaries::abs(x); }
    static Rational from_rational(const Rational& r) { return r; }
    static Rational to_rational(const Rational& x) { return x; }
    static std::string str(const Rational& x) { return x.str(); }
};

template <>
struct field_traits<double> {
    using norm_type = double;
    static constexpr bool exact = false;
    static constexpr bool trivial_norm = false;
    static const char* name() { return "R"; }
    static bool is_zero(double x) { return std::fabs(x) <= real_tolerance(); }
    static double abs(double x) { return std::fabs(x); }
    static double from_rational(const Rational& r) { return r.to_double(); }
    static Rational to_rational(double x) { return Rational(mpq_class(x)); }
    static std::string str(double x);
};

template <std::uint32_t P>
struct field_traits<Mod<P>> {
    using norm_type = Rational;
    static constexpr bool exact = true;
    static constexpr bool trivial_norm = true;
    static const char* name() {
        static const std::string n = "F" + std::to_string(P);
        return n.c_str();
    }
    static bool is_zero(Mod<P> x) { return x.v == 0; }
    static Rational abs(Mod<P>) { return Rational(0); }
    static Mod<P> from_rational(const Rational& r) {
        mpq_class q = r.to_mpq();
        mpz_class n = q.get_num() % P, d = q.get_den() % P;
        if (d == 0) throw std::domain_error("denominator divisible by the field characteristic");
        return Mod<P>(n.get_si()) / Mod<P>(d.get_si());
    }
    static Rational to_rational(Mod<P> x) { return Rational(static_cast<long long>(x.v)); }
    static std::string str(Mod<P> x) { return std::to_string(x.v); }
};

template <class T>
using norm_t = typename field_traits<T>::norm_type;

template <class T>
bool is_zero(const T& x) { return field_traits<T>::is_zero(x); }

inline double to_double(const Rational& x) { return x.to_double(); }
inline double to_double(double x) { return x; }

inline bool norm_leq(const Rational& a, const Rational& b) { return a <= b; }
inline bool norm_leq(double a, double b) { return a <= b + real_tolerance(); }
inline bool norm_eq(const Rational& a, const Rational& b) { return a == b; }
inline bool norm_eq(double a, double b) { return std::fabs(a - b) <= real_tolerance(); }

std::string format_real(double x);  // 12 significant digits
inline std::string norm_str(const Rational& x) { return x.str(); }
inline std::string norm_str(double x) { return format_real(x); }

}  // namespace boundaries
