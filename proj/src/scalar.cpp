#include "boundaries/scalar.hpp"

#include <cstdio>
#include <limits>

namespace boundaries {

namespace {

using u128 = unsigned __int128;

u128 uabs(__int128 x) { return x < 0 ? u128(-x) : u128(x); }

u128 gcd128(u128 a, u128 b) {
    while (b) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits(__int128 x) {
    return x >= std::numeric_limits<long long>::min() + 1 && x <= std::numeric_limits<long long>::max();
}

thread_local double g_tolerance = 1e-9;

}  // namespace

double real_tolerance() { return g_tolerance; }
ToleranceScope::ToleranceScope(double eps) : saved_(g_tolerance) { g_tolerance = eps; }
ToleranceScope::~ToleranceScope() { g_tolerance = saved_; }

Rational::Rational(long long n, long long d) {
    if (d == 0) throw std::domain_error("zero denominator");
    set_i128(n, d);
}

void Rational::set_i128(__int128 n, __int128 d) {
    if (d < 0) {
        n = -n;
        d = -d;
    }
    u128 g = gcd128(uabs(n), u128(d));
    if (g > 1) {
        n /= static_cast<__int128>(g);
        d /= static_cast<__int128>(g);
    }
    if (fits(n) && fits(d)) {
        n_ = static_cast<long long>(n);
        d_ = static_cast<long long>(d);
        big_.reset();
        return;
    }
    // rare: build through decimal strings is slow, so split into 64-bit halves
    auto to_mpz = [](__int128 v) {
        bool neg = v < 0;
        u128 u = uabs(v);
        mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
        mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
        mpz_class r = (hi << 64) + lo;
        return neg ? mpz_class(-r) : r;
    };
    mpq_class q(to_mpz(n), to_mpz(d));
    q.canonicalize();
    assign(q);
}

void Rational::assign(const mpq_class& q) {
    if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p() &&
        q.get_num() != std::numeric_limits<long>::min()) {
        n_ = q.get_num().get_si();
        d_ = q.get_den().get_si();
        big_.reset();
    } else {
        big_ = std::make_unique<mpq_class>(q);
        n_ = 0;
        d_ = 1;
    }
}

Rational Rational::parse(const std::string& s) {
    auto slash = s.find('/');
    auto dot = s.find('.');
    mpq_class q;
    if (dot != std::string::npos && slash == std::string::npos) {
        std::string intpart = s.substr(0, dot), frac = s.substr(dot + 1);
        bool neg = !intpart.empty() && intpart[0] == '-';
        if (neg || (!intpart.empty() && intpart[0] == '+')) intpart = intpart.substr(1);
        if (intpart.empty()) intpart = "0";
        mpz_class den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        mpz_class num;
        if (num.set_str(intpart + (frac.empty() ? "" : frac), 10) != 0)
            throw std::invalid_argument("bad rational literal: " + s);
        q = mpq_class(neg ? mpz_class(-num) : num, den);
    } else if (q.set_str(s, 10) != 0) {
        throw std::invalid_argument("bad rational literal: " + s);
    }
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return Rational(q);
}

int Rational::sign() const {
    if (big_) return sgn(*big_);
    return (n_ > 0) - (n_ < 0);
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : d_ == 1; }

mpq_class Rational::to_mpq() const {
    if (big_) return *big_;
    return mpq_class(mpz_class(static_cast<long>(n_)), mpz_class(static_cast<long>(d_)));
}

double Rational::to_double() const {
    if (big_) return big_->get_d();
    return static_cast<double>(n_) / static_cast<double>(d_);
}

std::string Rational::str() const {
    if (big_) return big_->get_str();
    if (d_ == 1) return std::to_string(n_);
    return std::to_string(n_) + "/" + std::to_string(d_);
}

Rational Rational::operator-() const {
    if (big_) return Rational(mpq_class(-*big_));
    Rational r;
    r.n_ = -n_;
    r.d_ = d_;
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    if (!big_ && !o.big_) {
        if (d_ == 1 && o.d_ == 1) {
            long long s;
            if (!__builtin_add_overflow(n_, o.n_, &s) && s != std::numeric_limits<long long>::min()) {
                n_ = s;
                return *this;
            }
        }
        set_i128(__int128(n_) * o.d_ + __int128(o.n_) * d_, __int128(d_) * o.d_);
        return *this;
    }
    assign(to_mpq() + o.to_mpq());
    return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
    if (!big_ && !o.big_) {
        if (d_ == 1 && o.d_ == 1) {
            long long s;
            if (!__builtin_mul_overflow(n_, o.n_, &s) && s != std::numeric_limits<long long>::min()) {
                n_ = s;
                return *this;
            }
        }
        set_i128(__int128(n_) * o.n_, __int128(d_) * o.d_);
        return *this;
    }
    assign(to_mpq() * o.to_mpq());
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    if (!big_ && !o.big_) {
        set_i128(__int128(n_) * o.d_, __int128(d_) * o.n_);
        return *this;
    }
    assign(to_mpq() / o.to_mpq());
    return *this;
}

int compare(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        __int128 l = __int128(a.n_) * b.d_, r = __int128(b.n_) * a.d_;
        return (l > r) - (l < r);
    }
    return cmp(a.to_mpq(), b.to_mpq());
}

std::string format_real(double x) {
    if (x == 0) return "0";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string field_traits<double>::str(double x) { return format_real(x); }

}  // namespace boundaries
