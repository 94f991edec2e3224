#include "nurbsinv/scalar.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace nurbsinv {

Scalar Scalar::exact(long num, long den) {
    if (den == 0) throw std::domain_error("zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(std::move(q));
}

Scalar Scalar::exact(const mpq_class& q) {
    mpq_class c(q);
    c.canonicalize();
    return Scalar(std::move(c));
}

namespace {

// Terminating decimal (optionally with exponent) to an exact rational.
mpq_class decimal_to_rational(const std::string& s) {
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
    std::string digits;
    long scale = 0;
    bool seen_dot = false, seen_digit = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c == '.') {
            if (seen_dot) throw std::invalid_argument("bad number: " + s);
            seen_dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            seen_digit = true;
            if (seen_dot) ++scale;
        } else if (c == 'e' || c == 'E') {
            long ex = 0;
            auto rest = s.substr(i + 1);
            if (rest.empty()) throw std::invalid_argument("bad number: " + s);
            std::size_t pos = 0;
            ex = std::stol(rest, &pos);
            if (pos != rest.size()) throw std::invalid_argument("bad number: " + s);
            scale -= ex;
            i = s.size() - 1;
        } else {
            throw std::invalid_argument("bad number: " + s);
        }
    }
    if (!seen_digit) throw std::invalid_argument("bad number: " + s);
    // Base must be pinned: the string constructor's default base 0 reads a
    // leading zero ("025" from "0.25") as octal.
    mpz_class mant(digits.empty() ? "0" : digits, 10);
    if (neg) mant = -mant;
    mpq_class q;
    if (scale >= 0) {
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(scale));
        q = mpq_class(mant, den);
    } else {
        mpz_class p10;
        mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(-scale));
        q = mpq_class(mant * p10, 1);
    }
    q.canonicalize();
    return q;
}

}  // namespace

Scalar Scalar::parse(const std::string& text, Backend b) {
    if (b == Backend::Float) {
        if (auto slash = text.find('/'); slash != std::string::npos) {
            double num = std::stod(text.substr(0, slash));
            double den = std::stod(text.substr(slash + 1));
            if (den == 0) throw std::domain_error("zero denominator");
            return Scalar::real(num / den);
        }
        return Scalar::real(std::stod(text));
    }
    if (auto slash = text.find('/'); slash != std::string::npos) {
        mpq_class num = decimal_to_rational(text.substr(0, slash));
        mpq_class den = decimal_to_rational(text.substr(slash + 1));
        if (den == 0) throw std::domain_error("zero denominator");
        mpq_class q = num / den;
        q.canonicalize();
        return Scalar(std::move(q));
    }
    return Scalar(decimal_to_rational(text));
}

bool Scalar::is_zero() const {
    if (auto* q = std::get_if<mpq_class>(&v_)) return sgn(*q) == 0;
    return std::get<double>(v_) == 0.0;
}

int Scalar::sign() const {
    if (auto* q = std::get_if<mpq_class>(&v_)) return sgn(*q);
    double x = std::get<double>(v_);
    return x > 0 ? 1 : (x < 0 ? -1 : 0);
}

const mpq_class& Scalar::rat() const {
    if (auto* q = std::get_if<mpq_class>(&v_)) return *q;
    throw BackendMismatch();
}

double Scalar::to_double() const {
    if (auto* q = std::get_if<mpq_class>(&v_)) return q->get_d();
    return std::get<double>(v_);
}

Scalar Scalar::to_backend(Backend b) const {
    if (b == backend()) return *this;
    if (b == Backend::Float) return Scalar(to_double());
    mpq_class q(std::get<double>(v_));
    q.canonicalize();
    return Scalar(std::move(q));
}

Scalar Scalar::operator-() const {
    if (auto* q = std::get_if<mpq_class>(&v_)) return Scalar(mpq_class(-*q));
    return Scalar(-std::get<double>(v_));
}

Scalar& Scalar::operator+=(const Scalar& o) {
    require_same(o);
    if (auto* q = std::get_if<mpq_class>(&v_)) *q += std::get<mpq_class>(o.v_);
    else std::get<double>(v_) += std::get<double>(o.v_);
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    require_same(o);
    if (auto* q = std::get_if<mpq_class>(&v_)) *q -= std::get<mpq_class>(o.v_);
    else std::get<double>(v_) -= std::get<double>(o.v_);
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    require_same(o);
    if (auto* q = std::get_if<mpq_class>(&v_)) *q *= std::get<mpq_class>(o.v_);
    else std::get<double>(v_) *= std::get<double>(o.v_);
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    require_same(o);
    if (auto* q = std::get_if<mpq_class>(&v_)) {
        const auto& d = std::get<mpq_class>(o.v_);
        if (sgn(d) == 0) throw std::domain_error("division by zero");
        *q /= d;
    } else {
        std::get<double>(v_) /= std::get<double>(o.v_);
    }
    return *this;
}

bool Scalar::operator==(const Scalar& o) const {
    require_same(o);
    if (auto* q = std::get_if<mpq_class>(&v_)) return *q == std::get<mpq_class>(o.v_);
    return std::get<double>(v_) == std::get<double>(o.v_);
}

std::strong_ordering Scalar::operator<=>(const Scalar& o) const {
    require_same(o);
    if (auto* q = std::get_if<mpq_class>(&v_)) {
        int c = cmp(*q, std::get<mpq_class>(o.v_));
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    double a = std::get<double>(v_), b = std::get<double>(o.v_);
    return a < b ? std::strong_ordering::less
                 : (a > b ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string Scalar::str() const {
    if (auto* q = std::get_if<mpq_class>(&v_)) return q->get_str();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", std::get<double>(v_));
    return buf;
}

}  // namespace nurbsinv
