#pragma once

#include <gmpxx.h>

#include <compare>
#include <stdexcept>
#include <string>
#include <variant>

namespace nurbsinv {

enum class Backend { Exact, Float };

struct BackendMismatch : std::logic_error {
    BackendMismatch() : std::logic_error("mixed Exact/Float scalar arithmetic") {}
};

// One number, either an arbitrary-precision rational or an IEEE double.
// The two backends never mix silently: any binary operation on scalars of
// different backends throws BackendMismatch.
class Scalar {
public:
    Scalar() : v_(mpq_class(0)) {}

    static Scalar exact(long num, long den = 1);
    static Scalar exact(const mpq_class& q);
    static Scalar real(double x) { return Scalar(x); }
    static Scalar zero(Backend b) { return b == Backend::Exact ? exact(0) : real(0.0); }
    static Scalar one(Backend b) { return b == Backend::Exact ? exact(1) : real(1.0); }
    // Accepts "p/q", integer, and terminating decimal/exponent forms ("0.25", "1e-9").
    static Scalar parse(const std::string& text, Backend b);

    Backend backend() const {
        return std::holds_alternative<mpq_class>(v_) ? Backend::Exact : Backend::Float;
    }
    bool is_exact() const { return backend() == Backend::Exact; }
    bool is_zero() const;
    int sign() const;

    const mpq_class& rat() const;
    double to_double() const;
    Scalar to_backend(Backend b) const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    bool operator==(const Scalar& o) const;
    std::strong_ordering operator<=>(const Scalar& o) const;

    Scalar abs() const { return sign() < 0 ? -*this : *this; }

    // Exact: "p/q" (or "p" for integers); Float: shortest round-trip decimal.
    std::string str() const;

private:
    explicit Scalar(mpq_class q) : v_(std::move(q)) {}
    explicit Scalar(double x) : v_(x) {}
    void require_same(const Scalar& o) const {
        if (backend() != o.backend()) throw BackendMismatch();
    }
    std::variant<mpq_class, double> v_;
};

}  // namespace nurbsinv
