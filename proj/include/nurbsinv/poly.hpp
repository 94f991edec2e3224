#pragma once

#include "nurbsinv/scalar.hpp"

#include <map>
#include <utility>
#include <vector>

namespace nurbsinv {

// Dense univariate polynomial in t. Canonical form: no trailing zero
// coefficients; the zero polynomial has an empty coefficient list.
class UnivariatePoly {
public:
    explicit UnivariatePoly(Backend b) : b_(b) {}
    UnivariatePoly(Backend b, std::vector<Scalar> coeffs) : b_(b), c_(std::move(coeffs)) {
        trim();
    }

    Backend backend() const { return b_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    Scalar coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return Scalar::zero(b_);
        return c_[i];
    }
    const std::vector<Scalar>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    UnivariatePoly operator+(const UnivariatePoly& o) const;
    UnivariatePoly operator-(const UnivariatePoly& o) const;
    UnivariatePoly operator*(const UnivariatePoly& o) const;
    bool operator==(const UnivariatePoly& o) const { return b_ == o.b_ && c_ == o.c_; }

    Scalar eval(const Scalar& t) const;

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    Backend b_;
    std::vector<Scalar> c_;
};

// Sparse bivariate polynomial in (x, y): exponent pair -> nonzero coefficient.
class BivariatePoly {
public:
    using Key = std::pair<int, int>;

    explicit BivariatePoly(Backend b) : b_(b) {}

    static BivariatePoly constant(const Scalar& c);
    static BivariatePoly var_x(Backend b);
    static BivariatePoly var_y(Backend b);

    Backend backend() const { return b_; }
    bool is_zero() const { return t_.empty(); }
    int total_degree() const;
    const std::map<Key, Scalar>& terms() const { return t_; }

    void add_term(int ex, int ey, const Scalar& c);

    BivariatePoly operator+(const BivariatePoly& o) const;
    BivariatePoly operator-(const BivariatePoly& o) const;
    BivariatePoly operator*(const BivariatePoly& o) const;
    BivariatePoly operator-() const;
    BivariatePoly operator*(const Scalar& c) const;
    bool operator==(const BivariatePoly& o) const { return b_ == o.b_ && t_ == o.t_; }

    // Float evaluation runs in compensated (double-double) arithmetic: the
    // minors this type carries cancel heavily at on-curve points, and plain
    // double summation loses most of the result there.
    Scalar eval(const Scalar& x, const Scalar& y) const;

    BivariatePoly to_backend(Backend nb) const;

private:
    Backend b_;
    std::map<Key, Scalar> t_;
};

// Square matrix of bivariate polynomials.
class PolyMatrix {
public:
    PolyMatrix(int n, Backend b) : n_(n), e_(n * n, BivariatePoly(b)) {
        if (n < 1) throw std::invalid_argument("matrix dimension must be >= 1");
    }
    int size() const { return n_; }
    BivariatePoly& at(int r, int c) { return e_[r * n_ + c]; }
    const BivariatePoly& at(int r, int c) const { return e_[r * n_ + c]; }
    Backend backend() const { return e_.front().backend(); }

private:
    int n_;
    std::vector<BivariatePoly> e_;
};

// Exact symbolic determinant. Division-free: Laplace expansion memoized over
// column subsets, so the Exact backend never leaves the polynomial ring.
BivariatePoly det_poly(const PolyMatrix& m);

// Determinant of m with rows/columns restricted: keep rows [0, n) except
// skip_row, keep columns except skip_col (pass -1 to keep everything).
BivariatePoly det_poly_minor(const PolyMatrix& m, int skip_row, int skip_col);

}  // namespace nurbsinv
