#include "nurbsinv/poly.hpp"

#include <bit>
#include <cmath>
#include <cstdint>

namespace nurbsinv {

UnivariatePoly UnivariatePoly::operator+(const UnivariatePoly& o) const {
    if (b_ != o.b_) throw BackendMismatch();
    std::vector<Scalar> r(std::max(c_.size(), o.c_.size()), Scalar::zero(b_));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return UnivariatePoly(b_, std::move(r));
}

UnivariatePoly UnivariatePoly::operator-(const UnivariatePoly& o) const {
    if (b_ != o.b_) throw BackendMismatch();
    std::vector<Scalar> r(std::max(c_.size(), o.c_.size()), Scalar::zero(b_));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return UnivariatePoly(b_, std::move(r));
}

UnivariatePoly UnivariatePoly::operator*(const UnivariatePoly& o) const {
    if (b_ != o.b_) throw BackendMismatch();
    if (c_.empty() || o.c_.empty()) return UnivariatePoly(b_);
    std::vector<Scalar> r(c_.size() + o.c_.size() - 1, Scalar::zero(b_));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return UnivariatePoly(b_, std::move(r));
}

Scalar UnivariatePoly::eval(const Scalar& t) const {
    Scalar acc = Scalar::zero(b_);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

BivariatePoly BivariatePoly::constant(const Scalar& c) {
    BivariatePoly p(c.backend());
    p.add_term(0, 0, c);
    return p;
}

BivariatePoly BivariatePoly::var_x(Backend b) {
    BivariatePoly p(b);
    p.add_term(1, 0, Scalar::one(b));
    return p;
}

BivariatePoly BivariatePoly::var_y(Backend b) {
    BivariatePoly p(b);
    p.add_term(0, 1, Scalar::one(b));
    return p;
}

int BivariatePoly::total_degree() const {
    int d = -1;
    for (const auto& [k, c] : t_) d = std::max(d, k.first + k.second);
    return d;
}

void BivariatePoly::add_term(int ex, int ey, const Scalar& c) {
    if (c.backend() != b_) throw BackendMismatch();
    if (c.is_zero()) return;
    auto [it, inserted] = t_.try_emplace({ex, ey}, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

BivariatePoly BivariatePoly::operator+(const BivariatePoly& o) const {
    if (b_ != o.b_) throw BackendMismatch();
    BivariatePoly r = *this;
    for (const auto& [k, c] : o.t_) r.add_term(k.first, k.second, c);
    return r;
}

BivariatePoly BivariatePoly::operator-(const BivariatePoly& o) const {
    if (b_ != o.b_) throw BackendMismatch();
    BivariatePoly r = *this;
    for (const auto& [k, c] : o.t_) r.add_term(k.first, k.second, -c);
    return r;
}

BivariatePoly BivariatePoly::operator*(const BivariatePoly& o) const {
    if (b_ != o.b_) throw BackendMismatch();
    BivariatePoly r(b_);
    for (const auto& [ka, ca] : t_)
        for (const auto& [kb, cb] : o.t_)
            r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return r;
}

BivariatePoly BivariatePoly::operator-() const {
    BivariatePoly r(b_);
    for (const auto& [k, c] : t_) r.add_term(k.first, k.second, -c);
    return r;
}

BivariatePoly BivariatePoly::operator*(const Scalar& c) const {
    BivariatePoly r(b_);
    if (c.is_zero()) return r;
    for (const auto& [k, v] : t_) r.add_term(k.first, k.second, v * c);
    return r;
}

namespace {

/* Error-free transforms.  A double-double value keeps the exact rounding
   error of each operation in a trailing term, which matters here because a
   denominator minor evaluated on the curve is a small residue of large
   cancelling monomials; plain doubles can lose every significant digit. */
struct DD {
    double hi, lo;
};

DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

DD renorm(double h, double l) {
    double s = h + l;
    return {s, l - (s - h)};
}

DD two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

DD dd_add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    return renorm(s.hi, s.lo + a.lo + b.lo);
}

DD dd_mul(DD a, DD b) {
    DD p = two_prod(a.hi, b.hi);
    return renorm(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}

}  // namespace

Scalar BivariatePoly::eval(const Scalar& x, const Scalar& y) const {
    int dx = 0, dy = 0;
    for (const auto& [k, c] : t_) {
        dx = std::max(dx, k.first);
        dy = std::max(dy, k.second);
    }
    if (b_ == Backend::Float) {
        std::vector<DD> px(dx + 1, DD{1.0, 0.0}), py(dy + 1, DD{1.0, 0.0});
        for (int i = 1; i <= dx; ++i) px[i] = dd_mul(px[i - 1], {x.to_double(), 0.0});
        for (int i = 1; i <= dy; ++i) py[i] = dd_mul(py[i - 1], {y.to_double(), 0.0});
        DD acc{0.0, 0.0};
        for (const auto& [k, c] : t_)
            acc = dd_add(acc, dd_mul({c.to_double(), 0.0}, dd_mul(px[k.first], py[k.second])));
        return Scalar::real(acc.hi + acc.lo);
    }
    std::vector<Scalar> px(dx + 1, Scalar::one(b_)), py(dy + 1, Scalar::one(b_));
    for (int i = 1; i <= dx; ++i) px[i] = px[i - 1] * x;
    for (int i = 1; i <= dy; ++i) py[i] = py[i - 1] * y;
    Scalar acc = Scalar::zero(b_);
    for (const auto& [k, c] : t_) acc += c * px[k.first] * py[k.second];
    return acc;
}

BivariatePoly BivariatePoly::to_backend(Backend nb) const {
    BivariatePoly r(nb);
    for (const auto& [k, c] : t_) r.add_term(k.first, k.second, c.to_backend(nb));
    return r;
}

BivariatePoly det_poly_minor(const PolyMatrix& m, int skip_row, int skip_col) {
    Backend b = m.backend();
    std::vector<int> rows, cols;
    for (int i = 0; i < m.size(); ++i) {
        if (i != skip_row) rows.push_back(i);
        if (i != skip_col) cols.push_back(i);
    }
    const int n = static_cast<int>(rows.size());
    if (n != static_cast<int>(cols.size())) throw std::invalid_argument("minor not square");
    if (n == 0) return BivariatePoly::constant(Scalar::one(b));

    // dp[mask] = det of the submatrix of the first popcount(mask) kept rows
    // and the kept columns selected by mask. Multiply-and-add only.
    const std::uint32_t full = (n >= 32) ? ~0u : ((1u << n) - 1);
    std::vector<BivariatePoly> dp(full + 1, BivariatePoly(b));
    dp[0] = BivariatePoly::constant(Scalar::one(b));
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        const int r = std::popcount(mask) - 1;
        BivariatePoly acc(b);
        int pos = 0;
        for (int j = 0; j < n; ++j) {
            if (!(mask & (1u << j))) continue;
            const BivariatePoly& entry = m.at(rows[r], cols[j]);
            if (!entry.is_zero()) {
                BivariatePoly term = entry * dp[mask & ~(1u << j)];
                acc = ((r + pos) % 2 == 0) ? acc + term : acc - term;
            }
            ++pos;
        }
        dp[mask] = std::move(acc);
    }
    return dp[full];
}

BivariatePoly det_poly(const PolyMatrix& m) { return det_poly_minor(m, -1, -1); }

}  // namespace nurbsinv
