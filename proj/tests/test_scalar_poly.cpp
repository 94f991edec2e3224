#include <catch2/catch_amalgamated.hpp>

#include "nurbsinv/poly.hpp"

#include <cmath>
#include <random>

using namespace nurbsinv;

namespace {
Scalar q(long n, long d = 1) { return Scalar::exact(n, d); }
}  // namespace

TEST_CASE("scalar parsing", "[scalar]") {
    SECTION("fractions and integers") {
        REQUIRE(Scalar::parse("3/4", Backend::Exact) == q(3, 4));
        REQUIRE(Scalar::parse("-3/4", Backend::Exact) == q(-3, 4));
        REQUIRE(Scalar::parse("7", Backend::Exact) == q(7));
        REQUIRE(Scalar::parse("-0", Backend::Exact).is_zero());
    }
    SECTION("terminating decimals are exact rationals") {
        REQUIRE(Scalar::parse("0.25", Backend::Exact) == q(1, 4));
        REQUIRE(Scalar::parse("-1.5", Backend::Exact) == q(-3, 2));
        REQUIRE(Scalar::parse("1e-9", Backend::Exact) == q(1, 1000000000));
        REQUIRE(Scalar::parse("2.5e2", Backend::Exact) == q(250));
    }
    SECTION("float backend") {
        Scalar x = Scalar::parse("0.25", Backend::Float);
        REQUIRE(x.backend() == Backend::Float);
        REQUIRE(x.to_double() == 0.25);
        REQUIRE(Scalar::parse("3/4", Backend::Float).to_double() == 0.75);
    }
    SECTION("garbage rejected") {
        REQUIRE_THROWS(Scalar::parse("abc", Backend::Exact));
        REQUIRE_THROWS(Scalar::parse("1/0", Backend::Exact));
        REQUIRE_THROWS(Scalar::parse("", Backend::Exact));
    }
}

TEST_CASE("scalar arithmetic and ordering", "[scalar]") {
    SECTION("exact field operations") {
        REQUIRE(q(1, 3) + q(1, 6) == q(1, 2));
        REQUIRE(q(1, 3) - q(1, 2) == q(-1, 6));
        REQUIRE(q(2, 3) * q(9, 4) == q(3, 2));
        REQUIRE(q(2, 3) / q(4, 9) == q(3, 2));
        REQUIRE((-q(5, 7)).sign() == -1);
        REQUIRE(q(-5, 7).abs() == q(5, 7));
    }
    SECTION("ordering") {
        REQUIRE(q(1, 3) < q(1, 2));
        REQUIRE(q(-1, 2) < q(-1, 3));
        REQUIRE(!(q(2, 4) < q(1, 2)));
    }
    SECTION("string round trip") {
        REQUIRE(q(-22, 7).str() == "-22/7");
        REQUIRE(q(5).str() == "5");
        REQUIRE(Scalar::parse(q(355, 113).str(), Backend::Exact) == q(355, 113));
    }
    SECTION("backends never mix silently") {
        REQUIRE_THROWS_AS(q(1, 2) + Scalar::real(0.5), BackendMismatch);
        REQUIRE_THROWS_AS(Scalar::real(1.0) * q(2), BackendMismatch);
    }
    SECTION("backend conversion") {
        REQUIRE(q(1, 2).to_backend(Backend::Float).to_double() == 0.5);
        // Doubles are dyadic rationals; the conversion back is exact.
        REQUIRE(Scalar::real(0.1).to_backend(Backend::Exact) ==
                Scalar::exact(mpq_class(0.1)));
    }
}

TEST_CASE("univariate polynomial ring", "[poly]") {
    auto P = [](std::vector<long> c) {
        std::vector<Scalar> v;
        for (long x : c) v.push_back(q(x));
        return UnivariatePoly(Backend::Exact, v);
    };
    SECTION("arithmetic") {
        // (1 + t)(1 - t) = 1 - t^2
        REQUIRE(P({1, 1}) * P({1, -1}) == P({1, 0, -1}));
        REQUIRE(P({1, 2, 3}) + P({0, -2}) == P({1, 0, 3}));
        REQUIRE(P({1, 2, 3}) - P({1, 2, 3}) == P({}));
    }
    SECTION("canonical form trims trailing zeros") {
        UnivariatePoly z(Backend::Exact, {q(1), q(0), q(0)});
        REQUIRE(z.degree() == 0);
        REQUIRE(P({}).is_zero());
        REQUIRE(P({}).degree() == -1);
    }
    SECTION("evaluation") {
        // 2 - 3t + t^3 at t = 1/2
        REQUIRE(P({2, -3, 0, 1}).eval(q(1, 2)) == q(5, 8));
        REQUIRE(P({}).eval(q(7)) == q(0));
    }
}

TEST_CASE("bivariate polynomial ring", "[poly]") {
    const Backend b = Backend::Exact;
    const BivariatePoly x = BivariatePoly::var_x(b), y = BivariatePoly::var_y(b);
    SECTION("arithmetic and cancellation") {
        REQUIRE((x + y) * (x - y) == x * x - y * y);
        BivariatePoly p = x * y - x * y;
        REQUIRE(p.is_zero());
        REQUIRE(p.terms().empty());
    }
    SECTION("total degree and scalar multiple") {
        BivariatePoly p = x * x * y + y;
        REQUIRE(p.total_degree() == 3);
        REQUIRE(p * q(2) == p + p);
    }
    SECTION("exact evaluation") {
        // 28x + 31y - 57 at (7/15, 3/5)
        BivariatePoly p(b);
        p.add_term(1, 0, q(28));
        p.add_term(0, 1, q(31));
        p.add_term(0, 0, q(-57));
        REQUIRE(p.eval(q(7, 15), q(3, 5)) == q(-76, 3));
    }
    SECTION("float evaluation survives catastrophic cancellation") {
        // (x - 1)^4 * (y + 2) expanded to monomials, evaluated at
        // x = 1 + 2^-13: the true value is ~2^-52 while the individual
        // monomials are O(1), so plain double accumulation returns noise.
        BivariatePoly one = BivariatePoly::constant(q(1));
        BivariatePoly p = (x - one) * (x - one);
        p = p * p * (y + BivariatePoly::constant(q(2)));
        Scalar xv = q(1) + q(1, 8192), yv = q(3);
        Scalar want = p.eval(xv, yv);
        Scalar got = p.to_backend(Backend::Float)
                         .eval(xv.to_backend(Backend::Float), yv.to_backend(Backend::Float));
        double rel = std::abs(got.to_double() - want.to_double()) / want.to_double();
        REQUIRE(rel < 1e-14);
    }
}

namespace {

// Independent determinant oracle: plain first-row cofactor expansion on an
// explicit submatrix, no memoization shared with the implementation.
BivariatePoly cofactor_det(const PolyMatrix& m, std::vector<int> rows, std::vector<int> cols) {
    if (rows.size() == 1) return m.at(rows[0], cols[0]);
    BivariatePoly acc(m.backend());
    std::vector<int> sub_rows(rows.begin() + 1, rows.end());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        std::vector<int> sub_cols;
        for (std::size_t l = 0; l < cols.size(); ++l)
            if (l != j) sub_cols.push_back(cols[l]);
        BivariatePoly term = m.at(rows[0], cols[j]) * cofactor_det(m, sub_rows, sub_cols);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

PolyMatrix random_matrix(int n, std::mt19937_64& rng) {
    PolyMatrix m(n, Backend::Exact);
    std::uniform_int_distribution<int> coef(-4, 4), deg(0, 1);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            BivariatePoly e(Backend::Exact);
            e.add_term(deg(rng), deg(rng), q(coef(rng)));
            e.add_term(0, 0, q(coef(rng)));
            m.at(r, c) = e;
        }
    return m;
}

}  // namespace

TEST_CASE("symbolic determinant", "[poly][det]") {
    std::mt19937_64 rng(0xd5eed);
    SECTION("matches cofactor expansion") {
        for (int n : {2, 3, 4, 5}) {
            for (int rep = 0; rep < 3; ++rep) {
                PolyMatrix m = random_matrix(n, rng);
                std::vector<int> idx(n);
                for (int i = 0; i < n; ++i) idx[i] = i;
                REQUIRE(det_poly(m) == cofactor_det(m, idx, idx));
            }
        }
    }
    SECTION("triangular matrix: product of the diagonal") {
        PolyMatrix m(3, Backend::Exact);
        const BivariatePoly x = BivariatePoly::var_x(Backend::Exact);
        const BivariatePoly y = BivariatePoly::var_y(Backend::Exact);
        m.at(0, 0) = x;
        m.at(1, 1) = y;
        m.at(2, 2) = x + y;
        m.at(0, 1) = x * y;  // above the diagonal, irrelevant
        m.at(0, 2) = y;
        m.at(1, 2) = x;
        REQUIRE(det_poly(m) == x * y * (x + y));
    }
    SECTION("repeated row kills the determinant") {
        PolyMatrix m = random_matrix(4, rng);
        for (int c = 0; c < 4; ++c) m.at(2, c) = m.at(0, c);
        REQUIRE(det_poly(m).is_zero());
    }
    SECTION("minor expansion reassembles the determinant") {
        PolyMatrix m = random_matrix(4, rng);
        BivariatePoly acc(Backend::Exact);
        for (int j = 0; j < 4; ++j) {
            BivariatePoly term = m.at(0, j) * det_poly_minor(m, 0, j);
            acc = (j % 2 == 0) ? acc + term : acc - term;
        }
        REQUIRE(acc == det_poly(m));
        REQUIRE(det_poly_minor(m, -1, -1) == det_poly(m));
    }
}
