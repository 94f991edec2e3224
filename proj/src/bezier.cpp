#include "nurbsinv/bezier.hpp"

namespace nurbsinv {

namespace {

bool is_active(const KnotVector& U, int k) {
    return k + 1 < U.count() && U[k] < U[k + 1];
}

void require_active(const KnotVector& U, int k) {
    if (!is_active(U, k)) throw std::invalid_argument("inactive knot interval index");
}

int find_span_open(const std::vector<Scalar>& U, int d, const Scalar& u) {
    const int m = static_cast<int>(U.size()) - 1;
    if (u == U[m]) {
        int k = m - 1;
        while (U[k] == U[m]) --k;
        return k;
    }
    int k = d;
    while (!(U[k] <= u && u < U[k + 1])) ++k;
    return k;
}

int count_knot(const std::vector<Scalar>& U, const Scalar& u) {
    int c = 0;
    for (const auto& v : U)
        if (v == u) ++c;
    return c;
}

// One Boehm insertion of ubar; rows[i] holds control point i expressed as
// coefficients over the original spline basis.
void insert_knot(std::vector<Scalar>& U, int d, std::vector<std::vector<Scalar>>& rows,
                 const Scalar& ubar) {
    const int k = find_span_open(U, d, ubar);
    const int n = static_cast<int>(rows.size()) - 1;
    std::vector<std::vector<Scalar>> next;
    next.reserve(rows.size() + 1);
    for (int i = 0; i <= n + 1; ++i) {
        if (i <= k - d) {
            next.push_back(rows[i]);
        } else if (i > k) {
            next.push_back(rows[i - 1]);
        } else {
            Scalar a = (ubar - U[i]) / (U[i + d] - U[i]);
            Scalar b = Scalar::one(a.backend()) - a;
            std::vector<Scalar> mix;
            mix.reserve(rows[i].size());
            for (std::size_t j = 0; j < rows[i].size(); ++j)
                mix.push_back(a * rows[i][j] + b * rows[i - 1][j]);
            next.push_back(std::move(mix));
        }
    }
    rows = std::move(next);
    U.insert(std::upper_bound(U.begin(), U.end(), ubar), ubar);
}

}  // namespace

ExtractionMatrix extraction_matrix(const KnotVector& U, int d, int k) {
    require_active(U, k);
    const Backend b = U.backend();
    const int n1 = U.count() - d - 1;  // number of splines
    std::vector<std::vector<Scalar>> rows(n1, std::vector<Scalar>(n1, Scalar::zero(b)));
    for (int i = 0; i < n1; ++i) rows[i][i] = Scalar::one(b);
    std::vector<Scalar> V = U.knots();
    for (const Scalar& ub : {U[k], U[k + 1]})
        while (count_knot(V, ub) < d) insert_knot(V, d, rows, ub);
    const int kk = find_span_open(V, d, U[k]);
    ExtractionMatrix S{k, {}};
    S.m.reserve(d + 1);
    for (int j = 0; j <= d; ++j) {
        std::vector<Scalar> row;
        row.reserve(d + 1);
        for (int i = 0; i <= d; ++i) row.push_back(rows[kk - d + j][k - d + i]);
        S.m.push_back(std::move(row));
    }
    return S;
}

ExtractionMatrix quadratic_weighted_matrix(const NurbsCurve& c, int k) {
    if (c.degree != 2) throw std::invalid_argument("weighted matrix is defined for degree 2");
    ExtractionMatrix S = extraction_matrix(c.knots, 2, k);
    for (int r = 0; r <= 2; ++r)
        for (int i = 0; i <= 2; ++i) S.m[r][i] *= c.weights[k - 2 + r];
    return S;
}

BezierSegment segment_homogeneous(const NurbsCurve& c, int k) {
    const int d = c.degree;
    const Backend b = c.backend();
    ExtractionMatrix S = extraction_matrix(c.knots, d, k);

    // Bernstein coefficients of (f0, f1, f2): weights attach per column
    // (per spline), A_j = sum_i S[j][i] * w_{k-d+i} * (1, x, y)_{k-d+i}.
    std::vector<std::array<Scalar, 3>> A(d + 1, {Scalar::zero(b), Scalar::zero(b), Scalar::zero(b)});
    for (int j = 0; j <= d; ++j) {
        for (int i = 0; i <= d; ++i) {
            const int g = k - d + i;
            Scalar cwi = S.m[j][i] * c.weights[g];
            if (cwi.is_zero()) continue;
            A[j][0] += cwi;
            A[j][1] += cwi * c.control_points[g][0];
            A[j][2] += cwi * c.control_points[g][1];
        }
    }

    // Monomial conversion: B_{j,d}(t) = C(d,j) t^j (1-t)^{d-j}.
    std::vector<std::vector<long>> binom(d + 1, std::vector<long>(d + 1, 0));
    for (int i = 0; i <= d; ++i) {
        binom[i][0] = 1;
        for (int j = 1; j <= i; ++j)
            binom[i][j] = binom[i - 1][j - 1] + (j <= i - 1 ? binom[i - 1][j] : 0);
    }
    std::array<std::vector<Scalar>, 3> f;
    for (auto& v : f) v.assign(d + 1, Scalar::zero(b));
    for (int j = 0; j <= d; ++j) {
        for (int l = 0; l <= d - j; ++l) {
            long cc = binom[d][j] * binom[d - j][l] * ((l % 2 == 0) ? 1 : -1);
            Scalar coeff = Scalar::exact(cc, 1).to_backend(b);
            for (int q = 0; q < 3; ++q) f[q][j + l] += coeff * A[j][q];
        }
    }
    return BezierSegment{k, c.knots[k], c.knots[k + 1], UnivariatePoly(b, std::move(f[0])),
                         UnivariatePoly(b, std::move(f[1])), UnivariatePoly(b, std::move(f[2])), d};
}

}  // namespace nurbsinv
