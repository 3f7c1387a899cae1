#include "flexcert/linalg.hpp"

#include "flexcert/errors.hpp"

#include <utility>

namespace flexcert {

namespace {

// Row-major integer copy of m, each row scaled by the lcm of its denominators.
std::vector<mpz_class> integer_rows(const Matrix& m) {
    std::vector<mpz_class> a(m.rows() * m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        mpz_class scale = 1;
        for (std::size_t c = 0; c < m.cols(); ++c)
            mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), m(r, c).get_den_mpz_t());
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const Scalar& x = m(r, c);
            a[r * m.cols() + c] = x.get_num() * (scale / x.get_den());
        }
    }
    return a;
}

}  // namespace

RowEchelon row_reduce(const Matrix& m) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::vector<mpz_class> a = integer_rows(m);
    auto at = [&](std::size_t r, std::size_t c) -> mpz_class& { return a[r * cols + c]; };

    std::vector<std::size_t> pivots;
    mpz_class previous = 1;
    mpz_class t;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && at(p, c) == 0) ++p;
        if (p == rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(at(p, j), at(r, j));
        const mpz_class& pivot = at(r, c);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                t = pivot * at(i, j);
                t -= at(i, c) * at(r, j);
                mpz_divexact(at(i, j).get_mpz_t(), t.get_mpz_t(), previous.get_mpz_t());
            }
            at(i, c) = 0;
        }
        previous = pivot;
        pivots.push_back(c);
        ++r;
    }

    RowEchelon out{Matrix(rows, cols), pivots};
    Matrix& red = out.reduced;
    for (std::size_t i = 0; i < pivots.size(); ++i)
        for (std::size_t j = pivots[i]; j < cols; ++j) red(i, j) = Scalar(at(i, j));
    for (std::size_t k = pivots.size(); k-- > 0;) {
        const std::size_t pc = pivots[k];
        Scalar inv = 1 / red(k, pc);
        for (std::size_t j = pc; j < cols; ++j)
            if (sgn(red(k, j)) != 0) red(k, j) *= inv;
        for (std::size_t i = 0; i < k; ++i) {
            if (sgn(red(i, pc)) == 0) continue;
            Scalar f = red(i, pc);
            for (std::size_t j = pc; j < cols; ++j)
                if (sgn(red(k, j)) != 0) red(i, j) -= f * red(k, j);
        }
    }
    return out;
}

std::size_t rank(const Matrix& m) { return row_reduce(m).rank(); }

Scalar determinant(const Matrix& m) {
    if (m.rows() != m.cols()) throw UsageError("determinant of a non-square matrix");
    Matrix a = m;
    const std::size_t n = a.rows();
    Scalar det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(a(p, c)) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
            det = -det;
        }
        det *= a(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (sgn(a(i, c)) == 0) continue;
            Scalar f = a(i, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
        }
    }
    return det;
}

namespace {

// Scales v to coprime integers; the free entry stays positive.
Vector primitive(Vector v) {
    mpz_class l = 1, g = 0;
    for (const auto& x : v) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
    }
    // gcd of the numerators over lcm of the denominators divides every entry
    Scalar scale(l, g);
    scale.canonicalize();
    return v *= scale;
}

std::vector<Vector> kernel_from_echelon(const RowEchelon& e, std::size_t cols) {
    std::vector<bool> is_pivot(cols, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        Vector v(cols);
        v[f] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, f);
        basis.push_back(primitive(std::move(v)));
    }
    return basis;
}

}  // namespace

std::vector<Vector> kernel_basis(const Matrix& m) {
    return kernel_from_echelon(row_reduce(m), m.cols());
}

std::vector<Vector> cokernel_basis(const Matrix& m) { return kernel_basis(m.transpose()); }

std::optional<GeneralSolution> solve_general(const Matrix& m, const Vector& v) {
    if (m.rows() != v.size()) throw UsageError("solve_general: right-hand side length differs from row count");
    const std::size_t cols = m.cols();
    Matrix aug(m.rows(), cols + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < cols; ++c) aug(r, c) = m(r, c);
        aug(r, cols) = v[r];
    }
    RowEchelon e = row_reduce(aug);
    if (!e.pivots.empty() && e.pivots.back() == cols) return std::nullopt;

    GeneralSolution sol{Vector(cols), {}};
    for (std::size_t i = 0; i < e.pivots.size(); ++i) sol.particular[e.pivots[i]] = e.reduced(i, cols);
    // Without a pivot in the last column the leading block is the RREF of m.
    sol.nullspace = kernel_from_echelon(e, cols);
    return sol;
}

bool image_contains(const Matrix& m, const Vector& v) {
    if (m.rows() != v.size()) throw UsageError("image_contains: vector length differs from row count");
    if (v.is_zero()) return true;
    return solve_general(m, v).has_value();
}

std::optional<SpanSolution> solve_in_span(const Matrix& m, const Vector& v,
                                          const std::vector<Vector>& span) {
    if (m.rows() != v.size()) throw UsageError("solve_in_span: right-hand side length differs from row count");
    for (const auto& s : span)
        if (s.size() != m.cols()) throw UsageError("solve_in_span: span vector length differs from column count");

    Matrix s = Matrix::from_columns(span, m.cols());
    Matrix ms = m * s;
    auto sol = solve_general(ms, v);
    if (!sol) return std::nullopt;

    SpanSolution out{sol->particular.entries(), s * sol->particular, {}};
    for (const auto& n : sol->nullspace) {
        Vector direction = s * n;
        if (!direction.is_zero()) out.freedom.push_back(std::move(direction));
    }
    return out;
}

std::vector<std::size_t> independent_subset(const std::vector<Vector>& vectors, std::size_t dimension) {
    for (const auto& v : vectors)
        if (v.size() != dimension) throw UsageError("independent_subset: vector length mismatch");
    RowEchelon e = row_reduce(Matrix::from_columns(vectors, dimension));
    return e.pivots;
}

bool linearly_independent(const std::vector<Vector>& vectors, std::size_t dimension) {
    return independent_subset(vectors, dimension).size() == vectors.size();
}

}  // namespace flexcert
