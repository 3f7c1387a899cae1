#include "oracles.hpp"

#include <fstream>
#include <sstream>

namespace oracle {

using namespace flexcert;

Rref naive_rref(const Matrix& m) {
    Rref out{m, {}};
    Matrix& a = out.reduced;
    std::size_t row = 0;
    for (std::size_t c = 0; c < a.cols() && row < a.rows(); ++c) {
        std::size_t p = row;
        while (p < a.rows() && a(p, c) == 0) ++p;
        if (p == a.rows()) continue;
        for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(row, j));
        Scalar inv = 1 / a(row, c);
        for (std::size_t j = 0; j < a.cols(); ++j) a(row, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row || a(i, c) == 0) continue;
            Scalar f = a(i, c);
            for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
        }
        out.pivots.push_back(c);
        ++row;
    }
    return out;
}

std::size_t naive_rank(const Matrix& m) { return naive_rref(m).pivots.size(); }

Poly poly_mul(const Poly& a, const Poly& b, std::size_t max_degree) {
    Poly out(max_degree + 1);
    for (std::size_t i = 0; i < a.size() && i <= max_degree; ++i)
        for (std::size_t j = 0; j < b.size() && i + j <= max_degree; ++j) out[i + j] += a[i] * b[j];
    return out;
}

std::vector<Vector> compose(const GeneralPolySystem& sys, const std::vector<Vector>& coeffs, std::size_t max_degree) {
    const std::size_t m = sys.variable_names.size();
    std::vector<Poly> x(m, Poly(max_degree + 1));
    for (std::size_t p = 0; p < coeffs.size() && p <= max_degree; ++p)
        for (std::size_t i = 0; i < m; ++i) x[i][p] = coeffs[p][i];
    std::vector<Vector> out(max_degree + 1, Vector(sys.equations.size()));
    for (std::size_t k = 0; k < sys.equations.size(); ++k)
        for (const auto& [e, c] : sys.equations[k]) {
            Poly term(max_degree + 1);
            term[0] = c;
            for (std::size_t i = 0; i < m; ++i)
                for (unsigned r = 0; r < e[i]; ++r) term = poly_mul(term, x[i], max_degree);
            for (std::size_t p = 0; p <= max_degree; ++p) out[p][k] += term[p];
        }
    return out;
}

Scalar eval_monomials(const Polynomial& p, const Vector& x) {
    Scalar sum = 0;
    for (const auto& [e, c] : p) {
        Scalar term = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            mpq_class power;
            mpz_pow_ui(power.get_num_mpz_t(), x[i].get_num_mpz_t(), e[i]);
            mpz_pow_ui(power.get_den_mpz_t(), x[i].get_den_mpz_t(), e[i]);
            term *= power;
        }
        sum += term;
    }
    return sum;
}

Scalar factorial(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Scalar(f);
}

Poly cos_series(std::size_t degree, const Scalar& scale) {
    Poly out(degree + 1);
    Scalar power = 1;
    for (std::size_t n = 0; n <= degree; ++n) {
        if (n % 2 == 0) out[n] = (n % 4 == 0 ? 1 : -1) * power / factorial(static_cast<unsigned>(n));
        power *= scale;
    }
    return out;
}

Poly sin_series(std::size_t degree, const Scalar& scale) {
    Poly out(degree + 1);
    Scalar power = 1;
    for (std::size_t n = 0; n <= degree; ++n) {
        if (n % 2 == 1) out[n] = (n % 4 == 1 ? 1 : -1) * power / factorial(static_cast<unsigned>(n));
        power *= scale;
    }
    return out;
}

Poly sqrt_one_minus(const Poly& u, std::size_t degree) {
    Poly out(degree + 1);
    Poly power(degree + 1);
    power[0] = 1;
    Scalar binom = 1;  // binomial(1/2, n)
    Poly minus_u(degree + 1);
    for (std::size_t i = 0; i < u.size() && i <= degree; ++i) minus_u[i] = -u[i];
    for (std::size_t n = 0; n <= degree; ++n) {
        for (std::size_t i = 0; i <= degree; ++i) out[i] += binom * power[i];
        binom *= (make_scalar(1, 2) - Scalar(static_cast<long>(n))) / Scalar(static_cast<long>(n + 1));
        power = poly_mul(power, minus_u, degree);
    }
    return out;
}

std::vector<Vector> viviani(std::size_t degree) {
    Poly c = cos_series(degree);
    Poly s = sin_series(degree);
    Poly h = sin_series(degree, make_scalar(1, 2));
    std::vector<Vector> out;
    for (std::size_t p = 0; p <= degree; ++p) out.push_back(Vector{(p == 0 ? 1 : 0) + c[p], s[p], 2 * h[p]});
    return out;
}

Scalar Rng::rational(long range, long max_den) {
    return make_scalar(integer(-range, range), integer(1, max_den));
}

Vector Rng::vector(std::size_t n, long range, long max_den) {
    Vector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = rational(range, max_den);
    return v;
}

Matrix Rng::matrix(std::size_t rows, std::size_t cols, long range, double zero_fraction) {
    Matrix m(rows, cols);
    std::uniform_real_distribution<double> coin(0, 1);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (coin(gen_) >= zero_fraction) m(r, c) = rational(range, 3);
    return m;
}

Matrix Rng::matrix_of_rank(std::size_t rows, std::size_t cols, std::size_t rank) {
    while (true) {
        Matrix a = matrix(rows, rank, 4, 0.1);
        Matrix b = matrix(rank, cols, 4, 0.1);
        Matrix m = a * b;
        if (naive_rank(m) == rank) return m;
    }
}

std::string corpus_path(const std::string& name) { return std::string(FLEXCERT_CORPUS_DIR) + "/" + name; }

Json load_json(const std::string& name) { return read_json_file(corpus_path(name)); }

Framework load_framework(const std::string& name) { return parse_framework(load_json(name)); }

std::vector<Poly> bar_residuals(const Framework& fw, const EdgeSystem& edges, const Series& s) {
    const std::size_t deg = 2 * s.degree();
    std::vector<std::vector<Poly>> coords(fw.joints.size(), std::vector<Poly>(fw.dimension, Poly(deg + 1)));
    for (std::size_t j = 0; j < fw.joints.size(); ++j)
        for (std::size_t c = 0; c < fw.dimension; ++c) coords[j][c][0] = fw.joints[j].coords[c];
    for (std::size_t v = 0; v < edges.variables.size(); ++v) {
        Poly& target = coords[edges.variables[v].joint][edges.variables[v].axis];
        for (std::size_t p = 0; p <= s.degree(); ++p) target[p] = s[p][v];
    }
    std::vector<Poly> out;
    for (const auto& [a, b] : fw.bars) {
        Poly total(deg + 1);
        for (std::size_t c = 0; c < fw.dimension; ++c) {
            Poly d(deg + 1);
            for (std::size_t p = 0; p <= deg; ++p) d[p] = coords[a][c][p] - coords[b][c][p];
            Poly sq = poly_mul(d, d, deg);
            Scalar l = fw.joints[a].coords[c] - fw.joints[b].coords[c];
            sq[0] -= l * l;
            for (std::size_t p = 0; p <= deg; ++p) total[p] += sq[p];
        }
        out.push_back(total);
    }
    return out;
}

}  // namespace oracle
