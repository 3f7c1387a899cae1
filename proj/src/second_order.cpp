#include "second_order.hpp"

#include "flexcert/certify.hpp"

namespace flexcert::detail {

std::vector<Matrix> projected_forms(const QuadraticSystem& sys, const std::vector<Vector>& kernel,
                                    const std::vector<Vector>& cokernel) {
    const std::size_t d = kernel.size();
    std::vector<Matrix> forms(cokernel.size(), Matrix(d, d));
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = a; b < d; ++b) {
            Vector value = bilinear(sys, kernel[a], kernel[b]);
            for (std::size_t l = 0; l < cokernel.size(); ++l) {
                Scalar g = dot(cokernel[l], value);
                forms[l](a, b) = g;
                forms[l](b, a) = g;
            }
        }
    return forms;
}

namespace {

using Outcome = FormDecision::Outcome;
using Reason = SecondOrderObstruction::Reason;

bool definite(const Matrix& g) {
    const std::size_t d = g.rows();
    bool positive = true;
    bool negative = true;
    for (std::size_t k = 1; k <= d && (positive || negative); ++k) {
        Matrix minor(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) minor(i, j) = g(i, j);
        int s = sgn(determinant(minor));
        if (s <= 0) positive = false;
        if (s == 0 || (k % 2 == 1 ? s > 0 : s < 0)) negative = false;
    }
    return positive || negative;
}

Scalar form_value(const Matrix& g, const std::vector<Scalar>& s) {
    Scalar sum = 0;
    for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t b = 0; b < s.size(); ++b) sum += g(a, b) * s[a] * s[b];
    return sum;
}

bool common_zero(const std::vector<Matrix>& forms, const std::vector<Scalar>& s) {
    for (const auto& g : forms)
        if (sgn(form_value(g, s)) != 0) return false;
    return true;
}

std::optional<Scalar> rational_sqrt(const Scalar& x) {
    if (sgn(x) < 0) return std::nullopt;
    if (!mpz_perfect_square_p(x.get_num_mpz_t()) || !mpz_perfect_square_p(x.get_den_mpz_t())) return std::nullopt;
    mpz_class n = sqrt(x.get_num());
    mpz_class d = sqrt(x.get_den());
    Scalar r(n, d);
    r.canonicalize();
    return r;
}

bool proportional(const Matrix& g, const Matrix& q) {
    std::vector<Scalar> a{g(0, 0), g(0, 1), g(1, 1)};
    std::vector<Scalar> b{q(0, 0), q(0, 1), q(1, 1)};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
            if (a[i] * b[j] != a[j] * b[i]) return false;
    return true;
}

}  // namespace

FormDecision decide_forms(std::size_t d, const std::vector<Matrix>& forms) {
    FormDecision out;
    if (d == 0) {
        out.outcome = Outcome::Obstructed;
        out.reason = Reason::TrivialKernel;
        out.detail = "ker C is trivial";
        return out;
    }
    std::vector<Scalar> first(d);
    first[0] = 1;

    std::optional<std::size_t> nonzero;
    for (std::size_t l = 0; l < forms.size() && !nonzero; ++l)
        if (!forms[l].is_zero()) nonzero = l;
    if (!nonzero) {
        out.outcome = Outcome::Unobstructed;
        out.zero = first;
        out.detail = forms.empty() ? "C is surjective" : "all projected forms vanish";
        return out;
    }
    if (d == 1) {
        out.outcome = Outcome::Obstructed;
        out.reason = Reason::NonzeroForm;
        out.form_index = *nonzero;
        out.detail = "B(X1,X1) is not in the image of C";
        return out;
    }
    for (std::size_t l = 0; l < forms.size(); ++l)
        if (definite(forms[l])) {
            out.outcome = Outcome::Obstructed;
            out.reason = Reason::DefiniteForm;
            out.form_index = l;
            out.detail = "projected form " + std::to_string(l + 1) + " is definite on ker C";
            return out;
        }
    for (std::size_t a = 0; a < d; ++a) {
        std::vector<Scalar> e(d);
        e[a] = 1;
        if (common_zero(forms, e)) {
            out.outcome = Outcome::Unobstructed;
            out.zero = e;
            out.detail = "kernel basis vector " + std::to_string(a + 1) + " passes";
            return out;
        }
    }
    if (d > 2) {
        out.outcome = Outcome::Undecided;
        out.detail = "no definite projected form; kernel dimension " + std::to_string(d) + " is not decided exactly";
        return out;
    }

    const Matrix& q = forms[*nonzero];
    const Scalar a = q(0, 0), b = q(0, 1), e = q(1, 1);
    const Scalar disc = b * b - a * e;  // ≥ 0 here, definite forms were handled
    auto root = rational_sqrt(disc);
    if (!root) {
        // Irrational zero lines of q: another form vanishes there only if it is a multiple of q.
        for (const auto& g : forms)
            if (!proportional(g, q)) {
                out.outcome = Outcome::Obstructed;
                out.reason = Reason::NoCommonZero;
                out.form_index = *nonzero;
                out.detail = "projected forms share no real zero line";
                return out;
            }
        out.outcome = Outcome::Unobstructed;
        out.detail = "projected forms are proportional with irrational common zero lines";
        return out;
    }
    std::vector<std::vector<Scalar>> lines;
    if (sgn(a) != 0) {
        lines.push_back({-b + *root, a});
        lines.push_back({-b - *root, a});
    } else {
        lines.push_back({Scalar(1), Scalar(0)});
        if (sgn(b) != 0) lines.push_back({-e, 2 * b});
    }
    for (const auto& s : lines)
        if (common_zero(forms, s)) {
            out.outcome = Outcome::Unobstructed;
            out.zero = s;
            out.detail = "projected forms share a rational zero line";
            return out;
        }
    out.outcome = Outcome::Obstructed;
    out.reason = Reason::NoCommonZero;
    out.form_index = *nonzero;
    out.detail = "projected forms share no real zero line";
    return out;
}

}  // namespace flexcert::detail
