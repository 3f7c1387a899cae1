#include "flexcert/certificate.hpp"

#include "second_order.hpp"

namespace flexcert {

Vector cross_term_rhs(const QuadraticSystem& sys, const Series& s, std::size_t k, std::size_t order) {
    Vector sum(sys.equation_count());
    for (std::size_t l = 1; l < order; ++l) {
        std::size_t r = order - l;
        if (l >= k || r >= k || l > s.degree() || r > s.degree()) continue;
        if (s[l].is_zero() || s[r].is_zero()) continue;
        sum += bilinear(sys, s[l], s[r]);
    }
    return -sum;
}

std::string certificate_kind(const Certificate& c) {
    struct {
        std::string operator()(const FirstOrderRigid&) const { return "FirstOrderRigid"; }
        std::string operator()(const SecondOrderObstruction&) const { return "SecondOrderObstruction"; }
        std::string operator()(const SpanClosureFlex&) const { return "SpanClosureFlex"; }
        std::string operator()(const TStandardFail&) const { return "TStandardFail"; }
        std::string operator()(const TStandardSurvived&) const { return "TStandardSurvived"; }
    } visitor;
    return std::visit(visitor, c);
}

std::string reason_name(SecondOrderObstruction::Reason r) {
    using R = SecondOrderObstruction::Reason;
    switch (r) {
        case R::TrivialKernel: return "TrivialKernel";
        case R::NonzeroForm: return "NonzeroForm";
        case R::DefiniteForm: return "DefiniteForm";
        case R::NoCommonZero: return "NoCommonZero";
    }
    return "";
}

bool proves_rigidity(const Certificate& c) {
    return std::holds_alternative<FirstOrderRigid>(c) || std::holds_alternative<SecondOrderObstruction>(c) ||
           std::holds_alternative<TStandardFail>(c);
}

bool proves_flexibility(const Certificate& c) { return std::holds_alternative<SpanClosureFlex>(c); }

namespace {

VerificationResult pass() { return {true, "ok"}; }
VerificationResult fail(std::string why) { return {false, std::move(why)}; }

// Confirms that basis is a basis of ker m.
VerificationResult check_kernel_basis(const Matrix& m, const std::vector<Vector>& basis, const std::string& what) {
    for (const auto& v : basis) {
        if (v.size() != m.cols()) return fail(what + " vector has the wrong length");
        if (!(m * v).is_zero()) return fail(what + " vector is not annihilated");
    }
    if (!linearly_independent(basis, m.cols())) return fail(what + " vectors are dependent");
    if (basis.size() != m.cols() - rank(m)) return fail(what + " basis has the wrong size");
    return pass();
}

struct Verifier {
    const QuadraticSystem& sys;
    const Vector& x0;
    const Matrix& c;

    VerificationResult operator()(const FirstOrderRigid& cert) const {
        std::size_t r = rank(c);
        if (r != sys.variable_count()) return fail("C has a nontrivial kernel");
        if (cert.rank != r) return fail("recorded rank differs");
        return pass();
    }

    VerificationResult operator()(const SecondOrderObstruction& cert) const {
        if (auto r = check_kernel_basis(c, cert.kernel, "kernel"); !r) return r;
        if (auto r = check_kernel_basis(c.transpose(), cert.cokernel, "cokernel"); !r) return r;
        auto forms = detail::projected_forms(sys, cert.kernel, cert.cokernel);
        if (forms != cert.forms) return fail("recorded projected forms differ");
        auto decision = detail::decide_forms(cert.kernel.size(), forms);
        if (decision.outcome != detail::FormDecision::Outcome::Obstructed) return fail("forms admit a common zero");
        if (decision.reason != cert.reason) return fail("recorded reason differs");
        return pass();
    }

    VerificationResult operator()(const SpanClosureFlex& cert) const {
        const Series& s = cert.series;
        if (s.dimension() != sys.variable_count()) return fail("series has the wrong length");
        if (s.degree() != cert.q) return fail("series degree differs from q");
        if (cert.k > cert.q) return fail("k exceeds q");
        if (s[0] != x0) return fail("series does not start at the base point");
        if (residual_order(sys, s) <= cert.q) return fail("series is not an approximate solution of degree q");
        if (s.is_constant()) return fail("series is constant");
        std::size_t expected = cert.q * (cert.q - cert.k + 1);
        if (cert.pairs.size() != expected) return fail("pair list is incomplete");
        std::size_t idx = 0;
        for (std::size_t i = 1; i <= cert.q; ++i)
            for (std::size_t j = cert.k; j <= cert.q; ++j, ++idx) {
                const SpanPair& pair = cert.pairs[idx];
                if (pair.i != i || pair.j != j) return fail("pair list is out of order");
                if (pair.coefficients.size() != cert.q - cert.k + 1) return fail("pair coefficients have the wrong count");
                Vector y(sys.variable_count());
                for (std::size_t r = 0; r < pair.coefficients.size(); ++r)
                    y.add_scaled(pair.coefficients[r], s[cert.k + r]);
                if (y != pair.value) return fail("pair value is not the stated span combination");
                Vector rhs = bilinear(sys, s[i], s[j]);
                rhs *= Scalar(-2);
                if (c * y != rhs)
                    return fail("pair (" + std::to_string(i) + "," + std::to_string(j) + ") does not solve CY = -2B");
            }
        std::vector<std::size_t> orders;
        for (std::size_t n = cert.q + 1; n + 2 <= 2 * cert.k; ++n) orders.push_back(n);
        if (cert.cross_terms.size() != orders.size()) return fail("cross-term list is incomplete");
        for (std::size_t t = 0; t < orders.size(); ++t) {
            const SpanCrossTerm& term = cert.cross_terms[t];
            if (term.order != orders[t]) return fail("cross-term list is out of order");
            if (term.coefficients.size() != cert.q - cert.k + 1) return fail("cross-term coefficients have the wrong count");
            Vector y(sys.variable_count());
            for (std::size_t r = 0; r < term.coefficients.size(); ++r) y.add_scaled(term.coefficients[r], s[cert.k + r]);
            if (y != term.value) return fail("cross-term value is not the stated span combination");
            if (c * y != cross_term_rhs(sys, s, cert.k, term.order))
                return fail("cross term of order " + std::to_string(term.order) + " is not solved");
        }
        return pass();
    }

    // T is a complement of a one-dimensional ker C and Y₁ spans that kernel.
    VerificationResult check_t_setup(const std::vector<Vector>& t_basis, const Series& s) const {
        const std::size_t m = sys.variable_count();
        if (m - rank(c) != 1) return fail("dim ker C is not 1");
        if (s.dimension() != m || s.degree() < 1) return fail("series is too short");
        if (s[0] != x0) return fail("series does not start at the base point");
        if (s[1].is_zero() || !(c * s[1]).is_zero()) return fail("Y1 does not span ker C");
        std::vector<Vector> joint = t_basis;
        joint.push_back(s[1]);
        if (t_basis.size() != m - 1 || !linearly_independent(joint, m)) return fail("T is not a complement of ker C");
        Matrix t = Matrix::from_columns(t_basis, m);
        for (std::size_t p = 2; p <= s.degree(); ++p) {
            std::vector<Vector> cols = t_basis;
            cols.push_back(s[p]);
            if (rank(Matrix::from_columns(cols, m)) != t_basis.size()) return fail("a coefficient leaves T");
            Vector rhs(sys.equation_count());
            for (std::size_t l = 1; l < p; ++l) rhs -= bilinear(sys, s[l], s[p - l]);
            if (c * s[p] != rhs) return fail("coefficient " + std::to_string(p) + " violates the recurrence");
        }
        return pass();
    }

    VerificationResult operator()(const TStandardFail& cert) const {
        if (auto r = check_t_setup(cert.t_basis, cert.prefix); !r) return r;
        if (cert.prefix.degree() + 1 != cert.p) return fail("prefix length does not match p");
        Vector rhs(sys.equation_count());
        for (std::size_t l = 1; l < cert.p; ++l) rhs -= bilinear(sys, cert.prefix[l], cert.prefix[cert.p - l]);
        if (rhs != cert.rhs) return fail("recorded right-hand side differs");
        // R^m = T ⊕ ker C, so solvability in T is the same as membership in im C.
        if (image_contains(c, rhs)) return fail("right-hand side is in im C");
        return pass();
    }

    VerificationResult operator()(const TStandardSurvived& cert) const {
        if (auto r = check_t_setup(cert.t_basis, cert.series); !r) return r;
        if (cert.series.degree() != cert.depth) return fail("series degree differs from depth");
        return pass();
    }
};

}  // namespace

VerificationResult verify_certificate(const QuadraticSystem& sys, const Vector& base_point, const Certificate& c) {
    if (base_point.size() != sys.variable_count()) return fail("base point has the wrong length");
    if (!evaluate(sys, base_point).is_zero()) return fail("base point is not a solution");
    Matrix cm(sys.equation_count(), sys.variable_count());
    for (std::size_t j = 0; j < sys.variable_count(); ++j) {
        Vector e = Vector::unit(sys.variable_count(), j);
        Vector column = bilinear(sys, base_point, e);
        column *= Scalar(2);
        column += linear_part(sys, e);
        for (std::size_t k = 0; k < sys.equation_count(); ++k) cm(k, j) = column[k];
    }
    return std::visit(Verifier{sys, base_point, cm}, c);
}

}  // namespace flexcert
