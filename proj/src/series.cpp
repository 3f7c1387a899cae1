#include "flexcert/series.hpp"

#include "flexcert/errors.hpp"

namespace flexcert {

Series::Series(std::vector<Vector> coefficients) : coeffs_(std::move(coefficients)) {
    if (coeffs_.empty()) throw UsageError("a series needs at least the constant coefficient");
    for (const auto& c : coeffs_)
        if (c.size() != coeffs_.front().size()) throw UsageError("series coefficients differ in length");
}

Vector Series::coefficient_or_zero(std::size_t p) const {
    return p < coeffs_.size() ? coeffs_[p] : Vector(dimension());
}

void Series::append(Vector next) {
    if (next.size() != dimension()) throw UsageError("series coefficient length mismatch");
    coeffs_.push_back(std::move(next));
}

Series Series::truncated(std::size_t degree) const {
    if (degree > this->degree()) throw UsageError("cannot truncate a series to a higher degree");
    return Series(std::vector<Vector>(coeffs_.begin(), coeffs_.begin() + static_cast<long>(degree) + 1));
}

bool Series::is_constant() const {
    for (std::size_t p = 1; p < coeffs_.size(); ++p)
        if (!coeffs_[p].is_zero()) return false;
    return true;
}

Vector recurrence_rhs(const BaseOperators& ops, const Series& s, std::size_t p) {
    if (p == 0) throw UsageError("recurrence_rhs: order must be at least 1");
    if (p > s.degree() + 1) throw UsageError("recurrence_rhs: coefficients below the requested order are missing");
    if (s.dimension() != ops.system().variable_count()) throw UsageError("recurrence_rhs: series has the wrong length");
    Vector sum(ops.system().equation_count());
    // B is symmetric, so pair l with p − l once.
    for (std::size_t l = 1; 2 * l <= p; ++l) {
        if (s[l].is_zero() || s[p - l].is_zero()) continue;
        Vector b = ops.B(s[l], s[p - l]);
        sum.add_scaled(Scalar(2 * l == p ? 1 : 2), b);
    }
    return -sum;
}

void validate_constraint(const BaseOperators& ops, const SubspaceConstraint& constraint) {
    const std::size_t m = ops.system().variable_count();
    if (const auto* span = std::get_if<SpanOf>(&constraint)) {
        if (!linearly_independent(span->basis, m)) throw UsageError("span constraint basis is not independent");
    } else if (const auto* t = std::get_if<Complement>(&constraint)) {
        if (!linearly_independent(t->basis, m)) throw UsageError("complement basis is not independent");
        if (t->basis.size() + ops.kernel_dimension() != m)
            throw UsageError("complement has the wrong dimension for ker C");
        std::vector<Vector> joint = t->basis;
        joint.insert(joint.end(), ops.kernel().begin(), ops.kernel().end());
        if (!linearly_independent(joint, m)) throw UsageError("complement meets ker C");
    }
}

std::optional<Extension> extend_step(const BaseOperators& ops, const Series& s,
                                     const SubspaceConstraint& constraint) {
    validate_constraint(ops, constraint);
    Vector rhs = recurrence_rhs(ops, s, s.degree() + 1);
    if (std::holds_alternative<Unconstrained>(constraint)) {
        auto sol = solve_general(ops.C(), rhs);
        if (!sol) return std::nullopt;
        return Extension{std::move(sol->particular), std::move(sol->nullspace)};
    }
    const auto& basis = std::holds_alternative<SpanOf>(constraint) ? std::get<SpanOf>(constraint).basis
                                                                   : std::get<Complement>(constraint).basis;
    auto sol = solve_in_span(ops.C(), rhs, basis);
    if (!sol) return std::nullopt;
    return Extension{std::move(sol->value), std::move(sol->freedom)};
}

std::vector<Vector> residual_coefficients(const QuadraticSystem& sys, const Series& s) {
    if (s.dimension() != sys.variable_count()) throw UsageError("residual: series has the wrong length");
    const std::size_t q = s.degree();
    std::vector<Vector> out;
    for (std::size_t p = 0; p <= 2 * q; ++p) {
        Vector c(sys.equation_count());
        for (std::size_t l = p > q ? p - q : 0; l <= q && 2 * l <= p; ++l) {
            if (s[l].is_zero() || s[p - l].is_zero()) continue;
            c.add_scaled(Scalar(2 * l == p ? 1 : 2), bilinear(sys, s[l], s[p - l]));
        }
        if (p <= q) c += linear_part(sys, s[p]);
        if (p == 0)
            for (std::size_t k = 0; k < sys.equation_count(); ++k) c[k] += sys.gamma(k);
        out.push_back(std::move(c));
    }
    return out;
}

std::size_t residual_order(const QuadraticSystem& sys, const Series& s) {
    auto coeffs = residual_coefficients(sys, s);
    if (!coeffs[0].is_zero()) return 0;
    for (std::size_t p = 1; p < coeffs.size(); ++p)
        if (!coeffs[p].is_zero()) return p;
    return kInfiniteOrder;
}

Series reparameterize(const Series& s, const Scalar& a, unsigned exponent, std::size_t out_degree) {
    if (exponent < 2) throw UsageError("reparameterize: exponent must be at least 2");
    const std::size_t m = s.dimension();
    // t(τ)^p truncated at out_degree, for p = 0 … degree.
    std::vector<Scalar> t(out_degree + 1);
    if (out_degree >= 1) t[1] = 1;
    if (exponent <= out_degree) t[exponent] += a;
    std::vector<Scalar> power(out_degree + 1);
    power[0] = 1;

    std::vector<Vector> out(out_degree + 1, Vector(m));
    for (std::size_t p = 0; p <= s.degree(); ++p) {
        if (p > 0) {
            std::vector<Scalar> next(out_degree + 1);
            for (std::size_t i = 0; i <= out_degree; ++i) {
                if (sgn(power[i]) == 0) continue;
                for (std::size_t j = 1; i + j <= out_degree; ++j)
                    if (sgn(t[j]) != 0) next[i + j] += power[i] * t[j];
            }
            power = std::move(next);
        }
        for (std::size_t j = 0; j <= out_degree; ++j)
            if (sgn(power[j]) != 0) out[j].add_scaled(power[j], s[p]);
    }
    return Series(std::move(out));
}

}  // namespace flexcert
