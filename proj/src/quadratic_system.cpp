#include "flexcert/quadratic_system.hpp"

#include "flexcert/errors.hpp"

#include <map>
#include <utility>

namespace flexcert {

Matrix QuadraticSystem::alpha(std::size_t k) const {
    Matrix a(variable_count(), variable_count());
    for (const auto& e : quadratic_.at(k)) {
        a(e.i, e.j) = e.value;
        a(e.j, e.i) = e.value;
    }
    return a;
}

bool operator==(const QuadraticSystem& a, const QuadraticSystem& b) {
    if (a.names_ != b.names_ || a.beta_ != b.beta_ || a.gamma_ != b.gamma_) return false;
    if (a.quadratic_.size() != b.quadratic_.size()) return false;
    for (std::size_t k = 0; k < a.quadratic_.size(); ++k) {
        const auto& x = a.quadratic_[k];
        const auto& y = b.quadratic_[k];
        if (x.size() != y.size()) return false;
        for (std::size_t t = 0; t < x.size(); ++t)
            if (x[t].i != y[t].i || x[t].j != y[t].j || x[t].value != y[t].value) return false;
    }
    return true;
}

QuadraticSystem validate_and_symmetrize(const RawQuadraticSystem& raw) {
    const std::size_t m = raw.variable_names.size();
    QuadraticSystem sys;
    sys.names_ = raw.variable_names;
    for (std::size_t k = 0; k < raw.equations.size(); ++k) {
        const RawEquation& eq = raw.equations[k];
        std::map<std::pair<std::size_t, std::size_t>, Scalar> sym;
        for (const auto& q : eq.alpha) {
            if (q.i >= m || q.j >= m)
                throw UsageError("equation " + std::to_string(k) + ": alpha index out of range");
            if (q.i == q.j)
                sym[{q.i, q.i}] += q.coefficient;
            else
                sym[{std::min(q.i, q.j), std::max(q.i, q.j)}] += q.coefficient / 2;
        }
        std::vector<QuadraticSystem::SymmetricEntry> terms;
        for (auto& [ij, value] : sym)
            if (sgn(value) != 0) terms.push_back({ij.first, ij.second, value});

        Vector beta(m);
        for (const auto& l : eq.beta) {
            if (l.i >= m) throw UsageError("equation " + std::to_string(k) + ": beta index out of range");
            beta[l.i] += l.coefficient;
        }
        sys.quadratic_.push_back(std::move(terms));
        sys.beta_.push_back(std::move(beta));
        sys.gamma_.push_back(eq.gamma);
    }
    return sys;
}

QuadraticSystem validate_and_symmetrize(const std::vector<std::string>& variable_names,
                                        const std::vector<Matrix>& alpha,
                                        const std::vector<Vector>& beta,
                                        const std::vector<Scalar>& gamma) {
    const std::size_t m = variable_names.size();
    if (alpha.size() != beta.size() || beta.size() != gamma.size())
        throw UsageError("alpha, beta and gamma must have one entry per equation");
    RawQuadraticSystem raw{variable_names, {}};
    for (std::size_t k = 0; k < alpha.size(); ++k) {
        if (alpha[k].rows() != m || alpha[k].cols() != m)
            throw UsageError("equation " + std::to_string(k) + ": alpha must be m×m");
        if (beta[k].size() != m) throw UsageError("equation " + std::to_string(k) + ": beta must have length m");
        RawEquation eq;
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j)
                if (sgn(alpha[k](i, j)) != 0) eq.alpha.push_back({i, j, alpha[k](i, j)});
            if (sgn(beta[k][i]) != 0) eq.beta.push_back({i, beta[k][i]});
        }
        eq.gamma = gamma[k];
        raw.equations.push_back(std::move(eq));
    }
    return validate_and_symmetrize(raw);
}

QuadraticSystem append_equations(const QuadraticSystem& sys, const std::vector<RawEquation>& extra) {
    RawQuadraticSystem raw{sys.variable_names(), {}};
    for (std::size_t k = 0; k < sys.equation_count(); ++k) {
        RawEquation eq;
        for (const auto& t : sys.quadratic_terms(k)) eq.alpha.push_back({t.i, t.j, t.i == t.j ? t.value : 2 * t.value});
        for (std::size_t i = 0; i < sys.variable_count(); ++i)
            if (sgn(sys.beta(k)[i]) != 0) eq.beta.push_back({i, sys.beta(k)[i]});
        eq.gamma = sys.gamma(k);
        raw.equations.push_back(std::move(eq));
    }
    raw.equations.insert(raw.equations.end(), extra.begin(), extra.end());
    return validate_and_symmetrize(raw);
}

std::vector<std::string> default_variable_names(std::size_t count) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= count; ++i) names.push_back("x" + std::to_string(i));
    return names;
}

namespace {

void check_length(const QuadraticSystem& sys, const Vector& x) {
    if (x.size() != sys.variable_count())
        throw UsageError("expected a vector of length " + std::to_string(sys.variable_count()) + ", got " +
                         std::to_string(x.size()));
}

}  // namespace

Vector bilinear(const QuadraticSystem& sys, const Vector& x, const Vector& y) {
    check_length(sys, x);
    check_length(sys, y);
    Vector out(sys.equation_count());
    for (std::size_t k = 0; k < sys.equation_count(); ++k) {
        Scalar sum = 0;
        for (const auto& e : sys.quadratic_terms(k)) {
            if (e.i == e.j) {
                if (sgn(x[e.i]) != 0 && sgn(y[e.i]) != 0) sum += e.value * x[e.i] * y[e.i];
            } else {
                Scalar cross = x[e.i] * y[e.j] + x[e.j] * y[e.i];
                if (sgn(cross) != 0) sum += e.value * cross;
            }
        }
        out[k] = sum;
    }
    return out;
}

Vector linear_part(const QuadraticSystem& sys, const Vector& x) {
    check_length(sys, x);
    Vector out(sys.equation_count());
    for (std::size_t k = 0; k < sys.equation_count(); ++k) out[k] = dot(sys.beta(k), x);
    return out;
}

Vector evaluate(const QuadraticSystem& sys, const Vector& x) {
    Vector out = bilinear(sys, x, x);
    out += linear_part(sys, x);
    for (std::size_t k = 0; k < sys.equation_count(); ++k) out[k] += sys.gamma(k);
    return out;
}

BasePointError::BasePointError(Vector residual)
    : std::runtime_error("base point is not a solution; residual " + to_string(residual)),
      residual_(std::move(residual)) {}

BaseOperators linearize(const QuadraticSystem& sys, const Vector& base_point) {
    check_length(sys, base_point);
    Vector residual = evaluate(sys, base_point);
    if (!residual.is_zero()) throw BasePointError(residual);

    const std::size_t m = sys.variable_count();
    const std::size_t n = sys.equation_count();
    BaseOperators ops;
    ops.system_ = std::make_shared<const QuadraticSystem>(sys);
    ops.base_point_ = base_point;
    ops.c_ = Matrix(n, m);
    for (std::size_t j = 0; j < m; ++j) {
        Vector e = Vector::unit(m, j);
        Vector column = bilinear(sys, base_point, e);
        column *= Scalar(2);
        column += linear_part(sys, e);
        for (std::size_t k = 0; k < n; ++k) ops.c_(k, j) = column[k];
    }
    ops.kernel_ = kernel_basis(ops.c_);
    ops.cokernel_ = cokernel_basis(ops.c_);
    return ops;
}

}  // namespace flexcert
