#pragma once

#include "flexcert/quadratic_system.hpp"

#include <limits>
#include <optional>
#include <variant>
#include <vector>

namespace flexcert {

// Coefficients Y₀ … Y_q of Y(t) = Σ Y_p t^p.
class Series {
public:
    Series() = default;
    explicit Series(std::vector<Vector> coefficients);

    std::size_t degree() const { return coeffs_.size() - 1; }
    std::size_t dimension() const { return coeffs_.front().size(); }
    const Vector& operator[](std::size_t p) const { return coeffs_.at(p); }
    const std::vector<Vector>& coefficients() const { return coeffs_; }

    // Y_p for p ≤ degree, zero beyond.
    Vector coefficient_or_zero(std::size_t p) const;

    void append(Vector next);
    Series truncated(std::size_t degree) const;
    // True when Y₁ = … = Y_q = 0.
    bool is_constant() const;

    friend bool operator==(const Series& a, const Series& b) { return a.coeffs_ == b.coeffs_; }

private:
    std::vector<Vector> coeffs_;
};

struct Unconstrained {};
struct SpanOf {
    std::vector<Vector> basis;
};
// A subspace T with T ∩ ker C = {0} and T + ker C = the whole space.
struct Complement {
    std::vector<Vector> basis;
};
using SubspaceConstraint = std::variant<Unconstrained, SpanOf, Complement>;

// −Σ_{l=1}^{p−1} B(Y_l, Y_{p−l}); needs Y₁ … Y_{p−1}.
Vector recurrence_rhs(const BaseOperators& ops, const Series& s, std::size_t p);

struct Extension {
    Vector value;                 // canonical Y_{q+1}
    std::vector<Vector> freedom;  // other solutions differ by their span
};

// Solves C·Y_{q+1} = recurrence_rhs(q+1) inside the constraint.
std::optional<Extension> extend_step(const BaseOperators& ops, const Series& s,
                                     const SubspaceConstraint& constraint);

// Checks a constraint basis against the operators; throws UsageError.
void validate_constraint(const BaseOperators& ops, const SubspaceConstraint& constraint);

inline constexpr std::size_t kInfiniteOrder = std::numeric_limits<std::size_t>::max();

// Coefficients of F(Y(t)) at orders 0 … 2q (exact; nothing exists beyond).
std::vector<Vector> residual_coefficients(const QuadraticSystem& sys, const Series& s);

// Smallest p ≥ 1 with a nonzero t^p coefficient of F(Y(t)), or kInfiniteOrder.
// Returns 0 when Y₀ itself is not a solution.
std::size_t residual_order(const QuadraticSystem& sys, const Series& s);

// Coefficients of Y(τ + aτ^e) through τ^out_degree.
Series reparameterize(const Series& s, const Scalar& a, unsigned exponent, std::size_t out_degree);

}  // namespace flexcert
