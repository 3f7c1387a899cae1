#pragma once

#include "flexcert/linalg.hpp"

#include <memory>
#include <string>
#include <vector>

namespace flexcert {

// Coefficients as supplied by a caller: alpha entries (i, j, c) contribute
// c·x_i·x_j and may be asymmetric or repeated.
struct RawEquation {
    struct Quadratic {
        std::size_t i;
        std::size_t j;
        Scalar coefficient;
    };
    struct Linear {
        std::size_t i;
        Scalar coefficient;
    };
    std::vector<Quadratic> alpha;
    std::vector<Linear> beta;
    Scalar gamma = 0;
};

struct RawQuadraticSystem {
    std::vector<std::string> variable_names;
    std::vector<RawEquation> equations;
};

// n equations of degree ≤ 2 in m variables,
//   F_k(X) = Σ α^k_ij x_i x_j + Σ β^k_i x_i + γ^k   with α^k symmetric.
class QuadraticSystem {
public:
    // One stored entry per unordered pair i ≤ j, holding α_ij (= α_ji).
    struct SymmetricEntry {
        std::size_t i;
        std::size_t j;
        Scalar value;
    };

    std::size_t variable_count() const { return names_.size(); }
    std::size_t equation_count() const { return quadratic_.size(); }
    const std::vector<std::string>& variable_names() const { return names_; }

    const std::vector<SymmetricEntry>& quadratic_terms(std::size_t k) const { return quadratic_.at(k); }
    const Vector& beta(std::size_t k) const { return beta_.at(k); }
    const Scalar& gamma(std::size_t k) const { return gamma_.at(k); }
    Matrix alpha(std::size_t k) const;

    friend bool operator==(const QuadraticSystem& a, const QuadraticSystem& b);

private:
    friend QuadraticSystem validate_and_symmetrize(const RawQuadraticSystem& raw);

    std::vector<std::string> names_;
    std::vector<std::vector<SymmetricEntry>> quadratic_;
    std::vector<Vector> beta_;
    std::vector<Scalar> gamma_;
};

// α ↦ (α + αᵀ)/2 per equation; rejects out-of-range indices.
QuadraticSystem validate_and_symmetrize(const RawQuadraticSystem& raw);

// Dense convenience form: one m×m alpha, one beta and one gamma per equation.
QuadraticSystem validate_and_symmetrize(const std::vector<std::string>& variable_names,
                                        const std::vector<Matrix>& alpha,
                                        const std::vector<Vector>& beta,
                                        const std::vector<Scalar>& gamma);

// The same system with further equations over the same variables.
QuadraticSystem append_equations(const QuadraticSystem& sys, const std::vector<RawEquation>& extra);

// Names x1..xm.
std::vector<std::string> default_variable_names(std::size_t count);

Vector evaluate(const QuadraticSystem& sys, const Vector& x);
// B(X,Y)_k = Σ α^k_ij x_i y_j
Vector bilinear(const QuadraticSystem& sys, const Vector& x, const Vector& y);
// A(X)_k = Σ β^k_i x_i
Vector linear_part(const QuadraticSystem& sys, const Vector& x);

class BasePointError : public std::runtime_error {
public:
    explicit BasePointError(Vector residual);
    const Vector& residual() const { return residual_; }

private:
    Vector residual_;
};

// B, A and C = 2B(X₀,·) + A at a base point, with kernel and cokernel cached.
class BaseOperators {
public:
    const QuadraticSystem& system() const { return *system_; }
    const Vector& base_point() const { return base_point_; }
    const Matrix& C() const { return c_; }
    const std::vector<Vector>& kernel() const { return kernel_; }
    const std::vector<Vector>& cokernel() const { return cokernel_; }
    std::size_t kernel_dimension() const { return kernel_.size(); }
    std::size_t rank() const { return c_.cols() - kernel_.size(); }

    Vector B(const Vector& x, const Vector& y) const { return bilinear(*system_, x, y); }
    Vector apply_C(const Vector& x) const { return c_ * x; }

private:
    friend BaseOperators linearize(const QuadraticSystem& sys, const Vector& base_point);

    std::shared_ptr<const QuadraticSystem> system_;
    Vector base_point_;
    Matrix c_;
    std::vector<Vector> kernel_;
    std::vector<Vector> cokernel_;
};

// Throws BasePointError when F(X₀) ≠ 0.
BaseOperators linearize(const QuadraticSystem& sys, const Vector& base_point);

}  // namespace flexcert
