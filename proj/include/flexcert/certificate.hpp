#pragma once

#include "flexcert/series.hpp"

#include <string>
#include <variant>
#include <vector>

namespace flexcert {

// ker C = {0}.
struct FirstOrderRigid {
    std::size_t rank = 0;
};

// No nonzero X₁ ∈ ker C has B(X₁,X₁) ∈ im C. The forms are
// G_l[a][b] = w_l · B(k_a, k_b) for kernel basis k and cokernel basis w.
struct SecondOrderObstruction {
    enum class Reason {
        TrivialKernel,   // ker C = {0}
        NonzeroForm,     // dim ker C = 1 and B(k,k) ∉ im C
        DefiniteForm,    // some G_l is definite
        NoCommonZero,    // dim ker C = 2 and the binary forms share no real zero line
    };
    Reason reason = Reason::TrivialKernel;
    std::vector<Vector> kernel;
    std::vector<Vector> cokernel;
    std::vector<Matrix> forms;
    std::size_t form_index = 0;  // the definite or nonzero form, when relevant
};

// Pair (i, j) of the span-closure condition and its solution in the span.
struct SpanPair {
    std::size_t i = 0;
    std::size_t j = 0;
    std::vector<Scalar> coefficients;  // over Y_k … Y_q
    Vector value;
};

// Order N ∈ [q+1, 2k−2] of the extension: −Σ B(Y_l, Y_{N−l}) over l, N−l < k
// (these products are fixed by the series) solved in the span.
struct SpanCrossTerm {
    std::size_t order = 0;
    std::vector<Scalar> coefficients;
    Vector value;
};

// Approximate solution of degree q whose B-products close in L = span{Y_k … Y_q}:
// for i ∈ [1, q], j ∈ [k, q], CY = −2B(Y_i, Y_j) has a solution in L, and so
// does every cross term. Together these make each later coefficient solvable
// in L.
struct SpanClosureFlex {
    std::size_t q = 0;
    std::size_t k = 0;
    Series series;
    std::vector<SpanPair> pairs;
    std::vector<SpanCrossTerm> cross_terms;
};

// T-standard recursion with dim ker C = 1 broke down at order p.
struct TStandardFail {
    std::size_t p = 0;
    Vector rhs;
    std::vector<Vector> t_basis;
    Series prefix;  // Y₀ … Y_{p−1}
};

// T-standard recursion solved every order through depth (not a verdict).
struct TStandardSurvived {
    std::size_t depth = 0;
    std::vector<Vector> t_basis;
    Series series;
};

using Certificate =
    std::variant<FirstOrderRigid, SecondOrderObstruction, SpanClosureFlex, TStandardFail, TStandardSurvived>;

// −Σ B(Y_l, Y_{order−l}) over 1 ≤ l, order − l < k.
Vector cross_term_rhs(const QuadraticSystem& sys, const Series& s, std::size_t k, std::size_t order);

std::string certificate_kind(const Certificate& c);
std::string reason_name(SecondOrderObstruction::Reason r);

bool proves_rigidity(const Certificate& c);
bool proves_flexibility(const Certificate& c);

struct VerificationResult {
    bool ok = false;
    std::string message;
    explicit operator bool() const { return ok; }
};

// Re-derives every claim of the certificate from the system and base point alone.
VerificationResult verify_certificate(const QuadraticSystem& sys, const Vector& base_point, const Certificate& c);

}  // namespace flexcert
