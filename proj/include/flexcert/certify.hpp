#pragma once

#include "flexcert/certificate.hpp"

#include <optional>
#include <string>
#include <vector>

namespace flexcert {

std::optional<Certificate> first_order_check(const BaseOperators& ops);

struct SecondOrderAnalysis {
    enum class Outcome { Obstructed, Unobstructed, Undecided };
    Outcome outcome = Outcome::Undecided;
    std::optional<SecondOrderObstruction> obstruction;
    // A rational X₁ ≠ 0 in ker C with B(X₁,X₁) ∈ im C, when one was found.
    std::optional<Vector> candidate;
    std::string detail;
};

// Exact for dim ker C ≤ 2; for larger kernels only a definite projected form
// (Sylvester's criterion) or a passing kernel basis vector decides.
SecondOrderAnalysis second_order_analysis(const BaseOperators& ops);

std::optional<Certificate> second_order_check(const BaseOperators& ops);

// Span-closure test for the series truncated to degree q, 0 ≤ k ≤ q. Besides
// the pairs (i, j) it requires the cross terms of orders q+1 … 2k−2, which the
// pairs do not cover when 2k > q + 2. Throws PreconditionError when the
// truncation is not an approximate solution of degree q. A constant series
// never certifies.
std::optional<Certificate> span_closure_check(const BaseOperators& ops, const Series& s, std::size_t q,
                                              std::size_t k);

// Canonical extension from each kernel basis vector, optionally preceded by up
// to two zero coefficients.
std::vector<Series> search_seeds(const BaseOperators& ops, std::size_t q_max);

// First certificate in increasing (q, k) order with 2 ≤ q ≤ q_max, 1 ≤ k < q.
std::optional<Certificate> span_closure_search(const BaseOperators& ops, std::size_t q_max);

struct SpanDiagnostic {
    bool applicable = false;
    std::string reason;  // why not applicable
    struct Entry {
        std::size_t i;
        std::size_t j;
        bool solvable;
    };
    std::vector<Entry> entries;
    bool contradiction() const;
};

// For r = 2 requires X₃, X₄ ∈ span{X₁, X₂}; for r = 3 requires X₄ … X₇ ∈
// span{X₁, X₂, X₃}. Then reports which CY = −2B(X_i,X_j), i, j ≤ r, are
// solvable inside that span.
SpanDiagnostic span_closure_diagnostic(const BaseOperators& ops, const Series& s, unsigned r);

struct TStandardConfig {
    std::vector<Vector> t_basis;
    std::size_t max_depth = 24;
    Vector leading_coeff;
};

// Kernel spanned by k; T = span of the unit vectors other than the coordinate
// where |k| is largest (lowest index on ties).
TStandardConfig default_t_standard_config(const BaseOperators& ops, std::size_t max_depth);

// Returns TStandardFail or TStandardSurvived. Throws UsageError unless dim ker C = 1.
Certificate t_standard_run(const BaseOperators& ops, const TStandardConfig& cfg);

struct AnalysisConfig {
    std::size_t q_max = 8;
    std::size_t max_depth = 24;
};

enum class Verdict { Flexible, Rigid, Inconclusive };
std::string verdict_name(Verdict v);

struct AnalysisReport {
    Verdict verdict = Verdict::Inconclusive;
    std::optional<Certificate> certificate;
    std::vector<Certificate> supporting;
    std::size_t depth_reached = 0;
    std::size_t kernel_dimension = 0;
    AnalysisConfig config;
    std::vector<std::string> notes;
};

// Throws BasePointError when X₀ is not a solution.
AnalysisReport analyze_system(const QuadraticSystem& sys, const Vector& base_point, const AnalysisConfig& config);
AnalysisReport analyze_operators(const BaseOperators& ops, const AnalysisConfig& config);

}  // namespace flexcert
