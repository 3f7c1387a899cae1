#pragma once

#include "flexcert/matrix.hpp"

#include <optional>
#include <vector>

namespace flexcert {

// Reduced row echelon form plus the pivot column of each nonzero row.
struct RowEchelon {
    Matrix reduced;
    std::vector<std::size_t> pivots;

    std::size_t rank() const { return pivots.size(); }
};

// Bareiss elimination over integers, normalized to the unique RREF at the end.
RowEchelon row_reduce(const Matrix& m);

std::size_t rank(const Matrix& m);

// Square matrices only.
Scalar determinant(const Matrix& m);

// One vector per free column, in column order: zero at the other free columns,
// scaled to coprime integers with a positive entry at its own free column.
std::vector<Vector> kernel_basis(const Matrix& m);

// Basis of {w : wᵀM = 0}.
std::vector<Vector> cokernel_basis(const Matrix& m);

struct GeneralSolution {
    Vector particular;  // zero in every free column
    std::vector<Vector> nullspace;
};

std::optional<GeneralSolution> solve_general(const Matrix& m, const Vector& v);

bool image_contains(const Matrix& m, const Vector& v);

struct SpanSolution {
    std::vector<Scalar> coefficients;  // in terms of the given span vectors
    Vector value;
    std::vector<Vector> freedom;  // directions inside the span that M sends to zero
};

// Solution of M·x = v restricted to x ∈ span(span). The coefficients are the
// canonical (free coordinates zero) solution of (M·S)·c = v.
std::optional<SpanSolution> solve_in_span(const Matrix& m, const Vector& v,
                                          const std::vector<Vector>& span);

bool linearly_independent(const std::vector<Vector>& vectors, std::size_t dimension);

// Indices of a maximal independent subset, chosen greedily in order.
std::vector<std::size_t> independent_subset(const std::vector<Vector>& vectors,
                                            std::size_t dimension);

}  // namespace flexcert
