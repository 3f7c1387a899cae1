#pragma once

#include "flexcert/certificate.hpp"

#include <optional>
#include <string>
#include <vector>

namespace flexcert::detail {

// G_l[a][b] = w_l · B(k_a, k_b).
std::vector<Matrix> projected_forms(const QuadraticSystem& sys, const std::vector<Vector>& kernel,
                                    const std::vector<Vector>& cokernel);

struct FormDecision {
    enum class Outcome { Obstructed, Unobstructed, Undecided };
    Outcome outcome = Outcome::Undecided;
    SecondOrderObstruction::Reason reason = SecondOrderObstruction::Reason::TrivialKernel;
    std::size_t form_index = 0;
    // Kernel coordinates of a common real zero, when one is rational.
    std::optional<std::vector<Scalar>> zero;
    std::string detail;
};

// Does some nonzero real s ∈ R^d satisfy sᵀG_l s = 0 for every l?
FormDecision decide_forms(std::size_t d, const std::vector<Matrix>& forms);

}  // namespace flexcert::detail
