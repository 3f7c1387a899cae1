#pragma once

#include "flexcert/quadratic_system.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace flexcert {

using Exponents = std::vector<unsigned>;

// Sparse polynomial; exponent vectors all have the system's variable count.
using Polynomial = std::map<Exponents, Scalar>;

struct GeneralPolySystem {
    std::vector<std::string> variable_names;
    std::vector<Polynomial> equations;
};

unsigned total_degree(const Exponents& e);
unsigned total_degree(const Polynomial& p);

// Drops zero coefficients and checks exponent lengths; throws UsageError.
void validate(const GeneralPolySystem& sys);

Scalar evaluate(const Polynomial& p, const Vector& x);
Vector evaluate(const GeneralPolySystem& sys, const Vector& x);

struct AuxiliaryDefinition {
    std::size_t variable;  // index of the new variable
    Exponents monomial;    // over variables 0..variable-1, padded to the final count
};

struct ReductionMap {
    std::size_t original_variable_count = 0;
    std::vector<AuxiliaryDefinition> definitions;
};

struct Reduction {
    QuadraticSystem system;
    ReductionMap map;
};

// Repeatedly splits a highest-degree monomial of degree d > 2 by a new
// variable standing for its degree ⌈d/2⌉ sub-monomial (taken greedily from the
// lowest-index variables), reusing an existing auxiliary when one matches.
// Each auxiliary u ≔ s adds the equation s − u = 0.
Reduction reduce_degree(const GeneralPolySystem& sys);

// Appends the auxiliary values to a point of the original system.
Vector lift_base_point(const ReductionMap& map, const Vector& x0);

// Drops auxiliary coordinates.
Vector project_point(const ReductionMap& map, const Vector& x);

// Exact conversion of a system whose equations have degree ≤ 2.
QuadraticSystem to_quadratic(const GeneralPolySystem& sys);

GeneralPolySystem to_general(const QuadraticSystem& sys);

}  // namespace flexcert
