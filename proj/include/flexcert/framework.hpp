#pragma once

#include "flexcert/certify.hpp"

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace flexcert {

struct Joint {
    std::string id;
    Vector coords;
};

// Bar-joint framework in R^n. Pins are (joint index, coordinate index) pairs
// frozen at their initial values.
struct Framework {
    std::size_t dimension = 0;
    std::vector<Joint> joints;
    std::vector<std::pair<std::size_t, std::size_t>> bars;
    std::set<std::pair<std::size_t, std::size_t>> pins;
    bool auto_pin = false;

    std::optional<std::size_t> joint_index(const std::string& id) const;
    bool has_bar(std::size_t a, std::size_t b) const;
};

// Connected, nonempty bars, no self-loops or repeated bars, coordinates of
// length n, unique ids, pins in range. Throws UsageError.
void validate_framework(const Framework& fw);

class PinningError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Pins v₁ fully and the last n − k + 1 coordinates of v_k, k = 2 … n, where
// v₁ is the first joint at the origin and v_k the next joint (in declaration
// order) whose coordinates from index k − 1 on vanish and whose coordinate
// k − 2 does not.
Framework auto_pin(const Framework& fw);

struct Coordinate {
    std::size_t joint;
    std::size_t axis;
};

struct EdgeSystem {
    QuadraticSystem system;
    Vector base_point;
    std::vector<Coordinate> variables;  // unpinned coordinates, (joint, axis) order
};

// One equation |x_a − x_b|² − L²_ab = 0 per bar, pinned coordinates substituted.
EdgeSystem build_edge_system(const Framework& fw);

// Velocity fields of rigid motions compatible with the pins, restricted to
// the unpinned coordinates; a basis of their span.
std::vector<Vector> trivial_motion_basis(const Framework& fw);

struct FlexionWitness {
    std::size_t a;
    std::size_t b;
    std::size_t order;  // lowest t-power with a nonzero coefficient
    Scalar coefficient;
};

struct FlexionReport {
    std::size_t order = 0;
    Series flexion;
    bool nontrivial = false;
    std::optional<FlexionWitness> witness;
};

// Squared distance |x_a(t) − x_b(t)|² through t^(2q).
std::vector<Scalar> squared_distance_series(const Framework& fw, const Series& s, std::size_t a, std::size_t b);

// Looks for a non-bar pair whose squared distance is not constant; picks the
// pair with the lowest such order (first in (a, b) order on ties).
FlexionReport flexion_nontriviality(const Framework& fw, const Series& s);

struct FrameworkReport {
    AnalysisReport analysis;
    std::string basis;
    std::optional<FlexionReport> flexion;
    Framework pinned;
    EdgeSystem edges;
    QuadraticSystem analyzed_system;  // edges plus any gauge equations
    std::size_t gauge_equations = 0;
};

// Runs analyze_system on the edge system. Rigid motions left free by the pins
// are removed by linear gauge equations τ·(X − X₀) = 0. A flexible verdict
// additionally needs a nontriviality witness at an order ≤ q.
FrameworkReport analyze_framework(const Framework& fw, const AnalysisConfig& config);

}  // namespace flexcert
