#include "flexcert/framework.hpp"

#include "flexcert/errors.hpp"

#include <algorithm>
#include <map>

namespace flexcert {

std::optional<std::size_t> Framework::joint_index(const std::string& id) const {
    for (std::size_t i = 0; i < joints.size(); ++i)
        if (joints[i].id == id) return i;
    return std::nullopt;
}

bool Framework::has_bar(std::size_t a, std::size_t b) const {
    return std::any_of(bars.begin(), bars.end(), [&](const auto& bar) {
        return (bar.first == a && bar.second == b) || (bar.first == b && bar.second == a);
    });
}

void validate_framework(const Framework& fw) {
    if (fw.dimension == 0) throw UsageError("dimension must be positive");
    if (fw.joints.empty()) throw UsageError("framework has no joints");
    std::set<std::string> ids;
    for (const auto& j : fw.joints) {
        if (!ids.insert(j.id).second) throw UsageError("duplicate joint id \"" + j.id + "\"");
        if (j.coords.size() != fw.dimension)
            throw UsageError("joint \"" + j.id + "\" has " + std::to_string(j.coords.size()) +
                             " coordinates, expected " + std::to_string(fw.dimension));
    }
    if (fw.bars.empty()) throw UsageError("bars must not be empty");
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& [a, b] : fw.bars) {
        if (a >= fw.joints.size() || b >= fw.joints.size()) throw UsageError("bar references a missing joint");
        if (a == b) throw UsageError("self-loop bar at joint \"" + fw.joints[a].id + "\"");
        if (!seen.insert(std::minmax(a, b)).second)
            throw UsageError("repeated bar " + fw.joints[a].id + "-" + fw.joints[b].id);
    }
    for (const auto& [j, c] : fw.pins) {
        if (j >= fw.joints.size()) throw UsageError("pin references a missing joint");
        if (c >= fw.dimension) throw UsageError("pin coordinate out of range for joint \"" + fw.joints[j].id + "\"");
    }

    std::vector<std::size_t> parent(fw.joints.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& [a, b] : fw.bars) parent[find(a)] = find(b);
    for (std::size_t i = 1; i < parent.size(); ++i)
        if (find(i) != find(0)) throw UsageError("bar graph is not connected");
}

Framework auto_pin(const Framework& fw) {
    if (!fw.pins.empty()) throw PinningError("auto_pin expects a framework without pins");
    const std::size_t n = fw.dimension;
    std::vector<std::size_t> chosen;
    auto taken = [&](std::size_t i) { return std::find(chosen.begin(), chosen.end(), i) != chosen.end(); };
    for (std::size_t k = 1; k <= n; ++k) {
        // v_k: coordinates k−1 … n−1 vanish, coordinate k−2 does not (k ≥ 2).
        std::optional<std::size_t> pick;
        for (std::size_t i = 0; i < fw.joints.size() && !pick; ++i) {
            if (taken(i)) continue;
            const Vector& x = fw.joints[i].coords;
            bool ok = true;
            for (std::size_t c = k - 1; c < n && ok; ++c) ok = sgn(x[c]) == 0;
            if (ok && k >= 2) ok = sgn(x[k - 2]) != 0;
            if (ok) pick = i;
        }
        if (!pick) {
            if (k == 1) throw PinningError("no joint lies at the origin; translate the framework first");
            throw PinningError("no joint completes a simplex in normal position at step " + std::to_string(k) +
                               "; rotate the framework so that joint " + std::to_string(k) +
                               " has its last " + std::to_string(n - k + 1) + " coordinates zero");
        }
        chosen.push_back(*pick);
    }
    Framework out = fw;
    for (std::size_t k = 1; k <= n; ++k)
        for (std::size_t c = k == 1 ? 0 : k - 1; c < n; ++c) out.pins.insert({chosen[k - 1], c});
    return out;
}

namespace {

std::string axis_name(std::size_t axis, std::size_t dimension) {
    static const char* names[] = {"x", "y", "z", "w"};
    if (dimension <= 4) return names[axis];
    return std::to_string(axis + 1);
}

// Index of each unpinned coordinate among the variables, or nothing if pinned.
std::map<std::pair<std::size_t, std::size_t>, std::size_t> variable_index(const Framework& fw) {
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
    for (std::size_t j = 0; j < fw.joints.size(); ++j)
        for (std::size_t c = 0; c < fw.dimension; ++c)
            if (!fw.pins.count({j, c})) index.emplace(std::make_pair(j, c), index.size());
    return index;
}

}  // namespace

EdgeSystem build_edge_system(const Framework& fw) {
    validate_framework(fw);
    auto index = variable_index(fw);
    EdgeSystem out{QuadraticSystem{}, Vector(index.size()), std::vector<Coordinate>(index.size())};
    std::vector<std::string> names(index.size());
    for (const auto& [jc, v] : index) {
        out.variables[v] = {jc.first, jc.second};
        out.base_point[v] = fw.joints[jc.first].coords[jc.second];
        names[v] = fw.joints[jc.first].id + "." + axis_name(jc.second, fw.dimension);
    }

    RawQuadraticSystem raw{names, {}};
    for (const auto& [a, b] : fw.bars) {
        RawEquation eq;
        Scalar length2 = 0;
        for (std::size_t c = 0; c < fw.dimension; ++c) {
            const Scalar& xa = fw.joints[a].coords[c];
            const Scalar& xb = fw.joints[b].coords[c];
            length2 += (xa - xb) * (xa - xb);
            auto ia = index.find({a, c});
            auto ib = index.find({b, c});
            bool free_a = ia != index.end();
            bool free_b = ib != index.end();
            if (free_a && free_b) {
                eq.alpha.push_back({ia->second, ia->second, Scalar(1)});
                eq.alpha.push_back({ib->second, ib->second, Scalar(1)});
                eq.alpha.push_back({ia->second, ib->second, Scalar(-2)});
            } else if (free_a || free_b) {
                // (x − v)² with v the pinned value
                std::size_t var = free_a ? ia->second : ib->second;
                const Scalar& v = free_a ? xb : xa;
                eq.alpha.push_back({var, var, Scalar(1)});
                eq.beta.push_back({var, -2 * v});
                eq.gamma += v * v;
            } else {
                eq.gamma += (xa - xb) * (xa - xb);
            }
        }
        eq.gamma -= length2;
        raw.equations.push_back(std::move(eq));
    }
    out.system = validate_and_symmetrize(raw);
    Vector residual = evaluate(out.system, out.base_point);
    if (!residual.is_zero()) throw BasePointError(residual);
    return out;
}

std::vector<Vector> trivial_motion_basis(const Framework& fw) {
    const std::size_t n = fw.dimension;
    const std::size_t joints = fw.joints.size();
    // Each motion as a velocity field over all n·joints coordinates.
    std::vector<Vector> motions;
    for (std::size_t c = 0; c < n; ++c) {
        Vector v(n * joints);
        for (std::size_t j = 0; j < joints; ++j) v[j * n + c] = 1;
        motions.push_back(std::move(v));
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            Vector v(n * joints);
            for (std::size_t j = 0; j < joints; ++j) {
                v[j * n + a] = -fw.joints[j].coords[b];
                v[j * n + b] = fw.joints[j].coords[a];
            }
            motions.push_back(std::move(v));
        }

    std::vector<Vector> compatible;
    if (fw.pins.empty()) {
        compatible = motions;
    } else {
        Matrix pinned(fw.pins.size(), motions.size());
        std::size_t r = 0;
        for (const auto& [j, c] : fw.pins) {
            for (std::size_t k = 0; k < motions.size(); ++k) pinned(r, k) = motions[k][j * n + c];
            ++r;
        }
        for (const auto& coeff : kernel_basis(pinned)) {
            Vector v(n * joints);
            for (std::size_t k = 0; k < motions.size(); ++k) v.add_scaled(coeff[k], motions[k]);
            compatible.push_back(std::move(v));
        }
    }

    auto index = variable_index(fw);
    std::vector<Vector> restricted;
    for (const auto& v : compatible) {
        Vector r(index.size());
        for (const auto& [jc, var] : index) r[var] = v[jc.first * n + jc.second];
        restricted.push_back(std::move(r));
    }
    std::vector<Vector> basis;
    for (auto i : independent_subset(restricted, index.size())) basis.push_back(restricted[i]);
    return basis;
}

std::vector<Scalar> squared_distance_series(const Framework& fw, const Series& s, std::size_t a, std::size_t b) {
    auto index = variable_index(fw);
    if (s.dimension() != index.size()) throw UsageError("series length differs from the unpinned coordinate count");
    const std::size_t q = s.degree();
    std::vector<Scalar> out(2 * q + 1);
    for (std::size_t c = 0; c < fw.dimension; ++c) {
        // difference series x_a,c(t) − x_b,c(t)
        std::vector<Scalar> diff(q + 1);
        for (std::size_t side = 0; side < 2; ++side) {
            std::size_t j = side == 0 ? a : b;
            Scalar sign = side == 0 ? 1 : -1;
            auto it = index.find({j, c});
            if (it == index.end()) {
                diff[0] += sign * fw.joints[j].coords[c];
            } else {
                for (std::size_t p = 0; p <= q; ++p) diff[p] += sign * s[p][it->second];
            }
        }
        for (std::size_t i = 0; i <= q; ++i) {
            if (sgn(diff[i]) == 0) continue;
            for (std::size_t k = 0; k <= q; ++k) out[i + k] += diff[i] * diff[k];
        }
    }
    return out;
}

FlexionReport flexion_nontriviality(const Framework& fw, const Series& s) {
    FlexionReport report;
    report.order = s.degree();
    report.flexion = s;
    for (std::size_t a = 0; a < fw.joints.size(); ++a)
        for (std::size_t b = a + 1; b < fw.joints.size(); ++b) {
            if (fw.has_bar(a, b)) continue;
            auto d = squared_distance_series(fw, s, a, b);
            for (std::size_t p = 1; p < d.size(); ++p) {
                if (sgn(d[p]) == 0) continue;
                if (!report.witness || p < report.witness->order) report.witness = FlexionWitness{a, b, p, d[p]};
                break;
            }
        }
    report.nontrivial = report.witness.has_value();
    return report;
}

FrameworkReport analyze_framework(const Framework& input, const AnalysisConfig& config) {
    validate_framework(input);
    FrameworkReport out;
    out.pinned = input.auto_pin && input.pins.empty() ? auto_pin(input) : input;
    out.edges = build_edge_system(out.pinned);

    std::vector<RawEquation> gauge;
    for (const auto& tau : trivial_motion_basis(out.pinned)) {
        RawEquation eq;
        for (std::size_t i = 0; i < tau.size(); ++i)
            if (sgn(tau[i]) != 0) eq.beta.push_back({i, tau[i]});
        eq.gamma = -dot(tau, out.edges.base_point);
        gauge.push_back(std::move(eq));
    }
    out.gauge_equations = gauge.size();
    out.analyzed_system = gauge.empty() ? out.edges.system : append_equations(out.edges.system, gauge);
    out.analysis = analyze_system(out.analyzed_system, out.edges.base_point, config);
    if (!gauge.empty())
        out.analysis.notes.push_back(std::to_string(gauge.size()) +
                                     " gauge equations remove rigid motions left free by the pins");

    AnalysisReport& a = out.analysis;
    switch (a.verdict) {
        case Verdict::Rigid:
            if (std::holds_alternative<FirstOrderRigid>(*a.certificate))
                out.basis = "first-order rigid, hence rigid";
            else if (std::holds_alternative<SecondOrderObstruction>(*a.certificate))
                out.basis = "second-order rigid, hence rigid";
            else
                out.basis = "the single first-order flexion has no T-standard continuation, hence rigid";
            break;
        case Verdict::Flexible: {
            const SpanClosureFlex cert = std::get<SpanClosureFlex>(*a.certificate);
            out.flexion = flexion_nontriviality(out.pinned, cert.series);
            if (out.flexion->witness && out.flexion->witness->order <= cert.q) {
                out.basis = "span-closure certificate with a nontrivial flexion, hence flexible";
            } else {
                a.verdict = Verdict::Inconclusive;
                a.supporting.push_back(std::move(*a.certificate));
                a.certificate.reset();
                a.notes.push_back(out.flexion->witness
                                      ? "certified series changes a non-bar distance only beyond order q"
                                      : "certified series changes no non-bar distance");
                out.basis = "certified family not shown to be a nontrivial flexion";
            }
            break;
        }
        case Verdict::Inconclusive:
            out.basis = "no certificate";
            break;
    }
    return out;
}

}  // namespace flexcert
