#include "flexcert/certify.hpp"

#include "flexcert/errors.hpp"
#include "second_order.hpp"

#include <algorithm>
#include <map>

namespace flexcert {

std::optional<Certificate> first_order_check(const BaseOperators& ops) {
    if (ops.kernel_dimension() != 0) return std::nullopt;
    return FirstOrderRigid{ops.rank()};
}

SecondOrderAnalysis second_order_analysis(const BaseOperators& ops) {
    const auto& kernel = ops.kernel();
    const auto& cokernel = ops.cokernel();
    std::vector<Matrix> forms = detail::projected_forms(ops.system(), kernel, cokernel);
    detail::FormDecision decision = detail::decide_forms(kernel.size(), forms);

    SecondOrderAnalysis out;
    out.detail = decision.detail;
    switch (decision.outcome) {
        case detail::FormDecision::Outcome::Obstructed:
            out.outcome = SecondOrderAnalysis::Outcome::Obstructed;
            out.obstruction = SecondOrderObstruction{decision.reason, kernel, cokernel, forms, decision.form_index};
            break;
        case detail::FormDecision::Outcome::Unobstructed:
            out.outcome = SecondOrderAnalysis::Outcome::Unobstructed;
            if (decision.zero) {
                Vector x(ops.system().variable_count());
                for (std::size_t a = 0; a < kernel.size(); ++a) x.add_scaled((*decision.zero)[a], kernel[a]);
                out.candidate = x;
            }
            break;
        case detail::FormDecision::Outcome::Undecided:
            out.outcome = SecondOrderAnalysis::Outcome::Undecided;
            break;
    }
    return out;
}

std::optional<Certificate> second_order_check(const BaseOperators& ops) {
    auto analysis = second_order_analysis(ops);
    if (!analysis.obstruction) return std::nullopt;
    return *analysis.obstruction;
}

namespace {

// Span-closure test assuming s is already an approximate solution of degree s.degree().
std::optional<SpanClosureFlex> closure_test(const BaseOperators& ops, const Series& s, std::size_t k,
                                            std::map<std::pair<std::size_t, std::size_t>, Vector>& products) {
    const std::size_t q = s.degree();
    std::vector<Vector> span(s.coefficients().begin() + static_cast<long>(k), s.coefficients().end());
    SpanClosureFlex cert{q, k, s, {}};
    for (std::size_t i = 1; i <= q; ++i)
        for (std::size_t j = k; j <= q; ++j) {
            auto key = std::minmax(i, j);
            auto it = products.find(key);
            if (it == products.end()) {
                Vector b = ops.B(s[i], s[j]);
                b *= Scalar(-2);
                it = products.emplace(key, std::move(b)).first;
            }
            auto sol = solve_in_span(ops.C(), it->second, span);
            if (!sol) return std::nullopt;
            cert.pairs.push_back({i, j, std::move(sol->coefficients), std::move(sol->value)});
        }
    for (std::size_t order = q + 1; order + 2 <= 2 * k; ++order) {
        Vector rhs = cross_term_rhs(ops.system(), s, k, order);
        auto sol = solve_in_span(ops.C(), rhs, span);
        if (!sol) return std::nullopt;
        cert.cross_terms.push_back({order, std::move(sol->coefficients), std::move(sol->value)});
    }
    return cert;
}

}  // namespace

std::optional<Certificate> span_closure_check(const BaseOperators& ops, const Series& s, std::size_t q,
                                              std::size_t k) {
    if (q > s.degree()) throw UsageError("span_closure_check: series degree is below q");
    if (k > q) throw UsageError("span_closure_check: k must not exceed q");
    Series t = s.truncated(q);
    if (residual_order(ops.system(), t) <= q)
        throw PreconditionError("span_closure_check: series is not an approximate solution of degree " +
                                std::to_string(q));
    if (t.is_constant()) return std::nullopt;
    std::map<std::pair<std::size_t, std::size_t>, Vector> products;
    auto cert = closure_test(ops, t, k, products);
    if (!cert) return std::nullopt;
    return *cert;
}

std::vector<Series> search_seeds(const BaseOperators& ops, std::size_t q_max) {
    const std::size_t m = ops.system().variable_count();
    std::vector<Series> seeds;
    for (const auto& v : ops.kernel())
        for (std::size_t zeros = 0; zeros <= 2 && zeros + 1 <= q_max; ++zeros) {
            Series s({ops.base_point()});
            for (std::size_t z = 0; z < zeros; ++z) s.append(Vector(m));
            s.append(v);
            while (s.degree() < q_max) {
                auto next = extend_step(ops, s, Unconstrained{});
                if (!next) break;
                s.append(std::move(next->value));
            }
            seeds.push_back(std::move(s));
        }
    return seeds;
}

std::optional<Certificate> span_closure_search(const BaseOperators& ops, std::size_t q_max) {
    if (q_max < 1) throw UsageError("span_closure_search: q_max must be at least 1");
    std::vector<Series> seeds = search_seeds(ops, q_max);
    std::vector<std::map<std::pair<std::size_t, std::size_t>, Vector>> products(seeds.size());
    for (std::size_t q = 2; q <= q_max; ++q) {
        std::vector<std::optional<Series>> truncations;
        for (const auto& s : seeds) {
            if (s.degree() < q) {
                truncations.emplace_back();
                continue;
            }
            Series t = s.truncated(q);
            truncations.emplace_back(t.is_constant() ? std::nullopt : std::optional<Series>(std::move(t)));
        }
        // Products B(Y_i, Y_j) only depend on i, j ≤ q, so they carry over to larger q.
        for (std::size_t k = 1; k < q; ++k)
            for (std::size_t idx = 0; idx < seeds.size(); ++idx) {
                if (!truncations[idx]) continue;
                auto cert = closure_test(ops, *truncations[idx], k, products[idx]);
                if (cert) return *cert;
            }
    }
    return std::nullopt;
}

bool SpanDiagnostic::contradiction() const {
    return applicable && std::any_of(entries.begin(), entries.end(), [](const Entry& e) { return !e.solvable; });
}

SpanDiagnostic span_closure_diagnostic(const BaseOperators& ops, const Series& s, unsigned r) {
    SpanDiagnostic out;
    if (r != 2 && r != 3) throw UsageError("span_closure_diagnostic: r must be 2 or 3");
    const std::size_t last = r == 2 ? 4 : 7;
    if (s.degree() < last) {
        out.reason = "series degree " + std::to_string(s.degree()) + " is below " + std::to_string(last);
        return out;
    }
    const std::size_t m = s.dimension();
    std::vector<Vector> span(s.coefficients().begin() + 1, s.coefficients().begin() + 1 + r);
    for (std::size_t p = r + 1; p <= last; ++p) {
        std::vector<Vector> columns = span;
        columns.push_back(s[p]);
        if (rank(Matrix::from_columns(columns, m)) != rank(Matrix::from_columns(span, m))) {
            out.reason = "X" + std::to_string(p) + " is outside the span of the first " + std::to_string(r) +
                         " coefficients";
            return out;
        }
    }
    out.applicable = true;
    for (std::size_t i = 1; i <= r; ++i)
        for (std::size_t j = 1; j <= r; ++j) {
            Vector rhs = ops.B(s[i], s[j]);
            rhs *= Scalar(-2);
            out.entries.push_back({i, j, solve_in_span(ops.C(), rhs, span).has_value()});
        }
    return out;
}

TStandardConfig default_t_standard_config(const BaseOperators& ops, std::size_t max_depth) {
    if (ops.kernel_dimension() != 1) throw UsageError("T-standard run needs dim ker C = 1");
    const Vector& k = ops.kernel().front();
    std::size_t pivot = 0;
    for (std::size_t i = 1; i < k.size(); ++i)
        if (abs(k[i]) > abs(k[pivot])) pivot = i;
    TStandardConfig cfg;
    for (std::size_t i = 0; i < k.size(); ++i)
        if (i != pivot) cfg.t_basis.push_back(Vector::unit(k.size(), i));
    cfg.max_depth = max_depth;
    cfg.leading_coeff = k;
    return cfg;
}

Certificate t_standard_run(const BaseOperators& ops, const TStandardConfig& cfg) {
    if (ops.kernel_dimension() != 1) throw UsageError("T-standard run needs dim ker C = 1");
    if (cfg.leading_coeff.size() != ops.system().variable_count() || cfg.leading_coeff.is_zero() ||
        !ops.apply_C(cfg.leading_coeff).is_zero())
        throw UsageError("T-standard leading coefficient must be a nonzero vector of ker C");
    validate_constraint(ops, Complement{cfg.t_basis});

    Series s({ops.base_point(), cfg.leading_coeff});
    for (std::size_t p = 2; p <= cfg.max_depth; ++p) {
        Vector rhs = recurrence_rhs(ops, s, p);
        auto sol = solve_in_span(ops.C(), rhs, cfg.t_basis);
        if (!sol) return TStandardFail{p, rhs, cfg.t_basis, s};
        s.append(std::move(sol->value));
    }
    return TStandardSurvived{cfg.max_depth, cfg.t_basis, s};
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Flexible: return "Flexible";
        case Verdict::Rigid: return "Rigid";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "";
}

AnalysisReport analyze_system(const QuadraticSystem& sys, const Vector& base_point, const AnalysisConfig& config) {
    return analyze_operators(linearize(sys, base_point), config);
}

AnalysisReport analyze_operators(const BaseOperators& ops, const AnalysisConfig& config) {
    if (config.q_max < 1 || config.max_depth < 2) throw UsageError("analysis caps must be positive");
    AnalysisReport report;
    report.config = config;
    report.kernel_dimension = ops.kernel_dimension();

    if (auto cert = first_order_check(ops)) {
        report.verdict = Verdict::Rigid;
        report.certificate = *cert;
        report.depth_reached = 1;
        report.notes.push_back("ker C = {0}: first-order rigid");
        return report;
    }

    std::optional<Certificate> obstruction;
    auto second = second_order_analysis(ops);
    if (second.obstruction) {
        obstruction = *second.obstruction;
        report.notes.push_back("second order: " + second.detail);
    } else if (second.outcome == SecondOrderAnalysis::Outcome::Undecided) {
        report.notes.push_back("second order undecided: " + second.detail);
    }

    std::optional<Certificate> t_fail;
    if (ops.kernel_dimension() == 1) {
        Certificate run = t_standard_run(ops, default_t_standard_config(ops, config.max_depth));
        if (std::holds_alternative<TStandardFail>(run)) {
            report.notes.push_back("T-standard recursion fails at order " +
                                   std::to_string(std::get<TStandardFail>(run).p));
            t_fail = std::move(run);
        } else {
            report.notes.push_back("T-standard recursion solvable through order " + std::to_string(config.max_depth));
            report.supporting.push_back(std::move(run));
            report.depth_reached = config.max_depth;
        }
    }

    if (t_fail || obstruction) {
        report.verdict = Verdict::Rigid;
        if (t_fail) {
            report.depth_reached = std::get<TStandardFail>(*t_fail).p;
            report.certificate = std::move(t_fail);
            if (obstruction) report.supporting.push_back(std::move(*obstruction));
        } else {
            report.depth_reached = 2;
            report.certificate = std::move(obstruction);
        }
        return report;
    }

    if (auto flex = span_closure_search(ops, config.q_max)) {
        report.verdict = Verdict::Flexible;
        const auto& f = std::get<SpanClosureFlex>(*flex);
        report.notes.push_back("span closure holds at q = " + std::to_string(f.q) + ", k = " + std::to_string(f.k));
        report.depth_reached = std::max(report.depth_reached, f.q);
        report.certificate = std::move(flex);
        return report;
    }

    report.verdict = Verdict::Inconclusive;
    report.depth_reached = std::max(report.depth_reached, config.q_max);
    report.notes.push_back("no span-closure certificate up to q = " + std::to_string(config.q_max) +
                           "; the absence of such a certificate does not establish rigidity");
    if (ops.kernel_dimension() >= 2)
        report.notes.push_back("dim ker C = " + std::to_string(ops.kernel_dimension()) +
                               ": no rigidity test applies beyond second order");
    return report;
}

}  // namespace flexcert
