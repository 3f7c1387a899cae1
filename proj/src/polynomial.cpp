#include "flexcert/polynomial.hpp"

#include "flexcert/errors.hpp"

#include <algorithm>
#include <regex>

namespace flexcert {

unsigned total_degree(const Exponents& e) {
    unsigned d = 0;
    for (auto x : e) d += x;
    return d;
}

unsigned total_degree(const Polynomial& p) {
    unsigned d = 0;
    for (const auto& [e, c] : p) d = std::max(d, total_degree(e));
    return d;
}

void validate(const GeneralPolySystem& sys) {
    const std::size_t m = sys.variable_names.size();
    for (std::size_t k = 0; k < sys.equations.size(); ++k)
        for (const auto& [e, c] : sys.equations[k]) {
            if (e.size() != m)
                throw UsageError("equation " + std::to_string(k) + ": exponent vector has length " +
                                 std::to_string(e.size()) + ", expected " + std::to_string(m));
            if (sgn(c) == 0) throw UsageError("equation " + std::to_string(k) + ": zero coefficient stored");
        }
}

Scalar evaluate(const Polynomial& p, const Vector& x) {
    Scalar sum = 0;
    for (const auto& [e, c] : p) {
        if (e.size() != x.size()) throw UsageError("polynomial evaluated at a point of the wrong length");
        Scalar term = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (unsigned r = 0; r < e[i]; ++r) term *= x[i];
        sum += term;
    }
    return sum;
}

Vector evaluate(const GeneralPolySystem& sys, const Vector& x) {
    Vector out(sys.equations.size());
    for (std::size_t k = 0; k < sys.equations.size(); ++k) out[k] = evaluate(sys.equations[k], x);
    return out;
}

namespace {

Exponents padded(const Exponents& e, std::size_t size) {
    Exponents out = e;
    out.resize(size, 0);
    return out;
}

Polynomial padded(const Polynomial& p, std::size_t size) {
    Polynomial out;
    for (const auto& [e, c] : p) out[padded(e, size)] = c;
    return out;
}

// Sub-monomial of the given degree, taking exponents from the lowest index up.
Exponents leading_part(const Exponents& e, unsigned degree) {
    Exponents out(e.size(), 0);
    for (std::size_t i = 0; i < e.size() && degree > 0; ++i) {
        unsigned take = std::min(e[i], degree);
        out[i] = take;
        degree -= take;
    }
    return out;
}

bool divides(const Exponents& s, const Exponents& e) {
    for (std::size_t i = 0; i < e.size(); ++i)
        if (s[i] > e[i]) return false;
    return true;
}

std::vector<std::string> auxiliary_names(const std::vector<std::string>& names, std::size_t extra) {
    bool numbered = true;
    static const std::regex pattern("x([0-9]+)");
    for (std::size_t i = 0; i < names.size() && numbered; ++i) {
        std::smatch match;
        numbered = std::regex_match(names[i], match, pattern) && match[1] == std::to_string(i + 1);
    }
    std::vector<std::string> out;
    for (std::size_t a = 0; a < extra; ++a)
        out.push_back(numbered ? "x" + std::to_string(names.size() + a + 1) : "aux" + std::to_string(a + 1));
    return out;
}

}  // namespace

Reduction reduce_degree(const GeneralPolySystem& input) {
    validate(input);
    std::vector<Polynomial> equations = input.equations;
    std::size_t count = input.variable_names.size();
    ReductionMap map{count, {}};
    std::map<Exponents, std::size_t> auxiliary_of;  // sub-monomial (unpadded) → variable

    while (true) {
        // First monomial of maximal degree > 2, equations in order, terms in map order.
        std::size_t where = 0;
        const Exponents* target = nullptr;
        unsigned best = 2;
        for (std::size_t k = 0; k < equations.size(); ++k)
            for (const auto& [e, c] : equations[k])
                if (total_degree(e) > best) {
                    best = total_degree(e);
                    target = &e;
                    where = k;
                }
        if (!target) break;

        Exponents monomial = *target;
        Exponents sub = leading_part(monomial, (best + 1) / 2);
        while (!sub.empty() && sub.back() == 0 && sub.size() > 1) sub.pop_back();
        Exponents sub_full = padded(sub, count);

        std::size_t aux;
        auto found = auxiliary_of.find(sub);
        if (found != auxiliary_of.end()) {
            aux = found->second;
        } else {
            aux = count++;
            auxiliary_of.emplace(sub, aux);
            map.definitions.push_back({aux, sub_full});
            for (auto& eq : equations) eq = padded(eq, count);
            Exponents u(count, 0);
            u[aux] = 1;
            equations.push_back(Polynomial{{padded(sub_full, count), Scalar(1)}, {u, Scalar(-1)}});
        }

        Polynomial& eq = equations[where];
        Exponents key = padded(monomial, count);
        Scalar c = eq.at(key);
        eq.erase(key);
        Exponents reduced = key;
        sub_full = padded(sub_full, count);
        while (divides(sub_full, reduced)) {
            for (std::size_t i = 0; i < count; ++i) reduced[i] -= sub_full[i];
            reduced[aux] += 1;
        }
        eq[reduced] += c;
        if (sgn(eq[reduced]) == 0) eq.erase(reduced);
    }

    for (auto& d : map.definitions) d.monomial = padded(d.monomial, count);

    GeneralPolySystem reduced{input.variable_names, {}};
    auto extra = auxiliary_names(input.variable_names, count - input.variable_names.size());
    reduced.variable_names.insert(reduced.variable_names.end(), extra.begin(), extra.end());
    for (auto& eq : equations) reduced.equations.push_back(padded(eq, count));
    return {to_quadratic(reduced), map};
}

Vector lift_base_point(const ReductionMap& map, const Vector& x0) {
    if (x0.size() != map.original_variable_count) throw UsageError("lift_base_point: point has the wrong length");
    std::size_t total = map.original_variable_count + map.definitions.size();
    std::vector<Scalar> values(x0.begin(), x0.end());
    values.resize(total);
    Vector full(values);
    for (const auto& d : map.definitions) {
        Polynomial mono{{d.monomial, Scalar(1)}};
        full[d.variable] = evaluate(mono, full);
    }
    return full;
}

Vector project_point(const ReductionMap& map, const Vector& x) {
    if (x.size() != map.original_variable_count + map.definitions.size())
        throw UsageError("project_point: point has the wrong length");
    return Vector(std::vector<Scalar>(x.begin(), x.begin() + static_cast<long>(map.original_variable_count)));
}

QuadraticSystem to_quadratic(const GeneralPolySystem& sys) {
    validate(sys);
    RawQuadraticSystem raw{sys.variable_names, {}};
    for (std::size_t k = 0; k < sys.equations.size(); ++k) {
        RawEquation eq;
        for (const auto& [e, c] : sys.equations[k]) {
            std::vector<std::size_t> factors;
            for (std::size_t i = 0; i < e.size(); ++i)
                for (unsigned r = 0; r < e[i]; ++r) factors.push_back(i);
            switch (factors.size()) {
                case 0: eq.gamma += c; break;
                case 1: eq.beta.push_back({factors[0], c}); break;
                case 2: eq.alpha.push_back({factors[0], factors[1], c}); break;
                default:
                    throw UsageError("equation " + std::to_string(k) + " has degree above 2");
            }
        }
        raw.equations.push_back(std::move(eq));
    }
    return validate_and_symmetrize(raw);
}

GeneralPolySystem to_general(const QuadraticSystem& sys) {
    const std::size_t m = sys.variable_count();
    GeneralPolySystem out{sys.variable_names(), {}};
    for (std::size_t k = 0; k < sys.equation_count(); ++k) {
        Polynomial p;
        for (const auto& t : sys.quadratic_terms(k)) {
            Exponents e(m, 0);
            e[t.i] += 1;
            e[t.j] += 1;
            p[e] += t.i == t.j ? t.value : 2 * t.value;
        }
        for (std::size_t i = 0; i < m; ++i)
            if (sgn(sys.beta(k)[i]) != 0) {
                Exponents e(m, 0);
                e[i] = 1;
                p[e] += sys.beta(k)[i];
            }
        if (sgn(sys.gamma(k)) != 0) p[Exponents(m, 0)] += sys.gamma(k);
        out.equations.push_back(std::move(p));
    }
    return out;
}

}  // namespace flexcert
