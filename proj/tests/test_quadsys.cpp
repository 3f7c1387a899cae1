#include "oracles.hpp"

#include "flexcert/errors.hpp"
#include "flexcert/polynomial.hpp"

#include <doctest.h>

using namespace flexcert;

namespace {

QuadraticSystem hyperboloid() {
    return validate_and_symmetrize(default_variable_names(3),
                                   {Matrix{{1, 0, 0}, {0, 1, 0}, {0, 0, -1}}, Matrix(3, 3), Matrix(3, 3)},
                                   {Vector(3), Vector{3, 1, -3}, Vector{1, -3, 1}}, {-1, 1, 3});
}

Polynomial poly(std::initializer_list<std::pair<Exponents, long>> terms) {
    Polynomial p;
    for (const auto& [e, c] : terms) p[e] = c;
    return p;
}

QuadraticSystem random_system(oracle::Rng& rng, std::size_t m, std::size_t n) {
    RawQuadraticSystem raw{default_variable_names(m), {}};
    for (std::size_t k = 0; k < n; ++k) {
        RawEquation eq;
        for (int t = 0; t < 4; ++t)
            eq.alpha.push_back({std::size_t(rng.integer(0, m - 1)), std::size_t(rng.integer(0, m - 1)), rng.rational()});
        for (int t = 0; t < 2; ++t) eq.beta.push_back({std::size_t(rng.integer(0, m - 1)), rng.rational()});
        eq.gamma = rng.rational();
        raw.equations.push_back(eq);
    }
    return validate_and_symmetrize(raw);
}

// Same system with constants shifted so that x0 solves it.
QuadraticSystem through(const QuadraticSystem& sys, const Vector& x0) {
    Vector r = evaluate(sys, x0);
    GeneralPolySystem g = to_general(sys);
    for (std::size_t k = 0; k < g.equations.size(); ++k) {
        Exponents zero(sys.variable_count(), 0);
        g.equations[k][zero] -= r[k];
        if (sgn(g.equations[k][zero]) == 0) g.equations[k].erase(zero);
    }
    return to_quadratic(g);
}

}  // namespace

TEST_CASE("validate_and_symmetrize") {
    auto a = validate_and_symmetrize({"x1", "x2"}, {Matrix{{0, 2}, {0, 0}}}, {Vector(2)}, {0});
    CHECK(a.alpha(0) == Matrix{{0, 1}, {1, 0}});
    auto b = validate_and_symmetrize({"x1", "x2"}, {Matrix{{1, 3}, {1, 1}}}, {Vector(2)}, {0});
    CHECK(b.alpha(0) == Matrix{{1, 2}, {2, 1}});
    // Quadratic value at (1,1) is 6 both before and after.
    CHECK(evaluate(b, Vector{1, 1})[0] == 6);
    auto h = hyperboloid();
    CHECK(h.alpha(0) == Matrix{{1, 0, 0}, {0, 1, 0}, {0, 0, -1}});
    CHECK(h.beta(0) == Vector(3));
    CHECK(h.gamma(0) == -1);
    CHECK_THROWS_AS(validate_and_symmetrize({"x1"}, {Matrix(2, 2)}, {Vector(1)}, {0}), UsageError);
    CHECK_THROWS_AS(validate_and_symmetrize({"x1"}, {Matrix(1, 1)}, {Vector(1)}, {}), UsageError);
    RawQuadraticSystem bad{{"x1"}, {RawEquation{{{0, 1, 1}}, {}, 0}}};
    CHECK_THROWS_AS(validate_and_symmetrize(bad), UsageError);
}

TEST_CASE("evaluate and bilinear on the worked systems") {
    auto h = hyperboloid();
    CHECK(evaluate(h, Vector{5, 5, 7}).is_zero());
    CHECK(evaluate(h, Vector{9, 8, 12}).is_zero());
    CHECK(evaluate(h, Vector{5, 5, 8}) == Vector{-15, -3, 1});
    CHECK(bilinear(h, Vector{4, 3, 5}, Vector{4, 3, 5}).is_zero());
    auto zero = validate_and_symmetrize(default_variable_names(2), {Matrix(2, 2)}, {Vector(2)}, {0});
    CHECK(evaluate(zero, Vector{7, -3}).is_zero());
    CHECK_THROWS_AS(evaluate(h, Vector{1, 2}), UsageError);

    auto cubic = to_quadratic({default_variable_names(3),
                               {poly({{{1, 0, 1}, 1}, {{0, 2, 0}, -1}}), poly({{{2, 0, 0}, 1}, {{0, 0, 1}, -1}})}});
    CHECK(bilinear(cubic, Vector{1, 0, 0}, Vector{1, 0, 0}) == Vector{0, 1});
    CHECK(bilinear(cubic, Vector{0, 1, 0}, Vector{0, 1, 0}) == Vector{-1, 0});
    CHECK(2 * bilinear(cubic, Vector{1, 0, 0}, Vector{0, 0, 1}) == Vector{1, 0});

    auto tangent = parse_system(oracle::load_json("tangency.json"));
    CHECK(bilinear(tangent.system, Vector{0, 0, 1}, Vector{0, 0, 1}) == Vector{1, 0, 0});
}

TEST_CASE("linearize builds C and rejects non-solutions") {
    auto h = linearize(hyperboloid(), Vector{5, 5, 7});
    CHECK(h.C() == Matrix{{10, 10, -14}, {3, 1, -3}, {1, -3, 1}});
    REQUIRE(h.kernel().size() == 1);
    CHECK(h.kernel()[0] == Vector{4, 3, 5});

    auto viviani = parse_system(oracle::load_json("viviani.json"));
    CHECK(linearize(viviani.system, *viviani.base_point).C() == Matrix{{4, 0, 0}, {2, 0, 0}});
    auto tangent = parse_system(oracle::load_json("tangency.json"));
    CHECK(linearize(tangent.system, *tangent.base_point).C() == Matrix{{4, 0, 0}, {-2, 0, 0}, {0, 1, 0}});

    try {
        linearize(hyperboloid(), Vector{5, 5, 8});
        FAIL("expected a base point error");
    } catch (const BasePointError& e) {
        CHECK(e.residual() == Vector{-15, -3, 1});
    }
}

TEST_CASE("B is bilinear and symmetric; the degree-2 Taylor identity holds") {
    oracle::Rng rng(21);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t m = rng.integer(1, 5), n = rng.integer(1, 4);
        QuadraticSystem sys = random_system(rng, m, n);
        Vector x = rng.vector(m), x2 = rng.vector(m), y = rng.vector(m);
        Scalar a = rng.rational();
        CHECK(bilinear(sys, a * x + x2, y) == a * bilinear(sys, x, y) + bilinear(sys, x2, y));
        CHECK(bilinear(sys, x, y) == bilinear(sys, y, x));

        Vector x0 = rng.vector(m);
        QuadraticSystem s0 = through(sys, x0);
        BaseOperators ops = linearize(s0, x0);
        Vector z = rng.vector(m);
        CHECK(evaluate(s0, x0 + z) - evaluate(s0, x0) == ops.C() * z + bilinear(s0, z, z));
        CHECK(ops.C() * z == 2 * bilinear(s0, x0, z) + linear_part(s0, z));
        // Independent evaluation from the expanded polynomial form.
        GeneralPolySystem g = to_general(s0);
        for (std::size_t k = 0; k < n; ++k) CHECK(oracle::eval_monomials(g.equations[k], z) == evaluate(s0, z)[k]);
    }
}

TEST_CASE("reduce_degree: worked reductions") {
    Reduction cubic = reduce_degree({{"x1", "x2"}, {poly({{{3, 0}, 1}, {{0, 2}, -1}})}});
    auto expected8 = to_quadratic({{"x1", "x2", "x3"},
                                   {poly({{{1, 0, 1}, 1}, {{0, 2, 0}, -1}}), poly({{{2, 0, 0}, 1}, {{0, 0, 1}, -1}})}});
    CHECK(cubic.system == expected8);
    CHECK(cubic.map.original_variable_count == 2);
    REQUIRE(cubic.map.definitions.size() == 1);
    CHECK(cubic.map.definitions[0].variable == 2);
    CHECK(cubic.map.definitions[0].monomial == Exponents{2, 0, 0});

    Reduction pair = reduce_degree({{"x1", "x2"}, {poly({{{2, 1}, 1}, {{0, 0}, -1}})}});
    // Expected pair x3·x2 − 1 and x3 − x1², compared up to a sign per equation.
    GeneralPolySystem got = to_general(pair.system);
    std::vector<Polynomial> want{poly({{{0, 1, 1}, 1}, {{0, 0, 0}, -1}}), poly({{{0, 0, 1}, 1}, {{2, 0, 0}, -1}})};
    REQUIRE(got.equations.size() == 2);
    for (std::size_t k = 0; k < 2; ++k) {
        Polynomial negated;
        for (const auto& [e, c] : want[k]) negated[e] = -c;
        CHECK((got.equations[k] == want[k] || got.equations[k] == negated));
    }
    CHECK(pair.system.variable_names() == std::vector<std::string>{"x1", "x2", "x3"});

    auto h = hyperboloid();
    Reduction same = reduce_degree(to_general(h));
    CHECK(same.system == h);
    CHECK(same.map.definitions.empty());
}

TEST_CASE("lift_base_point") {
    Reduction cubic = reduce_degree({{"x1", "x2"}, {poly({{{3, 0}, 1}, {{0, 2}, -1}})}});
    CHECK(lift_base_point(cubic.map, Vector{0, 0}) == Vector{0, 0, 0});
    Reduction pair = reduce_degree({{"x1", "x2"}, {poly({{{2, 1}, 1}, {{0, 0}, -1}})}});
    CHECK(lift_base_point(pair.map, Vector{3, 1}) == Vector{3, 1, 9});
    CHECK(lift_base_point(ReductionMap{2, {}}, Vector{3, 1}) == Vector{3, 1});
    CHECK_THROWS_AS(lift_base_point(pair.map, Vector{1}), UsageError);
}

TEST_CASE("reduce_degree on random high-degree systems keeps the solution correspondence") {
    oracle::Rng rng(22);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t m = rng.integer(1, 3);
        GeneralPolySystem g{default_variable_names(m), {}};
        std::size_t n = rng.integer(1, 3);
        for (std::size_t k = 0; k < n; ++k) {
            Polynomial p;
            for (int t = 0; t < 4; ++t) {
                Exponents e(m);
                for (auto& x : e) x = static_cast<unsigned>(rng.integer(0, 4));
                p[e] += rng.rational();
                if (sgn(p[e]) == 0) p.erase(e);
            }
            g.equations.push_back(p);
        }
        Reduction r = reduce_degree(g);
        for (std::size_t k = 0; k < r.system.equation_count(); ++k) {
            GeneralPolySystem back = to_general(r.system);
            CHECK(total_degree(back.equations[k]) <= 2);
        }
        CHECK(r.system.equation_count() == n + r.map.definitions.size());
        for (int sample = 0; sample < 5; ++sample) {
            Vector x = rng.vector(m, 4, 3);
            Vector lifted = lift_base_point(r.map, x);
            Vector value = evaluate(r.system, lifted);
            for (std::size_t k = 0; k < n; ++k) CHECK(value[k] == oracle::eval_monomials(g.equations[k], x));
            for (std::size_t k = n; k < value.size(); ++k) CHECK(value[k] == 0);
            CHECK(project_point(r.map, lifted) == x);
        }
    }
}

TEST_CASE("reduced corpus systems agree with the expanded original") {
    for (const char* name : {"cusp_cubic.json", "auxiliary_pair.json"}) {
        GeneralInput in = parse_general_system(oracle::load_json(name));
        Reduction r = reduce_degree(in.system);
        CHECK(evaluate(r.system, lift_base_point(r.map, *in.base_point)).is_zero());
        oracle::Rng rng(23);
        for (int sample = 0; sample < 20; ++sample) {
            Vector x = rng.vector(in.system.variable_names.size());
            Vector value = evaluate(r.system, lift_base_point(r.map, x));
            for (std::size_t k = 0; k < in.system.equations.size(); ++k)
                CHECK(value[k] == oracle::eval_monomials(in.system.equations[k], x));
        }
    }
}

TEST_CASE("reduction reuses auxiliaries and splits high powers") {
    Reduction r = reduce_degree({{"x1"}, {poly({{{8}, 1}, {{4}, 1}, {{0}, -2}})}});
    // x1^4 ↦ aux, so x1^8 = aux², then aux's own definition is split again.
    for (std::size_t k = 0; k < r.system.equation_count(); ++k) CHECK(total_degree(to_general(r.system).equations[k]) <= 2);
    CHECK(r.map.definitions.size() == 2);
    Vector lifted = lift_base_point(r.map, Vector{1});
    CHECK(evaluate(r.system, lifted).is_zero());
}
