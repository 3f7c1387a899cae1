#include "oracles.hpp"

#include "flexcert/errors.hpp"

#include <doctest.h>

using namespace flexcert;

namespace {

BaseOperators corpus_ops(const char* name) {
    auto in = parse_system(oracle::load_json(name));
    return linearize(in.system, *in.base_point);
}

QuadraticSystem random_through(oracle::Rng& rng, std::size_t m, std::size_t n, const Vector& x0) {
    RawQuadraticSystem raw{default_variable_names(m), {}};
    for (std::size_t k = 0; k < n; ++k) {
        RawEquation eq;
        for (int t = 0; t < 3; ++t)
            eq.alpha.push_back({std::size_t(rng.integer(0, m - 1)), std::size_t(rng.integer(0, m - 1)), rng.rational()});
        eq.beta.push_back({std::size_t(rng.integer(0, m - 1)), rng.rational()});
        raw.equations.push_back(eq);
    }
    QuadraticSystem sys = validate_and_symmetrize(raw);
    Vector r = evaluate(sys, x0);
    for (std::size_t k = 0; k < n; ++k) raw.equations[k].gamma = -r[k];
    return validate_and_symmetrize(raw);
}

// Y(τ + aτ^e) coordinate-wise with truncated products.
std::vector<Vector> compose_reparam(const Series& s, const Scalar& a, unsigned e, std::size_t out) {
    oracle::Poly phi(out + 1);
    if (out >= 1) phi[1] += 1;
    if (e <= out) phi[e] += a;
    std::vector<Vector> result(out + 1, Vector(s.dimension()));
    oracle::Poly power(out + 1);
    power[0] = 1;
    for (std::size_t p = 0; p <= s.degree(); ++p) {
        for (std::size_t d = 0; d <= out; ++d) result[d].add_scaled(power[d], s[p]);
        power = oracle::poly_mul(power, phi, out);
    }
    return result;
}

}  // namespace

TEST_CASE("recurrence_rhs worked values") {
    auto hyper = corpus_ops("hyperboloid.json");
    Series line({Vector{5, 5, 7}, Vector{4, 3, 5}});
    CHECK(recurrence_rhs(hyper, line, 2).is_zero());

    auto tangent = corpus_ops("tangency.json");
    Series s({Vector{2, 0, 0}, Vector{0, 0, 1}});
    CHECK(recurrence_rhs(tangent, s, 2) == Vector{-1, 0, 0});

    auto circle = corpus_ops("circle.json");
    Series c({Vector{1, 0}, Vector{0, 1}, Vector{make_scalar(-1, 2), 0}});
    CHECK(recurrence_rhs(circle, c, 2) == Vector{-1});
    CHECK(recurrence_rhs(circle, c, 3) == Vector{0});
    // −(2·B(Y1,Y3) + B(Y2,Y2)) with Y3 = 0
    Series c3({Vector{1, 0}, Vector{0, 1}, Vector{make_scalar(-1, 2), 0}, Vector{0, 0}});
    CHECK(recurrence_rhs(circle, c3, 4) == Vector{make_scalar(-1, 4)});
}

TEST_CASE("recurrence_rhs is the negated symmetric convolution") {
    oracle::Rng rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t m = rng.integer(1, 4), n = rng.integer(1, 3);
        Vector x0 = rng.vector(m);
        QuadraticSystem sys = random_through(rng, m, n, x0);
        BaseOperators ops = linearize(sys, x0);
        std::vector<Vector> coeffs{x0};
        for (int p = 0; p < 5; ++p) coeffs.push_back(rng.vector(m));
        Series s(coeffs);
        for (std::size_t p = 2; p <= 6; ++p) {
            Vector expected(n);
            for (std::size_t l = 1; l < p; ++l) expected -= bilinear(sys, s[l], s[p - l]);
            CHECK(recurrence_rhs(ops, s, p) == expected);
        }
        // Compose oracle: coefficient p of F(Y) equals C·Y_p − rhs_p.
        auto composed = oracle::compose(to_general(sys), coeffs, 5);
        for (std::size_t p = 2; p <= 5; ++p) CHECK(composed[p] == ops.C() * s[p] - recurrence_rhs(ops, s, p));
    }
}

TEST_CASE("extend_step worked cases") {
    auto hyper = corpus_ops("hyperboloid.json");
    Series line({Vector{5, 5, 7}, Vector{4, 3, 5}});
    auto in_span = extend_step(hyper, line, SpanOf{{Vector{4, 3, 5}}});
    REQUIRE(in_span);
    CHECK(in_span->value.is_zero());
    auto free = extend_step(hyper, line, Unconstrained{});
    REQUIRE(free);
    CHECK(free->value.is_zero());
    REQUIRE(free->freedom.size() == 1);

    auto tangent = corpus_ops("tangency.json");
    Series s({Vector{2, 0, 0}, Vector{0, 0, 1}});
    CHECK_FALSE(extend_step(tangent, s, Complement{{Vector{1, 0, 0}, Vector{0, 1, 0}}}));
    CHECK_FALSE(extend_step(tangent, s, Unconstrained{}));

    auto circle = corpus_ops("circle.json");
    auto y2 = extend_step(circle, Series({Vector{1, 0}, Vector{0, 1}}), Complement{{Vector{1, 0}}});
    REQUIRE(y2);
    CHECK(y2->value == Vector{make_scalar(-1, 2), 0});
    CHECK(y2->freedom.empty());
}

TEST_CASE("extend_step rejects bad constraints") {
    auto circle = corpus_ops("circle.json");
    Series s({Vector{1, 0}, Vector{0, 1}});
    // The kernel direction is not a complement.
    CHECK_THROWS_AS(extend_step(circle, s, Complement{{Vector{0, 1}}}), UsageError);
    CHECK_THROWS_AS(extend_step(circle, s, Complement{{}}), UsageError);
    CHECK_THROWS_AS(extend_step(circle, s, SpanOf{{Vector{1, 0, 0}}}), UsageError);
}

TEST_CASE("extended coefficients solve the recurrence and raise the residual order") {
    oracle::Rng rng(32);
    int extended = 0;
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t m = rng.integer(2, 4), n = rng.integer(1, m - 1);
        Vector x0 = rng.vector(m);
        QuadraticSystem sys = random_through(rng, m, n, x0);
        BaseOperators ops = linearize(sys, x0);
        if (ops.kernel().empty()) continue;
        Series s({x0, ops.kernel()[0]});
        for (int step = 0; step < 4; ++step) {
            auto next = extend_step(ops, s, Unconstrained{});
            if (!next) {
                CHECK_FALSE(image_contains(ops.C(), recurrence_rhs(ops, s, s.degree() + 1)));
                break;
            }
            CHECK(ops.C() * next->value == recurrence_rhs(ops, s, s.degree() + 1));
            for (const auto& f : next->freedom) CHECK((ops.C() * f).is_zero());
            s.append(next->value);
            CHECK(residual_order(sys, s) > s.degree());
            ++extended;
        }
    }
    CHECK(extended > 20);
}

TEST_CASE("residual_order worked cases") {
    auto hyper = parse_system(oracle::load_json("hyperboloid.json"));
    CHECK(residual_order(hyper.system, Series({Vector{5, 5, 7}, Vector{4, 3, 5}})) == kInfiniteOrder);
    CHECK(residual_order(hyper.system, Series({Vector{5, 5, 7}})) == kInfiniteOrder);
    CHECK(residual_order(hyper.system, Series({Vector{5, 5, 8}})) == 0);
    CHECK(residual_order(hyper.system, Series({Vector{5, 5, 7}, Vector{1, 0, 0}})) == 1);

    auto tangent = parse_system(oracle::load_json("tangency.json"));
    Series s({Vector{2, 0, 0}, Vector{0, 0, 1}});
    CHECK(residual_order(tangent.system, s) == 2);
    auto coeffs = residual_coefficients(tangent.system, s);
    REQUIRE(coeffs.size() == 3);
    CHECK(coeffs[2] == Vector{1, 0, 0});
}

TEST_CASE("residual_coefficients agree with direct substitution") {
    oracle::Rng rng(33);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t m = rng.integer(1, 4), n = rng.integer(1, 3);
        Vector x0 = rng.vector(m);
        QuadraticSystem sys = random_through(rng, m, n, x0);
        std::vector<Vector> coeffs{x0};
        std::size_t q = rng.integer(0, 4);
        for (std::size_t p = 0; p < q; ++p) coeffs.push_back(rng.vector(m));
        auto got = residual_coefficients(sys, Series(coeffs));
        auto expected = oracle::compose(to_general(sys), coeffs, 2 * q);
        CHECK(got == expected);
    }
}

TEST_CASE("Viviani curve and circle match their analytic expansions") {
    auto viv = parse_system(oracle::load_json("viviani.json"));
    CHECK(residual_order(viv.system, Series(oracle::viviani(10))) > 10);

    auto circle = parse_system(oracle::load_json("circle.json"));
    // (√(1 − t²), t)
    oracle::Poly u(9);
    u[2] = 1;
    oracle::Poly x = oracle::sqrt_one_minus(u, 8);
    std::vector<Vector> coeffs;
    for (std::size_t p = 0; p <= 8; ++p) coeffs.push_back(Vector{x[p], p == 1 ? Scalar(1) : Scalar(0)});
    CHECK(residual_order(circle.system, Series(coeffs)) > 8);
    CHECK(coeffs[2] == Vector{make_scalar(-1, 2), 0});
    CHECK(coeffs[4] == Vector{make_scalar(-1, 8), 0});
}

TEST_CASE("reparameterize worked identities") {
    Series s({Vector{1}, Vector{2}, Vector{3}});
    CHECK(reparameterize(s, 0, 2, 2) == s);
    // 1 + 2(τ + τ²) + 3(τ + τ²)² = 1 + 2τ + 5τ² + 6τ³ + 3τ⁴
    CHECK(reparameterize(s, 1, 2, 4) == Series({Vector{1}, Vector{2}, Vector{5}, Vector{6}, Vector{3}}));
    CHECK(reparameterize(s, 1, 2, 1) == Series({Vector{1}, Vector{2}}));
    CHECK_THROWS_AS(reparameterize(s, 1, 1, 2), UsageError);
}

TEST_CASE("reparameterize matches composition and preserves residual order") {
    oracle::Rng rng(34);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t m = rng.integer(1, 3);
        std::vector<Vector> coeffs;
        std::size_t q = rng.integer(1, 5);
        for (std::size_t p = 0; p <= q; ++p) coeffs.push_back(rng.vector(m));
        Series s(coeffs);
        Scalar a = rng.rational();
        unsigned e = rng.integer(2, 4);
        std::size_t out = rng.integer(1, 8);
        CHECK(reparameterize(s, a, e, out).coefficients() == compose_reparam(s, a, e, out));
    }
    auto tangent = parse_system(oracle::load_json("tangency.json"));
    Series s({Vector{2, 0, 0}, Vector{0, 0, 1}});
    for (unsigned e = 2; e <= 4; ++e) CHECK(residual_order(tangent.system, reparameterize(s, 3, e, 6)) == 2);
    CHECK(residual_order(parse_system(oracle::load_json("viviani.json")).system,
                         reparameterize(Series(oracle::viviani(8)), make_scalar(1, 3), 2, 8)) > 8);
}

TEST_CASE("Series basics") {
    Series s({Vector{1, 2}, Vector{0, 0}});
    CHECK(s.degree() == 1);
    CHECK(s.dimension() == 2);
    CHECK(s.is_constant());
    CHECK(s.coefficient_or_zero(5) == Vector{0, 0});
    s.append(Vector{1, 0});
    CHECK_FALSE(s.is_constant());
    CHECK(s.truncated(1) == Series({Vector{1, 2}, Vector{0, 0}}));
    CHECK_THROWS(Series({Vector{1, 2}, Vector{1}}));
    CHECK_THROWS(Series(std::vector<Vector>{}));
}
