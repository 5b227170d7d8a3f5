#include "doctest.h"

#include "redip/errors.hpp"
#include "redip/inference.hpp"
#include "redip/linear.hpp"
#include "redip/parser.hpp"
#include "redip/pga.hpp"
#include "redip/serialize.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <cmath>

using namespace redip;
using fixture::val;

namespace {

const Alphabet kX({"x"});
const Alphabet kXY({"x", "y"});

Pga self_loop(const Rational& loop, const Rational& final) {
    PgaBuilder b(kX);
    b.add_state(1, final);
    b.add_edge(0, 0, loop);
    return b.build();
}

Pga insurance_unnormalized() {
    auto parsed = parse(fixture::insurance_source);
    return translate(*parsed.program, dirac_prior(parsed.alphabet));
}

}  // namespace

TEST_CASE("rationals parse exactly and render with six significant digits") {
    CHECK(parse_rational("9/10") == Rational(9, 10));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("3") == 3);
    CHECK(parse_rational("6/8") == Rational(3, 4));
    CHECK_THROWS_AS(parse_rational("1/0"), InvalidWeight);
    CHECK_THROWS_AS(parse_rational("abc"), InvalidWeight);
    CHECK(to_string(Rational(11, 40)) == "11/40");
    CHECK(to_string(Rational(2)) == "2");
    CHECK(to_decimal(Rational(11, 40)) == "0.275");
    CHECK(to_decimal(Rational(2, 11)) == "0.181818");
    CHECK(to_decimal(Rational(1, 3), 3) == "0.333");
    CHECK(to_decimal(Rational(0)) == "0");
}

TEST_CASE("extended rationals absorb infinity") {
    ExtRational inf = ExtRational::infinity();
    CHECK((inf + ExtRational(Rational(1, 2))).is_infinite());
    CHECK((inf * ExtRational(Rational(1, 2))).is_infinite());
    CHECK((inf * ExtRational(0)) == ExtRational(0));
    CHECK(ExtRational(Rational(1, 2)) < inf);
    CHECK(to_string(inf) == "inf");
}

TEST_CASE("the builder merges parallel edges and drops zero weights") {
    PgaBuilder b(kXY);
    b.add_states(2);
    b.set_initial(0, 1);
    b.set_final(1, 1);
    b.add_edge(0, 1, Rational(1, 4), 0);
    b.add_edge(0, 1, Rational(1, 4), 0);
    b.add_edge(0, 1, Rational(1, 4), 1);
    b.add_edge(0, 1, 0);
    Pga a = b.build();
    CHECK(a.size() == 2);
    CHECK(a.size(0) == 1);
    CHECK(a.size(1) == 1);
    CHECK_THROWS_AS(b.add_edge(0, 1, -1), InvalidWeight);
}

TEST_CASE("validate_pga") {
    SUBCASE("geometric(1/2) is a PGA of mass one") {
        auto r = validate_pga(fixture::geometric(kX, 0, Rational(1, 2)));
        CHECK(r.mass == ExtRational(1));
        CHECK(r.is_pga);
    }
    SUBCASE("a weight one self-loop diverges") {
        auto r = validate_pga(self_loop(1, 1));
        CHECK(r.mass.is_infinite());
        CHECK_FALSE(r.is_pga);
    }
    SUBCASE("a lone accepting state has mass one") {
        PgaBuilder b(kX);
        b.add_state(1, 1);
        auto r = validate_pga(b.build());
        CHECK(r.mass == ExtRational(1));
        CHECK(r.is_pga);
        CHECK(r.issues.empty());
    }
    SUBCASE("useless states are reported") {
        PgaBuilder b(kX);
        b.add_state(1, 1);
        b.add_state(0, 0);
        auto r = validate_pga(b.build());
        CHECK(r.is_pga);
        CHECK_FALSE(r.issues.empty());
    }
}

TEST_CASE("mass") {
    SUBCASE("upper branch of the insurance posterior") {
        PgaBuilder b(Alphabet({"r", "x"}));
        b.add_states(3);
        b.set_initial(0, Rational(9, 10));
        b.add_edge(0, 1, Rational(1, 2), 1);
        b.add_edge(1, 2, Rational(1, 2), 1);
        b.add_edge(2, 2, Rational(1, 2), 1);
        b.set_final(2, Rational(1, 2));
        CHECK(mass(b.build()) == ExtRational(Rational(9, 40)));
    }
    SUBCASE("full insurance posterior") { CHECK(mass(insurance_unnormalized()) == ExtRational(Rational(11, 40))); }
    SUBCASE("no accepting path") {
        PgaBuilder b(kX);
        b.add_state(1, 0);
        CHECK(mass(b.build()) == ExtRational(0));
    }
    SUBCASE("star of one half") { CHECK(mass(self_loop(Rational(1, 2), 1)) == ExtRational(2)); }
    SUBCASE("a divergent cycle that cannot reach a final state does not count") {
        PgaBuilder b(kX);
        b.add_states(2);
        b.set_initial(0, 1);
        b.set_final(0, Rational(1, 2));
        b.add_edge(0, 1, Rational(1, 2));
        b.add_edge(1, 1, 2);
        CHECK(mass(b.build()) == ExtRational(Rational(1, 2)));
    }
    SUBCASE("both solvers agree on a superstochastic cycle") {
        PgaBuilder b(kX);
        b.add_states(2);
        b.set_initial(0, 1);
        b.add_edge(0, 1, Rational(3, 4));
        b.add_edge(1, 0, Rational(3, 2));
        b.set_final(1, 1);
        Pga a = b.build();
        CHECK(mass(a, MassMethod::elimination).is_infinite());
        CHECK(mass(a, MassMethod::linear_program).is_infinite());
    }
}

TEST_CASE("least solutions satisfy the fixed point equation and match Kleene iteration") {
    gen::Random rng(11);
    gen::PgaShape shape;
    shape.max_states = 3;
    for (int round = 0; round < 200; ++round) {
        Pga a = trim(gen::random_pga(rng, kXY, shape));
        std::size_t n = a.num_states();
        FixpointSystem sys;
        sys.size = n;
        sys.rows.assign(n, {});
        sys.rhs = a.final_weights();
        std::vector<std::map<std::size_t, Rational>> dense(n);
        for (const auto& e : a.edges()) dense[e.src][e.dst] += e.weight;
        for (std::size_t q = 0; q < n; ++q)
            for (const auto& [t, w] : dense[q]) sys.rows[q].emplace_back(t, w);
        auto b = least_solution_elimination(sys);
        REQUIRE(b.has_value());
        for (std::size_t q = 0; q < n; ++q) {
            Rational rhs = sys.rhs[q];
            for (const auto& [t, w] : sys.rows[q]) rhs += w * (*b)[t];
            CHECK((*b)[q] == rhs);
        }
        std::vector<double> kleene;
        oracle::kleene_mass(a, 10000, &kleene);
        for (std::size_t q = 0; q < n; ++q) CHECK(std::abs((*b)[q].get_d() - kleene[q]) < 1e-9);
        auto lp = least_solution_lp(sys, a.initial_weights());
        REQUIRE(lp.has_value());
        Rational via_lp = 0, via_elim = 0;
        for (std::size_t q = 0; q < n; ++q) {
            via_lp += a.initial(q) * (*lp)[q];
            via_elim += a.initial(q) * (*b)[q];
        }
        CHECK(via_lp == via_elim);
    }
}

TEST_CASE("trimming keeps the behavior") {
    SUBCASE("an unreachable state disappears") {
        PgaBuilder b(kX);
        b.add_state(1, Rational(1, 2));
        b.add_state(0, 1);
        b.add_edge(0, 0, Rational(1, 2), 0);
        b.add_edge(1, 0, 1, 0);
        Pga a = b.build();
        Pga t = trim(a);
        CHECK(t.num_states() == 1);
        CHECK(coefficient(t, val({3})) == coefficient(a, val({3})));
    }
    SUBCASE("geometric is already trim") {
        Pga g = fixture::geometric(kX, 0, Rational(1, 2));
        CHECK(trim(g) == g);
    }
    SUBCASE("a zero automaton trims to one rejecting initial state") {
        PgaBuilder b(kX);
        b.add_state(1, 0);
        b.add_state(0, 1);
        Pga t = trim(b.build());
        CHECK(t.num_states() == 1);
        CHECK(t.final_weight(0) == 0);
    }
    SUBCASE("random automata") {
        gen::Random rng(5);
        for (int round = 0; round < 100; ++round) {
            Pga a = gen::random_pga(rng, kXY);
            Pga t = trim(a);
            CHECK(mass(t) == mass(a));
            Valuation bound = oracle::uniform_bound(2, 3);
            CHECK(oracle::behavior(t, bound).terms() == oracle::behavior(a, bound).terms());
        }
    }
}

TEST_CASE("coefficients") {
    SUBCASE("dirac(3)") {
        Pga d = fixture::chain(kX, 0, 3);
        CHECK(coefficient(d, val({3})) == 1);
        CHECK(coefficient(d, val({2})) == 0);
    }
    SUBCASE("geometric(1/2) at three") {
        CHECK(coefficient(fixture::geometric(kX, 0, Rational(1, 2)), val({3})) == Rational(1, 16));
    }
    SUBCASE("insurance posterior at x = 2, r = 0") {
        auto parsed = parse(fixture::insurance_source);
        Pga post = normalize(translate(*parsed.program, dirac_prior(parsed.alphabet)));
        Valuation at = make_valuation(parsed.alphabet, {{"x", 2}, {"r", 0}});
        // The unique path has weight (9/10)(1/2)^3; normalizing divides by 11/40.
        Rational expected = Rational(9, 10) * Rational(1, 8) / Rational(11, 40);
        CHECK(expected == Rational(9, 22));
        CHECK(coefficient(post, at) == expected);
    }
    SUBCASE("coefficient, coefficient_table and the graded oracle agree") {
        gen::Random rng(21);
        Valuation bound = oracle::uniform_bound(2, 4);
        for (int round = 0; round < 60; ++round) {
            Pga a = gen::random_pga(rng, kXY);
            oracle::Series expected = oracle::behavior(a, bound);
            auto table = coefficient_table(a, bound);
            for (const auto& v : oracle::box(bound)) {
                CHECK(table[v] == expected.at(v));
                if ((v[0] + v[1]) % 3 == 0) CHECK(coefficient(a, v) == expected.at(v));
            }
        }
    }
}

TEST_CASE("normalize") {
    SUBCASE("the insurance posterior is scaled by 40/11") {
        Pga u = insurance_unnormalized();
        Pga n = normalize(u);
        for (std::size_t q = 0; q < u.num_states(); ++q) CHECK(n.initial(q) == u.initial(q) * Rational(40, 11));
        CHECK(mass(n) == ExtRational(1));
    }
    SUBCASE("mass one is left alone") {
        Pga g = fixture::geometric(kX, 0, Rational(1, 3));
        CHECK(normalize(g) == g);
    }
    SUBCASE("zero and infinite mass are rejected") {
        PgaBuilder b(kX);
        b.add_state(1, 0);
        CHECK_THROWS_AS(normalize(b.build()), ZeroMass);
        CHECK_THROWS_AS(normalize(self_loop(1, 1)), InfiniteMass);
    }
}

TEST_CASE("path enumeration") {
    SUBCASE("dirac(2)") {
        auto paths = enumerate_paths(fixture::chain(kX, 0, 2), 3);
        REQUIRE(paths.size() == 1);
        CHECK(paths[0].weight == 1);
        CHECK(paths[0].parikh == val({2}));
        CHECK(paths[0].states == std::vector<StateId>{0, 1, 2});
    }
    SUBCASE("geometric(1/2) up to three states") {
        auto table = aggregate_paths(enumerate_paths(fixture::geometric(kX, 0, Rational(1, 2)), 3));
        CHECK(table.size() == 3);
        CHECK(table[val({0})] == Rational(1, 2));
        CHECK(table[val({1})] == Rational(1, 4));
        CHECK(table[val({2})] == Rational(1, 8));
    }
    SUBCASE("bernoulli(1/4)") {
        PgaBuilder b(kX);
        b.add_state(1, Rational(3, 4));
        b.add_state(0, 1);
        b.add_edge(0, 1, Rational(1, 4), 0);
        auto table = aggregate_paths(enumerate_paths(b.build(), 2));
        CHECK(table[val({0})] == Rational(3, 4));
        CHECK(table[val({1})] == Rational(1, 4));
    }
    SUBCASE("paths sum to the coefficient on acyclic automata") {
        gen::Random rng(8);
        gen::PgaShape shape;
        shape.cycle_letters.clear();
        for (int round = 0; round < 100; ++round) {
            Pga a = gen::random_pga(rng, kXY, shape);
            auto table = aggregate_paths(enumerate_paths(a, a.num_states()));
            for (const auto& v : oracle::box(oracle::uniform_bound(2, 4))) CHECK(table[v] == coefficient(a, v));
        }
    }
    SUBCASE("longer paths tighten the lower bound on cyclic automata") {
        gen::Random rng(9);
        for (int round = 0; round < 40; ++round) {
            Pga a = gen::random_pga(rng, kXY);
            auto shorter = aggregate_paths(enumerate_paths(a, 5));
            auto longer = aggregate_paths(enumerate_paths(a, 9));
            for (const auto& v : oracle::box(oracle::uniform_bound(2, 2))) {
                Rational exact = coefficient(a, v);
                CHECK(shorter[v] <= longer[v]);
                CHECK(longer[v] <= exact);
            }
        }
        Pga g = fixture::geometric(kX, 0, Rational(1, 2));
        auto table = aggregate_paths(enumerate_paths(g, 40));
        CHECK(table[val({39})] == coefficient(g, val({39})));
    }
}

TEST_CASE("serialization") {
    PgaBuilder b(kX);
    b.add_state(1, Rational(3, 4));
    b.add_state(0, 1);
    b.add_edge(0, 1, Rational(1, 4), 0);
    Pga bern = b.build();

    SUBCASE("round trip") {
        CHECK(deserialize(serialize(bern)) == bern);
        gen::Random rng(3);
        for (int round = 0; round < 50; ++round) {
            Pga a = gen::random_pga(rng, kXY);
            CHECK(deserialize(serialize(a)) == a);
        }
    }
    SUBCASE("weights are fraction strings") {
        std::string text = serialize(bern);
        CHECK(text.find("\"1/4\"") != std::string::npos);
        CHECK(text.find("0.25") == std::string::npos);
    }
    SUBCASE("negative weights") {
        const char* text = R"({"alphabet":["x"],"states":1,"edges":[],"initial":{"0":"-1/2"},"final":{"0":"1"}})";
        CHECK_THROWS_AS(deserialize(text), InvalidWeight);
    }
    SUBCASE("states out of range") {
        const char* text = R"({"alphabet":["x"],"states":2,"edges":[{"src":0,"dst":99,"weight":"1"}],"initial":{"0":"1"},"final":{"1":"1"}})";
        CHECK_THROWS_AS(deserialize(text), ParseError);
    }
    SUBCASE("unknown symbols and malformed documents") {
        CHECK_THROWS_AS(deserialize(R"({"alphabet":["x"],"states":1,"edges":[{"src":0,"dst":0,"weight":"1/2","symbol":"z"}],"initial":{"0":"1"},"final":{"0":"1/2"}})"),
                        ParseError);
        CHECK_THROWS_AS(deserialize("{"), ParseError);
        CHECK_THROWS_AS(deserialize(R"({"alphabet":["x"]})"), ParseError);
    }
    SUBCASE("missing files") { CHECK_THROWS_AS(load_pga("/nonexistent/prior.json"), IoError); }
}

TEST_CASE("DOT export") {
    SUBCASE("dirac(1)") {
        std::string dot = export_dot(fixture::chain(kX, 0, 1));
        CHECK(dot.rfind("digraph", 0) == 0);
        CHECK(dot.find("q0 -> q1 [label=\"x\"]") != std::string::npos);
        CHECK(dot.find("in0 -> q0;") != std::string::npos);
        CHECK(dot.find("q1 -> out1;") != std::string::npos);
    }
    SUBCASE("geometric(1/2)") {
        std::string dot = export_dot(fixture::geometric(kX, 0, Rational(1, 2)));
        CHECK(dot.find("q0 -> q0 [label=\"1/2·x\"]") != std::string::npos);
        CHECK(dot.find("label=\"1/2\"") != std::string::npos);
    }
    SUBCASE("empty behavior") {
        PgaBuilder b(kX);
        b.add_state(1, 0);
        std::string dot = export_dot(b.build());
        CHECK(dot.rfind("digraph", 0) == 0);
        CHECK(dot.back() == '\n');
        CHECK(dot.find("}") != std::string::npos);
    }
}
