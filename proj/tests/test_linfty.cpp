#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "superkoszul/linfty.hpp"
#include "test_util.hpp"

using namespace superkoszul;
using sktest::chart_r2;
using sktest::chart_r21;
using sktest::random_series;

namespace {

// [P,P] = 0 by inspection: every term repeats xs_x2 or lacks base overlap.
SuperSeries cubic_tensor(const SuperChart& ch) {
    return ch.var("x1") * ch.var("xs_x1") * ch.var("xs_x2") +
           ch.var("x1") * ch.var("th") * ch.var("xs_x2") +
           ch.var("x1") * ch.var("xs_th") * ch.var("xs_th") * ch.var("th") * ch.var("xs_x2");
}

BracketFamily p_family(const SuperChart& ch, SuperSeries P) {
    return BracketFamily{std::move(P), ch.ps_pitstar(), BracketFlavor::P_infinity};
}

}  // namespace

TEST_CASE("derived brackets of a quadratic tensor reproduce its matrix") {
    auto ch = chart_r2();
    // P = x1 xs1 xs2: {x1,x2} = x1 pattern up to the structure signs
    SuperSeries P = ch.var("x1") * ch.var("xs_x1") * ch.var("xs_x2");
    auto fam = p_family(ch, P);
    fam.validate();
    CHECK(fam.bracket({}).is_zero());  // P_0 = 0
    CHECK(fam.bracket({ch.constant(3), ch.constant(5)}).is_zero());
    SuperSeries b12 = fam.bracket({ch.var("x1"), ch.var("x2")});
    SuperSeries b21 = fam.bracket({ch.var("x2"), ch.var("x1")});
    CHECK(b12 == -b21);  // binary bracket on even args is antisymmetric
    // nonzero and proportional to x1 with a rational factor
    CHECK(!b12.is_zero());
    CHECK(b12.restrict_to_zero({ch.x[0]}).is_zero());
    // arguments must be base functions
    CHECK_THROWS_AS(fam.bracket({ch.var("xs_x1")}), ArgumentError);
}

TEST_CASE("arity zero returns the restricted master") {
    auto ch = chart_r2();
    SuperSeries P = ch.var("x1") * ch.var("x2") + ch.var("x1") * ch.var("xs_x1") * ch.var("xs_x2");
    auto fam = p_family(ch, P);
    CHECK(fam.bracket({}) == ch.var("x1") * ch.var("x2"));
}

TEST_CASE("flavor constraints are validated") {
    auto ch = chart_r2();
    BracketFamily bad{ch.var("xs_x1"), ch.ps_pitstar(), BracketFlavor::P_infinity};
    CHECK_THROWS_AS(bad.validate(), ParityError);
    BracketFamily bad2{ch.var("x1") * ch.var("xs_x1") * ch.var("xs_x2"), ch.ps_tstar(),
                       BracketFlavor::P_infinity};
    CHECK_THROWS_AS(bad2.validate(), PhaseSpaceError);
}

TEST_CASE("derived brackets flip with the structure signs") {
    auto ch = chart_r21();
    std::mt19937_64 eng(53);
    std::vector<int> base = {ch.x[0], ch.x[1], ch.x[2]};
    std::vector<int> svars = {ch.x[0], ch.x[1], ch.x[2], ch.xstar[0], ch.xstar[1], ch.xstar[2]};
    std::vector<int> pvars = {ch.x[0], ch.x[1], ch.x[2], ch.p[0], ch.p[1], ch.p[2]};
    for (int trial = 0; trial < 10; ++trial) {
        SuperSeries P = random_series(ch, svars, 0, 3, 4, eng);
        BracketFamily fam{P, ch.ps_pitstar(), BracketFlavor::P_infinity};
        SuperSeries H = random_series(ch, pvars, 1, 3, 4, eng);
        BracketFamily sam{H, ch.ps_tstar(), BracketFlavor::S_infinity};
        SuperSeries u = random_series(ch, base, trial % 2, 2, 2, eng);
        SuperSeries v = random_series(ch, base, (trial / 2) % 2, 2, 2, eng);
        SuperSeries w = random_series(ch, base, 0, 2, 2, eng);
        if (u.is_zero() || v.is_zero()) continue;
        int s = (u.parity() * v.parity()) & 1;
        // antisymmetric version: flip of adjacent args gives -(-1)^{uv}
        SuperSeries lhs = fam.bracket({w, u, v});
        SuperSeries rhs = fam.bracket({w, v, u});
        CHECK(lhs == (s ? rhs : -rhs));
        // symmetric version: flip gives +(-1)^{uv}
        SuperSeries lhs2 = sam.bracket({w, u, v});
        SuperSeries rhs2 = sam.bracket({w, v, u});
        CHECK(lhs2 == (s ? -rhs2 : rhs2));
    }
}

TEST_CASE("generalized Jacobi holds iff the master equation holds") {
    auto ch = chart_r21();
    auto ps = ch.ps_pitstar();
    SuperSeries P = cubic_tensor(ch);
    REQUIRE(canonical_schouten(P, P, ps, SchoutenConvention::redefined).is_zero());
    auto fam = p_family(ch, P);
    std::vector<SuperSeries> args = {ch.var("x1"), ch.var("x2"), ch.var("th"), ch.var("x1")};
    Report rep = verify_generalized_jacobi(fam, 4, args);
    CHECK(rep.all_pass());
    CHECK(rep.checks.size() == 5);

    // violator: [P,P] != 0 must break at least one identity; the broken
    // direction is x2, so lead with it
    SuperSeries V = ch.var("xs_x1") * ch.var("xs_x2") + ch.var("x1");
    REQUIRE(!canonical_schouten(V, V, ps, SchoutenConvention::redefined).is_zero());
    std::vector<SuperSeries> args2 = {ch.var("x2"), ch.var("x1"), ch.var("x2"), ch.var("th")};
    Report bad = verify_generalized_jacobi(p_family(ch, V), 4, args2);
    CHECK(!bad.all_pass());
}

TEST_CASE("symmetric-version Jacobi for an odd master") {
    auto ch = chart_r21();
    // H odd, cubic; (H,H) = 0 because H has no th dependence and the
    // x1 direction never meets a d/dp_x1 factor
    SuperSeries H = ch.var("p_th") + ch.var("x1") * ch.var("p_x2") * ch.var("p_th");
    REQUIRE(canonical_poisson(H, H, ch.ps_tstar()).is_zero());
    BracketFamily sam{H, ch.ps_tstar(), BracketFlavor::S_infinity};
    std::vector<SuperSeries> args = {ch.var("x1"), ch.var("th"), ch.var("x1") * ch.var("x2"),
                                     ch.var("x2")};
    CHECK(verify_generalized_jacobi(sam, 4, args).all_pass());
}

TEST_CASE("parity-shift sign") {
    CHECK(parity_shift_exponent({}) == 0);
    CHECK(parity_shift_exponent({1}) == 0);               // n=1: no sign
    CHECK(parity_shift_exponent({0, 0}) == 0);            // [Pu,Pv] = Pi[u,v] for even u
    CHECK(parity_shift_exponent({1, 0}) == 1);            // (-1)^{u} with odd u
    CHECK(parity_shift_exponent({1, 1, 0}) == 1);         // 2*1 + 1*1 = 3
    for (auto dir : {ShiftDirection::to_symmetric, ShiftDirection::to_antisymmetric})
        CHECK(parity_shift_sign({1, 0, 1}, dir) == 1);    // 2*1 + 0 + 0 = 2
    // round trip composes two equal signs
    std::mt19937_64 eng(59);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<int> par;
        for (int k = 0; k < 1 + trial % 4; ++k) par.push_back(static_cast<int>(eng() % 2));
        int there = parity_shift_sign(par, ShiftDirection::to_symmetric);
        int back = parity_shift_sign(par, ShiftDirection::to_antisymmetric);
        CHECK(there * back == 1);
    }
}

TEST_CASE("Q squared verification") {
    auto ch = make_chart({{"x", 0}, {"xi", 1}}, {});
    int x = ch.x[0], xi = ch.x[1];

    HomologicalField good{{ch.ctx, {{x, ch.var(xi)}}, 1}, {x}, {xi}};
    CHECK(verify_Q_squared(good).all_pass());
    CHECK(good.is_homological);

    HomologicalField bad{{ch.ctx, {{x, ch.var(xi)}, {xi, ch.var(x)}}, 1}, {x}, {xi}};
    Report rep = verify_Q_squared(bad);
    CHECK(!rep.all_pass());
    CHECK(!bad.is_homological);
    // the failure shows up in the d/dx slot
    for (auto& c : rep.checks)
        if (c.name == "Q^2/x") CHECK(!c.pass);

    HomologicalField zero{{ch.ctx, {}, 1}, {x}, {xi}};
    CHECK(verify_Q_squared(zero).all_pass());
}

TEST_CASE("algebroid anchor and bracket from a homological field") {
    auto ch = make_chart({{"x", 0}, {"xi1", 1}, {"xi2", 1}}, {});
    int x = ch.x[0], xi1 = ch.x[1], xi2 = ch.x[2];
    HomologicalField H{{ch.ctx, {}, 1}, {x}, {xi1, xi2}};
    // weight decomposition: anchor terms xi^i Q_i^a(x) d/dx and a
    // quadratic bracket term xi xi c d/dxi
    H.Q.components[x] = ch.var(xi1) * ch.var("x") + ch.var(xi2);
    H.Q.components[xi1] = ch.var(xi1) * ch.var(xi2) * ch.var("x");

    // unary anchor: a_1(u)(f) matches u^i Q_i^a d_a f up to the pinned sign
    Section u{{{xi1, ch.var("x")}, {xi2, ch.constant(2)}}, 0};
    SuperSeries f = ch.var("x") * ch.var("x");
    AlgebroidValue val = algebroid_from_Q(H, {u}, f);
    // compare to an independent expansion of the commutator
    VectorFieldRepr iu = iota(u, H);
    VectorFieldRepr c1 = commutator(H.Q, iu);
    SuperSeries expected(ch.ctx, ch.trunc);
    expected += c1.components.at(x).restrict_to_zero({xi1, xi2}) * f.left_derivative(x);
    CHECK(val.anchor_of_f == expected);

    // binary Leibniz rule in the last slot
    std::mt19937_64 eng(61);
    for (int trial = 0; trial < 8; ++trial) {
        int up = trial % 2, vp = (trial / 2) % 2, fp = (trial / 4) % 2;
        auto mk = [&](int par) {
            Section s;
            s.parity = par;
            // component parity of u^i: par + parity(e_i); e_i parity = xi parity + 1 = 0
            s.components[xi1] = random_series(ch, {x}, par, 2, 2, eng);
            s.components[xi2] = random_series(ch, {x}, par, 2, 2, eng);
            return s;
        };
        Section uu = mk(up), vv = mk(vp);
        SuperSeries g = random_series(ch, {x}, fp, 2, 2, eng);
        if (g.is_zero()) continue;
        Section gv;
        gv.parity = (vp + fp) & 1;
        for (auto& [i, comp] : vv.components) gv.components[i] = g * comp;

        AlgebroidValue lhs = algebroid_from_Q(H, {uu, gv}, f);
        AlgebroidValue a1 = algebroid_from_Q(H, {uu}, g);
        AlgebroidValue uv = algebroid_from_Q(H, {uu, vv}, f);
        // [u, g v] = a_1(u)(g) v + (-1)^{g(n+1+u)} g [u,v], n = 1
        int s = (fp * (2 + up)) & 1;
        for (int i : {xi1, xi2}) {
            SuperSeries left = lhs.bracket.components.count(i) ? lhs.bracket.components.at(i)
                                                               : ch.zero();
            SuperSeries t1 = a1.anchor_of_f * vv.components.at(i);
            SuperSeries t2 = uv.bracket.components.count(i) ? g * uv.bracket.components.at(i)
                                                            : ch.zero();
            CHECK(left == t1 + (s ? -t2 : t2));
        }
    }
}

TEST_CASE("sections must be weight minus one") {
    auto ch = make_chart({{"x", 0}, {"xi", 1}}, {});
    HomologicalField H{{ch.ctx, {}, 1}, {ch.x[0]}, {ch.x[1]}};
    Section bad{{{ch.x[1], ch.var("xi") * ch.var("xi")}}, 0};
    Section bad2{{{ch.x[1], ch.var("x") * ch.var("xi")}}, 0};
    CHECK_THROWS_AS(iota(bad2, H), ArgumentError);
    (void)bad;
}

TEST_CASE("function-space Hamiltonian field") {
    auto ch = chart_r21();
    auto big = ch.ps_tstar_pitstar();
    SuperSeries S = canonical_master_hamiltonian(big, ch.trunc);
    std::mt19937_64 eng(67);
    std::vector<int> svars = {ch.x[0], ch.x[1], ch.x[2], ch.xstar[0], ch.xstar[1], ch.xstar[2]};
    for (int trial = 0; trial < 10; ++trial) {
        SuperSeries sigma = random_series(ch, svars, 0, 3, 4, eng);
        SuperSeries qs = hamiltonian_field_on_functions(S, sigma, big);
        SuperSeries half_bracket =
            canonical_schouten(sigma, sigma, ch.ps_pitstar()) * Rational(1, 2);
        CHECK(qs == half_bracket);
    }
    // a master linear in momenta acts as the underlying vector field
    VectorFieldRepr X{ch.ctx, {{ch.x[0], ch.var("x2")}, {ch.x[1], ch.var("x1") * ch.var("x1")}}, 0};
    SuperSeries HX = lift_vector_field(X, ch.ps_tstar());
    for (int trial = 0; trial < 5; ++trial) {
        SuperSeries w = random_series(ch, {ch.x[0], ch.x[1], ch.x[2]}, 0, 3, 3, eng);
        CHECK(hamiltonian_field_on_functions(HX, w, ch.ps_tstar()) == X.apply(w));
    }
    // constants restrict the master to the base
    SuperSeries Hm = ch.var("x1") * ch.var("p_x1") + ch.var("x2");
    CHECK(hamiltonian_field_on_functions(Hm, ch.constant(4), ch.ps_tstar()) == ch.var("x2"));
}

TEST_CASE("nilpotency of the function-space field under the master equation") {
    auto ch = chart_r21();
    SuperSeries P = cubic_tensor(ch);
    auto ps = ch.ps_pitstar();
    REQUIRE(canonical_schouten(P, P, ps, SchoutenConvention::redefined).is_zero());
    // for the odd phase space the conjugates of x are the antimomenta;
    // Q omega = P(x, d omega/d x) via the same substitution rule
    std::mt19937_64 eng(71);
    for (int trial = 0; trial < 6; ++trial) {
        // odd w: the antimomentum slots of P demand parity a+1 values
        SuperSeries w = random_series(ch, {ch.x[0], ch.x[1], ch.x[2]}, 1, 3, 3, eng);
        SuperSeries qw = hamiltonian_field_on_functions(P, w, ps);
        // directional derivative of Q along itself at w, via an odd increment
        SuperSeries tau = ch.var(ch.tau);
        SuperSeries shifted = hamiltonian_field_on_functions(P, w + tau * qw, ps);
        SuperSeries linear = shifted.left_derivative(ch.tau);
        CHECK(linear.is_zero());
    }
}
