#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "superkoszul/microformal.hpp"
#include "test_util.hpp"

using namespace superkoszul;
using sktest::chart_r21;

namespace {

std::map<std::string, int> desk_caps() {
    return {{"xstar", 6}, {"dx", 6}, {"mom", 6}};
}

SuperSeries quadratic_tensor(const SuperChart& ch) {
    return ch.var("x1") * ch.var("xs_x1") * ch.var("xs_x2");
}

SuperSeries cubic_tensor(const SuperChart& ch) {
    return quadratic_tensor(ch) + ch.var("x1") * ch.var("th") * ch.var("xs_x2") +
           ch.var("x1") * ch.var("xs_th") * ch.var("xs_th") * ch.var("th") * ch.var("xs_x2");
}

SuperSeries quartic_tensor(const SuperChart& ch) {
    return ch.var("x1") * ch.var("xs_th") * ch.var("xs_th") * ch.var("xs_x1") * ch.var("xs_x2");
}

HomotopyPoissonStructure validated(const SuperChart& ch, SuperSeries P) {
    HomotopyPoissonStructure hp{ch, std::move(P)};
    REQUIRE(hp.validate().all_pass());
    return hp;
}

// even test forms, including ones that feed the arity-3 and arity-4
// parts of the morphism condition
std::vector<SuperSeries> sample_forms(const SuperChart& ch) {
    return {
        ch.zero(),
        ch.var("dx_x1") * ch.var("dx_x2") + ch.var("x1") * ch.var("x2"),
        ch.var("th") * ch.var("dx_x1") + ch.var("x2") * ch.var("dx_x1") * ch.var("dx_x2"),
        ch.var("x2") * ch.var("dx_th") + ch.var("th") * ch.var("dx_x2") +
            ch.var("x1") * ch.var("x1"),
        ch.var("x1") * ch.var("dx_th") + ch.var("th") * ch.var("dx_x1") +
            ch.var("x1") * ch.var("x2"),
        ch.var("dx_th") * ch.var("dx_th") + ch.var("x2") * ch.var("dx_th") +
            ch.var("th") * ch.var("dx_x1") + ch.var("th") * ch.var("dx_x2") +
            ch.var("x1") * ch.var("x2"),
        // couples a dx^2 term with x-dependent dx_th terms; sensitive to
        // the mixed-parity ordering of the second-derivative matrix
        ch.var("dx_x1") * ch.var("dx_x2") + ch.var("x1") * ch.var("dx_th"),
        ch.constant(Rational(3, 2)) + ch.constant(3) * ch.var("dx_x1") * ch.var("dx_x2") -
            ch.var("x1") * ch.var("x2") * ch.var("dx_th"),
    };
}

// one-dimensional thick-morphism playground: source coordinate x1 with
// momentum p_x1, target coordinate x2 with momentum p_x2
GeneratingFunction line_morphism(const SuperChart& ch, SuperSeries S) {
    PhaseSpace src{ch.ctx, {{ch.x[0], ch.p[0]}}, BracketParity::even};
    PhaseSpace tgt{ch.ctx, {{ch.x[1], ch.p[1]}}, BracketParity::even};
    return {std::move(S), std::move(src), std::move(tgt), ThickFlavor::even_thick};
}

}  // namespace

TEST_CASE("generating functions are validated") {
    auto ch = chart_r21(desk_caps());
    SuperSeries q = ch.var("p_x2");

    // depends on a variable that is neither source coord nor target momentum
    CHECK_THROWS_AS(thick_pullback(line_morphism(ch, ch.var("x2") * q), ch.var("x2")),
                    ArgumentError);
    // odd S with the even flavor
    CHECK_THROWS_AS(thick_pullback(line_morphism(ch, ch.var("th") * q * q), ch.var("x2")),
                    ParityError);
    // argument must live on the target base
    CHECK_THROWS_AS(thick_pullback(line_morphism(ch, ch.var("x1") * q), ch.var("x1")),
                    ArgumentError);
}

TEST_CASE("pullback of ordinary and identity morphisms") {
    auto ch = chart_r21(desk_caps());
    SuperSeries q = ch.var("p_x2");

    // identity: S = x q
    auto id = line_morphism(ch, ch.var("x1") * q);
    SuperSeries g = ch.var("x2") * ch.var("x2") + ch.constant(3) * ch.var("x2");
    CHECK(thick_pullback(id, g) == ch.var("x1") * ch.var("x1") + ch.constant(3) * ch.var("x1"));

    // ordinary map y = phi(x): S = phi(x) q pulls back to g(phi)
    auto phi = line_morphism(ch, ch.var("x1") * ch.var("x1") * q);
    SuperSeries x1sq = ch.var("x1") * ch.var("x1");
    CHECK(thick_pullback(phi, g) == x1sq * x1sq + ch.constant(3) * x1sq);

    // linear-in-q pullback is an algebra homomorphism
    SuperSeries h = ch.var("x2") + ch.constant(1);
    CHECK(thick_pullback(phi, g * h) == thick_pullback(phi, g) * thick_pullback(phi, h));
}

TEST_CASE("genuinely thick pullback and the nonlinearity witness") {
    auto ch = chart_r21(desk_caps());
    SuperSeries q = ch.var("p_x2");
    auto gf = line_morphism(ch, ch.var("x1") * q + q * q * ch.constant(Rational(1, 2)));

    // y = x + q and q = 2y close at y = -x; value checked by hand
    SuperSeries g = ch.var("x2") * ch.var("x2");
    CHECK(thick_pullback(gf, g) == -ch.var("x1") * ch.var("x1"));

    // the quadratic term breaks multiplicativity
    SuperSeries lin = ch.var("x2");
    SuperSeries both = thick_pullback(gf, lin * lin);
    SuperSeries each = thick_pullback(gf, lin) * thick_pullback(gf, lin);
    CHECK(thick_pullback(gf, lin) == ch.var("x1") + ch.constant(Rational(1, 2)));
    CHECK(!(both == each));

    // degree-preserving feedback with a unit eigenvalue has no solution
    auto singular = gf;
    CHECK_THROWS_AS(thick_pullback(singular, g * ch.constant(Rational(1, 2))), IterationError);
}

TEST_CASE("hamilton-jacobi check on explicit morphisms") {
    auto ch = chart_r21(desk_caps());
    SuperSeries q = ch.var("p_x2");

    // identity intertwines any Hamiltonian with its own copy
    auto id = line_morphism(ch, ch.var("x1") * q);
    SuperSeries H1 = ch.var("x1") * ch.var("p_x1") + ch.var("p_x1") * ch.var("p_x1");
    SuperSeries H2 = ch.var("x2") * ch.var("p_x2") + ch.var("p_x2") * ch.var("p_x2");
    CHECK(hamilton_jacobi_check(id, H1, H2).all_pass());

    // linear map y = 2x intertwines (1/2) x p^2 with y q^2
    auto dbl = line_morphism(ch, ch.constant(2) * ch.var("x1") * q);
    SuperSeries Ha = ch.constant(Rational(1, 2)) * ch.var("x1") * ch.var("p_x1") * ch.var("p_x1");
    SuperSeries Hb = ch.var("x2") * ch.var("p_x2") * ch.var("p_x2");
    CHECK(hamilton_jacobi_check(dbl, Ha, Hb).all_pass());

    // perturbing S leaves a visible residual
    auto perturbed = line_morphism(ch, ch.constant(2) * ch.var("x1") * q + q * q);
    CHECK(!hamilton_jacobi_check(perturbed, Ha, Hb).all_pass());
}

TEST_CASE("adjoint of a fiberwise map") {
    auto ch = chart_r21(desk_caps());

    // anchor of a quadratic tensor: the classical raising-indices
    // generating function x p + dP/dx*(x, pi) x*
    auto hp = validated(ch, quadratic_tensor(ch));
    GeneratingFunction gf = adjoint_of_fiberwise_map(ch, anchor_map(hp));
    SuperSeries expect = ch.zero();
    for (int a = 0; a < ch.dim(); ++a)
        expect += ch.var(ch.x[static_cast<size_t>(a)]) * ch.var(ch.p[static_cast<size_t>(a)]);
    expect += ch.var("x1") * ch.var("pi_x2") * ch.var("xs_x1") -
              ch.var("x1") * ch.var("pi_x1") * ch.var("xs_x2");
    CHECK(gf.S == expect);
    CHECK(gf.flavor == ThickFlavor::even_thick);

    // maps must be fixed-base and use the chart's fiber families
    NonlinearFiberwiseMap moving{ch.xstar, {{ch.dx[0], ch.var("xs_x1") * ch.var("dx_x2")}}};
    CHECK_THROWS_AS(adjoint_of_fiberwise_map(ch, moving), UnsupportedError);
    NonlinearFiberwiseMap stray{{ch.p[0]}, {}};
    CHECK_THROWS_AS(adjoint_of_fiberwise_map(ch, stray), UnsupportedError);
}

TEST_CASE("form-to-multivector map: basics and degeneration") {
    auto ch = chart_r21(desk_caps());
    auto hq = validated(ch, quadratic_tensor(ch));

    // no dx dependence: the correction terms vanish
    CHECK(koszul_to_schouten_map(hq, ch.var("x1") * ch.var("x2")) ==
          ch.var("x1") * ch.var("x2"));

    // argument checks
    CHECK_THROWS_AS(koszul_to_schouten_map(hq, ch.var("th") * ch.var("dx_th")), ParityError);
    CHECK_THROWS_AS(koszul_to_schouten_map(hq, ch.var("xs_x1") * ch.var("xs_x2")),
                    ArgumentError);

    // quadratic degeneration: the nonlinear map collapses to the
    // anchor pullback on every sample
    for (auto& w : sample_forms(ch))
        CHECK(koszul_to_schouten_map(hq, w) == anchor_pullback(hq, w));
}

TEST_CASE("route equivalence: direct formulas vs adjoint pullback") {
    auto ch = chart_r21(desk_caps());
    for (auto P : {quadratic_tensor(ch), cubic_tensor(ch), quartic_tensor(ch)}) {
        auto hp = validated(ch, P);
        for (auto& w : sample_forms(ch)) {
            CAPTURE(w.str());
            CHECK(koszul_to_schouten_map(hp, w) == koszul_to_schouten_via_pullback(hp, w));
        }
    }
}

TEST_CASE("hamilton-jacobi condition for the adjoint anchor") {
    auto ch = chart_r21(desk_caps());
    for (auto P : {quadratic_tensor(ch), cubic_tensor(ch), quartic_tensor(ch)})
        CHECK(hamilton_jacobi_for_adjoint_anchor(validated(ch, P)).all_pass());

    // a perturbed Koszul master breaks the condition
    auto hp = validated(ch, cubic_tensor(ch));
    GeneratingFunction gf = adjoint_of_fiberwise_map(ch, anchor_map(hp));
    SuperSeries K = koszul_master_hamiltonian(hp);
    SuperSeries Shat = canonical_master_hamiltonian(ch.ps_tstar_pitstar(), ch.trunc);
    CHECK(!hamilton_jacobi_check(gf, Shat, K + ch.var("x1") * ch.var("p_x1")).all_pass());
}

TEST_CASE("the map is a morphism of the homological fields") {
    auto ch = chart_r21(desk_caps());
    for (auto P : {quadratic_tensor(ch), cubic_tensor(ch), quartic_tensor(ch)}) {
        auto hp = validated(ch, P);
        auto report = verify_linfty_morphism(hp, sample_forms(ch));
        for (auto& c : report.checks) {
            CAPTURE(c.name);
            CAPTURE(c.residual_sample);
            CHECK(c.pass);
        }
    }
}

TEST_CASE("the morphism check is sign-sensitive") {
    auto ch = chart_r21(desk_caps());
    SolutionSigns flipped;
    flipped.middle = -1;
    for (auto P : {quadratic_tensor(ch), cubic_tensor(ch)}) {
        auto hp = validated(ch, P);
        CHECK(!verify_linfty_morphism(hp, sample_forms(ch), flipped).all_pass());
    }
}
