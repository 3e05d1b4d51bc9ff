#pragma once

#include "superkoszul/koszul.hpp"

namespace superkoszul {

enum class ThickFlavor { even_thick, odd_thick };

/// Thick morphism between two phase-space charts, specified by a
/// generating function S = S(source coords, target momenta). Stored as
/// a formal expansion near the zero section of the target momenta.
struct GeneratingFunction {
    SuperSeries S;
    PhaseSpace source;
    PhaseSpace target;
    ThickFlavor flavor = ThickFlavor::even_thick;

    void validate() const;
};

/// Nonlinear pullback: solves q_i = dg/dy^i(y), y^i = (-1)^{i} dS/dq_i
/// by fixed-point iteration (with an exact linear solve as fallback
/// when the feedback is degree-preserving but affine), then evaluates
/// g(y) + S(x,q) - y^i q_i. Throws IterationError when the system is
/// not solvable at the configured truncation.
SuperSeries thick_pullback(const GeneratingFunction& gf, const SuperSeries& g,
                           int max_passes = 48);

/// Residual of the Hamilton-Jacobi condition
/// H_source(x, dS/dx) - H_target(dS/dq, q); zero iff the morphism
/// intertwines the two master Hamiltonians.
Report hamilton_jacobi_check(const GeneratingFunction& gf, const SuperSeries& H_source,
                             const SuperSeries& H_target);

/// Fiberwise (possibly nonlinear) map of vector bundles over the fixed
/// base: each target fiber variable is an expression in the base
/// coordinates and the source fiber variables.
struct NonlinearFiberwiseMap {
    std::vector<int> source_fiber;
    std::map<int, SuperSeries> exprs;  // target fiber var -> expression
};

/// Adjoint thick morphism of a fiberwise map: exchanges fiber
/// coordinates and conjugate momenta in the generating function,
/// S* = x^a p_a + sum_i F^i(x, fiber -> dual momenta) * (dual coord).
/// Supported fiber families: the chart's x* and dx duals.
GeneratingFunction adjoint_of_fiberwise_map(const SuperChart& ch,
                                            const NonlinearFiberwiseMap& F);

/// The anchor as a fiberwise map Pi T*M -> Pi TM:
/// dx^a = (-1)^{a} dP/dx*_a(x, x*).
NonlinearFiberwiseMap anchor_map(const HomotopyPoissonStructure& hp);

/// Sign slots of the direct form-to-multivector formulas; the defaults
/// are the configuration pinned by the route-equivalence and
/// morphism-condition oracles. `middle` is the slot the sign-mutation
/// scenario flips.
struct SolutionSigns {
    int omega = 1;
    int middle = 1;
    int last = -1;
    int substitution = 1;
};

/// Direct route: sigma(x,x*) = omega + dP/dx*_a(x, dw/ddx) x*_a
/// - dx^a dw/ddx^a, with dx eliminated by iterating
/// dx^a = d2P/dx*_a dx*_b(x, dw/ddx) x*_b.
SuperSeries koszul_to_schouten_map(const HomotopyPoissonStructure& hp, const SuperSeries& omega,
                                   const SolutionSigns& signs = {}, int max_passes = 48);

/// Independent route: thick pullback along the adjoint of the anchor.
SuperSeries koszul_to_schouten_via_pullback(const HomotopyPoissonStructure& hp,
                                            const SuperSeries& omega);

/// Morphism condition at function-space level, per sample: the
/// directional derivative of the map at omega along the Koszul
/// homological field sum_n 1/n! [omega,...,omega] (computed with a
/// nilpotent odd increment tau) must equal the Schouten homological
/// field at the image.
Report verify_linfty_morphism(const HomotopyPoissonStructure& hp,
                              const std::vector<SuperSeries>& samples,
                              const SolutionSigns& signs = {});

/// Hamilton-Jacobi condition for the adjoint of the anchor,
/// intertwining the Schouten master on the source side with the
/// Koszul master K on the target side.
Report hamilton_jacobi_for_adjoint_anchor(const HomotopyPoissonStructure& hp);

}  // namespace superkoszul
