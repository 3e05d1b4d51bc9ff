#pragma once

#include <functional>

#include "superkoszul/brackets.hpp"
#include "superkoszul/report.hpp"

namespace superkoszul {

enum class BracketFlavor { P_infinity, S_infinity };

/// Family of n-ary derived brackets of a master Hamiltonian.
/// P_infinity: even master on an odd phase space, iterated redefined
/// Schouten brackets; S_infinity: odd master on an even phase space,
/// iterated canonical Poisson brackets. In both cases the result is
/// restricted to the base (momenta set to zero).
struct BracketFamily {
    SuperSeries master;
    PhaseSpace ps;
    BracketFlavor flavor;

    void validate() const;
    /// n-ary bracket; n = args.size(), n = 0 returns master|_M.
    SuperSeries bracket(const std::vector<SuperSeries>& args) const;
    bool antisymmetric() const { return flavor == BracketFlavor::P_infinity; }
};

using BracketFn = std::function<SuperSeries(const std::vector<SuperSeries>&)>;

/// Exponent eps = sum_k u_k(n-k) (k = 1..n) of the parity-shift sign
/// relating antisymmetric brackets on L and symmetric ones on Pi L.
int parity_shift_exponent(const std::vector<int>& parities);

enum class ShiftDirection { to_symmetric, to_antisymmetric };

/// The sign (+1/-1) applied to an n-bracket value when transporting it
/// across the parity shift; parities are those of the unshifted
/// (L-side) arguments, so the round trip composes to the identity.
int parity_shift_sign(const std::vector<int>& parities, ShiftDirection direction);

/// Generalized Jacobi residuals for every arity n <= max_arity, using
/// the first n of test_args (with their parities) per identity.
/// The antisymmetric version carries the extra (-1)^{rs} sign sigma.
Report verify_generalized_jacobi(const BracketFn& bracket, bool antisymmetric, int max_arity,
                                 const std::vector<SuperSeries>& test_args);
Report verify_generalized_jacobi(const BracketFamily& fam, int max_arity,
                                 const std::vector<SuperSeries>& test_args);

/// Odd vector field on a fibered chart: base x^a, fiber xi^i.
struct HomologicalField {
    VectorFieldRepr Q;
    std::vector<int> base_vars;
    std::vector<int> fiber_vars;
    bool is_homological = false;
};

/// Residual of [Q,Q] per component; flips is_homological on full pass.
Report verify_Q_squared(HomologicalField& H);

/// Section of the underlying bundle: u = u^i(x) e_i.
struct Section {
    std::map<int, SuperSeries> components;  // fiber variable -> u^i(x)
    int parity = 0;
};

/// The odd isomorphism iota(u) = (-1)^{u} u^i d/dxi^i.
VectorFieldRepr iota(const Section& u, const HomologicalField& H);

/// n-ary bracket of sections and n-ary anchor applied to f, extracted
/// from the weight -1 and weight 0 projections of the iterated
/// commutator with Q, with the shared parity-shift sign.
struct AlgebroidValue {
    Section bracket;
    SuperSeries anchor_of_f;
};
AlgebroidValue algebroid_from_Q(const HomologicalField& H, const std::vector<Section>& sections,
                                const SuperSeries& f);

/// The homotopy structure as an odd field on the function space:
/// substitutes each momentum of ps by the right derivative of omega
/// with respect to its conjugate coordinate.
SuperSeries hamiltonian_field_on_functions(const SuperSeries& master, const SuperSeries& omega,
                                           const PhaseSpace& ps);

}  // namespace superkoszul
