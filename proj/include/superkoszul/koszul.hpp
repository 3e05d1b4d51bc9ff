#pragma once

#include "superkoszul/linfty.hpp"

namespace superkoszul {

/// An even multivector P = P(x, x*) on Pi T*M with [P,P] = 0. The
/// master equation is checked, not assumed: constructions refuse to run
/// until validate() has passed.
struct HomotopyPoissonStructure {
    SuperChart chart;
    SuperSeries P;
    bool validated = false;

    /// Master-equation residual [P,P]; sets `validated` on pass.
    Report validate();
    void require_validated() const;
};

/// Master Hamiltonian of the higher Koszul brackets on T*(Pi TM):
/// K = dx^a dP/dx^a(x,pi) + (-1)^{a} dP/dpi_a(x,pi) p_a.
SuperSeries koszul_master_hamiltonian(const HomotopyPoissonStructure& hp);

/// K-derived symmetric bracket family on forms omega(x, dx).
BracketFamily higher_koszul_family(const HomotopyPoissonStructure& hp);
SuperSeries higher_koszul_bracket(const HomotopyPoissonStructure& hp,
                                  const std::vector<SuperSeries>& forms);

/// Homotopy brackets of functions {f_1,...,f_n}_P (P-derived family on
/// Pi T*M), the right-hand sides of the closed generator formulas.
BracketFamily homotopy_poisson_family(const HomotopyPoissonStructure& hp);

/// Generator argument of the closed-formula oracle: a function f(x) or
/// its differential df.
struct GeneratorArg {
    SuperSeries f;
    bool differential = false;
};

/// Closed-formula value of the higher Koszul bracket on generator
/// tuples: [f] = {f}_P, [f_1,...,f_k] = 0 for k >= 2,
/// [f_1,df_2,...,df_n] = (-1)^{eps} {f_1,...,f_n}_P,
/// [df_1,...,df_n] = (-1)^{eps+1} d{f_1,...,f_n}_P with
/// eps = (n-1)f_1 + (n-2)f_2 + ... + f_{n-1} + (n-1)(n-2)/2, extended to arbitrary
/// argument order by the symmetric flip sign. Independent of the
/// K-derived route on purpose.
SuperSeries koszul_bracket_oracle(const HomotopyPoissonStructure& hp,
                                  const std::vector<GeneratorArg>& args);

/// d_P sigma = [P, sigma] (redefined Schouten); squares to zero.
SuperSeries lichnerowicz(const HomotopyPoissonStructure& hp, const SuperSeries& sigma);

/// Pullback along the anchor Pi T*M -> Pi TM: substitutes
/// dx^a -> (-1)^{a} dP/dx*_a(x, x*) into the form.
SuperSeries anchor_pullback(const HomotopyPoissonStructure& hp, const SuperSeries& omega);

/// Exact check of a_P^* o d = d_P o a_P^* on each test form.
Report verify_diagram(const HomotopyPoissonStructure& hp,
                      const std::vector<SuperSeries>& test_forms);

}  // namespace superkoszul
