#pragma once

#include <string>
#include <vector>

#include "superkoszul/series.hpp"

namespace superkoszul {

enum class BracketParity { even, odd };

/// Chart description pairing coordinates with their conjugate
/// (anti)momenta. bracket_parity = even models T*N, odd models Pi T*N.
struct PhaseSpace {
    ContextPtr ctx;
    std::vector<std::pair<int, int>> pairs;  // (coordinate var, momentum var)
    BracketParity bracket_parity = BracketParity::even;

    void validate() const;
    std::vector<int> coords() const;
    std::vector<int> momenta() const;
};

/// All the charts the bracket calculus needs, over one base (x^a):
/// antimomenta x*_a, form differentials dx^a, momenta p_a, secondary
/// momenta pi_a (conjugate to x*_a on T*(Pi T*M) and to dx^a on
/// T*(Pi TM) -- same parity either way), antimomenta ps^a of p_a on
/// Pi T*(T*M), and an auxiliary odd parameter tau.
///
/// One shared context keeps the canonical odd order global, so series
/// move freely between the iterated spaces.
struct SuperChart {
    ContextPtr ctx;
    TruncationPolicy trunc;
    std::vector<int> x, xstar, dx, p, pi, pstar;
    int tau = -1;

    int dim() const { return static_cast<int>(x.size()); }
    int base_parity(int a) const { return ctx->parity(x[static_cast<size_t>(a)]); }

    SuperSeries zero() const { return SuperSeries::zero(ctx, trunc); }
    SuperSeries constant(const Rational& c) const { return SuperSeries::constant(ctx, trunc, c); }
    SuperSeries var(int idx) const { return SuperSeries::variable(ctx, trunc, idx); }
    SuperSeries var(const std::string& name) const { return SuperSeries::variable(ctx, trunc, name); }

    // Pi T*M: coordinates x, antimomenta x*
    PhaseSpace ps_pitstar() const;
    // T*M: coordinates x, momenta p
    PhaseSpace ps_tstar() const;
    // T*(Pi T*M): coordinates (x, x*), momenta (p, pi)
    PhaseSpace ps_tstar_pitstar() const;
    // T*(Pi TM): coordinates (x, dx), momenta (p, pi)
    PhaseSpace ps_tstar_pitm() const;
    // Pi T*(T*M): coordinates (x, p), antimomenta (x*, ps)
    PhaseSpace ps_pitstar_tstar() const;

    /// de Rham differential applied to a form: dx^a * d(omega)/dx^a.
    SuperSeries de_rham(const SuperSeries& omega) const;
};

/// Builds the shared chart. base = list of (name, parity); derived
/// variable names are xs_<name>, dx_<name>, p_<name>, pi_<name>,
/// ps_<name>. Gradings "xstar", "dx", "mom" are registered, with the
/// caps taken from `caps` (missing entries mean unbounded).
SuperChart make_chart(const std::vector<std::pair<std::string, int>>& base,
                      const std::map<std::string, int>& caps);

}  // namespace superkoszul
