#include "superkoszul/brackets.hpp"

namespace superkoszul {

namespace {

// Both canonical brackets share the shape
//   sum_a s1(a) dF/dm_a * dG/dc_a - s2(a) dF/dc_a * dG/dm_a
// with signs depending on the parity of the homogeneous first argument.
SuperSeries bracket_homogeneous(const SuperSeries& F, const SuperSeries& G, const PhaseSpace& ps,
                                bool odd_bracket) {
    int fp = F.parity();
    SuperSeries out(F.context(), F.truncation());
    for (auto& [c, m] : ps.pairs) {
        int a = ps.ctx->parity(c);
        int s1, s2;
        if (odd_bracket) {
            s1 = ((fp + 1) * (a + 1)) & 1;
            s2 = ((fp + 1) * a) & 1;
        } else {
            s1 = (fp * a + a) & 1;
            s2 = (fp * a) & 1;
        }
        SuperSeries t1 = F.left_derivative(m) * G.left_derivative(c);
        SuperSeries t2 = F.left_derivative(c) * G.left_derivative(m);
        out += (s1 ? -t1 : t1) - (s2 ? -t2 : t2);
    }
    return out;
}

SuperSeries bracket_split(const SuperSeries& F, const SuperSeries& G, const PhaseSpace& ps,
                          bool odd_bracket, bool redefine) {
    SuperSeries out(F.context(), F.truncation());
    for (int p : {0, 1}) {
        SuperSeries part = F.parity_part(p);
        if (part.is_zero()) continue;
        SuperSeries b = bracket_homogeneous(part, G, ps, odd_bracket);
        if (redefine && ((p + 1) & 1)) b = -b;
        out += b;
    }
    return out;
}

}  // namespace

SuperSeries canonical_poisson(const SuperSeries& H, const SuperSeries& G, const PhaseSpace& ps) {
    if (ps.bracket_parity != BracketParity::even)
        throw PhaseSpaceError("canonical Poisson bracket needs an even phase space");
    ps.validate();
    return bracket_split(H, G, ps, /*odd_bracket=*/false, /*redefine=*/false);
}

SuperSeries canonical_schouten(const SuperSeries& P, const SuperSeries& R, const PhaseSpace& ps,
                               SchoutenConvention convention) {
    if (ps.bracket_parity != BracketParity::odd)
        throw PhaseSpaceError("canonical Schouten bracket needs an odd phase space");
    ps.validate();
    return bracket_split(P, R, ps, /*odd_bracket=*/true,
                         convention == SchoutenConvention::redefined);
}

void VectorFieldRepr::validate() const {
    for (auto& [v, comp] : components) {
        if (comp.is_zero()) continue;
        if (!comp.is_homogeneous() || comp.parity() != ((parity + ctx->parity(v)) & 1))
            throw ParityError("vector field component parity mismatch at " + ctx->var(v).name);
    }
}

SuperSeries VectorFieldRepr::apply(const SuperSeries& f) const {
    SuperSeries out(f.context(), f.truncation());
    for (auto& [v, comp] : components) out += comp * f.left_derivative(v);
    return out;
}

VectorFieldRepr commutator(const VectorFieldRepr& X, const VectorFieldRepr& Y) {
    VectorFieldRepr Z{X.ctx, {}, (X.parity + Y.parity) & 1};
    int s = (X.parity * Y.parity) & 1;
    auto add = [&Z](int v, const SuperSeries& comp) {
        auto it = Z.components.find(v);
        if (it == Z.components.end())
            Z.components.emplace(v, comp);
        else
            it->second += comp;
    };
    for (auto& [v, yc] : Y.components) add(v, X.apply(yc));
    for (auto& [v, xc] : X.components) {
        SuperSeries t = Y.apply(xc);
        add(v, s ? t : -t);
    }
    return Z;
}

SuperSeries lift_vector_field(const VectorFieldRepr& X, const PhaseSpace& ps) {
    SuperSeries out;
    bool init = false;
    for (auto& [c, m] : ps.pairs) {
        auto it = X.components.find(c);
        if (it == X.components.end()) continue;
        if (!init) {
            out = SuperSeries(it->second.context(), it->second.truncation());
            init = true;
        }
        SuperSeries term = it->second * SuperSeries::variable(it->second.context(),
                                                              it->second.truncation(), m);
        if (ps.bracket_parity == BracketParity::odd && (X.parity & 1)) term = -term;
        out += term;
    }
    if (!init) throw ArgumentError("lift of a vector field with no components on this chart");
    return out;
}

SuperSeries canonical_master_hamiltonian(const PhaseSpace& ps_double,
                                         const TruncationPolicy& trunc) {
    ps_double.validate();
    std::size_t n2 = ps_double.pairs.size();
    if (n2 == 0 || n2 % 2 != 0)
        throw PhaseSpaceError("iterated phase space must pair a base with its fiber");
    std::size_t n = n2 / 2;
    const auto& ctx = *ps_double.ctx;
    auto chk_ctx = ps_double.ctx;
    SuperSeries out(chk_ctx, trunc);
    for (std::size_t a = 0; a < n; ++a) {
        auto [c1, m1] = ps_double.pairs[a];
        auto [c2, m2] = ps_double.pairs[n + a];
        VarRole fiber_role = ctx.var(c2).role;
        if (ps_double.bracket_parity == BracketParity::even) {
            if (fiber_role != VarRole::odd_antimomentum)
                throw PhaseSpaceError("even iterated space must have antimomentum fiber coordinates");
            SuperSeries term = SuperSeries::variable(chk_ctx, trunc, m2) *
                               SuperSeries::variable(chk_ctx, trunc, m1);
            out += ctx.parity(c1) ? -term : term;
        } else {
            if (fiber_role != VarRole::even_momentum)
                throw PhaseSpaceError("odd iterated space must have momentum fiber coordinates");
            // (-1)^{a} x*_a ps^a: the normalization making the double-bracket
            // identity reproduce (H,G) with left derivatives throughout
            SuperSeries term = SuperSeries::variable(chk_ctx, trunc, m1) *
                               SuperSeries::variable(chk_ctx, trunc, m2);
            out += ctx.parity(c1) ? -term : term;
        }
    }
    return out;
}

}  // namespace superkoszul
