#include "superkoszul/phase_space.hpp"

namespace superkoszul {

void PhaseSpace::validate() const {
    std::vector<bool> seen(static_cast<size_t>(ctx->size()), false);
    for (auto& [c, m] : pairs) {
        if (seen[static_cast<size_t>(c)] || seen[static_cast<size_t>(m)])
            throw PhaseSpaceError("phase-space pairing is not a bijection");
        seen[static_cast<size_t>(c)] = seen[static_cast<size_t>(m)] = true;
        int pc = ctx->parity(c), pm = ctx->parity(m);
        if (bracket_parity == BracketParity::even && pc != pm)
            throw PhaseSpaceError("even phase space needs momentum parity = coordinate parity");
        if (bracket_parity == BracketParity::odd && pc == pm)
            throw PhaseSpaceError("odd phase space needs opposite momentum parity");
    }
}

std::vector<int> PhaseSpace::coords() const {
    std::vector<int> out;
    for (auto& [c, m] : pairs) out.push_back(c);
    return out;
}

std::vector<int> PhaseSpace::momenta() const {
    std::vector<int> out;
    for (auto& [c, m] : pairs) out.push_back(m);
    return out;
}

PhaseSpace SuperChart::ps_pitstar() const {
    PhaseSpace ps{ctx, {}, BracketParity::odd};
    for (int a = 0; a < dim(); ++a) ps.pairs.emplace_back(x[a], xstar[a]);
    return ps;
}

PhaseSpace SuperChart::ps_tstar() const {
    PhaseSpace ps{ctx, {}, BracketParity::even};
    for (int a = 0; a < dim(); ++a) ps.pairs.emplace_back(x[a], p[a]);
    return ps;
}

PhaseSpace SuperChart::ps_tstar_pitstar() const {
    PhaseSpace ps{ctx, {}, BracketParity::even};
    for (int a = 0; a < dim(); ++a) ps.pairs.emplace_back(x[a], p[a]);
    for (int a = 0; a < dim(); ++a) ps.pairs.emplace_back(xstar[a], pi[a]);
    return ps;
}

PhaseSpace SuperChart::ps_tstar_pitm() const {
    PhaseSpace ps{ctx, {}, BracketParity::even};
    for (int a = 0; a < dim(); ++a) ps.pairs.emplace_back(x[a], p[a]);
    for (int a = 0; a < dim(); ++a) ps.pairs.emplace_back(dx[a], pi[a]);
    return ps;
}

PhaseSpace SuperChart::ps_pitstar_tstar() const {
    PhaseSpace ps{ctx, {}, BracketParity::odd};
    for (int a = 0; a < dim(); ++a) ps.pairs.emplace_back(x[a], xstar[a]);
    for (int a = 0; a < dim(); ++a) ps.pairs.emplace_back(p[a], pstar[a]);
    return ps;
}

SuperSeries SuperChart::de_rham(const SuperSeries& omega) const {
    SuperSeries out = zero();
    for (int a = 0; a < dim(); ++a) out += var(dx[a]) * omega.left_derivative(x[a]);
    return out;
}

SuperChart make_chart(const std::vector<std::pair<std::string, int>>& base,
                      const std::map<std::string, int>& caps) {
    auto ctx = std::make_shared<VariableContext>();
    SuperChart chart;
    for (auto& [name, parity] : base)
        chart.x.push_back(ctx->add_variable({name, parity, 0, VarRole::base}));
    for (auto& [name, parity] : base)
        chart.xstar.push_back(
            ctx->add_variable({"xs_" + name, (parity + 1) & 1, 1, VarRole::odd_antimomentum}));
    for (auto& [name, parity] : base)
        chart.dx.push_back(
            ctx->add_variable({"dx_" + name, (parity + 1) & 1, 1, VarRole::form_differential}));
    for (auto& [name, parity] : base)
        chart.p.push_back(ctx->add_variable({"p_" + name, parity, 1, VarRole::even_momentum}));
    for (auto& [name, parity] : base)
        chart.pi.push_back(
            ctx->add_variable({"pi_" + name, (parity + 1) & 1, 1, VarRole::even_momentum}));
    for (auto& [name, parity] : base)
        chart.pstar.push_back(
            ctx->add_variable({"ps_" + name, (parity + 1) & 1, 1, VarRole::odd_antimomentum}));
    chart.tau = ctx->add_variable({"tau", 1, 0, VarRole::auxiliary});

    ctx->register_grading("xstar");
    ctx->register_grading("dx");
    ctx->register_grading("mom");
    for (int v : chart.xstar) ctx->set_grading_weight("xstar", v, 1);
    for (int v : chart.dx) ctx->set_grading_weight("dx", v, 1);
    for (int v : chart.p) ctx->set_grading_weight("mom", v, 1);
    for (int v : chart.pi) ctx->set_grading_weight("mom", v, 1);
    for (int v : chart.pstar) ctx->set_grading_weight("mom", v, 1);

    chart.ctx = ctx;
    for (auto& [name, cap] : caps) {
        if (!ctx->has_grading(name)) throw ContextError("unknown grading in caps: " + name);
        chart.trunc.caps[name] = cap;
    }
    return chart;
}

}  // namespace superkoszul
