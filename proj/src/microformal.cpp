#include "superkoszul/microformal.hpp"

#include <functional>

namespace superkoszul {

namespace {

using Assignment = std::map<int, SuperSeries>;
using StepFn = std::function<Assignment(const Assignment&)>;

bool same_assignment(const Assignment& a, const Assignment& b) {
    for (auto& [v, s] : a) {
        auto it = b.find(v);
        if (it == b.end() ? !s.is_zero() : !(s == it->second)) return false;
    }
    for (auto& [v, s] : b)
        if (!a.count(v) && !s.is_zero()) return false;
    return true;
}

/// Solves y = step(y) over the given unknowns. Plain iteration first;
/// if the feedback is degree-preserving (iteration does not settle) the
/// system is re-solved exactly under the assumption that the step is
/// affine in the unknowns, via Gaussian elimination on the monomial
/// closure; the candidate is verified by substitution either way.
Assignment solve_fixed_point(const std::vector<int>& unknowns, const ContextPtr& ctx,
                             const TruncationPolicy& trunc, const StepFn& step, int max_passes) {
    Assignment y;
    for (int v : unknowns) y.emplace(v, SuperSeries::zero(ctx, trunc));
    for (int pass = 0; pass < max_passes; ++pass) {
        Assignment next = step(y);
        if (same_assignment(next, y)) return y;
        y = std::move(next);
    }

    // affine fallback: y = a + T(y) with T built on the monomial closure
    using Key = std::pair<int, Monomial>;
    Assignment zero;
    for (int v : unknowns) zero.emplace(v, SuperSeries::zero(ctx, trunc));
    Assignment a = step(zero);

    std::vector<Key> basis;
    std::map<Key, std::size_t> index;
    auto intern = [&](const Key& k) {
        auto it = index.find(k);
        if (it != index.end()) return it->second;
        std::size_t i = basis.size();
        basis.push_back(k);
        index.emplace(k, i);
        return i;
    };
    for (auto& [v, s] : a)
        for (auto& [m, c] : s.terms()) intern({v, m});

    constexpr std::size_t kMaxBasis = 512;
    std::vector<std::map<std::size_t, Rational>> columns;  // T action per basis element
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (basis.size() > kMaxBasis)
            throw IterationError("fixed-point system does not close at this truncation");
        Assignment probe = zero;
        SuperSeries unit = SuperSeries::zero(ctx, trunc);
        unit.add_term(basis[i].second, 1);
        probe.at(basis[i].first) += unit;
        Assignment image = step(probe);
        std::map<std::size_t, Rational> col;
        for (auto& [v, s] : image) {
            SuperSeries diff = s - a.at(v);
            for (auto& [m, c] : diff.terms()) col.emplace(intern({v, m}), c);
        }
        columns.push_back(std::move(col));
    }

    // dense solve of (I - T) c = a
    std::size_t n = basis.size();
    std::vector<std::vector<Rational>> mat(n, std::vector<Rational>(n + 1, 0));
    for (std::size_t i = 0; i < n; ++i) mat[i][i] = 1;
    for (std::size_t j = 0; j < columns.size(); ++j)
        for (auto& [i, c] : columns[j]) mat[i][j] -= c;
    for (std::size_t i = 0; i < n; ++i)
        mat[i][n] = a.at(basis[i].first).coefficient(basis[i].second);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && mat[pivot][col] == 0) ++pivot;
        if (pivot == n) throw IterationError("degenerate fixed-point system");
        std::swap(mat[col], mat[pivot]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || mat[r][col] == 0) continue;
            Rational f = mat[r][col] / mat[col][col];
            f.canonicalize();
            for (std::size_t cc = col; cc <= n; ++cc) {
                mat[r][cc] -= f * mat[col][cc];
                mat[r][cc].canonicalize();
            }
        }
    }
    Assignment sol = zero;
    for (std::size_t i = 0; i < n; ++i) {
        Rational c = mat[i][n] / mat[i][i];
        c.canonicalize();
        if (c != 0) {
            SuperSeries term = SuperSeries::zero(ctx, trunc);
            term.add_term(basis[i].second, c);
            sol.at(basis[i].first) += term;
        }
    }
    if (!same_assignment(step(sol), sol))
        throw IterationError("fixed-point iteration did not converge");
    return sol;
}

std::vector<int> pullback_forbidden_vars(const GeneratingFunction& gf) {
    std::vector<int> tgt_coords = gf.target.coords();
    auto is_target_coord = [&](int v) {
        for (int c : tgt_coords)
            if (c == v) return true;
        return false;
    };
    std::vector<int> out;
    auto push = [&](int v) {
        if (!is_target_coord(v)) out.push_back(v);
    };
    for (auto& [c, m] : gf.source.pairs) {
        push(c);
        push(m);
    }
    for (auto& [c, m] : gf.target.pairs) push(m);
    return out;
}

}  // namespace

void GeneratingFunction::validate() const {
    source.validate();
    target.validate();
    // S = S(source coords, target momenta)
    std::vector<int> forbidden;
    auto allowed = [&](int v) {
        for (auto& [c, m] : source.pairs)
            if (c == v) return true;
        for (auto& [c, m] : target.pairs)
            if (m == v) return true;
        return false;
    };
    for (auto& [c, m] : source.pairs)
        if (!allowed(m)) forbidden.push_back(m);
    for (auto& [c, m] : target.pairs)
        if (!allowed(c)) forbidden.push_back(c);
    if (!(S == S.restrict_to_zero(forbidden)))
        throw ArgumentError("generating function must depend on source coords and target momenta only");
    if (flavor == ThickFlavor::even_thick) {
        if (!S.is_zero() && !S.is_even()) throw ParityError("even thick morphism needs an even S");
        if (target.bracket_parity != BracketParity::even)
            throw PhaseSpaceError("even thick morphism targets cotangent-type momenta");
    } else {
        if (!S.is_zero() && !S.is_odd()) throw ParityError("odd thick morphism needs an odd S");
        if (target.bracket_parity != BracketParity::odd)
            throw PhaseSpaceError("odd thick morphism targets anticotangent-type fiber variables");
    }
}

SuperSeries thick_pullback(const GeneratingFunction& gf, const SuperSeries& g, int max_passes) {
    gf.validate();
    if (!(g == g.restrict_to_zero(pullback_forbidden_vars(gf))))
        throw ArgumentError("pullback argument must be a function on the target base");
    int want = (gf.flavor == ThickFlavor::even_thick) ? 0 : 1;
    if (!g.is_zero() && g.parity() != want)
        throw ParityError("pullback argument parity must match the thick-morphism flavor");

    const ContextPtr& ctx = gf.S.context();
    auto momenta_of = [&](const Assignment& y) {
        Assignment q;
        for (auto& [c, m] : gf.target.pairs) q.emplace(m, g.left_derivative(c).substitute(y));
        return q;
    };
    StepFn step = [&](const Assignment& y) {
        Assignment q = momenta_of(y);
        Assignment next;
        for (auto& [c, m] : gf.target.pairs) {
            SuperSeries e = gf.S.left_derivative(m).substitute(q);
            next.emplace(c, ctx->parity(c) ? -e : e);
        }
        return next;
    };
    Assignment y =
        solve_fixed_point(gf.target.coords(), ctx, gf.S.truncation(), step, max_passes);
    Assignment q = momenta_of(y);
    SuperSeries result = g.substitute(y) + gf.S.substitute(q);
    for (auto& [c, m] : gf.target.pairs) result -= y.at(c) * q.at(m);
    return result;
}

Report hamilton_jacobi_check(const GeneratingFunction& gf, const SuperSeries& H_source,
                             const SuperSeries& H_target) {
    gf.validate();
    // momenta and coordinates are both read off as right derivatives of S
    Assignment sub_src;
    for (auto& [c, m] : gf.source.pairs) sub_src.emplace(m, gf.S.right_derivative(c));
    Assignment sub_tgt;
    for (auto& [c, m] : gf.target.pairs) sub_tgt.emplace(c, gf.S.right_derivative(m));
    Report report;
    report.add("hamilton-jacobi", H_source.substitute(sub_src) - H_target.substitute(sub_tgt));
    return report;
}

GeneratingFunction adjoint_of_fiberwise_map(const SuperChart& ch, const NonlinearFiberwiseMap& F) {
    auto family_index = [&](const std::vector<int>& family, int v) {
        for (std::size_t a = 0; a < family.size(); ++a)
            if (family[a] == v) return static_cast<int>(a);
        return -1;
    };
    bool to_forms = true;  // source fiber x*, target fiber dx
    for (int v : F.source_fiber) {
        if (family_index(ch.xstar, v) >= 0) continue;
        if (family_index(ch.dx, v) >= 0) {
            to_forms = false;
            continue;
        }
        throw UnsupportedError("adjoint supports the chart's x*/dx fiber families only");
    }
    // expressions may depend on the base and the source fiber only
    std::vector<int> banned;
    for (int v = 0; v < static_cast<int>(ch.ctx->size()); ++v) {
        if (family_index(ch.x, v) >= 0 || family_index(F.source_fiber, v) >= 0) continue;
        banned.push_back(v);
    }
    Assignment to_mu;
    for (int v : F.source_fiber) {
        int a = to_forms ? family_index(ch.xstar, v) : family_index(ch.dx, v);
        to_mu.emplace(v, ch.var(ch.pi[static_cast<size_t>(a)]));
    }
    SuperSeries S = ch.zero();
    for (int a = 0; a < ch.dim(); ++a)
        S += ch.var(ch.x[static_cast<size_t>(a)]) * ch.var(ch.p[static_cast<size_t>(a)]);
    for (auto& [i, expr] : F.exprs) {
        int a = to_forms ? family_index(ch.dx, i) : family_index(ch.xstar, i);
        if (a < 0) throw UnsupportedError("adjoint supports the chart's x*/dx fiber families only");
        if (!(expr == expr.restrict_to_zero(banned)))
            throw UnsupportedError("adjoint requires a fixed-base fiberwise map");
        int dual = to_forms ? ch.xstar[static_cast<size_t>(a)] : ch.dx[static_cast<size_t>(a)];
        SuperSeries term = expr.substitute(to_mu) * ch.var(dual);
        S += term;
    }
    GeneratingFunction gf{std::move(S),
                          to_forms ? ch.ps_tstar_pitstar() : ch.ps_tstar_pitm(),
                          to_forms ? ch.ps_tstar_pitm() : ch.ps_tstar_pitstar(),
                          ThickFlavor::even_thick};
    gf.validate();
    return gf;
}

NonlinearFiberwiseMap anchor_map(const HomotopyPoissonStructure& hp) {
    hp.require_validated();
    const SuperChart& ch = hp.chart;
    NonlinearFiberwiseMap F{ch.xstar, {}};
    for (int a = 0; a < ch.dim(); ++a) {
        SuperSeries d = hp.P.left_derivative(ch.xstar[static_cast<size_t>(a)]);
        F.exprs.emplace(ch.dx[static_cast<size_t>(a)], ch.base_parity(a) ? -d : d);
    }
    return F;
}

SuperSeries koszul_to_schouten_map(const HomotopyPoissonStructure& hp, const SuperSeries& omega,
                                   const SolutionSigns& signs, int max_passes) {
    hp.require_validated();
    const SuperChart& ch = hp.chart;
    if (!omega.is_zero() && !omega.is_even())
        throw ParityError("the form-to-multivector map acts on even forms");
    std::vector<int> banned;
    for (auto& family : {ch.xstar, ch.p, ch.pi, ch.pstar})
        banned.insert(banned.end(), family.begin(), family.end());
    if (!(omega == omega.restrict_to_zero(banned)))
        throw ArgumentError("the argument must be a form omega(x, dx)");

    int n = ch.dim();
    // second-derivative matrix in the order and with the parity signs
    // induced by the adjoint generating function, so the closed formula
    // agrees with the thick pullback on mixed-parity charts
    std::vector<std::vector<SuperSeries>> D;
    for (int a = 0; a < n; ++a) {
        std::vector<SuperSeries> row;
        for (int b = 0; b < n; ++b) {
            SuperSeries d2 = hp.P.left_derivative(ch.xstar[static_cast<size_t>(b)])
                                 .left_derivative(ch.xstar[static_cast<size_t>(a)]);
            int s = (ch.base_parity(a) + 1 + ch.base_parity(b)) & 1;
            row.push_back(s ? -d2 : d2);
        }
        D.push_back(std::move(row));
    }
    auto momenta_of = [&](const Assignment& E) {
        Assignment w;
        for (int b = 0; b < n; ++b)
            w.emplace(ch.xstar[static_cast<size_t>(b)],
                      omega.left_derivative(ch.dx[static_cast<size_t>(b)]).substitute(E));
        return w;
    };
    StepFn step = [&](const Assignment& E) {
        Assignment w = momenta_of(E);
        Assignment next;
        for (int a = 0; a < n; ++a) {
            SuperSeries e = ch.zero();
            for (int b = 0; b < n; ++b)
                e += D[static_cast<size_t>(a)][static_cast<size_t>(b)].substitute(w) *
                     ch.var(ch.xstar[static_cast<size_t>(b)]);
            next.emplace(ch.dx[static_cast<size_t>(a)],
                         signs.substitution < 0 ? -e : e);
        }
        return next;
    };
    std::vector<int> unknowns = ch.dx;
    Assignment E = solve_fixed_point(unknowns, ch.ctx, ch.trunc, step, max_passes);
    Assignment w = momenta_of(E);

    SuperSeries sigma = Rational(signs.omega) * omega.substitute(E);
    for (int a = 0; a < n; ++a) {
        // middle term carries the anchor's per-index parity sign
        Rational mid = Rational(signs.middle) * Rational(ch.base_parity(a) ? -1 : 1);
        sigma += mid *
                 (hp.P.left_derivative(ch.xstar[static_cast<size_t>(a)]).substitute(w) *
                  ch.var(ch.xstar[static_cast<size_t>(a)]));
        sigma += Rational(signs.last) *
                 (E.at(ch.dx[static_cast<size_t>(a)]) *
                  omega.left_derivative(ch.dx[static_cast<size_t>(a)]).substitute(E));
    }
    return sigma;
}

SuperSeries koszul_to_schouten_via_pullback(const HomotopyPoissonStructure& hp,
                                            const SuperSeries& omega) {
    return thick_pullback(adjoint_of_fiberwise_map(hp.chart, anchor_map(hp)), omega);
}

Report verify_linfty_morphism(const HomotopyPoissonStructure& hp,
                              const std::vector<SuperSeries>& samples,
                              const SolutionSigns& signs) {
    hp.require_validated();
    const SuperChart& ch = hp.chart;
    BracketFamily kfam = higher_koszul_family(hp);
    int arity_cap = kfam.master.max_grading_degree("mom");
    SuperSeries Shat = canonical_master_hamiltonian(ch.ps_tstar_pitstar(), ch.trunc);
    SuperSeries tau = ch.var(ch.tau);
    Report report;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const SuperSeries& omega = samples[i];
        // homological field of the Koszul family, as the exponential sum
        // of its derived brackets on the diagonal
        SuperSeries qk = ch.zero();
        Rational fact = 1;
        std::vector<SuperSeries> diag;
        for (int n = 1; n <= arity_cap; ++n) {
            diag.push_back(omega);
            fact *= n;
            qk += kfam.bracket(diag) * (Rational(1) / fact);
        }
        SuperSeries sigma = koszul_to_schouten_map(hp, omega, signs);
        SuperSeries sigma_t = koszul_to_schouten_map(hp, omega + tau * qk, signs);
        SuperSeries lhs = sigma_t.left_derivative(ch.tau);
        SuperSeries rhs = hamiltonian_field_on_functions(Shat, sigma, ch.ps_tstar_pitstar());
        report.add("linfty-morphism/" + std::to_string(i), lhs - rhs);
    }
    return report;
}

Report hamilton_jacobi_for_adjoint_anchor(const HomotopyPoissonStructure& hp) {
    hp.require_validated();
    const SuperChart& ch = hp.chart;
    GeneratingFunction gf = adjoint_of_fiberwise_map(ch, anchor_map(hp));
    SuperSeries K = koszul_master_hamiltonian(hp);
    SuperSeries Shat = canonical_master_hamiltonian(ch.ps_tstar_pitstar(), ch.trunc);
    return hamilton_jacobi_check(gf, Shat, K);
}

}  // namespace superkoszul
