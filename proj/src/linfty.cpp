#include "superkoszul/linfty.hpp"

namespace superkoszul {

void BracketFamily::validate() const {
    ps.validate();
    if (flavor == BracketFlavor::P_infinity) {
        if (ps.bracket_parity != BracketParity::odd)
            throw PhaseSpaceError("P-infinity master must live on an odd phase space");
        if (!master.is_zero() && !master.is_even())
            throw ParityError("P-infinity master must be even");
    } else {
        if (ps.bracket_parity != BracketParity::even)
            throw PhaseSpaceError("S-infinity master must live on an even phase space");
        if (!master.is_zero() && !master.is_odd())
            throw ParityError("S-infinity master must be odd");
    }
}

SuperSeries BracketFamily::bracket(const std::vector<SuperSeries>& args) const {
    std::vector<int> momenta = ps.momenta();
    SuperSeries b = master;
    for (const auto& f : args) {
        if (!(f == f.restrict_to_zero(momenta)))
            throw ArgumentError("derived-bracket argument depends on momenta");
        b = (flavor == BracketFlavor::P_infinity)
                ? canonical_schouten(b, f, ps, SchoutenConvention::redefined)
                : canonical_poisson(b, f, ps);
    }
    return b.restrict_to_zero(momenta);
}

int parity_shift_exponent(const std::vector<int>& parities) {
    int n = static_cast<int>(parities.size());
    int eps = 0;
    for (int k = 0; k < n; ++k) eps += parities[static_cast<size_t>(k)] * (n - k - 1);
    return eps & 1;
}

int parity_shift_sign(const std::vector<int>& parities, ShiftDirection) {
    // the same sign both ways: the defining relation is solved for
    // either side with the same L-side parities
    return parity_shift_exponent(parities) ? -1 : 1;
}

namespace {

int require_parity(const SuperSeries& s) {
    int p = s.parity();
    if (p < 0) throw ParityError("generalized Jacobi arguments must be parity-homogeneous");
    return p;
}

}  // namespace

Report verify_generalized_jacobi(const BracketFn& bracket, bool antisymmetric, int max_arity,
                                 const std::vector<SuperSeries>& test_args) {
    if (max_arity < 0) throw ArgumentError("max_arity must be nonnegative");
    if (static_cast<int>(test_args.size()) < max_arity)
        throw ArgumentError("not enough test arguments for the requested arity");
    Report report;
    for (int n = 0; n <= max_arity; ++n) {
        std::vector<SuperSeries> u(test_args.begin(), test_args.begin() + n);
        std::vector<int> par;
        par.reserve(u.size());
        for (auto& s : u) par.push_back(require_parity(s));

        SuperSeries residual;
        bool first_term = true;
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            int r = __builtin_popcount(mask);
            int s = n - r;
            // permutation: chosen indices ascending, then the rest ascending
            std::vector<int> perm;
            for (int i = 0; i < n; ++i)
                if (mask & (1u << i)) perm.push_back(i);
            for (int i = 0; i < n; ++i)
                if (!(mask & (1u << i))) perm.push_back(i);
            int inversions = 0, koszul = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (perm[static_cast<size_t>(i)] > perm[static_cast<size_t>(j)]) {
                        ++inversions;
                        koszul += par[static_cast<size_t>(perm[static_cast<size_t>(i)])] *
                                  par[static_cast<size_t>(perm[static_cast<size_t>(j)])];
                    }
            int sign = koszul;
            if (antisymmetric) sign += r * s + inversions;

            std::vector<SuperSeries> inner_args;
            for (int i = 0; i < r; ++i) inner_args.push_back(u[static_cast<size_t>(perm[static_cast<size_t>(i)])]);
            SuperSeries inner = bracket(inner_args);
            std::vector<SuperSeries> outer_args = {inner};
            for (int i = r; i < n; ++i) outer_args.push_back(u[static_cast<size_t>(perm[static_cast<size_t>(i)])]);
            SuperSeries term = bracket(outer_args);
            if (sign & 1) term = -term;
            residual = first_term ? term : residual + term;
            first_term = false;
        }
        report.add("jacobi/n=" + std::to_string(n), residual);
    }
    return report;
}

Report verify_generalized_jacobi(const BracketFamily& fam, int max_arity,
                                 const std::vector<SuperSeries>& test_args) {
    fam.validate();
    return verify_generalized_jacobi(
        [&fam](const std::vector<SuperSeries>& args) { return fam.bracket(args); },
        fam.antisymmetric(), max_arity, test_args);
}

Report verify_Q_squared(HomologicalField& H) {
    if (H.Q.parity != 1) throw ParityError("a homological field must be odd");
    H.Q.validate();
    VectorFieldRepr QQ = commutator(H.Q, H.Q);
    Report report;
    for (auto& [v, comp] : QQ.components)
        report.add("Q^2/" + H.Q.ctx->var(v).name, comp);
    H.is_homological = report.all_pass();
    return report;
}

VectorFieldRepr iota(const Section& u, const HomologicalField& H) {
    VectorFieldRepr X{H.Q.ctx, {}, (u.parity + 1) & 1};
    for (auto& [v, comp] : u.components) {
        if (!(comp == comp.restrict_to_zero(H.fiber_vars)))
            throw ArgumentError("section components must depend on base coordinates only");
        X.components[v] = (u.parity & 1) ? -comp : comp;
    }
    return X;
}

AlgebroidValue algebroid_from_Q(const HomologicalField& H, const std::vector<Section>& sections,
                                const SuperSeries& f) {
    int n = static_cast<int>(sections.size());
    std::vector<int> par;
    for (auto& u : sections) par.push_back(u.parity & 1);
    int eps = parity_shift_exponent(par);

    VectorFieldRepr C = H.Q;
    for (auto& u : sections) C = commutator(C, iota(u, H));

    AlgebroidValue out;
    int wpar = n;
    for (int p : par) wpar += p;
    wpar &= 1;
    out.bracket.parity = wpar;
    // weight -1 projection: fiber components at fiber degree zero
    for (int v : H.fiber_vars) {
        auto it = C.components.find(v);
        if (it == C.components.end()) continue;
        SuperSeries comp = it->second.restrict_to_zero(H.fiber_vars);
        if (comp.is_zero()) continue;
        int sign = (eps + wpar) & 1;  // undo iota's (-1)^{w} and apply (-1)^{eps}
        out.bracket.components[v] = sign ? -comp : comp;
    }
    // weight 0 projection applied to f: base components at fiber degree zero
    SuperSeries acc(f.context(), f.truncation());
    for (int v : H.base_vars) {
        auto it = C.components.find(v);
        if (it == C.components.end()) continue;
        acc += it->second.restrict_to_zero(H.fiber_vars) * f.left_derivative(v);
    }
    out.anchor_of_f = (eps & 1) ? -acc : acc;
    return out;
}

SuperSeries hamiltonian_field_on_functions(const SuperSeries& master, const SuperSeries& omega,
                                           const PhaseSpace& ps) {
    if (!(omega == omega.restrict_to_zero(ps.momenta())))
        throw ArgumentError("the function-space argument must not depend on momenta");
    std::map<int, SuperSeries> assignment;
    for (auto& [c, m] : ps.pairs) assignment.emplace(m, omega.right_derivative(c));
    return master.substitute(assignment);
}

}  // namespace superkoszul
