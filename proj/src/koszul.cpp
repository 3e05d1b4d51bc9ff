#include "superkoszul/koszul.hpp"

namespace superkoszul {

namespace {

std::vector<int> non_multivector_vars(const SuperChart& ch) {
    std::vector<int> vars;
    for (auto& family : {ch.dx, ch.p, ch.pi, ch.pstar})
        vars.insert(vars.end(), family.begin(), family.end());
    if (ch.tau >= 0) vars.push_back(ch.tau);
    return vars;
}

std::vector<int> non_base_vars(const SuperChart& ch) {
    std::vector<int> vars = non_multivector_vars(ch);
    vars.insert(vars.end(), ch.xstar.begin(), ch.xstar.end());
    return vars;
}

}  // namespace

Report HomotopyPoissonStructure::validate() {
    if (!P.is_zero() && !P.is_even())
        throw ParityError("a homotopy Poisson tensor must be even");
    if (!(P == P.restrict_to_zero(non_multivector_vars(chart))))
        throw ArgumentError("a homotopy Poisson tensor must be a function of (x, x*) only");
    Report report;
    report.add("master/[P,P]",
               canonical_schouten(P, P, chart.ps_pitstar(), SchoutenConvention::redefined));
    validated = report.all_pass();
    return report;
}

void HomotopyPoissonStructure::require_validated() const {
    if (!validated) throw StateError("homotopy Poisson structure has not passed validation");
}

SuperSeries koszul_master_hamiltonian(const HomotopyPoissonStructure& hp) {
    hp.require_validated();
    const SuperChart& ch = hp.chart;
    std::map<int, SuperSeries> to_pi;
    for (int a = 0; a < ch.dim(); ++a)
        to_pi.emplace(ch.xstar[static_cast<size_t>(a)], ch.var(ch.pi[static_cast<size_t>(a)]));
    SuperSeries K = ch.zero();
    for (int a = 0; a < ch.dim(); ++a) {
        K += ch.var(ch.dx[static_cast<size_t>(a)]) *
             hp.P.left_derivative(ch.x[static_cast<size_t>(a)]).substitute(to_pi);
        SuperSeries t = hp.P.left_derivative(ch.xstar[static_cast<size_t>(a)]).substitute(to_pi) *
                        ch.var(ch.p[static_cast<size_t>(a)]);
        K += ch.base_parity(a) ? -t : t;
    }
    return K;
}

BracketFamily higher_koszul_family(const HomotopyPoissonStructure& hp) {
    return {koszul_master_hamiltonian(hp), hp.chart.ps_tstar_pitm(), BracketFlavor::S_infinity};
}

SuperSeries higher_koszul_bracket(const HomotopyPoissonStructure& hp,
                                  const std::vector<SuperSeries>& forms) {
    return higher_koszul_family(hp).bracket(forms);
}

BracketFamily homotopy_poisson_family(const HomotopyPoissonStructure& hp) {
    hp.require_validated();
    return {hp.P, hp.chart.ps_pitstar(), BracketFlavor::P_infinity};
}

SuperSeries koszul_bracket_oracle(const HomotopyPoissonStructure& hp,
                                  const std::vector<GeneratorArg>& args) {
    hp.require_validated();
    const SuperChart& ch = hp.chart;
    int n = static_cast<int>(args.size());
    if (n == 0) throw ArgumentError("the closed formulas cover arity >= 1 only");

    std::vector<int> fpar, formpar;
    std::vector<int> nonbase = non_base_vars(ch);
    for (auto& a : args) {
        if (!(a.f == a.f.restrict_to_zero(nonbase)))
            throw ArgumentError("generator arguments must be built from functions of x only");
        int p = a.f.parity();
        if (p < 0) throw ParityError("generator arguments must be parity-homogeneous");
        fpar.push_back(p);
        formpar.push_back(a.differential ? (p + 1) & 1 : p);
    }

    int k = 0;
    for (auto& a : args)
        if (!a.differential) ++k;
    if (k == n && n >= 2) return ch.zero();
    if (k >= 2) return ch.zero();

    BracketFamily pfam = homotopy_poisson_family(hp);
    if (k == n) return pfam.bracket({args[0].f});  // n == 1: [f] = {f}_P

    // move the lone undifferentiated function (if any) to the front,
    // collecting the symmetric flip sign (+(-1)^{uu'} per adjacent swap)
    int flips = 0;
    std::vector<SuperSeries> fs;
    std::vector<int> par;
    if (k == 1) {
        size_t j = 0;
        while (args[j].differential) ++j;
        for (size_t i = 0; i < j; ++i) flips += formpar[j] * formpar[i];
        fs.push_back(args[j].f);
        par.push_back(fpar[j]);
        for (size_t i = 0; i < args.size(); ++i)
            if (i != j) {
                fs.push_back(args[i].f);
                par.push_back(fpar[i]);
            }
    } else {
        for (size_t i = 0; i < args.size(); ++i) {
            fs.push_back(args[i].f);
            par.push_back(fpar[i]);
        }
    }

    // arity constant pinned against the K-derived route: (n-1)(n-2)/2,
    // the reordering sign of the n-1 or n-2 momentum factors
    int eps = parity_shift_exponent(par) + (n - 1) * (n - 2) / 2;
    SuperSeries inner = pfam.bracket(fs);
    SuperSeries value = (k == 1) ? inner : ch.de_rham(inner);
    if ((eps + (k == 1 ? 0 : 1) + flips) & 1) value = -value;
    return value;
}

SuperSeries lichnerowicz(const HomotopyPoissonStructure& hp, const SuperSeries& sigma) {
    hp.require_validated();
    return canonical_schouten(hp.P, sigma, hp.chart.ps_pitstar(), SchoutenConvention::redefined);
}

SuperSeries anchor_pullback(const HomotopyPoissonStructure& hp, const SuperSeries& omega) {
    hp.require_validated();
    const SuperChart& ch = hp.chart;
    std::map<int, SuperSeries> sub;
    for (int a = 0; a < ch.dim(); ++a) {
        SuperSeries d = hp.P.left_derivative(ch.xstar[static_cast<size_t>(a)]);
        sub.emplace(ch.dx[static_cast<size_t>(a)], ch.base_parity(a) ? -d : d);
    }
    return omega.substitute(sub);
}

Report verify_diagram(const HomotopyPoissonStructure& hp,
                      const std::vector<SuperSeries>& test_forms) {
    hp.require_validated();
    Report report;
    for (size_t i = 0; i < test_forms.size(); ++i) {
        SuperSeries lhs = anchor_pullback(hp, hp.chart.de_rham(test_forms[i]));
        SuperSeries rhs = lichnerowicz(hp, anchor_pullback(hp, test_forms[i]));
        report.add("diagram/" + std::to_string(i), lhs - rhs);
    }
    return report;
}

}  // namespace superkoszul
