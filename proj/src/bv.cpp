#include "superkoszul/bv.hpp"

namespace superkoszul {

FormOperator FormOperator::zero() { return {}; }

FormOperator FormOperator::multiplication(SuperSeries f) {
    FormOperator op;
    op.ctx_ = f.context();
    if (!f.is_zero()) op.words_.push_back({Factor{false, -1, std::move(f)}});
    return op;
}

FormOperator FormOperator::derivative(const SuperChart& ch, int var) {
    FormOperator op;
    op.ctx_ = ch.ctx;
    op.words_.push_back({Factor{true, var, {}}});
    return op;
}

int FormOperator::parity() const {
    if (words_.empty()) return 0;
    int result = -1;
    for (auto& word : words_) {
        int p = 0;
        for (auto& f : word) {
            if (f.derivative) {
                p ^= ctx_->parity(f.var);
            } else {
                int fp = f.mult.parity();
                if (fp < 0) throw ParityError("operator factor is parity-inhomogeneous");
                p ^= fp;
            }
        }
        if (result < 0) result = p;
        if (result != p) throw ParityError("operator is parity-inhomogeneous");
    }
    return result;
}

SuperSeries FormOperator::apply(const SuperSeries& omega) const {
    SuperSeries out = SuperSeries::zero(omega.context(), omega.truncation());
    for (auto& word : words_) {
        SuperSeries s = omega;
        for (auto it = word.rbegin(); it != word.rend(); ++it)
            s = it->derivative ? s.left_derivative(it->var) : it->mult * s;
        out += s;
    }
    return out;
}

FormOperator FormOperator::operator+(const FormOperator& o) const {
    FormOperator out = *this;
    if (!out.ctx_) out.ctx_ = o.ctx_;
    out.words_.insert(out.words_.end(), o.words_.begin(), o.words_.end());
    return out;
}

FormOperator FormOperator::operator-() const {
    FormOperator out = *this;
    for (auto& word : out.words_) {
        bool done = false;
        for (auto& f : word)
            if (!f.derivative) {
                f.mult = -f.mult;
                done = true;
                break;
            }
        if (!done) throw UnsupportedError("cannot negate a bare derivative word");
    }
    return out;
}

FormOperator FormOperator::operator-(const FormOperator& o) const { return *this + (-o); }

FormOperator FormOperator::operator*(const FormOperator& o) const {
    FormOperator out;
    out.ctx_ = ctx_ ? ctx_ : o.ctx_;
    for (auto& wa : words_)
        for (auto& wb : o.words_) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            out.words_.push_back(std::move(w));
        }
    return out;
}

FormOperator graded_commutator(const FormOperator& a, const FormOperator& b) {
    FormOperator ab = a * b;
    FormOperator ba = b * a;
    return (a.parity() & b.parity()) ? ab + ba : ab - ba;
}

FormOperator de_rham_operator(const SuperChart& ch) {
    FormOperator d = FormOperator::zero();
    for (int a = 0; a < ch.dim(); ++a)
        d = d + FormOperator::multiplication(ch.var(ch.dx[static_cast<size_t>(a)])) *
                    FormOperator::derivative(ch, ch.x[static_cast<size_t>(a)]);
    return d;
}

namespace {

int xstar_slot(const SuperChart& ch, int v) {
    for (std::size_t a = 0; a < ch.xstar.size(); ++a)
        if (ch.xstar[a] == v) return static_cast<int>(a);
    return -1;
}

}  // namespace

FormOperator interior_operator(const SuperChart& ch, const SuperSeries& P) {
    std::vector<int> banned;
    for (auto& family : {ch.dx, ch.p, ch.pi, ch.pstar}) banned.insert(banned.end(), family.begin(), family.end());
    if (ch.tau >= 0) banned.push_back(ch.tau);
    if (!(P == P.restrict_to_zero(banned)))
        throw ArgumentError("the interior operator takes a function of (x, x*)");
    FormOperator out = FormOperator::zero();
    for (auto& [m, c] : P.terms()) {
        int k = P.grading_degree(m, "xstar");
        FormOperator word = FormOperator::multiplication(
            ch.constant(c) * SuperSeries::lambda(ch.ctx, ch.trunc, k));
        // factors in the monomial's canonical (ascending) order;
        // antimomenta turn into form derivatives
        for (int v = 0; v < static_cast<int>(ch.ctx->size()); ++v) {
            int e = ch.ctx->parity(v) ? (m.has_odd(v) ? 1 : 0) : m.even_exponent(v);
            if (e == 0) continue;
            int slot = xstar_slot(ch, v);
            for (int i = 0; i < e; ++i)
                word = word * (slot < 0
                                   ? FormOperator::multiplication(ch.var(v))
                                   : FormOperator::derivative(ch, ch.dx[static_cast<size_t>(slot)]));
        }
        out = out + word;
    }
    return out;
}

FormOperator bv_delta(const HomotopyPoissonStructure& hp) {
    hp.require_validated();
    return graded_commutator(de_rham_operator(hp.chart), interior_operator(hp.chart, hp.P));
}

SuperSeries classical_brackets_from_delta(const HomotopyPoissonStructure& hp,
                                          const std::vector<SuperSeries>& forms) {
    hp.require_validated();
    const SuperChart& ch = hp.chart;
    if (forms.empty()) throw ArgumentError("the classical brackets cover arity >= 1 only");
    FormOperator cascade = bv_delta(hp);
    for (auto& w : forms) cascade = graded_commutator(cascade, FormOperator::multiplication(w));
    SuperSeries value = cascade.apply(ch.constant(1));
    int n = static_cast<int>(forms.size());
    for (int j = 0; j < n; ++j)
        if (!value.grading_component("lambda", j).is_zero())
            throw LimitError("classical limit diverges: nonzero lambda^" + std::to_string(j) +
                             " term below arity " + std::to_string(n));
    // terms above lambda^n are corrections of higher order in the
    // formal parameter; the limit keeps exactly lambda^n
    return value.grading_component("lambda", n).lambda_shift(-n);
}

SuperSeries principal_symbol(const HomotopyPoissonStructure& hp) {
    hp.require_validated();
    const SuperChart& ch = hp.chart;
    TruncationPolicy relaxed = ch.trunc;
    relaxed.allow_negative_lambda = true;

    // W = x^a p_a + dx^a pi_a, the exponent of the formal plane wave
    SuperSeries W = SuperSeries::zero(ch.ctx, relaxed);
    for (int a = 0; a < ch.dim(); ++a) {
        auto sa = static_cast<size_t>(a);
        W += ch.var(ch.x[sa]).with_policy(relaxed) * ch.var(ch.p[sa]).with_policy(relaxed);
        W += ch.var(ch.dx[sa]).with_policy(relaxed) * ch.var(ch.pi[sa]).with_policy(relaxed);
    }

    // conjugation sends each derivative d/dv to d/dv + lambda^{-1} dW/dv
    FormOperator conjugated = FormOperator::zero();
    FormOperator delta = bv_delta(hp);
    for (auto& word : delta.words()) {
        FormOperator acc = FormOperator::multiplication(SuperSeries::constant(ch.ctx, relaxed, 1));
        for (auto& f : word) {
            FormOperator factor =
                f.derivative
                    ? FormOperator::derivative(ch, f.var) +
                          FormOperator::multiplication(
                              W.left_derivative(f.var).lambda_shift(-1))
                    : FormOperator::multiplication(f.mult.with_policy(relaxed));
            acc = acc * factor;
        }
        conjugated = conjugated + acc;
    }

    SuperSeries value = conjugated.apply(SuperSeries::constant(ch.ctx, relaxed, 1));
    for (auto& [m, c] : value.terms())
        if (m.lambda < 0)
            throw SymbolError("principal symbol has residual negative lambda terms");
    return value.grading_component("lambda", 0).with_policy(ch.trunc);
}

}  // namespace superkoszul
