#include "superkoszul/series.hpp"

#include <sstream>

namespace superkoszul {

int merge_sign(std::uint64_t a, std::uint64_t b) {
    // For each factor of b, count the factors of a it must pass.
    int inversions = 0;
    std::uint64_t rest = b;
    while (rest) {
        int j = __builtin_ctzll(rest);
        rest &= rest - 1;
        std::uint64_t above = (j == 63) ? 0 : (a >> (j + 1));
        inversions += __builtin_popcountll(above);
    }
    return (inversions & 1) ? -1 : 1;
}

SuperSeries SuperSeries::constant(ContextPtr ctx, TruncationPolicy trunc, const Rational& c) {
    SuperSeries s(std::move(ctx), std::move(trunc));
    Rational cc = c;
    cc.canonicalize();  // caller may have built p/q with a common factor
    s.add_term(Monomial{}, cc);
    return s;
}

SuperSeries SuperSeries::variable(ContextPtr ctx, TruncationPolicy trunc, const std::string& name) {
    int idx = ctx->require(name);
    return variable(std::move(ctx), std::move(trunc), idx);
}

SuperSeries SuperSeries::variable(ContextPtr ctx, TruncationPolicy trunc, int var) {
    SuperSeries s(std::move(ctx), std::move(trunc));
    Monomial m;
    if (s.ctx_->parity(var))
        m.odd = 1ull << var;
    else
        m.even.emplace_back(var, 1);
    s.add_term(m, 1);
    return s;
}

SuperSeries SuperSeries::lambda(ContextPtr ctx, TruncationPolicy trunc, int n) {
    SuperSeries s(std::move(ctx), std::move(trunc));
    Monomial m;
    m.lambda = n;
    s.add_term(m, 1);
    return s;
}

int SuperSeries::parity() const {
    if (terms_.empty()) return 0;
    int p = terms_.begin()->first.parity();
    for (auto& [m, c] : terms_)
        if (m.parity() != p) return -1;
    return p;
}

bool SuperSeries::is_homogeneous() const { return parity() != -1; }

SuperSeries SuperSeries::parity_part(int p) const {
    SuperSeries out(ctx_, trunc_);
    for (auto& [m, c] : terms_)
        if (m.parity() == p) out.terms_.emplace(m, c);
    return out;
}

void SuperSeries::check_same(const SuperSeries& o) const {
    if (ctx_ != o.ctx_) throw ContextError("operands belong to different contexts");
    if (!(trunc_ == o.trunc_)) throw TruncationError("operands carry different truncation policies");
}

bool SuperSeries::keep(const Monomial& m) const {
    if (m.lambda < 0 && !trunc_.allow_negative_lambda) return false;
    if (int cap = trunc_.cap("lambda"); cap >= 0 && m.lambda > cap) return false;
    if (!ctx_) return true;
    for (auto& [name, weights] : ctx_->gradings()) {
        int cap = trunc_.cap(name);
        if (cap < 0) continue;
        int deg = 0;
        for (auto& [v, e] : m.even) deg += weights[static_cast<size_t>(v)] * e;
        std::uint64_t rest = m.odd;
        while (rest) {
            int v = __builtin_ctzll(rest);
            rest &= rest - 1;
            deg += weights[static_cast<size_t>(v)];
        }
        if (deg > cap) return false;
    }
    return true;
}

void SuperSeries::add_term(Monomial m, const Rational& c) {
    if (c == 0 || !keep(m)) return;
    auto [it, inserted] = terms_.emplace(std::move(m), c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Rational SuperSeries::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

SuperSeries SuperSeries::operator-() const {
    SuperSeries out(ctx_, trunc_);
    for (auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

SuperSeries SuperSeries::operator+(const SuperSeries& o) const {
    check_same(o);
    SuperSeries out = *this;
    for (auto& [m, c] : o.terms_) out.add_term(m, c);
    return out;
}

SuperSeries SuperSeries::operator-(const SuperSeries& o) const {
    check_same(o);
    SuperSeries out = *this;
    for (auto& [m, c] : o.terms_) out.add_term(m, -c);
    return out;
}

SuperSeries SuperSeries::operator*(const Rational& c) const {
    SuperSeries out(ctx_, trunc_);
    Rational cc = c;
    cc.canonicalize();
    if (cc == 0) return out;
    for (auto& [m, k] : terms_) out.terms_.emplace(m, k * cc);
    return out;
}

SuperSeries SuperSeries::operator*(const SuperSeries& o) const {
    check_same(o);
    SuperSeries out(ctx_, trunc_);
    for (auto& [ma, ca] : terms_) {
        for (auto& [mb, cb] : o.terms_) {
            if (ma.odd & mb.odd) continue;  // odd square
            Monomial m;
            m.lambda = ma.lambda + mb.lambda;
            m.odd = ma.odd | mb.odd;
            // merge sorted exponent lists
            auto ia = ma.even.begin(), ib = mb.even.begin();
            while (ia != ma.even.end() || ib != mb.even.end()) {
                if (ib == mb.even.end() || (ia != ma.even.end() && ia->first < ib->first)) {
                    m.even.push_back(*ia++);
                } else if (ia == ma.even.end() || ib->first < ia->first) {
                    m.even.push_back(*ib++);
                } else {
                    m.even.emplace_back(ia->first, ia->second + ib->second);
                    ++ia;
                    ++ib;
                }
            }
            Rational c = ca * cb;
            if (merge_sign(ma.odd, mb.odd) < 0) c = -c;
            out.add_term(std::move(m), c);
        }
    }
    return out;
}

SuperSeries SuperSeries::left_derivative(int var) const {
    if (!ctx_) throw ContextError("series without context");
    if (var < 0 || var >= ctx_->size()) throw ContextError("unknown variable index");
    SuperSeries out(ctx_, trunc_);
    bool odd_var = ctx_->parity(var) != 0;
    for (auto& [m, c] : terms_) {
        if (odd_var) {
            if (!m.has_odd(var)) continue;
            Monomial d = m;
            d.odd &= ~(1ull << var);
            // bring the factor to the front past the preceding odd factors
            int before = __builtin_popcountll(m.odd & ((1ull << var) - 1));
            out.add_term(std::move(d), (before & 1) ? -c : c);
        } else {
            int e = m.even_exponent(var);
            if (e == 0) continue;
            Monomial d = m;
            d.even.clear();
            for (auto& [v, exp] : m.even) {
                if (v == var) {
                    if (exp > 1) d.even.emplace_back(v, exp - 1);
                } else {
                    d.even.emplace_back(v, exp);
                }
            }
            out.add_term(std::move(d), c * e);
        }
    }
    return out;
}

SuperSeries SuperSeries::right_derivative(int var) const {
    if (!ctx_) throw ContextError("series without context");
    int vp = ctx_->parity(var);
    if (vp == 0) return left_derivative(var);
    SuperSeries out(ctx_, trunc_);
    SuperSeries ld = left_derivative(var);
    for (auto& [m, c] : ld.terms_) {
        // original term parity = derivative parity + 1 for odd var
        int a = (m.parity() + 1) & 1;
        int sign = (vp * (a + vp)) & 1;
        out.add_term(m, sign ? -c : c);
    }
    return out;
}

SuperSeries SuperSeries::substitute(const std::map<int, SuperSeries>& assignment) const {
    if (!ctx_) throw ContextError("series without context");
    for (auto& [v, s] : assignment) {
        if (v < 0 || v >= ctx_->size()) throw ContextError("unknown variable index");
        int sp = s.parity();
        if (!s.is_zero() && sp != ctx_->parity(v))
            throw ParityError("substitution parity mismatch for " + ctx_->var(v).name);
    }
    SuperSeries out(ctx_, trunc_);
    // cache for powers of even replacements
    std::map<std::pair<int, int>, SuperSeries> powers;
    auto power = [&](int v, int e) -> const SuperSeries& {
        auto it = powers.find({v, e});
        if (it != powers.end()) return it->second;
        const SuperSeries& base = assignment.at(v);
        SuperSeries p = base;
        for (int k = 2; k <= e; ++k) p = p * base;
        return powers.emplace(std::make_pair(v, e), std::move(p)).first->second;
    };
    for (auto& [m, c] : terms_) {
        SuperSeries acc = SuperSeries::constant(ctx_, trunc_, c);
        Monomial passthrough;
        passthrough.lambda = m.lambda;
        for (auto& [v, e] : m.even) {
            if (assignment.count(v))
                acc = acc * power(v, e);
            else
                passthrough.even.emplace_back(v, e);
        }
        {
            SuperSeries pt(ctx_, trunc_);
            pt.add_term(std::move(passthrough), 1);
            acc = acc * pt;
        }
        // odd factors in canonical (ascending) order
        std::uint64_t rest = m.odd;
        while (rest && !acc.is_zero()) {
            int v = __builtin_ctzll(rest);
            rest &= rest - 1;
            if (assignment.count(v)) {
                acc = acc * assignment.at(v);
            } else {
                SuperSeries f(ctx_, trunc_);
                Monomial fm;
                fm.odd = 1ull << v;
                f.add_term(std::move(fm), 1);
                acc = acc * f;
            }
        }
        out += acc;
    }
    return out;
}

int SuperSeries::grading_degree(const Monomial& m, const std::string& grading) const {
    if (grading == "lambda") return m.lambda;
    const auto& weights = ctx_->grading_weights(grading);
    int deg = 0;
    for (auto& [v, e] : m.even) deg += weights[static_cast<size_t>(v)] * e;
    std::uint64_t rest = m.odd;
    while (rest) {
        int v = __builtin_ctzll(rest);
        rest &= rest - 1;
        deg += weights[static_cast<size_t>(v)];
    }
    return deg;
}

SuperSeries SuperSeries::grading_component(const std::string& grading, int degree) const {
    if (!ctx_) throw ContextError("series without context");
    if (!ctx_->has_grading(grading)) throw ContextError("unknown grading: " + grading);
    SuperSeries out(ctx_, trunc_);
    for (auto& [m, c] : terms_)
        if (grading_degree(m, grading) == degree) out.terms_.emplace(m, c);
    return out;
}

int SuperSeries::max_grading_degree(const std::string& grading, int empty) const {
    int best = empty;
    bool first = true;
    for (auto& [m, c] : terms_) {
        int d = grading_degree(m, grading);
        if (first || d > best) best = d;
        first = false;
    }
    return best;
}

SuperSeries SuperSeries::lambda_shift(int n) const {
    SuperSeries out(ctx_, trunc_);
    for (auto& [m, c] : terms_) {
        Monomial shifted = m;
        shifted.lambda += n;
        out.add_term(std::move(shifted), c);
    }
    return out;
}

SuperSeries SuperSeries::restrict_to_zero(const std::vector<int>& vars) const {
    std::uint64_t mask = 0;
    std::vector<bool> kill(ctx_ ? static_cast<size_t>(ctx_->size()) : 0, false);
    for (int v : vars) {
        kill.at(static_cast<size_t>(v)) = true;
        mask |= 1ull << v;
    }
    SuperSeries out(ctx_, trunc_);
    for (auto& [m, c] : terms_) {
        if (m.odd & mask) continue;
        bool hit = false;
        for (auto& [v, e] : m.even)
            if (kill[static_cast<size_t>(v)]) {
                hit = true;
                break;
            }
        if (!hit) out.terms_.emplace(m, c);
    }
    return out;
}

SuperSeries SuperSeries::with_policy(TruncationPolicy trunc) const {
    SuperSeries out(ctx_, std::move(trunc));
    for (auto& [m, c] : terms_) out.add_term(m, c);
    return out;
}

std::string SuperSeries::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c;
        if (m.lambda) os << "*L^" << m.lambda;
        for (auto& [v, e] : m.even) {
            os << "*" << ctx_->var(v).name;
            if (e > 1) os << "^" << e;
        }
        std::uint64_t rest = m.odd;
        while (rest) {
            int v = __builtin_ctzll(rest);
            rest &= rest - 1;
            os << "*" << ctx_->var(v).name;
        }
    }
    return os.str();
}

}  // namespace superkoszul
