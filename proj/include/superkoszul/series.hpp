#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "superkoszul/context.hpp"

namespace superkoszul {

using Rational = mpq_class;

/// Product of even-variable powers, a set of distinct odd variables
/// (stored as a bitmask over context indices, canonically ascending)
/// and a power of the formal parameter lambda.
struct Monomial {
    int lambda = 0;
    std::vector<std::pair<int, int>> even;  // (var index, exponent>0), sorted
    std::uint64_t odd = 0;

    auto operator<=>(const Monomial&) const = default;

    int parity() const { return __builtin_popcountll(odd) & 1; }
    int odd_count() const { return __builtin_popcountll(odd); }
    bool has_odd(int v) const { return (odd >> v) & 1u; }
    int even_exponent(int v) const {
        for (auto& [i, e] : even)
            if (i == v) return e;
        return 0;
    }
};

/// Sign (+1/-1) of merging two ascending odd-factor sequences into one:
/// counts transpositions of anticommuting symbols.
int merge_sign(std::uint64_t a, std::uint64_t b);

/// Truncated supercommutative formal power series with exact rational
/// coefficients. Immutable in spirit: all operations return new values.
class SuperSeries {
public:
    SuperSeries() = default;
    SuperSeries(ContextPtr ctx, TruncationPolicy trunc)
        : ctx_(std::move(ctx)), trunc_(std::move(trunc)) {}

    static SuperSeries zero(ContextPtr ctx, TruncationPolicy trunc) {
        return SuperSeries(std::move(ctx), std::move(trunc));
    }
    static SuperSeries constant(ContextPtr ctx, TruncationPolicy trunc, const Rational& c);
    static SuperSeries variable(ContextPtr ctx, TruncationPolicy trunc, const std::string& name);
    static SuperSeries variable(ContextPtr ctx, TruncationPolicy trunc, int var);
    /// lambda^n
    static SuperSeries lambda(ContextPtr ctx, TruncationPolicy trunc, int n = 1);

    const ContextPtr& context() const { return ctx_; }
    const TruncationPolicy& truncation() const { return trunc_; }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    /// -1 if inhomogeneous (or zero... zero reports 0).
    int parity() const;
    bool is_homogeneous() const;
    bool is_even() const { return parity() == 0; }
    bool is_odd() const { return parity() == 1; }

    SuperSeries even_part() const { return parity_part(0); }
    SuperSeries odd_part() const { return parity_part(1); }
    SuperSeries parity_part(int p) const;

    SuperSeries operator-() const;
    SuperSeries operator+(const SuperSeries& o) const;
    SuperSeries operator-(const SuperSeries& o) const;
    SuperSeries operator*(const SuperSeries& o) const;
    SuperSeries operator*(const Rational& c) const;
    friend SuperSeries operator*(const Rational& c, const SuperSeries& s) { return s * c; }
    SuperSeries& operator+=(const SuperSeries& o) { return *this = *this + o; }
    SuperSeries& operator-=(const SuperSeries& o) { return *this = *this - o; }

    bool operator==(const SuperSeries& o) const { return terms_ == o.terms_; }

    /// Left partial derivative: each monomial is reordered so that the
    /// variable stands in front (inversion-count sign), then stripped.
    SuperSeries left_derivative(int var) const;
    SuperSeries left_derivative(const std::string& name) const {
        return left_derivative(require_var(name));
    }
    /// (-1)^{v(a+v)} * left derivative, per homogeneous term.
    SuperSeries right_derivative(int var) const;
    SuperSeries right_derivative(const std::string& name) const {
        return right_derivative(require_var(name));
    }

    /// Simultaneous substitution; parity of each replacement must match
    /// the replaced variable.
    SuperSeries substitute(const std::map<int, SuperSeries>& assignment) const;

    /// Terms of exactly the given degree in a registered grading
    /// (or "lambda").
    SuperSeries grading_component(const std::string& grading, int degree) const;
    int grading_degree(const Monomial& m, const std::string& grading) const;
    /// Largest degree present, or `empty` if the series is zero.
    int max_grading_degree(const std::string& grading, int empty = 0) const;

    /// Multiply by lambda^n (n may be negative when the policy allows).
    SuperSeries lambda_shift(int n) const;
    /// Set every variable in `vars` to zero.
    SuperSeries restrict_to_zero(const std::vector<int>& vars) const;

    SuperSeries with_policy(TruncationPolicy trunc) const;

    void add_term(Monomial m, const Rational& c);
    Rational coefficient(const Monomial& m) const;

    std::string str() const;  // debugging aid

    int require_var(const std::string& name) const {
        if (!ctx_) throw ContextError("series without context");
        return ctx_->require(name);
    }

private:
    void check_same(const SuperSeries& o) const;
    bool keep(const Monomial& m) const;

    ContextPtr ctx_;
    TruncationPolicy trunc_;
    std::map<Monomial, Rational> terms_;
};

}  // namespace superkoszul
