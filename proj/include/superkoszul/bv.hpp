#pragma once

#include "superkoszul/koszul.hpp"

namespace superkoszul {

/// Linear operator on forms omega(x, dx): a sum of words, each word a
/// left-to-right composition of primitive factors (multiplication by a
/// series, or a left derivative). Powers of lambda ride along inside
/// the multiplication factors.
class FormOperator {
public:
    struct Factor {
        bool derivative = false;
        int var = -1;          // derivative variable
        SuperSeries mult;      // multiplication factor
    };
    using Word = std::vector<Factor>;

    FormOperator() = default;

    static FormOperator zero();
    static FormOperator multiplication(SuperSeries f);
    static FormOperator derivative(const SuperChart& ch, int var);

    bool is_zero() const { return words_.empty(); }
    /// Parity of the operator; throws ParityError when inhomogeneous.
    int parity() const;

    SuperSeries apply(const SuperSeries& omega) const;

    FormOperator operator+(const FormOperator& o) const;
    FormOperator operator-(const FormOperator& o) const;
    FormOperator operator-() const;
    /// Composition (this applied after o... i.e. this on the left).
    FormOperator operator*(const FormOperator& o) const;

    const std::vector<Word>& words() const { return words_; }

private:
    ContextPtr ctx_;
    std::vector<Word> words_;
};

/// [A, B] = A B - (-1)^{A B} B A.
FormOperator graded_commutator(const FormOperator& a, const FormOperator& b);

/// d = dx^a d/dx^a as an operator.
FormOperator de_rham_operator(const SuperChart& ch);

/// P-hat = P(x, lambda d/ddx): every antimomentum factor becomes a
/// lambda-weighted form derivative, composed in the monomial's
/// canonical order. P must be a function of (x, x*) but need not be
/// even or satisfy the master equation.
FormOperator interior_operator(const SuperChart& ch, const SuperSeries& P);

/// Delta = [d, P-hat].
FormOperator bv_delta(const HomotopyPoissonStructure& hp);

/// Classical bracket of forms generated by Delta: the iterated
/// commutator [...[Delta, omega_1], ..., omega_n] applied to 1, with
/// the formal-parameter limit taken as the lambda^n component (lower
/// lambda-degrees must vanish; a nonzero one raises LimitError).
/// Agrees with higher_koszul_bracket by the generating-operator
/// theorem.
SuperSeries classical_brackets_from_delta(const HomotopyPoissonStructure& hp,
                                          const std::vector<SuperSeries>& forms);

/// Principal symbol of Delta: conjugate by the formal plane wave
/// (each derivative d/dv picks up lambda^{-1} times the conjugate
/// momentum of v), apply to 1, keep the lambda^0 part. Equals the
/// Koszul master Hamiltonian K exactly; leftover negative lambda
/// terms raise SymbolError.
SuperSeries principal_symbol(const HomotopyPoissonStructure& hp);

}  // namespace superkoszul
