#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tmpow/ball.hpp"
#include "tmpow/number_field.hpp"
#include "tmpow/witness.hpp"

namespace tmpow {

// The linear form a_1 t(n) + a_2 t(n^2) + ... + a_k t(n^k) with coefficients
// in Z[beta]. a_k != 0 is required wherever the residual analysis runs.
struct LinearForm {
    std::vector<FieldElement> coeffs;   // a_1 .. a_k
    unsigned k() const { return static_cast<unsigned>(coeffs.size()); }
    bool leading_nonzero() const { return !coeffs.empty() && !coeffs.back().is_zero(); }

    static LinearForm from_ints(const NumberField& field, const std::vector<mpz_class>& a);
};

// s(n) = sum a_i t(n^i), exactly in Z[beta].
FieldElement s_of_n(const LinearForm& form, const mpz_class& n);

// The rational approximants:
//   q_N(X) = (X^(y 2^kappa) - 1) X^(y 2^kappa)
//   p_N(X) = (X^(y 2^kappa) - 1) sum_(n=1)^(y 2^kappa - 1) s(n) X^(y 2^kappa - n)
//            + sum_(n=y 2^kappa)^(y 2^(kappa+1) - 1) s(n) X^(y 2^(kappa+1) - n)
// Materialized sparsely as (exponent, coefficient) pairs when the term count
// fits the budget; otherwise only the implicit description is kept.
struct ApproxPair {
    unsigned N = 0;
    unsigned long kappa = 0;
    mpz_class half_deg;     // y 2^kappa
    mpz_class full_deg;     // y 2^(kappa+1) = degree of q
    bool materialized = false;
    std::vector<std::pair<mpz_class, FieldElement>> p_terms;   // ascending exponents
};

struct ApproxBudgets {
    uint64_t term_budget = uint64_t{1} << 18;
    mpfr_prec_t prec = 512;
    mpfr_prec_t prec_ceiling = 1 << 20;
};

ApproxPair build_approx(const CongruenceWitness& w, const LinearForm& form,
                        const NumberField& field, unsigned N,
                        const ApproxBudgets& budgets = {});

// Evaluate q_N and p_N at beta as certified balls.
Ball eval_q(const ApproxPair& pair, const NumberField& field, mpfr_prec_t prec);
Ball eval_p(const ApproxPair& pair, const NumberField& field, mpfr_prec_t prec);

// ---------------------------------------------------------------------------
// residual analysis
// ---------------------------------------------------------------------------

struct ResidualChecks {
    bool u_zero_below = false;       // u(j) = 0 verified for all j <= 2^N
    bool ball_excludes_zero = false; // |S| > 0 certified
    bool lower_ok = false;           // displayed form: scaled >= lower_const - eps_N
    bool lower_derived_ok = false;   // derived form: scaled >= lower_const_derived - eps_derived
    bool upper_ok = false;           // |S| beta^(2^N) <= C certified
    bool window_ok = false;          // log_beta(1/|S|) - 2^N within [-2, log_beta C]
};

// Two lower-bound constants are carried. lower_const is the nominal closed
// form (b^4-b^2-1)/(b^2 (b^2-1)). Deriving the bound directly from the
// u-profile (leading term b^-(2^N+1), odd tail from 2^N+5, even tail from
// 5 2^(N-2)+2) gives the same numerator over b^3 (b^2-1), one power of b
// smaller; that derived form is what the computed series provably
// satisfies for every admissible beta. Both are reported and checked; the
// nominal form holds with margin over the golden field.
struct ResidualReport {
    unsigned k = 0;
    unsigned N = 0;
    mpfr_prec_t prec = 0;
    long tol_bits = 0;
    mpz_class truncation_J;          // inclusive last summed j
    Ball S{64};                      // sum of u(j) beta^-j over (2^N, J], tail in radius
    Ball scaled{64};                 // |S| beta^(2^N)
    Ball lower_const{64};            // (b^4-b^2-1)/(b^2(b^2-1))
    Ball eps_N{64};                  // explicit correction terms, scaled
    Ball lower_const_derived{64};    // (b^4-b^2-1)/(b^3(b^2-1))
    Ball eps_derived{64};            // far even tail only, scaled
    Ball upper_C{64};                // ||a||_1 beta/(beta-1)
    double log_window = 0.0;         // log_beta(1/|S|) - 2^N (diagnostic)
    std::vector<std::pair<mpz_class, int>> u_nonzero;   // (j - 2^N, sign), capped
    uint64_t u_checked_below = 0;
    ResidualChecks checks;
};

// The full residual pipeline at N >= min_valid_N(w): sums u(j) beta^-j with
// adaptive truncation (tail certified into the radius), verifies the
// vanishing below 2^N by exact integer evaluation, and runs the
// lower/upper-bound checks with explicit constants.
//
// allow_below_threshold runs the same computation for N < min_valid_N as
// informational data: the vanishing below 2^N is then an empirical finding,
// not a consequence of the verified lemmas.
ResidualReport residual_series(const CongruenceWitness& w, const LinearForm& form,
                               const NumberField& field, unsigned N,
                               long tol_bits = 60, mpfr_prec_t prec = 512,
                               bool allow_below_threshold = false);

// Brute-force oracle route: q_N xi_T - p_N with xi truncated at T >= deg q_N,
// the geometric tail of q_N (xi - xi_T) added to the radius.
Ball residual_direct(const ApproxPair& pair, const LinearForm& form,
                     const NumberField& field, const mpz_class& T, mpfr_prec_t prec);

// Series route for the same quantity, truncated compatibly with T: sums
// Delta(j) = s(y 2^(kappa+1) + j) - s(y 2^kappa + j) for j = 0..T - y 2^(kappa+1),
// minus the overhang of the lower-shift sum; bit-equal centers to
// residual_direct under exact (dyadic) arithmetic.
Ball residual_series_scaled(const CongruenceWitness& w, const LinearForm& form,
                            const NumberField& field, unsigned N, const mpz_class& T,
                            mpfr_prec_t prec);

// ---------------------------------------------------------------------------
// norm contradiction audit
// ---------------------------------------------------------------------------

struct NormAuditReport {
    unsigned k = 0;
    unsigned N_min = 0;      // scan start (min_valid_N)
    unsigned N0 = 0;         // least N with the certified contradiction
    Ball c1{64};             // explicit upper-bound constant for |q_N xi - p_N| beta^(2^N)
    mpz_class c2;            // conjugate-row constant
    mpz_class A_bound;       // assumed bound on |A_i| of the hypothesized xi
    Ball final_value{64};    // c1 c2^(d-1) (y 2^kappa)^d beta^(-2^N) at N0
    bool certified = false;  // final_value < 1 certified
};

// Explicit-constant variant of the final norm display: finds the least
// N0 >= min_valid_N(w) with c1 c2^(d-1) (y 2^kappa(N))^d beta^(-2^N) < 1
// certified, for a hypothesized xi in Z[beta] with |A_i| <= A_bound.
// Requires a Pisot / Salem / rational-integer field (the conjugate bound
// needs |beta_i| <= 1).
NormAuditReport norm_contradiction_check(const CongruenceWitness& w,
                                         const LinearForm& form,
                                         const NumberField& field,
                                         const mpz_class& A_bound,
                                         mpfr_prec_t prec = 256);

// Certified upper bound ||a|| = sum_r |a_r(beta)| used in the explicit
// constants (ball upper bound).
Ball form_embedded_l1(const LinearForm& form, const NumberField& field, mpfr_prec_t prec);

} // namespace tmpow
