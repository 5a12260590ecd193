#include "tmpow/approx.hpp"

#include <algorithm>

#include "tmpow/lemma_lab.hpp"
#include "tmpow/thue_morse.hpp"
#include "tmpow/util.hpp"

namespace tmpow {

namespace {

mpz_class pow2z(unsigned long e) {
    mpz_class t;
    mpz_ui_pow_ui(t.get_mpz_t(), 2, e);
    return t;
}

Ball embed_coeff(const FieldElement& a, mpfr_prec_t prec) {
    return a.embed_beta(prec);
}

} // namespace

LinearForm LinearForm::from_ints(const NumberField& field, const std::vector<mpz_class>& a) {
    LinearForm f;
    f.coeffs.reserve(a.size());
    for (const auto& v : a) f.coeffs.push_back(FieldElement::from_int(field, v));
    return f;
}

FieldElement s_of_n(const LinearForm& form, const mpz_class& n) {
    if (form.coeffs.empty()) throw std::invalid_argument("s_of_n: empty form");
    const NumberField& field = form.coeffs.front().field();
    FieldElement acc = FieldElement::zero(field);
    for (unsigned i = 0; i < form.k(); ++i) {
        if (form.coeffs[i].is_zero()) continue;
        if (tm_pow(n, i + 1)) acc = acc + form.coeffs[i];
    }
    return acc;
}

Ball form_embedded_l1(const LinearForm& form, const NumberField& field, mpfr_prec_t prec) {
    Ball acc = Ball::exact(0L, prec);
    for (const auto& a : form.coeffs)
        acc = acc.add(a.embed_beta(prec).abs());
    (void)field;
    return acc;
}

// ---------------------------------------------------------------------------
// approximant construction
// ---------------------------------------------------------------------------

ApproxPair build_approx(const CongruenceWitness& w, const LinearForm& form,
                        const NumberField& field, unsigned N,
                        const ApproxBudgets& budgets) {
    if (N < 1) throw std::invalid_argument("build_approx: N >= 1");
    if (form.k() != w.k) throw std::invalid_argument("build_approx: form degree != k");
    ApproxPair pair;
    pair.N = N;
    pair.kappa = kappa(w, N);
    pair.half_deg = w.y * pow2z(pair.kappa);
    pair.full_deg = w.y * pow2z(pair.kappa + 1);

    if (pair.full_deg > mpz_class(static_cast<unsigned long>(budgets.term_budget))) {
        pair.materialized = false;    // implicit form only
        return pair;
    }
    pair.materialized = true;
    unsigned long half = pair.half_deg.get_ui();
    unsigned long full = pair.full_deg.get_ui();

    // exponent e in [1, full): coefficient of X^e in p_N.
    //   (X^half - 1) sum_(n=1)^(half-1) s(n) X^(half-n): contributes
    //       +s(n) at e = 2 half - n  (n = 1..half-1)
    //       -s(n) at e = half - n    (n = 1..half-1)
    //   second sum: +s(n) at e = full - n (n = half..full-1)
    std::vector<FieldElement> dense(full, FieldElement::zero(field));
    for (unsigned long n = 1; n < half; ++n) {
        FieldElement s = s_of_n(form, mpz_class(n));
        if (s.is_zero()) continue;
        dense[full - n] = dense[full - n] + s;          // 2 half - n == full - n
        dense[half - n] = dense[half - n] - s;
    }
    for (unsigned long n = half; n < full; ++n) {
        FieldElement s = s_of_n(form, mpz_class(n));
        if (s.is_zero()) continue;
        dense[full - n] = dense[full - n] + s;
    }
    for (unsigned long e = 1; e < full; ++e)
        if (!dense[e].is_zero())
            pair.p_terms.emplace_back(mpz_class(e), dense[e]);
    return pair;
}

Ball eval_q(const ApproxPair& pair, const NumberField& field, mpfr_prec_t prec) {
    Ball b = field.beta(prec);
    Ball bh = b.pow(pair.half_deg);
    return bh.sub(Ball::exact(1L, prec)).mul(bh);
}

Ball eval_p(const ApproxPair& pair, const NumberField& field, mpfr_prec_t prec) {
    if (!pair.materialized)
        throw budget_error("eval_p: pair was not materialized");
    Ball b = field.beta(prec);
    // Horner over descending sparse exponents.
    Ball acc = Ball::exact(0L, prec);
    mpz_class cur_exp = 0;
    bool started = false;
    for (size_t i = pair.p_terms.size(); i-- > 0;) {
        const auto& [e, c] = pair.p_terms[i];
        if (!started) {
            acc = embed_coeff(c, prec);
            cur_exp = e;
            started = true;
            continue;
        }
        acc = acc.mul(b.pow(cur_exp - e)).add(embed_coeff(c, prec));
        cur_exp = e;
    }
    if (started && cur_exp != 0) acc = acc.mul(b.pow(cur_exp));
    return acc;
}

// ---------------------------------------------------------------------------
// residual: series route
// ---------------------------------------------------------------------------

ResidualReport residual_series(const CongruenceWitness& w, const LinearForm& form,
                               const NumberField& field, unsigned N,
                               long tol_bits, mpfr_prec_t prec,
                               bool allow_below_threshold) {
    if (!form.leading_nonzero())
        throw std::invalid_argument("residual_series: a_k must be nonzero");
    if (form.k() != w.k) throw std::invalid_argument("residual_series: form degree != k");
    if (N < min_valid_N(w) && !allow_below_threshold)
        throw std::invalid_argument("residual_series: N below min_valid_N");
    if (N < 4)
        throw std::invalid_argument("residual_series: N >= 4 required");
    if (N > 30)
        throw budget_error("residual_series: 2^N exceeds the summation budget");

    ResidualReport rep;
    rep.k = w.k;
    rep.N = N;
    rep.prec = prec;
    rep.tol_bits = tol_bits;

    const mpz_class two_N = pow2z(N);
    const mpz_class j_cap = pow2z(lambda_floor(w.k, N));

    // (a) exact vanishing below 2^N, by integer evaluation only.
    uint64_t below = two_N.get_ui();
    bool all_zero = true;
    for (uint64_t j = 0; j <= below && all_zero; ++j)
        if (u_value(w, N, mpz_class(static_cast<unsigned long>(j))) != 0) all_zero = false;
    rep.u_checked_below = below + 1;
    rep.checks.u_zero_below = all_zero;

    Ball beta = field.beta(prec);
    Ball one = Ball::exact(1L, prec);
    Ball binv = beta.recip();
    Ball bm1inv = beta.sub(one).recip();           // 1/(beta-1)
    Ball geom = beta.mul(bm1inv);                  // beta/(beta-1)
    Ball a_l1 = form_embedded_l1(form, field, prec);

    // scale reference beta^(-2^N) and tolerance
    Ball scale = beta.pow(two_N).recip();
    Ball tol = scale.mul_2si(-tol_bits);

    // S = sum over j in (2^N, J]; adaptive J, tail into radius.
    Ball S = Ball::exact(0L, prec);
    Ball pw = beta.pow(two_N + 1).recip();         // beta^-(2^N+1)
    mpz_class j = two_N + 1;
    for (;; ++j) {
        if (j > j_cap) { j = j_cap; break; }
        int u = u_value(w, N, j);
        if (u == 1) S = S.add(pw);
        else if (u == -1) S = S.sub(pw);
        if (u != 0 && rep.u_nonzero.size() < 1024)
            rep.u_nonzero.emplace_back(j - two_N, u);
        // tail after j: ||a||-free since |u| <= 1: beta^-j * beta/(beta-1)
        if (j >= two_N + 64) {
            Ball tail = pw.mul(geom);
            mpfr_t tu, cu;
            mpfr_init2(tu, Ball::kRadiusPrec);
            mpfr_init2(cu, Ball::kRadiusPrec);
            tail.upper(tu);
            tol.lower(cu);
            bool done = mpfr_cmp(tu, cu) < 0;
            mpfr_clears(tu, cu, nullptr);
            if (done) break;
        }
        pw = pw.mul(binv);
    }
    rep.truncation_J = j;
    // certified tail: beta^-J * beta/(beta-1)
    Ball tail = beta.pow(j).recip().mul(geom);
    rep.S = S.widened(tail);

    // scaled, constants, checks
    Ball absS = rep.S.abs();
    rep.scaled = absS.mul(beta.pow(two_N));
    Ball b2 = beta.sqr();
    Ball b4 = b2.sqr();
    Ball numer = b4.sub(b2).sub(one);
    rep.lower_const = numer.div(b2.mul(b2.sub(one)));
    rep.lower_const_derived = numer.div(b2.mul(beta).mul(b2.sub(one)));
    // eps_N = (beta^2/(beta^2-1)) (beta^-5 + beta^-(2^(N-2)+2)), scaled by beta^(2^N)
    Ball even_tail = b2.div(b2.sub(one)).mul(beta.pow(pow2z(N - 2) + 2).recip());
    Ball eps = b2.div(b2.sub(one)).mul(beta.pow(mpz_class(5)).recip()).add(even_tail);
    rep.eps_N = eps;
    rep.eps_derived = even_tail;      // the odd tail is folded into the constant
    rep.upper_C = a_l1.mul(geom);

    rep.checks.ball_excludes_zero = !rep.S.contains_zero();
    rep.checks.lower_ok = rep.lower_const.sub(eps).certainly_less(rep.scaled);
    rep.checks.lower_derived_ok =
        rep.lower_const_derived.sub(even_tail).certainly_less(rep.scaled);
    rep.checks.upper_ok = rep.scaled.certainly_less(rep.upper_C);

    // window: scaled <= beta^2 and scaled >= 1/C, certified
    bool win_lo = rep.scaled.certainly_less(b2);
    bool win_hi = rep.upper_C.recip().certainly_less(rep.scaled);
    rep.checks.window_ok = win_lo && win_hi;

    // diagnostic log value: -log_beta(scaled center)
    {
        mpfr_t lv, lb;
        mpfr_init2(lv, 64);
        mpfr_init2(lb, 64);
        mpfr_log(lv, rep.scaled.center(), MPFR_RNDN);
        mpfr_log(lb, beta.center(), MPFR_RNDN);
        rep.log_window = -mpfr_get_d(lv, MPFR_RNDN) / mpfr_get_d(lb, MPFR_RNDN);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// residual: direct (oracle) route
// ---------------------------------------------------------------------------

Ball residual_direct(const ApproxPair& pair, const LinearForm& form,
                     const NumberField& field, const mpz_class& T, mpfr_prec_t prec) {
    if (!pair.materialized)
        throw budget_error("residual_direct: pair was not materialized");
    if (T < pair.full_deg)
        throw std::invalid_argument("residual_direct: T must be >= deg q_N");
    if (!T.fits_ulong_p())
        throw budget_error("residual_direct: T exceeds the term budget");

    Ball beta = field.beta(prec);
    Ball binv = beta.recip();

    // xi_T = sum_(n=1)^(T) s(n) beta^-n
    Ball xi = Ball::exact(0L, prec);
    Ball pw = binv;
    unsigned long Tu = T.get_ui();
    for (unsigned long n = 1; n <= Tu; ++n) {
        FieldElement s = s_of_n(form, mpz_class(n));
        if (!s.is_zero()) xi = xi.add(embed_coeff(s, prec).mul(pw));
        pw = pw.mul(binv);
    }

    Ball q = eval_q(pair, field, prec);
    Ball p = eval_p(pair, field, prec);
    Ball val = q.mul(xi).sub(p);

    // |q_N (xi - xi_T)| <= beta^(y 2^(kappa+1)) * ||a|| beta^-T * beta/(beta-1)
    Ball a_l1 = form_embedded_l1(form, field, prec);
    Ball tail = beta.pow(pair.full_deg - T).mul(a_l1).mul(beta).mul(beta.sub(Ball::exact(1L, prec)).recip());
    return val.widened(tail);
}

Ball residual_series_scaled(const CongruenceWitness& w, const LinearForm& form,
                            const NumberField& field, unsigned N, const mpz_class& T,
                            mpfr_prec_t prec) {
    if (form.k() != w.k) throw std::invalid_argument("residual_series_scaled: form degree != k");
    mpz_class half = w.y * pow2z(kappa(w, N));
    mpz_class full = half * 2;
    if (T < full)
        throw std::invalid_argument("residual_series_scaled: T must be >= deg q_N");
    mpz_class J = T - full;
    if (!mpz_class(J + half).fits_ulong_p())
        throw budget_error("residual_series_scaled: T exceeds the term budget");

    Ball beta = field.beta(prec);
    Ball binv = beta.recip();

    // sum_(j=0)^(J) Delta(j) beta^-j  -  sum_(j=J+1)^(J+half) s(half + j) beta^-j
    Ball acc = Ball::exact(0L, prec);
    Ball pw = Ball::exact(1L, prec);
    unsigned long Ju = J.get_ui();
    for (unsigned long j = 0; j <= Ju; ++j) {
        FieldElement d = s_of_n(form, full + j) - s_of_n(form, half + j);
        if (!d.is_zero()) acc = acc.add(embed_coeff(d, prec).mul(pw));
        pw = pw.mul(binv);
    }
    unsigned long overhang = half.get_ui();
    for (unsigned long i = 1; i <= overhang; ++i) {
        FieldElement s = s_of_n(form, half + mpz_class(Ju) + i);
        if (!s.is_zero()) acc = acc.sub(embed_coeff(s, prec).mul(pw));
        pw = pw.mul(binv);
    }

    // remaining true tail: sum_(j>J) Delta(j) beta^-j + shifted overhang tail,
    // bounded by 2 ||a|| beta^-J beta/(beta-1)
    Ball a_l1 = form_embedded_l1(form, field, prec);
    Ball tail = beta.pow(J).recip().mul(a_l1).mul_2si(1)
                    .mul(beta).mul(beta.sub(Ball::exact(1L, prec)).recip());
    return acc.widened(tail);
}

// ---------------------------------------------------------------------------
// norm contradiction audit
// ---------------------------------------------------------------------------

NormAuditReport norm_contradiction_check(const CongruenceWitness& w,
                                         const LinearForm& form,
                                         const NumberField& field,
                                         const mpz_class& A_bound,
                                         mpfr_prec_t prec) {
    if (!form.leading_nonzero())
        throw std::invalid_argument("norm audit: a_k must be nonzero");
    if (field.classification() == FieldClass::Other)
        throw std::invalid_argument("norm audit: conjugate bounds need a Pisot or Salem field");
    if (sgn(A_bound) <= 0)
        throw std::invalid_argument("norm audit: A bound must be positive");

    NormAuditReport rep;
    rep.k = w.k;
    rep.N_min = min_valid_N(w);
    rep.A_bound = A_bound;

    const int d = field.degree();
    Ball beta = field.beta(prec);
    Ball one = Ball::exact(1L, prec);
    Ball a_l1 = form_embedded_l1(form, field, prec);

    // c1 = ||a|| beta/(beta-1) (1 + eta), eta an explicit bound on the
    // relative size of the three truncation corrections at N = N_min:
    //   eta = 2 (beta/(beta-1)) [ beta^-(2^([lam N]) - 2^N)
    //                            + 2 beta^-(3 y 2^kappa(N) - 2^N) ]
    {
        unsigned Nm = rep.N_min;
        mpz_class e1 = pow2z(lambda_floor(w.k, Nm)) - pow2z(Nm);
        mpz_class e2 = 3 * w.y * pow2z(kappa(w, Nm)) - pow2z(Nm);
        Ball geom = beta.mul(beta.sub(one).recip());
        Ball eta = geom.mul_2si(1).mul(
            beta.pow(e1).recip().add(beta.pow(e2).recip().mul_2si(1)));
        rep.c1 = a_l1.mul(geom).mul(one.add(eta));
    }

    // c2 = 3 sum_r ||a_r||_1 + 2 d A_bound (coefficient-sum bounds; valid
    // since every conjugate has modulus <= 1)
    mpz_class As = 0;
    for (const auto& a : form.coeffs) As += a.coord_l1();
    rep.c2 = 3 * As + 2 * mpz_class(d) * A_bound;

    Ball c2b = Ball::exact(rep.c2, prec);
    for (unsigned N = rep.N_min; N < rep.N_min + 512; ++N) {
        mpz_class ypow = w.y * pow2z(kappa(w, N));
        Ball v = rep.c1;
        if (d >= 2) v = v.mul(c2b.pow(mpz_class(d - 1)));
        v = v.mul(Ball::exact(ypow, prec).pow(mpz_class(d)));
        v = v.mul(beta.pow(pow2z(N)).recip());
        if (v.certainly_less(one)) {
            rep.N0 = N;
            rep.final_value = v;
            rep.certified = true;
            return rep;
        }
    }
    throw budget_error("norm audit: no certified N0 within the scan window");
}

} // namespace tmpow
