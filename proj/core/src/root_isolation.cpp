#include "tmpow/root_isolation.hpp"

#include <algorithm>
#include <climits>
#include <cmath>

#include "tmpow/util.hpp"

namespace tmpow {

namespace {

// Plain (non-certified) complex point arithmetic for the Aberth iteration,
// carried as radius-0 balls whose centers are re-snapped after each step.
CBall snap(const CBall& z, mpfr_prec_t prec) {
    return CBall(Ball::point(z.re.center(), prec), Ball::point(z.im.center(), prec));
}

CBall eval_poly(const std::vector<CBall>& coeff, const CBall& z) {
    CBall acc = coeff.back();
    for (size_t i = coeff.size() - 1; i-- > 0;)
        acc = acc.mul(z).add(coeff[i]);
    return acc;
}

std::vector<CBall> ball_coeffs(const ZPoly& p, mpfr_prec_t prec) {
    std::vector<CBall> c;
    c.reserve(p.degree() + 1);
    for (int i = 0; i <= p.degree(); ++i)
        c.push_back(CBall(Ball::exact(p[i], prec), Ball::exact(0L, prec)));
    return c;
}

// Exponent of the larger component's center; LONG_MIN for exact zero.
long top_exp(const CBall& v) {
    long e = LONG_MIN;
    if (!mpfr_zero_p(v.re.center()))
        e = std::max(e, static_cast<long>(mpfr_get_exp(v.re.center())));
    if (!mpfr_zero_p(v.im.center()))
        e = std::max(e, static_cast<long>(mpfr_get_exp(v.im.center())));
    return e;
}

CBall cone(mpfr_prec_t prec) {
    return CBall(Ball::exact(1L, prec), Ball::exact(0L, prec));
}

void aberth_iterate(const ZPoly& p, std::vector<CBall>& zs, mpfr_prec_t prec,
                    int max_iters) {
    const int d = p.degree();
    auto coeff = ball_coeffs(p, prec);
    auto dcoeff = ball_coeffs(p.derivative(), prec);

    for (int iter = 0; iter < max_iters; ++iter) {
        long worst = LONG_MIN;   // max over i of exp(step) - exp(max(1,|z|))
        for (int i = 0; i < d; ++i) {
            CBall z = snap(zs[i], prec);
            CBall pv = eval_poly(coeff, z);
            if (pv.contains_zero() && pv.re.is_exact() && pv.im.is_exact()) {
                continue;   // exactly on a root
            }
            CBall dv = eval_poly(dcoeff, z);
            if (dv.contains_zero()) {
                Ball eps = Ball::exact(1L, prec).mul_2si(-static_cast<long>(prec) / 2);
                zs[i] = CBall(z.re.add(eps), z.im.add(eps));
                worst = std::max(worst, 0L);
                continue;
            }
            CBall newton = pv.div(dv);
            CBall s(Ball::exact(0L, prec), Ball::exact(0L, prec));
            for (int j = 0; j < d; ++j) {
                if (j == i) continue;
                CBall diff = z.sub(snap(zs[j], prec));
                if (diff.contains_zero()) continue;
                s = s.add(cone(prec).div(diff));
            }
            CBall denom = cone(prec).sub(newton.mul(s));
            CBall step = denom.contains_zero() ? newton : newton.div(denom);
            zs[i] = snap(z.sub(step), prec);
            long se = top_exp(step);
            if (se != LONG_MIN) {
                long ze = std::max(top_exp(z), 0L);
                worst = std::max(worst, se - ze);
            }
        }
        if (worst < -(static_cast<long>(prec) - 8)) break;
    }
}

} // namespace

RootDisks refine_roots(const ZPoly& p, const RootDisks& prev, mpfr_prec_t prec,
                       long target_radius_exp) {
    const int d = p.degree();
    std::vector<CBall> zs;
    zs.reserve(prev.disks.size());
    for (const auto& dsk : prev.disks) zs.push_back(snap(dsk, prec));
    aberth_iterate(p, zs, prec, 64 + 2 * d);

    RootDisks out;
    out.prec = prec;
    out.certified = false;

    auto coeff = ball_coeffs(p, prec);
    std::vector<Ball> radii;
    for (int i = 0; i < d; ++i) {
        CBall num = eval_poly(coeff, zs[i]);
        CBall den = coeff.back();
        for (int j = 0; j < d; ++j)
            if (j != i) den = den.mul(zs[i].sub(zs[j]));
        if (den.contains_zero()) {        // coincident approximations
            out.disks = std::move(zs);
            return out;
        }
        radii.push_back(num.div(den).modulus().mul(Ball::exact(static_cast<long>(d), prec)));
    }

    // Pairwise disjoint Weierstrass disks => one root per disk.
    bool disjoint = true;
    for (int i = 0; i < d && disjoint; ++i)
        for (int j = i + 1; j < d && disjoint; ++j) {
            Ball dist = zs[i].sub(zs[j]).modulus();
            if (!radii[i].add(radii[j]).certainly_less(dist)) disjoint = false;
        }

    bool small_enough = true;
    if (target_radius_exp != 0) {
        mpfr_t up, cap;
        mpfr_init2(up, Ball::kRadiusPrec);
        mpfr_init2(cap, Ball::kRadiusPrec);
        mpfr_set_ui_2exp(cap, 1, target_radius_exp, MPFR_RNDN);
        for (int i = 0; i < d && small_enough; ++i) {
            radii[i].upper(up);
            if (mpfr_cmp(up, cap) > 0) small_enough = false;
        }
        mpfr_clears(up, cap, nullptr);
    }

    // Rectangular enclosures widened by the certified disk radius.
    for (int i = 0; i < d; ++i) {
        mpfr_t up;
        mpfr_init2(up, Ball::kRadiusPrec);
        radii[i].upper(up);
        Ball wid = Ball::point(up, prec).abs();
        Ball rre = Ball::hull(Ball::point(zs[i].re.center(), prec).sub(wid),
                              Ball::point(zs[i].re.center(), prec).add(wid));
        Ball rim = Ball::hull(Ball::point(zs[i].im.center(), prec).sub(wid),
                              Ball::point(zs[i].im.center(), prec).add(wid));
        out.disks.emplace_back(std::move(rre), std::move(rim));
        mpfr_clear(up);
    }
    out.certified = disjoint && small_enough;
    return out;
}

RootDisks isolate_roots(const ZPoly& p, mpfr_prec_t start_prec,
                        mpfr_prec_t prec_ceiling, long target_radius_exp) {
    const int d = p.degree();
    if (d < 1) throw std::invalid_argument("isolate_roots: constant polynomial");

    mpfr_prec_t prec = std::max<mpfr_prec_t>(start_prec, 64);
    double R = std::min(1e12, mpz_get_d(cauchy_root_bound(p).get_mpz_t()));
    RootDisks cfg;
    cfg.prec = prec;
    for (int i = 0; i < d; ++i) {
        // perturbed ring: irrational-ish phase offset avoids symmetry locks
        double theta = 2.0 * 3.14159265358979323846 * i / d + 0.7390851332151607;
        auto q = [&](double v) {
            return Ball::from_mpq(mpq_class(static_cast<long>(v * 1048576.0), 1048576), prec);
        };
        cfg.disks.emplace_back(Ball::point(q(R * std::cos(theta)).center(), prec),
                               Ball::point(q(R * std::sin(theta)).center(), prec));
    }

    for (; prec <= prec_ceiling; prec *= 2) {
        RootDisks got = refine_roots(p, cfg, prec, target_radius_exp);
        if (got.certified) return got;
        cfg = std::move(got);   // polished centers seed the next precision
    }
    throw budget_error("isolate_roots: precision ceiling reached without certified isolation");
}

} // namespace tmpow
