#include "tmpow/number_field.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "tmpow/util.hpp"

namespace tmpow {

const char* to_string(FieldClass c) {
    switch (c) {
        case FieldClass::RationalInteger: return "rational-integer";
        case FieldClass::Pisot:           return "pisot";
        case FieldClass::Salem:           return "salem";
        case FieldClass::Other:           return "other";
    }
    return "?";
}

namespace {

mpq_class mpq_from_mpfr(const mpfr_t v) {
    if (mpfr_zero_p(v)) return mpq_class(0);
    mpz_class m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v);
    mpq_class q(m);
    if (e >= 0) {
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e));
        q *= mpq_class(p);
    } else {
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(-e));
        q /= mpq_class(p);
    }
    q.canonicalize();
    return q;
}

// The at-most-one integer inside a ball, when that is decidable.
struct IntegerInBall {
    bool ambiguous = false;
    std::optional<mpz_class> value;
};

IntegerInBall integer_in(const Ball& b) {
    mpfr_t lo, hi;
    mpfr_init2(lo, b.prec());
    mpfr_init2(hi, b.prec());
    b.lower(lo);
    b.upper(hi);
    mpz_class l, h;
    mpfr_get_z(l.get_mpz_t(), lo, MPFR_RNDU);   // ceil
    mpfr_get_z(h.get_mpz_t(), hi, MPFR_RNDD);   // floor
    mpfr_clear(lo);
    mpfr_clear(hi);
    IntegerInBall out;
    if (l > h) return out;                       // no integer
    if (l == h) { out.value = l; return out; }
    out.ambiguous = true;
    return out;
}

bool rects_overlap(const CBall& a, const CBall& b) {
    return a.re.overlaps(b.re) && a.im.overlaps(b.im);
}

} // namespace

// ---------------------------------------------------------------------------
// construction
// ---------------------------------------------------------------------------

NumberField::NumberField(std::vector<mpz_class> coeffs, FieldBudgets budgets)
    : poly_(std::move(coeffs)), budgets_(budgets) {
    if (poly_.degree() < 1)
        throw field_error("minimal polynomial must have degree >= 1");
    if (poly_.degree() > budgets_.max_degree)
        throw field_error("degree exceeds the configured maximum");
    if (!poly_.is_monic())
        throw field_error("minimal polynomial must be monic");

    if (poly_.degree() == 1) {
        // beta = -c0, an integer; beta > 1 required.
        mpz_class b = -poly_[0];
        if (b < 2) throw field_error("no real root > 1");
        class_ = FieldClass::RationalInteger;
        beta_index_ = 0;
        beta_lo_ = mpq_class(b) - mpq_class(1, 2);
        beta_hi_ = mpq_class(b) + mpq_class(1, 2);
        roots_.disks.emplace_back(Ball::exact(b, budgets_.start_prec),
                                  Ball::exact(0L, budgets_.start_prec));
        roots_.prec = budgets_.start_prec;
        roots_.certified = true;
        return;
    }

    // Squarefree test: a nontrivial gcd with the derivative is already a factor.
    ZPoly g = poly_gcd(poly_, poly_.derivative());
    if (g.degree() > 0)
        throw field_error("reducible: repeated factor " + g.str());

    // A rational root of a monic integer polynomial is an integer; catching
    // a root during bisection therefore proves reducibility.
    auto integral_root_error = [this](const mpq_class& at) -> field_error {
        if (at.get_den() == 1)
            return field_error("reducible: factor " + ZPoly::x_minus(at.get_num()).str());
        throw invariant_error("monic polynomial with non-integer rational root");
    };

    // Largest real root > 1 via Sturm (exact), before any numerics.
    SturmChain sturm(poly_);
    if (sturm.count_greater(1) < 1) {
        // Report reducibility in preference to the missing root.
        roots_ = isolate_roots(poly_, budgets_.start_prec, budgets_.prec_ceiling, -64);
        prove_irreducible_or_throw();
        throw field_error("no real root > 1");
    }
    mpq_class lo = 1, hi = mpq_class(cauchy_root_bound(poly_));
    while (sturm.count_in(lo, hi) > 1) {
        mpq_class mid = (lo + hi) / 2;
        if (poly_.sign_at(mid) == 0) throw integral_root_error(mid);
        if (sturm.count_in(mid, hi) >= 1) lo = mid;
        else                              hi = mid;
    }
    // Narrow by plain sign bisection (the isolated root is simple).
    for (int it = 0; it < 20; ++it) {
        mpq_class mid = (lo + hi) / 2;
        int s = poly_.sign_at(mid);
        if (s == 0) throw integral_root_error(mid);
        if (s * poly_.sign_at(hi) < 0) lo = mid;
        else                           hi = mid;
    }
    beta_lo_ = lo;
    beta_hi_ = hi;

    // Isolate all roots, prove irreducibility, sort, classify.
    roots_ = isolate_roots(poly_, budgets_.start_prec, budgets_.prec_ceiling, -64);
    prove_irreducible_or_throw();
    sort_roots_and_find_beta();
    classify();
}

// Sorting: descending real center; ties by ascending |imag|; positive
// imaginary first. Applied once; later refinements preserve indices.
void NumberField::sort_roots_and_find_beta() {
    std::sort(roots_.disks.begin(), roots_.disks.end(),
              [](const CBall& a, const CBall& b) {
                  int c = mpfr_cmp(a.re.center(), b.re.center());
                  if (c != 0) return c > 0;
                  mpfr_t ia, ib;
                  mpfr_init2(ia, 64);
                  mpfr_init2(ib, 64);
                  mpfr_abs(ia, a.im.center(), MPFR_RNDN);
                  mpfr_abs(ib, b.im.center(), MPFR_RNDN);
                  int ci = mpfr_cmp(ia, ib);
                  mpfr_clear(ia);
                  mpfr_clear(ib);
                  if (ci != 0) return ci < 0;
                  return mpfr_cmp(a.im.center(), b.im.center()) > 0;
              });
    // beta's disk is the unique one whose real part contains the exact
    // isolating interval midpoint and whose imaginary part contains 0.
    mpq_class mid = (beta_lo_ + beta_hi_) / 2;
    size_t found = roots_.disks.size();
    for (size_t i = 0; i < roots_.disks.size(); ++i) {
        if (roots_.disks[i].im.contains_zero() && roots_.disks[i].re.contains(mid)) {
            // the interval midpoint may sit just outside the disk; accept
            // any disk overlapping the isolating interval on the real line
            found = i;
            break;
        }
    }
    if (found == roots_.disks.size()) {
        // fall back: disk overlapping (beta_lo, beta_hi)
        for (size_t i = 0; i < roots_.disks.size(); ++i) {
            const CBall& d = roots_.disks[i];
            if (!d.im.contains_zero()) continue;
            mpfr_t l, h;
            mpfr_init2(l, 64);
            mpfr_init2(h, 64);
            d.re.lower(l);
            d.re.upper(h);
            bool over = mpfr_cmp_q(l, beta_hi_.get_mpq_t()) <= 0 &&
                        mpfr_cmp_q(h, beta_lo_.get_mpq_t()) >= 0;
            mpfr_clear(l);
            mpfr_clear(h);
            if (over) { found = i; break; }
        }
    }
    if (found == roots_.disks.size())
        throw invariant_error("no certified disk matches the real root interval");
    beta_index_ = found;
}

// ---------------------------------------------------------------------------
// irreducibility: certified root-subset reconstruction
// ---------------------------------------------------------------------------

void NumberField::prove_irreducible_or_throw() {
    const int d = poly_.degree();
    mpfr_prec_t prec = roots_.prec;
    for (;;) {
        // Conjugation pairing: for each disk, the unique disk meeting its mirror.
        std::vector<int> partner(d, -1);
        bool ok = true;
        for (int i = 0; i < d && ok; ++i) {
            CBall mirror = roots_.disks[i].conj();
            int hit = -1;
            for (int j = 0; j < d; ++j) {
                if (rects_overlap(mirror, roots_.disks[j])) {
                    if (hit >= 0) { ok = false; break; }
                    hit = j;
                }
            }
            if (hit < 0) ok = false;
            partner[i] = hit;
        }

        if (ok) {
            // Units: real roots (self-paired) and conjugate pairs.
            std::vector<std::vector<int>> units;
            std::vector<bool> used(d, false);
            for (int i = 0; i < d; ++i) {
                if (used[i]) continue;
                if (partner[i] == i) units.push_back({i});
                else { units.push_back({i, partner[i]}); used[partner[i]] = true; }
                used[i] = true;
            }

            // Every monic integer factor corresponds to a conjugation-closed
            // subset of roots; enumerate unit subsets of total size <= d/2.
            bool ambiguous = false;
            size_t nunits = units.size();
            for (size_t mask = 1; mask + 1 < (size_t{1} << nunits) && !ambiguous; ++mask) {
                int size = 0;
                for (size_t u = 0; u < nunits; ++u)
                    if (mask & (size_t{1} << u)) size += static_cast<int>(units[u].size());
                if (size == 0 || size > d / 2) continue;

                // product of (x - root) over the subset, in ball arithmetic
                std::vector<CBall> fac;
                fac.push_back(CBall(Ball::exact(1L, prec), Ball::exact(0L, prec)));
                for (size_t u = 0; u < nunits; ++u) {
                    if (!(mask & (size_t{1} << u))) continue;
                    for (int idx : units[u]) {
                        const CBall& z = roots_.disks[idx];
                        std::vector<CBall> next(fac.size() + 1,
                                                CBall(Ball::exact(0L, prec), Ball::exact(0L, prec)));
                        for (size_t t = 0; t < fac.size(); ++t) {
                            next[t + 1] = next[t + 1].add(fac[t]);
                            next[t] = next[t].sub(fac[t].mul(z));
                        }
                        fac = std::move(next);
                    }
                }

                // All coefficients must round to a unique integer; otherwise
                // the subset is rejected (or the precision is insufficient).
                std::vector<mpz_class> cand(fac.size());
                bool reject = false;
                for (size_t t = 0; t < fac.size() && !reject; ++t) {
                    if (!fac[t].im.contains_zero()) { reject = true; break; }
                    IntegerInBall ib = integer_in(fac[t].re);
                    if (ib.ambiguous) { ambiguous = true; break; }
                    if (!ib.value) { reject = true; break; }
                    cand[t] = *ib.value;
                }
                if (ambiguous || reject) continue;
                ZPoly candpoly{std::vector<mpz_class>(cand)};
                if (candpoly.degree() < 1) continue;
                if (poly_.divide_exact(candpoly))
                    throw field_error("reducible: factor " + candpoly.str());
            }
            if (!ambiguous) return;   // every subset decisively rejected
        }

        // tighter disks and retry
        prec *= 2;
        if (prec > budgets_.prec_ceiling)
            throw budget_error("irreducibility: precision ceiling reached");
        RootDisks next = refine_roots(poly_, roots_, prec, -static_cast<long>(prec / 2));
        if (next.certified) roots_ = std::move(next);
    }
}

// ---------------------------------------------------------------------------
// classification
// ---------------------------------------------------------------------------

void NumberField::classify() {
    const int d = poly_.degree();

    if (poly_.is_palindrome()) {
        // Exact circle-root accounting through the trace polynomial:
        // p(x) = x^e T(x + 1/x); T-roots in (-2,2) <-> unit-circle pairs.
        ZPoly T = trace_polynomial(poly_);
        SturmChain st(T);
        int e = d / 2;
        int on = st.count_in(mpq_class(-2), mpq_class(2));
        int plus = st.count_greater(mpq_class(2));
        int minus = st.count_less(mpq_class(-2));
        circle_roots_ = 2 * on;
        if (d >= 4 && plus == 1 && minus == 0 && on == e - 1) {
            class_ = FieldClass::Salem;
            return;
        }
        if (circle_roots_ > 0) {      // circle roots but not the Salem pattern
            class_ = FieldClass::Other;
            return;
        }
    } else {
        circle_roots_ = 0;            // roots on |z|=1 force a palindrome
    }

    // No unit-circle roots: every non-beta modulus is certifiably <1 or >1.
    mpfr_prec_t prec = roots_.prec;
    for (;;) {
        bool undecided = false, all_inside = true;
        for (int i = 0; i < d; ++i) {
            if (static_cast<size_t>(i) == beta_index_) continue;
            Ball m = roots_.disks[i].modulus();
            Ball one = Ball::exact(1L, m.prec());
            if (m.certainly_less(one)) continue;
            if (one.certainly_less(m)) { all_inside = false; continue; }
            undecided = true;
            break;
        }
        if (!undecided) {
            class_ = all_inside ? FieldClass::Pisot : FieldClass::Other;
            return;
        }
        prec *= 2;
        if (prec > budgets_.prec_ceiling)
            throw budget_error("classification: precision ceiling reached");
        RootDisks next = refine_roots(poly_, roots_, prec, -static_cast<long>(prec / 2));
        if (next.certified) roots_ = std::move(next);
    }
}

// ---------------------------------------------------------------------------
// certified access
// ---------------------------------------------------------------------------

void NumberField::ensure_roots(mpfr_prec_t prec) const {
    if (roots_.certified && roots_.prec >= prec) {
        // also require radii <= 2^-prec
        bool tight = true;
        mpfr_t cap;
        mpfr_init2(cap, Ball::kRadiusPrec);
        mpfr_set_ui_2exp(cap, 1, -static_cast<mpfr_exp_t>(prec), MPFR_RNDN);
        for (const auto& dsk : roots_.disks) {
            if (mpfr_cmp(dsk.re.radius(), cap) > 0 || mpfr_cmp(dsk.im.radius(), cap) > 0) {
                tight = false;
                break;
            }
        }
        mpfr_clear(cap);
        if (tight) return;
    }
    mpfr_prec_t work = std::max<mpfr_prec_t>(roots_.prec, prec + 64);
    for (;;) {
        RootDisks next = refine_roots(poly_, roots_, work, -static_cast<long>(prec));
        if (next.certified) {
            roots_ = std::move(next);
            return;
        }
        work *= 2;
        if (work > budgets_.prec_ceiling)
            throw budget_error("root refinement: precision ceiling reached");
    }
}

CBall NumberField::root(size_t index, mpfr_prec_t prec) const {
    if (index >= num_roots()) throw std::out_of_range("root index");
    std::lock_guard<std::mutex> lock(mu_);
    ensure_roots(prec);
    return roots_.disks[index];
}

Ball NumberField::beta(mpfr_prec_t prec) const {
    if (degree() == 1) return Ball::exact(mpz_class(-poly_[0]), prec);
    return root(beta_index_, prec).re;
}

std::pair<mpq_class, mpq_class> NumberField::beta_interval(long min_width_bits) const {
    Ball b = beta(static_cast<mpfr_prec_t>(min_width_bits + 8));
    mpfr_t lo, hi;
    mpfr_init2(lo, b.prec());
    mpfr_init2(hi, b.prec());
    b.lower(lo);
    b.upper(hi);
    auto out = std::make_pair(mpq_from_mpfr(lo), mpq_from_mpfr(hi));
    mpfr_clear(lo);
    mpfr_clear(hi);
    return out;
}

bool NumberField::threshold_check() const {
    static const ZPoly phi_sq_poly({-1, 0, -1, 0, 1});   // x^4 - x^2 - 1
    if (poly_ == phi_sq_poly) return false;              // beta = sqrt(phi) exactly
    if (degree() == 1) {
        mpz_class b = -poly_[0];
        return b * b * b * b - b * b - 1 > 0;
    }
    for (mpfr_prec_t prec = 128;; prec *= 2) {
        if (prec > budgets_.prec_ceiling)
            throw budget_error("threshold_check: precision ceiling reached");
        Ball v = eval_ball(phi_sq_poly, beta(prec));
        if (v.certainly_positive()) return true;
        if (v.certainly_negative()) return false;
    }
}

std::string NumberField::describe() const {
    std::ostringstream os;
    os << poly_.str() << " [" << to_string(class_) << ", beta ~ ";
    Ball b = beta(64);
    os << b.center_d() << "]";
    return os.str();
}

// ---------------------------------------------------------------------------
// FieldElement
// ---------------------------------------------------------------------------

FieldElement::FieldElement(const NumberField& field, std::vector<mpz_class> coords)
    : field_(&field), coords_(std::move(coords)) {
    size_t d = static_cast<size_t>(field.degree());
    if (coords_.size() > d) {
        // reduce high powers modulo the minimal polynomial
        const ZPoly& p = field.min_poly();
        for (size_t i = coords_.size(); i-- > d;) {
            mpz_class c = coords_[i];
            if (c == 0) continue;
            for (int j = 0; j < p.degree(); ++j)
                coords_[i - d + j] -= c * p[j];
            coords_[i] = 0;
        }
    }
    coords_.resize(d, 0);
}

FieldElement FieldElement::zero(const NumberField& field) {
    return FieldElement(field, {});
}

FieldElement FieldElement::one(const NumberField& field) {
    return FieldElement(field, {mpz_class(1)});
}

FieldElement FieldElement::beta(const NumberField& field) {
    return FieldElement(field, {mpz_class(0), mpz_class(1)});
}

FieldElement FieldElement::from_int(const NumberField& field, const mpz_class& v) {
    return FieldElement(field, {v});
}

bool FieldElement::is_zero() const {
    for (const auto& c : coords_)
        if (c != 0) return false;
    return true;
}

void FieldElement::check_same_field(const FieldElement& o) const {
    if (field_ != o.field_)
        throw std::invalid_argument("field mismatch between elements");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    check_same_field(o);
    std::vector<mpz_class> r(coords_.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = coords_[i] + o.coords_[i];
    return FieldElement(*field_, std::move(r));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    check_same_field(o);
    std::vector<mpz_class> r(coords_.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = coords_[i] - o.coords_[i];
    return FieldElement(*field_, std::move(r));
}

FieldElement FieldElement::operator-() const {
    std::vector<mpz_class> r(coords_.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = -coords_[i];
    return FieldElement(*field_, std::move(r));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    check_same_field(o);
    size_t d = coords_.size();
    std::vector<mpz_class> prod(2 * d - 1, 0);
    for (size_t i = 0; i < d; ++i) {
        if (coords_[i] == 0) continue;
        for (size_t j = 0; j < d; ++j)
            prod[i + j] += coords_[i] * o.coords_[j];
    }
    return FieldElement(*field_, std::move(prod));   // ctor reduces
}

FieldElement FieldElement::mul_int(const mpz_class& v) const {
    std::vector<mpz_class> r(coords_.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = coords_[i] * v;
    return FieldElement(*field_, std::move(r));
}

bool FieldElement::operator==(const FieldElement& o) const {
    return field_ == o.field_ && coords_ == o.coords_;
}

CBall FieldElement::embed(size_t root_index, mpfr_prec_t prec) const {
    ZPoly cp{std::vector<mpz_class>(coords_)};
    for (mpfr_prec_t work = prec + 64;; work *= 2) {
        if (work > field_->budgets().prec_ceiling)
            throw budget_error("embed: precision ceiling reached");
        CBall z = field_->root(root_index, work);
        CBall v = eval_cball(cp, z);
        // relative radius <= 2^-prec * max(1, |center|)
        mpfr_t cap, mx;
        mpfr_init2(cap, Ball::kRadiusPrec);
        mpfr_init2(mx, Ball::kRadiusPrec);
        mpfr_set_ui_2exp(cap, 1, -static_cast<mpfr_exp_t>(prec), MPFR_RNDN);
        mpfr_t are, aim;
        mpfr_init2(are, Ball::kRadiusPrec);
        mpfr_init2(aim, Ball::kRadiusPrec);
        mpfr_abs(are, v.re.center(), MPFR_RNDU);
        mpfr_abs(aim, v.im.center(), MPFR_RNDU);
        mpfr_max(mx, are, aim, MPFR_RNDU);
        if (mpfr_cmp_ui(mx, 1) < 0) mpfr_set_ui(mx, 1, MPFR_RNDN);
        mpfr_mul(cap, cap, mx, MPFR_RNDD);
        bool good = mpfr_cmp(v.re.radius(), cap) <= 0 && mpfr_cmp(v.im.radius(), cap) <= 0;
        mpfr_clears(cap, mx, are, aim, nullptr);
        if (good) return v;
    }
}

Ball FieldElement::embed_beta(mpfr_prec_t prec) const {
    ZPoly cp{std::vector<mpz_class>(coords_)};
    for (mpfr_prec_t work = prec + 64;; work *= 2) {
        if (work > field_->budgets().prec_ceiling)
            throw budget_error("embed_beta: precision ceiling reached");
        Ball v = eval_ball(cp, field_->beta(work));
        mpfr_t cap, mx;
        mpfr_init2(cap, Ball::kRadiusPrec);
        mpfr_init2(mx, Ball::kRadiusPrec);
        mpfr_set_ui_2exp(cap, 1, -static_cast<mpfr_exp_t>(prec), MPFR_RNDN);
        mpfr_abs(mx, v.center(), MPFR_RNDU);
        if (mpfr_cmp_ui(mx, 1) < 0) mpfr_set_ui(mx, 1, MPFR_RNDN);
        mpfr_mul(cap, cap, mx, MPFR_RNDD);
        bool good = mpfr_cmp(v.radius(), cap) <= 0;
        mpfr_clears(cap, mx, nullptr);
        if (good) return v;
    }
}

mpz_class FieldElement::norm() const {
    ZPoly cp{std::vector<mpz_class>(coords_)};
    if (cp.is_zero()) return 0;
    return resultant(field_->min_poly(), cp);
}

mpz_class FieldElement::coord_l1() const {
    mpz_class s = 0;
    for (const auto& c : coords_) s += abs(c);
    return s;
}

std::string FieldElement::str() const {
    ZPoly cp{std::vector<mpz_class>(coords_)};
    return cp.str("b");
}

} // namespace tmpow
