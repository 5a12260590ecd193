#include "tmpow/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "tmpow/util.hpp"
#include "tmpow/ball.hpp"

namespace tmpow {

void ZPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

ZPoly ZPoly::operator+(const ZPoly& o) const {
    std::vector<mpz_class> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return ZPoly(std::move(r));
}

ZPoly ZPoly::operator-(const ZPoly& o) const {
    std::vector<mpz_class> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return ZPoly(std::move(r));
}

ZPoly ZPoly::operator*(const ZPoly& o) const {
    if (is_zero() || o.is_zero()) return ZPoly();
    std::vector<mpz_class> r(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j)
            r[i + j] += c_[i] * o.c_[j];
    return ZPoly(std::move(r));
}

ZPoly ZPoly::derivative() const {
    if (c_.size() <= 1) return ZPoly();
    std::vector<mpz_class> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return ZPoly(std::move(r));
}

ZPoly ZPoly::reversed() const {
    std::vector<mpz_class> r(c_.rbegin(), c_.rend());
    return ZPoly(std::move(r));
}

bool ZPoly::is_palindrome() const {
    if (c_.empty()) return false;
    size_t n = c_.size();
    for (size_t i = 0; i < n / 2 + 1; ++i)
        if (c_[i] != c_[n - 1 - i]) return false;
    return true;
}

mpz_class ZPoly::eval(const mpz_class& v) const {
    mpz_class acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * v + *it;
    return acc;
}

mpq_class ZPoly::eval(const mpq_class& v) const {
    mpq_class acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * v + *it;
    return acc;
}

int ZPoly::sign_at(const mpq_class& v) const {
    if (c_.empty()) return 0;
    // p(a/b) has the sign of sum c_i a^i b^(deg-i).
    const mpz_class& a = v.get_num();
    const mpz_class& b = v.get_den();
    mpz_class acc = 0, bp = 1;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc = acc * a + *it * bp;
        if (it + 1 != c_.rend()) bp *= b;
    }
    return sgn(acc);
}

mpz_class ZPoly::content() const {
    mpz_class g = 0;
    for (const auto& c : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

ZPoly ZPoly::primitive_part() const {
    if (is_zero()) return ZPoly();
    mpz_class g = content();
    if (sgn(lc()) < 0) g = -g;
    std::vector<mpz_class> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] / g;
    return ZPoly(std::move(r));
}

std::optional<ZPoly> ZPoly::divide_exact(const ZPoly& o) const {
    if (o.is_zero()) return std::nullopt;
    if (is_zero()) return ZPoly();
    if (degree() < o.degree()) return std::nullopt;
    std::vector<mpz_class> rem = c_;
    std::vector<mpz_class> q(degree() - o.degree() + 1, 0);
    for (int i = degree(); i >= o.degree(); --i) {
        mpz_class& top = rem[i];
        if (top == 0) continue;
        mpz_class qi, r;
        mpz_tdiv_qr(qi.get_mpz_t(), r.get_mpz_t(), top.get_mpz_t(), o.lc().get_mpz_t());
        if (r != 0) return std::nullopt;
        q[i - o.degree()] = qi;
        for (int j = 0; j <= o.degree(); ++j)
            rem[i - o.degree() + j] -= qi * o[j];
    }
    for (const auto& r : rem)
        if (r != 0) return std::nullopt;
    return ZPoly(std::move(q));
}

std::string ZPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const mpz_class& a = c_[i];
        if (a == 0) continue;
        if (!first) os << (sgn(a) > 0 ? " + " : " - ");
        else if (sgn(a) < 0) os << "-";
        first = false;
        mpz_class mag = abs(a);
        if (mag != 1 || i == 0) os << mag.get_str();
        if (i > 0) {
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// gcd over Q via primitive pseudo-remainder sequence
// ---------------------------------------------------------------------------

static ZPoly pseudo_rem(const ZPoly& a, const ZPoly& b) {
    // prem(a, b): lc(b)^(deg a - deg b + 1) * a mod b, exact over Z.
    std::vector<mpz_class> r = a.coeffs();
    int da = a.degree(), db = b.degree();
    const mpz_class& lb = b.lc();
    for (int i = da; i >= db; --i) {
        mpz_class top = r[i];
        for (int j = 0; j <= i; ++j) r[j] *= lb;
        if (top != 0)
            for (int j = 0; j <= db; ++j)
                r[i - db + j] -= top * b[j];
        r[i] = 0;
    }
    r.resize(db > 0 ? db : 0);
    return ZPoly(std::move(r));
}

ZPoly poly_gcd(const ZPoly& a, const ZPoly& b) {
    ZPoly f = a.is_zero() ? ZPoly() : a.primitive_part();
    ZPoly g = b.is_zero() ? ZPoly() : b.primitive_part();
    if (f.is_zero()) return g;
    if (g.is_zero()) return f;
    if (f.degree() < g.degree()) std::swap(f, g);
    while (!g.is_zero()) {
        ZPoly r = pseudo_rem(f, g);
        f = std::move(g);
        g = r.is_zero() ? ZPoly() : r.primitive_part();
    }
    return f;
}

// ---------------------------------------------------------------------------
// Resultant via Sylvester matrix + Bareiss fraction-free elimination
// ---------------------------------------------------------------------------

mpz_class resultant(const ZPoly& f, const ZPoly& g) {
    int df = f.degree(), dg = g.degree();
    if (df < 0 || dg < 0) return 0;
    if (df == 0 && dg == 0) return 1;
    if (dg == 0) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), g[0].get_mpz_t(), df);
        return r;
    }
    if (df == 0) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), f[0].get_mpz_t(), dg);
        return r;
    }
    int n = df + dg;
    std::vector<std::vector<mpz_class>> mat(n, std::vector<mpz_class>(n, 0));
    for (int row = 0; row < dg; ++row)
        for (int i = 0; i <= df; ++i)
            mat[row][row + i] = f[df - i];
    for (int row = 0; row < df; ++row)
        for (int i = 0; i <= dg; ++i)
            mat[dg + row][row + i] = g[dg - i];

    // Bareiss: exact integer elimination; the final pivot is the determinant.
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (mat[k][k] == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (mat[i][k] != 0) { piv = i; break; }
            if (piv < 0) return 0;
            std::swap(mat[k], mat[piv]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                mat[i][j] = mat[k][k] * mat[i][j] - mat[i][k] * mat[k][j];
                mpz_divexact(mat[i][j].get_mpz_t(), mat[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            mat[i][k] = 0;
        }
        prev = mat[k][k];
    }
    return sign > 0 ? mat[n - 1][n - 1] : mpz_class(-mat[n - 1][n - 1]);
}

// ---------------------------------------------------------------------------
// Sturm chains
// ---------------------------------------------------------------------------

SturmChain::SturmChain(const ZPoly& p) {
    ZPoly f = p.primitive_part();
    if (f.is_zero()) return;
    // Squarefree part so multiple roots are counted once.
    ZPoly g = poly_gcd(f, f.derivative());
    if (g.degree() > 0) f = f.divide_exact(g).value().primitive_part();
    chain_.push_back(f);
    if (f.degree() == 0) return;
    chain_.push_back(f.derivative().primitive_part());
    while (chain_.back().degree() > 0) {
        int e = chain_[chain_.size() - 2].degree() - chain_.back().degree() + 1;
        bool neg_mult = sgn(chain_.back().lc()) < 0 && (e % 2 == 1);
        ZPoly r = pseudo_rem(chain_[chain_.size() - 2], chain_.back());
        if (r.is_zero()) break;
        // prem = lc^e * rem; when lc^e < 0 flip back so r is a positive
        // multiple of the true remainder, then divide out the content and
        // negate per the Sturm recurrence.
        if (neg_mult) r = ZPoly() - r;
        mpz_class g = r.content();
        std::vector<mpz_class> q(r.coeffs().size());
        for (size_t i = 0; i < q.size(); ++i) q[i] = -r[i] / g;
        chain_.push_back(ZPoly(std::move(q)));
    }
}

static int count_variations(const std::vector<int>& signs) {
    int v = 0, last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

int SturmChain::variations_at(const mpq_class& v) const {
    std::vector<int> signs;
    signs.reserve(chain_.size());
    for (const auto& p : chain_) signs.push_back(p.sign_at(v));
    return count_variations(signs);
}

int SturmChain::variations_at_pos_inf() const {
    std::vector<int> signs;
    for (const auto& p : chain_) signs.push_back(p.is_zero() ? 0 : sgn(p.lc()));
    return count_variations(signs);
}

int SturmChain::variations_at_neg_inf() const {
    std::vector<int> signs;
    for (const auto& p : chain_) {
        if (p.is_zero()) { signs.push_back(0); continue; }
        int s = sgn(p.lc());
        signs.push_back(p.degree() % 2 == 0 ? s : -s);
    }
    return count_variations(signs);
}

int SturmChain::count_in(const mpq_class& lo, const mpq_class& hi) const {
    if (chain_.empty()) return 0;
    int n = variations_at(lo) - variations_at(hi);
    // Sturm counts roots in (lo, hi]; make the interval open.
    if (chain_[0].sign_at(hi) == 0) --n;
    return n;
}

int SturmChain::count_real() const {
    if (chain_.empty()) return 0;
    return variations_at_neg_inf() - variations_at_pos_inf();
}

int SturmChain::count_greater(const mpq_class& lo) const {
    if (chain_.empty()) return 0;
    return variations_at(lo) - variations_at_pos_inf();
}

int SturmChain::count_less(const mpq_class& hi) const {
    if (chain_.empty()) return 0;
    int n = variations_at_neg_inf() - variations_at(hi);
    if (chain_[0].sign_at(hi) == 0) --n;
    return n;
}

// ---------------------------------------------------------------------------
// Trace polynomial of a palindrome
// ---------------------------------------------------------------------------

ZPoly trace_polynomial(const ZPoly& p) {
    if (!p.is_palindrome() || p.degree() % 2 != 0 || p.degree() < 2)
        throw std::invalid_argument("trace_polynomial: need a palindrome of even degree");
    int e = p.degree() / 2;
    // V_j(z) with x^j + x^-j = V_j(x + 1/x): V_0 = 2, V_1 = z, V_j = z V_(j-1) - V_(j-2).
    std::vector<ZPoly> V;
    V.push_back(ZPoly({2}));
    V.push_back(ZPoly({0, 1}));
    ZPoly z({0, 1});
    for (int j = 2; j <= e; ++j) V.push_back(z * V[j - 1] - V[j - 2]);
    ZPoly T({p[e]});
    for (int j = 1; j <= e; ++j) T = T + ZPoly({p[e + j]}) * V[j];
    return T;
}

mpz_class cauchy_root_bound(const ZPoly& p) {
    if (p.degree() < 1) return 1;
    mpz_class maxc = 0;
    for (int i = 0; i < p.degree(); ++i) maxc = std::max(maxc, mpz_class(abs(p[i])));
    mpz_class lc = abs(p.lc());
    return 1 + maxc / lc + 1;   // ceil-safe
}

Ball eval_ball(const ZPoly& p, const Ball& x) {
    mpfr_prec_t prec = x.prec();
    if (p.is_zero()) return Ball::zero(prec);
    Ball acc = Ball::exact(p.lc(), prec);
    for (int i = p.degree(); i-- > 0;)
        acc = acc.mul(x).add(Ball::exact(p[i], prec));
    return acc;
}

CBall eval_cball(const ZPoly& p, const CBall& z) {
    mpfr_prec_t prec = z.re.prec();
    if (p.is_zero()) return CBall(Ball::zero(prec), Ball::zero(prec));
    CBall acc(Ball::exact(p.lc(), prec), Ball::exact(0L, prec));
    for (int i = p.degree(); i-- > 0;)
        acc = acc.mul(z).add(CBall(Ball::exact(p[i], prec), Ball::exact(0L, prec)));
    return acc;
}

} // namespace tmpow
