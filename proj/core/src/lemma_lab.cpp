#include "tmpow/lemma_lab.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "tmpow/thue_morse.hpp"
#include "tmpow/util.hpp"

namespace tmpow {

const char* to_string(LemmaId id) {
    switch (id) {
        case LemmaId::ShiftInvariance22: return "2.2";
        case LemmaId::SpecialPoints23:   return "2.3";
        case LemmaId::LowerPowers24:     return "2.4";
    }
    return "?";
}

namespace {

// t extended by t(0) = 0 (s2(0) = 0 is even); the proof-internal identities
// hit the argument 0 at j = 0.
int tm0(const mpz_class& v) {
    return sgn(v) == 0 ? 0 : tm(v);
}

mpz_class pow2z(unsigned long e) {
    mpz_class t;
    mpz_ui_pow_ui(t.get_mpz_t(), 2, e);
    return t;
}

int diff_at(const CongruenceWitness& w, unsigned N, const mpz_class& j, unsigned r) {
    unsigned long kap = kappa(w, N);
    // fast path: (y 2^(kap+1) + j)^r fits in 128 bits
    if (w.y.fits_ulong_p() && j.fits_ulong_p() &&
        kap + 2 + mpz_sizeinbase(w.y.get_mpz_t(), 2) <= 64) {
        unsigned __int128 hi128 =
            (static_cast<unsigned __int128>(w.y.get_ui()) << (kap + 1)) + j.get_ui();
        if (hi128 >> 63 == 0) {
            uint64_t hi = static_cast<uint64_t>(hi128);
            uint64_t lo = (w.y.get_ui() << kap) + j.get_ui();
            if (static_cast<unsigned>(64 - __builtin_clzll(hi)) * r <= 127) {
                unsigned __int128 a = 1, b = 1;
                for (unsigned e = 0; e < r; ++e) { a *= hi; b *= lo; }
                return tm_u128(a) - tm_u128(b);
            }
        }
    }
    mpz_class base0 = (w.y << kap) + j;
    mpz_class base1 = (w.y << (kap + 1)) + j;
    mpz_class p0, p1;
    mpz_pow_ui(p0.get_mpz_t(), base0.get_mpz_t(), r);
    mpz_pow_ui(p1.get_mpz_t(), base1.get_mpz_t(), r);
    return tm(p1) - tm(p0);
}

} // namespace

int u_value(const CongruenceWitness& w, unsigned N, const mpz_class& j) {
    if (N < 1) throw std::invalid_argument("u_value: N >= 1 required");
    return diff_at(w, N, j, w.k);
}

int u_value_pow(const CongruenceWitness& w, unsigned N, const mpz_class& j, unsigned r) {
    if (r < 1 || r > w.k) throw std::invalid_argument("u_value_pow: r in 1..k");
    return diff_at(w, N, j, r);
}

std::vector<mpz_class> binomial_terms(const CongruenceWitness& w, const mpz_class& j) {
    std::vector<mpz_class> out(w.k + 1);
    for (unsigned l = 0; l <= w.k; ++l) {
        mpz_class bin;
        mpz_bin_uiui(bin.get_mpz_t(), w.k, l);
        mpz_class yp, jp;
        mpz_pow_ui(yp.get_mpz_t(), w.y.get_mpz_t(), l);
        mpz_pow_ui(jp.get_mpz_t(), j.get_mpz_t(), w.k - l);
        out[l] = bin * yp * jp;
    }
    return out;
}

bool binomial_bound_holds(const CongruenceWitness& w, unsigned N, const mpz_class& j) {
    mpz_class cap = pow2z(kappa(w, N));
    auto terms = binomial_terms(w, j);
    for (unsigned l = 1; l <= w.k; ++l)
        if (terms[l] >= cap) return false;
    return true;
}

bool congruence_identity_holds(const CongruenceWitness& w, unsigned N,
                               const mpz_class& j, int delta) {
    if (delta != 0 && delta != 1) throw std::invalid_argument("delta in {0,1}");
    unsigned long kap = kappa(w, N);
    mpz_class base = (w.y << (kap + delta)) + j;
    mpz_class lhs_arg;
    mpz_pow_ui(lhs_arg.get_mpz_t(), base.get_mpz_t(), w.k);
    int lhs = tm0(lhs_arg);

    mpz_class jk, jk1;
    mpz_pow_ui(jk.get_mpz_t(), j.get_mpz_t(), w.k);
    mpz_pow_ui(jk1.get_mpz_t(), j.get_mpz_t(), w.k - 1);
    int rhs = tm0(jk) ^ tm0(w.z * jk1);
    auto terms = binomial_terms(w, j);
    for (unsigned l = 2; l <= w.k; ++l) rhs ^= tm0(terms[l]);
    return lhs == rhs;
}

// ---------------------------------------------------------------------------
// plans
// ---------------------------------------------------------------------------

std::vector<mpz_class> sample_plan(const mpz_class& range_end, uint64_t budget,
                                   uint64_t seed) {
    if (budget < 1) throw std::invalid_argument("sample_plan: budget >= 1");
    mpz_class size = range_end + 1;
    if (size <= mpz_class(static_cast<unsigned long>(budget))) {
        std::vector<mpz_class> all;
        for (mpz_class v = 0; v <= range_end; ++v) all.push_back(v);
        return all;
    }
    std::set<mpz_class> chosen;
    uint64_t lows = budget / 2;
    for (uint64_t i = 0; i < lows && chosen.size() < budget; ++i)
        chosen.insert(mpz_class(static_cast<unsigned long>(i)));
    for (int i = 0; i < 16 && chosen.size() < budget; ++i)
        chosen.insert(mpz_class(range_end - i));
    SplitMix64 rng(seed);
    uint64_t guard = 0, max_draws = 50 * budget + 1000;
    while (chosen.size() < budget) {
        if (++guard > max_draws)
            throw budget_error("sample_plan: could not fill the budget");
        mpz_class v(static_cast<unsigned long>(rng.next()));
        v <<= 64;
        v += mpz_class(static_cast<unsigned long>(rng.next()));
        v %= size;
        chosen.insert(v);
    }
    return std::vector<mpz_class>(chosen.begin(), chosen.end());
}

namespace {

// Lemma 2.2's composite range: indices [0, 2^N) map to j = index; indices
// [2^N, 2^N + 2^(N-3)] map to j = 2^N + 2 (index - 2^N).
mpz_class lemma22_range_size(unsigned N) {
    if (N < 3) throw std::invalid_argument("lemma 2.2 range needs N >= 3");
    return pow2z(N) + pow2z(N - 3) + 1;
}

mpz_class lemma22_index_to_j(unsigned N, const mpz_class& idx) {
    mpz_class top = pow2z(N);
    if (idx < top) return idx;
    return top + 2 * (idx - top);
}

bool lemma22_in_range(unsigned N, const mpz_class& j) {
    if (N < 3) return false;
    mpz_class top = pow2z(N);
    if (sgn(j) < 0) return false;
    if (j < top) return true;
    mpz_class rem = j - top;
    if (rem % 2 != 0) return false;
    return rem / 2 <= pow2z(N - 3);
}

LemmaReport sweep(const CongruenceWitness& w, unsigned N, unsigned r, LemmaId lemma,
                  const std::vector<mpz_class>& plan, unsigned workers) {
    LemmaReport rep;
    rep.k = w.k;
    rep.N = N;
    rep.lemma = lemma;
    rep.r = r;
    rep.j_tested = plan.size();
    if (plan.empty()) return rep;

    uint64_t chunk = std::max<uint64_t>(1024, plan.size() / (8 * std::max(1u, workers)));
    uint64_t nchunks = (plan.size() + chunk - 1) / chunk;
    std::vector<std::vector<mpz_class>> fails(nchunks);
    parallel_chunks(plan.size(), chunk, workers,
                    [&](uint64_t ci, uint64_t b, uint64_t e) {
                        for (uint64_t i = b; i < e; ++i)
                            if (diff_at(w, N, plan[i], r) != 0)
                                fails[ci].push_back(plan[i]);
                    });
    for (auto& f : fails)
        rep.j_failed.insert(rep.j_failed.end(), f.begin(), f.end());
    return rep;
}

} // namespace

std::vector<mpz_class> lemma22_plan(const CongruenceWitness& w, unsigned N,
                                    const SweepConfig& cfg, bool* sampled,
                                    std::string* note) {
    (void)w;
    mpz_class size = lemma22_range_size(N);
    std::ostringstream os;
    std::vector<mpz_class> plan;
    if (size <= mpz_class(static_cast<unsigned long>(cfg.full_range_budget))) {
        for (mpz_class i = 0; i < size; ++i)
            plan.push_back(lemma22_index_to_j(N, i));
        if (sampled) *sampled = false;
        os << "full range, " << size.get_str() << " values";
    } else {
        auto idx = sample_plan(size - 1, cfg.sample_budget, cfg.seed);
        plan.reserve(idx.size());
        for (const auto& i : idx) plan.push_back(lemma22_index_to_j(N, i));
        if (sampled) *sampled = true;
        os << "sampled " << idx.size() << " of " << size.get_str()
           << " (seed " << cfg.seed << ")";
    }
    if (note) *note = os.str();
    return plan;
}

LemmaReport verify_shift_invariance(const CongruenceWitness& w, unsigned N,
                                    const std::vector<mpz_class>& plan,
                                    unsigned workers, bool enforce_threshold) {
    if (enforce_threshold && N < min_valid_N(w))
        throw std::invalid_argument("verify_shift_invariance: N below min_valid_N");
    for (const auto& j : plan)
        if (!lemma22_in_range(N, j))
            throw std::invalid_argument("plan value outside the lemma range: " + j.get_str());
    return sweep(w, N, w.k, LemmaId::ShiftInvariance22, plan, workers);
}

LemmaReport verify_special_j(const CongruenceWitness& w, unsigned N,
                             bool enforce_threshold) {
    if (enforce_threshold && N < min_valid_N(w))
        throw std::invalid_argument("verify_special_j: N below min_valid_N");
    LemmaReport rep;
    rep.k = w.k;
    rep.N = N;
    rep.lemma = LemmaId::SpecialPoints23;
    rep.j_tested = 2;
    mpz_class j1 = pow2z(N) + 1, j3 = pow2z(N) + 3;
    int u1 = u_value(w, N, j1);
    int u3 = u_value(w, N, j3);
    if (u1 == 0) rep.j_failed.push_back(j1);
    if (u3 != 0) rep.j_failed.push_back(j3);
    rep.sign_at_special = u1;
    rep.plan_note = "two-point check at 2^N+1 and 2^N+3";
    return rep;
}

std::vector<mpz_class> lemma24_plan(const CongruenceWitness& w, unsigned N,
                                    const SweepConfig& cfg, bool* sampled,
                                    std::string* note) {
    mpz_class range_end = pow2z(lambda_floor(w.k, N));
    std::ostringstream os;
    std::vector<mpz_class> plan;
    if (range_end + 1 <= mpz_class(static_cast<unsigned long>(cfg.full_range_budget))) {
        for (mpz_class j = 0; j <= range_end; ++j) plan.push_back(j);
        if (sampled) *sampled = false;
        os << "full range, " << mpz_class(range_end + 1).get_str() << " values";
    } else {
        plan = sample_plan(range_end, cfg.sample_budget, cfg.seed);
        if (sampled) *sampled = true;
        os << "sampled " << plan.size() << " of " << mpz_class(range_end + 1).get_str()
           << " (seed " << cfg.seed << ")";
    }
    if (note) *note = os.str();
    return plan;
}

LemmaReport verify_lower_powers(const CongruenceWitness& w, unsigned N, unsigned r,
                                const std::vector<mpz_class>& plan,
                                unsigned workers, bool enforce_threshold) {
    if (r < 1 || r >= w.k)
        throw std::invalid_argument("verify_lower_powers: r must be in 1..k-1");
    if (enforce_threshold && N < min_valid_N(w))
        throw std::invalid_argument("verify_lower_powers: N below min_valid_N");
    mpz_class range_end = pow2z(lambda_floor(w.k, N));
    for (const auto& j : plan)
        if (sgn(j) < 0 || j > range_end)
            throw std::invalid_argument("plan value outside the lemma range: " + j.get_str());
    return sweep(w, N, r, LemmaId::LowerPowers24, plan, workers);
}

} // namespace tmpow
