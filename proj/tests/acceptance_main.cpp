// Acceptance suite: one line per criterion, nonzero exit on any failure.
//
// Each criterion is self-contained and prints
//   [PASS|FAIL] criterion N: <summary> (<elapsed> s, limit <limit> s)
// Runtime limits are part of the criteria and are enforced.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "tmpow/approx.hpp"
#include "tmpow/beta_expansion.hpp"
#include "tmpow/lemma_lab.hpp"
#include "tmpow/number_field.hpp"
#include "tmpow/seq_stats.hpp"
#include "tmpow/thue_morse.hpp"
#include "tmpow/util.hpp"

using namespace tmpow;

namespace {

int g_failures = 0;

void criterion(int id, const std::string& what, double limit_s,
               const std::function<bool(std::string&)>& body) {
    std::string detail;
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
        ok = false;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = secs < limit_s;
    if (!in_time) detail += " [over time limit]";
    bool pass = ok && in_time;
    if (!pass) ++g_failures;
    std::printf("[%s] criterion %2d: %s%s%s (%.2f s, limit %.0f s)\n",
                pass ? "PASS" : "FAIL", id, what.c_str(),
                detail.empty() ? "" : " - ", detail.c_str(), secs, limit_s);
    std::fflush(stdout);
}

mpz_class pw2(unsigned long e) {
    mpz_class t;
    mpz_ui_pow_ui(t.get_mpz_t(), 2, e);
    return t;
}

} // namespace

int main() {
    std::printf("acceptance suite (%u hardware threads)\n", default_workers());

    // 1. Witness construction for every k in 2..64.
    criterion(1, "witness suite k = 2..64: congruences, tm identities, suffix forms", 1.0,
              [](std::string& detail) {
                  for (unsigned k = 2; k <= 64; ++k) {
                      auto w = shift_witness_uncached(k);
                      if (!verify_congruence(w.k, w.m, w.n, w.x)) {
                          detail = "verify_congruence failed at k=" + std::to_string(k);
                          return false;
                      }
                      if (!check_tm_identities(w)) {
                          detail = "tm identities failed at k=" + std::to_string(k);
                          return false;
                      }
                      mpz_class odd = mpz_class(k) >> w.nu;
                      if (w.y < 1 || w.y > w.modulus() ||
                          (odd * w.y - w.x) % w.modulus() != 0 || w.z != odd * w.y) {
                          detail = "shift witness invariants failed at k=" + std::to_string(k);
                          return false;
                      }
                  }
                  detail = "63 witnesses verified";
                  return true;
              });

    // 2. Lemma 2.2 exhaustive at k = 2, N = 15, single-threaded.
    criterion(2, "lemma 2.2 exhaustive: k=2, N=15, all 2^15 + 2^12 + 1 values", 30.0,
              [](std::string& detail) {
                  auto w = shift_witness(2);
                  if (min_valid_N(w) != 15) {
                      detail = "min_valid_N(2) != 15";
                      return false;
                  }
                  SweepConfig cfg;
                  bool sampled = true;
                  std::string note;
                  auto plan = lemma22_plan(w, 15, cfg, &sampled, &note);
                  if (sampled || plan.size() != (uint64_t{1} << 15) + (uint64_t{1} << 12) + 1) {
                      detail = "plan is not the full range";
                      return false;
                  }
                  LemmaReport rep = verify_shift_invariance(w, 15, plan, 1);
                  detail = std::to_string(rep.j_tested) + " values, " +
                           std::to_string(rep.j_failed.size()) + " failures";
                  return rep.j_failed.empty();
              });

    // 3. Lemma 2.3 two-point checks at min_valid_N.
    criterion(3, "lemma 2.3 two-point checks: k in {2,3,4,5,8} at N = min_valid_N", 5.0,
              [](std::string& detail) {
                  std::string ns;
                  for (unsigned k : {2u, 3u, 4u, 5u, 8u}) {
                      auto w = shift_witness(k);
                      unsigned N = min_valid_N(w);
                      LemmaReport rep = verify_special_j(w, N);
                      if (!rep.j_failed.empty()) {
                          detail = "failed at k=" + std::to_string(k);
                          return false;
                      }
                      ns += std::to_string(N) + " ";
                  }
                  detail = "N = " + ns;
                  return true;
              });

    // 4. Lemma 2.4 sweeps.
    criterion(4, "lemma 2.4: k=2 r=1 full range j <= 2^22; k=3 r in {1,2} 10^6 samples", 600.0,
              [](std::string& detail) {
                  auto w2 = shift_witness(2);
                  std::vector<mpz_class> plan;
                  plan.reserve((uint64_t{1} << 22) + 1);
                  for (uint64_t j = 0; j <= (uint64_t{1} << 22); ++j)
                      plan.emplace_back(static_cast<unsigned long>(j));
                  LemmaReport full = verify_lower_powers(w2, 15, 1, plan, default_workers());
                  if (!full.j_failed.empty()) {
                      detail = "k=2 full range failures";
                      return false;
                  }
                  plan.clear();
                  plan.shrink_to_fit();

                  auto w3 = shift_witness(3);
                  unsigned N3 = min_valid_N(w3);
                  SweepConfig cfg;   // sample budget 10^6, seed 0
                  bool sampled = false;
                  std::string note;
                  auto plan3 = lemma24_plan(w3, N3, cfg, &sampled, &note);
                  if (!sampled || plan3.size() != 1000000) {
                      detail = "k=3 plan is not 10^6 samples";
                      return false;
                  }
                  for (unsigned r : {1u, 2u}) {
                      LemmaReport rep = verify_lower_powers(w3, N3, r, plan3, default_workers());
                      if (!rep.j_failed.empty()) {
                          detail = "k=3 r=" + std::to_string(r) + " failures";
                          return false;
                      }
                  }
                  detail = "k=2: 2^22+1 values; k=3 (N=" + std::to_string(N3) +
                           "): 10^6 samples x r in {1,2}";
                  return true;
              });

    // 5. Residual lower bound over the golden field.
    criterion(5, "residual lower bound: k=2, beta=phi, coeffs (0,1), N=15, certified", 300.0,
              [](std::string& detail) {
                  NumberField f({mpz_class(-1), mpz_class(-1), mpz_class(1)});
                  auto w = shift_witness(2);
                  LinearForm form = LinearForm::from_ints(f, {mpz_class(0), mpz_class(1)});
                  ResidualReport rep = residual_series(w, form, f, 15, 60, 512);
                  char buf[160];
                  std::snprintf(buf, sizeof buf,
                                "scaled=%.9f >= lower-eps=%.9f, ball excludes 0: %s",
                                rep.scaled.center_d(),
                                rep.lower_const.sub(rep.eps_N).center_d(),
                                rep.checks.ball_excludes_zero ? "yes" : "no");
                  detail = buf;
                  return rep.checks.u_zero_below && rep.checks.lower_ok &&
                         rep.checks.lower_derived_ok &&
                         rep.checks.ball_excludes_zero && rep.prec <= 32768;
              });

    // 6. Residual upper bound shape across N = 12..15, beta in {2, phi}.
    criterion(6, "residual upper bound: beta in {2, phi}, N in 12..15, window check", 300.0,
              [](std::string& detail) {
                  NumberField f2({mpz_class(-2), mpz_class(1)});
                  NumberField fg({mpz_class(-1), mpz_class(-1), mpz_class(1)});
                  auto w = shift_witness(2);
                  std::string vals;
                  for (int fi = 0; fi < 2; ++fi) {
                      const NumberField& f = fi == 0 ? f2 : fg;
                      LinearForm form = LinearForm::from_ints(f, {mpz_class(0), mpz_class(1)});
                      for (unsigned N = 12; N <= 15; ++N) {
                          ResidualReport rep =
                              residual_series(w, form, f, N, 60, 512, N < 15);
                          if (!rep.checks.upper_ok || !rep.checks.window_ok) {
                              detail = "failed at beta=" + std::string(fi ? "phi" : "2") +
                                       " N=" + std::to_string(N);
                              return false;
                          }
                          if (!(rep.log_window >= -2.0)) {
                              detail = "window below -2";
                              return false;
                          }
                          if (N == 15)
                              vals += (fi ? "phi:" : "2:") + std::to_string(rep.log_window) + " ";
                      }
                  }
                  detail = "log_beta(1/|S|) - 2^N at N=15: " + vals;
                  return true;
              });

    // 7. Oracle equivalence of the two residual routes.
    criterion(7, "oracle equivalence: direct vs series, beta in {2, phi}, N in {3,4,5}", 120.0,
              [](std::string& detail) {
                  auto w = shift_witness(2);
                  NumberField f2({mpz_class(-2), mpz_class(1)});
                  NumberField fg({mpz_class(-1), mpz_class(-1), mpz_class(1)});
                  for (unsigned N : {3u, 4u, 5u}) {
                      for (int fi = 0; fi < 2; ++fi) {
                          const NumberField& f = fi == 0 ? f2 : fg;
                          LinearForm form =
                              LinearForm::from_ints(f, {mpz_class(0), mpz_class(1)});
                          ApproxPair pair = build_approx(w, form, f, N);
                          mpz_class T = pair.full_deg + 128;
                          Ball direct = residual_direct(pair, form, f, T, 4096);
                          Ball series = residual_series_scaled(w, form, f, N, T, 4096);
                          if (!direct.overlaps(series)) {
                              detail = "no overlap at N=" + std::to_string(N);
                              return false;
                          }
                          if (fi == 0) {
                              if (mpfr_cmp(direct.center(), series.center()) != 0) {
                                  detail = "beta=2 centers differ at N=" + std::to_string(N);
                                  return false;
                              }
                          }
                      }
                  }
                  detail = "balls overlap; dyadic centers bit-equal";
                  return true;
              });

    // 8. Field suite.
    criterion(8, "field suite: golden/plastic pisot, Lehmer salem, x-2 integer, norms", 120.0,
              [](std::string& detail) {
                  NumberField golden({mpz_class(-1), mpz_class(-1), mpz_class(1)});
                  NumberField plastic({mpz_class(-1), mpz_class(-1), mpz_class(0), mpz_class(1)});
                  NumberField lehmer({mpz_class(1), mpz_class(1), mpz_class(0), mpz_class(-1),
                                      mpz_class(-1), mpz_class(-1), mpz_class(-1), mpz_class(-1),
                                      mpz_class(0), mpz_class(1), mpz_class(1)});
                  NumberField two({mpz_class(-2), mpz_class(1)});
                  if (golden.classification() != FieldClass::Pisot || !golden.threshold_check()) {
                      detail = "golden misclassified";
                      return false;
                  }
                  if (plastic.classification() != FieldClass::Pisot || !plastic.threshold_check()) {
                      detail = "plastic misclassified";
                      return false;
                  }
                  if (lehmer.classification() != FieldClass::Salem || lehmer.threshold_check()) {
                      detail = "Lehmer misclassified or wrongly above threshold";
                      return false;
                  }
                  if (two.classification() != FieldClass::RationalInteger ||
                      !two.threshold_check()) {
                      detail = "x-2 misclassified";
                      return false;
                  }
                  if (FieldElement::beta(golden).norm() != -1) {
                      detail = "norm(beta) != -1 in the golden field";
                      return false;
                  }
                  detail = "4 fields classified, norm(beta) = -1 exact";
                  return true;
              });

    // 9. Norm audit over the golden field.
    criterion(9, "norm audit: golden, k=2, coeffs (0,1), |A_i| <= 10: certified N0", 120.0,
              [](std::string& detail) {
                  NumberField f({mpz_class(-1), mpz_class(-1), mpz_class(1)});
                  auto w = shift_witness(2);
                  LinearForm form = LinearForm::from_ints(f, {mpz_class(0), mpz_class(1)});
                  NormAuditReport rep = norm_contradiction_check(w, form, f, mpz_class(10), 256);
                  detail = "N0 = " + std::to_string(rep.N0) + ", c2 = " + rep.c2.get_str();
                  return rep.certified && rep.N0 >= rep.N_min &&
                         rep.final_value.certainly_less(Ball::exact(1L, 64));
              });

    // 10. Sequence statistics.
    criterion(10, "stats: p_t2(m)=2^m (m<=8, 2^26); p_t(m)<=4m (m<=16); cube-free 10^6; trend", 600.0,
              [](std::string& detail) {
                  MosheReport mo = moshe_check(2, 8, uint64_t{1} << 26);
                  for (unsigned m = 1; m <= 8; ++m)
                      if (mo.counts[m - 1] != (uint64_t{1} << m)) {
                          detail = "p_t2 not full at m=" + std::to_string(m);
                          return false;
                      }
                  ComplexityReport ct = subword_complexity(power_word(1, uint64_t{1} << 20), 16);
                  for (unsigned m = 1; m <= 16; ++m)
                      if (ct.pf[m - 1] > 4ull * m) {
                          detail = "p_t(m) > 4m at m=" + std::to_string(m);
                          return false;
                      }
                  if (!cube_free_check(1000000)) {
                      detail = "cube found in t(1..10^6)";
                      return false;
                  }
                  BinaryWord big = power_word(2, uint64_t{1} << 24);
                  BinaryWord small(mpz_class(1), uint64_t{1} << 16);
                  for (uint64_t i = 0; i < small.size(); ++i) small.set(i, big[i]);
                  for (unsigned m = 1; m <= 6; ++m) {
                      double dsmall = block_frequencies_of(small, 2, m).max_rel_dev;
                      double dbig = block_frequencies_of(big, 2, m).max_rel_dev;
                      if (!(dbig < dsmall)) {
                          detail = "no deviation shrink at m=" + std::to_string(m);
                          return false;
                      }
                  }
                  detail = "all four families verified";
                  return true;
              });

    // 11. Beta-expansions.
    criterion(11, "beta-expansion: 1/3 base 2 period (0,2); golden beta-1 terminates", 60.0,
              [](std::string& detail) {
                  NumberField two({mpz_class(-2), mpz_class(1)});
                  FieldElement third = FieldElement::from_int(two, mpz_class(1));
                  BetaExpansion e1 = beta_expand(third, mpz_class(3), two, 64);
                  auto p1 = detect_period(e1);
                  if (!p1 || p1->first != 0 || p1->second != 2) {
                      detail = "1/3 period mismatch";
                      return false;
                  }
                  if (!reconstruction_holds(e1, third, mpz_class(3), two)) {
                      detail = "1/3 reconstruction failed";
                      return false;
                  }
                  NumberField golden({mpz_class(-1), mpz_class(-1), mpz_class(1)});
                  FieldElement x = FieldElement::beta(golden) - FieldElement::one(golden);
                  BetaExpansion e2 = beta_expand(x, mpz_class(1), golden, 64);
                  if (!e2.terminated || e2.digits.size() != 1 || e2.digits[0] != 1) {
                      detail = "beta-1 expansion shape wrong";
                      return false;
                  }
                  if (!reconstruction_holds(e2, x, mpz_class(1), golden)) {
                      detail = "beta-1 reconstruction failed";
                      return false;
                  }
                  detail = "periods and exact reconstructions verified";
                  return true;
              });

    std::printf("%s: %d criterion(s) failed\n", g_failures == 0 ? "OK" : "FAILURES", g_failures);
    return g_failures == 0 ? 0 : 1;
}
