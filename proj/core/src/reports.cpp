#include "tmpow/reports.hpp"

#include <sstream>

namespace tmpow {

namespace {
// doubles are serialized as decimal strings like every other numeric
std::string dstr(double v) {
    std::ostringstream os;
    os.precision(15);
    os << v;
    return os.str();
}
} // namespace

json ball_json(const Ball& b) {
    return json{{"center", b.center_str()}, {"radius", b.radius_str()}};
}

json field_json(const NumberField& f) {
    json coeffs = json::array();
    for (int i = 0; i <= f.min_poly().degree(); ++i)
        coeffs.push_back(f.min_poly()[i].get_str());
    json j;
    j["min_poly"] = f.min_poly().str();
    j["coeffs_constant_first"] = coeffs;
    j["degree"] = f.degree();
    j["classification"] = to_string(f.classification());
    j["beta"] = ball_json(f.beta(96));
    j["beta_index"] = f.beta_index();
    return j;
}

json witness_json(const CongruenceWitness& w) {
    json j;
    j["k"] = std::to_string(w.k);
    j["nu"] = std::to_string(w.nu);
    j["m"] = std::to_string(w.m);
    j["n"] = std::to_string(w.n);
    j["x"] = w.x.get_str();
    j["y"] = w.y.get_str();
    j["z"] = w.z.get_str();
    j["modulus"] = w.modulus().get_str();
    j["case"] = to_string(w.case_tag);
    if (w.case_tag != WitnessCase::EvenK) {
        j["s"] = std::to_string(w.s);
        j["a"] = std::to_string(w.a);
    }
    j["min_valid_N"] = std::to_string(min_valid_N(w));
    return j;
}

json lemma_json(const LemmaReport& rep) {
    json j;
    j["lemma"] = to_string(rep.lemma);
    j["k"] = std::to_string(rep.k);
    j["N"] = std::to_string(rep.N);
    if (rep.lemma == LemmaId::LowerPowers24) j["r"] = std::to_string(rep.r);
    j["j_tested"] = std::to_string(rep.j_tested);
    json failed = json::array();
    for (const auto& v : rep.j_failed) failed.push_back(v.get_str());
    j["j_failed"] = failed;
    j["sampled"] = rep.sampled;
    j["plan"] = rep.plan_note;
    if (rep.lemma == LemmaId::SpecialPoints23)
        j["observed_sign_at_2N_plus_1"] = rep.sign_at_special;
    j["pass"] = rep.j_failed.empty();
    return j;
}

json residual_json(const ResidualReport& rep) {
    json j;
    j["k"] = std::to_string(rep.k);
    j["N"] = std::to_string(rep.N);
    j["prec_bits"] = std::to_string(rep.prec);
    j["tol_bits"] = std::to_string(rep.tol_bits);
    j["truncation_J"] = rep.truncation_J.get_str();
    j["S"] = ball_json(rep.S);
    j["scaled"] = ball_json(rep.scaled);
    j["lower_const"] = ball_json(rep.lower_const);
    j["eps_N"] = ball_json(rep.eps_N);
    j["lower_const_derived"] = ball_json(rep.lower_const_derived);
    j["eps_derived"] = ball_json(rep.eps_derived);
    j["upper_C"] = ball_json(rep.upper_C);
    j["log_beta_inv_S_minus_2N"] = dstr(rep.log_window);
    json prof = json::array();
    for (const auto& [off, sign] : rep.u_nonzero)
        prof.push_back(json{{"offset", off.get_str()}, {"u", sign}});
    j["u_nonzero_offsets"] = prof;
    j["u_checked_below"] = std::to_string(rep.u_checked_below);
    j["checks"] = json{{"u_zero_below", rep.checks.u_zero_below},
                       {"ball_excludes_zero", rep.checks.ball_excludes_zero},
                       {"lower_ok", rep.checks.lower_ok},
                       {"lower_derived_ok", rep.checks.lower_derived_ok},
                       {"upper_ok", rep.checks.upper_ok},
                       {"window_ok", rep.checks.window_ok}};
    // the aggregate verdict uses the derived lower bound; the displayed-form
    // check stays visible above
    bool pass = rep.checks.u_zero_below && rep.checks.ball_excludes_zero &&
                rep.checks.lower_derived_ok && rep.checks.upper_ok &&
                rep.checks.window_ok;
    j["pass"] = pass;
    return j;
}

json norm_audit_json(const NormAuditReport& rep) {
    json j;
    j["k"] = std::to_string(rep.k);
    j["N_min"] = std::to_string(rep.N_min);
    j["N0"] = std::to_string(rep.N0);
    j["c1"] = ball_json(rep.c1);
    j["c2"] = rep.c2.get_str();
    j["A_bound"] = rep.A_bound.get_str();
    j["final_value"] = ball_json(rep.final_value);
    j["pass"] = rep.certified;
    return j;
}

json beta_expansion_json(const BetaExpansion& e) {
    json j;
    json digits = json::array();
    for (unsigned d : e.digits) digits.push_back(d);
    j["digits"] = digits;
    j["terminated"] = e.terminated;
    auto period = detect_period(e);
    if (period) {
        j["preperiod"] = std::to_string(period->first);
        j["period"] = std::to_string(period->second);
    } else {
        j["period"] = "none-within-budget";
    }
    j["den"] = e.den.get_str();
    return j;
}

json complexity_json(const ComplexityReport& rep) {
    json j;
    j["prefix_len"] = std::to_string(rep.prefix_len);
    json rows = json::array();
    for (size_t i = 0; i < rep.m_values.size(); ++i)
        rows.push_back(json{{"m", rep.m_values[i]}, {"count", std::to_string(rep.pf[i])}});
    j["pf"] = rows;
    j["entropy_estimate"] = dstr(rep.entropy_estimate);
    j["monotone_checked"] = rep.monotone_checked;
    j["monotone_ok"] = rep.monotone_ok;
    return j;
}

json moshe_json(const MosheReport& rep) {
    json j;
    j["k"] = std::to_string(rep.k);
    j["prefix_len"] = std::to_string(rep.prefix_len);
    json rows = json::array();
    bool ok = true;
    for (size_t i = 0; i < rep.m_values.size(); ++i) {
        mpz_class margin = mpz_class(static_cast<unsigned long>(rep.counts[i])) - rep.bounds[i];
        rows.push_back(json{{"m", rep.m_values[i]},
                            {"count", std::to_string(rep.counts[i])},
                            {"bound", rep.bounds[i].get_str()},
                            {"margin", margin.get_str()}});
        if (sgn(margin) < 0) ok = false;
    }
    j["rows"] = rows;
    j["pass"] = ok && rep.all_ok;
    return j;
}

json frequency_json(const FrequencyReport& rep) {
    json j;
    j["k"] = std::to_string(rep.k);
    j["m"] = std::to_string(rep.m);
    j["prefix_len"] = std::to_string(rep.prefix_len);
    j["windows"] = std::to_string(rep.windows);
    json rows = json::array();
    for (size_t b = 0; b < rep.counts.size(); ++b)
        rows.push_back(json{{"block", b}, {"count", std::to_string(rep.counts[b])}});
    j["counts"] = rows;
    j["max_rel_dev"] = dstr(rep.max_rel_dev);
    return j;
}

json cube_json(const CubeReport& rep, uint64_t prefix_len) {
    json j;
    j["prefix_len"] = std::to_string(prefix_len);
    j["cube_free"] = rep.cube_free;
    if (!rep.cube_free) {
        j["position"] = std::to_string(rep.position);
        j["period"] = std::to_string(rep.period);
    }
    return j;
}

json affine_json(const AffineReport& rep) {
    json j;
    j["base"] = rep.base;
    j["digits_used"] = std::to_string(rep.digits_used);
    j["truncated_by_carry"] = rep.truncated_by_carry;
    j["integer_part"] = rep.integer_part.get_str();
    json rows = json::array();
    for (size_t i = 0; i < rep.m_values.size(); ++i)
        rows.push_back(json{{"m", rep.m_values[i]},
                            {"p_xi", std::to_string(rep.p_xi[i])},
                            {"p_affine", std::to_string(rep.p_affine[i])},
                            {"ratio", dstr(rep.ratio[i])}});
    j["profile"] = rows;
    return j;
}

std::string complexity_csv(const ComplexityReport& rep) {
    std::ostringstream os;
    os << "m,count\n";
    for (size_t i = 0; i < rep.m_values.size(); ++i)
        os << rep.m_values[i] << "," << rep.pf[i] << "\n";
    return os.str();
}

std::string moshe_csv(const MosheReport& rep) {
    std::ostringstream os;
    os << "m,count,bound,margin\n";
    for (size_t i = 0; i < rep.m_values.size(); ++i) {
        mpz_class margin = mpz_class(static_cast<unsigned long>(rep.counts[i])) - rep.bounds[i];
        os << rep.m_values[i] << "," << rep.counts[i] << "," << rep.bounds[i].get_str()
           << "," << margin.get_str() << "\n";
    }
    return os.str();
}

std::string frequency_csv(const FrequencyReport& rep) {
    std::ostringstream os;
    os << "block,count,frequency\n";
    for (size_t b = 0; b < rep.counts.size(); ++b) {
        os << b << "," << rep.counts[b] << ","
           << (static_cast<double>(rep.counts[b]) / static_cast<double>(rep.windows)) << "\n";
    }
    return os.str();
}

} // namespace tmpow
