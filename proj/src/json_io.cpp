#include "k3corr/json_io.hpp"

#include <fstream>
#include <ostream>

#include "k3corr/errors.hpp"

namespace k3corr {

std::string dec(const Int& v) { return v.str(); }

Json int_vec_json(const std::vector<Int>& v) {
    Json a = Json::array();
    for (const Int& x : v) a.push_back(dec(x));
    return a;
}

Json rat_vec_json(const std::vector<Rat>& v) {
    Json a = Json::array();
    for (const Rat& x : v) a.push_back(rat_to_string(x));
    return a;
}

namespace {

Json move_json(const Move& move) {
    Json j;
    if (const auto* t = std::get_if<TensorByD>(&move)) {
        j["move"] = "tensor";
        j["D"] = int_vec_json(t->d_coords);
    } else if (std::get_if<Reflection>(&move)) {
        j["move"] = "reflection";
    } else if (const auto* nu = std::get_if<Nu>(&move)) {
        j["move"] = "nu";
        j["d1"] = dec(nu->d1);
        j["d2"] = dec(nu->d2);
    } else if (const auto* ni = std::get_if<NuInverse>(&move)) {
        j["move"] = "nu_inverse";
        j["d1"] = dec(ni->d1);
        j["d2"] = dec(ni->d2);
    } else if (const auto* ty = std::get_if<Tyurin>(&move)) {
        j["move"] = "tyurin";
        j["sign"] = ty->sign > 0 ? "+1" : "-1";
        j["mirror"] = int_vec_json(ty->mirror_coords);
    }
    return j;
}

Json type_json(const MukaiType& t) {
    Json j;
    j["r"] = dec(t.r());
    j["s"] = dec(t.s());
    j["d"] = dec(t.d());
    return j;
}

}  // namespace

Json chain_json(const IsomorphismChain& chain) {
    Json a = Json::array();
    for (const Move& m : chain.moves) a.push_back(move_json(m));
    return a;
}

Json invariant_report_json(const InvariantReport& rep) {
    Json j;
    j["r"] = dec(rep.r);
    j["s"] = dec(rep.s);
    j["d"] = dec(rep.d);
    j["gamma"] = dec(rep.gamma);
    j["c"] = dec(rep.c);
    j["a"] = dec(rep.a);
    j["b"] = dec(rep.b);
    j["d_a"] = dec(rep.d_a);
    j["d_b"] = dec(rep.d_b);
    j["a1"] = dec(rep.a1);
    j["b1"] = dec(rep.b1);
    j["gamma_a"] = dec(rep.gamma_a);
    j["gamma_b"] = dec(rep.gamma_b);
    j["gamma2"] = dec(rep.gamma2);
    j["n_v"] = dec(rep.n_v);
    j["h_tilde_square"] = dec(rep.h_tilde_square);
    return j;
}

Json period_json(const PeriodData& p) {
    Json j;
    j["h_square"] = dec(p.h_square);
    j["group_order"] = dec(p.group_order);
    j["t_star"] = dec(p.t_star);
    j["index_over_base"] = dec(p.index_over_base);
    return j;
}

Json necessity_json(const MukaiType& t, const NecessityReport& rep) {
    Json j;
    j["type"] = type_json(t);
    j["gamma"] = dec(rep.gamma);
    j["gamma_a"] = dec(rep.gamma_a);
    j["gamma_b"] = dec(rep.gamma_b);
    Json plus, minus;
    plus["a_side_ok"] = rep.plus.a_side_ok;
    plus["b_side_ok"] = rep.plus.b_side_ok;
    minus["a_side_ok"] = rep.minus.a_side_ok;
    minus["b_side_ok"] = rep.minus.b_side_ok;
    j["plus"] = plus;
    j["minus"] = minus;
    j["blocked"] = rep.blocked;
    return j;
}

Json series_decision_json(const Rank2Input& input,
                          const SeriesDecision& decision) {
    Json j;
    j["type"] = type_json(input.type());
    j["gamma"] = dec(input.gamma());
    j["k"] = dec(input.k());
    j["t"] = dec(input.t_coeff());
    j["det"] = dec(decision.det);
    j["delta"] = dec(decision.delta);
    j["n_v"] = dec(decision.n_v);
    if (decision.isomorphic) {
        j["outcome"] = "isomorphic";
        j["series"] = *decision.series == Series::a ? "a" : "b";
        j["sign"] = decision.sign > 0 ? "+1" : "-1";
        Json w;
        w["x"] = dec(decision.witness->x);
        w["y"] = dec(decision.witness->y);
        j["witness"] = w;
        j["h_tilde_1"] = int_vec_json(decision.h_tilde_1);
        j["h_tilde_1_square"] = dec(decision.h_tilde_1_square);
        j["d2"] = dec(decision.d2);
        j["D"] = int_vec_json(decision.d_used);
        Json v;
        v["h_dot"] = dec(decision.h_dot);
        v["h_modulus"] = dec(decision.h_modulus);
        v["f_dot"] = dec(decision.f_dot);
        v["f_modulus"] = dec(decision.f_modulus);
        j["verification"] = v;
        j["chain"] = chain_json(decision.chain);
    } else {
        j["outcome"] = "not_isomorphic";
        j["reason"] = decision.reason == NonIsoReason::index_obstruction
                          ? "index_obstruction"
                          : "both_equations_insoluble";
        if (decision.reason == NonIsoReason::index_obstruction)
            j["index"] = dec(decision.n_v);
    }
    return j;
}

Json critical_search_json(const MukaiType& t, const Int& gamma,
                          const Int& k_max, const Int& t_max,
                          const std::vector<CriticalHit>& hits) {
    Json j;
    j["type"] = type_json(t);
    j["gamma"] = dec(gamma);
    j["k_max"] = dec(k_max);
    j["t_max"] = dec(t_max);
    Json list = Json::array();
    for (const CriticalHit& hit : hits) {
        Json h;
        h["k"] = dec(hit.k);
        h["t"] = dec(hit.t_coeff);
        h["det"] = dec(hit.det);
        h["series"] = *hit.decision.series == Series::a ? "a" : "b";
        h["h_tilde_1"] = int_vec_json(hit.decision.h_tilde_1);
        h["h_tilde_1_square"] = dec(hit.decision.h_tilde_1_square);
        h["critical"] = hit.critical;
        list.push_back(h);
    }
    j["hits"] = list;
    j["hit_count"] = dec(Int(hits.size()));
    return j;
}

Json certificate_json(const CriticalityCertificate& cert) {
    Json j;
    Json f1;
    f1["k_even"] = cert.k_even;
    f1["k_negative_definite"] = cert.k_negative_definite;
    f1["k_no_minus_two"] = cert.k_no_minus_two;
    Json f2;
    f2["s_invariant_factors"] = int_vec_json(cert.s_invariant_factors);
    f2["s_cyclic"] = cert.s_cyclic;
    f2["rank3_isomorphism"] = cert.rank3_isomorphism;
    Json f3;
    f3["gamma"] = dec(cert.gamma);
    f3["gamma_forced"] = cert.gamma_forced;
    Json f4;
    f4["necessary_blocked"] = cert.necessary_blocked;
    f4["rank1_excluded"] = cert.rank1_excluded;
    j["fact_1_k_lattice"] = f1;
    j["fact_2_rank3_isomorphism"] = f2;
    j["fact_3_gamma_forced"] = f3;
    j["fact_4_lower_ranks_blocked"] = f4;
    j["critical_rank"] = dec(Int(3));
    j["rank_bound"] = dec(Int(critical_rank_bound()));
    j["all_verified"] = cert.all_verified();
    return j;
}

Json lattice_disc_json(const GramLattice& lattice) {
    Json j;
    j["rank"] = dec(Int(lattice.rank()));
    if (!lattice.labels().empty()) j["labels"] = lattice.labels();
    j["det"] = dec(lattice.det());
    Json sig;
    sig["positive"] = dec(Int(lattice.signature().first));
    sig["negative"] = dec(Int(lattice.signature().second));
    j["signature"] = sig;
    j["even"] = lattice.is_even();
    const DiscriminantGroup group = discriminant_group(
        lattice, lattice.is_even() ? DiscriminantForm::quadratic
                                   : DiscriminantForm::bilinear);
    j["invariant_factors"] = int_vec_json(group.invariant_factors);
    j["order"] = dec(group.order());
    j["length"] = dec(Int(group.length()));
    Json gens = Json::array();
    for (const auto& g : group.generators) gens.push_back(rat_vec_json(g));
    j["generators"] = gens;
    if (lattice.is_even())
        j["q_values"] = rat_vec_json(group.q_values);
    else
        j["b_values"] = rat_vec_json(group.b_values);
    return j;
}

Json reduction_json(const MukaiVector& input, const Rank1Reduction& red) {
    Json j;
    Json in;
    in["r"] = dec(input.r());
    in["l"] = int_vec_json(input.l().coords());
    in["s"] = dec(input.s());
    j["input"] = in;
    j["h_tilde_square"] = dec(input.l().ambient().gram()(0, 0));
    Json out;
    out["r"] = dec(red.reduced.r());
    out["l"] = int_vec_json(red.reduced.l().coords());
    out["s"] = dec(red.reduced.s());
    j["reduced"] = out;
    j["chain"] = chain_json(red.chain);
    return j;
}

GramLattice parse_gram_json(const Json& j) {
    if (!j.is_object() || !j.contains("gram"))
        throw invalid_input("Gram file needs an object with a \"gram\" matrix");
    const Json& gram = j.at("gram");
    if (!gram.is_array() || gram.empty())
        throw invalid_input("\"gram\" must be a non-empty array of rows");
    const std::size_t n = gram.size();
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const Json& row = gram.at(i);
        if (!row.is_array() || row.size() != n)
            throw invalid_input("\"gram\" must be square");
        for (std::size_t k = 0; k < n; ++k) {
            const Json& e = row.at(k);
            if (e.is_number_integer())
                m(i, k) = Int(e.get<long long>());
            else if (e.is_string())
                m(i, k) = parse_int(e.get<std::string>());
            else
                throw invalid_input("Gram entries must be integers or decimal strings");
        }
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        for (const Json& l : j.at("labels")) {
            if (!l.is_string()) throw invalid_input("labels must be strings");
            labels.push_back(l.get<std::string>());
        }
    }
    return GramLattice(std::move(m), std::move(labels));
}

GramLattice load_gram_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open Gram file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw invalid_input("bad JSON in Gram file: " + std::string(e.what()));
    }
    return parse_gram_json(j);
}

namespace {

void write_text(const Json& j, std::ostream& os, int indent) {
    const std::string pad(2 * indent, ' ');
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            if (value.is_object() || (value.is_array() && !value.empty() &&
                                      (value.front().is_object() ||
                                       value.front().is_array()))) {
                os << pad << key << ":\n";
                write_text(value, os, indent + 1);
            } else {
                os << pad << key << ": " << value.dump() << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const Json& e : j) {
            if (e.is_object() || e.is_array()) {
                os << pad << "-\n";
                write_text(e, os, indent + 1);
            } else {
                os << pad << "- " << e.dump() << "\n";
            }
        }
    } else {
        os << pad << j.dump() << "\n";
    }
}

}  // namespace

void write_output(const Json& j, OutputMode mode, std::ostream& os) {
    if (mode == OutputMode::json)
        os << j.dump(2) << "\n";
    else
        write_text(j, os, 0);
}

}  // namespace k3corr
