#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "k3corr/criteria.hpp"
#include "k3corr/errors.hpp"
#include "k3corr/json_io.hpp"

namespace {

using k3corr::Int;
using k3corr::Json;

constexpr int kExitAffirmative = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInputError = 2;
constexpr int kExitInternalError = 70;

k3corr::OutputMode output_mode() {
    const char* env = std::getenv("K3CORR_OUTPUT");
    if (env == nullptr || std::string(env) == "json")
        return k3corr::OutputMode::json;
    if (std::string(env) == "text") return k3corr::OutputMode::text;
    throw k3corr::invalid_input("K3CORR_OUTPUT must be \"json\" or \"text\"");
}

void emit(const Json& j) {
    k3corr::write_output(j, output_mode(), std::cout);
}

struct TypeFlags {
    std::string r, s, d = "1";

    void attach(CLI::App* cmd) {
        cmd->add_option("--r", r, "rank component r of the Mukai vector")
            ->required();
        cmd->add_option("--s", s, "Euler component s of the Mukai vector")
            ->required();
        cmd->add_option("--d", d, "divisibility d of H = d Htilde (default 1)");
    }

    k3corr::MukaiType type() const {
        const Int rv = k3corr::parse_int(r);
        const Int sv = k3corr::parse_int(s);
        if (sv < 1) throw k3corr::invalid_type("this command needs s >= 1");
        return k3corr::MukaiType(rv, sv, k3corr::parse_int(d));
    }
};

int cmd_invariants(const TypeFlags& tf, const std::string& gamma) {
    const k3corr::InvariantReport rep =
        k3corr::invariants(tf.type(), k3corr::parse_int(gamma));
    emit(k3corr::invariant_report_json(rep));
    return kExitAffirmative;
}

int cmd_reduce(const TypeFlags& tf) {
    const k3corr::MukaiType t = tf.type();
    const k3corr::GramLattice ambient(
        k3corr::IntMat{{t.h_tilde_square()}}, {"Htilde"});
    const k3corr::MukaiVector v(
        t.r(), k3corr::LatticeVector(ambient, {t.d()}), t.s());
    const k3corr::Rank1Reduction red = k3corr::reduce_rank1(v);
    emit(k3corr::reduction_json(v, red));
    return kExitAffirmative;
}

int cmd_mukai_element(const std::string& a, const std::string& b) {
    const Int av = k3corr::parse_int(a);
    const Int bv = k3corr::parse_int(b);
    const Int m = k3corr::mukai_element(av, bv);
    Json j;
    j["m"] = k3corr::dec(m);
    j["modulus"] = k3corr::dec(Int(2 * av * bv));
    emit(j);
    return kExitAffirmative;
}

int cmd_recover_ab(const std::string& ab, const std::string& m) {
    const Int abv = k3corr::parse_int(ab);
    const Int mv = k3corr::parse_int(m);
    const auto [a, b] = k3corr::recover_ab(abv, mv);
    Json j;
    j["ab"] = k3corr::dec(abv);
    j["m"] = k3corr::dec(mv);
    j["a"] = k3corr::dec(a);
    j["b"] = k3corr::dec(b);
    emit(j);
    return kExitAffirmative;
}

int cmd_periods(const std::string& r, const std::string& s) {
    const k3corr::PeriodData p =
        k3corr::period_transform(k3corr::parse_int(r), k3corr::parse_int(s));
    emit(k3corr::period_json(p));
    return kExitAffirmative;
}

int cmd_bqf(const std::string& a, const std::string& b, const std::string& c,
            const std::string& n, const std::string& oracle_bound) {
    const k3corr::Bqf f(k3corr::parse_int(a), k3corr::parse_int(b),
                        k3corr::parse_int(c));
    const Int target = k3corr::parse_int(n);
    Json j;
    j["form"] = Json{{"a", k3corr::dec(f.a())},
                     {"b", k3corr::dec(f.b())},
                     {"c", k3corr::dec(f.c())}};
    j["disc"] = k3corr::dec(f.disc());
    j["n"] = k3corr::dec(target);

    if (!oracle_bound.empty()) {
        const k3corr::OracleResult res =
            k3corr::represents_value(f, target, k3corr::parse_int(oracle_bound));
        j["method"] = "oracle";
        j["searched_bound"] = k3corr::dec(res.searched_bound);
        j["found"] = res.found();
        if (res.found()) {
            j["witness"] = Json{{"x", k3corr::dec(res.witness->x)},
                                {"y", k3corr::dec(res.witness->y)}};
        }
        emit(j);
        return res.found() ? kExitAffirmative : kExitNegative;
    }

    if (target != 1 && target != -1)
        throw k3corr::invalid_target(
            "the certified decision handles n = +1/-1 only; pass --oracle-bound "
            "for other targets");
    const auto witness = k3corr::represents(f, target == 1 ? 1 : -1);
    if (f.disc() < 0)
        j["method"] = "definite_enumeration";
    else if (f.disc() == 0)
        j["method"] = "degenerate_square";
    else if (k3corr::is_perfect_square(f.disc()))
        j["method"] = "linear_factors";
    else
        j["method"] = "reduction_cycle";
    j["represented"] = witness.has_value();
    if (witness) {
        j["witness"] = Json{{"x", k3corr::dec(witness->x)},
                            {"y", k3corr::dec(witness->y)}};
    }
    emit(j);
    return witness ? kExitAffirmative : kExitNegative;
}

int cmd_rank2(const TypeFlags& tf, const std::string& gamma,
              const std::string& k, const std::string& t_coeff) {
    const k3corr::Rank2Input input(tf.type(), k3corr::parse_int(gamma),
                                   k3corr::parse_int(k),
                                   k3corr::parse_int(t_coeff));
    const k3corr::SeriesDecision dec = k3corr::rank2_series_check(input);
    emit(k3corr::series_decision_json(input, dec));
    return dec.isomorphic ? kExitAffirmative : kExitNegative;
}

int cmd_necessary(const TypeFlags& tf, const std::string& gamma) {
    const k3corr::MukaiType t = tf.type();
    const k3corr::NecessityReport rep =
        k3corr::necessary_condition(t, k3corr::parse_int(gamma));
    emit(k3corr::necessity_json(t, rep));
    return rep.blocked ? kExitNegative : kExitAffirmative;
}

int cmd_critical_search(const TypeFlags& tf, const std::string& gamma,
                        const std::string& k_max, const std::string& t_max,
                        unsigned workers) {
    if (workers < 1)
        throw k3corr::invalid_input("worker count must be >= 1");
    const k3corr::MukaiType t = tf.type();
    const Int gv = k3corr::parse_int(gamma);
    const Int kv = k3corr::parse_int(k_max);
    const Int tv = k3corr::parse_int(t_max);
    const auto hits = k3corr::search_critical_rank2(t, gv, kv, tv, workers);
    emit(k3corr::critical_search_json(t, gv, kv, tv, hits));
    return kExitAffirmative;
}

int cmd_verify_rank3() {
    emit(k3corr::certificate_json(k3corr::verify_rank3_example()));
    return kExitAffirmative;
}

int cmd_lattice_disc(const std::string& path) {
    emit(k3corr::lattice_disc_json(k3corr::load_gram_file(path)));
    return kExitAffirmative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "k3corr: exact-arithmetic criteria deciding when a moduli of sheaves "
        "M_X(r, H, s) on a K3 surface is isomorphic to the surface itself.\n"
        "Output is deterministic JSON (set K3CORR_OUTPUT=text for plain text).\n"
        "Exit codes: 0 affirmative, 1 negative decision, 2 invalid input."};
    app.require_subcommand(1);

    TypeFlags inv_t, red_t, rank2_t, nec_t, search_t;
    std::string inv_gamma, nec_gamma, search_gamma;
    std::string rank2_gamma, rank2_k, rank2_tc;
    std::string me_a, me_b, rec_ab, rec_m, per_r, per_s;
    std::string bqf_a, bqf_b, bqf_c, bqf_n, bqf_bound;
    std::string search_kmax, search_tmax, gram_path;
    unsigned workers = 1;

    CLI::App* inv = app.add_subcommand(
        "invariants", "Derived invariants of a Mukai vector type and gamma");
    inv_t.attach(inv);
    inv->add_option("--gamma", inv_gamma, "divisibility of Htilde in N(X)")
        ->required();

    CLI::App* red = app.add_subcommand(
        "reduce", "Reduce a rank-1 Mukai vector to 0 < r <= s with primitive l");
    red_t.attach(red);

    CLI::App* me = app.add_subcommand(
        "mukai-element", "Residue m with m = -1 mod 2a and m = 1 mod 2b");
    me->add_option("--a", me_a)->required();
    me->add_option("--b", me_b)->required();

    CLI::App* rec = app.add_subcommand(
        "recover-ab", "Recover (a, b) from ab and a Mukai-element residue");
    rec->add_option("--ab", rec_ab)->required();
    rec->add_option("--m", rec_m)->required();

    CLI::App* per = app.add_subcommand(
        "periods", "Cyclic-quotient period data of M_X(r, H, s) at rank 1");
    per->add_option("--r", per_r)->required();
    per->add_option("--s", per_s)->required();

    CLI::App* bqf = app.add_subcommand(
        "bqf", "Does a x^2 + b xy + c y^2 represent n? Certified for n = +-1");
    bqf->add_option("--a", bqf_a)->required();
    bqf->add_option("--b", bqf_b)->required();
    bqf->add_option("--c", bqf_c)->required();
    bqf->add_option("--n", bqf_n)->required();
    bqf->add_option("--oracle-bound", bqf_bound,
                    "brute-force search bound (required for |n| != 1)");

    CLI::App* r2 = app.add_subcommand(
        "rank2", "a/b-series criterion for N = [[2a1b1c^2, gk], [gk, 2t]]");
    rank2_t.attach(r2);
    r2->add_option("--gamma", rank2_gamma)->required();
    r2->add_option("--k", rank2_k)->required();
    r2->add_option("--t", rank2_tc)->required();

    CLI::App* nec = app.add_subcommand(
        "necessary", "Legendre-symbol necessary condition; blocked exits 1");
    nec_t.attach(nec);
    nec->add_option("--gamma", nec_gamma)->required();

    CLI::App* search = app.add_subcommand(
        "critical-search",
        "Grid search for rank-2 lattices giving the isomorphism");
    search_t.attach(search);
    search->add_option("--gamma", search_gamma)->required();
    search->add_option("--kmax", search_kmax)->required();
    search->add_option("--tmax", search_tmax)->required();
    search->add_option("--workers", workers, "parallel workers (default 1)");

    app.add_subcommand("verify-rank3",
                       "Verify the built-in rank-3 critical lattice example");

    CLI::App* disc = app.add_subcommand(
        "lattice-disc", "Invariants and discriminant group of a Gram lattice");
    disc->add_option("--gram", gram_path, "path to a Gram JSON file")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }

    try {
        if (inv->parsed()) return cmd_invariants(inv_t, inv_gamma);
        if (red->parsed()) return cmd_reduce(red_t);
        if (me->parsed()) return cmd_mukai_element(me_a, me_b);
        if (rec->parsed()) return cmd_recover_ab(rec_ab, rec_m);
        if (per->parsed()) return cmd_periods(per_r, per_s);
        if (bqf->parsed()) return cmd_bqf(bqf_a, bqf_b, bqf_c, bqf_n, bqf_bound);
        if (r2->parsed()) return cmd_rank2(rank2_t, rank2_gamma, rank2_k, rank2_tc);
        if (nec->parsed()) return cmd_necessary(nec_t, nec_gamma);
        if (search->parsed())
            return cmd_critical_search(search_t, search_gamma, search_kmax,
                                       search_tmax, workers);
        if (app.get_subcommand("verify-rank3")->parsed())
            return cmd_verify_rank3();
        if (disc->parsed()) return cmd_lattice_disc(gram_path);
    } catch (const k3corr::internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternalError;
    } catch (const k3corr::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
