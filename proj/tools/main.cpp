#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lemheights/heights.hpp"
#include "lemheights/lemniscate.hpp"
#include "lemheights/numbertheory.hpp"
#include "lemheights/polynomial.hpp"
#include "lemheights/search.hpp"

#include <chrono>
#include <memory>
#include <mutex>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using nlohmann::ordered_json;
using namespace lemni;

std::string iso_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
    return buf;
}

ordered_json meta() { return ordered_json{{"timestamp", iso_timestamp()}}; }

void emit(const ordered_json& j) { std::cout << j.dump(2) << std::endl; }

// Machine-readable scan progress, one JSON object per line on stderr.
ScanProgress progress_to_stderr() {
    auto mtx = std::make_shared<std::mutex>();
    return [mtx](int shard, long long scanned, std::optional<double> best) {
        std::lock_guard<std::mutex> lock(*mtx);
        ordered_json line{{"shard", shard}, {"scanned", scanned}};
        line["best_so_far"] = best ? ordered_json(real_str(*best)) : ordered_json(nullptr);
        std::cerr << line.dump() << "\n";
    };
}

ordered_json poly_list(const std::vector<IntPolynomial>& ps) {
    ordered_json a = ordered_json::array();
    for (const auto& p : ps) a.push_back(p.str());
    return a;
}

ordered_json search_json(const SearchSpec& spec, const SearchResult& r) {
    ordered_json j;
    j["spec"] = {{"V", spec.lemniscate.has_int_v() ? spec.lemniscate.v_int().str()
                                                   : std::string("<complex>")},
                 {"r", rational_str(spec.lemniscate.r_exact())},
                 {"k", spec.k},
                 {"p", spec.height.str()},
                 {"coeff_bound", spec.coeff_bound},
                 {"prune", spec.prune}};
    j["min_value"] = real_str(r.min_value);
    j["argmins"] = poly_list(r.argmins);
    j["scanned"] = r.scanned;
    j["pruned"] = r.pruned;
    j["case"] = theorem_case_str(r.the_case);
    if (r.floor_value) j["floor"] = real_str(*r.floor_value);
    j["matches_theorem"] = r.matches_theorem;
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

struct CommonArgs {
    std::string v_text;
    std::string r_text = "1";
    Lemniscate make() const { return Lemniscate(IntPolynomial::parse(v_text), parse_rational(r_text)); }
};

int dispatch(CLI::App& app, int argc, char** argv);

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polynomial heights over lemniscates: generalized Mahler measure, L_p norms, "
                 "curve tracing, and extremal-polynomial searches"};
    app.require_subcommand(1);
    try {
        return dispatch(app, argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        ordered_json err{{"code", 2}, {"message", e.what()}, {"context", "argument parsing"}};
        std::cerr << err.dump() << std::endl;
        return 2;
    } catch (const Error& e) {
        ordered_json err{{"code", e.exit_code()}, {"message", e.what()}, {"context", e.context()}};
        std::cerr << err.dump() << std::endl;
        return e.exit_code();
    } catch (const std::exception& e) {
        ordered_json err{{"code", 1}, {"message", e.what()}, {"context", "internal"}};
        std::cerr << err.dump() << std::endl;
        return 1;
    }
}

namespace {

int dispatch(CLI::App& app, int argc, char** argv) {
    CommonArgs common;
    int n_nodes = 1 << 12;
    int n_theta = 1 << 12;

    auto add_lemniscate_flags = [&](CLI::App* cmd) {
        cmd->add_option("-V,--lemniscate-poly", common.v_text, "defining polynomial V")
            ->required();
        cmd->add_option("-r,--radius", common.r_text,
                        "level r > 0, exact decimal or rational p/q (default 1)");
    };

    // measure
    auto* measure_cmd = app.add_subcommand("measure", "full height report for P over L");
    std::string p_text;
    std::vector<double> p_grid{1.0, 2.0};
    bool no_quadrature = false, no_sup = false;
    add_lemniscate_flags(measure_cmd);
    measure_cmd->add_option("-P,--poly", p_text, "polynomial to measure")->required();
    measure_cmd->add_option("--p-grid", p_grid, "finite p exponents to include");
    measure_cmd->add_option("--nodes", n_nodes, "quadrature nodes (power of two)");
    measure_cmd->add_option("--ntheta", n_theta, "sup-norm grid size");
    measure_cmd->add_flag("--no-quadrature", no_quadrature, "skip the quadrature channel");
    measure_cmd->add_flag("--no-sup", no_sup, "skip the sup norm");
    measure_cmd->callback([&] {
        MeasureOptions opt;
        opt.p_grid = p_grid;
        opt.n_nodes = n_nodes;
        opt.n_theta = n_theta;
        opt.with_quadrature = !no_quadrature;
        opt.with_sup = !no_sup;
        HeightReport rep = measure(IntPolynomial::parse(p_text), common.make(), opt);
        ordered_json j = ordered_json::parse(height_report_json(rep));
        j["meta"] = meta();
        emit(j);
    });

    // norms
    auto* norms_cmd = app.add_subcommand("norms", "L_p family sweep with the subordination chain");
    std::string norms_p;
    std::vector<double> norms_grid{0.5, 1, 2, 4, 8};
    add_lemniscate_flags(norms_cmd);
    norms_cmd->add_option("-P,--poly", norms_p, "polynomial to measure")->required();
    norms_cmd->add_option("--p-grid", norms_grid, "finite p exponents");
    norms_cmd->add_option("--nodes", n_nodes, "quadrature nodes (power of two)");
    norms_cmd->add_option("--ntheta", n_theta, "sup-norm grid size");
    norms_cmd->callback([&] {
        Lemniscate lm = common.make();
        IntPolynomial p = IntPolynomial::parse(norms_p);
        SubordinationReport rep = subordination_check(p, lm, norms_grid, n_nodes, n_theta);
        ordered_json j;
        j["polynomial"] = p.str();
        j["lemniscate"] = {{"V", lm.v_int().str()}, {"r", rational_str(lm.r_exact())}};
        j["mahler"] = real_str(rep.mahler);
        ordered_json lp = ordered_json::array();
        for (const auto& e : rep.lp)
            lp.push_back({{"p", real_str(e.p)}, {"value", real_str(e.value)},
                          {"error", real_str(e.error)}});
        j["lp"] = lp;
        j["sup"] = real_str(rep.sup);
        j["chain_ok"] = rep.chain_ok;
        j["monotone_ok"] = rep.monotone_ok;
        j["meta"] = meta();
        emit(j);
    });

    // trace
    auto* trace_cmd = app.add_subcommand("trace", "trace L and export CSV");
    int trace_n = 256;
    std::string out_path;
    double trace_tol = 1e-9;
    add_lemniscate_flags(trace_cmd);
    trace_cmd->add_option("-n,--ntheta", trace_n, "theta grid size (>= 16)");
    trace_cmd->add_option("-o,--output", out_path, "CSV output path (default stdout)");
    trace_cmd->add_option("--tol", trace_tol, "on-curve tolerance");
    trace_cmd->callback([&] {
        Lemniscate lm = common.make();
        CurveTrace tr = trace(lm, trace_n, trace_tol);
        if (out_path.empty()) {
            write_trace_csv(tr, std::cout);
        } else {
            std::ofstream os(out_path);
            if (!os) throw InputError("cannot open output file", out_path);
            write_trace_csv(tr, os);
        }
        ordered_json j;
        j["lemniscate"] = {{"V", lm.v_int().str()}, {"r", rational_str(lm.r_exact())}};
        j["components"] = tr.components.size();
        ordered_json mono = ordered_json::array();
        for (int b : tr.monodromy) mono.push_back(b);
        j["monodromy"] = mono;
        j["near_critical"] = tr.near_critical;
        if (!tr.warnings.empty()) j["warnings"] = tr.warnings;
        if (!out_path.empty()) {
            j["csv"] = out_path;
            j["meta"] = meta();
            emit(j);
        }
    });

    // search-min
    auto* search_cmd =
        app.add_subcommand("search-min", "exhaustive minimal-height search and uniqueness check");
    int k = 1;
    std::string p_sel = "0";
    long coeff_bound = 1;
    bool no_prune = false;
    long long cap = 100'000'000;
    int threads = 1;
    add_lemniscate_flags(search_cmd);
    search_cmd->add_option("-k,--power", k, "degree cap k*deg(V)");
    search_cmd->add_option("-p,--height", p_sel, "height: 0 (geometric mean), finite p, or inf");
    search_cmd->add_option("-b,--coeff-bound", coeff_bound, "coefficient box half-width")
        ->required();
    search_cmd->add_flag("--no-prune", no_prune, "disable the resultant cutoff");
    search_cmd->add_option("--cap", cap, "candidate cap");
    search_cmd->add_option("--nodes", n_nodes, "finite-p quadrature nodes");
    search_cmd->add_option("--threads", threads, "worker shards");
    bool exploratory = false;
    search_cmd->add_flag("--exploratory", exploratory,
                         "scan outside the theorem hypotheses (no uniqueness check)");
    search_cmd->callback([&] {
        SearchSpec spec{common.make(), k, HeightSelector::parse(p_sel), coeff_bound, !no_prune,
                        cap};
        spec.threads = threads;
        if (exploratory) {
            SearchResult res = min_height_search(spec);
            ordered_json j = search_json(spec, res);
            j["uniqueness"] = nullptr;
            j["meta"] = meta();
            emit(j);
            return;
        }
        UniquenessReport rep = verify_uniqueness(spec);
        ordered_json j = search_json(spec, rep.result);
        j["uniqueness"] = {{"predicted", poly_list(rep.predicted)},
                           {"extra", poly_list(rep.extra)},
                           {"missing", poly_list(rep.missing)},
                           {"matches", rep.matches}};
        if (!rep.notes.empty()) j["uniqueness"]["notes"] = rep.notes;
        j["meta"] = meta();
        emit(j);
    });

    // alg-ints
    auto* alg_cmd = app.add_subcommand(
        "alg-ints", "conjugate algebraic-integer sets on L (r = 1 enumerates, r < 1 scans empty)");
    long max_index = 12;
    int max_degree = 8;
    long scan_bound = 4;
    long long alg_cap = 10'000'000;
    int alg_threads = 1;
    bool alg_progress = false;
    add_lemniscate_flags(alg_cmd);
    alg_cmd->add_option("--max-index", max_index, "largest cyclotomic index (r = 1)");
    alg_cmd->add_option("--max-degree", max_degree, "degree cap for listed/scanned sets");
    alg_cmd->add_option("-b,--coeff-bound", scan_bound, "scan box half-width (r < 1)");
    alg_cmd->add_option("--cap", alg_cap, "scan cap (r < 1)");
    alg_cmd->add_option("--threads", alg_threads, "scan shards (r < 1)");
    alg_cmd->add_flag("--progress", alg_progress, "emit progress JSON lines on stderr");
    alg_cmd->callback([&] {
        Lemniscate lm = common.make();
        ordered_json j;
        j["lemniscate"] = {{"V", lm.v_int().str()}, {"r", rational_str(lm.r_exact())}};
        if (lm.r_exact() == 1) {
            ConjugateSetReport rep = enumerate_conjugate_sets(lm, max_index, max_degree);
            ordered_json sets = ordered_json::array();
            for (const auto& s : rep.sets) {
                ordered_json roots = ordered_json::array();
                for (Cplx z : s.roots.roots)
                    roots.push_back({{"re", real_str(z.real())}, {"im", real_str(z.imag())}});
                sets.push_back({{"minimal_polynomial", s.minimal_polynomial.str()},
                                {"cyclotomic_index", s.cyclotomic_index},
                                {"interior", s.interior},
                                {"roots", roots}});
            }
            j["mode"] = "enumerate";
            j["max_index"] = rep.max_index;
            j["sets"] = sets;
            if (!rep.warnings.empty()) j["warnings"] = rep.warnings;
        } else {
            EmptinessReport rep = no_sets_below_one(lm, scan_bound, max_degree, alg_cap,
                                                    alg_threads,
                                                    alg_progress ? progress_to_stderr() : ScanProgress{});
            j["mode"] = "emptiness-scan";
            j["scanned"] = rep.scanned;
            j["hits"] = rep.hits;
            j["closest_near_miss"] = real_str(rep.closest_near_miss);
            if (rep.near_miss_witness) j["near_miss_witness"] = rep.near_miss_witness->str();
        }
        j["meta"] = meta();
        emit(j);
    });

    // lehmer
    auto* lehmer_cmd = app.add_subcommand(
        "lehmer", "lift identity (-Q) or smallest measure above 1 over a box");
    std::string q_text;
    int lehmer_degree = 4;
    long lehmer_bound = 1;
    double gap = 1e-6;
    long long lehmer_cap = 100'000'000;
    add_lemniscate_flags(lehmer_cmd);
    lehmer_cmd->add_option("-Q,--lift-poly", q_text, "lift Q and report the measure identity");
    lehmer_cmd->add_option("--max-degree", lehmer_degree, "scan degree cap");
    lehmer_cmd->add_option("-b,--coeff-bound", lehmer_bound, "scan box half-width");
    lehmer_cmd->add_option("--gap", gap, "report minima strictly above 1 + gap");
    lehmer_cmd->add_option("--cap", lehmer_cap, "candidate cap");
    int lehmer_threads = 1;
    bool lehmer_progress = false;
    lehmer_cmd->add_option("--threads", lehmer_threads, "scan shards");
    lehmer_cmd->add_flag("--progress", lehmer_progress, "emit progress JSON lines on stderr");
    lehmer_cmd->callback([&] {
        Lemniscate lm = common.make();
        ordered_json j;
        j["lemniscate"] = {{"V", lm.v_int().str()}, {"r", rational_str(lm.r_exact())}};
        if (!q_text.empty()) {
            LiftReport rep = lift_measure_identity(IntPolynomial::parse(q_text), lm);
            j["mode"] = "lift";
            j["Q"] = q_text;
            j["composition"] = rep.composition.str();
            j["m_of_q"] = real_str(rep.m_of_q);
            j["m_l_of_composition"] = real_str(rep.m_l_of_composition);
            j["relative_gap"] = real_str(rep.relative_gap);
        } else {
            LehmerScanReport rep =
                lehmer_scan(lm, lehmer_degree, lehmer_bound, gap, lehmer_cap, lehmer_threads,
                            lehmer_progress ? progress_to_stderr() : ScanProgress{});
            j["mode"] = "scan";
            j["scanned"] = rep.scanned;
            j["smallest_above_one"] =
                rep.smallest_above_one ? real_str(*rep.smallest_above_one) : "none";
            if (rep.witness) j["witness"] = rep.witness->str();
            if (rep.circle_minimum) {
                j["circle_minimum"] = real_str(*rep.circle_minimum);
                j["sandwich"] = {{"low", real_str(rep.sandwich_low)},
                                 {"high", real_str(rep.sandwich_high)}};
                j["lower_ok"] = rep.lower_ok;
                j["lift_ok"] = rep.lift_ok;
            }
        }
        j["meta"] = meta();
        emit(j);
    });

    // classify
    auto* classify_cmd =
        app.add_subcommand("classify", "Kronecker-type classification of a monic irreducible P");
    std::string cls_p;
    long cls_index = 300;
    add_lemniscate_flags(classify_cmd);
    classify_cmd->add_option("-P,--poly", cls_p, "monic irreducible polynomial")->required();
    classify_cmd->add_option("--max-index", cls_index, "cyclotomic search cap");
    classify_cmd->callback([&] {
        Lemniscate lm = common.make();
        KroneckerVerdict v = kronecker_classify(IntPolynomial::parse(cls_p), lm, cls_index);
        ordered_json j;
        j["polynomial"] = cls_p;
        j["lemniscate"] = {{"V", lm.v_int().str()}, {"r", rational_str(lm.r_exact())}};
        switch (v.kind) {
            case KroneckerKind::DividesV: j["kind"] = "DividesV"; break;
            case KroneckerKind::CyclotomicLift: j["kind"] = "CyclotomicLift"; break;
            case KroneckerKind::NotUnitHeight: j["kind"] = "NotUnitHeight"; break;
        }
        j["mahler"] = real_str(v.mahler);
        if (v.cyclotomic_index) j["cyclotomic_index"] = *v.cyclotomic_index;
        if (v.witness) j["witness"] = v.witness->str();
        if (!v.companion.is_zero()) j["companion"] = v.companion.str();
        if (!v.notes.empty()) j["notes"] = v.notes;
        j["meta"] = meta();
        emit(j);
    });

    app.parse(argc, argv);
    return 0;
}

}  // namespace
