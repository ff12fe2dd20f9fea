#include "formcount/archimedean.hpp"
#include "formcount/counting.hpp"
#include "formcount/expansion.hpp"
#include "formcount/expsum.hpp"
#include "formcount/io.hpp"
#include "formcount/local.hpp"
#include "formcount/predict.hpp"
#include "formcount/spaces.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

namespace {

using formcount::AlphaPoint;
using formcount::BigInt;
using formcount::ExpandedSystem;
using formcount::RunConfig;
using formcount::TargetSystem;
using nlohmann::json;

constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitWorkLimit = 3;

struct CommonOpts {
    std::string input;
    int m = 0;  // 0 = take from the document target, else 1
    int threads = 0;
    std::uint64_t max_iter = 10'000'000'000ULL;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("input", opts.input, "input document (path or '-' for stdin)")
        ->required();
    cmd->add_option("-m,--m", opts.m, "number of linear-space blocks");
    cmd->add_option("-t,--threads", opts.threads,
                    "worker threads (default: FORMCOUNT_THREADS, then all cores)");
    cmd->add_option("--max-iter", opts.max_iter,
                    "refuse enumerations beyond this many points");
}

struct LoadedProblem {
    ExpandedSystem es;
    TargetSystem target;
    int m;
};

LoadedProblem load_problem(const CommonOpts& opts) {
    const json doc = formcount::load_document(opts.input);
    formcount::FormSystem system = formcount::parse_form_system(doc);
    int m = opts.m;
    if (m == 0) m = formcount::document_target_m(doc).value_or(1);
    if (m < 1) throw std::invalid_argument("m must be at least 1");
    TargetSystem target =
        formcount::target_from_document(doc, m, system.count(), system.degree());
    ExpandedSystem es(std::move(system), m);
    return {std::move(es), std::move(target), m};
}

RunConfig run_config(const CommonOpts& opts) {
    RunConfig cfg;
    cfg.threads = opts.threads;
    cfg.max_iter = opts.max_iter;
    return cfg;
}

json base_params(const CommonOpts& opts, int m) {
    json params;
    params["input"] = opts.input;
    params["m"] = m;
    params["max_iter"] = opts.max_iter;
    return params;
}

void emit(const json& doc) { std::cout << doc.dump(2) << "\n"; }

std::vector<std::int64_t> parse_int_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoll(item));
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    return out;
}

int cmd_expand(const CommonOpts& opts) {
    LoadedProblem prob = load_problem(opts);
    const auto& es = prob.es;
    const int s = es.s();

    json rows = json::array();
    BigInt sum_A = 0;
    for (int j = 0; j < es.r(); ++j) {
        const auto& idx = es.indices().at(j);
        sum_A += idx.A;
        json row;
        json entries = json::array();
        for (int e : idx.entries) entries.push_back(e + 1);
        row["j"] = entries;
        row["mu"] = idx.mu;
        row["A"] = formcount::bigint_json(idx.A);
        row["M"] = formcount::bigint_json(idx.M);
        json per_form = json::array();
        for (int rho = 0; rho < es.num_forms(); ++rho) {
            const auto& poly = es.e_poly(rho, j);
            json terms = json::array();
            for (const auto& [exps, coeff] : poly.terms())
                terms.push_back(
                    {{"exps", exps}, {"coeff", formcount::bigint_json(coeff)}});
            per_form.push_back(
                {{"form", es.system().forms()[rho].name()},
                 {"polynomial",
                  poly.to_string([&](int v) { return formcount::coordinate_name(v, s); })},
                 {"terms", terms}});
        }
        row["E"] = per_form;
        rows.push_back(std::move(row));
    }

    json result;
    result["degree"] = es.degree();
    result["num_vars"] = s;
    result["R"] = es.num_forms();
    result["m"] = es.m();
    result["r"] = es.r();
    result["sum_A"] = formcount::bigint_json(sum_A);
    result["rows"] = std::move(rows);
    emit(formcount::output_envelope("expand", base_params(opts, prob.m),
                                    std::move(result), json::object()));
    return 0;
}

int cmd_count(const CommonOpts& opts, std::int64_t P, const std::string& prefix_csv) {
    LoadedProblem prob = load_problem(opts);
    const RunConfig cfg = run_config(opts);
    formcount::CountResult res;
    if (prefix_csv.empty()) {
        res = formcount::count_box(prob.es, prob.target, P, cfg);
    } else {
        res = formcount::count_box_filtered(prob.es, prob.target, P,
                                            parse_int_list(prefix_csv), cfg);
    }
    json params = base_params(opts, prob.m);
    params["P"] = P;
    params["threads"] = formcount::resolve_threads(cfg.threads);
    if (!prefix_csv.empty()) params["prefix"] = prefix_csv;
    json diagnostics;
    diagnostics["wall_time"] = res.wall_time;
    emit(formcount::output_envelope("count", std::move(params),
                                    formcount::count_result_json(res),
                                    std::move(diagnostics)));
    return 0;
}

int cmd_local(const CommonOpts& opts, std::int64_t p, int l) {
    LoadedProblem prob = load_problem(opts);
    if (l < 1) l = p <= prob.es.degree() ? 2 : 1;
    const auto density =
        formcount::chi_p_congruence(prob.es, prob.target, p, l, run_config(opts));
    json params = base_params(opts, prob.m);
    params["p"] = p;
    params["l"] = l;
    emit(formcount::output_envelope("local", std::move(params),
                                    formcount::local_density_json(density),
                                    json::object()));
    return 0;
}

int cmd_series(const CommonOpts& opts, std::int64_t qmax) {
    LoadedProblem prob = load_problem(opts);
    const auto series =
        formcount::truncated_singular_series(prob.es, prob.target, qmax,
                                             run_config(opts));
    json terms = json::array();
    for (std::size_t i = 0; i < series.terms.size(); ++i)
        terms.push_back({{"q", i + 1}, {"A_q", formcount::complex_json(series.terms[i])}});
    json result;
    result["Q"] = qmax;
    result["value"] = series.value;
    result["terms"] = std::move(terms);
    json diagnostics;
    diagnostics["max_imag"] = series.max_imag;
    emit(formcount::output_envelope("series", base_params(opts, prob.m),
                                    std::move(result), std::move(diagnostics)));
    return 0;
}

int cmd_real(const CommonOpts& opts, double epsilon, std::uint64_t samples,
             std::uint64_t seed) {
    LoadedProblem prob = load_problem(opts);
    const auto est = formcount::chi_infinity_volume(prob.es, prob.target, epsilon,
                                                    samples, seed, run_config(opts));
    json params = base_params(opts, prob.m);
    params["epsilon"] = epsilon;
    params["samples"] = samples;
    params["seed"] = seed;
    json result;
    result["estimate"] = est.estimate;
    result["standard_error"] = est.standard_error;
    result["epsilon"] = est.epsilon;
    result["samples"] = est.samples;
    result["seed"] = est.seed;
    json diagnostics;
    diagnostics["hits"] = est.hits;
    emit(formcount::output_envelope("real", std::move(params), std::move(result),
                                    std::move(diagnostics)));
    return 0;
}

int cmd_predict(const CommonOpts& opts, std::int64_t P, std::int64_t pmax,
                const std::string& levels, double epsilon, std::uint64_t samples,
                std::uint64_t seed, bool skip_count) {
    LoadedProblem prob = load_problem(opts);
    const auto rule = formcount::LevelRule::parse(levels);
    const auto report =
        formcount::predict(prob.es, prob.target, P, pmax, rule, epsilon, samples,
                           seed, !skip_count, run_config(opts));

    json params = base_params(opts, prob.m);
    params["P"] = P;
    params["pmax"] = pmax;
    params["level_rule"] = report.level_rule;
    params["epsilon"] = epsilon;
    params["samples"] = samples;
    params["seed"] = seed;

    json chi_p = json::array();
    for (const auto& d : report.chi_p) chi_p.push_back(formcount::local_density_json(d));

    json result;
    result["P"] = report.P;
    result["exponent"] = report.exponent;
    result["chi_infinity"] = {{"estimate", report.chi_infinity.estimate},
                              {"standard_error", report.chi_infinity.standard_error},
                              {"epsilon", report.chi_infinity.epsilon},
                              {"samples", report.chi_infinity.samples},
                              {"seed", report.chi_infinity.seed}};
    result["chi_p"] = std::move(chi_p);
    result["chi_p_product"] = report.chi_p_product;
    result["predicted"] = report.predicted;
    if (report.have_count) {
        result["exact_count"] = report.exact_count;
        result["ratio"] = report.ratio;
    }
    json diagnostics;
    if (!report.count_skip_reason.empty())
        diagnostics["count_skipped"] = report.count_skip_reason;
    if (report.have_count) diagnostics["count_wall_time"] = report.count_wall_time;
    emit(formcount::output_envelope("predict", std::move(params), std::move(result),
                                    std::move(diagnostics)));
    return 0;
}

int cmd_expsum(const CommonOpts& opts, std::int64_t q, const std::string& a_csv,
               const std::string& beta_csv, const std::string& alpha_csv,
               const std::string& P_csv, int grid) {
    LoadedProblem prob = load_problem(opts);
    const RunConfig cfg = run_config(opts);
    const std::vector<std::int64_t> Ps = parse_int_list(P_csv);
    if (Ps.empty()) throw std::invalid_argument("need at least one P value");

    json params = base_params(opts, prob.m);
    params["P"] = Ps;
    json rows = json::array();

    if (q > 0) {
        std::vector<std::int64_t> a = parse_int_list(a_csv);
        if (a.empty()) a.assign(prob.es.rr(), 0);
        std::vector<double> beta;
        if (!beta_csv.empty()) beta = parse_double_list(beta_csv);
        params["q"] = q;
        params["a"] = a;
        if (!beta.empty()) params["beta"] = beta;
        params["grid"] = grid;
        for (std::int64_t P : Ps) {
            const auto rep = formcount::major_arc_residual(prob.es, prob.target, a, q,
                                                           beta, P, grid, cfg);
            json row;
            row["P"] = P;
            row["T"] = formcount::complex_json(rep.exact);
            row["approx"] = formcount::complex_json(rep.approx);
            row["abs_T"] = rep.exact_abs;
            row["abs_approx"] = rep.approx_abs;
            row["residual"] = rep.residual;
            row["residual_over_T"] =
                rep.exact_abs > 0 ? rep.residual / rep.exact_abs : 0.0;
            row["S_q"] = formcount::complex_json(rep.sq.value);
            row["v_P"] = formcount::complex_json(rep.vp.value);
            row["v_P_refinement_delta"] = rep.vp.refinement_delta;
            rows.push_back(std::move(row));
        }
    } else {
        if (alpha_csv.empty())
            throw std::invalid_argument("give either -q with --a, or --alpha");
        const AlphaPoint alpha = AlphaPoint::real(parse_double_list(alpha_csv));
        params["alpha"] = parse_double_list(alpha_csv);
        for (std::int64_t P : Ps) {
            const auto value =
                formcount::exponential_sum_T(prob.es, prob.target, alpha, P, cfg);
            rows.push_back({{"P", P}, {"T", formcount::complex_json(value)}});
        }
    }
    json result;
    result["rows"] = std::move(rows);
    emit(formcount::output_envelope("expsum", std::move(params), std::move(result),
                                    json::object()));
    return 0;
}

int cmd_spaces(const CommonOpts& opts, std::int64_t modp, std::int64_t height,
               std::size_t cap) {
    LoadedProblem prob = load_problem(opts);
    if ((modp > 0) == (height >= 0))
        throw std::invalid_argument("give exactly one of --modp or --height");
    formcount::SpaceSearchResult res;
    if (modp > 0)
        res = formcount::find_spaces_mod_p(prob.es, modp, cap, run_config(opts));
    else
        res = formcount::find_spaces_height(prob.es, height, cap, run_config(opts));

    json params = base_params(opts, prob.m);
    if (modp > 0)
        params["modp"] = modp;
    else
        params["height"] = height;
    params["cap"] = cap;

    json witnesses = json::array();
    for (const auto& w : res.witnesses) {
        json vectors = json::array();
        for (const auto& v : w.vectors) vectors.push_back(v);
        witnesses.push_back({{"vectors", vectors}, {"span_rank", w.span_rank}});
    }
    json result;
    result["total_count"] = res.total_count;
    result["listed"] = res.witnesses.size();
    result["modulus"] = res.modulus;
    result["witnesses"] = std::move(witnesses);
    emit(formcount::output_envelope("spaces", std::move(params), std::move(result),
                                    json::object()));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"circle-method toolkit for systems of integer forms"};
    app.require_subcommand(1);

    CommonOpts opts;

    auto* expand = app.add_subcommand("expand", "list the expanded system");
    add_common(expand, opts);

    auto* count = app.add_subcommand("count", "count solutions in a box");
    add_common(count, opts);
    std::int64_t count_P = 5;
    std::string count_prefix;
    count->add_option("-P,--P", count_P, "box radius")->required();
    count->add_option("--prefix", count_prefix, "fix leading coordinates (csv)");

    auto* local = app.add_subcommand("local", "p-adic density by congruence counting");
    add_common(local, opts);
    std::int64_t local_p = 2;
    int local_l = -1;
    local->add_option("-p,--p", local_p, "prime")->required();
    local->add_option("-l,--level", local_l, "level (default: 2 for p <= d, else 1)");

    auto* series = app.add_subcommand("series", "truncated singular series");
    add_common(series, opts);
    std::int64_t qmax = 8;
    series->add_option("-Q,--qmax", qmax, "truncation bound");

    auto* real = app.add_subcommand("real", "Monte Carlo real density");
    add_common(real, opts);
    double epsilon = 0.05;
    std::uint64_t samples = 1'000'000, seed = 42;
    real->add_option("--epsilon", epsilon, "residual box half-width");
    real->add_option("--samples", samples, "Monte Carlo samples");
    real->add_option("--seed", seed, "RNG seed");

    auto* predictc = app.add_subcommand("predict", "density product vs exact count");
    add_common(predictc, opts);
    std::int64_t predict_P = 10, pmax = 13;
    std::string levels = "default";
    double p_epsilon = 0.05;
    std::uint64_t p_samples = 1'000'000, p_seed = 42;
    bool skip_count = false;
    predictc->add_option("-P,--P", predict_P, "box radius")->required();
    predictc->add_option("--pmax", pmax, "include primes up to this bound");
    predictc->add_option("--levels", levels, "level rule: default|fixed:K|budget:N");
    predictc->add_option("--epsilon", p_epsilon, "real-density residual half-width");
    predictc->add_option("--samples", p_samples, "Monte Carlo samples");
    predictc->add_option("--seed", p_seed, "RNG seed");
    predictc->add_flag("--skip-count", skip_count, "omit the exact count and ratio");

    auto* expsum = app.add_subcommand("expsum", "exponential sums and major-arc table");
    add_common(expsum, opts);
    std::int64_t es_q = 0;
    std::string es_a, es_beta, es_alpha, es_P = "8";
    int es_grid = 32;
    expsum->add_option("-q,--q", es_q, "rational anchor denominator");
    expsum->add_option("--a", es_a, "anchor numerators (csv, length R*r)");
    expsum->add_option("--beta", es_beta, "real offsets (csv)");
    expsum->add_option("--alpha", es_alpha, "plain real point (csv)");
    expsum->add_option("-P,--P", es_P, "box radii (csv)");
    expsum->add_option("--grid", es_grid, "v_P quadrature points per axis");

    auto* spaces = app.add_subcommand("spaces", "search for linear m-spaces");
    add_common(spaces, opts);
    std::int64_t modp = 0, height = -1;
    std::size_t cap = 1000;
    spaces->add_option("--modp", modp, "search mod a prime");
    spaces->add_option("-H,--height", height, "search integers up to this height");
    spaces->add_option("--cap", cap, "witness list cap");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(expand)) return cmd_expand(opts);
        if (app.got_subcommand(count)) return cmd_count(opts, count_P, count_prefix);
        if (app.got_subcommand(local)) return cmd_local(opts, local_p, local_l);
        if (app.got_subcommand(series)) return cmd_series(opts, qmax);
        if (app.got_subcommand(real)) return cmd_real(opts, epsilon, samples, seed);
        if (app.got_subcommand(predictc))
            return cmd_predict(opts, predict_P, pmax, levels, p_epsilon, p_samples,
                               p_seed, skip_count);
        if (app.got_subcommand(expsum))
            return cmd_expsum(opts, es_q, es_a, es_beta, es_alpha, es_P, es_grid);
        if (app.got_subcommand(spaces)) return cmd_spaces(opts, modp, height, cap);
    } catch (const formcount::WorkLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitWorkLimit;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitUsage;
}
