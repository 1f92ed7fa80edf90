#include "dalg/batch.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "dalg/ade.hpp"
#include "dalg/algebraic.hpp"
#include "dalg/analytic.hpp"
#include "dalg/error.hpp"
#include "dalg/named_series.hpp"
#include "dalg/pipeline.hpp"
#include "dalg/recurrence.hpp"
#include "dalg/series_io.hpp"

namespace dalg {

namespace {

using nlohmann::json;

QSeries load_qseries(const std::string& path) {
    AnySeries s = read_series_file(path);
    if (auto* q = std::get_if<QSeries>(&s)) return *q;
    if (auto* z = std::get_if<ZSeries>(&s)) return to_qseries(*z);
    throw ParseError(path + ": expected exact coefficients, found a modulus");
}

MSeries load_mseries(const std::string& path) {
    AnySeries s = read_series_file(path);
    if (auto* m = std::get_if<MSeries>(&s)) return *m;
    throw ParseError(path + ": expected a modular series");
}

void job_generate(const json& j, BatchJobResult& res) {
    std::string what = j.at("what");
    long order = j.at("order");
    QSeries F;
    if (what == "named") {
        F = named_series(named_series_from_string(j.at("name")), order);
    } else if (what == "tutte") {
        F = tutte_series(mpq_class(std::string(j.at("q"))), order);
    } else if (what == "recurrence") {
        F = convolution_series(parse_recurrence_spec_file(j.at("spec")), order);
    } else {
        throw ParseError("generate: unknown kind '" + what + "'");
    }
    std::string out = j.at("out");
    F.name = j.value("name", what);
    write_series_file(out, F);
    res.artifact = out;
    res.detail = "wrote " + std::to_string(F.order() + 1) + " coefficients";
}

void job_reduce(const json& j, BatchJobResult& res) {
    AnySeries s = read_series_file(j.at("in"));
    u64 p = j.at("p");
    unsigned r = j.value("r", 1u);
    MSeries m = std::holds_alternative<QSeries>(s)
                    ? reduce_mod(std::get<QSeries>(s), p, r)
                    : reduce_mod(std::holds_alternative<ZSeries>(s)
                                     ? std::get<ZSeries>(s)
                                     : throw ParseError("reduce: input is already modular"),
                                 p, r);
    m.name = any_name(s);
    std::string out = j.at("out");
    write_series_file(out, m);
    res.artifact = out;
}

void job_guess_algebraic(const json& j, BatchJobResult& res) {
    MSeries F = load_mseries(j.at("in"));
    GuessBudget budget;
    budget.dy_max = j.value("dy_max", budget.dy_max);
    budget.dx_max = j.value("dx_max", budget.dx_max);
    budget.margin = j.value("margin", budget.margin);
    AlgebraicGuess guess = guess_algebraic(F, budget);
    if (!guess.poly) {
        res.status = "notfound";
        res.detail = guess.certificate();
        return;
    }
    res.detail = guess.poly->pretty();
    if (j.contains("out")) {
        std::ofstream out(std::string(j.at("out")));
        write_bivariate(out, *guess.poly);
        res.artifact = j.at("out").get<std::string>();
    }
}

void job_guess_ade(const json& j, BatchJobResult& res) {
    QSeries F = load_qseries(j.at("in"));
    long T = j.value("T", 10);
    if (j.value("auto", false)) {
        AdeAutoReport rep = guess_ade_auto(F, T, j.value("exclusions", true));
        if (!rep.relation) {
            res.status = "notfound";
            res.detail = "no relation among " + std::to_string(rep.forms_tried.size()) +
                         " candidate forms";
            return;
        }
        res.detail = rep.relation->pretty();
        return;
    }
    AdeForm form{j.at("m").get<long>(), j.at("k").get<long>(), j.at("d").get<long>(),
                 j.value("homogeneous", false)};
    AdeOutcome out = guess_ade(F, form, T);
    if (!out.found()) {
        res.status = "notfound";
        res.detail = out.note;
        return;
    }
    res.detail = out.relation->pretty();
}

void job_guess_recurrence(const json& j, BatchJobResult& res) {
    QSeries F = load_qseries(j.at("in"));
    std::vector<mpz_class> coeffs;
    for (long i = 0; i <= F.order(); ++i) {
        if (F.at(i).get_den() != 1)
            throw ParseError("guess-recurrence: coefficients must be integers");
        coeffs.push_back(F.at(i).get_num());
    }
    WindowOutcome out = guess_window_recurrence(coeffs, j.at("window").get<long>(),
                                                j.at("deg_n").get<long>(),
                                                j.at("deg_c").get<long>(), j.value("T", 10));
    if (!out.found()) {
        res.status = "notfound";
        res.detail = out.note;
        return;
    }
    res.detail = out.recurrence->pretty();
}

void job_analyze(const json& j, BatchJobResult& res) {
    std::string mode = j.at("mode");
    if (mode == "xc") {
        res.detail = "critical point " + std::to_string(transcendental_critical_point());
        return;
    }
    QSeries F = load_qseries(j.at("in"));
    if (mode == "radius") {
        auto est = radius_estimate(F, RadiusMethod::Ratio);
        res.detail = "lambda " + std::to_string(est.lambda) + ", radius " +
                     std::to_string(est.radius) + ", signs " + est.sign_pattern;
    } else if (mode == "borel") {
        auto fit = borel_asymptotics(F, j.value("n_used", F.order()));
        res.detail = "c " + std::to_string(fit.c) + ", log coefficient " +
                     std::to_string(fit.log_coeff);
    } else if (mode == "diffpade") {
        long q = j.at("order"), D = j.at("degree");
        long window = j.value("window", (q + 1) * (D + 1) + q - 1);
        auto fit = fit_linear_ode(F, q, D, window);
        if (!fit) {
            res.status = "notfound";
            res.detail = "window system has full rank";
            return;
        }
        auto rep = singularities(*fit);
        res.detail = (fit->exact ? "exact fit, " : "approximant, ") +
                     std::to_string(rep.entries.size()) + " head roots";
        if (!rep.entries.empty()) {
            const auto& d = rep.entries[rep.dominant];
            res.detail += ", smallest modulus at (" + std::to_string(d.location.real()) +
                          ", " + std::to_string(d.location.imag()) + ")";
        }
    } else {
        throw ParseError("analyze: unknown mode '" + mode + "'");
    }
}

void job_verify_funceq(const json& j, BatchJobResult& res) {
    MSeries F = load_mseries(j.at("in"));
    FunctionalEquation eq;
    eq.modulus = j.at("modulus");
    eq.inner_power = j.value("s", 2);
    for (u64 c : j.at("a")) eq.a.push_back(c);
    for (u64 c : j.at("b")) eq.b.push_back(c);
    FuncEqResult r = verify_funceq(F, eq);
    if (r.pass) {
        res.detail = "holds through x^" + std::to_string(r.checked_through);
    } else {
        res.status = "notfound";
        res.detail = "first failure at x^" + std::to_string(r.first_bad);
    }
}

void job_crt_combine(const json& j, BatchJobResult& res) {
    std::vector<std::string> paths;
    for (const auto& item : j.at("in")) paths.push_back(item.get<std::string>());
    CrtOutcome out = crt_combine(load_residue_bundle(paths));
    if (!out.sufficient) {
        if (j.value("strict", false))
            throw ArithmeticError("crt-combine: prime product below the 2*4^N bound");
        res.detail = "warning: prime product below the 2*4^N bound; ";
    }
    res.detail += std::to_string(paths.size()) + " primes, " +
                  std::to_string(out.series.order() + 1) + " coefficients";
    if (j.contains("out")) {
        write_series_file(j.at("out").get<std::string>(), out.series);
        res.artifact = j.at("out").get<std::string>();
    }
}

void run_job(const json& j, BatchJobResult& res) {
    res.status = "ok";
    const std::string op = res.op;
    if (op == "generate") job_generate(j, res);
    else if (op == "reduce") job_reduce(j, res);
    else if (op == "guess-algebraic") job_guess_algebraic(j, res);
    else if (op == "guess-ade") job_guess_ade(j, res);
    else if (op == "guess-recurrence") job_guess_recurrence(j, res);
    else if (op == "analyze") job_analyze(j, res);
    else if (op == "verify-funceq") job_verify_funceq(j, res);
    else if (op == "crt-combine") job_crt_combine(j, res);
    else throw ParseError("unknown op '" + op + "'");
}

} // namespace

BatchJobResult run_job_json(const std::string& job_json) {
    json j = json::parse(job_json);
    BatchJobResult res;
    res.id = j.value("id", "cli");
    res.op = j.value("op", "");
    auto t0 = std::chrono::steady_clock::now();
    try {
        run_job(j, res);
    } catch (const std::exception& e) {
        res.status = "error";
        res.detail = e.what();
    }
    res.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

BatchReport run_batch(const std::string& manifest_path, int workers) {
    std::ifstream in(manifest_path);
    if (!in) throw ParseError("cannot open manifest " + manifest_path);
    json manifest = json::parse(in);
    const json& jobs = manifest.at("jobs");

    BatchReport report;
    report.jobs.resize(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            const json& j = jobs[i];
            BatchJobResult& res = report.jobs[i];
            res.id = j.value("id", "job" + std::to_string(i));
            res.op = j.value("op", "");
            auto t0 = std::chrono::steady_clock::now();
            try {
                run_job(j, res);
            } catch (const std::exception& e) {
                res.status = "error";
                res.detail = e.what();
            }
            res.seconds = std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
        }
    };
    int n = std::max(1, workers);
    std::vector<std::thread> pool;
    for (int t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::sort(report.jobs.begin(), report.jobs.end(),
              [](const BatchJobResult& a, const BatchJobResult& b) { return a.id < b.id; });
    for (const auto& r : report.jobs) {
        if (r.status == "error") report.any_error = true;
        if (r.status == "notfound") report.any_notfound = true;
    }
    return report;
}

std::string report_to_json(const BatchReport& report) {
    json out;
    out["jobs"] = json::array();
    for (const auto& r : report.jobs)
        out["jobs"].push_back({{"id", r.id},
                               {"op", r.op},
                               {"status", r.status},
                               {"detail", r.detail},
                               {"artifact", r.artifact},
                               {"seconds", r.seconds}});
    out["exit_code"] = report.exit_code();
    return out.dump(2);
}

} // namespace dalg
