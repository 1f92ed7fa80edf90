#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include <dalg/batch.hpp>
#include <dalg/pipeline.hpp>

using nlohmann::json;

namespace {

int finish(const dalg::BatchJobResult& res) {
    if (res.status == "error") {
        std::cerr << "error: " << res.detail << "\n";
        return 2;
    }
    std::cout << res.status << ": " << res.detail;
    if (!res.artifact.empty()) std::cout << " -> " << res.artifact;
    std::cout << "\n";
    return res.status == "notfound" ? 1 : 0;
}

int run(const json& job) { return finish(dalg::run_job_json(job.dump())); }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact power-series toolkit: generation, modular reduction, "
                 "relation guessing, and analytic estimates"};
    app.require_subcommand(1);

    std::string out, report_path;
    int workers = 1;
    bool strict = false;
    unsigned long seed = 0;
    app.add_option("--out", out, "Output file for the produced artifact");
    app.add_option("--report", report_path, "Write a JSON report to this path");
    app.add_option("--workers", workers, "Concurrent jobs for batch runs");
    app.add_flag("--strict", strict, "Escalate warnings to errors");
    app.add_option("--seed", seed, "Seed for randomized property checks");

    // generate
    auto* gen = app.add_subcommand("generate", "Produce a reference series");
    std::string gen_what = "named", gen_name, gen_q = "4", gen_spec;
    long gen_order = 100;
    gen->add_option("--what", gen_what, "named, tutte, or recurrence");
    gen->add_option("--name", gen_name, "Named series identifier");
    gen->add_option("--q", gen_q, "Color count for tutte (rational allowed)");
    gen->add_option("--spec", gen_spec, "Recurrence spec file");
    gen->add_option("--order", gen_order, "Truncation order");

    // reduce
    auto* red = app.add_subcommand("reduce", "Reduce an exact series mod p^r");
    std::string red_in;
    dalg::u64 red_p = 0;
    unsigned red_r = 1;
    red->add_option("--in", red_in)->required();
    red->add_option("-p", red_p, "Prime")->required();
    red->add_option("-r", red_r, "Exponent, modulus p^r");

    // guess-algebraic
    auto* ga = app.add_subcommand("guess-algebraic",
                                  "Search P(x, F) = 0 for a modular series");
    std::string ga_in;
    long ga_dy = 40, ga_dx = 80, ga_margin = 10;
    ga->add_option("--in", ga_in)->required();
    ga->add_option("--dy-max", ga_dy);
    ga->add_option("--dx-max", ga_dx);
    ga->add_option("--margin", ga_margin);

    // guess-ade
    auto* gd = app.add_subcommand("guess-ade",
                                  "Search an algebraic differential relation");
    std::string gd_in;
    long gd_m = 2, gd_k = 1, gd_d = 3, gd_T = 10;
    bool gd_auto = false, gd_no_exclusions = false, gd_homogeneous = false;
    gd->add_option("--in", gd_in)->required();
    gd->add_option("-m", gd_m, "Total degree");
    gd->add_option("-k", gd_k, "Highest derivative");
    gd->add_option("-d", gd_d, "Polynomial coefficient degree");
    gd->add_option("-T", gd_T, "Overdetermination margin");
    gd->add_flag("--auto", gd_auto, "Enumerate candidate forms maximal-first");
    gd->add_flag("--no-exclusions", gd_no_exclusions,
                 "Keep m=1 and k=0 forms in the enumeration");
    gd->add_flag("--homogeneous", gd_homogeneous);

    // guess-recurrence
    auto* gr = app.add_subcommand("guess-recurrence",
                                  "Fit a fixed-window polynomial recurrence");
    std::string gr_in;
    long gr_window = 2, gr_deg_n = 1, gr_deg_c = 1, gr_T = 10;
    gr->add_option("--in", gr_in)->required();
    gr->add_option("--window", gr_window)->required();
    gr->add_option("--deg-n", gr_deg_n);
    gr->add_option("--deg-c", gr_deg_c);
    gr->add_option("-T", gr_T);

    // analyze / borel
    auto* an = app.add_subcommand("analyze", "Floating-point series analysis");
    std::string an_in, an_mode = "radius";
    long an_order = 4, an_degree = 12, an_window = 0, an_nused = 0;
    an->add_option("--in", an_in);
    an->add_option("--mode", an_mode, "diffpade, radius, borel, or xc");
    an->add_option("--order", an_order, "Derivative order for diffpade");
    an->add_option("--degree", an_degree, "Coefficient degree for diffpade");
    an->add_option("--window", an_window, "Fitting window for diffpade");
    an->add_option("--n-used", an_nused, "Coefficients used by the borel fit");

    auto* bo = app.add_subcommand("borel", "Asymptotic fit of c_n ~ c * n!");
    std::string bo_in;
    long bo_nused = 0;
    bo->add_option("--in", bo_in)->required();
    bo->add_option("--n-used", bo_nused);

    // crt-combine
    auto* cc = app.add_subcommand("crt-combine",
                                  "Assemble residue files into exact integers");
    std::vector<std::string> cc_in;
    cc->add_option("--in", cc_in, "Residue files (<name>.p<prime>.res)")->required();

    // prime-plan
    auto* pp = app.add_subcommand("prime-plan",
                                  "Primes needed to cover coefficients growing like 4^n");
    long pp_N = 0;
    int pp_bits = 15;
    bool pp_list = false;
    pp->add_option("-N", pp_N, "Series length target")->required();
    pp->add_option("--bits", pp_bits, "Prime size in bits (15 or 30)");
    pp->add_flag("--list", pp_list, "Print the primes themselves");

    // verify-funceq
    auto* vf = app.add_subcommand("verify-funceq",
                                  "Check F(x^s) = a(x) F(x) + b(x) mod p^r");
    std::string vf_in;
    dalg::u64 vf_mod = 0;
    long vf_s = 2;
    std::vector<dalg::u64> vf_a, vf_b;
    vf->add_option("--in", vf_in)->required();
    vf->add_option("--modulus", vf_mod)->required();
    vf->add_option("-s", vf_s, "Inner power in x -> x^s");
    vf->add_option("-a", vf_a, "Multiplier polynomial, constant term first");
    vf->add_option("-b", vf_b, "Additive polynomial, constant term first");

    // batch
    auto* ba = app.add_subcommand("batch", "Run a JSON manifest of jobs");
    std::string ba_manifest;
    ba->add_option("manifest", ba_manifest)->required();

    for (CLI::App* s : {gen, red, ga, gd, gr, an, bo, cc, pp, vf, ba})
        s->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            json j{{"op", "generate"}, {"what", gen_what}, {"order", gen_order}};
            if (!gen_name.empty()) j["name"] = gen_name;
            if (gen_what == "tutte") j["q"] = gen_q;
            if (!gen_spec.empty()) j["spec"] = gen_spec;
            j["out"] = out.empty() ? "series.txt" : out;
            return run(j);
        }
        if (red->parsed()) {
            json j{{"op", "reduce"}, {"in", red_in}, {"p", red_p}, {"r", red_r}};
            j["out"] = out.empty() ? red_in + ".mod" : out;
            return run(j);
        }
        if (ga->parsed()) {
            json j{{"op", "guess-algebraic"}, {"in", ga_in},      {"dy_max", ga_dy},
                   {"dx_max", ga_dx},         {"margin", ga_margin}};
            if (!out.empty()) j["out"] = out;
            return run(j);
        }
        if (gd->parsed()) {
            json j{{"op", "guess-ade"}, {"in", gd_in}, {"T", gd_T}};
            if (gd_auto) {
                j["auto"] = true;
                j["exclusions"] = !gd_no_exclusions;
            } else {
                j["m"] = gd_m;
                j["k"] = gd_k;
                j["d"] = gd_d;
                j["homogeneous"] = gd_homogeneous;
            }
            return run(j);
        }
        if (gr->parsed()) {
            return run(json{{"op", "guess-recurrence"},
                            {"in", gr_in},
                            {"window", gr_window},
                            {"deg_n", gr_deg_n},
                            {"deg_c", gr_deg_c},
                            {"T", gr_T}});
        }
        if (an->parsed() || bo->parsed()) {
            json j{{"op", "analyze"}};
            if (bo->parsed()) {
                j["mode"] = "borel";
                j["in"] = bo_in;
                if (bo_nused > 0) j["n_used"] = bo_nused;
            } else {
                j["mode"] = an_mode;
                if (!an_in.empty()) j["in"] = an_in;
                j["order"] = an_order;
                j["degree"] = an_degree;
                if (an_window > 0) j["window"] = an_window;
                if (an_nused > 0) j["n_used"] = an_nused;
            }
            return run(j);
        }
        if (cc->parsed()) {
            json j{{"op", "crt-combine"}, {"in", cc_in}, {"strict", strict}};
            if (!out.empty()) j["out"] = out;
            return run(j);
        }
        if (pp->parsed()) {
            dalg::PrimePlan plan = dalg::prime_plan(pp_N, pp_bits);
            std::cout << plan.primes.size() << " primes below 2^" << pp_bits
                      << " cover N = " << pp_N << "\n";
            if (pp_list)
                for (dalg::u64 p : plan.primes) std::cout << p << "\n";
            return 0;
        }
        if (vf->parsed()) {
            return run(json{{"op", "verify-funceq"},
                            {"in", vf_in},
                            {"modulus", vf_mod},
                            {"s", vf_s},
                            {"a", vf_a},
                            {"b", vf_b}});
        }
        if (ba->parsed()) {
            dalg::BatchReport report = dalg::run_batch(ba_manifest, workers);
            std::string text = dalg::report_to_json(report);
            if (!report_path.empty()) {
                std::ofstream f(report_path);
                f << text << "\n";
            } else {
                std::cout << text << "\n";
            }
            return report.exit_code();
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
