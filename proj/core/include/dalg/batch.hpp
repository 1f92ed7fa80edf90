#ifndef DALG_BATCH_HPP
#define DALG_BATCH_HPP

#include <string>
#include <vector>

namespace dalg {

// Manifest format (JSON):
//
//   { "jobs": [ { "id": "a1", "op": "generate", ... }, ... ] }
//
// Supported ops and their fields:
//   generate        what: named|tutte|recurrence, name/q/spec, order, out
//   reduce          in, p, r (default 1), out
//   guess-algebraic in (modular series), dy_max, dx_max, margin, out (optional)
//   guess-ade       in, T, and either m,k,d or auto: true; exclusions
//   guess-recurrence in, window, deg_n, deg_c, T
//   analyze         in, mode: radius|xc|borel|diffpade, order, degree, window, n_used
//   verify-funceq   in, modulus, s, a: [...], b: [...]
//   crt-combine     in: [residue files...], out, strict
//
// A job ends in one of three states: ok, notfound (a clean negative result),
// or error.  Errors never abort the other jobs.

struct BatchJobResult {
    std::string id;
    std::string op;
    std::string status;   // "ok", "notfound", "error"
    std::string detail;
    std::string artifact; // output path when the job wrote one
    double seconds = 0;
};

struct BatchReport {
    std::vector<BatchJobResult> jobs; // sorted by id
    bool any_error = false;
    bool any_notfound = false;
    int exit_code() const { return any_error ? 2 : (any_notfound ? 1 : 0); }
};

BatchReport run_batch(const std::string& manifest_path, int workers = 1);

// One job given as a JSON object with the manifest-entry schema; used by
// the CLI so that every subcommand and the batch runner share one code
// path.  Exceptions become status "error".
BatchJobResult run_job_json(const std::string& job_json);

std::string report_to_json(const BatchReport& report);

} // namespace dalg

#endif
