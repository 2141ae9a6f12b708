/* cantorlab — planar Cantor-set renormalization laboratory, C interface.
 *
 * All functions return CLAB_OK (0) on success or a nonzero status code;
 * clab_last_error() describes the most recent failure on the calling thread.
 * Structured inputs and outputs travel as JSON text. Strings returned through
 * char** out-parameters are heap-allocated and must be released with
 * clab_string_free().
 */
#ifndef CANTORLAB_H
#define CANTORLAB_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum clab_status {
    CLAB_OK = 0,
    CLAB_ERR_PARSE = 1,       /* malformed JSON or expression document */
    CLAB_ERR_DOMAIN = 2,      /* violated precondition or model invariant */
    CLAB_ERR_CONVERGENCE = 3, /* a solve or limit did not converge */
    CLAB_ERR_CAP = 4,         /* combinatorial cap exceeded */
    CLAB_ERR_ARG = 5,         /* null pointer or out-of-range argument */
    CLAB_ERR_INTERNAL = 6
} clab_status;

typedef struct clab_system clab_system; /* expanding Markov disk system */
typedef struct clab_model clab_model;   /* tangency unfolding model */

const char* clab_version(void);
const char* clab_status_name(clab_status status);

/* Message for the last failing call on this thread; empty string if none. */
const char* clab_last_error(void);

void clab_string_free(char* s);

/* ---- Cantor systems ----------------------------------------------------
 * Document format: {"alphabet": [...], "transitions": [[a,b],...],
 * "pieces": {letter: {"center": [re,im], "radius": r}},
 * "branches": {letter: <map AST>}, "base_points": {letter: [re,im]}},
 * or {"builtin": "<name>"}. Map ASTs use {"op": "affine"|"poly"|"moebius"|
 * "compose"|"inverse", ...}.
 */
clab_status clab_system_parse(const char* json_text, clab_system** out);
void clab_system_free(clab_system* sys);
clab_status clab_system_dump(const clab_system* sys, char** json_out);

/* Axiom report: {"all_pass": bool, "axioms": [{"name", "pass", "margin",
 * "detail"}...], "expansion_inf", "mixing_power"}. */
clab_status clab_system_validate(const clab_system* sys, char** report_json_out);

/* Disks enclosing all advanced pieces of the given depth from `letter`:
 * [{"word": [letters...], "disk": {"center", "radius"}}...]. */
clab_status clab_system_cover(const clab_system* sys, const char* letter, int depth,
                              char** disks_json_out);

/* Truncated limit geometry along an eventually periodic tail "blk|sfx"
 * (letters comma-separated). Includes depth, error bound, step distances,
 * grid samples, and the image disks of the final cover. */
clab_status clab_system_limit_geometry(const clab_system* sys, const char* tail, double tol,
                                       int max_depth, char** result_json_out);

/* ---- Intersection of configured sets -----------------------------------
 * Job: {"a": {"system": <doc>, "letter": "a", "config": <map AST, optional>},
 *       "b": {...}, "max_depth": int, "margin": double,
 *       "emit_covers": bool (optional)}.
 * Verdict: {"kind": "certified_empty"|"robust_nonempty"|"unknown", "depth",
 *           "witness"?, "overlap"?, "final_pairs", "covers"?}.
 */
clab_status clab_intersection_test(const char* job_json, char** verdict_json_out);

/* Job adds {"perturbation": {"eps_branch", "eps_config", "samples", "seed"}}.
 * Report: {"samples", "passed", "rejected", "pass_fraction", "failures"}. */
clab_status clab_stable_probe(const char* job_json, char** report_json_out);

/* ---- Exponent pairs ----------------------------------------------------- */

/* Rational-independence report for the pair (z, w), |z| > 1 > |w| > 0. */
clab_status clab_kronecker_genericity(double z_re, double z_im, double w_re, double w_im,
                                      double tol, int coeff_bound, char** report_json_out);

/* Job: {"z": [re,im], "w": [re,im], "v": [re,im], "delta": d, "m_max": int,
 * "n_max": int (optional)}. Result: {"pairs": [{"m","n","value","error"}...],
 * "best_miss"?, "gap"?: {"max_gap", ...}}. */
clab_status clab_kronecker_pairs(const char* job_json, char** result_json_out);

/* ---- Unfolding models ---------------------------------------------------
 * Document: {"systems": {"unstable": <doc>, "stable": <doc>},
 * "letters": {...}, "configs": {...}, "lambda_u"?, "lambda_s"?, "drift"?,
 * "B"?, "r_coeff"?, "chart"?, "perturbation"?, "zeta_mode"?, "zeta"?,
 * "validity_radius"?, "aligned"?}, or {"builtin": "<name>"}.
 */
clab_status clab_model_parse(const char* json_text, clab_model** out);
void clab_model_free(clab_model* model);
clab_status clab_model_dump(const clab_model* model, char** json_out);

/* Derived data: eigenvalues, dcomp, the resolved zeta branch and pair target. */
clab_status clab_model_summary(const clab_model* model, char** json_out);

/* Tangency locus z = a(w) over w samples: {"points": [{"w","z","residual",
 * "converged"}...], "second_derivative_difference"}. */
clab_status clab_model_tangency_disk(const clab_model* model, double mu_re, double mu_im,
                                     int w_count, double w_radius, char** json_out);

/* Exact vs approximate renormalized comparison at depths (m, n). */
clab_status clab_model_renormalized_pair(const clab_model* model, double mu_re, double mu_im,
                                         int m, int n, int with_residuals, char** json_out);

/* Parameter region mapped into the delta-ball around nu at depth m. */
clab_status clab_model_select_parameters(const clab_model* model, double nu_re, double nu_im,
                                         double delta, int m, char** json_out);

/* Params: {"eps": e, "grid": n, "depth": d, "margin": m,
 * "with_mask": bool (optional)}. One scan row with the marked fraction. */
clab_status clab_model_scan(const clab_model* model, const char* params_json, char** json_out);

/* Params: {"nu": [re,im], "delta": d, "m_max": int, "eps": e} plus optional
 * "n_max". Analytic lower bound from disjoint selected parameter disks. */
clab_status clab_model_density_bound(const clab_model* model, const char* params_json,
                                     char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* CANTORLAB_H */
