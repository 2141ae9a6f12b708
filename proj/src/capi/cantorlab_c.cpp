#include "cantorlab.h"

#include <cstring>
#include <string>

#include "builtin.hpp"
#include "errors.hpp"
#include "intersect.hpp"
#include "kronecker.hpp"
#include "limit_geometry.hpp"
#include "unfolding.hpp"
#include "version.hpp"

using namespace cantorlab;

struct clab_system {
    CantorSystem sys;
};

struct clab_model {
    UnfoldingModel model;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

clab_status fail(clab_status code, const std::string& msg) {
    g_last_error = msg;
    return code;
}

/// Runs fn, mapping exceptions to status codes.
template <typename Fn>
clab_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return CLAB_OK;
    } catch (const ParseError& e) {
        return fail(CLAB_ERR_PARSE, e.what());
    } catch (const nlohmann::json::exception& e) {
        return fail(CLAB_ERR_PARSE, e.what());
    } catch (const DomainError& e) {
        return fail(CLAB_ERR_DOMAIN, e.what());
    } catch (const ConvergenceError& e) {
        return fail(CLAB_ERR_CONVERGENCE, e.what());
    } catch (const CapError& e) {
        return fail(CLAB_ERR_CAP, e.what());
    } catch (const std::exception& e) {
        return fail(CLAB_ERR_INTERNAL, e.what());
    }
}

CantorSystem system_from_doc(const json& doc) {
    if (doc.is_object() && doc.contains("builtin")) {
        return builtin_system(doc.at("builtin").get<std::string>());
    }
    return CantorSystem::from_json(doc);
}

ConfiguredSet configured_from_doc(const json& doc) {
    ConfiguredSet cs;
    cs.system = system_from_doc(doc.at("system"));
    int letter = cs.system.letter_index(doc.at("letter").get<std::string>());
    if (letter < 0) throw DomainError("unknown letter in configured set");
    cs.letter = letter;
    cs.config = doc.contains("config") ? MapExpr::from_json(doc.at("config")) : MapExpr::identity();
    return cs;
}

json cover_to_json(const CantorSystem& sys, const std::vector<CoverDisk>& cover) {
    json out = json::array();
    for (const auto& cd : cover) {
        json w = json::array();
        for (int l : cd.word.letters) w.push_back(sys.letters[l]);
        out.push_back(json{{"word", w}, {"disk", disk_to_json(cd.disk)}});
    }
    return out;
}

}  // namespace

extern "C" {

__attribute__((visibility("default"))) const char* clab_version(void) { return CANTORLAB_VERSION; }

__attribute__((visibility("default"))) const char* clab_status_name(clab_status status) {
    switch (status) {
        case CLAB_OK: return "ok";
        case CLAB_ERR_PARSE: return "parse_error";
        case CLAB_ERR_DOMAIN: return "domain_error";
        case CLAB_ERR_CONVERGENCE: return "convergence_error";
        case CLAB_ERR_CAP: return "cap_exceeded";
        case CLAB_ERR_ARG: return "bad_argument";
        case CLAB_ERR_INTERNAL: return "internal_error";
    }
    return "unknown";
}

__attribute__((visibility("default"))) const char* clab_last_error(void) {
    return g_last_error.c_str();
}

__attribute__((visibility("default"))) void clab_string_free(char* s) { delete[] s; }

__attribute__((visibility("default"))) clab_status clab_system_parse(const char* json_text,
                                                                     clab_system** out) {
    if (!json_text || !out) return fail(CLAB_ERR_ARG, "null argument");
    return guarded([&] {
        json doc = json::parse(json_text);
        *out = new clab_system{system_from_doc(doc)};
    });
}

__attribute__((visibility("default"))) void clab_system_free(clab_system* sys) { delete sys; }

__attribute__((visibility("default"))) clab_status clab_system_dump(const clab_system* sys,
                                                                    char** json_out) {
    if (!sys || !json_out) return fail(CLAB_ERR_ARG, "null argument");
    return guarded([&] { *json_out = dup_string(sys->sys.to_json().dump(2)); });
}

__attribute__((visibility("default"))) clab_status clab_system_validate(const clab_system* sys,
                                                                        char** report_json_out) {
    if (!sys || !report_json_out) return fail(CLAB_ERR_ARG, "null argument");
    return guarded([&] {
        ValidationReport rep = validate_system(sys->sys);
        *report_json_out = dup_string(rep.to_json().dump(2));
    });
}

__attribute__((visibility("default"))) clab_status clab_system_cover(const clab_system* sys,
                                                                     const char* letter, int depth,
                                                                     char** disks_json_out) {
    if (!sys || !letter || !disks_json_out) return fail(CLAB_ERR_ARG, "null argument");
    return guarded([&] {
        int a = sys->sys.letter_index(letter);
        if (a < 0) throw DomainError("unknown letter '" + std::string(letter) + "'");
        auto cover = cover_at_depth(sys->sys, a, depth);
        *disks_json_out = dup_string(cover_to_json(sys->sys, cover).dump(2));
    });
}

__attribute__((visibility("default"))) clab_status clab_system_limit_geometry(
    const clab_system* sys, const char* tail, double tol, int max_depth, char** result_json_out) {
    if (!sys || !tail || !result_json_out) return fail(CLAB_ERR_ARG, "null argument");
    return guarded([&] {
        TailSequence t = TailSequence::parse(tail, sys->sys);
        LimitGeometryApprox k =
            limit_geometry(sys->sys, t, tol, max_depth > 0 ? max_depth : 40);
        json out = k.to_json(sys->sys);
        // Image of the final cover under the embedding, for rendering.
        int render_depth = std::min(k.depth + 4, 9);
        json disks = json::array();
        try {
            for (const auto& cd : cover_at_depth(sys->sys, k.letter, render_depth, 50000)) {
                Disk img = k.composed.enclose_image(cd.disk);
                disks.push_back(disk_to_json(img));
            }
        } catch (const CapError&) {
            // rendering is best-effort
        }
        out["image_disks"] = disks;
        *result_json_out = dup_string(out.dump(2));
    });
}

__attribute__((visibility("default"))) clab_status clab_intersection_test(const char* job_json,
                                                                          char** verdict_json_out) {
    if (!job_json || !verdict_json_out) return fail(CLAB_ERR_ARG, "null argument");
    return guarded([&] {
        json job = json::parse(job_json);
        ConfiguredSet a = configured_from_doc(job.at("a"));
        ConfiguredSet b = configured_from_doc(job.at("b"));
        int max_depth = job.value("max_depth", 10);
        double margin = job.value("margin", 0.05);
        IntersectionVerdict v = intersection_test(a, b, max_depth, margin);
        json out = v.to_json();
        if (job.value("emit_covers", false)) {
            int d = std::min(max_depth, v.depth);
            out["covers"] = json{{"a", cover_to_json(a.system, image_cover(a, d))},
                                 {"b", cover_to_json(b.system, image_cover(b, d))}};
        }
        *verdict_json_out = dup_string(out.dump(2));
    });
}

__attribute__((visibility("default"))) clab_status clab_stable_probe(const char* job_json,
                                                                     char** report_json_out) {
    if (!job_json || !report_json_out) return fail(CLAB_ERR_ARG, "null argument");
    return guarded([&] {
        json job = json::parse(job_json);
        ConfiguredSet a = configured_from_doc(job.at("a"));
        ConfiguredSet b = configured_from_doc(job.at("b"));
        int max_depth = job.value("max_depth", 6);
        double margin = job.value("margin", 0.05);
        const auto& pj = job.at("perturbation");
        PerturbationSpec spec;
        spec.eps_branch = pj.value("eps_branch", 0.0);
        spec.eps_config = pj.value("eps_config", 0.0);
        spec.samples = pj.at("samples").get<int>();
        spec.seed = pj.value("seed", 0ull);
        ProbeReport rep = stable_intersection_probe(a, b, spec, max_depth, margin);
        *report_json_out = dup_string(rep.to_json().dump(2));
    });
}

__attribute__((visibility("default"))) clab_status clab_kronecker_genericity(
    double z_re, double z_im, double w_re, double w_im, double tol, int coeff_bound,
    char** report_json_out) {
    if (!report_json_out) return fail(CLAB_ERR_ARG, "null argument");
    return guarded([&] {
        GenericityReport rep = genericity_check(cplx(z_re, z_im), cplx(w_re, w_im),
                                                tol > 0 ? tol : 1e-9,
                                                coeff_bound > 0 ? coeff_bound : 50);
        *report_json_out = dup_string(rep.to_json().dump(2));
    });
}

__attribute__((visibility("default"))) clab_status clab_kronecker_pairs(const char* job_json,
                                                                        char** result_json_out) {
    if (!job_json || !result_json_out) return fail(CLAB_ERR_ARG, "null argument");
    return guarded([&] {
        json job = json::parse(job_json);
        cplx z = cplx_from_json(job.at("z"));
        cplx w = cplx_from_json(job.at("w"));
        cplx v = cplx_from_json(job.at("v"));
        double delta = job.at("delta").get<double>();
        int m_max = job.at("m_max").get<int>();
        int n_max = job.value("n_max", -1);
        PairSearch search = find_pairs(z, w, v, delta, m_max, n_max);
        json pairs = json::array();
        for (const auto& p : search.pairs) {
            pairs.push_back(json{{"m", p.m},
                                 {"n", p.n},
                                 {"value", cplx_to_json(p.value)},
                                 {"error", p.error}});
        }
        json out{{"pairs", pairs}};
        if (search.best_miss) {
            out["best_miss"] = json{{"m", search.best_miss->m},
                                    {"n", search.best_miss->n},
                                    {"value", cplx_to_json(search.best_miss->value)},
                                    {"error", search.best_miss->error}};
        }
        if (search.pairs.size() >= 3) out["gap"] = recurrence_gap(search).to_json();
        *result_json_out = dup_string(out.dump(2));
    });
}

__attribute__((visibility("default"))) clab_status clab_model_parse(const char* json_text,
                                                                    clab_model** out) {
    if (!json_text || !out) return fail(CLAB_ERR_ARG, "null argument");
    return guarded([&] {
        json doc = json::parse(json_text);
        *out = new clab_model{make_generic_family(doc)};
    });
}

__attribute__((visibility("default"))) void clab_model_free(clab_model* model) { delete model; }

__attribute__((visibility("default"))) clab_status clab_model_dump(const clab_model* model,
                                                                   char** json_out) {
    if (!model || !json_out) return fail(CLAB_ERR_ARG, "null argument");
    return guarded([&] { *json_out = dup_string(model->model.to_json().dump(2)); });
}

__attribute__((visibility("default"))) clab_status clab_model_summary(const clab_model* model,
                                                                      char** json_out) {
    if (!model || !json_out) return fail(CLAB_ERR_ARG, "null argument");
    return guarded([&] {
        const UnfoldingModel& m = model->model;
        auto zc = m.resolve_zeta();
        json out{{"lambda_u", cplx_to_json(m.lambda_u)},
                 {"lambda_s", cplx_to_json(m.lambda_s)},
                 {"dh_u0", cplx_to_json(m.dh_u0)},
                 {"dh_s0", cplx_to_json(m.dh_s0)},
                 {"dcomp", cplx_to_json(m.dcomp)},
                 {"b_tan", cplx_to_json(m.chart.b_tan())},
                 {"validity_radius", m.validity_radius},
                 {"zeta_branch", zc.generic ? "generic" : "resonant"},
                 {"zeta", cplx_to_json(zc.zeta)},
                 {"pair_target", cplx_to_json(zc.target)},
                 {"eigenvalue_genericity", genericity_check(m.lambda_u, m.lambda_s).to_json()}};
        *json_out = dup_string(out.dump(2));
    });
}

__attribute__((visibility("default"))) clab_status clab_model_tangency_disk(
    const clab_model* model, double mu_re, double mu_im, int w_count, double w_radius,
    char** json_out) {
    if (!model || !json_out) return fail(CLAB_ERR_ARG, "null argument");
    return guarded([&] {
        TangencyDiskResult r = tangency_disk(model->model, cplx(mu_re, mu_im),
                                             w_count > 0 ? w_count : 64,
                                             w_radius > 0 ? w_radius : 0.5);
        *json_out = dup_string(r.to_json().dump(2));
    });
}

__attribute__((visibility("default"))) clab_status clab_model_renormalized_pair(
    const clab_model* model, double mu_re, double mu_im, int m, int n, int with_residuals,
    char** json_out) {
    if (!model || !json_out) return fail(CLAB_ERR_ARG, "null argument");
    return guarded([&] {
        RenormalizedPair rp =
            renormalized_pair(model->model, cplx(mu_re, mu_im), m, n, with_residuals != 0);
        *json_out = dup_string(rp.to_json().dump(2));
    });
}

__attribute__((visibility("default"))) clab_status clab_model_select_parameters(
    const clab_model* model, double nu_re, double nu_im, double delta, int m, char** json_out) {
    if (!model || !json_out) return fail(CLAB_ERR_ARG, "null argument");
    return guarded([&] {
        ParamRegion reg = select_parameters(model->model, cplx(nu_re, nu_im), delta, m);
        *json_out = dup_string(reg.to_json().dump(2));
    });
}

__attribute__((visibility("default"))) clab_status clab_model_scan(const clab_model* model,
                                                                   const char* params_json,
                                                                   char** json_out) {
    if (!model || !params_json || !json_out) return fail(CLAB_ERR_ARG, "null argument");
    return guarded([&] {
        json params = json::parse(params_json);
        ScanRow row = scan_tangency_set(model->model, params.at("eps").get<double>(),
                                        params.at("grid").get<int>(), params.value("depth", 6),
                                        params.value("margin", 0.05));
        *json_out = dup_string(row.to_json(params.value("with_mask", false)).dump(2));
    });
}

__attribute__((visibility("default"))) clab_status clab_model_density_bound(
    const clab_model* model, const char* params_json, char** json_out) {
    if (!model || !params_json || !json_out) return fail(CLAB_ERR_ARG, "null argument");
    return guarded([&] {
        json params = json::parse(params_json);
        const UnfoldingModel& m = model->model;
        auto zc = m.resolve_zeta();
        cplx nu = cplx_from_json(params.at("nu"));
        double delta = params.at("delta").get<double>();
        int m_max = params.at("m_max").get<int>();
        int n_max = params.value("n_max", -1);
        double eps = params.at("eps").get<double>();
        PairSearch pairs = find_pairs(m.lambda_u, m.lambda_s, zc.target, delta, m_max, n_max);
        json out{{"pair_target", cplx_to_json(zc.target)},
                 {"zeta_branch", zc.generic ? "generic" : "resonant"},
                 {"pairs_found", pairs.pairs.size()}};
        if (pairs.pairs.empty()) {
            out["bound"] = 0.0;
            if (pairs.best_miss) out["best_miss_error"] = pairs.best_miss->error;
        } else {
            DensityBound b = density_lower_bound(m, nu, delta, pairs, eps);
            out.update(b.to_json());
            if (pairs.pairs.size() >= 3) {
                RecurrenceGap gap = recurrence_gap(pairs);
                out["gap"] = gap.to_json();
                out["geometric_ladder"] =
                    geometric_ladder_sum(std::abs(m.lambda_u), gap.m_first, gap.max_gap);
            }
        }
        *json_out = dup_string(out.dump(2));
    });
}

}  // extern "C"
