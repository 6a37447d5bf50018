#include "mrpca.h"

#include <cstring>
#include <new>
#include <string>

#include "mrpca/errors.hpp"
#include "mrpca/extended_rpca.hpp"
#include "mrpca/frame_io.hpp"
#include "mrpca/masked_rpca.hpp"
#include "mrpca/metrics.hpp"
#include "mrpca/pcp.hpp"
#include "mrpca/synthetic.hpp"

// Opaque handle definitions. The volume handle is also used for borrowed
// views (scene/result components), flagged so mrpca_volume_free on a view is
// a no-op rather than a double free.
struct mrpca_volume {
    mrpca::Volume v;
};

struct mrpca_scene {
    mrpca::Scene scene;
    std::string spec_text;
    mrpca_volume observed, clean, background, mask, perturbation;
};

struct mrpca_result {
    // Exactly one of masked/extended/pcp semantics; unused views stay empty.
    mrpca_volume low_rank, mask, sparse;
    bool has_mask = false, has_sparse = false;
    bool converged = false;
    mrpca_index iterations = 0;
    double final_gap = 0.0;
    mrpca::SolverTrace trace;
};

namespace {

thread_local std::string g_last_error = "";

mrpca_status fail(mrpca_status code, const std::string& message) {
    g_last_error = message;
    return code;
}

// Uniform exception-to-status mapping for every API entry point.
template <typename Fn>
mrpca_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const mrpca::ParseError& e) {
        return fail(MRPCA_ERR_PARSE, e.what());
    } catch (const mrpca::IoError& e) {
        return fail(MRPCA_ERR_IO, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(MRPCA_ERR_INVALID_ARG, e.what());
    } catch (const std::bad_alloc&) {
        return fail(MRPCA_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(MRPCA_ERR_INTERNAL, e.what());
    }
}

mrpca::Dims checked_dims(mrpca_index m, mrpca_index n, mrpca_index k) {
    if (m <= 0 || n <= 0 || k <= 0 || m > (1 << 20) || n > (1 << 20) || k > (1 << 20))
        throw std::invalid_argument("volume dims out of range");
    return mrpca::Dims{static_cast<int>(m), static_cast<int>(n), static_cast<int>(k)};
}

void wrap_view(mrpca_volume& slot, const mrpca::Dims& dims, mrpca::Mat mat) {
    slot.v = mrpca::Volume(dims, std::move(mat));
}

}  // namespace

extern "C" {

const char* mrpca_version(void) { return "0.1.0"; }

const char* mrpca_last_error(void) { return g_last_error.c_str(); }

void mrpca_string_free(char* s) { delete[] s; }

/* ---- volumes ---------------------------------------------------------- */

mrpca_status mrpca_volume_create(mrpca_index m, mrpca_index n, mrpca_index k, const double* data,
                                 mrpca_volume** out) {
    if (!out) return fail(MRPCA_ERR_INVALID_ARG, "out must not be NULL");
    return guarded([&] {
        const mrpca::Dims dims = checked_dims(m, n, k);
        auto* v = new mrpca_volume;
        if (data) {
            mrpca::Mat mat = Eigen::Map<const mrpca::Mat>(data, dims.pixels(), dims.k);
            v->v = mrpca::Volume(dims, std::move(mat));
        } else {
            v->v = mrpca::Volume::zeros(dims);
        }
        *out = v;
        return MRPCA_OK;
    });
}

void mrpca_volume_free(mrpca_volume* v) { delete v; }

void mrpca_volume_dims(const mrpca_volume* v, mrpca_index* m, mrpca_index* n, mrpca_index* k) {
    if (!v) return;
    if (m) *m = v->v.dims().m;
    if (n) *n = v->v.dims().n;
    if (k) *k = v->v.dims().k;
}

const double* mrpca_volume_data(const mrpca_volume* v) {
    return v ? v->v.matrix().data() : nullptr;
}

mrpca_status mrpca_volume_load(const char* path, mrpca_volume** out) {
    if (!(path && out)) return fail(MRPCA_ERR_INVALID_ARG, "path and out must not be NULL");
    return guarded([&] {
        auto* v = new mrpca_volume;
        v->v = mrpca::load_volume_any(path);
        *out = v;
        return MRPCA_OK;
    });
}

mrpca_status mrpca_volume_save_raw(const mrpca_volume* v, const char* path) {
    if (!(v && path)) return fail(MRPCA_ERR_INVALID_ARG, "volume and path must not be NULL");
    return guarded([&] {
        mrpca::save_raw(v->v, path);
        return MRPCA_OK;
    });
}

mrpca_status mrpca_volume_save_pgm_frames(const mrpca_volume* v, const char* dir,
                                          const char* prefix) {
    if (!(v && dir && prefix))
        return fail(MRPCA_ERR_INVALID_ARG, "volume, dir and prefix must not be NULL");
    return guarded([&] {
        mrpca::save_pgm_frames(v->v, dir, prefix);
        return MRPCA_OK;
    });
}

/* ---- scenes ------------------------------------------------------------ */

static mrpca_status scene_from_spec(const mrpca::SceneSpec& spec, mrpca_scene** out) {
    auto* s = new mrpca_scene;
    s->scene = mrpca::generate_scene(spec);
    s->spec_text = spec.format();
    const mrpca::Dims dims = s->scene.dims;
    wrap_view(s->observed, dims, s->scene.x);
    wrap_view(s->clean, dims, s->scene.x_clean);
    wrap_view(s->background, dims, s->scene.l_true);
    wrap_view(s->mask, dims, s->scene.w_true);
    wrap_view(s->perturbation, dims, s->scene.e_true);
    *out = s;
    return MRPCA_OK;
}

mrpca_status mrpca_scene_generate_file(const char* spec_path, mrpca_scene** out) {
    if (!(spec_path && out))
        return fail(MRPCA_ERR_INVALID_ARG, "spec_path and out must not be NULL");
    return guarded([&] { return scene_from_spec(mrpca::SceneSpec::parse_file(spec_path), out); });
}

mrpca_status mrpca_scene_generate_text(const char* spec_text, mrpca_scene** out) {
    if (!(spec_text && out))
        return fail(MRPCA_ERR_INVALID_ARG, "spec_text and out must not be NULL");
    return guarded([&] { return scene_from_spec(mrpca::SceneSpec::parse(spec_text), out); });
}

void mrpca_scene_free(mrpca_scene* s) { delete s; }

const mrpca_volume* mrpca_scene_observed(const mrpca_scene* s) {
    return s ? &s->observed : nullptr;
}
const mrpca_volume* mrpca_scene_clean(const mrpca_scene* s) { return s ? &s->clean : nullptr; }
const mrpca_volume* mrpca_scene_background(const mrpca_scene* s) {
    return s ? &s->background : nullptr;
}
const mrpca_volume* mrpca_scene_mask(const mrpca_scene* s) { return s ? &s->mask : nullptr; }
const mrpca_volume* mrpca_scene_perturbation(const mrpca_scene* s) {
    return s ? &s->perturbation : nullptr;
}

double mrpca_scene_snr_db(const mrpca_scene* s) {
    return s ? s->scene.snr_db : std::numeric_limits<double>::quiet_NaN();
}

mrpca_status mrpca_scene_spec_text(const mrpca_scene* s, char** out) {
    if (!(s && out)) return fail(MRPCA_ERR_INVALID_ARG, "scene and out must not be NULL");
    return guarded([&] {
        char* buf = new char[s->spec_text.size() + 1];
        std::memcpy(buf, s->spec_text.c_str(), s->spec_text.size() + 1);
        *out = buf;
        return MRPCA_OK;
    });
}

/* ---- solvers ------------------------------------------------------------ */

void mrpca_masked_config_init(mrpca_masked_config* cfg) {
    if (!cfg) return;
    const mrpca::MaskedConfig d;
    *cfg = {d.lambda_w, d.rho_x, d.tau_l, d.tau_w, d.max_iters, d.tol_gap, d.tol_change};
}

void mrpca_extended_config_init(mrpca_extended_config* cfg) {
    if (!cfg) return;
    const mrpca::ExtendedConfig d;
    *cfg = {d.lambda_w, d.lambda_z, d.lambda_e, d.rho_x,   d.rho_z,
            d.tau_l,    d.tau_w,    d.max_iters, d.tol_gap, d.tol_change};
}

void mrpca_pcp_config_init(mrpca_pcp_config* cfg) {
    if (!cfg) return;
    const mrpca::PcpConfig d;
    *cfg = {d.lambda_s, d.mu, d.mu_growth, d.max_iters, d.tol};
}

mrpca_status mrpca_solve_masked(const mrpca_volume* x, const mrpca_masked_config* cfg,
                                mrpca_result** out) {
    if (!(x && cfg && out))
        return fail(MRPCA_ERR_INVALID_ARG, "x, cfg and out must not be NULL");
    return guarded([&] {
        mrpca::MaskedConfig c;
        c.lambda_w = cfg->lambda_w;
        c.rho_x = cfg->rho_x;
        c.tau_l = cfg->tau_l;
        c.tau_w = cfg->tau_w;
        c.max_iters = static_cast<int>(cfg->max_iters);
        c.tol_gap = cfg->tol_gap;
        c.tol_change = cfg->tol_change;

        mrpca::MaskedResult r = mrpca::solve_masked(x->v.matrix(), c);
        auto* res = new mrpca_result;
        wrap_view(res->low_rank, x->v.dims(), std::move(r.low_rank));
        wrap_view(res->mask, x->v.dims(), std::move(r.mask));
        res->has_mask = true;
        res->converged = r.converged;
        res->iterations = r.iterations;
        res->final_gap = r.final_gap_rel;
        res->trace = std::move(r.trace);
        *out = res;
        return MRPCA_OK;
    });
}

mrpca_status mrpca_solve_extended(const mrpca_volume* x, const mrpca_extended_config* cfg,
                                  mrpca_result** out) {
    if (!(x && cfg && out))
        return fail(MRPCA_ERR_INVALID_ARG, "x, cfg and out must not be NULL");
    return guarded([&] {
        mrpca::ExtendedConfig c;
        c.lambda_w = cfg->lambda_w;
        c.lambda_z = cfg->lambda_z;
        c.lambda_e = cfg->lambda_e;
        c.rho_x = cfg->rho_x;
        c.rho_z = cfg->rho_z;
        c.tau_l = cfg->tau_l;
        c.tau_w = cfg->tau_w;
        c.max_iters = static_cast<int>(cfg->max_iters);
        c.tol_gap = cfg->tol_gap;
        c.tol_change = cfg->tol_change;

        mrpca::ExtendedResult r = mrpca::solve_extended(x->v.matrix(), x->v.dims(), c);
        auto* res = new mrpca_result;
        wrap_view(res->low_rank, x->v.dims(), std::move(r.low_rank));
        wrap_view(res->mask, x->v.dims(), std::move(r.mask));
        wrap_view(res->sparse, x->v.dims(), std::move(r.perturbation));
        res->has_mask = true;
        res->has_sparse = true;
        res->converged = r.converged;
        res->iterations = r.iterations;
        res->final_gap = std::max(r.final_gap_rel, r.final_gap_z_rel);
        res->trace = std::move(r.trace);
        *out = res;
        return MRPCA_OK;
    });
}

mrpca_status mrpca_solve_pcp(const mrpca_volume* x, const mrpca_pcp_config* cfg,
                             mrpca_result** out) {
    if (!(x && cfg && out))
        return fail(MRPCA_ERR_INVALID_ARG, "x, cfg and out must not be NULL");
    return guarded([&] {
        mrpca::PcpConfig c;
        c.lambda_s = cfg->lambda_s;
        c.mu = cfg->mu;
        c.mu_growth = cfg->mu_growth;
        c.max_iters = static_cast<int>(cfg->max_iters);
        c.tol = cfg->tol;

        mrpca::PcpResult r = mrpca::solve_pcp(x->v.matrix(), c);
        auto* res = new mrpca_result;
        wrap_view(res->low_rank, x->v.dims(), std::move(r.low_rank));
        wrap_view(res->sparse, x->v.dims(), std::move(r.sparse));
        res->has_sparse = true;
        res->converged = r.converged;
        res->iterations = r.iterations;
        res->final_gap = r.final_residual_rel;
        res->trace = std::move(r.trace);
        *out = res;
        return MRPCA_OK;
    });
}

void mrpca_result_free(mrpca_result* r) { delete r; }

int mrpca_result_converged(const mrpca_result* r) { return r && r->converged ? 1 : 0; }

mrpca_index mrpca_result_iterations(const mrpca_result* r) { return r ? r->iterations : 0; }

double mrpca_result_final_gap(const mrpca_result* r) { return r ? r->final_gap : 0.0; }

const mrpca_volume* mrpca_result_low_rank(const mrpca_result* r) {
    return r ? &r->low_rank : nullptr;
}

const mrpca_volume* mrpca_result_mask(const mrpca_result* r) {
    return (r && r->has_mask) ? &r->mask : nullptr;
}

const mrpca_volume* mrpca_result_sparse(const mrpca_result* r) {
    return (r && r->has_sparse) ? &r->sparse : nullptr;
}

mrpca_status mrpca_result_write_trace_csv(const mrpca_result* r, const char* path) {
    if (!(r && path)) return fail(MRPCA_ERR_INVALID_ARG, "result and path must not be NULL");
    return guarded([&] {
        r->trace.write_csv(path);
        return MRPCA_OK;
    });
}

/* ---- mask extraction ----------------------------------------------------- */

mrpca_status mrpca_otsu_threshold(const double* values, mrpca_index count, double* out) {
    if (!(values && out && count > 0))
        return fail(MRPCA_ERR_INVALID_ARG, "values/out must not be NULL, count > 0");
    return guarded([&] {
        std::vector<double> vals(values, values + count);
        *out = mrpca::otsu_threshold(vals);
        return MRPCA_OK;
    });
}

mrpca_status mrpca_mask_from_sparse(const mrpca_volume* s, int use_otsu, double fixed_threshold,
                                    double* threshold_out, mrpca_volume** out) {
    if (!(s && out))
        return fail(MRPCA_ERR_INVALID_ARG, "sparse volume and out must not be NULL");
    return guarded([&] {
        mrpca::MaskThresholdRule rule;
        rule.use_otsu = use_otsu != 0;
        rule.fixed = fixed_threshold;
        auto* v = new mrpca_volume;
        v->v = mrpca::Volume(s->v.dims(),
                             mrpca::mask_from_sparse(s->v.matrix(), rule, threshold_out));
        *out = v;
        return MRPCA_OK;
    });
}

/* ---- evaluation ----------------------------------------------------------- */

mrpca_status mrpca_eval_mask(const mrpca_volume* mask, const mrpca_volume* truth,
                             const mrpca_volume* ignore, double threshold,
                             mrpca_eval_report* out) {
    if (!(mask && truth && out))
        return fail(MRPCA_ERR_INVALID_ARG, "mask, truth and out must not be NULL");
    return guarded([&] {
        const mrpca::Mat binary = (mask->v.matrix().array() > threshold).cast<double>();
        const mrpca::Mat* ig = ignore ? &ignore->v.matrix() : nullptr;
        const mrpca::ConfusionCounts c = mrpca::confusion(binary, truth->v.matrix(), ig);
        const mrpca::FMeasure fm = mrpca::f_measure(c);
        *out = {fm.re,          fm.pre,          fm.f1,  fm.re_defined, fm.pre_defined,
                fm.f1_defined,  c.tp,            c.tn,   c.fp,          c.fn};
        return MRPCA_OK;
    });
}

mrpca_status mrpca_eval_psnr(const mrpca_volume* recovered, const mrpca_volume* truth,
                             double* psnr_db) {
    if (!(recovered && truth && psnr_db))
        return fail(MRPCA_ERR_INVALID_ARG, "recovered, truth and psnr_db must not be NULL");
    return guarded([&] {
        *psnr_db = mrpca::psnr(recovered->v.matrix(), truth->v.matrix());
        return MRPCA_OK;
    });
}

mrpca_status mrpca_eval_roc(const mrpca_volume* w, const mrpca_volume* truth,
                            const mrpca_volume* ignore, const char* csv_path, double* auc) {
    if (!(w && truth)) return fail(MRPCA_ERR_INVALID_ARG, "w and truth must not be NULL");
    return guarded([&] {
        const mrpca::Mat* ig = ignore ? &ignore->v.matrix() : nullptr;
        const mrpca::RocCurve curve = mrpca::roc_curve(w->v.matrix(), truth->v.matrix(), ig);
        if (csv_path) {
            mrpca::EvalReport rep;
            rep.roc = curve;
            rep.has_roc = true;
            rep.write_roc_csv(csv_path);
        }
        if (auc) *auc = curve.auc;
        return MRPCA_OK;
    });
}

mrpca_status mrpca_eval_histogram(const mrpca_volume* w, mrpca_index nbins, double* counts) {
    if (!(w && counts && nbins > 0))
        return fail(MRPCA_ERR_INVALID_ARG, "w/counts must not be NULL, nbins > 0");
    return guarded([&] {
        const auto h = mrpca::value_histogram(w->v.matrix(), static_cast<int>(nbins));
        for (std::size_t i = 0; i < h.size(); ++i) counts[i] = static_cast<double>(h[i]);
        return MRPCA_OK;
    });
}

mrpca_status mrpca_eval_binarity(const mrpca_volume* w, double tol, double* fraction) {
    if (!(w && fraction)) return fail(MRPCA_ERR_INVALID_ARG, "w and fraction must not be NULL");
    return guarded([&] {
        *fraction = mrpca::binarity_fraction(w->v.matrix(), tol);
        return MRPCA_OK;
    });
}

mrpca_status mrpca_eval_snr(const mrpca_volume* observed, const mrpca_volume* clean,
                            double* snr_db) {
    if (!(observed && clean && snr_db))
        return fail(MRPCA_ERR_INVALID_ARG, "observed, clean and snr_db must not be NULL");
    return guarded([&] {
        *snr_db = mrpca::measure_snr_db(observed->v.matrix(), clean->v.matrix());
        return MRPCA_OK;
    });
}

} /* extern "C" */
