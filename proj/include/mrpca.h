/* mrpca — sparse/low-rank video decomposition under an overlaying model.
 *
 * C interface to the solver library: opaque handles, integer status codes,
 * no exceptions across the boundary. All volumes are grayscale double
 * buffers in [0,1], stored as an (m*n) x k column-major matrix whose column
 * t is frame t vectorized column-major (row index fastest).
 *
 * Every function that can fail returns mrpca_status; on failure
 * mrpca_last_error() describes the problem (thread-local).
 */
#ifndef MRPCA_H
#define MRPCA_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef int64_t mrpca_index;

typedef enum mrpca_status {
    MRPCA_OK = 0,
    MRPCA_ERR_INVALID_ARG = 1,
    MRPCA_ERR_IO = 2,
    MRPCA_ERR_PARSE = 3,
    MRPCA_ERR_INTERNAL = 4
} mrpca_status;

const char* mrpca_version(void);
/* Message for the most recent failure on this thread; never NULL. */
const char* mrpca_last_error(void);
void mrpca_string_free(char* s);

/* ---- volumes ---------------------------------------------------------- */

typedef struct mrpca_volume mrpca_volume;

/* data may be NULL for a zero volume; otherwise m*n*k doubles in storage
 * order. The volume owns a copy. */
mrpca_status mrpca_volume_create(mrpca_index m, mrpca_index n, mrpca_index k,
                                 const double* data, mrpca_volume** out);
void mrpca_volume_free(mrpca_volume* v);
void mrpca_volume_dims(const mrpca_volume* v, mrpca_index* m, mrpca_index* n, mrpca_index* k);
const double* mrpca_volume_data(const mrpca_volume* v);

/* path is either a .raw volume file or a directory of PGM frames. */
mrpca_status mrpca_volume_load(const char* path, mrpca_volume** out);
mrpca_status mrpca_volume_save_raw(const mrpca_volume* v, const char* path);
/* Writes <prefix>_0000.pgm ... plus a <prefix>_frames.txt sidecar. */
mrpca_status mrpca_volume_save_pgm_frames(const mrpca_volume* v, const char* dir,
                                          const char* prefix);

/* ---- synthetic scenes -------------------------------------------------- */

typedef struct mrpca_scene mrpca_scene;

mrpca_status mrpca_scene_generate_file(const char* spec_path, mrpca_scene** out);
mrpca_status mrpca_scene_generate_text(const char* spec_text, mrpca_scene** out);
void mrpca_scene_free(mrpca_scene* s);

/* Borrowed views, valid until mrpca_scene_free. */
const mrpca_volume* mrpca_scene_observed(const mrpca_scene* s);
const mrpca_volume* mrpca_scene_clean(const mrpca_scene* s);
const mrpca_volume* mrpca_scene_background(const mrpca_scene* s);
const mrpca_volume* mrpca_scene_mask(const mrpca_scene* s);
const mrpca_volume* mrpca_scene_perturbation(const mrpca_scene* s);
/* Realized SNR in dB; NaN for a noiseless scene. */
double mrpca_scene_snr_db(const mrpca_scene* s);
/* Resolved spec as key=value text; free with mrpca_string_free. */
mrpca_status mrpca_scene_spec_text(const mrpca_scene* s, char** out);

/* ---- solvers ----------------------------------------------------------- */

typedef struct mrpca_masked_config {
    double lambda_w;
    double rho_x;
    double tau_l, tau_w;
    mrpca_index max_iters;
    double tol_gap, tol_change;
} mrpca_masked_config;
void mrpca_masked_config_init(mrpca_masked_config* cfg);

typedef struct mrpca_extended_config {
    double lambda_w, lambda_z, lambda_e;
    double rho_x, rho_z;
    double tau_l, tau_w;
    mrpca_index max_iters;
    double tol_gap, tol_change;
} mrpca_extended_config;
void mrpca_extended_config_init(mrpca_extended_config* cfg);

typedef struct mrpca_pcp_config {
    double lambda_s; /* <= 0 selects 1/sqrt(max(mn,k)) */
    double mu;       /* <= 0 selects 1.25/sigma_max(X) */
    double mu_growth;
    mrpca_index max_iters;
    double tol;
} mrpca_pcp_config;
void mrpca_pcp_config_init(mrpca_pcp_config* cfg);

typedef struct mrpca_result mrpca_result;

mrpca_status mrpca_solve_masked(const mrpca_volume* x, const mrpca_masked_config* cfg,
                                mrpca_result** out);
mrpca_status mrpca_solve_extended(const mrpca_volume* x, const mrpca_extended_config* cfg,
                                  mrpca_result** out);
mrpca_status mrpca_solve_pcp(const mrpca_volume* x, const mrpca_pcp_config* cfg,
                             mrpca_result** out);
void mrpca_result_free(mrpca_result* r);

/* Non-convergence is not an error status: outputs are still valid, the flag
 * reports it. */
int mrpca_result_converged(const mrpca_result* r);
mrpca_index mrpca_result_iterations(const mrpca_result* r);
double mrpca_result_final_gap(const mrpca_result* r);
/* Borrowed views; NULL when the solver does not produce the component
 * (mask for pcp, sparse for masked). */
const mrpca_volume* mrpca_result_low_rank(const mrpca_result* r);
const mrpca_volume* mrpca_result_mask(const mrpca_result* r);
const mrpca_volume* mrpca_result_sparse(const mrpca_result* r);
mrpca_status mrpca_result_write_trace_csv(const mrpca_result* r, const char* path);

/* ---- mask extraction for the pcp baseline ------------------------------ */

mrpca_status mrpca_otsu_threshold(const double* values, mrpca_index count, double* out);
/* use_otsu != 0 ignores fixed_threshold. threshold_out may be NULL. */
mrpca_status mrpca_mask_from_sparse(const mrpca_volume* s, int use_otsu, double fixed_threshold,
                                    double* threshold_out, mrpca_volume** out);

/* ---- evaluation --------------------------------------------------------- */

typedef struct mrpca_eval_report {
    double re, pre, f1;
    int re_defined, pre_defined, f1_defined;
    mrpca_index tp, tn, fp, fn;
} mrpca_eval_report;

/* Binarizes the mask at `threshold` and scores it against binary truth.
 * ignore may be NULL; nonzero ignore pixels are excluded. */
mrpca_status mrpca_eval_mask(const mrpca_volume* mask, const mrpca_volume* truth,
                             const mrpca_volume* ignore, double threshold,
                             mrpca_eval_report* out);
mrpca_status mrpca_eval_psnr(const mrpca_volume* recovered, const mrpca_volume* truth,
                             double* psnr_db);
/* 101-threshold ROC sweep; csv_path may be NULL to skip the file. */
mrpca_status mrpca_eval_roc(const mrpca_volume* w, const mrpca_volume* truth,
                            const mrpca_volume* ignore, const char* csv_path, double* auc);
/* counts must hold nbins entries. */
mrpca_status mrpca_eval_histogram(const mrpca_volume* w, mrpca_index nbins, double* counts);
mrpca_status mrpca_eval_binarity(const mrpca_volume* w, double tol, double* fraction);
mrpca_status mrpca_eval_snr(const mrpca_volume* observed, const mrpca_volume* clean,
                            double* snr_db);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MRPCA_H */
