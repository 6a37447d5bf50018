#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mrpca/volume.hpp"

namespace mrpca {

struct ConfusionCounts {
    std::int64_t tp = 0;
    std::int64_t tn = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;

    std::int64_t total() const { return tp + tn + fp + fn; }
};

// Pixel counts of `mask` against `truth` (both binary: nonzero = foreground).
// Pixels where `ignore` is nonzero are excluded; pass nullptr for none.
ConfusionCounts confusion(const Mat& mask, const Mat& truth, const Mat* ignore = nullptr);

// Recall, precision and F-measure. A metric whose denominator vanishes is
// reported as 0 with its defined-flag cleared, never as NaN.
struct FMeasure {
    double re = 0.0, pre = 0.0, f1 = 0.0;
    bool re_defined = false, pre_defined = false, f1_defined = false;
};
FMeasure f_measure(const ConfusionCounts& c);

// 10 log10(1/MSE) on [0,1]-normalized data (MAX = 1). Identical inputs give
// the +infinity sentinel.
double psnr(const Mat& recovered, const Mat& truth);

struct RocPoint {
    double threshold, fpr, tpr;
};

// Sweeps the 101 thresholds 0.00, 0.01, ..., 1.00 with prediction W >= t and
// returns one (fpr, tpr) point per threshold plus the trapezoidal AUC.
// Throws when truth is a single class.
struct RocCurve {
    std::vector<RocPoint> points;
    double auc = 0.0;
};
RocCurve roc_curve(const Mat& w, const Mat& truth, const Mat* ignore = nullptr);

// Histogram of mask values over [0,1].
std::vector<std::int64_t> value_histogram(const Mat& w, int bins = 50);

// Fraction of entries within `tol` of 0 or 1.
double binarity_fraction(const Mat& w, double tol = 0.05);

// Signal-to-noise ratio of an observed volume against its clean version:
// 10 log10(||clean||^2 / ||observed - clean||^2).
double measure_snr_db(const Mat& observed, const Mat& clean);

struct EvalReport {
    FMeasure fm;
    ConfusionCounts counts;
    double psnr_db = 0.0;
    bool has_psnr = false;
    RocCurve roc;
    bool has_roc = false;
    std::vector<std::int64_t> histogram;

    // key=value text form and one-row CSV form.
    void write_text(const std::string& path) const;
    void write_csv(const std::string& path) const;
    void write_roc_csv(const std::string& path) const;
    void write_histogram_csv(const std::string& path) const;
};

}  // namespace mrpca
