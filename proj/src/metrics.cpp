#include "mrpca/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "mrpca/errors.hpp"

namespace mrpca {

ConfusionCounts confusion(const Mat& mask, const Mat& truth, const Mat* ignore) {
    require_same_shape(mask, truth, "confusion mask vs truth");
    if (ignore) require_same_shape(mask, *ignore, "confusion ignore mask");

    ConfusionCounts c;
    for (Eigen::Index i = 0; i < mask.size(); ++i) {
        if (ignore && (*ignore)(i) != 0.0) continue;
        const bool pred = mask(i) != 0.0;
        const bool pos = truth(i) != 0.0;
        if (pred && pos)
            ++c.tp;
        else if (pred && !pos)
            ++c.fp;
        else if (!pred && pos)
            ++c.fn;
        else
            ++c.tn;
    }
    return c;
}

FMeasure f_measure(const ConfusionCounts& c) {
    FMeasure m;
    if (c.tp + c.fn > 0) {
        m.re = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
        m.re_defined = true;
    }
    if (c.tp + c.fp > 0) {
        m.pre = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
        m.pre_defined = true;
    }
    if (m.re_defined && m.pre_defined && m.re + m.pre > 0) {
        m.f1 = 2.0 * m.pre * m.re / (m.pre + m.re);
        m.f1_defined = true;
    }
    return m;
}

double psnr(const Mat& recovered, const Mat& truth) {
    require_same_shape(recovered, truth, "psnr inputs");
    const double mse = (recovered - truth).squaredNorm() / static_cast<double>(recovered.size());
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(1.0 / mse);
}

RocCurve roc_curve(const Mat& w, const Mat& truth, const Mat* ignore) {
    require_same_shape(w, truth, "roc mask vs truth");
    if (ignore) require_same_shape(w, *ignore, "roc ignore mask");

    std::int64_t pos = 0, neg = 0;
    for (Eigen::Index i = 0; i < truth.size(); ++i) {
        if (ignore && (*ignore)(i) != 0.0) continue;
        (truth(i) != 0.0 ? pos : neg)++;
    }
    if (pos == 0 || neg == 0)
        throw std::invalid_argument("roc: degenerate truth (single class)");

    RocCurve out;
    out.points.reserve(101);
    for (int s = 0; s <= 100; ++s) {
        const double thr = static_cast<double>(s) / 100.0;
        std::int64_t tp = 0, fp = 0;
        for (Eigen::Index i = 0; i < w.size(); ++i) {
            if (ignore && (*ignore)(i) != 0.0) continue;
            if (w(i) >= thr) (truth(i) != 0.0 ? tp : fp)++;
        }
        out.points.push_back({thr, static_cast<double>(fp) / static_cast<double>(neg),
                              static_cast<double>(tp) / static_cast<double>(pos)});
    }

    // Trapezoid over the curve sorted by fpr, anchored at (0,0); the sweep
    // itself contributes (1,1) at threshold 0.
    std::vector<std::pair<double, double>> pts;
    pts.reserve(out.points.size() + 1);
    pts.emplace_back(0.0, 0.0);
    for (const auto& p : out.points) pts.emplace_back(p.fpr, p.tpr);
    std::sort(pts.begin(), pts.end());
    double auc = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i)
        auc += 0.5 * (pts[i].first - pts[i - 1].first) * (pts[i].second + pts[i - 1].second);
    out.auc = auc;
    return out;
}

std::vector<std::int64_t> value_histogram(const Mat& w, int bins) {
    if (bins <= 0) throw std::invalid_argument("histogram: bins must be positive");
    std::vector<std::int64_t> h(static_cast<std::size_t>(bins), 0);
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        int b = static_cast<int>(w(i) * bins);
        b = std::clamp(b, 0, bins - 1);
        ++h[static_cast<std::size_t>(b)];
    }
    return h;
}

double binarity_fraction(const Mat& w, double tol) {
    if (w.size() == 0) return 0.0;
    std::int64_t near = 0;
    for (Eigen::Index i = 0; i < w.size(); ++i)
        if (std::abs(w(i)) <= tol || std::abs(w(i) - 1.0) <= tol) ++near;
    return static_cast<double>(near) / static_cast<double>(w.size());
}

double measure_snr_db(const Mat& observed, const Mat& clean) {
    require_same_shape(observed, clean, "snr inputs");
    const double noise = (observed - clean).squaredNorm();
    const double signal = clean.squaredNorm();
    if (noise == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(signal / noise);
}

namespace {
std::FILE* open_or_throw(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw IoError("cannot open report file for writing: " + path);
    return f;
}
void fmt_metric(std::FILE* f, const char* name, double v, bool defined) {
    std::fprintf(f, "%s=%.6f\n%s_defined=%d\n", name, v, name, defined ? 1 : 0);
}
}  // namespace

void EvalReport::write_text(const std::string& path) const {
    std::FILE* f = open_or_throw(path);
    fmt_metric(f, "re", fm.re, fm.re_defined);
    fmt_metric(f, "pre", fm.pre, fm.pre_defined);
    fmt_metric(f, "f1", fm.f1, fm.f1_defined);
    std::fprintf(f, "tp=%lld\ntn=%lld\nfp=%lld\nfn=%lld\n",
                 static_cast<long long>(counts.tp), static_cast<long long>(counts.tn),
                 static_cast<long long>(counts.fp), static_cast<long long>(counts.fn));
    if (has_psnr) std::fprintf(f, "psnr_db=%.6f\n", psnr_db);
    if (has_roc) std::fprintf(f, "auc=%.6f\n", roc.auc);
    std::fclose(f);
}

void EvalReport::write_csv(const std::string& path) const {
    std::FILE* f = open_or_throw(path);
    std::fputs("re,pre,f1,tp,tn,fp,fn,psnr_db,auc\n", f);
    std::fprintf(f, "%.6f,%.6f,%.6f,%lld,%lld,%lld,%lld,", fm.re, fm.pre, fm.f1,
                 static_cast<long long>(counts.tp), static_cast<long long>(counts.tn),
                 static_cast<long long>(counts.fp), static_cast<long long>(counts.fn));
    if (has_psnr)
        std::fprintf(f, "%.6f,", psnr_db);
    else
        std::fputs(",", f);
    if (has_roc)
        std::fprintf(f, "%.6f\n", roc.auc);
    else
        std::fputs("\n", f);
    std::fclose(f);
}

void EvalReport::write_roc_csv(const std::string& path) const {
    std::FILE* f = open_or_throw(path);
    std::fputs("fpr,tpr\n", f);
    for (const auto& p : roc.points) std::fprintf(f, "%.9f,%.9f\n", p.fpr, p.tpr);
    std::fclose(f);
}

void EvalReport::write_histogram_csv(const std::string& path) const {
    std::FILE* f = open_or_throw(path);
    std::fputs("bin_lo,bin_hi,count\n", f);
    const double width = 1.0 / static_cast<double>(histogram.size());
    for (std::size_t i = 0; i < histogram.size(); ++i)
        std::fprintf(f, "%.4f,%.4f,%lld\n", i * width, (i + 1) * width,
                     static_cast<long long>(histogram[i]));
    std::fclose(f);
}

}  // namespace mrpca
