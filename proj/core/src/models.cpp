#include "tpictm/models.hpp"

#include <stdexcept>

namespace tpictm {

namespace {

ScalarField extract_channel(const ImageGrid& f, int ch) {
    ScalarField out(f.rows, f.cols);
    for (int r = 0; r < f.rows; ++r)
        for (int c = 0; c < f.cols; ++c) out.at(r, c) = f.at(r, c, ch);
    return out;
}

void check_same_shape(const BinaryMask& u, const ImageGrid& f) {
    if (u.rows != f.rows || u.cols != f.cols)
        throw std::invalid_argument("mask and image shapes differ");
}

}  // namespace

std::vector<ScalarField> smooth_channels(const ImageGrid& f, const HeatMultiplier& mult) {
    std::vector<ScalarField> out;
    out.reserve(f.channels);
    for (int ch = 0; ch < f.channels; ++ch) out.push_back(convolve(extract_channel(f, ch), mult));
    return out;
}

CvState cv_update(const BinaryMask& u, const ImageGrid& f, double tau1) {
    check_same_shape(u, f);
    const HeatMultiplier mult = build_multiplier(tau1, f.rows, f.cols, f.spacing);
    return cv_update_presmoothed(u, smooth_channels(f, mult));
}

CvState cv_update_presmoothed(const BinaryMask& u, const std::vector<ScalarField>& smoothed_f) {
    if (smoothed_f.empty()) throw std::invalid_argument("no image channels");
    if (smoothed_f.front().rows != u.rows || smoothed_f.front().cols != u.cols)
        throw std::invalid_argument("mask and image shapes differ");

    const long fg = u.sum();
    const long bg = static_cast<long>(u.pixel_count()) - fg;
    if (fg == 0 || bg == 0)
        throw std::domain_error("cv_update: degenerate region (mask is all-zero or all-one)");

    CvState state;
    state.c1.reserve(smoothed_f.size());
    state.c2.reserve(smoothed_f.size());
    for (const ScalarField& sf : smoothed_f) {
        double sum_fg = 0.0, sum_bg = 0.0;
        for (std::size_t i = 0; i < u.bits.size(); ++i)
            (u.bits[i] ? sum_fg : sum_bg) += sf.values[i];
        state.c1.push_back(sum_fg / static_cast<double>(fg));
        state.c2.push_back(sum_bg / static_cast<double>(bg));
    }
    return state;
}

FidelityFields cv_fields(const CvState& state, const ImageGrid& f) {
    if (state.c1.size() != static_cast<std::size_t>(f.channels) ||
        state.c2.size() != static_cast<std::size_t>(f.channels))
        throw std::invalid_argument("cv_fields: state channel count differs from image");

    FidelityFields fields{ScalarField(f.rows, f.cols), ScalarField(f.rows, f.cols)};
    for (int r = 0; r < f.rows; ++r) {
        for (int c = 0; c < f.cols; ++c) {
            double a1 = 0.0, a2 = 0.0;
            for (int ch = 0; ch < f.channels; ++ch) {
                const double v = f.at(r, c, ch);
                const double d1 = state.c1[ch] - v;
                const double d2 = state.c2[ch] - v;
                a1 += d1 * d1;
                a2 += d2 * d2;
            }
            fields.f1.at(r, c) = a1;
            fields.f2.at(r, c) = a2;
        }
    }
    return fields;
}

LifState lif_update(const BinaryMask& u, const ImageGrid& f, double tau1, double delta,
                    double eps) {
    check_same_shape(u, f);
    if (!(delta > 0.0)) throw std::invalid_argument("lif_update requires delta > 0");
    if (!(eps > 0.0)) throw std::invalid_argument("lif_update requires eps > 0");
    const HeatMultiplier m_tau1 = build_multiplier(tau1, f.rows, f.cols, f.spacing);
    const HeatMultiplier m_delta = build_multiplier(delta, f.rows, f.cols, f.spacing);
    return lif_update_with(u, f, m_tau1, m_delta, eps);
}

LifState lif_update_with(const BinaryMask& u, const ImageGrid& f, const HeatMultiplier& m_tau1,
                         const HeatMultiplier& m_delta, double eps) {
    check_same_shape(u, f);

    LifState state;
    state.rows = f.rows;
    state.cols = f.cols;
    state.channels = f.channels;
    state.c1.resize(f.values.size());
    state.c2.resize(f.values.size());

    ScalarField u_field = mask_to_field(u);
    ScalarField w1 = convolve(u_field, m_tau1);
    for (double& v : u_field.values) v = 1.0 - v;
    ScalarField w2 = convolve(u_field, m_tau1);

    // Both phases run through identical arithmetic so swapping u and 1-u
    // swaps c1 and c2 bit-exactly.
    for (int phase = 0; phase < 2; ++phase) {
        const ScalarField& w = phase == 0 ? w1 : w2;
        std::vector<double>& out = phase == 0 ? state.c1 : state.c2;
        const ScalarField den = convolve(w, m_delta);
        for (int ch = 0; ch < f.channels; ++ch) {
            ScalarField weighted(f.rows, f.cols);
            for (int r = 0; r < f.rows; ++r)
                for (int c = 0; c < f.cols; ++c) weighted.at(r, c) = w.at(r, c) * f.at(r, c, ch);
            const ScalarField num = convolve(weighted, m_delta);
            for (int r = 0; r < f.rows; ++r)
                for (int c = 0; c < f.cols; ++c)
                    out[(static_cast<std::size_t>(r) * f.cols + c) * f.channels + ch] =
                        num.at(r, c) / (den.at(r, c) + eps);
        }
    }
    return state;
}

FidelityFields lif_fields(const LifState& state, const ImageGrid& f, double delta, double lambda1,
                          double lambda2) {
    if (!(delta > 0.0)) throw std::invalid_argument("lif_fields requires delta > 0");
    return lif_fields_with(state, f, build_multiplier(delta, f.rows, f.cols, f.spacing), lambda1,
                           lambda2);
}

FidelityFields lif_fields_with(const LifState& state, const ImageGrid& f,
                               const HeatMultiplier& m_delta, double lambda1, double lambda2) {
    if (state.rows != f.rows || state.cols != f.cols || state.channels != f.channels)
        throw std::invalid_argument("lif_fields: state and image shapes differ");

    FidelityFields fields{ScalarField(f.rows, f.cols), ScalarField(f.rows, f.cols)};
    for (int phase = 0; phase < 2; ++phase) {
        const std::vector<double>& c = phase == 0 ? state.c1 : state.c2;
        const double lambda = phase == 0 ? lambda1 : lambda2;
        ScalarField& out = phase == 0 ? fields.f1 : fields.f2;
        for (int ch = 0; ch < f.channels; ++ch) {
            ScalarField ci(f.rows, f.cols);
            ScalarField ci_sq(f.rows, f.cols);
            for (int r = 0; r < f.rows; ++r) {
                for (int col = 0; col < f.cols; ++col) {
                    const double v =
                        c[(static_cast<std::size_t>(r) * f.cols + col) * f.channels + ch];
                    ci.at(r, col) = v;
                    ci_sq.at(r, col) = v * v;
                }
            }
            const ScalarField g_ci = convolve(ci, m_delta);
            const ScalarField g_ci_sq = convolve(ci_sq, m_delta);
            for (int r = 0; r < f.rows; ++r) {
                for (int col = 0; col < f.cols; ++col) {
                    const double fv = f.at(r, col, ch);
                    out.at(r, col) +=
                        lambda * (g_ci_sq.at(r, col) - 2.0 * fv * g_ci.at(r, col) + fv * fv);
                }
            }
        }
        for (double& v : out.values)
            if (v < 0.0) v = 0.0;
    }
    return fields;
}

}  // namespace tpictm
