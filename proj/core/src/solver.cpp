#include "tpictm/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tpictm {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_params(const SolverParams& p) {
    if (!(p.tau1 >= 0.0)) throw std::invalid_argument("tau1 must be >= 0");
    if (!(p.tau2 > 0.0)) throw std::invalid_argument("tau2 must be > 0");
    if (!(p.lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
    if (p.tol < 0) throw std::invalid_argument("tol must be >= 0");
    if (p.max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
}

BinaryMask complement(const BinaryMask& u) {
    BinaryMask out(u.rows, u.cols);
    for (std::size_t i = 0; i < u.bits.size(); ++i) out.bits[i] = std::uint8_t(1u - u.bits[i]);
    return out;
}

struct ComponentCounts {
    int fg = 0;
    int bg = 0;
    bool operator==(const ComponentCounts&) const = default;
};

ComponentCounts periodic_counts(const BinaryMask& u, ConnectivityPair pair) {
    return {label_components(u, pair.foreground_conn, true).count,
            label_components(complement(u), pair.background_conn, true).count};
}

}  // namespace

ScalarField compute_phi(const FidelityFields& fields, const BinaryMask& u,
                        const SolverParams& params) {
    check_params(params);
    const double h = grid_spacing(u.rows, u.cols);
    return compute_phi_with(fields, u, build_multiplier(params.tau1, u.rows, u.cols, h),
                            build_multiplier(params.tau2, u.rows, u.cols, h), params.lambda);
}

ScalarField compute_phi_with(const FidelityFields& fields, const BinaryMask& u,
                             const HeatMultiplier& m_tau1, const HeatMultiplier& m_tau2,
                             double lambda) {
    if (fields.f1.rows != u.rows || fields.f1.cols != u.cols)
        throw std::invalid_argument("compute_phi: field and mask shapes differ");

    ScalarField diff(u.rows, u.cols);
    for (std::size_t i = 0; i < diff.values.size(); ++i)
        diff.values[i] = fields.f1.values[i] - fields.f2.values[i];
    ScalarField phi = convolve(diff, m_tau1);

    ScalarField sign(u.rows, u.cols);
    for (std::size_t i = 0; i < sign.values.size(); ++i)
        sign.values[i] = 1.0 - 2.0 * static_cast<double>(u.bits[i]);
    const ScalarField reg = convolve(sign, m_tau2);

    const double weight = lambda * std::sqrt(kPi / m_tau2.tau);
    for (std::size_t i = 0; i < phi.values.size(); ++i) phi.values[i] += weight * reg.values[i];
    return phi;
}

BinaryMask threshold_predict(const ScalarField& phi) {
    BinaryMask out(phi.rows, phi.cols);
    for (std::size_t i = 0; i < phi.values.size(); ++i) out.bits[i] = phi.values[i] <= 0.0;
    return out;
}

std::pair<CandidateList, CandidateList> build_candidates(const ScalarField& phi,
                                                         const BinaryMask& u) {
    if (phi.rows != u.rows || phi.cols != u.cols)
        throw std::invalid_argument("build_candidates: shape mismatch");

    CandidateList joining, leaving;
    for (int r = 0; r < u.rows; ++r) {
        for (int c = 0; c < u.cols; ++c) {
            const double score = phi.at(r, c);
            if (u.at(r, c) == 0 && score < 0.0)
                joining.entries.push_back({{r, c}, score});
            else if (u.at(r, c) == 1 && score > 0.0)
                leaving.entries.push_back({{r, c}, score});
        }
    }
    // Stable sorts keep row-major order among equal scores, which pins the
    // sweep order and therefore the result.
    std::stable_sort(joining.entries.begin(), joining.entries.end(),
                     [](const Candidate& a, const Candidate& b) { return a.score < b.score; });
    std::stable_sort(leaving.entries.begin(), leaving.entries.end(),
                     [](const Candidate& a, const Candidate& b) { return a.score > b.score; });
    return {std::move(joining), std::move(leaving)};
}

CorrectionResult topology_correct(const BinaryMask& u_prev, const CandidateList& joining,
                                  const CandidateList& leaving, ConnectivityPair pair) {
    for (const Candidate& cand : joining.entries)
        if (u_prev.at(cand.pixel.row, cand.pixel.col) != 0)
            throw std::invalid_argument("topology_correct: joining candidate is not background");
    for (const Candidate& cand : leaving.entries)
        if (u_prev.at(cand.pixel.row, cand.pixel.col) != 1)
            throw std::invalid_argument("topology_correct: leaving candidate is not foreground");

    const SimplePointTable table(pair);
    CorrectionResult result{u_prev, 0, 0};

    // Strictly sequential: each simplicity test sees all flips applied so
    // far, which is what makes the component-count guarantee inductive.
    for (const Candidate& cand : joining.entries) {
        if (table.simple(ring_code(result.mask, cand.pixel))) {
            result.mask.set(cand.pixel.row, cand.pixel.col, 1);
            ++result.accepted;
        } else {
            ++result.rejected;
        }
    }
    for (const Candidate& cand : leaving.entries) {
        if (table.simple(ring_code(result.mask, cand.pixel))) {
            result.mask.set(cand.pixel.row, cand.pixel.col, 0);
            ++result.accepted;
        } else {
            ++result.rejected;
        }
    }
    return result;
}

EnergyParts energy(const BinaryMask& u, const FidelityFields& fields,
                   const SolverParams& params) {
    check_params(params);
    const double h = grid_spacing(u.rows, u.cols);
    return energy_with(u, fields, build_multiplier(params.tau1, u.rows, u.cols, h),
                       build_multiplier(params.tau2, u.rows, u.cols, h), params.lambda);
}

EnergyParts energy_with(const BinaryMask& u, const FidelityFields& fields,
                        const HeatMultiplier& m_tau1, const HeatMultiplier& m_tau2,
                        double lambda) {
    if (fields.f1.rows != u.rows || fields.f1.cols != u.cols)
        throw std::invalid_argument("energy: field and mask shapes differ");

    const ScalarField g1 = convolve(fields.f1, m_tau1);
    const ScalarField g2 = convolve(fields.f2, m_tau1);
    const double h = grid_spacing(u.rows, u.cols);

    double fid = 0.0;
    for (std::size_t i = 0; i < u.bits.size(); ++i)
        fid += u.bits[i] ? g1.values[i] : g2.values[i];
    fid *= h * h;

    ScalarField comp(u.rows, u.cols);
    for (std::size_t i = 0; i < u.bits.size(); ++i)
        comp.values[i] = 1.0 - static_cast<double>(u.bits[i]);
    const ScalarField smoothed = convolve(comp, m_tau2);
    double per = 0.0;
    for (std::size_t i = 0; i < u.bits.size(); ++i)
        if (u.bits[i]) per += smoothed.values[i];
    per *= lambda * std::sqrt(kPi / m_tau2.tau) * h * h;

    return {fid + per, fid, per};
}

SolveResult run(const ImageGrid& f, const BinaryMask& u0, FidelityModel model,
                const SolverParams& params, const IterationObserver& observer) {
    check_params(params);
    if (u0.rows != f.rows || u0.cols != f.cols)
        throw std::invalid_argument("run: mask and image shapes differ");
    {
        const long fg = u0.sum();
        if (fg == 0 || fg == static_cast<long>(u0.pixel_count()))
            throw std::invalid_argument("run: initial mask must contain both phases");
    }

    const double h = f.spacing;
    const HeatMultiplier m_tau1 = build_multiplier(params.tau1, f.rows, f.cols, h);
    const HeatMultiplier m_tau2 = build_multiplier(params.tau2, f.rows, f.cols, h);
    HeatMultiplier m_delta;
    std::vector<ScalarField> smoothed_f;
    if (model == FidelityModel::local_intensity_fit) {
        if (!(params.delta > 0.0)) throw std::invalid_argument("delta must be > 0");
        if (!(params.eps > 0.0)) throw std::invalid_argument("eps must be > 0");
        m_delta = build_multiplier(params.delta, f.rows, f.cols, h);
    } else {
        smoothed_f = smooth_channels(f, m_tau1);
    }

    SolveResult result{u0, {}, SolveStatus::max_iter_reached, 0};
    ComponentCounts counts = periodic_counts(result.mask, params.pair);
    double prev_total = 0.0;

    for (int k = 0; k < params.max_iter; ++k) {
        const long fg = result.mask.sum();
        if (fg == 0 || fg == static_cast<long>(result.mask.pixel_count())) {
            result.status = SolveStatus::degenerate_mask;
            break;
        }

        FidelityFields fields =
            model == FidelityModel::chan_vese
                ? cv_fields(cv_update_presmoothed(result.mask, smoothed_f), f)
                : lif_fields_with(
                      lif_update_with(result.mask, f, m_tau1, m_delta, params.eps), f,
                      m_delta, params.lambda1, params.lambda2);

        const EnergyParts parts =
            energy_with(result.mask, fields, m_tau1, m_tau2, params.lambda);
        if (k > 0) {
            const double slack =
                1e-9 * std::max(std::abs(prev_total), std::abs(parts.total));
            if (parts.total > prev_total + slack)
                throw std::logic_error(
                    "run: energy increased at iteration " + std::to_string(k) + " (" +
                    std::to_string(prev_total) + " -> " + std::to_string(parts.total) + ")");
        }
        prev_total = parts.total;

        const ScalarField phi =
            compute_phi_with(fields, result.mask, m_tau1, m_tau2, params.lambda);
        const auto [joining, leaving] = build_candidates(phi, result.mask);

        BinaryMask u_next(result.mask.rows, result.mask.cols);
        long accepted = 0, rejected = 0;
        if (params.topology_enabled) {
            CorrectionResult corr =
                topology_correct(result.mask, joining, leaving, params.pair);
            u_next = std::move(corr.mask);
            accepted = corr.accepted;
            rejected = corr.rejected;
        } else {
            u_next = threshold_predict(phi);
            accepted = mask_flip_count(u_next, result.mask);
        }

        const long flips = mask_flip_count(u_next, result.mask);
        const ComponentCounts next_counts = periodic_counts(u_next, params.pair);
        if (params.topology_enabled && !(next_counts == counts))
            throw std::logic_error("run: component counts changed at iteration " +
                                   std::to_string(k));
        counts = next_counts;

        EnergyRecord record{k,
                            parts.total,
                            parts.fidelity,
                            parts.perimeter,
                            static_cast<long>(joining.entries.size() + leaving.entries.size()),
                            accepted,
                            rejected,
                            next_counts.fg,
                            next_counts.bg};
        result.trace.push_back(record);
        result.mask = std::move(u_next);
        result.iterations = k + 1;
        if (observer) observer(k, result.mask, record);

        if (flips <= params.tol) {
            result.status = SolveStatus::converged;
            break;
        }
    }
    return result;
}

}  // namespace tpictm
