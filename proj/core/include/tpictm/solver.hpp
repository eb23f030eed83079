#pragma once

#include "tpictm/models.hpp"
#include "tpictm/topology.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace tpictm {

// Outer iteration: closed-form parameter update, score field, thresholding
// prediction, and (when enabled) the sorted topology-preserving correction
// sweep that rejects non-simple flips. With the correction enabled, the
// 4-/8-connected component counts of foreground and background never change
// across iterations, and the monitored energy is non-increasing either way.

enum class FidelityModel { chan_vese, local_intensity_fit };

struct SolverParams {
    double tau1 = 0.001;   // fidelity smoothing time (0 = no smoothing)
    double tau2 = 0.001;   // perimeter approximation time, > 0
    double lambda = 0.01;  // regularization weight, > 0
    long tol = 0;          // stop when the per-iteration flip count is <= tol
    int max_iter = 1000;
    ConnectivityPair pair = ConnectivityPair::four_eight();
    bool topology_enabled = true;  // false reproduces the plain scheme

    // Local-intensity-fitting extras. eps also bounds how far the
    // epsilon-guarded parameter update deviates from the exact minimizer;
    // keep it well below the 1e-9 energy-monotonicity slack.
    double delta = 0.01;
    double lambda1 = 1.0;
    double lambda2 = 1.0;
    double eps = 1e-12;
};

struct Candidate {
    PixelCoord pixel;
    double score = 0.0;  // phi value at the pixel
};

/// Sorted transition candidates. The joining list holds background pixels
/// with phi < 0 in ascending score order (most negative first); the leaving
/// list holds foreground pixels with phi > 0 in descending order. Ties keep
/// row-major pixel order. Pixels with phi == 0 are never candidates.
struct CandidateList {
    std::vector<Candidate> entries;
};

struct EnergyRecord {
    int iteration = 0;
    double total = 0.0;      // energy of (u^k, Theta^k) after the parameter update
    double fidelity = 0.0;
    double perimeter = 0.0;
    long predicted_flips = 0;  // |P1| + |P2|
    long accepted_flips = 0;
    long rejected_flips = 0;
    int fg_components = 0;  // of the mask this iteration produced (periodic)
    int bg_components = 0;
};

struct EnergyParts {
    double total = 0.0;
    double fidelity = 0.0;
    double perimeter = 0.0;
};

/// phi = G_tau1*(F1 - F2) + lambda sqrt(pi/tau2) G_tau2*(1 - 2u).
ScalarField compute_phi(const FidelityFields& fields, const BinaryMask& u,
                        const SolverParams& params);
ScalarField compute_phi_with(const FidelityFields& fields, const BinaryMask& u,
                             const HeatMultiplier& m_tau1, const HeatMultiplier& m_tau2,
                             double lambda);

/// Pointwise indicator of phi <= 0.
BinaryMask threshold_predict(const ScalarField& phi);

std::pair<CandidateList, CandidateList> build_candidates(const ScalarField& phi,
                                                         const BinaryMask& u);

/// Sequential correction sweep: walks the joining list then the leaving list,
/// flipping a candidate iff it is simple in the mask evolving so far.
/// Guarantees the periodic component counts of the result equal u_prev's.
struct CorrectionResult {
    BinaryMask mask;
    long accepted = 0;
    long rejected = 0;
};
CorrectionResult topology_correct(const BinaryMask& u_prev, const CandidateList& joining,
                                  const CandidateList& leaving, ConnectivityPair pair);

/// fidelity = sum[u (G_tau1*F1) + (1-u)(G_tau1*F2)] h^2,
/// perimeter = lambda * perimeter_estimate(u, tau2), total = their sum.
EnergyParts energy(const BinaryMask& u, const FidelityFields& fields, const SolverParams& params);
EnergyParts energy_with(const BinaryMask& u, const FidelityFields& fields,
                        const HeatMultiplier& m_tau1, const HeatMultiplier& m_tau2,
                        double lambda);

enum class SolveStatus {
    converged,         // flip count reached tol within max_iter
    max_iter_reached,
    degenerate_mask,   // iterate collapsed to all-foreground/all-background
};

struct SolveResult {
    BinaryMask mask;
    std::vector<EnergyRecord> trace;
    SolveStatus status = SolveStatus::max_iter_reached;
    int iterations = 0;
};

/// Invoked once per iteration with the mask the iteration produced; must not
/// mutate solver state.
using IterationObserver =
    std::function<void(int iteration, const BinaryMask& mask, const EnergyRecord& record)>;

/// Full iteration loop. u0 must contain both phases. Each record's energy is
/// measured after that iteration's parameter update and is asserted
/// non-increasing (1e-9 relative slack) against the previous record; with
/// topology enabled, component-count preservation is asserted every
/// iteration. Violations throw. A mid-run collapse to a single phase stops
/// the loop with SolveStatus::degenerate_mask.
SolveResult run(const ImageGrid& f, const BinaryMask& u0, FidelityModel model,
                const SolverParams& params, const IterationObserver& observer = {});

}  // namespace tpictm
