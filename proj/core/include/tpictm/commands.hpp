#pragma once

#include "tpictm/solver.hpp"
#include "tpictm/synthetic.hpp"

#include <string>
#include <vector>

namespace tpictm {

// Command drivers behind the CLI. Exit codes: 0 converged, 1 error,
// 2 max-iter exhausted.

struct RunConfig {
    std::string input_path;
    std::string init_mask_path;  // exactly one of init_mask_path / init_shape
    std::string init_shape;      // e.g. "circle:0.5,0.5,0.3"
    FidelityModel model = FidelityModel::chan_vese;
    SolverParams params;
    int snapshot_every = 0;  // 0 = no snapshots
    std::string out_dir = ".";
    std::string energy_csv_path;  // default <out_dir>/energy.csv
};

/// Named initializers in unit coordinates (x along columns, y along rows):
///   circle:cx,cy,r
///   rectangle:x0,y0,x1,y1
///   two-circles:cx1,cy1,r1,cx2,cy2,r2
///   checkerboard-seeds:n            (n x n grid of seed discs)
///   annulus:cx,cy,router,rinner     (one component with one hole)
/// Arguments may be omitted for defaults, e.g. plain "circle".
BinaryMask make_initializer(const std::string& shape, int rows, int cols);

/// Input image with the mask boundary (foreground pixels 4-adjacent to
/// background) drawn in red.
ImageGrid overlay_mask(const ImageGrid& image, const BinaryMask& mask);

/// One row per iteration:
/// iter,total,fidelity,perimeter,predicted_flips,accepted_flips,rejected_flips,fg_components,bg_components
void write_energy_csv(const std::vector<EnergyRecord>& trace, const std::string& path);

/// Loads inputs, runs the solver, writes the final mask, optional snapshot
/// overlays and the energy CSV.
int segment_command(const RunConfig& config);

/// Runs the same instance with and without the topology correction, writes
/// both masks and energy CSVs, and prints one summary line per run.
int compare_command(const RunConfig& config);

/// Renders a synthetic scene into out_dir: image.png, truth.png and
/// metadata.json (spec fields plus the noise algorithm identifier).
int gen_command(const SyntheticSpec& spec, const std::string& out_dir);

}  // namespace tpictm
