#include "tpictm/commands.hpp"

#include <CLI11.hpp>

#include <string>

namespace {

void add_solver_flags(CLI::App* cmd, tpictm::RunConfig& config, std::string& connectivity,
                      bool& no_topology) {
    cmd->add_option("--input", config.input_path, "input image (PNG/PGM/PPM)")->required();
    cmd->add_option("--init", config.init_mask_path, "initial mask image");
    cmd->add_option("--init-shape", config.init_shape,
                    "named initializer: circle[:cx,cy,r] | rectangle[:x0,y0,x1,y1] | "
                    "two-circles[:cx1,cy1,r1,cx2,cy2,r2] | checkerboard-seeds[:n] | "
                    "annulus[:cx,cy,router,rinner]");
    cmd->add_option("--model", [&config](const CLI::results_t& res) {
        if (res[0] == "cv") config.model = tpictm::FidelityModel::chan_vese;
        else if (res[0] == "lif") config.model = tpictm::FidelityModel::local_intensity_fit;
        else return false;
        return true;
    }, "fidelity model: cv | lif")->type_name("TEXT");
    cmd->add_option("--tau1", config.params.tau1, "fidelity smoothing time (>= 0)");
    cmd->add_option("--tau2", config.params.tau2, "perimeter approximation time (> 0)");
    cmd->add_option("--lambda", config.params.lambda, "regularization weight (> 0)");
    cmd->add_option("--delta", config.params.delta, "LIF window time (> 0)");
    cmd->add_option("--lambda1", config.params.lambda1, "LIF foreground fidelity weight");
    cmd->add_option("--lambda2", config.params.lambda2, "LIF background fidelity weight");
    cmd->add_option("--eps", config.params.eps, "LIF denominator guard");
    cmd->add_option("--tol", config.params.tol, "stop when flip count <= tol");
    cmd->add_option("--max-iter", config.params.max_iter, "iteration cap");
    cmd->add_option("--connectivity", connectivity, "connectivity pair: 4-8 | 8-4")
        ->check(CLI::IsMember({"4-8", "8-4"}));
    cmd->add_flag("--no-topology", no_topology, "disable the topology-preserving correction");
    cmd->add_option("--snapshot-every", config.snapshot_every,
                    "write an overlay snapshot every N iterations (0 = off)");
    cmd->add_option("--out", config.out_dir, "output directory");
    cmd->add_option("--energy-csv", config.energy_csv_path, "energy trace CSV path");
}

void finish_config(tpictm::RunConfig& config, const std::string& connectivity, bool no_topology) {
    config.params.pair = connectivity == "8-4" ? tpictm::ConnectivityPair::eight_four()
                                               : tpictm::ConnectivityPair::four_eight();
    config.params.topology_enabled = !no_topology;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Topology-preserving convolution-thresholding image segmentation"};
    app.require_subcommand(1);

    tpictm::RunConfig segment_config, compare_config;
    std::string segment_conn = "4-8", compare_conn = "4-8";
    bool segment_no_topology = false, compare_no_topology = false;

    CLI::App* segment = app.add_subcommand("segment", "segment one image");
    add_solver_flags(segment, segment_config, segment_conn, segment_no_topology);

    CLI::App* compare = app.add_subcommand(
        "compare", "run the same instance with and without topology preservation");
    add_solver_flags(compare, compare_config, compare_conn, compare_no_topology);

    tpictm::SyntheticSpec gen_spec;
    std::string gen_out = ".";
    CLI::App* gen = app.add_subcommand("gen", "generate a synthetic test scene");
    gen->add_option("--scene", gen_spec.scene,
                    "two-discs-line | star-noise | discs-with-holes | pattern-interior")
        ->required();
    gen->add_option("--size", gen_spec.size, "image side length in pixels");
    gen->add_option("--sigma", gen_spec.sigma, "Gaussian noise standard deviation");
    gen->add_option("--density", gen_spec.density, "pattern hole pitch (fraction of side)");
    gen->add_option("--seed", gen_spec.seed, "noise RNG seed");
    gen->add_option("--out", gen_out, "output directory");

    CLI11_PARSE(app, argc, argv);

    if (segment->parsed()) {
        finish_config(segment_config, segment_conn, segment_no_topology);
        return tpictm::segment_command(segment_config);
    }
    if (compare->parsed()) {
        finish_config(compare_config, compare_conn, compare_no_topology);
        return tpictm::compare_command(compare_config);
    }
    return tpictm::gen_command(gen_spec, gen_out);
}
