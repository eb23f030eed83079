#include "tpictm/commands.hpp"

#include "tpictm/image_io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace tpictm {

namespace {

std::vector<double> parse_args(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        try {
            out.push_back(std::stod(token));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad initializer argument: " + token);
        }
    }
    return out;
}

void fill_disc(BinaryMask& mask, double cx, double cy, double radius) {
    for (int r = 0; r < mask.rows; ++r) {
        for (int c = 0; c < mask.cols; ++c) {
            const double x = (c + 0.5) / mask.cols;
            const double y = (r + 0.5) / mask.rows;
            if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= radius * radius) mask.set(r, c, 1);
        }
    }
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const char* status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::converged: return "converged";
        case SolveStatus::max_iter_reached: return "max-iter";
        case SolveStatus::degenerate_mask: return "degenerate";
    }
    return "unknown";
}

struct LoadedInstance {
    ImageGrid image;
    BinaryMask init;
};

LoadedInstance load_instance(const RunConfig& config) {
    if (config.input_path.empty())
        throw std::invalid_argument("missing --input image path");
    const bool has_mask = !config.init_mask_path.empty();
    const bool has_shape = !config.init_shape.empty();
    if (has_mask == has_shape)
        throw std::invalid_argument("provide exactly one of --init and --init-shape");

    ImageGrid image = load_image(config.input_path);
    BinaryMask init = has_mask ? load_mask(config.init_mask_path)
                               : make_initializer(config.init_shape, image.rows, image.cols);
    if (init.rows != image.rows || init.cols != image.cols)
        throw std::invalid_argument("--init mask shape does not match the input image");
    return {std::move(image), std::move(init)};
}

struct NamedRun {
    std::string name;
    SolveResult result;
};

NamedRun run_instance(const LoadedInstance& instance, const RunConfig& config,
                      bool topology_enabled, const std::string& name) {
    SolverParams params = config.params;
    params.topology_enabled = topology_enabled;

    IterationObserver observer;
    if (config.snapshot_every > 0) {
        const ImageGrid* image = &instance.image;
        const int cadence = config.snapshot_every;
        const std::string dir = config.out_dir;
        const std::string prefix = name.empty() ? std::string("snapshot") : name + "_snapshot";
        observer = [image, cadence, dir, prefix](int iter, const BinaryMask& mask,
                                                 const EnergyRecord&) {
            if (iter % cadence != 0) return;
            char file[64];
            std::snprintf(file, sizeof file, "/%s_%06d.png", prefix.c_str(), iter);
            save_image(overlay_mask(*image, mask), dir + file);
        };
    }
    return {name, run(instance.image, instance.init, config.model, params, observer)};
}

void print_summary(const NamedRun& r) {
    const EnergyRecord& last = r.result.trace.back();
    std::cout << (r.name.empty() ? "run" : r.name) << ": status=" << status_name(r.result.status)
              << " iterations=" << r.result.iterations << " final_energy=" << last.total
              << " fg_components=" << last.fg_components
              << " bg_components=" << last.bg_components << "\n";
}

}  // namespace

BinaryMask make_initializer(const std::string& shape, int rows, int cols) {
    const auto colon = shape.find(':');
    const std::string name = shape.substr(0, colon);
    const std::vector<double> args =
        colon == std::string::npos ? std::vector<double>{} : parse_args(shape.substr(colon + 1));

    auto want = [&](std::size_t n, const char* usage) {
        if (!args.empty() && args.size() != n)
            throw std::invalid_argument(std::string("--init-shape ") + name + " expects " + usage);
        return args.empty();
    };

    BinaryMask mask(rows, cols);
    if (name == "circle") {
        const bool def = want(3, "cx,cy,r");
        fill_disc(mask, def ? 0.5 : args[0], def ? 0.5 : args[1], def ? 0.25 : args[2]);
    } else if (name == "rectangle") {
        const bool def = want(4, "x0,y0,x1,y1");
        const double x0 = def ? 0.2 : args[0], y0 = def ? 0.2 : args[1];
        const double x1 = def ? 0.8 : args[2], y1 = def ? 0.8 : args[3];
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) {
                const double x = (c + 0.5) / cols, y = (r + 0.5) / rows;
                if (x >= x0 && x <= x1 && y >= y0 && y <= y1) mask.set(r, c, 1);
            }
    } else if (name == "two-circles") {
        const bool def = want(6, "cx1,cy1,r1,cx2,cy2,r2");
        fill_disc(mask, def ? 0.3 : args[0], def ? 0.5 : args[1], def ? 0.15 : args[2]);
        fill_disc(mask, def ? 0.7 : args[3], def ? 0.5 : args[4], def ? 0.15 : args[5]);
    } else if (name == "checkerboard-seeds") {
        const bool def = want(1, "n");
        const int n = def ? 4 : static_cast<int>(args[0]);
        if (n < 1) throw std::invalid_argument("checkerboard-seeds needs n >= 1");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                fill_disc(mask, (j + 0.5) / n, (i + 0.5) / n, 0.3 / n);
    } else if (name == "annulus") {
        const bool def = want(4, "cx,cy,router,rinner");
        const double cx = def ? 0.5 : args[0], cy = def ? 0.5 : args[1];
        const double router = def ? 0.35 : args[2], rinner = def ? 0.18 : args[3];
        if (!(rinner < router)) throw std::invalid_argument("annulus needs rinner < router");
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) {
                const double x = (c + 0.5) / cols, y = (r + 0.5) / rows;
                const double d2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
                if (d2 <= router * router && d2 > rinner * rinner) mask.set(r, c, 1);
            }
    } else {
        throw std::invalid_argument("unknown initializer shape: " + name);
    }

    const long fg = mask.sum();
    if (fg == 0 || fg == static_cast<long>(mask.pixel_count()))
        throw std::invalid_argument("initializer '" + shape + "' produced a degenerate mask");
    return mask;
}

ImageGrid overlay_mask(const ImageGrid& image, const BinaryMask& mask) {
    if (image.rows != mask.rows || image.cols != mask.cols)
        throw std::invalid_argument("overlay_mask: shape mismatch");

    std::vector<double> rgb(image.pixel_count() * 3);
    for (int r = 0; r < image.rows; ++r)
        for (int c = 0; c < image.cols; ++c)
            for (int ch = 0; ch < 3; ++ch)
                rgb[(static_cast<std::size_t>(r) * image.cols + c) * 3 + ch] =
                    image.at(r, c, image.channels == 3 ? ch : 0);

    ImageGrid out(image.rows, image.cols, 3, std::move(rgb));
    for (int r = 0; r < mask.rows; ++r) {
        for (int c = 0; c < mask.cols; ++c) {
            if (!mask.at(r, c)) continue;
            const bool boundary = (r > 0 && !mask.at(r - 1, c)) ||
                                  (r + 1 < mask.rows && !mask.at(r + 1, c)) ||
                                  (c > 0 && !mask.at(r, c - 1)) ||
                                  (c + 1 < mask.cols && !mask.at(r, c + 1));
            if (boundary) {
                out.at(r, c, 0) = 1.0;
                out.at(r, c, 1) = 0.0;
                out.at(r, c, 2) = 0.0;
            }
        }
    }
    return out;
}

void write_energy_csv(const std::vector<EnergyRecord>& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "iter,total,fidelity,perimeter,predicted_flips,accepted_flips,rejected_flips,"
           "fg_components,bg_components\n";
    for (const EnergyRecord& rec : trace) {
        out << rec.iteration << ',' << format_double(rec.total) << ','
            << format_double(rec.fidelity) << ',' << format_double(rec.perimeter) << ','
            << rec.predicted_flips << ',' << rec.accepted_flips << ',' << rec.rejected_flips
            << ',' << rec.fg_components << ',' << rec.bg_components << '\n';
    }
}

int segment_command(const RunConfig& config) {
    try {
        std::filesystem::create_directories(config.out_dir);
        const LoadedInstance instance = load_instance(config);
        const NamedRun r = run_instance(instance, config, config.params.topology_enabled, "");

        save_mask(r.result.mask, config.out_dir + "/final_mask.png");
        const std::string csv = config.energy_csv_path.empty()
                                    ? config.out_dir + "/energy.csv"
                                    : config.energy_csv_path;
        write_energy_csv(r.result.trace, csv);
        print_summary(r);
        if (r.result.status == SolveStatus::degenerate_mask) return 1;
        return r.result.status == SolveStatus::converged ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int compare_command(const RunConfig& config) {
    try {
        std::filesystem::create_directories(config.out_dir);
        const LoadedInstance instance = load_instance(config);

        const NamedRun tp = run_instance(instance, config, true, "topology");
        const NamedRun plain = run_instance(instance, config, false, "plain");

        save_mask(tp.result.mask, config.out_dir + "/mask_topology.png");
        save_mask(plain.result.mask, config.out_dir + "/mask_plain.png");
        write_energy_csv(tp.result.trace, config.out_dir + "/energy_topology.csv");
        write_energy_csv(plain.result.trace, config.out_dir + "/energy_plain.csv");
        print_summary(tp);
        print_summary(plain);

        if (tp.result.status == SolveStatus::degenerate_mask ||
            plain.result.status == SolveStatus::degenerate_mask)
            return 1;
        return tp.result.status == SolveStatus::converged &&
                       plain.result.status == SolveStatus::converged
                   ? 0
                   : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int gen_command(const SyntheticSpec& spec, const std::string& out_dir) {
    try {
        std::filesystem::create_directories(out_dir);
        const SyntheticScene scene = generate(spec);
        save_image(scene.image, out_dir + "/image.png");
        save_mask(scene.ground_truth, out_dir + "/truth.png");

        nlohmann::json meta{{"scene", spec.scene},
                            {"size", spec.size},
                            {"sigma", spec.sigma},
                            {"density", spec.density},
                            {"seed", spec.seed},
                            {"noise_algorithm", kNoiseAlgorithm}};
        std::ofstream out(out_dir + "/metadata.json");
        if (!out) throw std::runtime_error("cannot write metadata.json");
        out << meta.dump(2) << "\n";

        std::cout << "gen: scene=" << spec.scene << " size=" << spec.size
                  << " sigma=" << spec.sigma << " seed=" << spec.seed << " out=" << out_dir
                  << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace tpictm
