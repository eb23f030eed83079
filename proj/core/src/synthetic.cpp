#include "tpictm/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace tpictm {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct UnitPoint {
    double x;  // along columns
    double y;  // along rows
};

UnitPoint pixel_center(int r, int c, int size) {
    return {(c + 0.5) / size, (r + 0.5) / size};
}

bool in_disc(UnitPoint p, double cx, double cy, double radius) {
    const double dx = p.x - cx;
    const double dy = p.y - cy;
    return dx * dx + dy * dy <= radius * radius;
}

BinaryMask render(int size, bool (*inside)(UnitPoint, const SyntheticSpec&),
                  const SyntheticSpec& spec) {
    BinaryMask mask(size, size);
    for (int r = 0; r < size; ++r)
        for (int c = 0; c < size; ++c)
            if (inside(pixel_center(r, c, size), spec)) mask.set(r, c, 1);
    return mask;
}

bool two_discs_line(UnitPoint p, const SyntheticSpec& spec) {
    if (in_disc(p, 0.30, 0.5, 0.13) || in_disc(p, 0.70, 0.5, 0.13)) return true;
    const double line_half = 1.0 / spec.size;  // two pixel rows
    return p.x >= 0.30 && p.x <= 0.70 && std::abs(p.y - 0.5) <= line_half;
}

bool star(UnitPoint p, const SyntheticSpec&) {
    const double dx = p.x - 0.5;
    const double dy = p.y - 0.5;
    const double rad = std::sqrt(dx * dx + dy * dy);
    const double theta = std::atan2(dy, dx);
    return rad <= 0.22 * (1.0 + 0.45 * std::cos(5.0 * theta));
}

bool discs_with_holes(UnitPoint p, const SyntheticSpec&) {
    for (double cx : {0.3, 0.7}) {
        if (in_disc(p, cx, 0.5, 0.16) && !in_disc(p, cx, 0.5, 0.07)) return true;
    }
    return false;
}

BinaryMask render_pattern_interior(const SyntheticSpec& spec) {
    const int size = spec.size;
    BinaryMask mask(size, size);
    const int pitch = std::max(4, static_cast<int>(std::lround(size * spec.density)));
    const int hole_r = std::max(1, pitch / 4);
    const double disc_r = 0.32;
    for (int r = 0; r < size; ++r) {
        for (int c = 0; c < size; ++c) {
            const UnitPoint p = pixel_center(r, c, size);
            if (!in_disc(p, 0.5, 0.5, disc_r)) continue;
            // Nearest lattice node; punch a hole only when the whole hole
            // disc sits well inside the foreground, so the outer boundary
            // stays intact.
            const int lr = (r + pitch / 2) / pitch * pitch;
            const int lc = (c + pitch / 2) / pitch * pitch;
            const double ddr = r - lr;
            const double ddc = c - lc;
            const bool in_hole = ddr * ddr + ddc * ddc <= hole_r * hole_r;
            if (in_hole) {
                const UnitPoint node = pixel_center(lr, lc, size);
                const double margin = (hole_r + 2.0) / size;
                if (in_disc(node, 0.5, 0.5, disc_r - margin)) continue;
            }
            mask.set(r, c, 1);
        }
    }
    return mask;
}

}  // namespace

SyntheticScene generate(const SyntheticSpec& spec) {
    if (spec.size < 3) throw std::invalid_argument("scene size must be >= 3");
    if (spec.sigma < 0.0) throw std::invalid_argument("noise sigma must be >= 0");

    BinaryMask truth(spec.size, spec.size);
    if (spec.scene == "two-discs-line")
        truth = render(spec.size, two_discs_line, spec);
    else if (spec.scene == "star-noise")
        truth = render(spec.size, star, spec);
    else if (spec.scene == "discs-with-holes")
        truth = render(spec.size, discs_with_holes, spec);
    else if (spec.scene == "pattern-interior")
        truth = render_pattern_interior(spec);
    else
        throw std::invalid_argument("unknown scene name: " + spec.scene);

    std::vector<double> values(truth.pixel_count());
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = truth.bits[i];

    if (spec.sigma > 0.0) {
        // Box-Muller on explicit 53-bit uniforms keeps the stream identical
        // across standard libraries.
        std::mt19937_64 rng(spec.seed);
        auto uniform = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };
        for (double& v : values) {
            const double u1 = 1.0 - uniform();  // (0, 1]
            const double u2 = uniform();
            const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
            v = std::clamp(v + spec.sigma * z, 0.0, 1.0);
        }
    }
    return {ImageGrid(spec.size, spec.size, 1, std::move(values)), std::move(truth)};
}

}  // namespace tpictm
