#include "tpictm/models.hpp"

#include "oracles.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace tpictm;

namespace {

BinaryMask left_half_mask(int rows, int cols) {
    BinaryMask m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols / 2; ++c) m.set(r, c, 1);
    return m;
}

// Smoothed fidelity value the Chan-Vese means minimize, evaluated through
// the reference convolution.
double cv_objective(const BinaryMask& u, const ImageGrid& f, double tau1,
                    const std::vector<double>& c1, const std::vector<double>& c2) {
    const ScalarField gu = oracle::convolve_dft(mask_to_field(u), tau1);
    const double h = grid_spacing(u.rows, u.cols);
    double acc = 0.0;
    for (int r = 0; r < u.rows; ++r)
        for (int c = 0; c < u.cols; ++c)
            for (int ch = 0; ch < f.channels; ++ch) {
                const double v = f.at(r, c, ch);
                const double w = gu.at(r, c);
                acc += w * (c1[ch] - v) * (c1[ch] - v) + (1.0 - w) * (c2[ch] - v) * (c2[ch] - v);
            }
    return acc * h * h;
}

}  // namespace

TEST_CASE("cv_update on constant and piecewise-constant images") {
    const BinaryMask u = left_half_mask(8, 8);

    const ImageGrid constant = ImageGrid::constant(8, 8, 1, 0.6);
    const CvState s = cv_update(u, constant, 0.01);
    CHECK(s.c1[0] == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(s.c2[0] == doctest::Approx(0.6).epsilon(1e-12));

    ImageGrid halves = ImageGrid::constant(8, 8, 1, 0.2);
    for (int r = 0; r < 8; ++r)
        for (int c = 4; c < 8; ++c) halves.at(r, c) = 0.9;
    const CvState exact = cv_update(u, halves, 0.0);
    CHECK(exact.c1[0] == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(exact.c2[0] == doctest::Approx(0.9).epsilon(1e-14));
}

TEST_CASE("cv_update rejects degenerate regions") {
    const ImageGrid f = ImageGrid::constant(6, 6, 1, 0.5);
    CHECK_THROWS_AS(cv_update(BinaryMask(6, 6), f, 0.01), std::domain_error);
    CHECK_THROWS_AS(cv_update(BinaryMask(6, 6, std::uint8_t(1)), f, 0.01), std::domain_error);
}

TEST_CASE("cv_update matches the defining quotients") {
    testsup::Rng rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = trial % 2 ? 8 : 4;
        const ImageGrid f = testsup::random_image(rng, n, n, trial % 3 ? 1 : 3);
        const BinaryMask u = testsup::random_mask(rng, n, n);
        const CvState got = cv_update(u, f, 0.01);
        const oracle::CvMeans want = oracle::cv_update(u, f, 0.01);
        for (int ch = 0; ch < f.channels; ++ch) {
            CHECK(testsup::close(got.c1[ch], want.c1[ch], 1e-10));
            CHECK(testsup::close(got.c2[ch], want.c2[ch], 1e-10));
        }
    }
}

TEST_CASE("cv_update minimizes the smoothed fidelity") {
    testsup::Rng rng(22);
    const ImageGrid f = testsup::random_image(rng, 8, 8);
    const BinaryMask u = testsup::random_mask(rng, 8, 8);
    const double tau1 = 0.02;
    const CvState s = cv_update(u, f, tau1);
    const double best = cv_objective(u, f, tau1, s.c1, s.c2);
    for (double delta : {1e-3, -1e-3}) {
        CHECK(cv_objective(u, f, tau1, {s.c1[0] + delta}, s.c2) >= best - 1e-15);
        CHECK(cv_objective(u, f, tau1, s.c1, {s.c2[0] + delta}) >= best - 1e-15);
    }
}

TEST_CASE("cv_fields pointwise examples") {
    ImageGrid f = ImageGrid::constant(3, 3, 1, 0.5);
    const FidelityFields mid = cv_fields(CvState{{0.0}, {1.0}}, f);
    CHECK(mid.f1.at(1, 1) == doctest::Approx(0.25));
    CHECK(mid.f2.at(1, 1) == doctest::Approx(0.25));

    f.at(0, 0) = 0.7;
    const FidelityFields zero = cv_fields(CvState{{0.7}, {0.2}}, f);
    CHECK(zero.f1.at(0, 0) == doctest::Approx(0.0));

    ImageGrid rgb = ImageGrid::constant(3, 3, 3, 0.0);
    rgb.at(1, 1, 0) = 0.1;
    rgb.at(1, 1, 1) = 0.2;
    rgb.at(1, 1, 2) = 0.3;
    const FidelityFields sq = cv_fields(CvState{{0, 0, 0}, {1, 1, 1}}, rgb);
    CHECK(sq.f1.at(1, 1) == doctest::Approx(0.14));
}

TEST_CASE("lif_update: constants, empty numerators, validation") {
    const ImageGrid constant = ImageGrid::constant(8, 8, 1, 0.4);
    const BinaryMask u = left_half_mask(8, 8);
    const LifState s = lif_update(u, constant, 0.01, 0.05, 1e-10);
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) {
            CHECK(s.at1(r, c) == doctest::Approx(0.4).epsilon(1e-6));
            CHECK(s.at2(r, c) == doctest::Approx(0.4).epsilon(1e-6));
        }

    const BinaryMask ones(8, 8, std::uint8_t(1));
    const LifState deg = lif_update(ones, constant, 0.01, 0.05, 1e-10);
    for (double v : deg.c2) CHECK(v == 0.0);

    CHECK_THROWS_AS(lif_update(u, constant, 0.01, 0.0, 1e-10), std::invalid_argument);
    CHECK_THROWS_AS(lif_update(u, constant, 0.01, 0.05, 0.0), std::invalid_argument);
}

TEST_CASE("lif_update matches the composed reference convolutions") {
    testsup::Rng rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const ImageGrid f = testsup::random_image(rng, 8, 8);
        const BinaryMask u = testsup::random_mask(rng, 8, 8);
        const LifState got = lif_update(u, f, 0.01, 0.05, 1e-8);
        const oracle::LifFits want = oracle::lif_update(u, f, 0.01, 0.05, 1e-8);
        for (int r = 0; r < 8; ++r)
            for (int c = 0; c < 8; ++c) {
                CHECK(testsup::close(got.at1(r, c), want.c1[0].at(r, c), 1e-8));
                CHECK(testsup::close(got.at2(r, c), want.c2[0].at(r, c), 1e-8));
            }
    }
}

TEST_CASE("lif stationarity residual with a tiny epsilon") {
    testsup::Rng rng(24);
    const ImageGrid f = testsup::random_image(rng, 8, 8);
    const BinaryMask u = testsup::random_mask(rng, 8, 8);
    const double delta = 0.05;
    const LifState s = lif_update(u, f, 0.01, delta, 1e-12);

    // Residual of the variational equation, via the periodized-window
    // quadrature: C1(x) (G_delta*w1)(x) - (G_delta*(w1 f))(x).
    const ScalarField w1 = oracle::convolve_dft(mask_to_field(u), 0.01);
    ScalarField w1f(8, 8);
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) w1f.at(r, c) = w1.at(r, c) * f.at(r, c, 0);
    const ScalarField den = oracle::convolve_spatial(w1, delta);
    const ScalarField num = oracle::convolve_spatial(w1f, delta);
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c)
            CHECK(std::abs(s.at1(r, c) * den.at(r, c) - num.at(r, c)) < 1e-6);
}

TEST_CASE("lif_fields: exact zeros, weight linearity, oracle agreement") {
    const ImageGrid constant = ImageGrid::constant(8, 8, 1, 0.3);
    LifState flat;
    flat.rows = flat.cols = 8;
    flat.channels = 1;
    flat.c1.assign(64, 0.3);
    flat.c2.assign(64, 0.3);
    const FidelityFields zero = lif_fields(flat, constant, 0.05, 1.0, 1.0);
    for (double v : zero.f1.values) CHECK(v < 1e-12);
    for (double v : zero.f2.values) CHECK(v < 1e-12);

    testsup::Rng rng(25);
    const ImageGrid f = testsup::random_image(rng, 8, 8);
    const BinaryMask u = testsup::random_mask(rng, 8, 8);
    const LifState s = lif_update(u, f, 0.01, 0.05, 1e-8);

    const FidelityFields base = lif_fields(s, f, 0.05, 1.0, 1.0);
    const FidelityFields doubled = lif_fields(s, f, 0.05, 2.0, 2.0);
    for (std::size_t i = 0; i < base.f1.values.size(); ++i) {
        CHECK(doubled.f1.values[i] == doctest::Approx(2.0 * base.f1.values[i]).epsilon(1e-14));
        CHECK(doubled.f2.values[i] == doctest::Approx(2.0 * base.f2.values[i]).epsilon(1e-14));
        CHECK(base.f1.values[i] >= 0.0);
        CHECK(base.f2.values[i] >= 0.0);
    }

    std::vector<ScalarField> c1{ScalarField(8, 8)}, c2{ScalarField(8, 8)};
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) {
            c1[0].at(r, c) = s.at1(r, c);
            c2[0].at(r, c) = s.at2(r, c);
        }
    const ScalarField want1 = oracle::lif_field_double_sum(c1, f, 0.05, 1.0);
    const ScalarField want2 = oracle::lif_field_double_sum(c2, f, 0.05, 1.0);
    for (std::size_t i = 0; i < base.f1.values.size(); ++i) {
        CHECK(testsup::close(base.f1.values[i], want1.values[i], 1e-8));
        CHECK(testsup::close(base.f2.values[i], want2.values[i], 1e-8));
    }
}

TEST_CASE("relabeling symmetry: swapping the phases swaps the outputs exactly") {
    testsup::Rng rng(26);
    const ImageGrid f = testsup::random_image(rng, 8, 8);
    const BinaryMask u = testsup::random_mask(rng, 8, 8);
    BinaryMask swapped(8, 8);
    for (std::size_t i = 0; i < u.bits.size(); ++i) swapped.bits[i] = !u.bits[i];

    const CvState a = cv_update(u, f, 0.01);
    const CvState b = cv_update(swapped, f, 0.01);
    CHECK(a.c1[0] == b.c2[0]);
    CHECK(a.c2[0] == b.c1[0]);
    const FidelityFields fa = cv_fields(a, f);
    const FidelityFields fb = cv_fields(b, f);
    CHECK(fa.f1.values == fb.f2.values);
    CHECK(fa.f2.values == fb.f1.values);

    const LifState la = lif_update(u, f, 0.01, 0.05, 1e-8);
    const LifState lb = lif_update(swapped, f, 0.01, 0.05, 1e-8);
    CHECK(la.c1 == lb.c2);
    CHECK(la.c2 == lb.c1);
    const FidelityFields ga = lif_fields(la, f, 0.05, 1.0, 1.0);
    const FidelityFields gb = lif_fields(lb, f, 0.05, 1.0, 1.0);
    CHECK(ga.f1.values == gb.f2.values);
    CHECK(ga.f2.values == gb.f1.values);
}
