#include "tpictm/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>
#include <stdexcept>
#include <vector>

namespace tpictm {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::string& path, const char* mode) {
    FilePtr f(std::fopen(path.c_str(), mode));
    if (!f) throw std::runtime_error("cannot open file: " + path);
    return f;
}

std::string lower_extension(const std::string& path) {
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos) return {};
    std::string ext = path.substr(dot);
    for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return ext;
}

ImageGrid from_bytes(int rows, int cols, int channels, const std::vector<unsigned char>& bytes) {
    std::vector<double> values(bytes.size());
    for (std::size_t i = 0; i < bytes.size(); ++i) values[i] = bytes[i] / 255.0;
    return ImageGrid(rows, cols, channels, std::move(values));
}

// ---- PNM (P2/P3/P5/P6) ----

int pnm_read_token(std::FILE* f) {
    // Skips whitespace and '#' comments, then parses one nonnegative integer.
    int c = std::fgetc(f);
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = std::fgetc(f);
        } else if (std::isspace(c)) {
            c = std::fgetc(f);
        } else {
            break;
        }
    }
    if (c == EOF || !std::isdigit(c)) throw std::runtime_error("corrupt PNM header");
    int value = 0;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + (c - '0');
        c = std::fgetc(f);
    }
    return value;
}

ImageGrid load_pnm(const std::string& path) {
    FilePtr f = open_file(path, "rb");
    char magic[2];
    if (std::fread(magic, 1, 2, f.get()) != 2 || magic[0] != 'P')
        throw std::runtime_error("corrupt PNM file: " + path);
    const char kind = magic[1];
    if (kind != '2' && kind != '3' && kind != '5' && kind != '6')
        throw std::runtime_error("unsupported PNM variant in " + path);
    const bool color = kind == '3' || kind == '6';
    const bool binary = kind == '5' || kind == '6';
    const int channels = color ? 3 : 1;

    const int cols = pnm_read_token(f.get());
    const int rows = pnm_read_token(f.get());
    const int maxval = pnm_read_token(f.get());
    if (maxval != 255) throw std::runtime_error("only 8-bit PNM supported: " + path);

    const std::size_t n = static_cast<std::size_t>(rows) * cols * channels;
    std::vector<unsigned char> bytes(n);
    if (binary) {
        if (std::fread(bytes.data(), 1, n, f.get()) != n)
            throw std::runtime_error("truncated PNM payload in " + path);
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            const int v = pnm_read_token(f.get());
            if (v > 255) throw std::runtime_error("PNM sample out of range in " + path);
            bytes[i] = static_cast<unsigned char>(v);
        }
    }
    return from_bytes(rows, cols, channels, bytes);
}

void save_pnm(const ImageGrid& image, const std::string& path) {
    const bool color = image.channels == 3;
    FilePtr f = open_file(path, "wb");
    std::fprintf(f.get(), "%s\n%d %d\n255\n", color ? "P6" : "P5", image.cols, image.rows);
    std::vector<unsigned char> bytes(image.values.size());
    for (std::size_t i = 0; i < bytes.size(); ++i)
        bytes[i] = static_cast<unsigned char>(std::lround(image.values[i] * 255.0));
    if (std::fwrite(bytes.data(), 1, bytes.size(), f.get()) != bytes.size())
        throw std::runtime_error("failed to write " + path);
}

// ---- PNG ----

ImageGrid load_png(const std::string& path) {
    FilePtr f = open_file(path, "rb");
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw std::runtime_error("libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw std::runtime_error("libpng init failed");
    }

    std::vector<unsigned char> bytes;
    std::vector<png_bytep> row_ptrs;
    int rows = 0, cols = 0, channels = 0;

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw std::runtime_error("corrupt PNG file: " + path);
    }

    png_init_io(png, f.get());
    png_read_info(png, info);

    cols = static_cast<int>(png_get_image_width(png, info));
    rows = static_cast<int>(png_get_image_height(png, info));
    const png_byte color_type = png_get_color_type(png, info);
    const png_byte bit_depth = png_get_bit_depth(png, info);

    if (bit_depth == 16) png_set_strip_16(png);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
    png_read_update_info(png, info);

    channels = static_cast<int>(png_get_channels(png, info));
    if (channels != 1 && channels != 3) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw std::runtime_error("unsupported PNG channel layout in " + path);
    }

    bytes.resize(static_cast<std::size_t>(rows) * cols * channels);
    row_ptrs.resize(rows);
    for (int r = 0; r < rows; ++r)
        row_ptrs[r] = bytes.data() + static_cast<std::size_t>(r) * cols * channels;
    png_read_image(png, row_ptrs.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    return from_bytes(rows, cols, channels, bytes);
}

void save_png(const ImageGrid& image, const std::string& path) {
    FilePtr f = open_file(path, "wb");
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw std::runtime_error("libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw std::runtime_error("libpng init failed");
    }

    std::vector<unsigned char> bytes(image.values.size());
    for (std::size_t i = 0; i < bytes.size(); ++i)
        bytes[i] = static_cast<unsigned char>(std::lround(image.values[i] * 255.0));
    std::vector<png_bytep> row_ptrs(image.rows);
    for (int r = 0; r < image.rows; ++r)
        row_ptrs[r] = bytes.data() + static_cast<std::size_t>(r) * image.cols * image.channels;

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw std::runtime_error("failed to write " + path);
    }

    png_init_io(png, f.get());
    png_set_IHDR(png, info, image.cols, image.rows, 8,
                 image.channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, row_ptrs.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

}  // namespace

ImageGrid load_image(const std::string& path) {
    unsigned char magic[8] = {0};
    {
        FilePtr f = open_file(path, "rb");
        if (std::fread(magic, 1, sizeof magic, f.get()) < 2)
            throw std::runtime_error("cannot read file header: " + path);
    }
    if (magic[0] == 'P' && (magic[1] == '2' || magic[1] == '3' || magic[1] == '5' ||
                            magic[1] == '6'))
        return load_pnm(path);
    if (png_sig_cmp(magic, 0, sizeof magic) == 0) return load_png(path);
    throw std::runtime_error("unsupported image format: " + path);
}

void save_image(const ImageGrid& image, const std::string& path) {
    if (image.channels != 1 && image.channels != 3)
        throw std::invalid_argument("save_image supports 1 or 3 channels");
    const std::string ext = lower_extension(path);
    if (ext == ".png") {
        save_png(image, path);
    } else if (ext == ".pgm" || ext == ".ppm") {
        if (ext == ".pgm" && image.channels != 1)
            throw std::invalid_argument("PGM holds grayscale only; use .ppm or .png");
        if (ext == ".ppm" && image.channels != 3)
            throw std::invalid_argument("PPM holds color only; use .pgm or .png");
        save_pnm(image, path);
    } else {
        throw std::invalid_argument("unsupported image extension: " + path);
    }
}

void save_mask(const BinaryMask& mask, const std::string& path) {
    std::vector<double> values(mask.pixel_count());
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = mask.bits[i] ? 1.0 : 0.0;
    save_image(ImageGrid(mask.rows, mask.cols, 1, std::move(values)), path);
}

BinaryMask load_mask(const std::string& path) {
    const ImageGrid image = load_image(path);
    if (image.channels != 1)
        throw std::runtime_error("mask image must be grayscale: " + path);
    BinaryMask mask(image.rows, image.cols);
    for (std::size_t i = 0; i < mask.bits.size(); ++i)
        mask.bits[i] = image.values[i] >= 0.5;
    return mask;
}

}  // namespace tpictm
