#include "vfi/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <vector>

#include "vfi/error.hpp"

namespace vfi {

namespace {

struct FileCloser {
    FILE* fp = nullptr;
    ~FileCloser() {
        if (fp) std::fclose(fp);
    }
};

struct PngReader {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngReader() {
        if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    }
};

struct PngWriter {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngWriter() {
        if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
    }
};

bool has_png_signature(FILE* fp) {
    unsigned char sig[8];
    const std::size_t n = std::fread(sig, 1, 8, fp);
    std::rewind(fp);
    return n == 8 && png_sig_cmp(sig, 0, 8) == 0;
}

Frame load_png(FILE* fp, const std::string& path) {
    PngReader r;
    r.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!r.png) throw IoError("libpng init failed for " + path);
    r.info = png_create_info_struct(r.png);
    if (!r.info) throw IoError("libpng init failed for " + path);

    if (setjmp(png_jmpbuf(r.png)))
        throw IoError("corrupt or truncated PNG file: " + path);

    png_init_io(r.png, fp);
    png_read_info(r.png, r.info);

    const png_uint_32 width = png_get_image_width(r.png, r.info);
    const png_uint_32 height = png_get_image_height(r.png, r.info);
    const int bit_depth = png_get_bit_depth(r.png, r.info);
    const int color_type = png_get_color_type(r.png, r.info);

    if (color_type == PNG_COLOR_TYPE_PALETTE)
        throw IoError(path + ": unsupported PNG color type: palette");
    if (bit_depth != 8 && bit_depth != 16)
        throw IoError(path + ": unsupported PNG bit depth: " + std::to_string(bit_depth));

    if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(r.png);
    png_read_update_info(r.png, r.info);

    const int channels = png_get_channels(r.png, r.info);
    if (channels != 1 && channels != 3)
        throw IoError(path + ": unsupported PNG channel count: " + std::to_string(channels));

    const std::size_t rowbytes = png_get_rowbytes(r.png, r.info);
    std::vector<unsigned char> raw(rowbytes * height);
    std::vector<png_bytep> rows(height);
    for (png_uint_32 y = 0; y < height; ++y) rows[y] = raw.data() + y * rowbytes;
    png_read_image(r.png, rows.data());
    png_read_end(r.png, nullptr);

    Frame frame(static_cast<int>(width), static_cast<int>(height), channels);
    std::vector<float>& out = frame.data();
    const std::size_t n = out.size();
    if (bit_depth == 8) {
        for (std::size_t i = 0; i < n; ++i)
            out[i] = static_cast<float>(raw[i] / 255.0);
    } else {
        // PNG 16-bit samples are big-endian.
        for (std::size_t i = 0; i < n; ++i) {
            const unsigned v = (static_cast<unsigned>(raw[2 * i]) << 8) | raw[2 * i + 1];
            out[i] = static_cast<float>(v / 65535.0);
        }
    }
    return frame;
}

int pnm_read_token(FILE* fp, const std::string& path) {
    int c = std::fgetc(fp);
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = std::fgetc(fp);
        } else if (std::isspace(c)) {
            c = std::fgetc(fp);
        } else {
            break;
        }
    }
    if (c == EOF || !std::isdigit(c)) throw IoError(path + ": malformed PNM header");
    long value = 0;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + (c - '0');
        if (value > 1 << 30) throw IoError(path + ": PNM header value out of range");
        c = std::fgetc(fp);
    }
    // c is the single whitespace terminating the token (or EOF).
    return static_cast<int>(value);
}

Frame load_pnm(FILE* fp, const std::string& path) {
    const int magic0 = std::fgetc(fp);
    const int magic1 = std::fgetc(fp);
    if (magic0 != 'P' || (magic1 != '5' && magic1 != '6'))
        throw IoError(path + ": unsupported PNM magic (only binary P5/P6)");
    const int channels = (magic1 == '6') ? 3 : 1;

    const int width = pnm_read_token(fp, path);
    const int height = pnm_read_token(fp, path);
    const int maxval = pnm_read_token(fp, path);
    if (width <= 0 || height <= 0) throw IoError(path + ": bad PNM dimensions");
    if (maxval <= 0 || maxval > 65535)
        throw IoError(path + ": unsupported PNM maxval " + std::to_string(maxval));

    const std::size_t n = static_cast<std::size_t>(width) * height * channels;
    const int bytes_per_sample = maxval < 256 ? 1 : 2;
    std::vector<unsigned char> raw(n * bytes_per_sample);
    if (std::fread(raw.data(), 1, raw.size(), fp) != raw.size())
        throw IoError(path + ": truncated PNM payload");

    Frame frame(width, height, channels);
    std::vector<float>& out = frame.data();
    if (bytes_per_sample == 1) {
        for (std::size_t i = 0; i < n; ++i)
            out[i] = static_cast<float>(raw[i] / static_cast<double>(maxval));
    } else {
        // Two-byte PNM samples are big-endian.
        for (std::size_t i = 0; i < n; ++i) {
            const unsigned v = (static_cast<unsigned>(raw[2 * i]) << 8) | raw[2 * i + 1];
            if (v > static_cast<unsigned>(maxval))
                throw IoError(path + ": PNM sample exceeds maxval");
            out[i] = static_cast<float>(v / static_cast<double>(maxval));
        }
    }
    return frame;
}

std::uint8_t quantize(float s) {
    const double v = std::floor(std::clamp(static_cast<double>(s), 0.0, 1.0) * 255.0 + 0.5);
    return static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
}

}  // namespace

Frame load_frame(const std::string& path) {
    FileCloser f;
    f.fp = std::fopen(path.c_str(), "rb");
    if (!f.fp) throw IoError("cannot open image file: " + path);
    if (has_png_signature(f.fp)) return load_png(f.fp, path);

    unsigned char magic[2] = {0, 0};
    if (std::fread(magic, 1, 2, f.fp) == 2 && magic[0] == 'P' &&
        (magic[1] == '5' || magic[1] == '6')) {
        std::rewind(f.fp);
        return load_pnm(f.fp, path);
    }
    throw IoError(path + ": unsupported image format (expected PNG or binary PPM/PGM)");
}

void save_frame(const Frame& frame, const std::string& path) {
    if (frame.empty()) throw std::invalid_argument("save_frame: empty frame");
    FileCloser f;
    f.fp = std::fopen(path.c_str(), "wb");
    if (!f.fp) throw IoError("cannot open file for writing: " + path);

    PngWriter w;
    w.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!w.png) throw IoError("libpng init failed for " + path);
    w.info = png_create_info_struct(w.png);
    if (!w.info) throw IoError("libpng init failed for " + path);

    if (setjmp(png_jmpbuf(w.png)))
        throw IoError("PNG write failed: " + path);

    png_init_io(w.png, f.fp);
    const int color_type = frame.channels() == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB;
    png_set_IHDR(w.png, w.info, frame.width(), frame.height(), 8, color_type,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(w.png, w.info);

    const std::size_t rowbytes = static_cast<std::size_t>(frame.width()) * frame.channels();
    std::vector<unsigned char> row(rowbytes);
    for (int y = 0; y < frame.height(); ++y) {
        for (int x = 0; x < frame.width(); ++x)
            for (int c = 0; c < frame.channels(); ++c)
                row[static_cast<std::size_t>(x) * frame.channels() + c] =
                    quantize(frame.at(x, y, c));
        png_write_row(w.png, row.data());
    }
    png_write_end(w.png, nullptr);
}

MaskMap load_mask(const std::string& path) {
    const Frame img = load_frame(path);
    return MaskMap(img.width(), img.height(), to_luma(img));
}

void save_mask(const MaskMap& mask, const std::string& path) {
    Frame img(mask.width(), mask.height(), 1, mask.data());
    save_frame(img, path);
}

HoleMask load_hole_mask(const std::string& path) {
    const Frame img = load_frame(path);
    const std::vector<float> luma = to_luma(img);
    HoleMask holes(img.width(), img.height());
    for (std::size_t i = 0; i < luma.size(); ++i)
        holes.data()[i] = luma[i] >= 0.5f ? 1 : 0;
    return holes;
}

void save_hole_mask(const HoleMask& holes, const std::string& path) {
    Frame img(holes.width(), holes.height(), 1);
    for (std::size_t i = 0; i < holes.data().size(); ++i)
        img.data()[i] = holes.data()[i] ? 1.0f : 0.0f;
    save_frame(img, path);
}

}  // namespace vfi
