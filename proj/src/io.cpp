#include "hintex/io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace hintex {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw IoError(path + ": " + what);
}

[[noreturn]] void fail_at(const std::string& path, std::size_t byte, const std::string& what) {
    throw IoError(path + ": byte " + std::to_string(byte) + ": " + what);
}

[[noreturn]] void fail_line(const std::string& path, std::size_t line, const std::string& what) {
    throw IoError(path + ": line " + std::to_string(line) + ": " + what);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open for reading");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void dump(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(path, "cannot open for writing");
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) fail(path, "write failed");
}

bool host_little_endian() {
    const std::uint16_t probe = 1;
    return *reinterpret_cast<const std::uint8_t*>(&probe) == 1;
}

// Whitespace-delimited token starting at pos; pos advances past the token.
std::string next_token(const std::string& data, std::size_t& pos, const std::string& path) {
    while (pos < data.size() && std::isspace(static_cast<unsigned char>(data[pos]))) ++pos;
    if (pos >= data.size()) fail_at(path, pos, "unexpected end of header");
    std::size_t start = pos;
    while (pos < data.size() && !std::isspace(static_cast<unsigned char>(data[pos]))) ++pos;
    return data.substr(start, pos - start);
}

}  // namespace

// ---------------------------------------------------------------------------
// PFM

DisparityMap read_pfm(const std::string& path) {
    std::string data = slurp(path);
    std::size_t pos = 0;

    std::string magic = next_token(data, pos, path);
    if (magic == "PF") fail_at(path, 0, "expected grayscale PFM (\"Pf\"), got color (\"PF\")");
    if (magic != "Pf") fail_at(path, 0, "not a PFM file (magic \"" + magic + "\")");

    std::size_t dim_pos = pos;
    std::string ws = next_token(data, pos, path);
    std::string hs = next_token(data, pos, path);
    int width = 0, height = 0;
    try {
        width = std::stoi(ws);
        height = std::stoi(hs);
    } catch (const std::exception&) {
        fail_at(path, dim_pos, "malformed dimensions");
    }
    if (width <= 0 || height <= 0) fail_at(path, dim_pos, "non-positive dimensions");

    std::size_t scale_pos = pos;
    std::string ss = next_token(data, pos, path);
    double scale = 0.0;
    try {
        scale = std::stod(ss);
    } catch (const std::exception&) {
        fail_at(path, scale_pos, "malformed scale");
    }
    if (scale == 0.0) fail_at(path, scale_pos, "scale must be nonzero");
    bool file_little = scale < 0.0;

    if (pos >= data.size()) fail_at(path, pos, "missing payload");
    ++pos;  // exactly one whitespace byte separates header and payload

    std::size_t need = static_cast<std::size_t>(width) * height * 4;
    if (data.size() - pos < need)
        fail_at(path, data.size(),
                "truncated payload: need " + std::to_string(need) + " bytes, have " +
                    std::to_string(data.size() - pos));
    if (data.size() - pos > need) fail_at(path, pos + need, "trailing bytes after payload");

    DisparityMap m(height, width);
    bool swap = file_little != host_little_endian();
    const unsigned char* base = reinterpret_cast<const unsigned char*>(data.data());
    const unsigned char* raw = base + pos;
    for (int row = 0; row < height; ++row) {
        int x = height - 1 - row;  // bottom-up row order
        for (int y = 0; y < width; ++y) {
            unsigned char b[4];
            std::memcpy(b, raw, 4);
            if (swap) {
                std::swap(b[0], b[3]);
                std::swap(b[1], b[2]);
            }
            float v;
            std::memcpy(&v, b, 4);
            if (std::isinf(v) && v > 0) {
                m.set_valid(x, y, false);
                m.at(x, y) = 0.0;
            } else if (!std::isfinite(v)) {
                fail_at(path, static_cast<std::size_t>(raw - base),
                        "non-finite sample that is not the +inf sentinel");
            } else {
                m.at(x, y) = v;
            }
            raw += 4;
        }
    }
    return m;
}

void write_pfm(const DisparityMap& m, const std::string& path) {
    if (m.height <= 0 || m.width <= 0) fail(path, "cannot write empty map");
    std::string out;
    char head[64];
    std::snprintf(head, sizeof(head), "Pf\n%d %d\n%s\n", m.width, m.height,
                  host_little_endian() ? "-1.0" : "1.0");
    out += head;
    out.reserve(out.size() + m.size() * 4);
    for (int row = 0; row < m.height; ++row) {
        int x = m.height - 1 - row;
        for (int y = 0; y < m.width; ++y) {
            float v;
            if (!m.is_valid(x, y)) {
                v = std::numeric_limits<float>::infinity();
            } else {
                double dv = m.at(x, y);
                if (!std::isfinite(dv)) fail(path, "valid pixel holds a non-finite value");
                v = static_cast<float>(dv);
            }
            char b[4];
            std::memcpy(b, &v, 4);
            out.append(b, 4);
        }
    }
    dump(path, out);
}

// ---------------------------------------------------------------------------
// PNG16 (KITTI disparity convention)

DisparityMap read_png16(const std::string& path) {
    FILE* fp = std::fopen(path.c_str(), "rb");
    if (!fp) fail(path, "cannot open for reading");

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        if (png) png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(fp);
        fail(path, "libpng initialization failed");
    }

    std::vector<png_bytep> rows;
    std::vector<png_byte> pixels;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(fp);
        fail(path, "corrupt PNG stream");
    }

    png_init_io(png, fp);
    png_read_info(png, info);
    int width = static_cast<int>(png_get_image_width(png, info));
    int height = static_cast<int>(png_get_image_height(png, info));
    int depth = png_get_bit_depth(png, info);
    int color = png_get_color_type(png, info);
    if (depth != 16 || color != PNG_COLOR_TYPE_GRAY) {
        png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(fp);
        fail(path, "expected 16-bit single-channel PNG");
    }

    pixels.resize(static_cast<std::size_t>(height) * width * 2);
    rows.resize(height);
    for (int r = 0; r < height; ++r)
        rows[r] = pixels.data() + static_cast<std::size_t>(r) * width * 2;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);

    DisparityMap m(height, width);
    for (int x = 0; x < height; ++x) {
        for (int y = 0; y < width; ++y) {
            const png_byte* p = pixels.data() + (static_cast<std::size_t>(x) * width + y) * 2;
            unsigned raw = (static_cast<unsigned>(p[0]) << 8) | p[1];  // network order
            if (raw == 0) {
                m.set_valid(x, y, false);
            } else {
                m.at(x, y) = raw / 256.0;
            }
        }
    }
    return m;
}

void write_png16(const DisparityMap& m, const std::string& path) {
    if (m.height <= 0 || m.width <= 0) fail(path, "cannot write empty map");
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (!m.valid[i]) continue;
        if (!(m.values[i] >= 0.0) || std::llround(m.values[i] * 256.0) > 65535)
            fail(path, "PNG16 requires disparities in [0, 256)");
    }

    FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) fail(path, "cannot open for writing");
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        if (png) png_destroy_write_struct(&png, &info);
        std::fclose(fp);
        fail(path, "libpng initialization failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        std::fclose(fp);
        fail(path, "PNG encode failed");
    }

    png_init_io(png, fp);
    png_set_IHDR(png, info, m.width, m.height, 16, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    std::vector<png_byte> row(static_cast<std::size_t>(m.width) * 2);
    for (int x = 0; x < m.height; ++x) {
        for (int y = 0; y < m.width; ++y) {
            unsigned raw = 0;
            if (m.is_valid(x, y))
                raw = static_cast<unsigned>(std::llround(m.at(x, y) * 256.0));
            row[static_cast<std::size_t>(y) * 2] = static_cast<png_byte>(raw >> 8);
            row[static_cast<std::size_t>(y) * 2 + 1] = static_cast<png_byte>(raw & 0xff);
        }
        png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
}

// ---------------------------------------------------------------------------
// Hints CSV

HintMap read_hints_csv(const std::string& path, int height, int width) {
    if (height <= 0 || width <= 0) fail(path, "declared dimensions must be positive");
    std::string data = slurp(path);

    HintMap h(height, width);
    std::size_t pos = 0;
    std::size_t line_no = 1;

    auto read_line = [&](std::string& line) {
        if (pos >= data.size()) return false;
        std::size_t nl = data.find('\n', pos);
        if (nl == std::string::npos) {
            line = data.substr(pos);
            pos = data.size();
        } else {
            line = data.substr(pos, nl - pos);
            pos = nl + 1;
        }
        return true;
    };

    std::string line;
    if (!read_line(line) || line != "x,y,d")
        fail_line(path, 1, "expected header \"x,y,d\"");

    while (read_line(line)) {
        ++line_no;
        if (line.empty() && pos >= data.size()) break;  // trailing newline
        std::size_t c1 = line.find(',');
        std::size_t c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            fail_line(path, line_no, "expected three comma-separated fields");
        long x = 0, y = 0;
        double d = 0.0;
        try {
            std::size_t used = 0;
            std::string fx = line.substr(0, c1);
            std::string fy = line.substr(c1 + 1, c2 - c1 - 1);
            std::string fd = line.substr(c2 + 1);
            x = std::stol(fx, &used);
            if (used != fx.size()) throw std::invalid_argument("x");
            y = std::stol(fy, &used);
            if (used != fy.size()) throw std::invalid_argument("y");
            d = std::stod(fd, &used);
            if (used != fd.size()) throw std::invalid_argument("d");
        } catch (const std::exception&) {
            fail_line(path, line_no, "malformed record \"" + line + "\"");
        }
        if (x < 0 || y < 0 || x >= height || y >= width)
            fail_line(path, line_no,
                      "coordinate (" + std::to_string(x) + "," + std::to_string(y) +
                          ") outside declared " + std::to_string(height) + "x" +
                          std::to_string(width));
        if (!(d > 0.0) || !std::isfinite(d))
            fail_line(path, line_no, "disparity must be finite and > 0");
        if (h.at(static_cast<int>(x), static_cast<int>(y)) != 0.0)
            fail_line(path, line_no, "duplicate coordinate (" + std::to_string(x) + "," +
                                         std::to_string(y) + ")");
        h.at(static_cast<int>(x), static_cast<int>(y)) = d;
    }
    return h;
}

void write_hints_csv(const HintMap& h, const std::string& path) {
    std::string out = "x,y,d\n";
    char buf[96];
    for (int x = 0; x < h.height; ++x) {  // scan order is (x, y) sorted
        for (int y = 0; y < h.width; ++y) {
            double d = h.at(x, y);
            if (d == 0.0) continue;
            std::snprintf(buf, sizeof(buf), "%d,%d,%.10g\n", x, y, d);
            out += buf;
        }
    }
    dump(path, out);
}

// ---------------------------------------------------------------------------
// PPM images and visualization

RgbImage read_ppm(const std::string& path) {
    std::string data = slurp(path);
    std::size_t pos = 0;
    std::string magic = next_token(data, pos, path);
    if (magic != "P6") fail_at(path, 0, "not a binary PPM (magic \"" + magic + "\")");
    std::size_t dim_pos = pos;
    int width = 0, height = 0, maxval = 0;
    try {
        width = std::stoi(next_token(data, pos, path));
        height = std::stoi(next_token(data, pos, path));
        maxval = std::stoi(next_token(data, pos, path));
    } catch (const std::exception&) {
        fail_at(path, dim_pos, "malformed header");
    }
    if (width <= 0 || height <= 0) fail_at(path, dim_pos, "non-positive dimensions");
    if (maxval != 255) fail_at(path, dim_pos, "only maxval 255 is supported");
    ++pos;  // single whitespace after maxval

    std::size_t need = static_cast<std::size_t>(width) * height * 3;
    if (data.size() - pos < need) fail_at(path, data.size(), "truncated payload");

    RgbImage img(height, width);
    const unsigned char* raw = reinterpret_cast<const unsigned char*>(data.data()) + pos;
    for (int x = 0; x < height; ++x)
        for (int y = 0; y < width; ++y) {
            double* p = img.px(x, y);
            p[0] = raw[0] / 255.0;
            p[1] = raw[1] / 255.0;
            p[2] = raw[2] / 255.0;
            raw += 3;
        }
    return img;
}

void write_ppm(const RgbImage& img, const std::string& path) {
    if (img.height <= 0 || img.width <= 0) fail(path, "cannot write empty image");
    std::string out;
    char head[64];
    std::snprintf(head, sizeof(head), "P6\n%d %d\n255\n", img.width, img.height);
    out += head;
    out.reserve(out.size() + static_cast<std::size_t>(img.height) * img.width * 3);
    for (int x = 0; x < img.height; ++x)
        for (int y = 0; y < img.width; ++y) {
            const double* p = img.px(x, y);
            for (int ch = 0; ch < 3; ++ch) {
                double v = std::clamp(p[ch], 0.0, 1.0);
                out.push_back(static_cast<char>(std::llround(v * 255.0)));
            }
        }
    dump(path, out);
}

void colormap(double t, unsigned char rgb[3]) {
    static const double stops[5][3] = {
        {0, 0, 255}, {0, 255, 255}, {0, 255, 0}, {255, 255, 0}, {255, 0, 0}};
    t = std::clamp(t, 0.0, 1.0);
    double s = t * 4.0;
    int k = std::min(3, static_cast<int>(s));
    double f = s - k;
    for (int ch = 0; ch < 3; ++ch)
        rgb[ch] = static_cast<unsigned char>(
            std::llround(stops[k][ch] + f * (stops[k + 1][ch] - stops[k][ch])));
}

namespace {

void write_rgb_bytes(const std::vector<unsigned char>& rgb, int height, int width,
                     const std::string& path) {
    std::string out;
    char head[64];
    std::snprintf(head, sizeof(head), "P6\n%d %d\n255\n", width, height);
    out += head;
    out.append(reinterpret_cast<const char*>(rgb.data()), rgb.size());
    dump(path, out);
}

}  // namespace

void write_visualization(const HintMap& h, const std::string& path, double lo, double hi) {
    if (!(lo < hi)) fail(path, "visualization range must satisfy lo < hi");
    std::vector<unsigned char> rgb(static_cast<std::size_t>(h.height) * h.width * 3, 0);
    for (int x = 0; x < h.height; ++x) {
        for (int y = 0; y < h.width; ++y) {
            double v = h.at(x, y);
            if (v == 0.0) continue;
            unsigned char c[3];
            colormap((v - lo) / (hi - lo), c);
            for (int dx = -1; dx <= 1; ++dx) {  // 3x3 dot
                for (int dy = -1; dy <= 1; ++dy) {
                    int px = x + dx, py = y + dy;
                    if (px < 0 || px >= h.height || py < 0 || py >= h.width) continue;
                    std::size_t off = (static_cast<std::size_t>(px) * h.width + py) * 3;
                    rgb[off] = c[0];
                    rgb[off + 1] = c[1];
                    rgb[off + 2] = c[2];
                }
            }
        }
    }
    write_rgb_bytes(rgb, h.height, h.width, path);
}

void write_visualization(const DisparityMap& m, const std::string& path, double lo, double hi) {
    if (!(lo < hi)) fail(path, "visualization range must satisfy lo < hi");
    std::vector<unsigned char> rgb(static_cast<std::size_t>(m.height) * m.width * 3, 0);
    for (int x = 0; x < m.height; ++x) {
        for (int y = 0; y < m.width; ++y) {
            if (!m.is_valid(x, y)) continue;  // invalid stays black
            unsigned char c[3];
            colormap((m.at(x, y) - lo) / (hi - lo), c);
            std::size_t off = (static_cast<std::size_t>(x) * m.width + y) * 3;
            rgb[off] = c[0];
            rgb[off + 1] = c[1];
            rgb[off + 2] = c[2];
        }
    }
    write_rgb_bytes(rgb, m.height, m.width, path);
}

// ---------------------------------------------------------------------------
// Scene spec config

namespace {

const char* texture_name(TextureKind t) {
    switch (t) {
        case TextureKind::noise: return "noise";
        case TextureKind::gradient: return "gradient";
        case TextureKind::checker: return "checker";
    }
    return "noise";
}

}  // namespace

SceneSpec read_scene_spec(const std::string& path) {
    std::string data = slurp(path);
    SceneSpec spec;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < data.size()) {
        std::size_t nl = data.find('\n', pos);
        std::string line =
            nl == std::string::npos ? data.substr(pos) : data.substr(pos, nl - pos);
        pos = nl == std::string::npos ? data.size() : nl + 1;
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) fail_line(path, line_no, "expected key=value");
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        try {
            if (key == "seed") spec.seed = std::stoull(val);
            else if (key == "height") spec.height = std::stoi(val);
            else if (key == "width") spec.width = std::stoi(val);
            else if (key == "planes") spec.plane_count = std::stoi(val);
            else if (key == "d_min") spec.d_min = std::stod(val);
            else if (key == "d_max") spec.d_max = std::stod(val);
            else if (key == "hint_density") spec.hint_density = std::stod(val);
            else if (key == "hint_noise_sigma") spec.hint_noise_sigma = std::stod(val);
            else if (key == "slope_limit") spec.slope_limit = std::stod(val);
            else if (key == "texture") {
                if (val == "noise") spec.texture = TextureKind::noise;
                else if (val == "gradient") spec.texture = TextureKind::gradient;
                else if (val == "checker") spec.texture = TextureKind::checker;
                else fail_line(path, line_no, "unknown texture \"" + val + "\"");
            } else {
                fail_line(path, line_no, "unknown key \"" + key + "\"");
            }
        } catch (const IoError&) {
            throw;
        } catch (const std::exception&) {
            fail_line(path, line_no, "malformed value for \"" + key + "\"");
        }
    }
    return spec;
}

void write_scene_spec(const SceneSpec& spec, const std::string& path) {
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "seed=%llu\nheight=%d\nwidth=%d\nplanes=%d\nd_min=%.17g\nd_max=%.17g\n"
                  "texture=%s\nhint_density=%.17g\nhint_noise_sigma=%.17g\nslope_limit=%.17g\n",
                  static_cast<unsigned long long>(spec.seed), spec.height, spec.width,
                  spec.plane_count, spec.d_min, spec.d_max, texture_name(spec.texture),
                  spec.hint_density, spec.hint_noise_sigma, spec.slope_limit);
    dump(path, buf);
}

}  // namespace hintex
