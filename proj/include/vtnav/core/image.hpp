#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace vtnav {

// Single-channel image, row-major doubles in [0,1].
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<double> data;

  GrayImage() = default;
  GrayImage(int w, int h, double fill = 0.0)
      : width(w), height(h), data(static_cast<size_t>(w) * h, fill) {}

  double& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
  double at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }

  // replicate-clamped access
  double at_clamped(int x, int y) const {
    x = std::clamp(x, 0, width - 1);
    y = std::clamp(y, 0, height - 1);
    return at(x, y);
  }

  // bilinear sample at continuous coords (pixel centers at integer+0.5)
  double sample(double x, double y) const {
    const double fx = x - 0.5, fy = y - 0.5;
    const int x0 = static_cast<int>(std::floor(fx));
    const int y0 = static_cast<int>(std::floor(fy));
    const double ax = fx - x0, ay = fy - y0;
    const double v00 = at_clamped(x0, y0), v10 = at_clamped(x0 + 1, y0);
    const double v01 = at_clamped(x0, y0 + 1), v11 = at_clamped(x0 + 1, y0 + 1);
    return (1 - ay) * ((1 - ax) * v00 + ax * v10) + ay * ((1 - ax) * v01 + ax * v11);
  }

  size_t size() const { return data.size(); }

  double max_value() const {
    double m = 0.0;
    for (double v : data) m = std::max(m, v);
    return m;
  }

  void clamp01() {
    for (double& v : data) v = std::clamp(v, 0.0, 1.0);
  }
};

// Snap to the 2^-24 grid.  Images sourced from files live on this grid, which
// makes base/detail decompositions reconstruct bit-exactly in double math.
inline double snap_q24(double v) {
  return std::round(v * 16777216.0) / 16777216.0;
}

inline void snap_q24(GrayImage& img) {
  for (double& v : img.data) v = snap_q24(v);
}

// --- portable graymap I/O (binary P5, 8 or 16 bit) ---

inline void write_pgm(const GrayImage& img, const std::string& path, int bits = 16) {
  if (bits != 8 && bits != 16) throw std::invalid_argument("pgm bits must be 8 or 16");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  const int maxval = bits == 8 ? 255 : 65535;
  f << "P5\n" << img.width << " " << img.height << "\n" << maxval << "\n";
  for (double v : img.data) {
    const double c = std::clamp(v, 0.0, 1.0);
    const int q = static_cast<int>(std::lround(c * maxval));
    if (bits == 8) {
      const std::uint8_t b = static_cast<std::uint8_t>(q);
      f.write(reinterpret_cast<const char*>(&b), 1);
    } else {
      const std::uint8_t hi = static_cast<std::uint8_t>(q >> 8);
      const std::uint8_t lo = static_cast<std::uint8_t>(q & 0xff);
      f.write(reinterpret_cast<const char*>(&hi), 1);
      f.write(reinterpret_cast<const char*>(&lo), 1);
    }
  }
  if (!f) throw std::runtime_error("write failed: " + path);
}

inline GrayImage read_pgm(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::string magic;
  f >> magic;
  if (magic != "P5") throw std::runtime_error("not a binary PGM: " + path);
  auto next_int = [&f, &path]() {
    // skip whitespace and '#' comments
    int c = f.get();
    while (c == '#' || std::isspace(c)) {
      if (c == '#') {
        while (c != '\n' && c != EOF) c = f.get();
      }
      c = f.get();
    }
    f.unget();
    long v = -1;
    f >> v;
    if (v < 0) throw std::runtime_error("bad PGM header: " + path);
    return v;
  };
  const long w = next_int(), h = next_int(), maxval = next_int();
  f.get();  // single whitespace after maxval
  GrayImage img(static_cast<int>(w), static_cast<int>(h));
  const size_t n = img.size();
  if (maxval < 256) {
    std::vector<std::uint8_t> buf(n);
    f.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(n));
    for (size_t i = 0; i < n; ++i) img.data[i] = snap_q24(buf[i] / double(maxval));
  } else {
    std::vector<std::uint8_t> buf(2 * n);
    f.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(2 * n));
    for (size_t i = 0; i < n; ++i) {
      const int v = (buf[2 * i] << 8) | buf[2 * i + 1];
      img.data[i] = snap_q24(v / double(maxval));
    }
  }
  if (!f) throw std::runtime_error("truncated PGM: " + path);
  return img;
}

}  // namespace vtnav
