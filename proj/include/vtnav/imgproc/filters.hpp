#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "vtnav/core/image.hpp"

namespace vtnav {

inline void require_odd_window(int w, const char* what) {
  if (w < 3 || w % 2 == 0)
    throw std::invalid_argument(std::string(what) + ": window must be odd and >= 3");
}

// separable box mean with replicated edges
inline GrayImage box_filter(const GrayImage& img, int window) {
  require_odd_window(window, "box_filter");
  const int r = window / 2;
  GrayImage tmp(img.width, img.height), out(img.width, img.height);
  const double inv = 1.0 / window;
  for (int y = 0; y < img.height; ++y) {
    double acc = 0.0;
    for (int i = -r; i <= r; ++i) acc += img.at_clamped(i, y);
    tmp.at(0, y) = acc * inv;
    for (int x = 1; x < img.width; ++x) {
      acc += img.at_clamped(x + r, y) - img.at_clamped(x - r - 1, y);
      tmp.at(x, y) = acc * inv;
    }
  }
  for (int x = 0; x < img.width; ++x) {
    double acc = 0.0;
    for (int i = -r; i <= r; ++i) acc += tmp.at_clamped(x, i);
    out.at(x, 0) = acc * inv;
    for (int y = 1; y < img.height; ++y) {
      acc += tmp.at_clamped(x, y + r) - tmp.at_clamped(x, y - r - 1);
      out.at(x, y) = acc * inv;
    }
  }
  return out;
}

inline GrayImage median_filter(const GrayImage& img, int window) {
  require_odd_window(window, "median_filter");
  const int r = window / 2;
  GrayImage out(img.width, img.height);
  std::vector<double> vals;
  vals.reserve(static_cast<size_t>(window) * window);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      vals.clear();
      for (int j = -r; j <= r; ++j)
        for (int i = -r; i <= r; ++i) vals.push_back(img.at_clamped(x + i, y + j));
      auto mid = vals.begin() + vals.size() / 2;
      std::nth_element(vals.begin(), mid, vals.end());
      out.at(x, y) = *mid;
    }
  }
  return out;
}

// Mean-filter split into base and detail layers.  The base is snapped to the
// 2^-24 grid so that for file-sourced images (which live on that grid) the
// reconstruction base + detail == img holds bit-exactly.
inline std::pair<GrayImage, GrayImage> decompose_mean(const GrayImage& img, int window) {
  require_odd_window(window, "decompose_mean");
  GrayImage base = box_filter(img, window);
  snap_q24(base);
  GrayImage detail(img.width, img.height);
  for (size_t i = 0; i < img.size(); ++i) detail.data[i] = img.data[i] - base.data[i];
  return {std::move(base), std::move(detail)};
}

// per-pixel importance: absolute difference of mean- and median-filtered views
inline GrayImage saliency_map(const GrayImage& img, int mean_window, int median_window) {
  const GrayImage mean = box_filter(img, mean_window);
  const GrayImage med = median_filter(img, median_window);
  GrayImage out(img.width, img.height);
  for (size_t i = 0; i < img.size(); ++i)
    out.data[i] = std::abs(mean.data[i] - med.data[i]);
  return out;
}

}  // namespace vtnav
