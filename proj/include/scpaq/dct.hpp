#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace scpaq {

/// Orthonormal 2-D type-II DCT on square blocks, applied row-column with a
/// precomputed basis. inverse(forward(x)) == x up to floating-point noise and
/// energy is preserved, so quantization is the only lossy stage in the
/// simulator. A constant block of value v transforms to a single DC
/// coefficient N*v.
class Dct2 {
 public:
  explicit Dct2(int n) : n_(n) {
    if (n <= 0) {
      throw std::invalid_argument("Dct2: block size must be positive");
    }
    basis_.resize(static_cast<std::size_t>(n) * n);
    const double norm_dc = std::sqrt(1.0 / n);
    const double norm_ac = std::sqrt(2.0 / n);
    for (int u = 0; u < n; ++u) {
      for (int x = 0; x < n; ++x) {
        basis_[static_cast<std::size_t>(u) * n + x] =
            (u == 0 ? norm_dc : norm_ac) *
            std::cos((2.0 * x + 1.0) * u * std::numbers::pi / (2.0 * n));
      }
    }
  }

  int size() const { return n_; }

  void forward(std::span<const double> block, std::span<double> coeff) const {
    apply(block, coeff, false);
  }

  void inverse(std::span<const double> coeff, std::span<double> block) const {
    apply(coeff, block, true);
  }

 private:
  // forward: out = B * in * B^T; inverse: out = B^T * in * B.
  void apply(std::span<const double> in, std::span<double> out, bool inverse_mode) const {
    const int n = n_;
    const std::size_t area = static_cast<std::size_t>(n) * n;
    if (in.size() != area || out.size() != area) {
      throw std::invalid_argument("Dct2: buffer does not match the block size");
    }
    std::vector<double> tmp(area);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        double s = 0.0;
        if (inverse_mode) {
          for (int k = 0; k < n; ++k) s += in[r * n + k] * basis_[static_cast<std::size_t>(k) * n + c];
        } else {
          for (int k = 0; k < n; ++k) s += in[r * n + k] * basis_[static_cast<std::size_t>(c) * n + k];
        }
        tmp[static_cast<std::size_t>(r) * n + c] = s;
      }
    }
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        double s = 0.0;
        if (inverse_mode) {
          for (int k = 0; k < n; ++k) s += basis_[static_cast<std::size_t>(k) * n + r] * tmp[static_cast<std::size_t>(k) * n + c];
        } else {
          for (int k = 0; k < n; ++k) s += basis_[static_cast<std::size_t>(r) * n + k] * tmp[static_cast<std::size_t>(k) * n + c];
        }
        out[static_cast<std::size_t>(r) * n + c] = s;
      }
    }
  }

  int n_;
  std::vector<double> basis_;
};

}  // namespace scpaq
