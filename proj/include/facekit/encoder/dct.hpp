// Copyright (C) 2026 facekit authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "facekit/error.hpp"

namespace facekit {

/// Orthonormal type-II 2-D DCT of an N x N row-major block, computed
/// separably from a precomputed basis.
class Dct2d {
public:
    explicit Dct2d(std::size_t n) : n_(n), basis_(n * n) {
        if (n == 0) throw Error(ErrorCode::InvalidArgument, "DCT size must be >= 1");
        const double dn = static_cast<double>(n);
        for (std::size_t u = 0; u < n; ++u) {
            const double alpha = u == 0 ? std::sqrt(1.0 / dn) : std::sqrt(2.0 / dn);
            for (std::size_t x = 0; x < n; ++x) {
                basis_[u * n + x] =
                    alpha * std::cos((2.0 * static_cast<double>(x) + 1.0) * static_cast<double>(u) *
                                     std::numbers::pi / (2.0 * dn));
            }
        }
    }

    std::size_t size() const noexcept { return n_; }

    std::vector<double> operator()(std::span<const double> block) const {
        if (block.size() != n_ * n_) {
            throw Error(ErrorCode::InvalidArgument, "DCT block must hold N*N values");
        }
        // tmp(u, y) = sum_x B(u, x) f(x, y);  out(u, v) = sum_y tmp(u, y) B(v, y)
        std::vector<double> tmp(n_ * n_, 0.0);
        for (std::size_t u = 0; u < n_; ++u) {
            for (std::size_t x = 0; x < n_; ++x) {
                const double b = basis_[u * n_ + x];
                for (std::size_t y = 0; y < n_; ++y) tmp[u * n_ + y] += b * block[x * n_ + y];
            }
        }
        std::vector<double> out(n_ * n_, 0.0);
        for (std::size_t u = 0; u < n_; ++u) {
            for (std::size_t v = 0; v < n_; ++v) {
                double acc = 0.0;
                for (std::size_t y = 0; y < n_; ++y) acc += tmp[u * n_ + y] * basis_[v * n_ + y];
                out[u * n_ + v] = acc;
            }
        }
        return out;
    }

private:
    std::size_t n_;
    std::vector<double> basis_;
};

inline std::vector<double> dct2d(std::span<const double> block, std::size_t n) { return Dct2d(n)(block); }

/// JPEG zig-zag traversal of an N x N grid as row-major indices, starting at
/// (0,0) and stepping to (0,1) first.
inline std::vector<std::size_t> zigzag_order(std::size_t n) {
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "zig-zag size must be >= 1");
    std::vector<std::size_t> order;
    order.reserve(n * n);
    for (std::size_t diag = 0; diag + 1 < 2 * n; ++diag) {
        const std::size_t lo = diag < n ? 0 : diag - n + 1;
        const std::size_t hi = diag < n ? diag : n - 1;
        if (diag % 2 == 0) {
            for (std::size_t row = hi + 1; row-- > lo;) order.push_back(row * n + (diag - row));
        } else {
            for (std::size_t row = lo; row <= hi; ++row) order.push_back(row * n + (diag - row));
        }
    }
    return order;
}

}  // namespace facekit
