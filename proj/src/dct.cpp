#include "dsr/dct.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace dsr {

KernelMatrix build_kernel(int n) {
    if (n < 1) throw std::invalid_argument("build_kernel: transform size must be >= 1");
    KernelMatrix km;
    km.n = n;
    km.k = Mat(n);
    const double dc = 1.0 / std::sqrt(static_cast<double>(n));
    const double ac = std::sqrt(2.0 / static_cast<double>(n));
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
            if (p == 0) {
                km.k(p, q) = dc;
            } else {
                km.k(p, q) = ac * std::cos((2 * q + 1) * std::numbers::pi * p / (2.0 * n));
            }
        }
    }
    return km;
}

void kernel_pass(const KernelMatrix& kernel, const Mat& src, DctBuffer& buf) {
    const int n = kernel.n;
    if (src.n() != n) throw std::invalid_argument("kernel_pass: input size does not match kernel");
    if (buf.m.n() != n) buf.m = Mat(n);
    // Row p of K*src goes into buffer column p; the consumer then reads the
    // transposed result by rows.
    for (int p = 0; p < n; ++p) {
        for (int j = 0; j < n; ++j) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k) {
                acc += kernel.k(p, k) * src(k, j);
            }
            buf.m(j, p) = acc;
        }
    }
}

std::pair<DctCoefficients, FauOpCount> dct2d_rowcol(const Mat& tile_luma, const KernelMatrix& kernel) {
    const int n = kernel.n;
    if (tile_luma.n() != n) {
        throw std::invalid_argument("dct2d_rowcol: tile size does not match kernel");
    }
    DctBuffer buf{Mat(n)};
    kernel_pass(kernel, tile_luma, buf); // buf = (K * Input)^T
    Mat aux = buf.m;                     // hardware rereads the buffer; snapshot before pass 2
    kernel_pass(kernel, aux, buf);       // buf = (K * Aux)^T = K * Input * K^T

    FauOpCount ops;
    ops.multiply_accumulates = 2ull * static_cast<std::uint64_t>(n) * n * n;
    ops.passes = 2;
    ops.lanes = 4;
    ops.rows_per_lane = (n + ops.lanes - 1) / ops.lanes;
    return {DctCoefficients{std::move(buf.m)}, ops};
}

DctCoefficients dct2d_naive(const Mat& tile_luma) {
    const int n = 16;
    if (tile_luma.n() != n) throw std::invalid_argument("dct2d_naive: input must be 16x16");
    const double pi = std::numbers::pi;
    DctCoefficients out{Mat(n)};
    for (int p = 0; p < n; ++p) {
        double ap = (p == 0) ? 1.0 / std::sqrt(16.0) : std::sqrt(2.0 / 16.0);
        for (int q = 0; q < n; ++q) {
            double aq = (q == 0) ? 1.0 / std::sqrt(16.0) : std::sqrt(2.0 / 16.0);
            double sum = 0.0;
            for (int m = 0; m < n; ++m) {
                double inner = 0.0;
                for (int j = 0; j < n; ++j) {
                    inner += tile_luma(m, j) * std::cos((2 * j + 1) * pi * q / (2.0 * n));
                }
                sum += std::cos((2 * m + 1) * pi * p / (2.0 * n)) * inner;
            }
            out.c(p, q) = ap * aq * sum;
        }
    }
    return out;
}

double max_coefficient(const DctCoefficients& coeffs, int excluded_diagonals) {
    const int n = coeffs.c.n();
    if (excluded_diagonals < 0 || excluded_diagonals > 2 * n - 1) {
        throw std::invalid_argument("max_coefficient: excluded diagonal count out of range");
    }
    double best = 0.0;
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
            if (p + q < excluded_diagonals) continue;
            best = std::max(best, std::abs(coeffs.c(p, q)));
        }
    }
    return best;
}

void write_coefficients_csv(const DctCoefficients& coeffs, std::ostream& out) {
    const int n = coeffs.c.n();
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
            if (q) out << ',';
            out << coeffs.c(p, q);
        }
        out << '\n';
    }
}

} // namespace dsr
