#pragma once

#include "dsr/mat.hpp"

#include <cstdint>
#include <iosfwd>
#include <utility>

namespace dsr {

// Precomputed DCT-II basis: k[p][q] = 1/sqrt(n) for p = 0, otherwise
// sqrt(2/n) * cos((2q+1) pi p / (2n)). Rows are orthonormal.
struct KernelMatrix {
    int n = 0;
    Mat k;
};

// c[p][q] holds the coefficient for vertical frequency p and horizontal
// frequency q.
struct DctCoefficients {
    Mat c;
};

// Single scratch matrix reused by both passes. Each pass writes its result
// transposed (by columns) so the next pass can read it by rows.
struct DctBuffer {
    Mat m;
};

// Work model of the 4-lane compute schedule. Numeric results never depend
// on it.
struct FauOpCount {
    std::uint64_t multiply_accumulates = 0;
    int passes = 2;
    int lanes = 4;
    int rows_per_lane = 4;
};

KernelMatrix build_kernel(int n);

// buf.m = (K * src)^T. One hardware pass: row p of K*src lands in buffer
// column p.
void kernel_pass(const KernelMatrix& kernel, const Mat& src, DctBuffer& buf);

// Two kernel passes through a single DctBuffer; after the second pass the
// buffer holds K * Input * K^T.
std::pair<DctCoefficients, FauOpCount> dct2d_rowcol(const Mat& tile_luma, const KernelMatrix& kernel);

// Literal double cosine sum, the reference the row-column path is checked
// against. Fixed to 16x16 input.
DctCoefficients dct2d_naive(const Mat& tile_luma);

// Max |c[p][q]| over p+q >= excluded_diagonals; 0 if nothing is retained.
double max_coefficient(const DctCoefficients& coeffs, int excluded_diagonals);

// Debug dump, row-major, n comma-separated values per line.
void write_coefficients_csv(const DctCoefficients& coeffs, std::ostream& out);

} // namespace dsr
