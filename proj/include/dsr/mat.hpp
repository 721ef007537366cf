#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace dsr {

// Dense square matrix of doubles, row-major.
class Mat {
public:
    Mat() = default;
    explicit Mat(int n, double fill = 0.0)
        : n_(n), v_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), fill) {}

    int n() const { return n_; }

    double& operator()(int r, int c) {
        assert(r >= 0 && r < n_ && c >= 0 && c < n_);
        return v_[static_cast<std::size_t>(r) * n_ + c];
    }
    double operator()(int r, int c) const {
        assert(r >= 0 && r < n_ && c >= 0 && c < n_);
        return v_[static_cast<std::size_t>(r) * n_ + c];
    }

    const std::vector<double>& data() const { return v_; }
    std::vector<double>& data() { return v_; }

    bool operator==(const Mat&) const = default;

private:
    int n_ = 0;
    std::vector<double> v_;
};

} // namespace dsr
