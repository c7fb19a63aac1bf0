#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace eegdec {

// Dense row-major 64-bit float array. The unit of all network computation.
class Tensor {
public:
    Tensor() = default;
    explicit Tensor(std::vector<std::size_t> shape);
    Tensor(std::vector<std::size_t> shape, std::vector<double> data);

    static Tensor scalar(double v);
    static Tensor full(std::vector<std::size_t> shape, double v);

    const std::vector<std::size_t>& shape() const { return shape_; }
    std::size_t ndim() const { return shape_.size(); }
    std::size_t size() const { return data_.size(); }
    std::size_t extent(std::size_t axis) const { return shape_[axis]; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    double& operator[](std::size_t i) { return data_[i]; }
    double operator[](std::size_t i) const { return data_[i]; }

    // flat index for a 4D [a,b,c,d] tensor
    std::size_t idx4(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const {
        return ((a * shape_[1] + b) * shape_[2] + c) * shape_[3] + d;
    }
    std::size_t idx2(std::size_t a, std::size_t b) const { return a * shape_[1] + b; }

    double item() const;
    void fill(double v);
    bool all_finite() const;
    bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }

    Tensor reshaped(std::vector<std::size_t> new_shape) const;

    std::string shape_str() const;

private:
    std::vector<std::size_t> shape_;
    std::vector<double> data_;
};

std::size_t shape_product(const std::vector<std::size_t>& shape);

}  // namespace eegdec
