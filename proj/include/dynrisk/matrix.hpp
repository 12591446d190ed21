#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dynrisk {

/// Dense row-major matrix of a floating-point scalar.
///
/// Rows are evaluation indices and columns are periods wherever the matrix
/// holds assessment data, so `(j, t)` indexing reads naturally.
template <std::floating_point T>
class BasicMatrix {
public:
    using value_type = T;

    BasicMatrix() = default;

    BasicMatrix(std::size_t rows, std::size_t cols, T fill = T{0})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    BasicMatrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ == 0 ? 0 : init.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) {
                throw std::invalid_argument("BasicMatrix: ragged initializer");
            }
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    /// Builds from nested rows; throws on ragged input.
    static BasicMatrix from_rows(const std::vector<std::vector<T>>& rows) {
        BasicMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != m.cols_) {
                throw std::invalid_argument("BasicMatrix: row " + std::to_string(r) + " has " +
                                            std::to_string(rows[r].size()) + " entries, expected " +
                                            std::to_string(m.cols_));
            }
            std::copy(rows[r].begin(), rows[r].end(), m.data_.begin() + r * m.cols_);
        }
        return m;
    }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }
    [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

    [[nodiscard]] bool same_shape(const BasicMatrix& other) const noexcept {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    T& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    T& at(std::size_t r, std::size_t c) {
        check(r, c);
        return (*this)(r, c);
    }
    const T& at(std::size_t r, std::size_t c) const {
        check(r, c);
        return (*this)(r, c);
    }

    [[nodiscard]] std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    [[nodiscard]] std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    [[nodiscard]] std::span<T> values() noexcept { return data_; }
    [[nodiscard]] std::span<const T> values() const noexcept { return data_; }

    [[nodiscard]] std::vector<std::vector<T>> to_rows() const {
        std::vector<std::vector<T>> out;
        out.reserve(rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            auto rw = row(r);
            out.emplace_back(rw.begin(), rw.end());
        }
        return out;
    }

    [[nodiscard]] BasicMatrix transposed() const {
        BasicMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) {
                t(c, r) = (*this)(r, c);
            }
        }
        return t;
    }

    [[nodiscard]] T min_value() const { return *std::min_element(data_.begin(), data_.end()); }
    [[nodiscard]] T max_value() const { return *std::max_element(data_.begin(), data_.end()); }

    friend bool operator==(const BasicMatrix&, const BasicMatrix&) = default;

private:
    void check(std::size_t r, std::size_t c) const {
        if (r >= rows_ || c >= cols_) {
            throw std::out_of_range("BasicMatrix: index (" + std::to_string(r) + ", " + std::to_string(c) +
                                    ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using Matrix = BasicMatrix<double>;

inline std::string shape_string(std::size_t rows, std::size_t cols) {
    return std::to_string(rows) + "x" + std::to_string(cols);
}

template <std::floating_point T>
std::string shape_string(const BasicMatrix<T>& m) {
    return shape_string(m.rows(), m.cols());
}

}  // namespace dynrisk
