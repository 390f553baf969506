#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gibbscert {

/// Vertex handle: position of the vertex id in the graph's sorted id list.
using Vertex = std::size_t;
/// Sorted, duplicate-free list of vertex handles.
using VertexSet = std::vector<Vertex>;
/// Symbol index per vertex, in vertex-handle order.
using Configuration = std::vector<int>;

/// Rejected input: malformed graph, model, or parameters.
class ModelError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A dense table would exceed the configured entry cap.
class CapExceeded : public std::length_error {
public:
    using std::length_error::length_error;
};

/// The criterion cannot be evaluated for the given numbers (e.g. r_K >= 1).
class CriterionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline constexpr std::size_t kDefaultCap = std::size_t{1} << 22;

struct Tolerances {
    double exact = 1e-12;  // identities: normalization, marginals, Phi reconstruction
    double slack = 1e-10;  // inequality slack for the inequality checks
};

/// Kahan-Babuska compensated accumulator.
class CompensatedSum {
public:
    void add(double v) noexcept;
    CompensatedSum& operator+=(double v) noexcept {
        add(v);
        return *this;
    }
    [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

double compensated_total(const std::vector<double>& values) noexcept;

/// Mixed-radix indexing of Xi^n: index = sum_v x_v * q^v.
class ConfigSpace {
public:
    ConfigSpace() = default;
    ConfigSpace(std::size_t vertex_count, std::size_t alphabet_size);

    [[nodiscard]] std::size_t vertex_count() const noexcept { return n_; }
    [[nodiscard]] std::size_t alphabet_size() const noexcept { return q_; }
    [[nodiscard]] std::size_t size() const noexcept { return size_; }
    [[nodiscard]] std::size_t stride(Vertex v) const { return strides_.at(v); }

    [[nodiscard]] int digit(std::size_t index, Vertex v) const noexcept {
        return static_cast<int>((index / strides_[v]) % q_);
    }
    [[nodiscard]] std::size_t with_digit(std::size_t index, Vertex v, int symbol) const noexcept {
        return index - static_cast<std::size_t>(digit(index, v)) * strides_[v] +
               static_cast<std::size_t>(symbol) * strides_[v];
    }
    [[nodiscard]] Configuration decode(std::size_t index) const;
    [[nodiscard]] std::size_t encode(const Configuration& x) const;

private:
    std::size_t n_ = 0;
    std::size_t q_ = 0;
    std::size_t size_ = 0;
    std::vector<std::size_t> strides_;
};

/// q^n, throwing CapExceeded if it overflows or exceeds cap.
std::size_t checked_power(std::size_t q, std::size_t n, std::size_t cap, const std::string& what);

}  // namespace gibbscert
